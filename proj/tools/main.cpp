#include "tpmon/cli.hpp"

int main(int argc, char** argv) {
    return tpmon::cli_main(argc, argv);
}
