#include <doctest.h>

#include "tpmon/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace tpmon;

namespace {

const std::filesystem::path kScenarioDir = TPMON_SCENARIO_DIR;
const std::filesystem::path kTmpDir = TPMON_TEST_TMP_DIR;

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("tpmon");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    std::ostringstream captured_out;
    std::ostringstream captured_err;
    std::streambuf* old_out = std::cout.rdbuf(captured_out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(captured_err.rdbuf());
    CliResult r;
    r.exit_code = cli_main(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = captured_out.str();
    r.err = captured_err.str();
    return r;
}

} // namespace

TEST_CASE("allocate reports the reference objectives") {
    const std::string scenario = (kScenarioDir / "mixed_diagonal.json").string();

    SUBCASE("min-max-temp at 51 C") {
        const CliResult r = run_cli({"allocate", "--scenario", scenario, "--target",
                                     "min-max-temp", "--method", "exhaustive"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("objective: 51.000000") != std::string::npos);
    }

    SUBCASE("min-spread at 54/47 C with zero spread") {
        const CliResult r =
            run_cli({"allocate", "--scenario", scenario, "--target", "min-spread"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("54.000000") != std::string::npos);
        CHECK(r.out.find("47.000000") != std::string::npos);
        CHECK(r.out.find("spread_c=0.000000") != std::string::npos);
        CHECK(r.out.find("objective: 0.000000") != std::string::npos);
    }

    SUBCASE("greedy method is accepted") {
        const CliResult r = run_cli({"allocate", "--scenario", scenario, "--target",
                                     "min-max-temp", "--method", "greedy"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("method: greedy") != std::string::npos);
    }
}

TEST_CASE("steady prints per-core temperatures") {
    const CliResult r =
        run_cli({"steady", "--scenario", (kScenarioDir / "single_medium.json").string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("core 0") != std::string::npos);
    CHECK(r.out.find("47.000000") != std::string::npos);
}

TEST_CASE("steady on a trace workload uses the duration-averaged power") {
    const CliResult r =
        run_cli({"steady", "--scenario", (kScenarioDir / "trace_demo.json").string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("global_max_temp_c:") != std::string::npos);
}

TEST_CASE("calibrate prints the fit and residuals and writes params") {
    const auto out_path = kTmpDir / "fitted_params.json";
    const CliResult r = run_cli({"calibrate", "--targets",
                                 (kScenarioDir / "reference_targets.json").string(), "--out",
                                 out_path.string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("t_amb_c: 43.818182") != std::string::npos);
    CHECK(r.out.find("g_lat_w_per_c: 0.150000") != std::string::npos);
    CHECK(r.out.find("residual mixed_max: 0.000000") != std::string::npos);
    CHECK(std::filesystem::exists(out_path));

    // The emitted params slot straight into a scenario config.
    std::ifstream params(out_path);
    std::stringstream body;
    body << params.rdbuf();
    CHECK(body.str().find("\"g_amb\": 0.1") != std::string::npos);
}

TEST_CASE("inconsistent calibration targets exit with code 2 and residual table") {
    const auto bad = kTmpDir / "bad_targets.json";
    {
        std::ofstream os(bad);
        os << R"({"single_medium": 47, "medium_high_neighbors": 53, "mixed_max": 51,
                  "all_high": 50, "all_low": 50})";
    }
    const CliResult r = run_cli({"calibrate", "--targets", bad.string()});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("calibration failed") != std::string::npos);
    CHECK(r.err.find("residual single_medium:") != std::string::npos);
    CHECK(r.err.find("residual all_low:") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
    SUBCASE("unknown flag") {
        const CliResult r = run_cli({"allocate", "--bogus"});
        CHECK(r.exit_code == 1);
        CHECK(!r.err.empty());
    }
    SUBCASE("missing subcommand") {
        const CliResult r = run_cli({});
        CHECK(r.exit_code == 1);
    }
    SUBCASE("bad target value") {
        const CliResult r =
            run_cli({"allocate", "--scenario", (kScenarioDir / "mixed_diagonal.json").string(),
                     "--target", "coolest"});
        CHECK(r.exit_code == 1);
    }
    SUBCASE("missing scenario file") {
        const CliResult r = run_cli({"steady", "--scenario", "/nonexistent/nope.json"});
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("simulate writes the series and prints a summary") {
    const auto csv = kTmpDir / "cli_series.csv";
    const CliResult r =
        run_cli({"simulate", "--scenario", (kScenarioDir / "trace_demo.json").string(), "--out",
                 csv.string()});
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(csv));
    CHECK(r.out.find("global_max_temp_c:") != std::string::npos);

    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "step,time_us,core,power_w,temp_c");
}

TEST_CASE("simulate honors the steps override") {
    const auto csv = kTmpDir / "cli_series_short.csv";
    const CliResult r =
        run_cli({"simulate", "--scenario", (kScenarioDir / "single_medium.json").string(),
                 "--out", csv.string(), "--steps", "50"});
    CHECK(r.exit_code == 0);
    std::ifstream in(csv);
    std::string line;
    int lines = 0;
    while (std::getline(in, line))
        ++lines;
    CHECK(lines == 1 + 50 * 8);
}
