#ifndef TPMON_ERRORS_HPP
#define TPMON_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace tpmon {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arguments or state: bad core ids, mismatched vector lengths,
// violated preconditions.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent input data: config files, traces, LUTs.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Linear-solve or integration failure that the invariants should rule out.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// Calibration could not reproduce the requested targets. Carries one
// residual per target (single_medium, medium_high_neighbors, mixed_max,
// all_high, all_low); empty when the solve never got that far.
class CalibrationError : public Error {
public:
    CalibrationError(const std::string& msg, std::vector<double> residuals = {})
        : Error(msg), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

} // namespace tpmon

#endif
