#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qmem {

namespace detail {
inline std::string scientific(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}
}  // namespace detail

/// Parameter outside its physical domain (non-positive capacitance, g <= 0, angle out of range).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Precondition of an operation violated by its caller (non-Hermitian input, wrong dimension).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A density-matrix invariant broke during time stepping.
class IntegrationDiverged : public std::runtime_error {
public:
    IntegrationDiverged(std::size_t step, std::string invariant, double value)
        : std::runtime_error("integration diverged at step " + std::to_string(step) + ": " +
                             invariant + " = " + detail::scientific(value)),
          step_(step),
          invariant_(std::move(invariant)),
          value_(value) {}

    std::size_t step() const noexcept { return step_; }
    const std::string& invariant() const noexcept { return invariant_; }
    double value() const noexcept { return value_; }

private:
    std::size_t step_;
    std::string invariant_;
    double value_;
};

/// Configuration document rejected; `field` is the dot path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace qmem
