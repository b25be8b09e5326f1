#pragma once

#include <stdexcept>
#include <string>

namespace coslab {

/// Base class for all library errors.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: non-finite entries, dimension mismatch, out-of-range parameters.
class invalid_input_error : public error {
  public:
    using error::error;
};

/// Input outside the mathematical domain of the operation.
class domain_error : public error {
  public:
    using error::error;
};

/// Wrong argument kind for a family realization (e.g. a real argument passed to a
/// coordinate-only family).
class type_error : public error {
  public:
    using error::error;
};

/// An iteration failed to converge. Carries the residual at the point of failure.
class numerical_failure : public error {
  public:
    numerical_failure(const std::string& msg, double residual)
        : error(msg), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

/// A guarded computation exceeded the overflow threshold. Carries the last
/// finite partial result (or the offending magnitude, depending on the operation).
class overflow_error : public error {
  public:
    overflow_error(const std::string& msg, double partial)
        : error(msg), partial_(partial) {}
    double partial() const { return partial_; }

  private:
    double partial_;
};

/// Convergence is possible but too slow for the requested tolerance. Carries the
/// tolerance actually achievable.
class slow_convergence_error : public error {
  public:
    slow_convergence_error(const std::string& msg, double achievable)
        : error(msg), achievable_(achievable) {}
    double achievable() const { return achievable_; }

  private:
    double achievable_;
};

/// CLI / config file problems. Mapped to exit code 2 by the command-line tool.
class config_error : public error {
  public:
    using error::error;
};

} // namespace coslab
