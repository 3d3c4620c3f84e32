#pragma once

#include <stdexcept>
#include <string>

namespace gsw {

/// Thrown when an iterative or adaptive numerical method fails to reach its
/// target accuracy (series non-convergence, quadrature subdivision exhausted).
/// The message carries the achieved error estimate.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a request is structurally valid but not supported by the
/// selected rule (e.g. James-Stein with heteroscedastic noise).
class unsupported_config : public std::invalid_argument {
  public:
    explicit unsupported_config(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace gsw
