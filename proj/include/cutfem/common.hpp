#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cutfem {

using Point = Eigen::Vector2d;
using Vector = Eigen::VectorXd;

using Index = std::ptrdiff_t;

/// Physical subdomain label. Omega^- carries rho^-, Omega^+ carries rho^+.
enum class Side { minus = 0, plus = 1 };

constexpr Side other(Side s) noexcept { return s == Side::minus ? Side::plus : Side::minus; }
constexpr int index_of(Side s) noexcept { return static_cast<int>(s); }

std::string_view to_string(Side s) noexcept;
Side side_from_string(std::string_view name);

// Exception hierarchy. The CLI maps ConfigError to exit code 1 and
// NumericalError (and its children) to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised when an edge carries more than one interface crossing.
class CoarseMeshError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace cutfem
