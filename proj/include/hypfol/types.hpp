#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypfol {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the set on which an operation is defined
/// (point outside a surface, parameter out of range, empty domain).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped before meeting its tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, int iterations)
      : Error(what + " (residual " + std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Malformed or schema-violating configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline double norm2(const CVec& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

/// Standard hermitian product <z, w> = sum z_i conj(w_i).
inline Complex hermitian(const CVec& z, const CVec& w) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

}  // namespace hypfol
