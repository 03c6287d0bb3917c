#pragma once

#include <cstdint>
#include <stdexcept>

namespace semilab {

// Knobs shared by the numeric operations. All tolerances are absolute unless an
// operation documents otherwise.
struct RunConfig {
  double tol = 1e-10;       // generic comparison tolerance
  int degree_cap = 16;      // cap on product degrees, exceeded -> error
  int grid = 256;           // circle / sphere sampling resolution
  int truncation = 32;      // Fock-space path-length truncation
  std::uint64_t seed = 20260815;

  void validate() const {
    if (tol <= 0 || degree_cap <= 0 || grid <= 0 || truncation <= 0)
      throw std::invalid_argument("RunConfig: all parameters must be positive");
  }
};

// Zero-pruning threshold for polynomial coefficients.
inline constexpr double kCoeffPrune = 1e-14;

}  // namespace semilab
