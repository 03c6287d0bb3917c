#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "semilab/derivation.hpp"

namespace semilab {

// A norm (or certified lower bound of one) on polynomials.
using NormOracle = std::function<double(const NcPoly&)>;

// Exact operator norm for elements of a cycle algebra: push through the
// matrix-function model of the cycle w and take the sup of the spectral norm
// over grid_size points of the unit circle (a lower bound converging from
// below as the grid refines; exact whenever the grid contains a maximiser).
NormOracle make_circle_norm_oracle(const DirectedGraph& g, const PathWord& w,
                                   int grid_size);

// Certified lower bound via compression to paths of length <= max_len.
NormOracle make_fock_oracle(const DirectedGraph& g, int max_len);

struct ProfilePoint {
  int degree = 0;
  double value = 0.0;  // best ratio |extend(D, f)| / oracle(f) found
  NcPoly witness;      // scaled so oracle(witness) = 1
};

// Norm-growth profile of a derivation: for each N an estimate of
// sup { |extend(D, f)| : deg f <= N, oracle(f) <= 1 }, maximised over
// monomial words, truncated Mobius-type peak functions centred at the
// representation's evaluation point, seeded random polynomials, and (on a
// one-loop graph) the top singular vector of the extension operator in the
// mean-square grid norm, re-scored under the oracle. Every reported value is
// achieved by its witness, so the profile is a family of lower bounds.
std::vector<ProfilePoint> derivation_norm_profile(const DerivationAtRep& d,
                                                  const std::vector<int>& degrees,
                                                  const NormOracle& oracle,
                                                  std::uint64_t seed = RunConfig{}.seed);

}  // namespace semilab
