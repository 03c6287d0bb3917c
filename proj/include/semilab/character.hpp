#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "semilab/graph.hpp"
#include "semilab/ncpoly.hpp"

namespace semilab {

// Multiplicative linear functional of the graph algebra. Such a functional is
// supported at a single vertex v0: it sends P_{v0} to 1, every other vertex
// idempotent to 0, the i-th loop at v0 to lambda[i], and every other edge to
// 0. lambda lives in the closed l2 ball (row-contraction condition).
struct Character {
  const DirectedGraph* graph = nullptr;
  int v0 = -1;
  std::vector<int> loop_edges;  // loops at v0, ascending edge index
  std::vector<Complex> lambda;  // value on each loop edge
};

// Character at v0 with the given loop values; loop edges are detected
// automatically (all loops at v0, ascending edge index). Throws
// invalid_argument on a bad vertex index, a size mismatch, or an l2 norm
// above 1 + 1e-12.
Character make_character(const DirectedGraph& g, int v0, std::vector<Complex> lambda);

// One character structure per vertex, lambda zero-filled; the full family at
// a vertex is obtained by replacing lambda with any closed-ball vector.
std::vector<Character> enumerate_character_structures(const DirectedGraph& g);

// Gelfand symbol of a at chi's character family: the commutative polynomial
// in the loop variables obtained by sending each all-loop word to its
// monomial and P_{v0} to 1; words leaving the loops at v0 (and other vertex
// idempotents) are killed. Monomial classes whose coefficient sum is
// negligible against the accumulated absolute mass of the class are dropped,
// so elements of the commutator ideal map to the zero symbol exactly.
CommPoly char_symbol(const Character& chi, const NcPoly& a);

// chi(a): the symbol evaluated at chi.lambda.
Complex eval_character(const Character& chi, const NcPoly& a);

// Point derivation at a character: a linear functional D with
// D(ab) = D(a) chi(b) + chi(a) D(b). Every such D kills the vertex
// idempotents and the non-loop edges, so it is determined by its values
// d[i] = D(L_{e_i}) on the loop edges.
struct CharDerivation {
  Character chi;
  std::vector<Complex> d;
};

// Validates the size of d against chi's loop list.
CharDerivation char_derivation(const Character& chi, std::vector<Complex> d);

// Leibniz extension of D: on a word g_1...g_k the value is
// sum_t chi(g_1..g_{t-1}) d(g_t) chi(g_{t+1}..g_k), extended linearly with
// the same mass-pruned class grouping as char_symbol, so commutators map to
// 0 exactly.
Complex extend_char(const CharDerivation& D, const NcPoly& a);

// The canonical derivation D_i: d is the i-th standard basis vector.
// Requires lambda[i] == 0 exactly; throws invalid_argument otherwise.
CharDerivation canonical_derivation(const Character& chi, int i);

// Splits D = D1 + D2 with D2 = sum of d[i] * D_i over {i : lambda[i] == 0}
// and D1 = D - D2, so D1 kills every loop whose coordinate vanishes and D2
// is a combination of canonical derivations.
std::pair<CharDerivation, CharDerivation> decompose(const CharDerivation& D);

struct DerivativeFormulaReport {
  bool pass = false;
  double max_error = 0.0;
  int samples = 0;
};

// Checks extend_char(D, a) == sum_i d[i] * (d/dz_i symbol(a))(lambda) on
// randomized polynomials of degree <= max_degree: the Leibniz position sum
// against the directional derivative of the symbol. On a single-vertex graph
// the symbol side is computed through NcPoly::abelianize, keeping the two
// sides independent.
DerivativeFormulaReport derivative_formula_check(const CharDerivation& D, int samples,
                                                 int max_degree, double tol,
                                                 std::uint64_t seed);

struct PeakingReport {
  bool pass = false;
  double peak_value = 0.0;    // |g(lambda_1)|, expected 1
  double off_peak_max = 0.0;  // max |g| on the slice grid off the margin disk
  double gap = 0.0;           // 1 - off_peak_max
  int grid_points = 0;        // slice points actually evaluated
};

// Witness that a boundary character with all coordinates nonzero peaks: the
// function g(z) = (z + lambda_1) / (2 lambda_1) has |g(lambda_1)| = 1 while
// |g| stays below 1 - gap on the slice disk {|z| <= |lambda_1|} away from a
// margin-neighborhood of lambda_1. Requires ||lambda||_2 = 1 within 1e-12,
// lambda_1 != 0, and margin < 2 |lambda_1| (so the grid is nonempty).
PeakingReport boundary_peaking_witness(const std::vector<Complex>& lambda, int grid,
                                       double margin);

struct RangeCommutatorReport {
  bool pass = false;
  int samples = 0;
  double max_abelian_norm = 0.0;  // largest abelianized coefficient seen
  double max_char_value = 0.0;    // largest |chi(aX - Xa)| seen
};

// For the inner derivation a -> aX - Xa on a single-vertex graph: checks on
// randomized a that the range lies in the commutator ideal, i.e. the
// abelianization vanishes exactly and every sampled character kills it
// (within tol; with the mass-pruned classes the values come out exactly 0).
RangeCommutatorReport inner_range_in_commutator_check(const NcPoly& X, int samples,
                                                      int max_degree, double tol,
                                                      std::uint64_t seed);

// Diagnostic only (truncation evidence, not a proof): the coefficients
// c_k = chi(ad_X^k(a)) / k! of the orbit z -> chi(e^{z ad_X}(a)),
// k = 0..order. For an inner derivation all c_k with k >= 1 vanish.
std::vector<Complex> exp_orbit_coefficients(const Character& chi, const NcPoly& X,
                                            const NcPoly& a, int order);

struct D1ProfilePoint {
  int degree = 0;
  double value = 0.0;
};

// Lower-bound growth profile of D over ball-normalized symbols: for each N in
// degrees (ascending), the best ratio |sum_i d[i] * (d/dz_i f)(lambda)| / S(f)
// across candidate symbols f of degree N, where S(f) bounds sup{|f(z)| :
// ||z||_2 <= 1} from above in closed form. Candidates: powers of the pairing
// sum_i conj(lambda_i) z_i (S = ||lambda||^N), powers of the peaking direction
// (1 + pairing)/2 (S = ((1 + ||lambda||)/2)^N), monomials z_i^N (S = 1), and
// mixed z_i * pairing^{N-1} (S = ||lambda||^{N-1}). Values fold into a running
// max, so the entry at N covers all degrees <= N. Every value is a valid lower
// bound for sup{|D(f)| : deg f <= N, ball-sup of f <= 1}. At an interior
// lambda all candidate ratios decay, so the profile stays bounded; at a
// boundary lambda with d = lambda the pairing powers give exactly N, so the
// profile grows without bound.
std::vector<D1ProfilePoint> d1_profile(const CharDerivation& D,
                                       const std::vector<int>& degrees);

}  // namespace semilab
