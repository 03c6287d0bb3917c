#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "semilab/repn.hpp"

namespace semilab {

// A point derivation at a matrix representation, recorded by its values on
// the generators: dP[v] = D(P_v), dL[e] = D(L_e). Values on longer words are
// forced by the Leibniz rule (see extend).
struct DerivationAtRep {
  MatrixRep rep;
  std::vector<Eigen::MatrixXcd> dP;
  std::vector<Eigen::MatrixXcd> dL;
};

struct DerivationReport {
  bool pass = false;
  std::vector<CheckItem> items;
};

// Zero-initialised derivation at rep.
DerivationAtRep zero_derivation(const MatrixRep& rep);

// Frobenius norm of the generator-value tuple.
double derivation_norm(const DerivationAtRep& d);

// Linear combination sum_i c_i * basis_i (all at the same rep).
DerivationAtRep lincomb(const MatrixRep& rep,
                        const std::vector<DerivationAtRep>& basis,
                        const std::vector<Complex>& coeffs);

// Checks the defining constraints: Leibniz for each idempotent relation
// P_v^2 = P_v, mutual orthogonality, the unit relation sum_v D(P_v) = 0, and
// the edge sandwich D(L_e) = D(P_r)L_e P_s + P_r D(L_e) P_s + P_r L_e D(P_s)
// (images under the representation). These force the Leibniz extension to be
// a well-defined derivation on the whole path algebra.
DerivationReport validate(const DerivationAtRep& d, double tol);

// Leibniz extension: on a word g_1...g_k the value is
// sum_t pi(g_1..g_{t-1}) D(g_t) pi(g_{t+1}..g_k), extended linearly.
Eigen::MatrixXcd extend(const DerivationAtRep& d, const NcPoly& a);
Eigen::MatrixXcd extend_word(const DerivationAtRep& d, const Word& w);

// Solution space of the constraint system: dimension and an orthonormal
// basis (with respect to the stacked coefficient inner product).
std::pair<int, std::vector<DerivationAtRep>> derivation_space(const MatrixRep& rep);

// The inner derivation a -> pi(a)X - Xpi(a).
DerivationAtRep inner_from(const MatrixRep& rep, const Eigen::MatrixXcd& X);

struct InnerSolve {
  bool success = false;
  double residual = 0.0;  // relative to the derivation's size
  Eigen::MatrixXcd X;
};

// Least-squares solve for X with D = [pi(.), X]; success iff the relative
// residual is at most tol. Minimum-norm solution.
InnerSolve solve_inner(const DerivationAtRep& d, double tol);

// Dimension of the inner derivations at rep: dim^2 minus the commutant
// dimension of the image.
int inner_dimension(const MatrixRep& rep);
// dim derivation_space - inner_dimension. Nonnegative when pi is onto.
int outer_dimension(const MatrixRep& rep);

struct KernelAgreement {
  bool inner = false;
  double inner_residual = 0.0;
  bool kernel_vanishes = false;
  double max_kernel_value = 0.0;  // largest |extend| over normalised kernel elements
  bool agree = false;             // inner == kernel_vanishes
  long words_checked = 0;
  std::vector<NcPoly> witnesses;  // kernel elements with nonvanishing image
};

// For an onto representation, D is inner iff its Leibniz extension kills
// every polynomial annihilated by the representation. Streams all words of
// length <= max_len (default 4*dim is provably enough: it covers products of
// the word basis of the image), detecting kernel elements incrementally.
// Throws if the representation is not onto.
KernelAgreement inner_iff_kernel_vanishing(const DerivationAtRep& d, int max_len,
                                           double tol);
KernelAgreement inner_iff_kernel_vanishing(const DerivationAtRep& d, double tol);

struct FactorsResult {
  bool factors = false;
  double max_violation = 0.0;
  long words_checked = 0;
  std::vector<NcPoly> witnesses;       // kernel elements of the cycle-model map
  std::vector<double> witness_values;  // |extend| on each witness
};

// D factors through the cycle-model algebra of w iff its extension vanishes
// on the kernel of the model map. Streams words of length <= max_len.
FactorsResult factors_through_cycle(const DerivationAtRep& d, const PathWord& w,
                                    int max_len, double tol);

struct NoninnerCertificate {
  int case_id = 0;  // 1: edge off the cycle between cycle sources; 2: loop on it
  int edge = -1;    // the edge e carrying D(L_e) != 0
  int j = 0;        // 1-indexed position with s(e_j) = r(e)
  int i = 0;        // 1-indexed position with s(e_i) = s(e); j == i for loops
};

struct NoninnerResult {
  bool exists = false;
  std::vector<NoninnerCertificate> certificates;
};

// Evaluates the two structural conditions under which the representation
// carries a derivation that cannot factor through the cycle model:
// (1) an edge outside w whose range and source both meet sources of w, or
// (2) a loop edge among e_1..e_n. Certificates name the edge and the
// 1-indexed cycle positions involved. Caveat: for a length-1 cycle the
// model is the whole algebra, so condition (2) is degenerate there — the
// associated construction is still non-inner but factors trivially.
NoninnerResult noninner_exists(const DirectedGraph& g, const PathWord& w);

// The two constructions behind noninner_exists, at pi_{w,lambda,mu}.
// Case 1: D vanishes on all generators except D(L_e) = e_{j,i} (1-indexed)
// for the given off-cycle edge. Case 2: e is a loop at position(s) of w and
// D(L_e) = pi(P_{s(e)}). Both satisfy the derivation constraints; they are
// non-inner, and for |lambda| < 1 they are continuous and do not factor.
DerivationAtRep build_noninner_case_i(const DirectedGraph& g, const PathWord& w,
                                      Complex lambda, Complex mu, int edge);
DerivationAtRep build_noninner_case_ii(const DirectedGraph& g, const PathWord& w,
                                       Complex lambda, Complex mu, int edge);

struct ContinuityReport {
  double max_ratio = 0.0;
  int samples = 0;
  bool pass = false;
};

// Empirical check of the continuity bound |D(L_e X)| <= |D(L_e)| * |L_e X|
// for the constructions: samples random X of the form L_e * (polynomial of
// degree <= sample_degree), estimates |L_e X| from below by Fock compression
// of depth fock_len, and reports the worst ratio. Ratios stay <= 1 + tol
// once fock_len is deep enough (the lower bound is monotone in fock_len).
ContinuityReport continuity_bound_check(const DerivationAtRep& d, int edge,
                                        int samples, int sample_degree,
                                        int fock_len, std::uint64_t seed,
                                        double tol);

}  // namespace semilab
