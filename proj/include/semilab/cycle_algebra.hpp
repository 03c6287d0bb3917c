#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "semilab/ncpoly.hpp"

namespace semilab {

// Matrix-function model of the cycle tensor algebra: an n x n matrix of
// univariate polynomials in z, graded so that entry (i, j) (0-indexed) only
// carries monomials z^k with k = (j - i) mod n. The generators are
// Z_i = z at (i, i+1) for i < n and Z_n = z at (n, 1) (1-indexed), and every
// nonzero product of generators is a single monomial at a single entry.
class GradedMatrixFn {
 public:
  GradedMatrixFn() = default;
  explicit GradedMatrixFn(int n);

  int size() const { return n_; }
  bool is_zero() const;
  int degree() const;  // max z-exponent; -1 if zero

  // 0-indexed entry access.
  const std::map<int, Complex>& entry(int i, int j) const;
  // Throws if k < 0 or k != (j - i) mod n.
  void add_monomial(int i, int j, int k, Complex c);

  GradedMatrixFn operator+(const GradedMatrixFn& o) const;
  GradedMatrixFn operator-(const GradedMatrixFn& o) const;
  GradedMatrixFn operator*(Complex c) const;
  GradedMatrixFn operator*(const GradedMatrixFn& o) const;

  double coeff_norm() const;  // l2 norm over all coefficients
  void prune();

  // Coefficient vector indexed by (i, j, k) triples; used for span tests.
  std::vector<std::pair<std::array<int, 3>, Complex>> coefficients() const;

  static GradedMatrixFn zero(int n) { return GradedMatrixFn(n); }
  static GradedMatrixFn identity(int n);

 private:
  int n_ = 0;
  std::vector<std::map<int, Complex>> entries_;  // row-major, z-poly per entry
};

// Generator Z_i (1-indexed, 1 <= i <= n) and diagonal idempotent e_{i,i}.
GradedMatrixFn z_gen(int n, int i);
GradedMatrixFn unit_proj(int n, int i);

// Representation of the graph algebra inside the length-n cycle model,
// determined by a cycle w = e_1...e_n: P_v maps to the sum of e_{j,j} over
// positions j with s(e_j) = v, and L_e maps to the sum of Z_{j-1} over
// positions j with e_j = e, reading Z_0 as Z_n. The index shift (relative to
// the naive Z_j assignment) is what makes eval_at(mu_twist(iota_w(a))) agree
// exactly with the matrix representation built from (w, lambda, mu).
GradedMatrixFn iota_w(const NcPoly& a, const PathWord& w,
                      int degree_cap = RunConfig{}.degree_cap);

// True iff the sources s(e_1), ..., s(e_n) are pairwise distinct; this is
// exactly when iota_w is onto. Requires w to be a primitive cycle.
bool iota_onto_predicate(const DirectedGraph& g, const PathWord& w);

// True iff F lies in the linear span of iota_w images of graph words of
// length <= n*deg_bound + n together with the vertex images. Decided by
// incremental linear algebra on coefficient vectors.
bool ran_iota_contains(const DirectedGraph& g, const GradedMatrixFn& F,
                       const PathWord& w, int deg_bound);

enum class TwistRoute {
  WrapCount,        // mu^c with c = floor((i + k - 1)/n), 1-indexed rows
  GeneratorRewrite, // walk the unique generator chain and count Z_n factors
  Rotation,         // z -> e^{i theta/n} z composed with a diagonal phase
};

// The twist pi_mu: fixes e_{i,i} and Z_1..Z_{n-1}, scales Z_n by mu. All
// three routes agree on graded matrices; the first two are exact.
GradedMatrixFn mu_twist(const GradedMatrixFn& F, Complex mu,
                        TwistRoute route = TwistRoute::WrapCount);

// Evaluation tau_lambda: entrywise z = lambda. Requires |lambda| <= 1.
Eigen::MatrixXcd eval_at(const GradedMatrixFn& F, Complex lambda);

// Max spectral norm of F(z) over equispaced points on the unit circle,
// reported at grid_size and 2*grid_size points (the refined grid contains
// the coarse one, so .second >= .first and both are lower bounds).
std::pair<double, double> circle_sup_norm_levels(const GradedMatrixFn& F,
                                                 int grid_size);
double circle_sup_norm(const GradedMatrixFn& F, int grid_size);

}  // namespace semilab
