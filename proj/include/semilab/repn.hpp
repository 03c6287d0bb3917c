#pragma once

#include <string>

#include "semilab/cycle_algebra.hpp"

namespace semilab {

// Finite-dimensional representation of the graph algebra: one dim x dim
// matrix per vertex idempotent and per edge generator.
struct MatrixRep {
  const DirectedGraph* graph = nullptr;
  int dim = 0;
  std::vector<Eigen::MatrixXcd> vertex_images;
  std::vector<Eigen::MatrixXcd> edge_images;
};

struct CheckItem {
  std::string condition;
  bool pass = false;
  double value = 0.0;   // measured defect or norm
  std::string witness;  // offending generator(s), empty when passing
};

struct CcReport {
  bool pass = false;
  double row_norm = 0.0;
  std::vector<CheckItem> items;
};

// Checks the three completely-contractive-representation conditions:
// vertex images are mutually orthogonal projections, each edge image is
// reproduced by its range/source sandwich, and the edge row is a contraction.
CcReport validate_cc(const MatrixRep& rep, double tol);

// The representation attached to a path w = e_1...e_n: P_v is the sum of
// e_{j,j} over positions with s(e_j) = v and L_e the sum of lambda*e_{j-1,j}
// over positions with e_j = e, where e_{0,1} means mu*e_{n,1}. Satisfies the
// contractivity conditions whenever w is a cycle.
MatrixRep pi_w_lambda_mu(const DirectedGraph& g, const PathWord& w,
                         Complex lambda, Complex mu);

// Multiplicative-linear extension to polynomials.
Eigen::MatrixXcd apply(const MatrixRep& rep, const NcPoly& a);
Eigen::MatrixXcd apply_word(const MatrixRep& rep, const Word& wd);

// Dimension of span{images of vertices and of words of length <= max_len}.
// The rep is onto M_n exactly when this reaches dim^2.
int image_dimension(const MatrixRep& rep, int max_len);

struct FactorizationReport {
  bool pass = false;
  double max_discrepancy = 0.0;
  long words_checked = 0;
};

// Confirms that evaluating the twisted cycle-model image reproduces the
// matrix representation word by word, up to length max_len.
FactorizationReport verify_factorization(const DirectedGraph& g, const PathWord& w,
                                         Complex lambda, Complex mu, int max_len,
                                         double tol);

// Orthonormal basis (in coefficient space) of the polynomials of degree
// <= max_len annihilated by the representation. Intended for small spans;
// the word count grows exponentially with max_len on multi-edge vertices.
std::vector<NcPoly> kernel_sample(const MatrixRep& rep, int max_len);

double spectral_norm(const Eigen::MatrixXcd& m);

}  // namespace semilab
