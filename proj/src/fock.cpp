#include "semilab/fock.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include <map>
#include <stdexcept>

namespace semilab {

namespace {
constexpr int kDenseCutoff = 512;
}

double fock_norm_lower_bound(const NcPoly& p, int max_len) {
  if (p.is_zero()) return 0.0;
  if (max_len < 0) throw std::invalid_argument("fock_norm_lower_bound: max_len < 0");
  const DirectedGraph& g = *p.graph();

  const std::vector<Word> basis = enumerate_fock_paths(g, max_len);
  std::map<Word, int> index;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) index.emplace(basis[i], i);
  const int dim = static_cast<int>(basis.size());

  std::vector<Eigen::Triplet<Complex>> trips;
  for (int j = 0; j < dim; ++j)
    for (const auto& [w, c] : p.terms()) {
      auto out = word_product(g, w, basis[j]);
      if (!out) continue;
      auto it = index.find(*out);
      if (it == index.end()) continue;  // image path longer than the cutoff
      trips.emplace_back(it->second, j, c);
    }
  Eigen::SparseMatrix<Complex> A(dim, dim);
  A.setFromTriplets(trips.begin(), trips.end());

  if (dim <= kDenseCutoff) {
    Eigen::MatrixXcd D(A);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(D);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  }

  // Power iteration on A*A. Any unit vector v certifies |Av| as a lower
  // bound on the top singular value, so the result is safe even before
  // convergence.
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(dim);
  for (int i = 0; i < dim; ++i) v(i) += Complex(0.0, 1.0 / (i + 2.0));
  v.normalize();
  double sigma = 0.0;
  for (int iter = 0; iter < 300; ++iter) {
    Eigen::VectorXcd Av = A * v;
    double s = Av.norm();
    if (s <= 0) return 0.0;
    Eigen::VectorXcd w = A.adjoint() * Av;
    double wn = w.norm();
    if (wn <= 0) return s;
    v = w / wn;
    if (iter > 10 && std::abs(s - sigma) <= 1e-13 * std::max(1.0, s)) {
      sigma = s;
      break;
    }
    sigma = s;
  }
  return (A * v).norm();
}

double fock_norm_lower_bound(const NcPoly& p) {
  return fock_norm_lower_bound(p, RunConfig{}.truncation);
}

}  // namespace semilab
