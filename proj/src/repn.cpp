#include "semilab/repn.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace semilab {

namespace {

constexpr double kRankTol = 1e-10;

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

void check_rep_shape(const MatrixRep& rep) {
  if (rep.graph == nullptr) throw std::invalid_argument("rep has no graph");
  if (rep.dim <= 0) throw std::invalid_argument("rep dimension must be positive");
  if (static_cast<int>(rep.vertex_images.size()) != rep.graph->num_vertices() ||
      static_cast<int>(rep.edge_images.size()) != rep.graph->num_edges())
    throw std::invalid_argument("rep image count does not match graph");
  for (const auto& m : rep.vertex_images)
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw std::invalid_argument("vertex image has wrong shape");
  for (const auto& m : rep.edge_images)
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw std::invalid_argument("edge image has wrong shape");
}

}  // namespace

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

CcReport validate_cc(const MatrixRep& rep, double tol) {
  check_rep_shape(rep);
  const DirectedGraph& g = *rep.graph;
  CcReport report;
  report.pass = true;

  auto push = [&](const std::string& cond, double value, const std::string& who) {
    CheckItem item;
    item.condition = cond;
    item.value = value;
    item.pass = value <= tol;
    if (!item.pass) item.witness = who;
    report.pass = report.pass && item.pass;
    report.items.push_back(item);
  };

  for (int v = 0; v < g.num_vertices(); ++v) {
    const Eigen::MatrixXcd& P = rep.vertex_images[v];
    push("projection-idempotent", (P * P - P).norm(), g.vertex_id(v));
    push("projection-selfadjoint", (P - P.adjoint()).norm(), g.vertex_id(v));
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int u = 0; u < g.num_vertices(); ++u) {
      if (u == v) continue;
      push("projection-orthogonality",
           (rep.vertex_images[v] * rep.vertex_images[u]).norm(),
           g.vertex_id(v) + "," + g.vertex_id(u));
    }
  for (int e = 0; e < g.num_edges(); ++e) {
    const Eigen::MatrixXcd& L = rep.edge_images[e];
    const Eigen::MatrixXcd& Pr = rep.vertex_images[g.range(e)];
    const Eigen::MatrixXcd& Ps = rep.vertex_images[g.source(e)];
    push("edge-sandwich", (Pr * L * Ps - L).norm(), g.edge(e).id);
  }

  // Row contraction: the block row of all edge images has operator norm <= 1.
  Eigen::MatrixXcd row(rep.dim, rep.dim * std::max(1, g.num_edges()));
  row.setZero();
  for (int e = 0; e < g.num_edges(); ++e)
    row.block(0, e * rep.dim, rep.dim, rep.dim) = rep.edge_images[e];
  report.row_norm = spectral_norm(row);
  CheckItem item;
  item.condition = "edge-row-contraction";
  item.value = report.row_norm;
  item.pass = report.row_norm <= 1.0 + tol;
  if (!item.pass) item.witness = "edge row";
  report.pass = report.pass && item.pass;
  report.items.push_back(item);
  return report;
}

MatrixRep pi_w_lambda_mu(const DirectedGraph& g, const PathWord& w,
                         Complex lambda, Complex mu) {
  if (!g.is_path(w) || w.edges.empty())
    throw std::invalid_argument("representation requires a nonempty path");
  if (std::abs(lambda) > 1.0 + 1e-12)
    throw std::invalid_argument("|lambda| must be <= 1");
  if (std::abs(std::abs(mu) - 1.0) > 1e-12)
    throw std::invalid_argument("mu must be unimodular");

  const int n = static_cast<int>(w.edges.size());
  MatrixRep rep;
  rep.graph = &g;
  rep.dim = n;
  rep.vertex_images.assign(g.num_vertices(), Eigen::MatrixXcd::Zero(n, n));
  rep.edge_images.assign(g.num_edges(), Eigen::MatrixXcd::Zero(n, n));
  for (int j = 1; j <= n; ++j) {
    const int e = w.edges[j - 1];
    rep.vertex_images[g.source(e)](j - 1, j - 1) += 1.0;
    if (j >= 2)
      rep.edge_images[e](j - 2, j - 1) += lambda;
    else
      rep.edge_images[e](n - 1, 0) += lambda * mu;
  }
  return rep;
}

Eigen::MatrixXcd apply_word(const MatrixRep& rep, const Word& wd) {
  check_rep_shape(rep);
  if (wd.is_vertex()) return rep.vertex_images[wd.vertex];
  Eigen::MatrixXcd acc = rep.edge_images[wd.edges[0]];
  for (std::size_t t = 1; t < wd.edges.size(); ++t) acc = acc * rep.edge_images[wd.edges[t]];
  return acc;
}

Eigen::MatrixXcd apply(const MatrixRep& rep, const NcPoly& a) {
  check_rep_shape(rep);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
  for (const auto& [wd, c] : a.terms()) acc += c * apply_word(rep, wd);
  return acc;
}

int image_dimension(const MatrixRep& rep, int max_len) {
  check_rep_shape(rep);
  const DirectedGraph& g = *rep.graph;
  const int n = rep.dim;
  const int full = n * n;

  // Incremental orthonormal basis of vectorised images.
  std::vector<Eigen::VectorXcd> basis;
  auto try_add = [&](const Eigen::MatrixXcd& m) {
    Eigen::VectorXcd v = vec(m);
    const double scale = v.norm();
    if (scale <= kRankTol) return;
    Eigen::VectorXcd r = v;
    for (const auto& q : basis) r -= q.dot(r) * q;
    // One re-orthogonalisation pass keeps the basis numerically orthonormal.
    for (const auto& q : basis) r -= q.dot(r) * q;
    if (r.norm() > kRankTol * scale) basis.push_back(r.normalized());
  };

  for (const auto& P : rep.vertex_images) try_add(P);

  // Breadth-first sweep over words; matrices that vanish exactly cannot
  // produce nonzero descendants, so they are dropped from the frontier.
  std::vector<Eigen::MatrixXcd> frontier;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Eigen::MatrixXcd& L = rep.edge_images[e];
    if (L.norm() > 0.0) {
      try_add(L);
      frontier.push_back(L);
    }
  }
  for (int len = 2; len <= max_len; ++len) {
    if (static_cast<int>(basis.size()) >= full) break;
    std::vector<Eigen::MatrixXcd> next;
    for (const auto& m : frontier)
      for (int e = 0; e < g.num_edges(); ++e) {
        Eigen::MatrixXcd prod = m * rep.edge_images[e];
        if (prod.norm() > 0.0) {
          try_add(prod);
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return static_cast<int>(basis.size());
}

FactorizationReport verify_factorization(const DirectedGraph& g, const PathWord& w,
                                         Complex lambda, Complex mu, int max_len,
                                         double tol) {
  if (!g.is_cycle(w)) throw std::invalid_argument("factorization requires a cycle");
  MatrixRep rep = pi_w_lambda_mu(g, w, lambda, mu);
  const int n = rep.dim;

  // Model-side images of the generators, twisted and evaluated once.
  std::vector<Eigen::MatrixXcd> model_edges;
  std::vector<GradedMatrixFn> graded_edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    GradedMatrixFn fe = iota_w(NcPoly::edge(g, e), w, max_len + 1);
    Eigen::MatrixXcd me = eval_at(mu_twist(fe, mu, TwistRoute::WrapCount), lambda);
    graded_edges.push_back(std::move(fe));
    model_edges.push_back(std::move(me));
  }

  FactorizationReport report;
  report.pass = true;
  for (int v = 0; v < g.num_vertices(); ++v) {
    GradedMatrixFn fv = iota_w(NcPoly::vertex(g, v), w, 1);
    Eigen::MatrixXcd mv = eval_at(mu_twist(fv, mu, TwistRoute::WrapCount), lambda);
    double d = (mv - rep.vertex_images[v]).norm();
    report.max_discrepancy = std::max(report.max_discrepancy, d);
    ++report.words_checked;
  }

  // Depth-first over words, carrying both images; once both vanish exactly
  // every extension vanishes too, so the subtree contributes no discrepancy.
  struct Node {
    Eigen::MatrixXcd pi;
    Eigen::MatrixXcd model;
    int len;
  };
  std::vector<Node> stack;
  for (int e = 0; e < g.num_edges(); ++e) {
    stack.push_back({rep.edge_images[e], model_edges[e], 1});
  }
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    double d = (node.pi - node.model).norm();
    report.max_discrepancy = std::max(report.max_discrepancy, d);
    ++report.words_checked;
    if (node.len >= max_len) continue;
    if (node.pi.norm() == 0.0 && node.model.norm() == 0.0) continue;
    for (int e = 0; e < g.num_edges(); ++e) {
      stack.push_back({node.pi * rep.edge_images[e], node.model * model_edges[e],
                       node.len + 1});
    }
  }
  (void)n;
  report.pass = report.max_discrepancy <= tol;
  return report;
}

std::vector<NcPoly> kernel_sample(const MatrixRep& rep, int max_len) {
  check_rep_shape(rep);
  const DirectedGraph& g = *rep.graph;
  std::vector<Word> words = enumerate_words(g, max_len, true);
  const int cols = static_cast<int>(words.size());
  if (cols > 20000)
    throw std::invalid_argument("kernel_sample word count too large; reduce max_len");
  Eigen::MatrixXcd A(rep.dim * rep.dim, cols);
  for (int j = 0; j < cols; ++j) A.col(j) = vec(apply_word(rep, words[j]));

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = (sv.size() > 0 ? sv(0) : 0.0) * kRankTol + kRankTol;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;

  std::vector<NcPoly> out;
  for (int j = rank; j < cols; ++j) {
    NcPoly p(&g);
    for (int t = 0; t < cols; ++t) {
      Complex c = svd.matrixV()(t, j);
      if (std::abs(c) > kCoeffPrune) p.add_term(words[t], c);
    }
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace semilab
