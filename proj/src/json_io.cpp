#include "semilab/json_io.hpp"

#include <stdexcept>
#include <string>
#include <tuple>

namespace semilab {

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  return Complex{j.at("re").get<double>(), j.at("im").get<double>()};
}

Json graph_to_json(const DirectedGraph& g) {
  Json verts = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) verts.push_back(g.vertex_id(v));
  Json edges = Json::array();
  for (int e = 0; e < g.num_edges(); ++e)
    edges.push_back(Json{{"id", g.edge(e).id},
                         {"src", g.vertex_id(g.source(e))},
                         {"dst", g.vertex_id(g.range(e))}});
  return Json{{"vertices", verts}, {"edges", edges}};
}

DirectedGraph graph_from_json(const Json& j) {
  std::vector<std::string> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(v.get<std::string>());
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at("id").get<std::string>(), e.at("src").get<std::string>(),
                       e.at("dst").get<std::string>());
  return DirectedGraph(std::move(verts), std::move(edges));
}

Json ncpoly_to_json(const NcPoly& p) {
  const DirectedGraph* g = p.graph();
  Json out = Json::array();
  for (const auto& [w, c] : p.terms()) {
    Json word;
    if (w.is_vertex()) {
      word = Json{{"vertex", g->vertex_id(w.vertex)}};
    } else {
      word = Json::array();
      for (int e : w.edges) word.push_back(g->edge(e).id);
    }
    out.push_back(Json{{"word", word}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

NcPoly ncpoly_from_json(const Json& j, const DirectedGraph& g) {
  NcPoly p(&g);
  for (const auto& term : j) {
    const Complex c{term.at("re").get<double>(), term.at("im").get<double>()};
    const Json& word = term.at("word");
    if (word.is_object()) {
      p = p + NcPoly::vertex(g, g.vertex_index(word.at("vertex").get<std::string>())) * c;
    } else {
      Word w;
      for (const auto& e : word) w.edges.push_back(g.edge_index(e.get<std::string>()));
      p = p + NcPoly::word(g, w) * c;  // validates the path
    }
  }
  return p;
}

Json graded_to_json(const GradedMatrixFn& f) {
  const int n = f.size();
  Json entries = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) {
      Json cell = Json::array();
      for (const auto& [k, c] : f.entry(i, j))
        cell.push_back(Json::array({k, c.real(), c.imag()}));
      row.push_back(cell);
    }
    entries.push_back(row);
  }
  return Json{{"n", n}, {"entries", entries}};
}

GradedMatrixFn graded_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  GradedMatrixFn f(n);
  const Json& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != n)
    throw std::invalid_argument("graded_from_json: entry row count mismatch");
  for (int i = 0; i < n; ++i) {
    const Json& row = entries.at(i);
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("graded_from_json: entry column count mismatch");
    for (int jj = 0; jj < n; ++jj)
      for (const auto& mono : row.at(jj))
        f.add_monomial(i, jj, mono.at(0).get<int>(),
                       Complex{mono.at(1).get<double>(), mono.at(2).get<double>()});
  }
  return f;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const Json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: data size mismatch");
  Eigen::MatrixXcd m(rows, cols);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index jj = 0; jj < cols; ++jj) m(i, jj) = complex_from_json(data.at(t++));
  return m;
}

Json rep_to_json(const MatrixRep& rep) {
  Json vimgs = Json::array();
  for (const auto& m : rep.vertex_images) vimgs.push_back(matrix_to_json(m));
  Json eimgs = Json::array();
  for (const auto& m : rep.edge_images) eimgs.push_back(matrix_to_json(m));
  return Json{{"dim", rep.dim},
              {"graph", graph_to_json(*rep.graph)},
              {"vertex_images", vimgs},
              {"edge_images", eimgs}};
}

MatrixRep rep_from_json(const Json& j, const DirectedGraph& g) {
  if (j.contains("graph") && j.at("graph") != graph_to_json(g))
    throw std::invalid_argument("rep_from_json: embedded graph differs from the given one");
  MatrixRep rep;
  rep.graph = &g;
  rep.dim = j.at("dim").get<int>();
  for (const auto& m : j.at("vertex_images")) rep.vertex_images.push_back(matrix_from_json(m));
  for (const auto& m : j.at("edge_images")) rep.edge_images.push_back(matrix_from_json(m));
  if (static_cast<int>(rep.vertex_images.size()) != g.num_vertices() ||
      static_cast<int>(rep.edge_images.size()) != g.num_edges())
    throw std::invalid_argument("rep_from_json: image count does not match the graph");
  for (const auto& m : rep.vertex_images)
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw std::invalid_argument("rep_from_json: vertex image dimension mismatch");
  for (const auto& m : rep.edge_images)
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw std::invalid_argument("rep_from_json: edge image dimension mismatch");
  return rep;
}

Json derivation_to_json(const DerivationAtRep& d) {
  Json dp = Json::array();
  for (const auto& m : d.dP) dp.push_back(matrix_to_json(m));
  Json dl = Json::array();
  for (const auto& m : d.dL) dl.push_back(matrix_to_json(m));
  return Json{{"rep", rep_to_json(d.rep)}, {"dP", dp}, {"dL", dl}};
}

DerivationAtRep derivation_from_json(const Json& j, const DirectedGraph& g) {
  DerivationAtRep d;
  d.rep = rep_from_json(j.at("rep"), g);
  for (const auto& m : j.at("dP")) d.dP.push_back(matrix_from_json(m));
  for (const auto& m : j.at("dL")) d.dL.push_back(matrix_from_json(m));
  if (static_cast<int>(d.dP.size()) != g.num_vertices() ||
      static_cast<int>(d.dL.size()) != g.num_edges())
    throw std::invalid_argument("derivation_from_json: value count does not match the graph");
  return d;
}

Json character_to_json(const Character& chi) {
  Json loops = Json::array();
  for (int e : chi.loop_edges) loops.push_back(chi.graph->edge(e).id);
  Json lam = Json::array();
  for (const Complex& z : chi.lambda) lam.push_back(complex_to_json(z));
  return Json{{"v0", chi.graph->vertex_id(chi.v0)}, {"loops", loops}, {"lambda", lam}};
}

Character character_from_json(const Json& j, const DirectedGraph& g) {
  const int v0 = g.vertex_index(j.at("v0").get<std::string>());
  std::vector<Complex> lambda;
  for (const auto& z : j.at("lambda")) lambda.push_back(complex_from_json(z));
  Character chi = make_character(g, v0, std::move(lambda));
  if (j.contains("loops")) {
    Json loops = Json::array();
    for (int e : chi.loop_edges) loops.push_back(g.edge(e).id);
    if (j.at("loops") != loops)
      throw std::invalid_argument("character_from_json: loop list does not match the graph");
  }
  return chi;
}

}  // namespace semilab
