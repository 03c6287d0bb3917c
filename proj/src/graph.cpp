#include "semilab/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace semilab {

DirectedGraph::DirectedGraph(
    std::vector<std::string> vertex_ids,
    std::vector<std::tuple<std::string, std::string, std::string>> edge_list) {
  vertices_ = std::move(vertex_ids);
  if (vertices_.empty()) throw std::invalid_argument("graph: needs at least one vertex");
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    if (!vertex_lookup_.emplace(vertices_[i], i).second)
      throw std::invalid_argument("graph: duplicate vertex id " + vertices_[i]);
  }
  for (auto& [id, src, dst] : edge_list) {
    Edge e;
    e.id = id;
    auto s = vertex_lookup_.find(src);
    auto d = vertex_lookup_.find(dst);
    if (s == vertex_lookup_.end() || d == vertex_lookup_.end())
      throw std::invalid_argument("graph: edge " + id + " references unknown vertex");
    e.src = s->second;
    e.dst = d->second;
    if (!edge_lookup_.emplace(id, static_cast<int>(edges_.size())).second)
      throw std::invalid_argument("graph: duplicate edge id " + id);
    edges_.push_back(std::move(e));
  }
}

int DirectedGraph::vertex_index(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) throw std::invalid_argument("unknown vertex id: " + id);
  return it->second;
}

int DirectedGraph::edge_index(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) throw std::invalid_argument("unknown edge id: " + id);
  return it->second;
}

std::optional<int> DirectedGraph::find_vertex(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> DirectedGraph::find_edge(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

bool DirectedGraph::is_path(const PathWord& w) const {
  if (w.edges.empty()) return false;
  for (int e : w.edges)
    if (e < 0 || e >= num_edges()) return false;
  for (size_t i = 1; i < w.edges.size(); ++i)
    if (range(w.edges[i]) != source(w.edges[i - 1])) return false;
  return true;
}

bool DirectedGraph::is_cycle(const PathWord& w) const {
  return is_path(w) && range(w.edges.front()) == source(w.edges.back());
}

std::optional<PathWord> DirectedGraph::primitive_root(const PathWord& w) const {
  const int n = w.length();
  for (int d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (int i = d; i < n && repeats; ++i)
      if (w.edges[i] != w.edges[i % d]) repeats = false;
    if (repeats) return PathWord{{w.edges.begin(), w.edges.begin() + d}};
  }
  return std::nullopt;
}

bool DirectedGraph::is_primitive(const PathWord& w) const {
  if (!is_path(w)) return false;
  return !primitive_root(w).has_value();
}

bool DirectedGraph::is_transitive() const {
  const int nv = num_vertices();
  std::vector<std::vector<bool>> reach(nv, std::vector<bool>(nv, false));
  for (int v = 0; v < nv; ++v) reach[v][v] = true;  // empty path
  for (int e = 0; e < num_edges(); ++e) reach[source(e)][range(e)] = true;
  for (int k = 0; k < nv; ++k)
    for (int i = 0; i < nv; ++i)
      if (reach[i][k])
        for (int j = 0; j < nv; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      if (!reach[i][j]) return false;
  return true;
}

std::vector<PathWord> DirectedGraph::enumerate_primitive_cycles(int max_len) const {
  if (max_len < 0) throw std::invalid_argument("enumerate_primitive_cycles: max_len < 0");
  std::vector<PathWord> out;
  PathWord cur;
  // DFS in ascending edge order; preorder visit = lexicographic output.
  // Appending e to (.., last) needs r(e) = s(last).
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == max_len) return;
    for (int e = 0; e < num_edges(); ++e) {
      if (!cur.edges.empty() && range(e) != source(cur.edges.back())) continue;
      cur.edges.push_back(e);
      if (range(cur.edges.front()) == source(cur.edges.back()) && is_primitive(cur))
        out.push_back(cur);
      self(self, depth + 1);
      cur.edges.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

PathWord DirectedGraph::make_path(const std::vector<std::string>& edge_ids) const {
  PathWord w;
  w.edges.reserve(edge_ids.size());
  for (const auto& id : edge_ids) w.edges.push_back(edge_index(id));
  if (!is_path(w)) throw std::invalid_argument("make_path: edge sequence is not a path");
  return w;
}

DirectedGraph cycle_graph(int n) {
  if (n < 1) throw std::invalid_argument("cycle_graph: n must be >= 1");
  std::vector<std::string> vs;
  std::vector<std::tuple<std::string, std::string, std::string>> es;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    int src = (i % n) + 1;  // s(e_i) = v_{i+1}, s(e_n) = v_1
    es.emplace_back("e" + std::to_string(i), "v" + std::to_string(src),
                    "v" + std::to_string(i));
  }
  return DirectedGraph(std::move(vs), std::move(es));
}

DirectedGraph single_vertex_graph(int n) {
  if (n < 1) throw std::invalid_argument("single_vertex_graph: n must be >= 1");
  std::vector<std::tuple<std::string, std::string, std::string>> es;
  for (int i = 1; i <= n; ++i) es.emplace_back("f" + std::to_string(i), "u", "u");
  return DirectedGraph({"u"}, std::move(es));
}

DirectedGraph gilfeather_graph(int n) {
  if (n < 1) throw std::invalid_argument("gilfeather_graph: n must be >= 1");
  std::vector<std::string> vs;
  for (int i = 1; i <= 2 * n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<std::tuple<std::string, std::string, std::string>> es;
  int id = 1;
  auto add = [&](int a, int b) {
    es.emplace_back("g" + std::to_string(id++), "v" + std::to_string(a),
                    "v" + std::to_string(b));
  };
  add(1, 2);
  for (int j = 1; j <= n - 1; ++j) {
    add(2 * j + 1, 2 * j);
    add(2 * j + 1, 2 * j + 2);
  }
  add(1, 2 * n);
  return DirectedGraph(std::move(vs), std::move(es));
}

}  // namespace semilab
