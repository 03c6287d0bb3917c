#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace semilab {

// Edge of a finite directed multigraph. src is the source vertex s(e), dst the
// range vertex r(e); both are indices into the owning graph's vertex list.
struct Edge {
  std::string id;
  int src = -1;
  int dst = -1;
};

// A word of edges. The convention throughout the library: w = (e_1, ..., e_n)
// is a path iff r(e_i) = s(e_{i-1}) for i = 2..n, i.e. reading left to right
// each edge's range meets the previous edge's source (operator order: the
// rightmost edge acts first). The word's source is s(e_n), its range r(e_1).
// It is a cycle iff additionally r(e_1) = s(e_n).
struct PathWord {
  std::vector<int> edges;  // edge indices

  bool operator==(const PathWord&) const = default;
  auto operator<=>(const PathWord&) const = default;
  int length() const { return static_cast<int>(edges.size()); }
};

class DirectedGraph {
 public:
  DirectedGraph() = default;
  // edges given as (id, src id, dst id)
  DirectedGraph(std::vector<std::string> vertex_ids,
                std::vector<std::tuple<std::string, std::string, std::string>> edge_list);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_id(int v) const { return vertices_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  int source(int e) const { return edges_.at(e).src; }  // s(e)
  int range(int e) const { return edges_.at(e).dst; }   // r(e)

  int vertex_index(const std::string& id) const;  // throws on unknown id
  int edge_index(const std::string& id) const;    // throws on unknown id
  std::optional<int> find_vertex(const std::string& id) const;
  std::optional<int> find_edge(const std::string& id) const;

  bool is_path(const PathWord& w) const;
  bool is_cycle(const PathWord& w) const;  // path with r(e_1) = s(e_n)
  // w = v^k for no proper subword v
  bool is_primitive(const PathWord& w) const;
  // shortest v with w = v^k (k >= 2), if any
  std::optional<PathWord> primitive_root(const PathWord& w) const;
  // every vertex reaches every vertex; v reaches itself via the empty path
  bool is_transitive() const;

  // All primitive cycles of length in [1, max_len], lexicographic by edge
  // index sequence. Rotations of a cycle are distinct entries.
  std::vector<PathWord> enumerate_primitive_cycles(int max_len) const;

  PathWord make_path(const std::vector<std::string>& edge_ids) const;  // validates

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_lookup_;
  std::unordered_map<std::string, int> edge_lookup_;
};

// Fixtures.
//
// cycle_graph(n): vertices v1..vn, edges e1..en with s(e_i) = v_{i+1},
// r(e_i) = v_i and s(e_n) = v_1, so (e_1, ..., e_n) is the full cycle.
DirectedGraph cycle_graph(int n);
// single_vertex_graph(n): one vertex u with n loops f1..fn.
DirectedGraph single_vertex_graph(int n);
// gilfeather_graph(n): 2n vertices v1..v2n; odd vertices are sources, even
// vertices sinks: v1->v2, then v_{2j+1}->v_{2j} and v_{2j+1}->v_{2j+2} for
// j = 1..n-1, plus the long arc v1->v2n. Edges g1..g2n in that order.
// Not transitive for any n.
DirectedGraph gilfeather_graph(int n);

}  // namespace semilab
