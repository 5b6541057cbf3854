#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rips {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n_vertices) : adjacency_(n_vertices) {}

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  /// Adds {u, v}; repeated insertions are no-ops. Throws UnknownVertex for
  /// out-of-range endpoints and InvalidInput for loops.
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  /// Induced subgraph on `subset` (sorted, duplicate-free); vertex i of the
  /// result is subset[i].
  Graph induced(std::span<const Vertex> subset) const;

  /// Connected component label per vertex, labels assigned in order of the
  /// smallest member.
  std::vector<std::size_t> component_labels(std::size_t* count = nullptr) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t num_edges_ = 0;
};

}  // namespace rips
