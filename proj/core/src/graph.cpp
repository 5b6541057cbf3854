#include "rips/graph.hpp"

#include <algorithm>
#include <string>

#include "rips/error.hpp"

namespace rips {

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= num_vertices() || v >= num_vertices()) {
    throw Error(ErrorKind::kUnknownVertex,
                "edge endpoint out of range: {" + std::to_string(u) + "," +
                    std::to_string(v) + "}");
  }
  if (u == v) {
    throw Error(ErrorKind::kInvalidInput, "loop at vertex " + std::to_string(u));
  }
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++num_edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  const auto& nu = adjacency_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> subset) const {
  Graph g(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= num_vertices()) {
      throw Error(ErrorKind::kUnknownVertex,
                  "vertex " + std::to_string(subset[i]) + " not in graph");
    }
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw Error(ErrorKind::kInvalidInput, "vertex subset must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (has_edge(subset[i], subset[j])) {
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return g;
}

std::vector<std::size_t> Graph::component_labels(std::size_t* count) const {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(num_vertices(), kUnset);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < num_vertices(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : adjacency_[x]) {
        if (label[y] == kUnset) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

}  // namespace rips
