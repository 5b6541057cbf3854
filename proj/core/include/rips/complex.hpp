#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rips/geometry.hpp"
#include "rips/graph.hpp"

namespace rips {

inline constexpr std::size_t kDefaultFaceBudget = 50'000'000;

/// Faces of one dimension stored as a flat, lexicographically sorted array of
/// strictly increasing vertex tuples.
class FaceList {
 public:
  FaceList() = default;
  explicit FaceList(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t size() const { return width_ == 0 ? 0 : data_.size() / width_; }
  std::span<const Vertex> operator[](std::size_t i) const {
    return {data_.data() + i * width_, width_};
  }
  std::optional<std::size_t> find(std::span<const Vertex> face) const;

  void push_back(std::span<const Vertex> face) {
    data_.insert(data_.end(), face.begin(), face.end());
  }
  void reserve(std::size_t faces) { data_.reserve(faces * width_); }
  /// Sorts lexicographically and removes duplicates.
  void canonicalize();
  bool is_canonical() const;

  friend bool operator==(const FaceList&, const FaceList&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<Vertex> data_;
};

/// Simplicial complex truncated at `dim_cap`, with faces stored explicitly in
/// canonical (dimension, lexicographic) order. Complexes derived from a parent
/// (links, induced subcomplexes) record the parent id of each vertex.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Builds from explicit face lists, one per dimension 0..dim_cap, each
  /// canonical. Vertices must be exactly 0..n_vertices-1 as 0-faces.
  /// Throws InvalidInput unless the lists are downward closed.
  static SimplicialComplex from_face_lists(std::size_t n_vertices, int dim_cap,
                                           std::vector<FaceList> faces, bool flag,
                                           std::vector<Vertex> parent = {});

  /// Downward closure of the given faces (any order, any vertex order).
  /// Faces above `dim_cap` are truncated.
  static SimplicialComplex from_generators(std::size_t n_vertices, int dim_cap,
                                           const std::vector<std::vector<Vertex>>& generators);

  std::size_t num_vertices() const { return num_vertices_; }
  int dim_cap() const { return dim_cap_; }
  bool is_flag() const { return flag_; }

  std::size_t num_faces(int p) const;
  std::span<const Vertex> face(int p, std::size_t i) const { return faces_[p][i]; }
  const FaceList& faces(int p) const { return faces_[p]; }
  std::optional<std::size_t> find_face(std::span<const Vertex> face) const;
  bool contains(std::span<const Vertex> face) const { return find_face(face).has_value(); }
  /// Face counts f_0..f_dim_cap.
  std::vector<std::size_t> face_counts() const;
  std::size_t total_faces() const;

  /// The 1-skeleton.
  const Graph& graph() const { return graph_; }

  /// Parent vertex id of each vertex; identity for root complexes.
  const std::vector<Vertex>& parent_vertices() const { return parent_; }

  /// Faces that are not contained in any other face (up to dim_cap).
  std::vector<std::vector<Vertex>> maximal_faces() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.num_vertices_ == b.num_vertices_ && a.dim_cap_ == b.dim_cap_ &&
           a.faces_ == b.faces_;
  }

 private:
  std::size_t num_vertices_ = 0;
  int dim_cap_ = 0;
  bool flag_ = false;
  std::vector<FaceList> faces_;
  Graph graph_;
  std::vector<Vertex> parent_;
};

/// Clique complex X(G) truncated at dim_cap. Throws BudgetExceeded if more
/// than `face_budget` faces would be produced.
SimplicialComplex flag_skeleton(const Graph& graph, int dim_cap,
                                std::size_t face_budget = kDefaultFaceBudget);

SimplicialComplex build_rips(const PointCloud& cloud, const ThresholdPolicy& policy, int dim_cap,
                             std::size_t face_budget = kDefaultFaceBudget);

/// Common neighbours N(F) of a face's vertices, excluding F.
std::vector<Vertex> common_neighbors(const Graph& graph, std::span<const Vertex> face);

/// lk(F) as the flag complex on N(F) with cap reduced by |F|. Flag inputs only.
SimplicialComplex link_of(const SimplicialComplex& complex, std::span<const Vertex> face);

/// st(F) = induced subcomplex on N(F) u F.
SimplicialComplex star_of(const SimplicialComplex& complex, std::span<const Vertex> face);

/// Faces contained in `subset`; vertex i of the result is the i-th smallest
/// element of `subset`.
SimplicialComplex induced_subcomplex(const SimplicialComplex& complex,
                                     std::span<const Vertex> subset);

/// Simplicial join with b's vertices shifted by a.num_vertices(). Both inputs
/// must carry all faces needed up to `dim_cap`.
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b, int dim_cap,
                       std::size_t face_budget = kDefaultFaceBudget);

/// How pairs with alpha < dist <= 1 are resolved in a quasi-Rips complex.
struct OptionalEdgePolicy {
  enum class Kind { kIncludeAll, kExcludeAll, kExplicit, kSeededRandom };
  Kind kind = Kind::kIncludeAll;
  std::vector<Edge> edges;  // kExplicit
  double probability = 0.5;  // kSeededRandom
  std::uint64_t seed = 0;    // kSeededRandom

  static OptionalEdgePolicy include_all() { return {}; }
  static OptionalEdgePolicy exclude_all() { return {Kind::kExcludeAll, {}, 0.0, 0}; }
  static OptionalEdgePolicy explicit_edges(std::vector<Edge> e) {
    return {Kind::kExplicit, std::move(e), 0.0, 0};
  }
  static OptionalEdgePolicy seeded_random(double p, std::uint64_t seed) {
    return {Kind::kSeededRandom, {}, p, seed};
  }
};

struct QuasiRipsSpec {
  double alpha = 0.5;
  PointCloud cloud;
  OptionalEdgePolicy optional_edges;
  /// Numerical policy for the dist <= 1 boundary; its threshold must be 1.
  ThresholdPolicy policy;
};

/// Edge graph of a quasi-Rips complex: dist <= alpha always, dist > 1 never.
Graph quasi_rips_graph(const QuasiRipsSpec& spec);

SimplicialComplex build_quasi_rips(const QuasiRipsSpec& spec, int dim_cap,
                                   std::size_t face_budget = kDefaultFaceBudget);

}  // namespace rips
