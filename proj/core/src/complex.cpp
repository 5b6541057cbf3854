#include "rips/complex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "rips/error.hpp"

namespace rips {
namespace {

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Vertex> sorted_face(std::span<const Vertex> face) {
  std::vector<Vertex> f(face.begin(), face.end());
  std::sort(f.begin(), f.end());
  if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
    throw Error(ErrorKind::kInvalidInput, "face has a repeated vertex");
  }
  return f;
}

void check_budget(std::size_t count, std::size_t budget) {
  if (count > budget) {
    throw Error(ErrorKind::kBudgetExceeded,
                "face enumeration exceeded budget of " + std::to_string(budget) + " faces");
  }
}

// Depth-first clique extension; emits cliques of each size in lexicographic
// order because roots and candidates are visited in ascending order.
class CliqueEnumerator {
 public:
  CliqueEnumerator(const Graph& g, int dim_cap, std::size_t budget,
                   std::vector<FaceList>& out)
      : graph_(g), dim_cap_(dim_cap), budget_(budget), out_(out) {}

  void run() {
    for (Vertex v = 0; v < graph_.num_vertices(); ++v) {
      clique_.assign(1, v);
      emit();
      if (dim_cap_ >= 1) {
        auto nb = graph_.neighbors(v);
        std::vector<Vertex> cand(std::upper_bound(nb.begin(), nb.end(), v), nb.end());
        extend(cand);
      }
    }
  }

 private:
  void emit() {
    out_[clique_.size() - 1].push_back(clique_);
    check_budget(++count_, budget_);
  }

  void extend(const std::vector<Vertex>& cand) {
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const Vertex c = cand[i];
      clique_.push_back(c);
      emit();
      if (static_cast<int>(clique_.size()) <= dim_cap_ && i + 1 < cand.size()) {
        auto nb = graph_.neighbors(c);
        std::vector<Vertex> next;
        std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end(),
                              nb.begin(), nb.end(), std::back_inserter(next));
        if (!next.empty()) extend(next);
      }
      clique_.pop_back();
    }
  }

  const Graph& graph_;
  int dim_cap_;
  std::size_t budget_;
  std::vector<FaceList>& out_;
  std::vector<Vertex> clique_;
  std::size_t count_ = 0;
};

void for_each_subset(const std::vector<Vertex>& set, std::size_t k,
                     const std::function<void(const std::vector<Vertex>&)>& fn) {
  if (k > set.size()) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vertex> sub(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) sub[i] = set[idx[i]];
    fn(sub);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == set.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<std::size_t> FaceList::find(std::span<const Vertex> face) const {
  if (face.size() != width_) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lex_less((*this)[mid], face)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::equal(face.begin(), face.end(), (*this)[lo].begin())) return lo;
  return std::nullopt;
}

void FaceList::canonicalize() {
  const std::size_t n = size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less((*this)[a], (*this)[b]);
  });
  std::vector<Vertex> data;
  data.reserve(data_.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto f = (*this)[order[k]];
    if (k > 0 && std::equal(f.begin(), f.end(), (*this)[order[k - 1]].begin())) continue;
    data.insert(data.end(), f.begin(), f.end());
  }
  data_ = std::move(data);
}

bool FaceList::is_canonical() const {
  for (std::size_t i = 0; i < size(); ++i) {
    auto f = (*this)[i];
    for (std::size_t j = 1; j < f.size(); ++j) {
      if (f[j] <= f[j - 1]) return false;
    }
    if (i > 0 && !lex_less((*this)[i - 1], f)) return false;
  }
  return true;
}

SimplicialComplex SimplicialComplex::from_face_lists(std::size_t n_vertices, int dim_cap,
                                                     std::vector<FaceList> faces, bool flag,
                                                     std::vector<Vertex> parent) {
  if (dim_cap < 0) throw Error(ErrorKind::kInvalidInput, "dim_cap must be non-negative");
  faces.resize(static_cast<std::size_t>(dim_cap) + 1);
  for (int p = 0; p <= dim_cap; ++p) {
    auto& list = faces[p];
    if (list.size() == 0) list = FaceList(static_cast<std::size_t>(p) + 1);
    if (list.width() != static_cast<std::size_t>(p) + 1) {
      throw Error(ErrorKind::kInvalidInput, "face list width does not match dimension");
    }
    if (!list.is_canonical()) {
      throw Error(ErrorKind::kInvalidInput, "face list is not canonical");
    }
  }
  if (faces[0].size() != n_vertices) {
    throw Error(ErrorKind::kInvalidInput, "every vertex must be a 0-face");
  }
  for (std::size_t i = 0; i < n_vertices; ++i) {
    if (faces[0][i][0] != i) throw Error(ErrorKind::kInvalidInput, "vertex ids must be 0..n-1");
  }
  std::vector<Vertex> facet;
  for (int p = 1; p <= dim_cap; ++p) {
    for (std::size_t i = 0; i < faces[p].size(); ++i) {
      auto f = faces[p][i];
      for (std::size_t drop = 0; drop < f.size(); ++drop) {
        facet.clear();
        for (std::size_t j = 0; j < f.size(); ++j) {
          if (j != drop) facet.push_back(f[j]);
        }
        if (!faces[p - 1].find(facet)) {
          throw Error(ErrorKind::kInvalidInput, "face list is not closed under subsets");
        }
      }
    }
  }
  SimplicialComplex c;
  c.num_vertices_ = n_vertices;
  c.dim_cap_ = dim_cap;
  c.flag_ = flag;
  c.graph_ = Graph(n_vertices);
  if (dim_cap >= 1) {
    for (std::size_t i = 0; i < faces[1].size(); ++i) {
      c.graph_.add_edge(faces[1][i][0], faces[1][i][1]);
    }
  }
  c.faces_ = std::move(faces);
  if (parent.empty()) {
    parent.resize(n_vertices);
    std::iota(parent.begin(), parent.end(), Vertex{0});
  } else if (parent.size() != n_vertices) {
    throw Error(ErrorKind::kInvalidInput, "parent map size does not match vertex count");
  }
  c.parent_ = std::move(parent);
  return c;
}

SimplicialComplex SimplicialComplex::from_generators(
    std::size_t n_vertices, int dim_cap, const std::vector<std::vector<Vertex>>& generators) {
  if (dim_cap < 0) throw Error(ErrorKind::kInvalidInput, "dim_cap must be non-negative");
  std::vector<FaceList> faces;
  for (int p = 0; p <= dim_cap; ++p) faces.emplace_back(static_cast<std::size_t>(p) + 1);
  for (Vertex v = 0; v < n_vertices; ++v) faces[0].push_back(std::span<const Vertex>(&v, 1));
  for (const auto& g : generators) {
    const auto f = sorted_face(g);
    for (Vertex v : f) {
      if (v >= n_vertices) throw Error(ErrorKind::kUnknownVertex, "generator vertex out of range");
    }
    for (int p = 1; p <= dim_cap && static_cast<std::size_t>(p) < f.size(); ++p) {
      for_each_subset(f, static_cast<std::size_t>(p) + 1,
                      [&](const std::vector<Vertex>& s) { faces[p].push_back(s); });
    }
  }
  for (auto& list : faces) list.canonicalize();
  return from_face_lists(n_vertices, dim_cap, std::move(faces), false);
}

std::size_t SimplicialComplex::num_faces(int p) const {
  if (p < 0 || p > dim_cap_) return 0;
  return faces_[p].size();
}

std::optional<std::size_t> SimplicialComplex::find_face(std::span<const Vertex> face) const {
  if (face.empty() || face.size() > faces_.size()) return std::nullopt;
  return faces_[face.size() - 1].find(face);
}

std::vector<std::size_t> SimplicialComplex::face_counts() const {
  std::vector<std::size_t> out;
  for (const auto& list : faces_) out.push_back(list.size());
  return out;
}

std::size_t SimplicialComplex::total_faces() const {
  std::size_t s = 0;
  for (const auto& list : faces_) s += list.size();
  return s;
}

std::vector<std::vector<Vertex>> SimplicialComplex::maximal_faces() const {
  std::vector<std::vector<bool>> covered(faces_.size());
  for (std::size_t p = 0; p < faces_.size(); ++p) covered[p].assign(faces_[p].size(), false);
  std::vector<Vertex> facet;
  for (std::size_t p = 1; p < faces_.size(); ++p) {
    for (std::size_t i = 0; i < faces_[p].size(); ++i) {
      auto f = faces_[p][i];
      for (std::size_t drop = 0; drop < f.size(); ++drop) {
        facet.clear();
        for (std::size_t j = 0; j < f.size(); ++j) {
          if (j != drop) facet.push_back(f[j]);
        }
        covered[p - 1][*faces_[p - 1].find(facet)] = true;
      }
    }
  }
  std::vector<std::vector<Vertex>> out;
  for (std::size_t p = 0; p < faces_.size(); ++p) {
    for (std::size_t i = 0; i < faces_[p].size(); ++i) {
      if (!covered[p][i]) {
        auto f = faces_[p][i];
        out.emplace_back(f.begin(), f.end());
      }
    }
  }
  return out;
}

SimplicialComplex flag_skeleton(const Graph& graph, int dim_cap, std::size_t face_budget) {
  if (dim_cap < 0) throw Error(ErrorKind::kInvalidInput, "dim_cap must be non-negative");
  std::vector<FaceList> faces;
  for (int p = 0; p <= dim_cap; ++p) faces.emplace_back(static_cast<std::size_t>(p) + 1);
  CliqueEnumerator(graph, dim_cap, face_budget, faces).run();
  return SimplicialComplex::from_face_lists(graph.num_vertices(), dim_cap, std::move(faces), true);
}

SimplicialComplex build_rips(const PointCloud& cloud, const ThresholdPolicy& policy, int dim_cap,
                             std::size_t face_budget) {
  return flag_skeleton(proximity_graph(cloud, policy), dim_cap, face_budget);
}

std::vector<Vertex> common_neighbors(const Graph& graph, std::span<const Vertex> face) {
  if (face.empty()) {
    std::vector<Vertex> all(graph.num_vertices());
    std::iota(all.begin(), all.end(), Vertex{0});
    return all;
  }
  auto first = graph.neighbors(face[0]);
  std::vector<Vertex> common(first.begin(), first.end());
  for (std::size_t i = 1; i < face.size(); ++i) {
    auto nb = graph.neighbors(face[i]);
    std::vector<Vertex> next;
    std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                          std::back_inserter(next));
    common.swap(next);
  }
  // Face vertices are never their own neighbours, but a non-clique input
  // could list one face vertex as a neighbour of the others.
  std::erase_if(common, [&](Vertex v) {
    return std::find(face.begin(), face.end(), v) != face.end();
  });
  return common;
}

SimplicialComplex link_of(const SimplicialComplex& complex, std::span<const Vertex> face) {
  const auto f = sorted_face(face);
  if (!complex.contains(f)) throw Error(ErrorKind::kFaceNotPresent, "face not in complex");
  const int cap = complex.dim_cap() - static_cast<int>(f.size());
  if (cap < 0) {
    throw Error(ErrorKind::kDimensionOutOfRange,
                "link of a top-dimensional face is not determined by a capped complex");
  }
  if (complex.is_flag()) {
    const auto nf = common_neighbors(complex.graph(), f);
    auto link = flag_skeleton(complex.graph().induced(nf), cap);
    return SimplicialComplex::from_face_lists(
        nf.size(), cap, [&] {
          std::vector<FaceList> lists;
          for (int p = 0; p <= cap; ++p) lists.push_back(link.faces(p));
          return lists;
        }(),
        true, nf);
  }
  // General complexes: lk(F) = {G : G u F in complex, G n F = empty}.
  std::vector<std::vector<Vertex>> generators;
  std::vector<Vertex> verts;
  for (int p = static_cast<int>(f.size()); p <= complex.dim_cap(); ++p) {
    for (std::size_t i = 0; i < complex.num_faces(p); ++i) {
      auto g = complex.face(p, i);
      if (!std::includes(g.begin(), g.end(), f.begin(), f.end())) continue;
      std::vector<Vertex> rest;
      std::set_difference(g.begin(), g.end(), f.begin(), f.end(), std::back_inserter(rest));
      verts.insert(verts.end(), rest.begin(), rest.end());
      generators.push_back(std::move(rest));
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (auto& g : generators) {
    for (auto& v : g) {
      v = static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    }
  }
  auto link = SimplicialComplex::from_generators(verts.size(), cap, generators);
  std::vector<FaceList> lists;
  for (int p = 0; p <= cap; ++p) lists.push_back(link.faces(p));
  return SimplicialComplex::from_face_lists(verts.size(), cap, std::move(lists), false, verts);
}

SimplicialComplex star_of(const SimplicialComplex& complex, std::span<const Vertex> face) {
  const auto f = sorted_face(face);
  if (!complex.contains(f)) throw Error(ErrorKind::kFaceNotPresent, "face not in complex");
  auto w = common_neighbors(complex.graph(), f);
  w.insert(w.end(), f.begin(), f.end());
  std::sort(w.begin(), w.end());
  return induced_subcomplex(complex, w);
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& complex,
                                     std::span<const Vertex> subset) {
  std::vector<Vertex> w(subset.begin(), subset.end());
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  constexpr auto kAbsent = static_cast<Vertex>(-1);
  std::vector<Vertex> index(complex.num_vertices(), kAbsent);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= complex.num_vertices()) {
      throw Error(ErrorKind::kUnknownVertex,
                  "vertex " + std::to_string(w[i]) + " not in complex");
    }
    index[w[i]] = static_cast<Vertex>(i);
  }
  std::vector<FaceList> lists;
  std::vector<Vertex> mapped;
  for (int p = 0; p <= complex.dim_cap(); ++p) {
    FaceList out(static_cast<std::size_t>(p) + 1);
    const auto& in = complex.faces(p);
    for (std::size_t i = 0; i < in.size(); ++i) {
      auto f = in[i];
      mapped.clear();
      for (Vertex v : f) {
        if (index[v] == kAbsent) break;
        mapped.push_back(index[v]);
      }
      // The vertex map is increasing, so lexicographic order is preserved.
      if (mapped.size() == f.size()) out.push_back(mapped);
    }
    lists.push_back(std::move(out));
  }
  return SimplicialComplex::from_face_lists(w.size(), complex.dim_cap(), std::move(lists),
                                            complex.is_flag(), w);
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b, int dim_cap,
                       std::size_t face_budget) {
  if (dim_cap < 0) throw Error(ErrorKind::kInvalidInput, "dim_cap must be non-negative");
  for (const auto* c : {&a, &b}) {
    if (c->dim_cap() < dim_cap && c->num_faces(c->dim_cap()) > 0) {
      throw Error(ErrorKind::kDimensionOutOfRange,
                  "join input is truncated below the requested dim_cap");
    }
  }
  const auto shift = static_cast<Vertex>(a.num_vertices());
  std::vector<FaceList> lists;
  std::size_t count = 0;
  std::vector<Vertex> face;
  for (int d = 0; d <= dim_cap; ++d) {
    FaceList out(static_cast<std::size_t>(d) + 1);
    // |F| + |G| = d + 1 with F in a (possibly empty) and G in b.
    for (int fa = 0; fa <= d + 1; ++fa) {
      const int fb = d + 1 - fa;
      const std::size_t na = fa == 0 ? 1 : a.num_faces(fa - 1);
      const std::size_t nb = fb == 0 ? 1 : b.num_faces(fb - 1);
      for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          face.clear();
          if (fa > 0) {
            auto f = a.face(fa - 1, i);
            face.insert(face.end(), f.begin(), f.end());
          }
          if (fb > 0) {
            for (Vertex v : b.face(fb - 1, j)) face.push_back(v + shift);
          }
          out.push_back(face);
          check_budget(++count, face_budget);
        }
      }
    }
    out.canonicalize();
    lists.push_back(std::move(out));
  }
  return SimplicialComplex::from_face_lists(a.num_vertices() + b.num_vertices(), dim_cap,
                                            std::move(lists), a.is_flag() && b.is_flag());
}

Graph quasi_rips_graph(const QuasiRipsSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "quasi-Rips alpha must lie in (0, 1)");
  }
  if (spec.policy.threshold != 1.0) {
    throw Error(ErrorKind::kInvalidInput, "quasi-Rips policy threshold must be 1");
  }
  // The dist <= 1 side goes through the ordinary Rips classification.
  const Graph rips = proximity_graph(spec.cloud, spec.policy);
  const std::size_t n = spec.cloud.size();
  const double a2 = spec.alpha * spec.alpha;
  auto mandatory = [&](Vertex u, Vertex v) {
    return squared_distance(spec.cloud.point(u), spec.cloud.point(v)) <= a2;
  };
  Graph g(n);
  const auto& pol = spec.optional_edges;
  using Kind = OptionalEdgePolicy::Kind;
  if (pol.kind == Kind::kExplicit) {
    for (auto [u, v] : pol.edges) {
      if (u >= n || v >= n || u == v) {
        throw Error(ErrorKind::kPolicyViolation, "explicit edge has invalid endpoints");
      }
      if (mandatory(u, v) || !rips.has_edge(u, v)) {
        throw Error(ErrorKind::kPolicyViolation,
                    "explicit edge {" + std::to_string(u) + "," + std::to_string(v) +
                        "} is not optional");
      }
      g.add_edge(u, v);
    }
  }
  std::mt19937_64 rng(pol.seed);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!rips.has_edge(u, v)) continue;
      if (mandatory(u, v)) {
        g.add_edge(u, v);
        continue;
      }
      switch (pol.kind) {
        case Kind::kIncludeAll:
          g.add_edge(u, v);
          break;
        case Kind::kExcludeAll:
        case Kind::kExplicit:
          break;
        case Kind::kSeededRandom: {
          const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          if (x < pol.probability) g.add_edge(u, v);
          break;
        }
      }
    }
  }
  return g;
}

SimplicialComplex build_quasi_rips(const QuasiRipsSpec& spec, int dim_cap,
                                   std::size_t face_budget) {
  return flag_skeleton(quasi_rips_graph(spec), dim_cap, face_budget);
}

}  // namespace rips
