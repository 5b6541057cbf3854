#include "rips/homology.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rips/error.hpp"

namespace rips {
namespace {

void require_dimension(const SimplicialComplex& complex, int p) {
  if (p < 0 || p > complex.dim_cap()) {
    throw Error(ErrorKind::kDimensionOutOfRange,
                "dimension " + std::to_string(p) + " outside 0.." +
                    std::to_string(complex.dim_cap()));
  }
}

// rank d_q for q = 0..top, reducing from the top down and clearing columns
// that are known to reduce to zero.
std::vector<std::size_t> boundary_ranks(const SimplicialComplex& complex, int top,
                                        const FieldSpec& field) {
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 1, 0);
  std::vector<bool> clear;
  for (int q = top; q >= 0; --q) {
    const auto m = boundary_matrix(complex, q, field);
    if (clear.size() != m.n_cols) clear.assign(m.n_cols, false);
    std::vector<std::uint32_t> pivots;
    ranks[q] = column_rank(m, field, &clear, &pivots);
    clear.assign(m.n_rows, false);
    for (auto r : pivots) clear[r] = true;
  }
  return ranks;
}

std::vector<Vertex> normalize_walk(std::vector<Vertex> walk) {
  bool changed = true;
  while (changed && !walk.empty()) {
    changed = false;
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (!out.empty() && out.back() == walk[i]) {
        changed = true;
        continue;
      }
      out.push_back(walk[i]);
    }
    while (out.size() > 1 && out.front() == out.back()) {
      out.pop_back();
      changed = true;
    }
    walk.swap(out);
  }
  if (walk.size() <= 2) walk.clear();
  return walk;
}

bool shorter_then_lex(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Cycle make_cycle(const SimplicialComplex& complex, std::vector<Vertex> vertices,
                 const std::vector<CubeIndex>* cubes) {
  Cycle c;
  c.vertices = std::move(vertices);
  c.simple = is_simple(c.vertices);
  c.chord_free = c.simple && is_chord_free(complex.graph(), c.vertices);
  c.epsilon_simple = cubes && is_epsilon_simple(c.vertices, *cubes);
  return c;
}

PivotReducer boundary_image(const SimplicialComplex& complex, int p, const FieldSpec& field) {
  const auto m = boundary_matrix(complex, p, field);
  PivotReducer reducer(field, m.n_rows);
  for (const auto& col : m.columns) reducer.insert(col);
  return reducer;
}

// Keeps `fixed` (which must stay independent) and then greedily adds
// candidates in (length, lexicographic) order until `target` classes are held.
std::vector<std::vector<Vertex>> select_basis(const SimplicialComplex& complex,
                                              const PivotReducer& boundaries,
                                              const std::vector<std::vector<Vertex>>& fixed,
                                              std::vector<std::vector<Vertex>> candidates,
                                              std::size_t target, const FieldSpec& field) {
  PivotReducer reducer = boundaries;
  std::vector<std::vector<Vertex>> chosen;
  for (const auto& c : fixed) {
    if (!reducer.insert(cycle_chain(complex, c, field))) {
      throw Error(ErrorKind::kInvalidBasis, "retained basis cycles are dependent");
    }
    chosen.push_back(c);
  }
  for (auto& c : candidates) c = normalize_walk(std::move(c));
  std::erase_if(candidates, [](const auto& c) { return c.empty(); });
  for (auto& c : candidates) {
    if (is_simple(c)) c = canonical_cycle(c);
  }
  std::sort(candidates.begin(), candidates.end(), shorter_then_lex);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (auto& c : candidates) {
    if (chosen.size() >= target) break;
    if (reducer.insert(cycle_chain(complex, c, field))) chosen.push_back(std::move(c));
  }
  return chosen;
}

std::vector<std::vector<Vertex>> fundamental_cycles(const Graph& g) {
  constexpr auto kNone = static_cast<Vertex>(-1);
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> parent(n, kNone);
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y : g.neighbors(x)) {
        if (seen[y]) continue;
        seen[y] = true;
        parent[y] = x;
        depth[y] = depth[x] + 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<std::vector<Vertex>> cycles;
  for (auto [u, v] : g.edges()) {
    if (parent[u] == v || parent[v] == u) continue;
    std::vector<Vertex> up{u};
    std::vector<Vertex> down{v};
    Vertex a = u;
    Vertex b = v;
    while (depth[a] > depth[b]) up.push_back(a = parent[a]);
    while (depth[b] > depth[a]) down.push_back(b = parent[b]);
    while (a != b) {
      up.push_back(a = parent[a]);
      down.push_back(b = parent[b]);
    }
    down.pop_back();  // common ancestor already in `up`
    up.insert(up.end(), down.rbegin(), down.rend());
    cycles.push_back(std::move(up));
  }
  return cycles;
}

// Splits a non-simple cycle at its first repeated vertex, or a simple cycle at
// its first chord. Returns false if the cycle is simple and chord-free.
bool split_cycle(const Graph& g, const std::vector<Vertex>& c, std::vector<Vertex>& c1,
                 std::vector<Vertex>& c2) {
  const std::size_t r = c.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      if (c[i] != c[j]) continue;
      c1.assign(c.begin() + static_cast<std::ptrdiff_t>(i),
                c.begin() + static_cast<std::ptrdiff_t>(j));
      c2.assign(c.begin() + static_cast<std::ptrdiff_t>(j), c.end());
      c2.insert(c2.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i));
      return true;
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 2; j < r; ++j) {
      if (i == 0 && j == r - 1) continue;
      if (!g.has_edge(c[i], c[j])) continue;
      c1.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      c1.insert(c1.end(), c.begin() + static_cast<std::ptrdiff_t>(j), c.end());
      c2.assign(c.begin() + static_cast<std::ptrdiff_t>(i),
                c.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      return true;
    }
  }
  return false;
}

std::size_t first_beta(const SimplicialComplex& complex, const FieldSpec& field) {
  return betti_numbers(complex, 1, field).betti[1];
}

// Relabeling of `b` that matches `a` cube by cube, if one exists.
bool near_relabeling(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                     const std::vector<CubeIndex>& cubes, std::vector<Vertex>& out) {
  const std::size_t k = a.size();
  if (b.size() != k || k == 0) return false;
  out.resize(k);
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t s = 0; s < k; ++s) {
      bool match = true;
      for (std::size_t t = 0; t < k && match; ++t) {
        out[t] = dir == 0 ? b[(s + t) % k] : b[(s + k - t) % k];
        match = cubes[a[t]] == cubes[out[t]];
      }
      if (match) return true;
    }
  }
  return false;
}

}  // namespace

SparseColumnMatrix boundary_matrix(const SimplicialComplex& complex, int p,
                                   const FieldSpec& field) {
  require_dimension(complex, p);
  SparseColumnMatrix m;
  m.n_cols = complex.num_faces(p);
  m.columns.reserve(m.n_cols);
  if (p == 0) {
    m.n_rows = 1;
    m.columns.assign(m.n_cols, SparseVector{{0, 1}});
    return m;
  }
  m.n_rows = complex.num_faces(p - 1);
  const auto& rows = complex.faces(p - 1);
  const std::uint32_t minus_one = field.neg(1);
  std::vector<Vertex> facet;
  for (std::size_t j = 0; j < m.n_cols; ++j) {
    auto f = complex.face(p, j);
    SparseVector col;
    col.reserve(f.size());
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      facet.clear();
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (k != drop) facet.push_back(f[k]);
      }
      const auto row = rows.find(facet);
      if (!row) throw Error(ErrorKind::kInvalidInput, "complex is not closed under subsets");
      col.push_back({static_cast<std::uint32_t>(*row), drop % 2 == 0 ? 1u : minus_one});
    }
    std::sort(col.begin(), col.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
    m.columns.push_back(std::move(col));
  }
  return m;
}

BettiVector betti_numbers(const SimplicialComplex& complex, int pmax, const FieldSpec& field) {
  field.validate();
  if (pmax < 0 || pmax > complex.dim_cap() - 1) {
    throw Error(ErrorKind::kDimensionOutOfRange,
                "betti up to " + std::to_string(pmax) + " needs dim_cap >= " +
                    std::to_string(pmax + 1) + ", have " + std::to_string(complex.dim_cap()));
  }
  const auto ranks = boundary_ranks(complex, pmax + 1, field);
  BettiVector out{field, {}};
  for (int p = 0; p <= pmax; ++p) {
    out.betti.push_back(complex.num_faces(p) - ranks[p] - ranks[p + 1]);
  }
  return out;
}

BettiVector betti_numbers_through_cap(const SimplicialComplex& complex,
                                      const FieldSpec& field) {
  field.validate();
  const int top = complex.dim_cap();
  const auto ranks = boundary_ranks(complex, top, field);
  BettiVector out{field, {}};
  for (int p = 0; p <= top; ++p) {
    const std::size_t above = p < top ? ranks[p + 1] : 0;
    out.betti.push_back(complex.num_faces(p) - ranks[p] - above);
  }
  return out;
}

EulerReport euler_poincare_check(const SimplicialComplex& complex, const FieldSpec& field) {
  EulerReport r;
  r.from_faces = -1;
  const auto betti = betti_numbers_through_cap(complex, field);
  for (int p = 0; p <= complex.dim_cap(); ++p) {
    const std::int64_t sign = p % 2 == 0 ? 1 : -1;
    r.from_faces += sign * static_cast<std::int64_t>(complex.num_faces(p));
    r.from_betti += sign * static_cast<std::int64_t>(betti.betti[p]);
  }
  r.passed = r.from_faces == r.from_betti;
  return r;
}

SparseVector cycle_chain(const SimplicialComplex& complex, std::span<const Vertex> cycle,
                         const FieldSpec& field) {
  std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
  const std::size_t r = cycle.size();
  for (std::size_t t = 0; t < r; ++t) {
    const Vertex x = cycle[t];
    const Vertex y = cycle[(t + 1) % r];
    if (x == y) continue;
    const Vertex e[2] = {std::min(x, y), std::max(x, y)};
    const auto idx = complex.num_faces(1) > 0 ? complex.faces(1).find(e) : std::nullopt;
    if (!idx) {
      throw Error(ErrorKind::kFaceNotPresent,
                  "cycle step {" + std::to_string(x) + "," + std::to_string(y) +
                      "} is not an edge");
    }
    entries.emplace_back(static_cast<std::uint32_t>(*idx), x < y ? 1 : -1);
  }
  return make_sparse(std::move(entries), field);
}

bool is_simple(std::span<const Vertex> cycle) {
  if (cycle.size() < 3) return false;
  std::vector<Vertex> s(cycle.begin(), cycle.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool is_chord_free(const Graph& graph, std::span<const Vertex> cycle) {
  const std::size_t r = cycle.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 2; j < r; ++j) {
      if (i == 0 && j == r - 1) continue;
      if (graph.has_edge(cycle[i], cycle[j])) return false;
    }
  }
  return true;
}

bool is_epsilon_simple(std::span<const Vertex> cycle, std::span<const CubeIndex> cubes) {
  if (cycle.size() != 4 || !is_simple(cycle)) return false;
  auto same = [&](std::size_t i, std::size_t j) { return cubes[cycle[i]] == cubes[cycle[j]]; };
  return (same(0, 1) && same(2, 3)) || (same(1, 2) && same(3, 0));
}

std::vector<Vertex> canonical_cycle(std::span<const Vertex> cycle) {
  const std::size_t r = cycle.size();
  if (r == 0) return {};
  const std::size_t s =
      static_cast<std::size_t>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
  std::vector<Vertex> fwd(r);
  std::vector<Vertex> bwd(r);
  for (std::size_t t = 0; t < r; ++t) {
    fwd[t] = cycle[(s + t) % r];
    bwd[t] = cycle[(s + r - t) % r];
  }
  return std::min(fwd, bwd);
}

BasisCheck check_h1_basis(const SimplicialComplex& complex, const std::vector<Cycle>& cycles,
                          const FieldSpec& field) {
  BasisCheck check;
  check.beta1 = first_beta(complex, field);
  PivotReducer reducer = boundary_image(complex, 2, field);
  std::vector<SparseVector> chains;
  try {
    for (const auto& c : cycles) chains.push_back(cycle_chain(complex, c.vertices, field));
  } catch (const Error&) {
    return check;
  }
  check.edges_present = true;
  check.independent = true;
  for (auto& ch : chains) {
    if (!reducer.insert(std::move(ch))) check.independent = false;
  }
  check.spanning = check.independent && cycles.size() == check.beta1;
  return check;
}

CycleBasis h1_cycle_basis(const SimplicialComplex& complex, const FieldSpec& field) {
  field.validate();
  if (complex.dim_cap() < 2) {
    throw Error(ErrorKind::kDimensionOutOfRange, "H_1 basis needs dim_cap >= 2");
  }
  const std::size_t target = first_beta(complex, field);
  CycleBasis out;
  if (target == 0) return out;
  const PivotReducer boundaries = boundary_image(complex, 2, field);
  auto basis = select_basis(complex, boundaries, {}, fundamental_cycles(complex.graph()), target,
                            field);
  std::vector<Vertex> c1;
  std::vector<Vertex> c2;
  while (true) {
    auto it = std::find_if(basis.begin(), basis.end(), [&](const auto& c) {
      return split_cycle(complex.graph(), c, c1, c2);
    });
    if (it == basis.end()) break;
    basis.erase(it);
    basis.push_back(c1);
    basis.push_back(c2);
    basis = select_basis(complex, boundaries, {}, std::move(basis), target, field);
  }
  for (auto& c : basis) out.cycles.push_back(make_cycle(complex, std::move(c), nullptr));
  return out;
}

RefinedBasis refine_epsilon_simple(const CycleBasis& basis, const SimplicialComplex& complex,
                                   const PointCloud& cloud, double epsilon,
                                   const FieldSpec& field) {
  field.validate();
  if (cloud.size() != complex.num_vertices()) {
    throw Error(ErrorKind::kInvalidInput, "cloud and complex have different vertex counts");
  }
  if (!(epsilon > 0.0) || epsilon * epsilon * static_cast<double>(cloud.dim()) > 1.0) {
    throw Error(ErrorKind::kInvalidInput, "epsilon must lie in (0, dim^-1/2]");
  }
  if (!check_h1_basis(complex, basis.cycles, field).ok()) {
    throw Error(ErrorKind::kInvalidBasis, "input cycles are not an H_1 basis");
  }
  const auto cubes = cube_index(cloud, epsilon);
  const std::size_t target = basis.cycles.size();
  std::vector<std::vector<Vertex>> cycles;
  for (const auto& c : basis.cycles) cycles.push_back(c.vertices);

  RefinedBasis out;
  if (target > 0) {
    const PivotReducer boundaries = boundary_image(complex, 2, field);
    std::vector<Vertex> relabeled;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < cycles.size() && !progress; ++i) {
        if (is_epsilon_simple(cycles[i], cubes)) continue;
        for (std::size_t j = i + 1; j < cycles.size() && !progress; ++j) {
          if (is_epsilon_simple(cycles[j], cubes)) continue;
          if (!near_relabeling(cycles[i], cycles[j], cubes, relabeled)) continue;
          const auto& a = cycles[i];
          const std::size_t k = a.size();
          std::vector<std::vector<Vertex>> quads;
          for (std::size_t t = 0; t < k; ++t) {
            quads.push_back({relabeled[t], relabeled[(t + 1) % k], a[(t + 1) % k], a[t]});
          }
          std::vector<std::vector<Vertex>> kept;
          for (std::size_t m = 0; m < cycles.size(); ++m) {
            if (m != j) kept.push_back(cycles[m]);
          }
          auto next = select_basis(complex, boundaries, kept, std::move(quads), target, field);
          if (next.size() != target) {
            throw Error(ErrorKind::kInvalidBasis, "quadrilateral rewrite lost a class");
          }
          cycles = std::move(next);
          ++out.rewrites;
          progress = true;
        }
      }
    }
  }
  for (auto& c : cycles) {
    out.basis.cycles.push_back(make_cycle(complex, std::move(c), &cubes));
    if (!out.basis.cycles.back().epsilon_simple) ++out.non_epsilon_simple;
  }
  return out;
}

std::size_t induced_image_dim(const SimplicialComplex& sub, std::span<const Vertex> injection,
                              const SimplicialComplex& super, int p, const FieldSpec& field) {
  field.validate();
  require_dimension(sub, p);
  if (p + 1 > super.dim_cap()) {
    throw Error(ErrorKind::kDimensionOutOfRange, "super complex needs dim_cap >= p + 1");
  }
  if (injection.size() != sub.num_vertices()) {
    throw Error(ErrorKind::kNotASubcomplex, "vertex map size does not match sub complex");
  }
  {
    std::vector<Vertex> image(injection.begin(), injection.end());
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end() ||
        (!image.empty() && image.back() >= super.num_vertices())) {
      throw Error(ErrorKind::kNotASubcomplex, "vertex map is not an injection into super");
    }
  }
  // Every face of sub must land on a face of super; p-faces also record the
  // sign of the sorting permutation.
  std::vector<std::pair<std::uint32_t, bool>> face_map(sub.num_faces(p));
  std::vector<Vertex> mapped;
  for (int q = 0; q <= std::min(sub.dim_cap(), super.dim_cap()); ++q) {
    for (std::size_t i = 0; i < sub.num_faces(q); ++i) {
      mapped.clear();
      for (Vertex v : sub.face(q, i)) mapped.push_back(injection[v]);
      bool odd = false;
      for (std::size_t a = 0; a < mapped.size(); ++a) {
        for (std::size_t b = a + 1; b < mapped.size(); ++b) {
          if (mapped[a] > mapped[b]) odd = !odd;
        }
      }
      std::sort(mapped.begin(), mapped.end());
      const auto idx = super.find_face(mapped);
      if (!idx) throw Error(ErrorKind::kNotASubcomplex, "a face of sub is missing from super");
      if (q == p) face_map[i] = {static_cast<std::uint32_t>(*idx), odd};
    }
  }
  PivotReducer reducer = boundary_image(super, p + 1, field);
  const std::size_t base = reducer.rank();
  for (const auto& z : kernel_basis(boundary_matrix(sub, p, field), field)) {
    std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
    for (const auto& e : z) {
      const auto [row, odd] = face_map[e.row];
      const std::uint32_t v = odd ? field.neg(e.value) : e.value;
      entries.emplace_back(row, v);
    }
    reducer.insert(make_sparse(std::move(entries), field));
  }
  return reducer.rank() - base;
}

}  // namespace rips
