#include "rips/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "rips/error.hpp"

namespace rips {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

std::string pair_name(const PointCloud& cloud, Vertex a, Vertex b) {
  std::ostringstream out;
  out << '(' << a << ',' << b << ')';
  if (cloud.has_labels()) out << '[' << cloud.labels()[a] << ',' << cloud.labels()[b] << ']';
  return out.str();
}

/// Smallest admissible |d^2 - 1| for a pair that must be classified cleanly.
double tolerance(const ThresholdPolicy& policy) {
  return std::max(policy.ambiguity_band, policy.relative_tolerance);
}

void check_policy(const ThresholdPolicy& policy) {
  policy.validate();
  if (policy.threshold != 1.0) fail(ErrorKind::kInvalidInput, "generators require threshold 1");
}

/// Proximity graph of `cloud`, which must coincide with `expected`.
Graph validated_graph(const PointCloud& cloud, const ThresholdPolicy& policy,
                      const Graph& expected, ErrorKind mismatch_kind, const char* what) {
  Graph actual;
  try {
    actual = proximity_graph(cloud, policy);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kAmbiguousDistance) throw;
    fail(ErrorKind::kMarginViolation, std::string(what) + ": " + e.what());
  }
  if (actual == expected) return actual;
  std::ostringstream out;
  out << what << ": edge set differs from specification;";
  std::size_t shown = 0, total = 0;
  for (Vertex a = 0; a < cloud.size(); ++a) {
    for (Vertex b = a + 1; b < cloud.size(); ++b) {
      bool x = actual.has_edge(a, b), y = expected.has_edge(a, b);
      if (x == y) continue;
      ++total;
      if (shown < 8) {
        out << ' ' << (x ? "extra " : "missing ") << pair_name(cloud, a, b);
        ++shown;
      }
    }
  }
  out << " (" << total << " discrepancies)";
  fail(mismatch_kind, out.str());
}

void add_clique(Graph& g, Vertex begin, Vertex end) {
  for (Vertex a = begin; a < end; ++a)
    for (Vertex b = a + 1; b < end; ++b) g.add_edge(a, b);
}

double default_epsilon(const ThresholdPolicy& policy) { return 2.0 * std::sqrt(tolerance(policy)); }

std::string margin_message(const char* generator, const std::string& condition) {
  return std::string(generator) + ": margin condition fails: " + condition;
}

}  // namespace

// ---------------------------------------------------------------------------

ResidualGraph residual_graph(const Graph& graph, std::span<const Vertex> u,
                             std::span<const Vertex> v) {
  const std::size_t n = graph.num_vertices();
  std::vector<int> side(n, -1);
  auto assign = [&](std::span<const Vertex> part, int s) {
    for (Vertex x : part) {
      if (x >= n) fail(ErrorKind::kUnknownVertex, "vertex " + std::to_string(x) + " out of range");
      if (side[x] != -1) fail(ErrorKind::kInvalidInput, "U and V overlap or repeat a vertex");
      side[x] = s;
    }
  };
  assign(u, 0);
  assign(v, 1);
  if (std::find(side.begin(), side.end(), -1) != side.end()) {
    fail(ErrorKind::kInvalidInput, "U and V do not cover the vertex set");
  }
  for (auto part : {u, v}) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = i + 1; j < part.size(); ++j) {
        if (!graph.has_edge(part[i], part[j])) {
          fail(ErrorKind::kNotTwoClique, "missing intra-part edge (" + std::to_string(part[i]) +
                                             "," + std::to_string(part[j]) + ")");
        }
      }
    }
  }
  ResidualGraph out;
  out.graph = Graph(n);
  for (auto [a, b] : graph.edges()) {
    if (side[a] != side[b]) out.graph.add_edge(a, b);
  }
  std::vector<std::size_t> labels = out.graph.component_labels();
  std::vector<std::size_t> remap(n, static_cast<std::size_t>(-1));
  for (Vertex x = 0; x < n; ++x) {
    if (out.graph.degree(x) == 0) continue;
    if (remap[labels[x]] == static_cast<std::size_t>(-1)) remap[labels[x]] = out.components++;
    out.vertices.push_back(x);
    out.component.push_back(remap[labels[x]]);
  }
  return out;
}

TwoCliqueGadget two_clique_gadget(std::size_t u_size, std::size_t v_size,
                                  const std::vector<Edge>& cross_edges) {
  TwoCliqueGadget g;
  g.u_size = u_size;
  g.v_size = v_size;
  g.graph = Graph(u_size + v_size);
  add_clique(g.graph, 0, static_cast<Vertex>(u_size));
  add_clique(g.graph, static_cast<Vertex>(u_size), static_cast<Vertex>(u_size + v_size));
  for (auto [i, j] : cross_edges) {
    if (i >= u_size || j >= v_size) {
      fail(ErrorKind::kUnknownVertex, "cross edge (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") out of range");
    }
    g.graph.add_edge(g.u(i), g.v(j));
  }
  std::vector<Vertex> us(u_size), vs(v_size);
  std::iota(us.begin(), us.end(), Vertex{0});
  std::iota(vs.begin(), vs.end(), static_cast<Vertex>(u_size));
  g.residual = residual_graph(g.graph, us, vs);
  return g;
}

std::vector<std::vector<Vertex>> bipartite_quadrilaterals(const TwoCliqueGadget& gadget) {
  const ResidualGraph& res = gadget.residual;
  std::vector<std::optional<Edge>> rep(res.components);
  for (auto [a, b] : res.graph.edges()) {
    // a < b, so a is in U and b in V.
    auto it = std::lower_bound(res.vertices.begin(), res.vertices.end(), a);
    std::size_t c = res.component[static_cast<std::size_t>(it - res.vertices.begin())];
    if (!rep[c]) rep[c] = Edge{a, b};
  }
  std::vector<std::vector<Vertex>> cycles;
  for (std::size_t c = 1; c < rep.size(); ++c) {
    cycles.push_back({rep[0]->first, rep[c]->first, rep[c]->second, rep[0]->second});
  }
  return cycles;
}

// ---------------------------------------------------------------------------

Graph odd_sphere_expected_graph(std::size_t k, std::size_t r) {
  Graph g(2 * k * r);
  for (std::size_t c = 0; c < k; ++c) {
    auto base = static_cast<Vertex>(2 * r * c);
    add_clique(g, base, base + static_cast<Vertex>(r));
    add_clique(g, base + static_cast<Vertex>(r), base + static_cast<Vertex>(2 * r));
    for (Vertex i = 0; i < r; ++i) g.add_edge(base + i, base + static_cast<Vertex>(r) + i);
    for (Vertex a = base; a < base + 2 * r; ++a)
      for (Vertex b = base + static_cast<Vertex>(2 * r); b < 2 * k * r; ++b) g.add_edge(a, b);
  }
  return g;
}

OddSphereConstruction construct_s2km1(std::size_t n, std::size_t k,
                                      const ConstructionParams& params) {
  check_policy(params.policy);
  if (k < 1) fail(ErrorKind::kInvalidInput, "k must be positive");
  const std::size_t r = n / (2 * k);
  if (r < 2) fail(ErrorKind::kInvalidInput, "need floor(n/2k) >= 2");
  OddSphereConstruction out;
  out.k = k;
  out.r = r;
  const double tol = tolerance(params.policy);
  out.epsilon_c = params.epsilon_c.value_or(default_epsilon(params.policy));
  out.delta = params.delta.value_or(
      std::max(1.0 / static_cast<double>(n), 16.0 * static_cast<double>(r) * out.epsilon_c));
  const double eps = out.epsilon_c, delta = out.delta, rd = static_cast<double>(r);
  if (!(eps > 0.0) || !(delta > 0.0)) fail(ErrorKind::kInvalidInput, "delta and epsilon_c must be positive");
  if (!(eps * eps > tol)) fail(ErrorKind::kMarginViolation, margin_message("s2km1", "epsilon_c^2 > band"));
  if (!(8.0 * rd * eps < delta)) fail(ErrorKind::kMarginViolation, margin_message("s2km1", "r*epsilon_c < delta/8"));
  if (!(rd * eps < 0.25)) fail(ErrorKind::kMarginViolation, margin_message("s2km1", "r*epsilon_c < 1/4"));
  if (k > 1 && !(static_cast<double>(k - 1) * delta <= std::numbers::pi / 2)) {
    fail(ErrorKind::kMarginViolation, margin_message("s2km1", "(k-1)*delta <= pi/2"));
  }

  PointCloud gadget(2);
  for (int sign : {1, -1}) {
    for (std::size_t i = 1; i <= r; ++i) {
      double p[2] = {0.5 * sign, static_cast<double>(i) * eps};
      gadget.add_point(p, std::string(sign > 0 ? "s+" : "s-") + std::to_string(i));
    }
  }
  out.cloud = PointCloud(2);
  for (std::size_t c = 0; c < k; ++c) {
    PointCloud copy = apply_plane_rotation(gadget, static_cast<double>(c) * delta);
    for (std::size_t i = 0; i < copy.size(); ++i) {
      out.cloud.add_point(copy.point(i), copy.labels()[i] + "@" + std::to_string(c + 1));
    }
  }
  validated_graph(out.cloud, params.policy, odd_sphere_expected_graph(k, r),
                  ErrorKind::kMarginViolation, "s2km1");
  return out;
}

Graph s2_expected_graph(std::size_t k) {
  const std::size_t kk = k * k;
  Graph g(3 * kk);
  auto id = [&](std::size_t block, std::size_t i, std::size_t j) {
    return static_cast<Vertex>(block * kk + (i - 1) * k + (j - 1));
  };
  for (std::size_t b = 0; b < 3; ++b) {
    add_clique(g, static_cast<Vertex>(b * kk), static_cast<Vertex>((b + 1) * kk));
  }
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      for (std::size_t t = 1; t <= k; ++t) {
        g.add_edge(id(0, i, j), id(1, t, j));  // u_{i,j} v_{t,j}
        g.add_edge(id(0, i, j), id(2, i, t));  // u_{i,j} w_{i,t}
        g.add_edge(id(1, i, j), id(2, t, i));  // v_{i,j} w_{t,i}
      }
    }
  }
  return g;
}

S2Construction construct_s2(std::size_t k, const ConstructionParams& params) {
  check_policy(params.policy);
  if (k < 2) fail(ErrorKind::kInvalidInput, "construct_s2 needs k >= 2");
  S2Construction out;
  out.k = k;
  const double tol = tolerance(params.policy);
  const double kd = static_cast<double>(k);
  const double eps = out.epsilon_c = params.epsilon_c.value_or(default_epsilon(params.policy));
  const double sqrt3 = std::numbers::sqrt3;
  // Default angular step doubles the minimum u-w separation requirement.
  const double delta = out.delta =
      params.delta.value_or(std::acos(1.0 - 4.0 * (sqrt3 * kd * eps + tol)));
  if (!(eps > 0.0) || !(delta > 0.0)) fail(ErrorKind::kInvalidInput, "delta and epsilon_c must be positive");
  if (!(eps * eps > tol)) fail(ErrorKind::kMarginViolation, margin_message("s2", "epsilon_c^2 > band"));
  if (!(sqrt3 * eps - eps * eps > tol) || !(kd * eps < 0.5)) {
    fail(ErrorKind::kMarginViolation, margin_message("s2", "sqrt(3)*epsilon_c - epsilon_c^2 > band"));
  }
  if (!((1.0 - std::cos(delta)) / 2.0 > sqrt3 * kd * eps + tol)) {
    fail(ErrorKind::kMarginViolation,
         margin_message("s2", "(1 - cos delta)/2 > sqrt(3)*k*epsilon_c + band"));
  }
  if (!(static_cast<double>(k - 1) * delta < std::numbers::pi / 2) ||
      !(std::cos(static_cast<double>(k - 1) * delta) > kd * kd * eps * eps + tol)) {
    fail(ErrorKind::kMarginViolation, margin_message("s2", "cos((k-1)*delta) > (k*epsilon_c)^2 + band"));
  }

  const double a = std::numbers::sqrt2 / 2.0, b = std::numbers::sqrt2 / 4.0;
  out.cloud = PointCloud(5);
  auto tag = [](char c, std::size_t i, std::size_t j) {
    return std::string(1, c) + std::to_string(i) + "," + std::to_string(j);
  };
  for (char block : {'u', 'v', 'w'}) {
    for (std::size_t i = 1; i <= k; ++i) {
      for (std::size_t j = 1; j <= k; ++j) {
        const double ci = std::cos(static_cast<double>(i) * delta);
        const double si = std::sin(static_cast<double>(i) * delta);
        const double cj = std::cos(static_cast<double>(j) * delta);
        const double sj = std::sin(static_cast<double>(j) * delta);
        const double je = static_cast<double>(j) * eps;
        double p[5];
        if (block == 'u') {
          double q[5] = {a * ci, a * si, 0.0, 0.0, je};
          std::copy(q, q + 5, p);
        } else if (block == 'v') {
          double q[5] = {0.0, 0.0, a * ci, a * si, je};
          std::copy(q, q + 5, p);
        } else {
          double q[5] = {b * ci, b * si, b * cj, b * sj, sqrt3 / 2.0};
          std::copy(q, q + 5, p);
        }
        out.cloud.add_point(p, tag(block, i, j));
      }
    }
  }
  validated_graph(out.cloud, params.policy, s2_expected_graph(k), ErrorKind::kEdgeSetMismatch, "s2");
  return out;
}

std::size_t s2_parameter_for(std::size_t n) {
  std::size_t k = 0;
  while (3 * (k + 1) * (k + 1) <= n) ++k;
  return k;
}

EvenPConstruction construct_even_p_parts(std::size_t s2_k, std::size_t odd_n, std::size_t p,
                                         const ConstructionParams& params) {
  if (p < 4 || p % 2 != 0) fail(ErrorKind::kInvalidInput, "even-p construction needs even p >= 4");
  EvenPConstruction out;
  out.p = p;
  out.s2 = construct_s2(s2_k, params);
  out.odd = construct_s2km1(odd_n, (p - 2) / 2, params);
  PointCloud lifted = embed_plane_in_r5(out.odd.cloud);
  out.cloud = out.s2.cloud.concat(lifted);

  const double tol = tolerance(params.policy);
  double worst = 0.0;
  for (std::size_t i = 0; i < out.s2.cloud.size(); ++i) {
    for (std::size_t j = 0; j < lifted.size(); ++j) {
      worst = std::max(worst, squared_distance(out.s2.cloud.point(i), lifted.point(j)));
    }
  }
  out.max_cross_distance = std::sqrt(worst);
  if (!(worst < 1.0 - tol)) {
    fail(ErrorKind::kMarginViolation,
         "even_p: cross distance " + std::to_string(out.max_cross_distance) + " not below 1");
  }

  const std::size_t n1 = out.s2.cloud.size(), n2 = lifted.size();
  Graph expected(n1 + n2);
  for (auto [a, b] : s2_expected_graph(s2_k).edges()) expected.add_edge(a, b);
  for (auto [a, b] : odd_sphere_expected_graph(out.odd.k, out.odd.r).edges()) {
    expected.add_edge(static_cast<Vertex>(n1 + a), static_cast<Vertex>(n1 + b));
  }
  for (Vertex a = 0; a < n1; ++a)
    for (Vertex b = 0; b < n2; ++b) expected.add_edge(a, static_cast<Vertex>(n1 + b));
  validated_graph(out.cloud, params.policy, expected, ErrorKind::kMarginViolation, "even_p");
  return out;
}

EvenPConstruction construct_even_p(std::size_t n, std::size_t p, const ConstructionParams& params) {
  const std::size_t s2_k = s2_parameter_for(n / 2);
  if (s2_k < 2) fail(ErrorKind::kInvalidInput, "even-p construction needs floor(n/2) >= 12");
  return construct_even_p_parts(s2_k, n - n / 2, p, params);
}

// ---------------------------------------------------------------------------

bool is_ap3_free(std::span<const std::int64_t> set) {
  std::unordered_set<std::int64_t> members(set.begin(), set.end());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const std::int64_t s = set[i] + set[j];
      if (s % 2 == 0 && members.contains(s / 2)) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::int64_t> greedy_ap3_free(std::int64_t n) {
  std::vector<std::int64_t> out;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (std::int64_t z = 0; z < n; ++z) {
    bool ok = true;
    for (std::int64_t y : out) {
      const std::int64_t x = 2 * y - z;
      if (x >= 0 && in[static_cast<std::size_t>(x)]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.push_back(z);
      in[static_cast<std::size_t>(z)] = 1;
    }
  }
  return out;
}

/// Numbers below n whose base-(2d-1) digits are < d and whose digit vector
/// lies on the most populated sphere shell, over all digit counts m >= 2.
std::vector<std::int64_t> behrend_ap3_free(std::int64_t n) {
  std::vector<std::int64_t> best{0};
  for (int m = 2; m <= 40; ++m) {
    for (std::int64_t d = 2; d <= n; ++d) {
      const std::int64_t base = 2 * d - 1;
      // Top digit unusable: same as a shorter digit vector.
      std::int64_t top = 1;
      bool overflow = false;
      for (int i = 0; i + 1 < m; ++i) {
        if (top > n / base) {
          overflow = true;
          break;
        }
        top *= base;
      }
      if (overflow || top >= n) break;
      std::map<std::int64_t, std::vector<std::int64_t>> shells;
      // Most significant digit first; partial values only grow.
      auto visit = [&](auto&& self, int pos, std::int64_t value, std::int64_t radius,
                       std::int64_t place) -> void {
        if (pos < 0) {
          shells[radius].push_back(value);
          return;
        }
        for (std::int64_t digit = 0; digit < d && value + digit * place < n; ++digit) {
          self(self, pos - 1, value + digit * place, radius + digit * digit, place / base);
        }
      };
      visit(visit, m - 1, 0, 0, top);
      for (auto& [radius, shell] : shells) {
        if (shell.size() > best.size()) {
          std::sort(shell.begin(), shell.end());
          best = shell;
        }
      }
    }
  }
  return best;
}

}  // namespace

std::vector<std::int64_t> ap3_free_set(std::int64_t n, Ap3Method method) {
  if (n < 1) fail(ErrorKind::kInvalidInput, "N must be positive");
  std::vector<std::int64_t> out =
      method == Ap3Method::kGreedy ? greedy_ap3_free(n) : behrend_ap3_free(n);
  if (n <= 10'000 && !is_ap3_free(out)) {
    fail(ErrorKind::kNotAP3Free, "generated set contains a 3-term progression");
  }
  return out;
}

std::size_t MatchingFamily::total_matched() const {
  std::size_t total = 0;
  for (const auto& m : matchings) total += m.size();
  return total;
}

bool MatchingFamily::has_edge(Vertex u, Vertex v) const {
  return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

MatchingFamilyReport check_matching_family(const MatchingFamily& family) {
  MatchingFamilyReport r;
  r.edges_valid = r.matchings = r.disjoint = r.induced = true;
  std::vector<Edge> all;
  for (const auto& m : family.matchings) {
    std::vector<Vertex> us, vs;
    for (auto [u, v] : m) {
      if (u >= family.u_size || v >= family.v_size || !family.has_edge(u, v)) r.edges_valid = false;
      us.push_back(u);
      vs.push_back(v);
      all.emplace_back(u, v);
    }
    std::sort(us.begin(), us.end());
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(us.begin(), us.end()) != us.end() ||
        std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
      r.matchings = false;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i != j && family.has_edge(m[i].first, m[j].second)) r.induced = false;
      }
    }
  }
  r.total = all.size();
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) r.disjoint = false;
  return r;
}

MatchingFamily rs_matching_family(std::span<const std::int64_t> a, std::int64_t n) {
  if (n < 1) fail(ErrorKind::kInvalidInput, "N must be positive");
  std::vector<std::int64_t> set(a.begin(), a.end());
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    fail(ErrorKind::kInvalidInput, "A repeats an element");
  }
  for (std::int64_t x : set) {
    if (x < 0 || x >= n) fail(ErrorKind::kInvalidInput, "A must lie in [0, N)");
  }
  if (!is_ap3_free(set)) fail(ErrorKind::kNotAP3Free, "A contains a 3-term progression");

  MatchingFamily f;
  f.u_size = static_cast<std::size_t>(n);
  f.v_size = static_cast<std::size_t>(2 * n);
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t s : set) f.edges.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(x + s));
  std::sort(f.edges.begin(), f.edges.end());
  for (std::int64_t z = 0; z < 3 * n; ++z) {
    std::vector<Edge> m;
    for (std::int64_t s : set) {
      const std::int64_t u = z - 2 * s, v = z - s;
      if (u >= 0 && u < n && v >= 0 && v < 2 * n) m.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (m.empty()) continue;
    std::sort(m.begin(), m.end());
    f.matchings.push_back(std::move(m));
  }
  MatchingFamilyReport report = check_matching_family(f);
  if (!report.ok() || report.total != f.edges.size()) {
    fail(ErrorKind::kNotAP3Free, "structural check of the matching family failed");
  }
  return f;
}

// ---------------------------------------------------------------------------

namespace {

/// Keeps the `cap` vertices of one side covered by the most matchings
/// (ties by smaller id); returns a keep mask.
std::vector<char> top_vertices(const std::vector<std::vector<Edge>>& matchings, std::size_t size,
                               std::size_t cap, bool u_side) {
  std::vector<char> keep(size, 1);
  if (size <= cap) return keep;
  std::vector<std::size_t> count(size, 0);
  for (const auto& m : matchings)
    for (auto [u, v] : m) ++count[u_side ? u : v];
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return count[x] > count[y]; });
  std::fill(keep.begin(), keep.end(), 0);
  for (std::size_t i = 0; i < cap; ++i) keep[order[i]] = 1;
  return keep;
}

}  // namespace

MatchingComplex quasi_rips_from_matchings(const MatchingFamily& family, std::size_t cap_third,
                                          const MatchingComplexOptions& options) {
  if (cap_third < 1) fail(ErrorKind::kInvalidInput, "cap_third must be positive");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) fail(ErrorKind::kInvalidInput, "alpha must lie in (0, 1)");
  if (!check_matching_family(family).ok()) fail(ErrorKind::kInvalidInput, "matching family is not valid");
  const std::size_t t = family.matchings.size();
  if (!options.trim && (family.u_size > cap_third || family.v_size > cap_third || t > cap_third)) {
    fail(ErrorKind::kCapExceeded, "family exceeds cap " + std::to_string(cap_third) +
                                      " (|U|=" + std::to_string(family.u_size) + ", |V|=" +
                                      std::to_string(family.v_size) + ", t=" + std::to_string(t) + ")");
  }

  // t' largest matchings, kept in their original order.
  std::vector<std::size_t> order(t);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return family.matchings[x].size() > family.matchings[y].size();
  });
  order.resize(std::min(t, cap_third));
  std::sort(order.begin(), order.end());
  std::vector<std::vector<Edge>> kept;
  for (std::size_t i : order) kept.push_back(family.matchings[i]);

  std::vector<char> keep_u = top_vertices(kept, family.u_size, cap_third, true);
  for (auto& m : kept) std::erase_if(m, [&](const Edge& e) { return !keep_u[e.first]; });
  std::vector<char> keep_v = top_vertices(kept, family.v_size, cap_third, false);
  for (auto& m : kept) std::erase_if(m, [&](const Edge& e) { return !keep_v[e.second]; });

  std::vector<Vertex> u_id(family.u_size), v_id(family.v_size);
  std::size_t nu = 0, nv = 0;
  for (std::size_t i = 0; i < family.u_size; ++i)
    if (keep_u[i]) u_id[i] = static_cast<Vertex>(nu++);
  for (std::size_t i = 0; i < family.v_size; ++i)
    if (keep_v[i]) v_id[i] = static_cast<Vertex>(nv++);

  MatchingComplex out;
  out.u_size = nu;
  out.v_size = nv;
  out.n_size = kept.size();
  out.trimmed.u_size = nu;
  out.trimmed.v_size = nv;
  for (auto [u, v] : family.edges) {
    if (keep_u[u] && keep_v[v]) out.trimmed.edges.emplace_back(u_id[u], v_id[v]);
  }
  for (auto& m : kept) {
    for (auto& [u, v] : m) {
      u = u_id[u];
      v = v_id[v];
    }
  }
  out.trimmed.matchings = kept;

  const auto total = static_cast<Vertex>(nu + nv + kept.size());
  const auto v0 = static_cast<Vertex>(nu);
  const auto n0 = static_cast<Vertex>(nu + nv);
  Graph g(total);
  add_clique(g, 0, v0);
  add_clique(g, v0, n0);
  add_clique(g, n0, total);
  std::vector<Edge> cross;
  for (auto [u, v] : out.trimmed.edges) cross.emplace_back(u, v0 + v);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto x = static_cast<Vertex>(n0 + i);
    for (auto [u, v] : kept[i]) {
      cross.emplace_back(u, x);
      cross.emplace_back(v0 + v, x);
    }
  }
  std::sort(cross.begin(), cross.end());
  cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
  for (auto [a, b] : cross) g.add_edge(a, b);
  out.graph = g;
  out.complex = flag_skeleton(g, options.dim_cap, options.face_budget);

  // Three tight clusters inside the unit triangle with corners (0,0), (0,1),
  // (sqrt(3)/2, 1/2); every cross-cluster pair is optional.
  const double corners[3][2] = {{0.0, 0.0}, {0.0, 1.0}, {std::numbers::sqrt3 / 2.0, 0.5}};
  const double centroid[2] = {std::numbers::sqrt3 / 6.0, 0.5};
  const double rho = std::min(options.alpha, 1.0 - options.alpha) / 4.0;
  const std::size_t sizes[3] = {nu, nv, kept.size()};
  const char* names[3] = {"U", "V", "N"};
  PointCloud cloud(2);
  for (int c = 0; c < 3; ++c) {
    const double bx = centroid[0] - corners[c][0], by = centroid[1] - corners[c][1];
    const double base = std::atan2(by, bx);
    for (std::size_t m = 0; m < sizes[c]; ++m) {
      const double s = sizes[c] > 1 ? static_cast<double>(m) / static_cast<double>(sizes[c] - 1) : 0.0;
      const double radius = rho * (0.5 + 0.5 * s);
      const double angle = base + (s - 0.5) * (2.0 * std::numbers::pi / 9.0);
      double p[2] = {corners[c][0] + radius * std::cos(angle), corners[c][1] + radius * std::sin(angle)};
      cloud.add_point(p, names[c] + std::to_string(m));
    }
  }
  out.witness.alpha = options.alpha;
  out.witness.cloud = std::move(cloud);
  out.witness.optional_edges = OptionalEdgePolicy::explicit_edges(cross);
  if (quasi_rips_graph(out.witness) != g) {
    fail(ErrorKind::kPolicyViolation, "witness cloud does not realize the matching graph");
  }

  std::ostringstream note;
  note << "matchings " << t << "->" << kept.size() << ", |U| " << family.u_size << "->" << nu
       << ", |V| " << family.v_size << "->" << nv << ", matched edges " << family.total_matched()
       << "->" << out.trimmed.total_matched();
  out.note = note.str();
  return out;
}

SimplicialComplex face_deleted_complex(const MatchingComplex& mc) {
  const SimplicialComplex& c = mc.complex;
  const auto v0 = static_cast<Vertex>(mc.u_size);
  const auto n0 = static_cast<Vertex>(mc.u_size + mc.v_size);
  std::vector<FaceList> lists;
  for (int p = 0; p <= c.dim_cap(); ++p) {
    const FaceList& src = c.faces(p);
    FaceList dst(static_cast<std::size_t>(p + 1));
    for (std::size_t i = 0; i < src.size(); ++i) {
      auto f = src[i];
      bool has_u = false, has_v = false, has_n = false;
      for (Vertex x : f) {
        has_u |= x < v0;
        has_v |= x >= v0 && x < n0;
        has_n |= x >= n0;
      }
      if (!(has_u && has_v && has_n)) dst.push_back(f);
    }
    lists.push_back(std::move(dst));
  }
  return SimplicialComplex::from_face_lists(c.num_vertices(), c.dim_cap(), std::move(lists), false);
}

}  // namespace rips
