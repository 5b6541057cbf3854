#include "rips/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "rips/error.hpp"
#include "rips/homology.hpp"

namespace rips {

namespace {

std::size_t betti_at(const SimplicialComplex& c, int p, const FieldSpec& field) {
  if (p < 0) return 0;
  return betti_numbers(c, p, field).betti[static_cast<std::size_t>(p)];
}

bool is_edge(const Point2& a, const Point2& b, const ThresholdPolicy& policy) {
  const double d2 = squared_distance(a, b);
  switch (classify_squared_distance(d2, policy)) {
    case Proximity::kEdge: return true;
    case Proximity::kNonEdge: return false;
    case Proximity::kAmbiguous: break;
  }
  throw Error(ErrorKind::kAmbiguousDistance,
              "squared distance " + std::to_string(d2) + " within the ambiguity band");
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

LinkInequalityReport check_link_inequality(const PointCloud& cloud, Vertex v, int p,
                                           const FieldSpec& field, const ThresholdPolicy& policy,
                                           std::size_t face_budget) {
  if (p < 1) throw Error(ErrorKind::kInvalidInput, "link inequality needs p >= 1");
  if (v >= cloud.size()) throw Error(ErrorKind::kUnknownVertex, "vertex out of range");
  SimplicialComplex whole = build_rips(cloud, policy, p + 1, face_budget);
  std::vector<Vertex> rest;
  for (Vertex x = 0; x < cloud.size(); ++x)
    if (x != v) rest.push_back(x);
  LinkInequalityReport r;
  r.beta_whole = betti_at(whole, p, field);
  if (!rest.empty()) r.beta_deleted = betti_at(induced_subcomplex(whole, rest), p, field);
  const Vertex face[1] = {v};
  r.beta_link = betti_at(link_of(whole, face), p - 1, field);
  r.holds = r.beta_whole <= r.beta_deleted + r.beta_link;
  return r;
}

CrossingConeReport check_crossing_cone(const Point2& u1, const Point2& v1, const Point2& u2,
                                       const Point2& v2, const ThresholdPolicy& policy) {
  if (!is_edge(u1, v1, policy) || !is_edge(u2, v2, policy)) {
    throw Error(ErrorKind::kPreconditionUnmet, "u1v1 and u2v2 must both be edges");
  }
  const double d1 = cross(u1, v1, u2), d2 = cross(u1, v1, v2);
  const double d3 = cross(u2, v2, u1), d4 = cross(u2, v2, v1);
  if (!((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) || !((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    throw Error(ErrorKind::kPreconditionUnmet, "open segments do not cross");
  }
  const std::array<Point2, 4> pts = {u1, v1, u2, v2};
  CrossingConeReport r;
  for (std::size_t a = 0; a < 4 && !r.cone; ++a) {
    bool all = true;
    for (std::size_t b = 0; b < 4; ++b)
      if (b != a && !is_edge(pts[a], pts[b], policy)) all = false;
    if (all) {
      r.cone = true;
      r.apex = a;
    }
  }
  return r;
}

PerpReport check_perp_disjunction(const PointCloud& u, const PointCloud& v, const Point2& p_u,
                                  const Point2& p_v, double eps, double alpha_threshold) {
  if (u.dim() != 2 || v.dim() != 2) throw Error(ErrorKind::kDimensionMismatch, "clusters must be planar");
  if (!(eps > 0.0)) throw Error(ErrorKind::kInvalidInput, "eps must be positive");
  if (std::abs(distance(p_u, p_v) - 1.0) > 1e-9) {
    throw Error(ErrorKind::kInvalidInput, "cluster centers must be at distance 1");
  }
  auto check_cluster = [&](const PointCloud& c, const Point2& center, const char* name) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (distance(c.point(i), center) > eps) {
        throw Error(ErrorKind::kClusterTooLoose,
                    std::string(name) + " point " + std::to_string(i) + " farther than eps from its center");
      }
    }
  };
  check_cluster(u, p_u, "U");
  check_cluster(v, p_v, "V");

  const double w1[2] = {p_v[0] - p_u[0], p_v[1] - p_u[1]};
  PerpReport report;
  for (Vertex a = 0; a < v.size(); ++a) {
    for (Vertex b = a + 1; b < v.size(); ++b) {
      PerpPair pair;
      pair.v1 = a;
      pair.v2 = b;
      auto x = v.point(a), y = v.point(b);
      const double len = distance(x, y);
      if (len == 0.0) throw Error(ErrorKind::kInvalidInput, "V contains repeated points");
      pair.abs_dot = std::abs(w1[0] * (y[0] - x[0]) + w1[1] * (y[1] - x[1])) / len;
      bool le = true, ge = true;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double da = distance(x, u.point(i)), db = distance(y, u.point(i));
        le = le && da <= db;
        ge = ge && da >= db;
      }
      pair.monotone = le || ge;
      pair.violates = !pair.monotone && !(pair.abs_dot < alpha_threshold);
      report.violations += pair.violates ? 1 : 0;
      report.pairs.push_back(pair);
    }
  }
  return report;
}

K23Report check_k23_condition(const Graph& graph, std::size_t u_size) {
  const std::size_t total = graph.num_vertices();
  if (u_size > total) throw Error(ErrorKind::kInvalidInput, "U larger than the graph");
  K23Report r;
  r.condition_holds = true;
  for (auto [a, b] : graph.edges()) {
    if ((a < u_size) == (b < u_size)) throw Error(ErrorKind::kInvalidInput, "graph is not bipartite on U, V");
    ++r.edge_count;
  }
  for (Vertex a = 0; a < u_size && r.condition_holds; ++a) {
    for (Vertex b = a + 1; b < u_size; ++b) {
      auto na = graph.neighbors(a), nb = graph.neighbors(b);
      std::vector<Vertex> common;
      std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
      if (common.size() >= 3) {
        r.condition_holds = false;
        break;
      }
    }
  }
  r.n = std::max(u_size, total - u_size);
  r.bound = std::pow(static_cast<double>(r.n), 1.5);
  r.ratio = r.bound > 0.0 ? static_cast<double>(r.edge_count) / r.bound : 0.0;
  return r;
}

bool verify_packing_witness(const PointCloud& witness) {
  for (std::size_t i = 0; i < witness.size(); ++i) {
    auto x = witness.point(i);
    if (dot(x, x) > 1.0) return false;
    for (std::size_t j = i + 1; j < witness.size(); ++j) {
      if (!(squared_distance(x, witness.point(j)) > 1.0)) return false;
    }
  }
  return true;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t m, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(trial)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// One repulsion run for m points in the unit ball of R^d.
std::optional<PointCloud> repulsion_trial(std::size_t d, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> pts(m, std::vector<double>(d));
  for (auto& x : pts) {
    double norm = 0.0;
    for (double& c : x) {
      c = gauss(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (double& c : x) c /= std::max(norm, 1e-12);
  }
  const double target = 1.02;
  auto project = [](std::vector<double>& x) {
    double n2 = 0.0;
    for (double c : x) n2 += c * c;
    if (n2 > 1.0) {
      const double s = 1.0 / std::sqrt(n2);
      for (double& c : x) c *= s;
    }
  };
  std::vector<double> step(d);
  std::vector<std::vector<double>> force(m, std::vector<double>(d));
  for (int iter = 0; iter < 3000; ++iter) {
    bool moved = false;
    for (auto& f : force) std::fill(f.begin(), f.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        double d2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          step[c] = pts[j][c] - pts[i][c];
          d2 += step[c] * step[c];
        }
        double dist = std::sqrt(d2);
        if (dist >= target) continue;
        moved = true;
        if (dist < 1e-12) {
          for (double& c : step) c = gauss(rng);
          dist = 0.0;
        }
        double norm = 0.0;
        for (double c : step) norm += c * c;
        norm = std::sqrt(norm);
        const double push = 0.5 * (target - dist) / norm;
        for (std::size_t c = 0; c < d; ++c) {
          force[i][c] -= push * step[c];
          force[j][c] += push * step[c];
        }
      }
    }
    if (!moved) break;
    // Outward drift and decaying noise break symmetric jams.
    const double noise = 0.02 * (1.0 - iter / 3000.0);
    for (std::size_t i = 0; i < m; ++i) {
      double n2 = 0.0;
      for (double c : pts[i]) n2 += c * c;
      const double out = n2 > 1e-24 ? 0.01 / std::sqrt(n2) : 0.0;
      for (std::size_t c = 0; c < d; ++c) pts[i][c] += 0.5 * force[i][c] + out * pts[i][c] + noise * gauss(rng);
      project(pts[i]);
    }
  }
  PointCloud cloud = PointCloud::from_rows(d, pts);
  if (!verify_packing_witness(cloud)) return std::nullopt;
  return cloud;
}

}  // namespace

PackingEstimate estimate_packing_constant(std::size_t d, std::size_t trials, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorKind::kInvalidInput, "d must be positive");
  PackingEstimate best;
  // One point always fits.
  best.witness = PointCloud(d);
  best.witness.add_point(std::vector<double>(d, 0.0));
  for (std::size_t m = 2;; ++m) {
    std::optional<PointCloud> found;
    for (std::size_t t = 0; t < trials && !found; ++t) found = repulsion_trial(d, m, mix_seed(seed, m, t));
    if (!found) break;
    best.witness = std::move(*found);
    best.estimate = m - 1;
  }
  return best;
}

std::size_t link_reduced_components(const PointCloud& cloud, Vertex v, const ThresholdPolicy& policy) {
  if (v >= cloud.size()) throw Error(ErrorKind::kUnknownVertex, "vertex out of range");
  Graph g = proximity_graph(cloud, policy);
  const Vertex face[1] = {v};
  std::vector<Vertex> nbrs = common_neighbors(g, face);
  if (nbrs.empty()) return 0;
  std::size_t count = 0;
  g.induced(nbrs).component_labels(&count);
  return count - 1;
}

// ---------------------------------------------------------------------------

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kS2: return "s2";
    case Family::kS2km1: return "s2km1";
    case Family::kEvenP: return "even_p";
    case Family::kQuasiRipsRs: return "quasi_rips_rs";
  }
  return "";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "s2") return Family::kS2;
  if (name == "s2km1") return Family::kS2km1;
  if (name == "even_p" || name == "even-p") return Family::kEvenP;
  if (name == "quasi_rips_rs" || name == "quasi-rs") return Family::kQuasiRipsRs;
  return std::nullopt;
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y,
                                   double min_x, std::size_t* used) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] >= min_x && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (used) *used = lx.size();
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

namespace {

SimplicialComplex experiment_complex(Family family, std::size_t size, int p,
                                     const ExperimentOptions& options) {
  const int cap = p + 1;
  switch (family) {
    case Family::kS2: {
      const std::size_t k = s2_parameter_for(size);
      S2Construction s = construct_s2(k, options.params);
      return build_rips(s.cloud, options.params.policy, cap, options.face_budget);
    }
    case Family::kS2km1: {
      if (p < 1 || p % 2 == 0) throw Error(ErrorKind::kInvalidInput, "s2km1 needs odd p");
      OddSphereConstruction s = construct_s2km1(size, static_cast<std::size_t>((p + 1) / 2), options.params);
      return build_rips(s.cloud, options.params.policy, cap, options.face_budget);
    }
    case Family::kEvenP: {
      EvenPConstruction s = construct_even_p(size, static_cast<std::size_t>(p), options.params);
      return build_rips(s.cloud, options.params.policy, cap, options.face_budget);
    }
    case Family::kQuasiRipsRs: {
      const auto n = static_cast<std::int64_t>(size);
      std::vector<std::int64_t> a = ap3_free_set(n, Ap3Method::kGreedy);
      MatchingFamily f = rs_matching_family(a, n);
      MatchingComplexOptions mo;
      mo.dim_cap = cap;
      mo.face_budget = options.face_budget;
      const std::size_t cap_third = std::max({f.u_size, f.v_size, f.matchings.size(), std::size_t{1}});
      return quasi_rips_from_matchings(f, cap_third, mo).complex;
    }
  }
  throw Error(ErrorKind::kInvalidInput, "unknown family");
}

ExperimentRecord run_record(Family family, std::size_t size, int p, const ExperimentOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SimplicialComplex c = experiment_complex(family, size, p, options);
  ExperimentRecord rec;
  rec.family = std::string(family_name(family));
  rec.n = c.num_vertices();
  rec.p = p;
  rec.betti = betti_at(c, p, options.field);
  rec.face_counts = c.face_counts();
  rec.seed = options.seed;
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

ExperimentResult scaling_experiment(Family family, std::span<const std::size_t> sizes, int p,
                                    const ExperimentOptions& options) {
  if (p < 0) throw Error(ErrorKind::kInvalidInput, "p must be non-negative");
  options.field.validate();
  ExperimentResult result;
  result.records.resize(sizes.size());
  std::vector<std::exception_ptr> errors(sizes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < sizes.size();) {
      try {
        result.records[i] = run_record(family, sizes[i], p, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(sizes.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> xs, ys;
  for (const auto& r : result.records) {
    xs.push_back(static_cast<double>(r.n));
    ys.push_back(static_cast<double>(r.betti));
  }
  result.exponent = loglog_slope(xs, ys, 12.0, &result.fitted_points);
  return result;
}

}  // namespace rips
