#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rips/complex.hpp"
#include "rips/constructions.hpp"
#include "rips/geometry.hpp"
#include "rips/graph.hpp"
#include "rips/linalg.hpp"

namespace rips {

/// beta_p(R(S)) <= beta_p(R(S - v)) + beta_{p-1}(lk v).
struct LinkInequalityReport {
  bool holds = false;
  std::size_t beta_whole = 0;
  std::size_t beta_deleted = 0;
  std::size_t beta_link = 0;
};

LinkInequalityReport check_link_inequality(const PointCloud& cloud, Vertex v, int p,
                                           const FieldSpec& field = {},
                                           const ThresholdPolicy& policy = {},
                                           std::size_t face_budget = kDefaultFaceBudget);

using Point2 = std::array<double, 2>;

struct CrossingConeReport {
  bool cone = false;
  std::optional<std::size_t> apex;  // 0..3 for u1, v1, u2, v2
};

/// Requires u1v1 and u2v2 to be edges whose open segments cross; otherwise
/// throws PreconditionUnmet.
CrossingConeReport check_crossing_cone(const Point2& u1, const Point2& v1, const Point2& u2,
                                       const Point2& v2, const ThresholdPolicy& policy = {});

struct PerpPair {
  Vertex v1 = 0;
  Vertex v2 = 0;
  bool monotone = false;  // dist(v1, u) - dist(v2, u) has one sign over U
  double abs_dot = 0.0;   // |w1 . w2|
  bool violates = false;  // neither disjunct holds at the threshold
};

struct PerpReport {
  std::vector<PerpPair> pairs;
  std::size_t violations = 0;
};

/// Clusters U, V in the plane within `eps` of p_U and p_V, dist(p_U, p_V) = 1.
/// Throws ClusterTooLoose if a point is farther than eps from its center and
/// InvalidInput if the centers are not at distance 1.
PerpReport check_perp_disjunction(const PointCloud& u, const PointCloud& v, const Point2& p_u,
                                  const Point2& p_v, double eps, double alpha_threshold = 0.25);

struct K23Report {
  bool condition_holds = false;  // no two U vertices share three neighbors
  std::size_t edge_count = 0;
  std::size_t n = 0;             // max(|U|, |V|)
  double bound = 0.0;            // n^{3/2}
  double ratio = 0.0;            // edge_count / bound
};

/// Bipartite graph with U = 0..u_size-1 and V the remaining vertices.
K23Report check_k23_condition(const Graph& graph, std::size_t u_size);

struct PackingEstimate {
  std::size_t estimate = 0;  // |T| - 1
  PointCloud witness;        // points of T
};

/// Randomized repulsion search for many points in the closed unit ball of
/// R^d with pairwise distances > 1. Each (size, trial) pair has its own seed,
/// so the estimate never decreases when `trials` grows.
PackingEstimate estimate_packing_constant(std::size_t d, std::size_t trials, std::uint64_t seed);

bool verify_packing_witness(const PointCloud& witness);

/// beta_0 of the link of v in R(S).
std::size_t link_reduced_components(const PointCloud& cloud, Vertex v,
                                    const ThresholdPolicy& policy = {});

// ---------------------------------------------------------------------------

enum class Family { kS2, kS2km1, kEvenP, kQuasiRipsRs };

std::string_view family_name(Family family);
/// Accepts the canonical names and the CLI spellings "even-p", "quasi-rs".
std::optional<Family> parse_family(std::string_view name);

struct ExperimentRecord {
  std::string family;
  std::size_t n = 0;  // vertex count of the generated instance
  int p = 0;
  std::size_t betti = 0;
  std::vector<std::size_t> face_counts;
  double wall_time = 0.0;  // seconds
  std::uint64_t seed = 0;
};

struct ExperimentOptions {
  FieldSpec field;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t face_budget = kDefaultFaceBudget;
  ConstructionParams params;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;  // in input order
  std::optional<double> exponent;         // OLS slope over records with n >= 12
  std::size_t fitted_points = 0;
};

/// Sizes are n for s2, s2km1 (k = (p+1)/2) and even_p, and N for
/// quasi_rips_rs (greedy AP3-free set, untrimmed complex).
ExperimentResult scaling_experiment(Family family, std::span<const std::size_t> sizes, int p,
                                    const ExperimentOptions& options = {});

/// OLS slope of log y against log x for points with x >= min_x and y > 0.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y,
                                   double min_x = 12.0, std::size_t* used = nullptr);

}  // namespace rips
