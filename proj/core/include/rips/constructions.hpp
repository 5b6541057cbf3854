#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rips/complex.hpp"
#include "rips/geometry.hpp"
#include "rips/graph.hpp"

namespace rips {

/// Shared generator parameters. Unset values are derived per generator from
/// the policy so that every generated pair clears the ambiguity band.
struct ConstructionParams {
  std::optional<double> delta;      // angular step
  std::optional<double> epsilon_c;  // stacking offset
  ThresholdPolicy policy;
};

// ---------------------------------------------------------------------------
// Two-clique gadgets

/// Cross edges of a graph whose parts U and V are cliques, with isolated
/// vertices dropped. beta_1 of the clique complex equals max(0, components-1).
struct ResidualGraph {
  Graph graph;                   // on the original vertex ids, cross edges only
  std::vector<Vertex> vertices;  // non-isolated vertices
  std::vector<std::size_t> component;  // component id per entry of `vertices`
  std::size_t components = 0;
};

ResidualGraph residual_graph(const Graph& graph, std::span<const Vertex> u,
                             std::span<const Vertex> v);

/// U = 0..u_size-1 and V = u_size..u_size+v_size-1, both complete.
struct TwoCliqueGadget {
  Graph graph;
  std::size_t u_size = 0;
  std::size_t v_size = 0;
  ResidualGraph residual;

  Vertex u(std::size_t i) const { return static_cast<Vertex>(i); }
  Vertex v(std::size_t i) const { return static_cast<Vertex>(u_size + i); }
};

/// `cross_edges` are (i, j) meaning u_i v_j.
TwoCliqueGadget two_clique_gadget(std::size_t u_size, std::size_t v_size,
                                  const std::vector<Edge>& cross_edges);

/// Cycles (u_1, u_i, v_i, v_1), i >= 2, from one representative cross edge per
/// residual component (the lexicographically smallest).
std::vector<std::vector<Vertex>> bipartite_quadrilaterals(const TwoCliqueGadget& gadget);

// ---------------------------------------------------------------------------
// Point configurations

/// k rotated copies of two r-point columns at x = +-1/2 joined by the
/// matching s_i^+ s_i^-. Copy c occupies ids [2rc, 2r(c+1)); s_i^+ precedes
/// s_i^-.
struct OddSphereConstruction {
  PointCloud cloud;
  std::size_t k = 0;
  std::size_t r = 0;
  double delta = 0.0;
  double epsilon_c = 0.0;
};

/// Combinatorial edge set the odd-sphere generator must realize.
Graph odd_sphere_expected_graph(std::size_t k, std::size_t r);

/// r = floor(n / 2k) >= 2. Throws MarginViolation or EdgeSetMismatch when the
/// realized proximity graph is not the intended one.
OddSphereConstruction construct_s2km1(std::size_t n, std::size_t k,
                                      const ConstructionParams& params = {});

/// 3k^2 points u_{i,j}, v_{i,j}, w_{i,j} in R^5 (ids: U block, V block, W
/// block, each row-major in (i, j), 1-based indices in accessors).
struct S2Construction {
  PointCloud cloud;
  std::size_t k = 0;
  double delta = 0.0;
  double epsilon_c = 0.0;

  Vertex u(std::size_t i, std::size_t j) const { return id(0, i, j); }
  Vertex v(std::size_t i, std::size_t j) const { return id(1, i, j); }
  Vertex w(std::size_t i, std::size_t j) const { return id(2, i, j); }

 private:
  Vertex id(std::size_t block, std::size_t i, std::size_t j) const {
    return static_cast<Vertex>(block * k * k + (i - 1) * k + (j - 1));
  }
};

/// The six edge families: U, V, W cliques; u_{i,j} v_{i',j}; u_{i,j} w_{i,j'};
/// v_{i,j} w_{i',i}.
Graph s2_expected_graph(std::size_t k);

/// Throws EdgeSetMismatch (listing discrepancies) or MarginViolation.
S2Construction construct_s2(std::size_t k, const ConstructionParams& params = {});

/// Largest k with 3k^2 <= n.
std::size_t s2_parameter_for(std::size_t n);

/// Union of an S^2 configuration and the R^5 image of an odd-sphere
/// configuration with 2k - 1 = p - 3; all cross pairs are edges, so the
/// Rips complex is the join.
struct EvenPConstruction {
  PointCloud cloud;  // S^2 points first
  S2Construction s2;
  OddSphereConstruction odd;
  std::size_t p = 0;
  double max_cross_distance = 0.0;
};

/// S^2 part from floor(n/2) points, odd part from ceil(n/2) points.
EvenPConstruction construct_even_p(std::size_t n, std::size_t p,
                                   const ConstructionParams& params = {});
/// Explicit part sizes: S^2 parameter `s2_k` and `odd_n` odd-part points.
EvenPConstruction construct_even_p_parts(std::size_t s2_k, std::size_t odd_n, std::size_t p,
                                         const ConstructionParams& params = {});

// ---------------------------------------------------------------------------
// Progression-free sets and induced matchings

enum class Ap3Method { kGreedy, kBehrend };

bool is_ap3_free(std::span<const std::int64_t> set);

/// Subset of [0, N) without a nontrivial 3-term progression, ascending.
std::vector<std::int64_t> ap3_free_set(std::int64_t n, Ap3Method method);

/// Bipartite graph with U = 0..u_size-1, V = 0..v_size-1 (local ids) and
/// pairwise disjoint matchings.
struct MatchingFamily {
  std::size_t u_size = 0;
  std::size_t v_size = 0;
  std::vector<Edge> edges;                  // (u, v), sorted
  std::vector<std::vector<Edge>> matchings;  // each sorted

  std::size_t total_matched() const;
  bool has_edge(Vertex u, Vertex v) const;
};

struct MatchingFamilyReport {
  bool edges_valid = false;  // matching edges are graph edges
  bool matchings = false;    // no shared endpoints within a matching
  bool disjoint = false;
  bool induced = false;
  std::size_t total = 0;

  bool ok() const { return edges_valid && matchings && disjoint && induced; }
};

MatchingFamilyReport check_matching_family(const MatchingFamily& family);

/// U = [0, N), V = [0, 2N), edges (x, x + a); matching M_z collects
/// (z - 2a, z - a) for z in [0, 3N). Empty matchings are omitted. Throws
/// NotAP3Free if `a` has a progression or the result fails the structural
/// check.
MatchingFamily rs_matching_family(std::span<const std::int64_t> a, std::int64_t n);

struct MatchingComplexOptions {
  int dim_cap = 3;
  double alpha = 0.5;   // witness parameter
  bool trim = true;     // otherwise oversize inputs throw CapExceeded
  std::size_t face_budget = kDefaultFaceBudget;
};

/// Clique complex of the graph on U' u V' u N: three cliques, U'-V' edges of
/// the family, N_i joined to the endpoints of its matching.
struct MatchingComplex {
  SimplicialComplex complex;
  Graph graph;
  std::size_t u_size = 0;  // ids [0, u_size)
  std::size_t v_size = 0;  // ids [u_size, u_size + v_size)
  std::size_t n_size = 0;  // ids after that, one per matching
  MatchingFamily trimmed;  // family restricted to U' x V' and the kept matchings
  QuasiRipsSpec witness;   // planar cloud whose quasi-Rips complex is `complex`
  std::string note;
};

MatchingComplex quasi_rips_from_matchings(const MatchingFamily& family, std::size_t cap_third,
                                          const MatchingComplexOptions& options = {});

/// The non-flag complex obtained by deleting every face N u v (N a matching
/// vertex, u in U', v in V') and its cofaces.
SimplicialComplex face_deleted_complex(const MatchingComplex& mc);

}  // namespace rips
