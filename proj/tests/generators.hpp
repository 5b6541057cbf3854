#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rips/geometry.hpp"
#include "rips/graph.hpp"

namespace gen {

/// Uniform points in [0, side]^dim, resampled until no pair is ambiguous
/// under the default policy.
inline rips::PointCloud cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim, double side) {
  std::uniform_real_distribution<double> u(0.0, side);
  const rips::ThresholdPolicy policy;
  rips::PointCloud c(dim);
  std::vector<double> p(dim);
  while (c.size() < n) {
    for (double& x : p) x = u(rng);
    bool ok = true;
    for (std::size_t i = 0; i < c.size() && ok; ++i) {
      ok = rips::classify_squared_distance(rips::squared_distance(p, c.point(i)), policy) !=
           rips::Proximity::kAmbiguous;
    }
    if (ok) c.add_point(p);
  }
  return c;
}

inline rips::Graph graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  rips::Graph g(n);
  for (rips::Vertex a = 0; a < n; ++a)
    for (rips::Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

/// Graph on n vertices from the bits of `mask` over pairs (a < b) in
/// lexicographic order.
inline rips::Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  rips::Graph g(n);
  std::size_t bit = 0;
  for (rips::Vertex a = 0; a < n; ++a)
    for (rips::Vertex b = a + 1; b < n; ++b, ++bit)
      if ((mask >> bit) & 1U) g.add_edge(a, b);
  return g;
}

inline std::vector<rips::Edge> random_cross_edges(std::mt19937_64& rng, std::size_t nu, std::size_t nv,
                                                  double density) {
  std::bernoulli_distribution coin(density);
  std::vector<rips::Edge> out;
  for (rips::Vertex i = 0; i < nu; ++i)
    for (rips::Vertex j = 0; j < nv; ++j)
      if (coin(rng)) out.emplace_back(i, j);
  return out;
}


/// Two clouds whose cross distances are all about 1/sqrt(2): `a` jitters
/// around (0, +-1/2), `b` around (+-1/2, 0). Inside each cloud, pairs from
/// opposite sides sit near distance 1, so either edge state occurs.
inline std::pair<rips::PointCloud, rips::PointCloud> cross_clusters(std::mt19937_64& rng,
                                                                    std::size_t na, std::size_t nb,
                                                                    double jitter) {
  std::uniform_real_distribution<double> u(-jitter, jitter);
  std::bernoulli_distribution side(0.5);
  const rips::ThresholdPolicy policy;
  while (true) {
    rips::PointCloud a(2), b(2);
    for (std::size_t i = 0; i < na; ++i) {
      std::vector<double> p = {u(rng), (side(rng) ? 0.5 : -0.5) + u(rng)};
      a.add_point(p);
    }
    for (std::size_t i = 0; i < nb; ++i) {
      std::vector<double> p = {(side(rng) ? 0.5 : -0.5) + u(rng), u(rng)};
      b.add_point(p);
    }
    rips::PointCloud all = a.concat(b);
    bool ok = true;
    for (std::size_t i = 0; i < all.size() && ok; ++i)
      for (std::size_t j = i + 1; j < all.size() && ok; ++j)
        ok = rips::classify_squared_distance(rips::squared_distance(all.point(i), all.point(j)),
                                             policy) != rips::Proximity::kAmbiguous;
    if (ok) return {a, b};
  }
}

/// Two planar clouds made of opposite pairs: `a` has pairs (t, +-h), `b` has
/// pairs (+-h, t), with t spaced along the other axis and h close to 1/2, so
/// each cloud is a two-clique gadget with a sparse residual graph. Cross
/// distances stay near 1/sqrt(2).
inline std::pair<rips::PointCloud, rips::PointCloud> pair_clusters(std::mt19937_64& rng, std::size_t pa,
                                                                   std::size_t pb) {
  std::uniform_real_distribution<double> h(0.497, 0.503), shift(-0.01, 0.01);
  const rips::ThresholdPolicy policy;
  auto make = [&](std::size_t pairs, bool vertical) {
    rips::PointCloud c(2);
    for (std::size_t i = 0; i < pairs; ++i) {
      const double t = 0.13 * (static_cast<double>(i) - 0.5 * static_cast<double>(pairs - 1)) + shift(rng);
      for (double sign : {1.0, -1.0}) {
        const double y = sign * h(rng);
        std::vector<double> p = vertical ? std::vector<double>{t, y} : std::vector<double>{y, t};
        c.add_point(p);
      }
    }
    return c;
  };
  while (true) {
    rips::PointCloud a = make(pa, true), b = make(pb, false);
    rips::PointCloud all = a.concat(b);
    bool ok = true;
    for (std::size_t i = 0; i < all.size() && ok; ++i)
      for (std::size_t j = i + 1; j < all.size() && ok; ++j)
        ok = rips::classify_squared_distance(rips::squared_distance(all.point(i), all.point(j)),
                                             policy) != rips::Proximity::kAmbiguous;
    if (ok) return {a, b};
  }
}

}  // namespace gen
