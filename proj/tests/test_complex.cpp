#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracle.hpp"
#include "rips/complex.hpp"
#include "rips/error.hpp"
#include "rips/homology.hpp"

using namespace rips;

namespace {

Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

Graph cycle(std::size_t n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a) g.add_edge(a, static_cast<Vertex>((a + 1) % n));
  return g;
}

PointCloud square() { return PointCloud::from_rows(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

std::vector<std::size_t> counts(const SimplicialComplex& c) { return c.face_counts(); }

using V = std::vector<std::size_t>;

}  // namespace

TEST_CASE("graph basics") {
  Graph g(4);
  g.add_edge(2, 1);
  g.add_edge(1, 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.has_edge(1, 2));
  CHECK_THROWS_AS(g.add_edge(1, 1), Error);
  CHECK_THROWS_AS(g.add_edge(1, 9), Error);
  std::size_t comps = 0;
  g.component_labels(&comps);
  CHECK(comps == 3);
  const Vertex sub[] = {1, 2, 3};
  CHECK(g.induced(sub).num_edges() == 1);
}

TEST_CASE("flag skeleton examples") {
  CHECK(counts(flag_skeleton(complete(3), 2)) == V{3, 3, 1});
  CHECK(counts(flag_skeleton(cycle(4), 2)) == V{4, 4, 0});
  CHECK(counts(flag_skeleton(complete(5), 2)) == V{5, 10, 10});
  CHECK(counts(flag_skeleton(complete(5), 0)) == V{5});
  CHECK(flag_skeleton(complete(5), 4).num_faces(4) == 1);
}

TEST_CASE("flag skeleton budget") {
  try {
    flag_skeleton(complete(10), 3, 100);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudgetExceeded);
  }
  CHECK_NOTHROW(flag_skeleton(complete(4), 3, 15));
}

TEST_CASE("faces are canonical and match brute force") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    Graph g = gen::graph(rng, 9, 0.6);
    SimplicialComplex c = flag_skeleton(g, 4);
    auto ref = oracle::cliques(g, 4);
    for (int p = 0; p <= 4; ++p) {
      CHECK(c.faces(p).is_canonical());
      REQUIRE(c.num_faces(p) == ref[p].size());
      for (std::size_t i = 0; i < ref[p].size(); ++i) {
        auto f = c.face(p, i);
        CHECK(std::vector<Vertex>(f.begin(), f.end()) == ref[p][i]);
      }
    }
  }
}

TEST_CASE("rips builder examples") {
  CHECK(counts(build_rips(square(), {}, 2)) == V{4, 4, 0});
  CHECK(counts(build_rips(PointCloud::from_rows(2, {{0, 0}, {1, 0}, {0.5, 0.8}}), {}, 2)) == V{3, 3, 1});
  const double h = 1.2 * std::sqrt(3.0) / 2;
  CHECK(counts(build_rips(PointCloud::from_rows(2, {{0, 0}, {1.2, 0}, {0.6, h}}), {}, 2)) == V{3, 0, 0});
}

TEST_CASE("link examples") {
  SimplicialComplex tri = flag_skeleton(complete(3), 2);
  const Vertex v0[] = {0};
  SimplicialComplex l = link_of(tri, v0);
  CHECK(counts(l) == V{2, 1});
  CHECK(l.parent_vertices() == std::vector<Vertex>{1, 2});

  SimplicialComplex c4 = flag_skeleton(cycle(4), 2);
  CHECK(counts(link_of(c4, v0)) == V{2, 0});

  SimplicialComplex sphere = flag_skeleton(complete(4), 2);
  const Vertex e01[] = {0, 1};
  SimplicialComplex le = link_of(sphere, e01);
  CHECK(counts(le) == V{2});
  CHECK(le.parent_vertices() == std::vector<Vertex>{2, 3});

  const Vertex missing[] = {0, 2};
  try {
    link_of(c4, missing);
    FAIL("expected FaceNotPresent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kFaceNotPresent);
  }
  const Vertex top[] = {0, 1, 2};
  try {
    link_of(tri, top);
    FAIL("expected DimensionOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDimensionOutOfRange);
  }
}

TEST_CASE("link and star of a non-flag complex") {
  // Hollow triangle plus a filled triangle sharing vertex 0.
  SimplicialComplex c = SimplicialComplex::from_generators(5, 2, {{0, 1}, {1, 2}, {0, 2}, {0, 3, 4}});
  CHECK_FALSE(c.is_flag());
  const Vertex v0[] = {0};
  SimplicialComplex l = link_of(c, v0);
  CHECK(counts(l) == V{4, 1});
  CHECK(l.parent_vertices() == std::vector<Vertex>{1, 2, 3, 4});
  SimplicialComplex s = star_of(flag_skeleton(cycle(5), 2), v0);
  CHECK(counts(s) == V{3, 2, 0});
}

TEST_CASE("induced subcomplex examples") {
  const Vertex three[] = {0, 2, 4};
  CHECK(counts(induced_subcomplex(flag_skeleton(complete(5), 2), three)) == V{3, 3, 1});
  const Vertex adj[] = {1, 2};
  CHECK(counts(induced_subcomplex(flag_skeleton(cycle(4), 2), adj)) == V{2, 1, 0});
  SimplicialComplex empty = induced_subcomplex(flag_skeleton(cycle(4), 2), std::span<const Vertex>{});
  CHECK(empty.num_vertices() == 0);
  CHECK(empty.total_faces() == 0);
  const Vertex bad[] = {7};
  try {
    induced_subcomplex(flag_skeleton(cycle(4), 2), bad);
    FAIL("expected UnknownVertex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnknownVertex);
  }
}

TEST_CASE("join examples") {
  SimplicialComplex s0 = flag_skeleton(Graph(2), 3);
  SimplicialComplex j = join(s0, s0, 2);
  CHECK(counts(j) == V{4, 4, 0});
  Graph k22(4);
  for (Vertex a : {0u, 1u})
    for (Vertex b : {2u, 3u}) k22.add_edge(a, b);
  CHECK(j == flag_skeleton(k22, 2));

  SimplicialComplex point = flag_skeleton(Graph(1), 3);
  SimplicialComplex cone = join(point, flag_skeleton(cycle(5), 3), 3);
  CHECK(betti_numbers(cone, 2).betti == V{0, 0, 0});

  SimplicialComplex c4 = flag_skeleton(cycle(4), 3);
  SimplicialComplex s3 = join(c4, c4, 4);
  CHECK(betti_numbers(s3, 3).betti == V{0, 0, 0, 1});
  // Brute-force reference on the same 8-vertex graph.
  CHECK(oracle::flag_betti(s3.graph(), 3, 2) == V{0, 0, 0, 1});
  CHECK(oracle::flag_betti(s3.graph(), 3, 3) == V{0, 0, 0, 1});

  try {
    join(flag_skeleton(complete(3), 1), s0, 2);
    FAIL("expected DimensionOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDimensionOutOfRange);
  }
}

TEST_CASE("quasi-rips examples") {
  QuasiRipsSpec spec;
  spec.alpha = 0.9;
  spec.cloud = square();
  spec.optional_edges = OptionalEdgePolicy::exclude_all();
  CHECK(counts(build_quasi_rips(spec, 2)) == V{4, 0, 0});
  spec.optional_edges = OptionalEdgePolicy::include_all();
  CHECK(counts(build_quasi_rips(spec, 2)) == V{4, 4, 0});

  QuasiRipsSpec tight;
  tight.alpha = 0.5;
  tight.cloud = PointCloud::from_rows(2, {{0, 0}, {0.1, 0}, {0, 0.2}, {0.2, 0.2}});
  CHECK(counts(build_quasi_rips(tight, 3)) == V{4, 6, 4, 1});

  spec.optional_edges = OptionalEdgePolicy::explicit_edges({{0, 1}, {2, 3}});
  Graph g = quasi_rips_graph(spec);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  spec.optional_edges = OptionalEdgePolicy::explicit_edges({{0, 3}});
  try {
    quasi_rips_graph(spec);
    FAIL("expected PolicyViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kPolicyViolation);
  }
  tight.optional_edges = OptionalEdgePolicy::explicit_edges({{0, 1}});
  CHECK_THROWS_AS(quasi_rips_graph(tight), Error);
}

TEST_CASE("quasi-rips random policy is seeded") {
  std::mt19937_64 rng(22);
  PointCloud c = gen::cloud(rng, 20, 2, 1.5);
  QuasiRipsSpec spec;
  spec.alpha = 0.4;
  spec.cloud = c;
  spec.optional_edges = OptionalEdgePolicy::seeded_random(0.5, 99);
  Graph a = quasi_rips_graph(spec), b = quasi_rips_graph(spec);
  CHECK(a == b);
  spec.optional_edges = OptionalEdgePolicy::seeded_random(0.0, 99);
  Graph lo = quasi_rips_graph(spec);
  spec.optional_edges = OptionalEdgePolicy::seeded_random(1.0, 99);
  Graph hi = quasi_rips_graph(spec);
  CHECK(hi == proximity_graph(c));
  for (auto [u, v] : lo.edges()) CHECK(distance(c.point(u), c.point(v)) <= 0.4);
  for (auto [u, v] : a.edges()) CHECK(hi.has_edge(u, v));
  for (auto [u, v] : lo.edges()) CHECK(a.has_edge(u, v));
}

TEST_CASE("property: downward closure") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    SimplicialComplex c = build_rips(gen::cloud(rng, 25, 2, 2.0), {}, 3);
    for (int p = 1; p <= 3; ++p) {
      for (std::size_t i = 0; i < c.num_faces(p); ++i) {
        auto f = c.face(p, i);
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
          std::vector<Vertex> g;
          for (std::size_t k = 0; k < f.size(); ++k)
            if (k != drop) g.push_back(f[k]);
          CHECK(c.contains(g));
        }
      }
    }
  }
}

TEST_CASE("property: restriction commutes with the rips construction") {
  std::mt19937_64 rng(24);
  std::bernoulli_distribution keep(0.6);
  for (int t = 0; t < 100; ++t) {
    PointCloud c = gen::cloud(rng, 15, 2 + t % 2, 1.8);
    SimplicialComplex whole = build_rips(c, {}, 3);
    std::vector<Vertex> w;
    for (Vertex v = 0; v < c.size(); ++v)
      if (keep(rng)) w.push_back(v);
    if (w.empty()) continue;
    CHECK(induced_subcomplex(whole, w) == build_rips(c.subset(w), {}, 3));
  }
}

TEST_CASE("property: links are rips complexes of common neighbours") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 100; ++t) {
    PointCloud c = gen::cloud(rng, 14, 2, 1.6);
    SimplicialComplex whole = build_rips(c, {}, 3);
    const Vertex v = static_cast<Vertex>(t % c.size());
    const Vertex face[] = {v};
    SimplicialComplex l = link_of(whole, face);
    const auto& nf = l.parent_vertices();
    if (nf.empty()) {
      CHECK(l.total_faces() == 0);
      continue;
    }
    CHECK(l == build_rips(c.subset(nf), {}, 2));
    if (whole.graph().degree(v) > 0) {
      const Vertex e[] = {v, whole.graph().neighbors(v)[0]};
      SimplicialComplex le = link_of(whole, e);
      if (!le.parent_vertices().empty()) CHECK(le == build_rips(c.subset(le.parent_vertices()), {}, 1));
    }
  }
}

TEST_CASE("property: close clusters give a join") {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 100; ++t) {
    auto [a, b] = gen::cross_clusters(rng, 3 + t % 5, 3 + (t / 5) % 5, 0.08);
    SimplicialComplex lhs = build_rips(a.concat(b), {}, 3);
    SimplicialComplex rhs = join(build_rips(a, {}, 3), build_rips(b, {}, 3), 3);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("property: quasi-rips with the rips-consistent policy equals rips") {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 50; ++t) {
    PointCloud c = gen::cloud(rng, 15, 2, 2.0);
    QuasiRipsSpec spec;
    spec.alpha = 0.1 + 0.8 * (t % 10) / 10.0;
    spec.cloud = c;
    CHECK(build_quasi_rips(spec, 3) == build_rips(c, {}, 3));
  }
}

TEST_CASE("complex construction validation") {
  std::vector<FaceList> lists(2);
  lists[0] = FaceList(1);
  lists[1] = FaceList(2);
  for (Vertex v : {0u, 1u}) lists[0].push_back(std::vector<Vertex>{v});
  lists[1].push_back(std::vector<Vertex>{0, 2});
  CHECK_THROWS_AS(SimplicialComplex::from_face_lists(2, 1, lists, false), Error);
  SimplicialComplex c = SimplicialComplex::from_generators(4, 1, {{3, 0, 1}});
  CHECK(counts(c) == V{4, 3});
  CHECK(c.maximal_faces().size() == 4);
}
