#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "json.hpp"
#include "rips/error.hpp"
#include "rips/io.hpp"

using namespace rips;
using nlohmann::json;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::kInvalidInput;
}

PointCloud from_csv(const std::string& text) {
  std::istringstream in(text);
  return io::read_point_cloud_csv(in);
}

}  // namespace

TEST_CASE("point cloud csv") {
  PointCloud a = from_csv("x,y\n0,0\n1,0\n1,1\n");
  CHECK(a.dim() == 2);
  CHECK(a.size() == 3);
  CHECK(a.point(2)[1] == 1.0);
  PointCloud b = from_csv("0.5 , -1e-3\n\n2,3\n");
  CHECK(b.size() == 2);
  CHECK(b.point(0)[1] == -1e-3);

  CHECK(kind_of([] { from_csv("0,0\n1,2,3\n"); }) == ErrorKind::kDimensionMismatch);
  CHECK(kind_of([] { from_csv("0,0\n1,abc\n"); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { from_csv("0,nan\n"); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("point cloud json") {
  PointCloud c = io::read_point_cloud_json(R"({"dim":2,"points":[[0,0],[1,0.5]],"labels":["a","b"]})");
  CHECK(c.size() == 2);
  CHECK(c.labels()[1] == "b");
  CHECK(kind_of([] { io::read_point_cloud_json(R"({"dim":2,"points":[[0,0,1]]})"); }) ==
        ErrorKind::kDimensionMismatch);
  CHECK(kind_of([] { io::read_point_cloud_json("{"); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { io::read_point_cloud_json(R"({"points":"x"})"); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("property: point cloud round trips") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 50; ++t) {
    PointCloud c = gen::cloud(rng, 1 + t % 9, 1 + t % 4, 3.0);
    std::ostringstream csv;
    io::write_point_cloud_csv(csv, c);
    CHECK(from_csv(csv.str()).coordinates() == c.coordinates());
    CHECK(io::read_point_cloud_json(io::point_cloud_json(c)).coordinates() == c.coordinates());
  }
}

TEST_CASE("point cloud files") {
  const auto dir = std::filesystem::temp_directory_path() / "rips_io_test";
  std::filesystem::create_directories(dir);
  PointCloud c = PointCloud::from_rows(2, {{0, 0}, {0.25, 0.75}});
  {
    std::ofstream(dir / "c.json") << io::point_cloud_json(c);
    std::ofstream out(dir / "c.csv");
    io::write_point_cloud_csv(out, c);
  }
  CHECK(io::read_point_cloud_file((dir / "c.json").string()).coordinates() == c.coordinates());
  CHECK(io::read_point_cloud_file((dir / "c.csv").string()).coordinates() == c.coordinates());
  CHECK(kind_of([&] { io::read_point_cloud_file((dir / "missing.csv").string()); }) == ErrorKind::kInvalidInput);
  std::filesystem::remove_all(dir);
}

TEST_CASE("complex json") {
  Graph g(4);
  for (auto [a, b] : std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}}) g.add_edge(a, b);
  SimplicialComplex c = flag_skeleton(g, 2);
  const json j = json::parse(io::complex_json(c));
  CHECK(j["n_vertices"] == 4);
  CHECK(j["flag"] == true);
  CHECK(j["faces"] == json::parse("[[2,3],[0,1,2]]"));
  SimplicialComplex back = io::complex_from_json(io::complex_json(c));
  CHECK(back.face_counts() == c.face_counts());

  SimplicialComplex hollow = SimplicialComplex::from_generators(3, 2, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(io::complex_from_json(io::complex_json(hollow)).num_faces(2) == 0);
  CHECK(kind_of([] { io::complex_from_json(R"({"n_vertices":3,"dim_cap":2,"flag":true,"faces":[[0,1],[1,2],[0,2]]})"); }) ==
        ErrorKind::kInvalidInput);
  CHECK_THROWS_AS(io::complex_from_json(R"({"n_vertices":2,"dim_cap":1,"flag":false,"faces":[[0,5]]})"), Error);
}

TEST_CASE("betti and cycle basis json") {
  BettiVector b;
  b.field = FieldSpec{3};
  b.betti = {0, 2};
  CHECK(json::parse(io::betti_json(b)) == json::parse(R"({"field":3,"betti":[0,2]})"));
  CycleBasis basis;
  basis.cycles.push_back({{0, 1, 2, 3}, true, true, false});
  const json j = json::parse(io::cycle_basis_json(basis));
  CHECK(j["cycles"][0]["vertices"] == json::parse("[0,1,2,3]"));
  CHECK(j["cycles"][0]["chord_free"] == true);
  CHECK(j["cycles"][0]["epsilon_simple"] == false);
}

TEST_CASE("matching family json") {
  const std::int64_t a[] = {0, 1};
  MatchingFamily f = rs_matching_family(a, 2);
  MatchingFamily back = io::matching_family_from_json(io::matching_family_json(f));
  CHECK(back.edges == f.edges);
  CHECK(back.matchings == f.matchings);
  CHECK(back.u_size == 2);
  CHECK(back.v_size == 4);
  MatchingFamily plain = io::matching_family_from_json(R"({"U":2,"V":2,"edges":[[1,0],[0,1]]})");
  CHECK(plain.edges == std::vector<Edge>{{0, 1}, {1, 0}});
  CHECK(plain.matchings.empty());
  CHECK(kind_of([] { io::matching_family_from_json(R"({"U":1,"V":1,"edges":[[0,3]]})"); }) ==
        ErrorKind::kInvalidInput);
}

TEST_CASE("experiment output") {
  ExperimentResult r;
  r.records.push_back({"s2km1", 12, 1, 5, {12, 42}, 0.5, 3});
  r.exponent = 1.25;
  r.fitted_points = 1;
  std::ostringstream timed, untimed;
  io::write_records_csv(timed, r.records);
  io::write_records_csv(untimed, r.records, false);
  CHECK(timed.str() == "family,n,p,betti,f0,f1,f2,f3,wall_time,seed\ns2km1,12,1,5,12,42,,,0.500000,3\n");
  CHECK(untimed.str() == "family,n,p,betti,f0,f1,f2,f3,wall_time,seed\ns2km1,12,1,5,12,42,,,,3\n");
  const json j = json::parse(io::experiment_json(r, false));
  CHECK(j["summary"]["exponent"] == 1.25);
  CHECK(j["summary"]["fitted_points"] == 1);
  CHECK_FALSE(j["records"][0].contains("wall_time"));
  CHECK(j["records"][0]["face_counts"] == json::parse("[12,42]"));
  r.exponent.reset();
  CHECK(json::parse(io::experiment_json(r))["summary"]["exponent"].is_null());
}
