#include "rips/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "rips/error.hpp"

namespace rips::io {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorKind::kInvalidInput, message); }

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& value) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    bad(std::string("key \"") + key + "\" has the wrong type");
  }
}

/// Shortest round-trip representation.
std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

PointCloud read_point_cloud_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0, dim = 0;
  bool first = true;
  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i) numeric = numeric && parse_double(fields[i], row[i]);
    if (!numeric) {
      if (first) {
        first = false;
        dim = fields.size();
        continue;
      }
      bad("line " + std::to_string(line_no) + ": non-numeric field");
    }
    if (dim == 0) dim = row.size();
    first = false;
    if (row.size() != dim) {
      throw Error(ErrorKind::kDimensionMismatch, "line " + std::to_string(line_no) + ": expected " +
                                                     std::to_string(dim) + " columns, found " +
                                                     std::to_string(row.size()));
    }
    coords.insert(coords.end(), row.begin(), row.end());
  }
  if (dim == 0) bad("point cloud has no columns");
  return PointCloud(dim, std::move(coords));
}

PointCloud read_point_cloud_json(std::string_view text) {
  Json j = parse_json(text);
  const auto dim = get_field<std::size_t>(j, "dim");
  if (dim == 0) bad("\"dim\" must be positive");
  const auto rows = get_field<std::vector<std::vector<double>>>(j, "points");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = get_field<std::vector<std::string>>(j, "labels");
  if (!labels.empty() && labels.size() != rows.size()) bad("\"labels\" length differs from \"points\"");
  PointCloud cloud(dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(ErrorKind::kDimensionMismatch, "point " + std::to_string(i) + " has " +
                                                     std::to_string(rows[i].size()) +
                                                     " coordinates, expected " + std::to_string(dim));
    }
    cloud.add_point(rows[i], labels.empty() ? std::string() : labels[i]);
  }
  return cloud;
}

PointCloud read_point_cloud_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  if (path.size() >= 5 && path.ends_with(".json")) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_point_cloud_json(buf.str());
  }
  return read_point_cloud_csv(in);
}

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t c = 0; c < p.size(); ++c) out << (c ? "," : "") << format_double(p[c]);
    out << '\n';
  }
}

std::string point_cloud_json(const PointCloud& cloud) {
  Json j;
  j["dim"] = cloud.dim();
  Json points = Json::array();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    points.push_back(std::vector<double>(p.begin(), p.end()));
  }
  j["points"] = std::move(points);
  if (cloud.has_labels()) j["labels"] = cloud.labels();
  return j.dump();
}

std::string complex_json(const SimplicialComplex& complex) {
  Json j;
  j["n_vertices"] = complex.num_vertices();
  j["dim_cap"] = complex.dim_cap();
  j["flag"] = complex.is_flag();
  Json faces = Json::array();
  for (const auto& f : complex.maximal_faces()) faces.push_back(f);
  j["faces"] = std::move(faces);
  return j.dump();
}

SimplicialComplex complex_from_json(std::string_view text) {
  Json j = parse_json(text);
  const auto n = get_field<std::size_t>(j, "n_vertices");
  const auto cap = get_field<int>(j, "dim_cap");
  const auto faces = get_field<std::vector<std::vector<Vertex>>>(j, "faces");
  const bool flag = j.contains("flag") && get_field<bool>(j, "flag");
  if (cap < 0) bad("\"dim_cap\" must be non-negative");
  SimplicialComplex c = SimplicialComplex::from_generators(n, cap, faces);
  if (!flag) return c;
  SimplicialComplex clique = flag_skeleton(c.graph(), cap);
  if (!(clique == c)) bad("complex marked flag is not the clique complex of its 1-skeleton");
  return clique;
}

std::string betti_json(const BettiVector& betti) {
  Json j;
  j["field"] = betti.field.p;
  j["betti"] = betti.betti;
  return j.dump();
}

std::string cycle_basis_json(const CycleBasis& basis) {
  Json cycles = Json::array();
  for (const auto& c : basis.cycles) {
    Json e;
    e["vertices"] = c.vertices;
    e["simple"] = c.simple;
    e["chord_free"] = c.chord_free;
    e["epsilon_simple"] = c.epsilon_simple;
    cycles.push_back(std::move(e));
  }
  Json j;
  j["cycles"] = std::move(cycles);
  return j.dump();
}

std::string matching_family_json(const MatchingFamily& family) {
  auto pairs = [](const std::vector<Edge>& edges) {
    Json a = Json::array();
    for (auto [u, v] : edges) a.push_back({u, v});
    return a;
  };
  Json j;
  j["U"] = family.u_size;
  j["V"] = family.v_size;
  j["edges"] = pairs(family.edges);
  Json ms = Json::array();
  for (const auto& m : family.matchings) ms.push_back(pairs(m));
  j["matchings"] = std::move(ms);
  return j.dump();
}

MatchingFamily matching_family_from_json(std::string_view text) {
  Json j = parse_json(text);
  MatchingFamily f;
  f.u_size = get_field<std::size_t>(j, "U");
  f.v_size = get_field<std::size_t>(j, "V");
  auto to_edges = [](const std::vector<std::array<Vertex, 2>>& raw) {
    std::vector<Edge> out;
    for (auto [u, v] : raw) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
  };
  f.edges = to_edges(get_field<std::vector<std::array<Vertex, 2>>>(j, "edges"));
  for (Edge e : f.edges) {
    if (e.first >= f.u_size || e.second >= f.v_size) bad("edge endpoint out of range");
  }
  if (j.contains("matchings")) {
    for (const auto& m : get_field<std::vector<std::vector<std::array<Vertex, 2>>>>(j, "matchings")) {
      f.matchings.push_back(to_edges(m));
    }
  }
  return f;
}

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records, bool timing) {
  out << "family,n,p,betti,f0,f1,f2,f3,wall_time,seed\n";
  for (const auto& r : records) {
    out << r.family << ',' << r.n << ',' << r.p << ',' << r.betti;
    for (std::size_t i = 0; i < 4; ++i) {
      out << ',';
      if (i < r.face_counts.size()) out << r.face_counts[i];
    }
    out << ',';
    if (timing) out << std::fixed << std::setprecision(6) << r.wall_time << std::defaultfloat;
    out << ',' << r.seed << '\n';
  }
}

std::string experiment_json(const ExperimentResult& result, bool timing) {
  Json records = Json::array();
  for (const auto& r : result.records) {
    Json e;
    e["family"] = r.family;
    e["n"] = r.n;
    e["p"] = r.p;
    e["betti"] = r.betti;
    e["face_counts"] = r.face_counts;
    if (timing) e["wall_time"] = r.wall_time;
    e["seed"] = r.seed;
    records.push_back(std::move(e));
  }
  Json j;
  j["records"] = std::move(records);
  Json summary;
  summary["exponent"] = result.exponent ? Json(*result.exponent) : Json(nullptr);
  summary["fitted_points"] = result.fitted_points;
  j["summary"] = std::move(summary);
  return j.dump();
}

}  // namespace rips::io
