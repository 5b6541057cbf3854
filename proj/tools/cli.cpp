#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rips/bounds.hpp"
#include "rips/complex.hpp"
#include "rips/constructions.hpp"
#include "rips/error.hpp"
#include "rips/geometry.hpp"
#include "rips/homology.hpp"
#include "rips/io.hpp"

namespace rips::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kResourceError = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudgetExceeded:
    case ErrorKind::kMarginViolation:
    case ErrorKind::kCapExceeded:
      return kResourceError;
    default:
      return kInputError;
  }
}

std::string error_line(std::string_view kind, std::string_view message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  return j.dump();
}

std::size_t face_budget() {
  const char* raw = std::getenv("RIPS_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultFaceBudget;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || *end != '\0' || v == 0 || raw[0] == '-') {
    throw Error(ErrorKind::kInvalidInput, "RIPS_BUDGET must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

Json parse(const std::string& text) { return Json::parse(text); }

/// Options shared by most subcommands.
struct Output {
  std::string path;
  std::string format = "json";
};

void add_output(CLI::App* app, Output& o, bool with_format) {
  app->add_option("--out,-o", o.path, "Write output to FILE instead of stdout");
  if (with_format) {
    app->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  }
}

void write(const Output& o, std::ostream& out, const std::string& text) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kInvalidInput, "cannot write " + o.path);
  file << text;
}

std::string json_line(const Json& j) { return j.dump() + "\n"; }

Json versioned() {
  Json j;
  j["version"] = 1;
  return j;
}

ThresholdPolicy make_policy(double threshold, double rel, double band) {
  ThresholdPolicy p;
  p.threshold = threshold;
  p.relative_tolerance = rel;
  p.ambiguity_band = band;
  p.validate();
  return p;
}

struct PolicyFlags {
  double threshold = 1.0;
  double rel = ThresholdPolicy{}.relative_tolerance;
  double band = ThresholdPolicy{}.ambiguity_band;

  void add(CLI::App* app, bool with_threshold = true) {
    if (with_threshold) {
      app->add_option("--threshold", threshold, "Rips distance threshold")->capture_default_str();
    }
    app->add_option("--rel-tol", rel, "Relative tolerance on the squared threshold")
        ->capture_default_str();
    app->add_option("--band", band, "Relative half-width of the rejected ambiguity band")
        ->capture_default_str();
  }
  ThresholdPolicy policy() const { return make_policy(threshold, rel, band); }
};

void add_field(CLI::App* app, std::uint32_t& field) {
  app->add_option("--field", field, "Prime characteristic of the coefficient field")
      ->capture_default_str();
}

FieldSpec make_field(std::uint32_t p) {
  FieldSpec f{p};
  f.validate();
  return f;
}

Json cloud_json(const PointCloud& cloud, Json construction) {
  Json j = versioned();
  j["construction"] = std::move(construction);
  Json c = parse(io::point_cloud_json(cloud));
  for (auto& [k, v] : c.items()) j[k] = v;
  return j;
}

std::string cloud_text(const Output& o, const PointCloud& cloud, Json construction) {
  if (o.format == "csv") {
    std::ostringstream s;
    io::write_point_cloud_csv(s, cloud);
    return s.str();
  }
  return json_line(cloud_json(cloud, std::move(construction)));
}

Edge parse_edge(const std::string& token) {
  const auto dash = token.find('-');
  if (dash == std::string::npos) throw Error(ErrorKind::kInvalidInput, "edge \"" + token + "\" is not i-j");
  try {
    std::size_t used = 0;
    const unsigned long a = std::stoul(token.substr(0, dash), &used);
    if (used != dash) throw std::invalid_argument("");
    const std::string rest = token.substr(dash + 1);
    const unsigned long b = std::stoul(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    return {static_cast<Vertex>(a), static_cast<Vertex>(b)};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::kInvalidInput, "edge \"" + token + "\" is not i-j");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ConstructionParams make_params(const std::optional<double>& delta, const std::optional<double>& eps,
                               const PolicyFlags& pf) {
  ConstructionParams p;
  p.delta = delta;
  p.epsilon_c = eps;
  p.policy = pf.policy();
  return p;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vietoris-Rips homology, extremal constructions and property checkers", "rips"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rips 0.1.0");
  std::function<int()> action;

  // betti ------------------------------------------------------------------
  struct {
    std::string cloud;
    int pmax = 0;
    std::optional<int> dim_cap;
    std::uint32_t field = 2;
    PolicyFlags pf;
    Output o;
  } betti;
  auto* betti_cmd = app.add_subcommand("betti", "Reduced Betti numbers of the Rips complex of a cloud");
  betti_cmd->add_option("--cloud", betti.cloud, "Point cloud (.csv or .json)")->required();
  betti_cmd->add_option("--pmax", betti.pmax, "Highest degree to report")->required()->check(CLI::NonNegativeNumber);
  betti_cmd->add_option("--dim-cap", betti.dim_cap, "Face dimension cap (default pmax + 1)");
  add_field(betti_cmd, betti.field);
  betti.pf.add(betti_cmd);
  add_output(betti_cmd, betti.o, false);
  betti_cmd->callback([&] {
    action = [&] {
      const FieldSpec field = make_field(betti.field);
      const ThresholdPolicy policy = betti.pf.policy();
      PointCloud cloud = io::read_point_cloud_file(betti.cloud);
      SimplicialComplex c = build_rips(cloud, policy, betti.dim_cap.value_or(betti.pmax + 1), face_budget());
      BettiVector b = betti_numbers(c, betti.pmax, field);
      Json j = versioned();
      j["field"] = field.p;
      j["betti"] = b.betti;
      j["face_counts"] = c.face_counts();
      write(betti.o, out, json_line(j));
      return 0;
    };
  });

  // construct --------------------------------------------------------------
  auto* construct_cmd = app.add_subcommand("construct", "Generate a point configuration or complex");
  construct_cmd->require_subcommand(1);
  struct {
    std::size_t k = 2;
    std::size_t n = 0;
    std::size_t p = 4;
    std::optional<std::size_t> s2_k;
    std::optional<std::size_t> odd_n;
    std::optional<double> delta;
    std::optional<double> eps;
    std::string ap3 = "greedy";
    std::optional<std::size_t> cap_third;
    double alpha = 0.5;
    int dim_cap = 3;
    bool no_trim = false;
    PolicyFlags pf;
    Output o;
  } cons;
  auto add_geometry = [&](CLI::App* sub) {
    sub->add_option("--delta", cons.delta, "Angular step (default derived from the margins)");
    sub->add_option("--epsilon-c", cons.eps, "Stacking offset (default derived from the band)");
    cons.pf.add(sub, false);
    add_output(sub, cons.o, true);
  };

  auto* s2_cmd = construct_cmd->add_subcommand("s2", "3k^2 points in R^5 with large beta_2");
  s2_cmd->add_option("--k", cons.k, "Grid parameter, k >= 2")->required();
  add_geometry(s2_cmd);
  s2_cmd->callback([&] {
    action = [&] {
      S2Construction s = construct_s2(cons.k, make_params(cons.delta, cons.eps, cons.pf));
      Json meta{{"name", "s2"}, {"k", s.k}, {"delta", s.delta}, {"epsilon_c", s.epsilon_c}};
      write(cons.o, out, cloud_text(cons.o, s.cloud, meta));
      return 0;
    };
  });

  auto* odd_cmd = construct_cmd->add_subcommand("s2km1", "Planar cloud with large beta_{2k-1}");
  odd_cmd->add_option("--n", cons.n, "Point budget; r = floor(n / 2k) >= 2")->required();
  odd_cmd->add_option("--k", cons.k, "Number of rotated copies")->capture_default_str();
  add_geometry(odd_cmd);
  odd_cmd->callback([&] {
    action = [&] {
      OddSphereConstruction s = construct_s2km1(cons.n, cons.k, make_params(cons.delta, cons.eps, cons.pf));
      Json meta{{"name", "s2km1"}, {"k", s.k}, {"r", s.r}, {"delta", s.delta}, {"epsilon_c", s.epsilon_c}};
      write(cons.o, out, cloud_text(cons.o, s.cloud, meta));
      return 0;
    };
  });

  auto* even_cmd = construct_cmd->add_subcommand("even-p", "Join of an S^2 part and an odd-sphere part in R^5");
  even_cmd->add_option("--p", cons.p, "Even degree p >= 4")->required();
  even_cmd->add_option("--n", cons.n, "Point budget, split floor(n/2) / ceil(n/2)");
  even_cmd->add_option("--s2-k", cons.s2_k, "Explicit S^2 grid parameter (with --odd-n)");
  even_cmd->add_option("--odd-n", cons.odd_n, "Explicit odd-part point budget (with --s2-k)");
  add_geometry(even_cmd);
  even_cmd->callback([&] {
    action = [&] {
      const ConstructionParams params = make_params(cons.delta, cons.eps, cons.pf);
      EvenPConstruction s;
      if (cons.s2_k || cons.odd_n) {
        if (!cons.s2_k || !cons.odd_n) throw Error(ErrorKind::kInvalidInput, "--s2-k and --odd-n go together");
        s = construct_even_p_parts(*cons.s2_k, *cons.odd_n, cons.p, params);
      } else {
        if (cons.n == 0) throw Error(ErrorKind::kInvalidInput, "--n or --s2-k/--odd-n is required");
        s = construct_even_p(cons.n, cons.p, params);
      }
      Json meta{{"name", "even_p"}, {"p", s.p}, {"s2_k", s.s2.k}, {"odd_k", s.odd.k}, {"odd_r", s.odd.r},
                {"max_cross_distance", s.max_cross_distance}};
      write(cons.o, out, cloud_text(cons.o, s.cloud, meta));
      return 0;
    };
  });

  auto* quasi_cmd = construct_cmd->add_subcommand("quasi-rs", "Quasi-Rips complex from an induced-matching family");
  quasi_cmd->add_option("--n", cons.n, "N: AP3-free set drawn from [0, N)")->required()->check(CLI::PositiveNumber);
  quasi_cmd->add_option("--ap3", cons.ap3, "AP3-free generator")
      ->check(CLI::IsMember({"greedy", "behrend"}))
      ->capture_default_str();
  quasi_cmd->add_option("--cap-third", cons.cap_third, "Per-part size cap (default: no trimming needed)");
  quasi_cmd->add_option("--alpha", cons.alpha, "Quasi-Rips parameter of the witness cloud")->capture_default_str();
  quasi_cmd->add_option("--dim-cap", cons.dim_cap, "Face dimension cap")->capture_default_str();
  quasi_cmd->add_flag("--no-trim", cons.no_trim, "Fail with CapExceeded instead of trimming");
  add_output(quasi_cmd, cons.o, true);
  quasi_cmd->callback([&] {
    action = [&] {
      const auto n = static_cast<std::int64_t>(cons.n);
      std::vector<std::int64_t> a =
          ap3_free_set(n, cons.ap3 == "behrend" ? Ap3Method::kBehrend : Ap3Method::kGreedy);
      MatchingFamily f = rs_matching_family(a, n);
      MatchingComplexOptions mo;
      mo.alpha = cons.alpha;
      mo.dim_cap = cons.dim_cap;
      mo.trim = !cons.no_trim;
      mo.face_budget = face_budget();
      const std::size_t cap = cons.cap_third.value_or(
          std::max({f.u_size, f.v_size, f.matchings.size(), std::size_t{1}}));
      MatchingComplex mc = quasi_rips_from_matchings(f, cap, mo);
      if (cons.o.format == "csv") {
        std::ostringstream s;
        io::write_point_cloud_csv(s, mc.witness.cloud);
        write(cons.o, out, s.str());
        return 0;
      }
      Json j = versioned();
      j["construction"] = Json{{"name", "quasi_rips_rs"}, {"N", cons.n}, {"A", a}, {"cap_third", cap}};
      j["family"] = parse(io::matching_family_json(mc.trimmed));
      j["complex"] = parse(io::complex_json(mc.complex));
      Json optional = Json::array();
      for (auto [u, v] : mc.witness.optional_edges.edges) optional.push_back({u, v});
      j["witness"] = Json{{"alpha", mc.witness.alpha},
                          {"cloud", parse(io::point_cloud_json(mc.witness.cloud))},
                          {"optional_edges", std::move(optional)}};
      j["note"] = mc.note;
      write(cons.o, out, json_line(j));
      return 0;
    };
  });

  // check ------------------------------------------------------------------
  auto* check_cmd = app.add_subcommand("check", "Run a property checker; exit 0 on pass, 1 on failure");
  check_cmd->require_subcommand(1);
  struct {
    std::string cloud;
    Vertex vertex = 0;
    int p = 1;
    std::uint32_t field = 2;
    std::vector<double> points;
    std::string graph;
    std::string u_file, v_file;
    std::vector<double> pu, pv;
    double eps = 0.01;
    double alpha = 0.25;
    std::size_t u_size = 0, v_size = 0;
    std::vector<std::string> edges;
    PolicyFlags pf;
    Output o;
  } chk;

  auto* link_cmd = check_cmd->add_subcommand("link-inequality", "beta_p(S) <= beta_p(S - v) + beta_{p-1}(lk v)");
  link_cmd->add_option("--cloud", chk.cloud, "Point cloud (.csv or .json)")->required();
  link_cmd->add_option("--vertex", chk.vertex, "Vertex to delete")->required();
  link_cmd->add_option("--p", chk.p, "Degree p >= 1")->required();
  add_field(link_cmd, chk.field);
  chk.pf.add(link_cmd);
  add_output(link_cmd, chk.o, false);
  link_cmd->callback([&] {
    action = [&] {
      PointCloud cloud = io::read_point_cloud_file(chk.cloud);
      LinkInequalityReport r =
          check_link_inequality(cloud, chk.vertex, chk.p, make_field(chk.field), chk.pf.policy(), face_budget());
      Json j = versioned();
      j["check"] = "link-inequality";
      j["holds"] = r.holds;
      j["beta"] = r.beta_whole;
      j["beta_deleted"] = r.beta_deleted;
      j["beta_link"] = r.beta_link;
      write(chk.o, out, json_line(j));
      return r.holds ? 0 : kCheckFailed;
    };
  });

  auto* crossing_cmd = check_cmd->add_subcommand("crossing", "Crossing edges u1v1, u2v2 in the plane force a cone");
  crossing_cmd->add_option("--points", chk.points, "u1x,u1y,v1x,v1y,u2x,u2y,v2x,v2y")
      ->required()
      ->delimiter(',')
      ->expected(8);
  chk.pf.add(crossing_cmd, false);
  add_output(crossing_cmd, chk.o, false);
  crossing_cmd->callback([&] {
    action = [&] {
      const auto& q = chk.points;
      CrossingConeReport r = check_crossing_cone({q[0], q[1]}, {q[2], q[3]}, {q[4], q[5]}, {q[6], q[7]},
                                                 chk.pf.policy());
      Json j = versioned();
      j["check"] = "crossing";
      j["cone"] = r.cone;
      j["apex"] = r.apex ? Json(*r.apex) : Json(nullptr);
      write(chk.o, out, json_line(j));
      return r.cone ? 0 : kCheckFailed;
    };
  });

  auto* k23_cmd = check_cmd->add_subcommand("k23", "No two U vertices share three neighbours");
  k23_cmd->add_option("--graph", chk.graph, "Bipartite graph JSON {\"U\", \"V\", \"edges\"}")->required();
  add_output(k23_cmd, chk.o, false);
  k23_cmd->callback([&] {
    action = [&] {
      MatchingFamily f = io::matching_family_from_json(read_file(chk.graph));
      Graph g(f.u_size + f.v_size);
      for (auto [u, v] : f.edges) g.add_edge(u, static_cast<Vertex>(f.u_size + v));
      K23Report r = check_k23_condition(g, f.u_size);
      Json j = versioned();
      j["check"] = "k23";
      j["condition_holds"] = r.condition_holds;
      j["edge_count"] = r.edge_count;
      j["n"] = r.n;
      j["bound"] = r.bound;
      j["ratio"] = r.ratio;
      write(chk.o, out, json_line(j));
      return r.condition_holds ? 0 : kCheckFailed;
    };
  });

  auto* perp_cmd = check_cmd->add_subcommand("perp", "Monotone-distance or near-perpendicular disjunction");
  perp_cmd->add_option("--u", chk.u_file, "Cluster U (planar cloud)")->required();
  perp_cmd->add_option("--v", chk.v_file, "Cluster V (planar cloud)")->required();
  perp_cmd->add_option("--pu", chk.pu, "Center of U as x,y")->required()->delimiter(',')->expected(2);
  perp_cmd->add_option("--pv", chk.pv, "Center of V as x,y")->required()->delimiter(',')->expected(2);
  perp_cmd->add_option("--eps", chk.eps, "Cluster radius")->capture_default_str();
  perp_cmd->add_option("--alpha", chk.alpha, "Dot-product threshold")->capture_default_str();
  add_output(perp_cmd, chk.o, false);
  perp_cmd->callback([&] {
    action = [&] {
      PointCloud u = io::read_point_cloud_file(chk.u_file), v = io::read_point_cloud_file(chk.v_file);
      PerpReport r = check_perp_disjunction(u, v, {chk.pu[0], chk.pu[1]}, {chk.pv[0], chk.pv[1]}, chk.eps,
                                            chk.alpha);
      Json pairs = Json::array();
      for (const auto& p : r.pairs) {
        pairs.push_back(Json{{"v1", p.v1}, {"v2", p.v2}, {"monotone", p.monotone},
                             {"abs_dot", p.abs_dot}, {"violates", p.violates}});
      }
      Json j = versioned();
      j["check"] = "perp";
      j["violations"] = r.violations;
      j["pairs"] = std::move(pairs);
      write(chk.o, out, json_line(j));
      return r.violations == 0 ? 0 : kCheckFailed;
    };
  });

  auto* bip_cmd = check_cmd->add_subcommand("bipartite", "beta_1 of a two-clique graph equals residual components - 1");
  bip_cmd->add_option("--u-size", chk.u_size, "|U|");
  bip_cmd->add_option("--v-size", chk.v_size, "|V|");
  bip_cmd->add_option("--edges", chk.edges, "Cross edges i-j (u_i v_j), comma separated")->delimiter(',');
  bip_cmd->add_option("--graph", chk.graph, "Cross edges as JSON {\"U\", \"V\", \"edges\"}");
  add_field(bip_cmd, chk.field);
  add_output(bip_cmd, chk.o, false);
  bip_cmd->callback([&] {
    action = [&] {
      std::size_t nu = chk.u_size, nv = chk.v_size;
      std::vector<Edge> cross;
      if (!chk.graph.empty()) {
        MatchingFamily f = io::matching_family_from_json(read_file(chk.graph));
        nu = f.u_size;
        nv = f.v_size;
        cross = f.edges;
      }
      for (const auto& e : chk.edges) cross.push_back(parse_edge(e));
      const FieldSpec field = make_field(chk.field);
      TwoCliqueGadget g = two_clique_gadget(nu, nv, cross);
      SimplicialComplex c = flag_skeleton(g.graph, 2, face_budget());
      const std::size_t beta1 = betti_numbers(c, 1, field).betti[1];
      const std::size_t q = g.residual.components;
      const std::size_t expected = q > 0 ? q - 1 : 0;
      std::vector<Cycle> quads;
      for (auto& cyc : bipartite_quadrilaterals(g)) quads.push_back(Cycle{cyc, true, true, false});
      const bool basis_ok = check_h1_basis(c, quads, field).ok();
      Json j = versioned();
      j["check"] = "bipartite";
      j["components"] = q;
      j["beta1"] = beta1;
      j["expected"] = expected;
      j["quadrilateral_basis"] = basis_ok;
      write(chk.o, out, json_line(j));
      return beta1 == expected && basis_ok ? 0 : kCheckFailed;
    };
  });

  // cycle-basis -------------------------------------------------------------
  struct {
    std::string cloud;
    std::optional<double> epsilon;
    std::uint32_t field = 2;
    PolicyFlags pf;
    Output o;
  } cb;
  auto* cb_cmd = app.add_subcommand("cycle-basis", "Simple, chord-free H_1 basis of the Rips complex");
  cb_cmd->add_option("--cloud", cb.cloud, "Point cloud (.csv or .json)")->required();
  cb_cmd->add_option("--epsilon", cb.epsilon, "Cube side for the epsilon-simple refinement");
  add_field(cb_cmd, cb.field);
  cb.pf.add(cb_cmd);
  add_output(cb_cmd, cb.o, false);
  cb_cmd->callback([&] {
    action = [&] {
      const FieldSpec field = make_field(cb.field);
      PointCloud cloud = io::read_point_cloud_file(cb.cloud);
      SimplicialComplex c = build_rips(cloud, cb.pf.policy(), 2, face_budget());
      CycleBasis basis = h1_cycle_basis(c, field);
      Json j = versioned();
      j["field"] = field.p;
      j["beta1"] = basis.cycles.size();
      if (cb.epsilon) {
        RefinedBasis refined = refine_epsilon_simple(basis, c, cloud, *cb.epsilon, field);
        basis = refined.basis;
        j["epsilon"] = *cb.epsilon;
        j["non_epsilon_simple"] = refined.non_epsilon_simple;
        j["rewrites"] = refined.rewrites;
      }
      j["cycles"] = parse(io::cycle_basis_json(basis))["cycles"];
      write(cb.o, out, json_line(j));
      return 0;
    };
  });

  // experiment ---------------------------------------------------------------
  struct {
    std::string family;
    std::vector<std::size_t> sizes;
    int p = 2;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::uint32_t field = 2;
    bool no_timing = false;
    PolicyFlags pf;
    Output o;
  } ex;
  auto* ex_cmd = app.add_subcommand("experiment", "Scaling experiment with a log-log exponent fit");
  ex_cmd->add_option("--family", ex.family, "s2, s2km1, even-p or quasi-rs")
      ->required()
      ->check(CLI::IsMember({"s2", "s2km1", "even-p", "even_p", "quasi-rs", "quasi_rips_rs"}));
  ex_cmd->add_option("--sizes", ex.sizes, "Comma-separated sizes (n, or N for quasi-rs)")->required()->delimiter(',');
  ex_cmd->add_option("--p", ex.p, "Homological degree")->required();
  ex_cmd->add_option("--seed", ex.seed, "Seed recorded with every record")->capture_default_str();
  ex_cmd->add_option("--jobs", ex.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  ex_cmd->add_flag("--no-timing", ex.no_timing, "Omit wall_time so output is byte-reproducible");
  add_field(ex_cmd, ex.field);
  ex.pf.add(ex_cmd, false);
  add_output(ex_cmd, ex.o, true);
  ex_cmd->callback([&] {
    action = [&] {
      ExperimentOptions opt;
      opt.field = make_field(ex.field);
      opt.seed = ex.seed;
      opt.jobs = ex.jobs;
      opt.face_budget = face_budget();
      opt.params.policy = ex.pf.policy();
      ExperimentResult r = scaling_experiment(*parse_family(ex.family), ex.sizes, ex.p, opt);
      const bool timing = !ex.no_timing;
      if (ex.o.format == "csv") {
        std::ostringstream s;
        io::write_records_csv(s, r.records, timing);
        Json summary = versioned();
        summary["exponent"] = r.exponent ? Json(*r.exponent) : Json(nullptr);
        summary["fitted_points"] = r.fitted_points;
        s << "#summary " << summary.dump() << '\n';
        write(ex.o, out, s.str());
        return 0;
      }
      Json j = versioned();
      const Json body = parse(io::experiment_json(r, timing));
      for (auto& [k, v] : body.items()) j[k] = v;
      write(ex.o, out, json_line(j));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_line("UsageError", e.what()) << '\n';
    return kInputError;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << error_line(kind_name(e.kind()), e.what()) << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << error_line("InternalError", e.what()) << '\n';
    return kInputError;
  }
}

}  // namespace rips::cli
