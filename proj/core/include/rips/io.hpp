#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "rips/bounds.hpp"
#include "rips/complex.hpp"
#include "rips/constructions.hpp"
#include "rips/geometry.hpp"
#include "rips/homology.hpp"

namespace rips::io {

// All readers throw InvalidInput (or DimensionMismatch for wrong-arity rows)
// with the offending line or key in the message. JSON writers return compact
// text with keys in a fixed order.

/// One point per row; an optional first row whose fields are not all numeric
/// is taken as a header.
PointCloud read_point_cloud_csv(std::istream& in);
/// {"dim": d, "points": [[...], ...], "labels": [...]} (labels optional).
PointCloud read_point_cloud_json(std::string_view text);
/// Dispatches on the ".json" extension; everything else is CSV.
PointCloud read_point_cloud_file(const std::string& path);

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud);
std::string point_cloud_json(const PointCloud& cloud);

/// {"n_vertices": n, "dim_cap": c, "flag": b, "faces": [maximal faces]}.
std::string complex_json(const SimplicialComplex& complex);
/// Downward closure of the listed faces; when "flag" is true the result must
/// equal the clique complex of its 1-skeleton.
SimplicialComplex complex_from_json(std::string_view text);

std::string betti_json(const BettiVector& betti);
std::string cycle_basis_json(const CycleBasis& basis);

/// {"U": n, "V": m, "edges": [[u, v], ...], "matchings": [[[u, v], ...], ...]}.
std::string matching_family_json(const MatchingFamily& family);
/// "matchings" may be omitted, giving a plain bipartite graph.
MatchingFamily matching_family_from_json(std::string_view text);

/// Header family,n,p,betti,f0,f1,f2,f3,wall_time,seed. Missing face counts
/// are left empty; wall_time is empty when `timing` is false.
void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records,
                       bool timing = true);
/// {"records": [...], "summary": {"exponent": x|null, "fitted_points": k}}.
std::string experiment_json(const ExperimentResult& result, bool timing = true);

}  // namespace rips::io
