#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rips/graph.hpp"

namespace rips {

/// Finite ordered set of points in R^dim. Point indices are the vertex ids of
/// every complex built from the cloud.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t dim);
  /// `coordinates` is row-major, size() * dim values. Labels are either empty
  /// or one per point.
  PointCloud(std::size_t dim, std::vector<double> coordinates,
             std::vector<std::string> labels = {});

  static PointCloud from_rows(std::size_t dim,
                              const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coordinates() const { return coords_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

  /// Appends a point; throws DimensionMismatch on wrong arity and
  /// InvalidInput on non-finite coordinates.
  void add_point(std::span<const double> p, std::string label = {});

  /// Points at the given indices, in the given order.
  PointCloud subset(std::span<const Vertex> indices) const;

  /// This cloud followed by `other`; labels are kept only if both carry them.
  PointCloud concat(const PointCloud& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<std::string> labels_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

/// Numerical realization of "distance at most threshold".
struct ThresholdPolicy {
  double threshold = 1.0;
  double relative_tolerance = 1e-9;
  double ambiguity_band = 1e-6;

  /// Throws InvalidInput unless threshold > 0 and
  /// 0 <= relative_tolerance < ambiguity_band.
  void validate() const;
};

enum class Proximity { kEdge, kNonEdge, kAmbiguous };

/// Edge iff d2 <= t^2 (1 + rel). A pair whose d2 lies strictly inside
/// t^2 (1 -+ band) but not within t^2 (1 -+ rel) is ambiguous.
Proximity classify_squared_distance(double d2, const ThresholdPolicy& policy);

/// Edge relation of the Rips complex. Throws AmbiguousDistance naming the
/// first offending pair in index order.
Graph proximity_graph(const PointCloud& cloud, const ThresholdPolicy& policy = {});

/// Half-open epsilon-cube containing a point, anchored at the origin.
struct CubeIndex {
  std::vector<std::int64_t> coords;
  double epsilon = 0.0;

  friend bool operator==(const CubeIndex& a, const CubeIndex& b) {
    return a.coords == b.coords;
  }
  friend auto operator<=>(const CubeIndex& a, const CubeIndex& b) {
    return a.coords <=> b.coords;
  }
};

std::vector<CubeIndex> cube_index(const PointCloud& cloud, double epsilon);

/// Counterclockwise rotation about the origin; requires dim == 2.
PointCloud apply_plane_rotation(const PointCloud& cloud, double angle);

/// Isometry (x, y) -> (sqrt2/4, x, sqrt2/4, y, sqrt3/6); requires dim == 2.
PointCloud embed_plane_in_r5(const PointCloud& cloud);

}  // namespace rips
