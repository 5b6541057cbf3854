#include "rips/geometry.hpp"

#include <cmath>
#include <sstream>

#include "rips/error.hpp"

namespace rips {

PointCloud::PointCloud(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorKind::kInvalidInput, "point cloud dimension must be positive");
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coordinates,
                       std::vector<std::string> labels)
    : dim_(dim), coords_(std::move(coordinates)), labels_(std::move(labels)) {
  if (dim == 0) throw Error(ErrorKind::kInvalidInput, "point cloud dimension must be positive");
  if (coords_.size() % dim_ != 0) {
    throw Error(ErrorKind::kDimensionMismatch,
                "coordinate count is not a multiple of dim " + std::to_string(dim_));
  }
  for (double x : coords_) {
    if (!std::isfinite(x)) throw Error(ErrorKind::kInvalidInput, "non-finite coordinate");
  }
  if (!labels_.empty() && labels_.size() != size()) {
    throw Error(ErrorKind::kInvalidInput, "label count does not match point count");
  }
}

PointCloud PointCloud::from_rows(std::size_t dim,
                                 const std::vector<std::vector<double>>& rows) {
  PointCloud cloud(dim);
  for (const auto& row : rows) cloud.add_point(row);
  return cloud;
}

void PointCloud::add_point(std::span<const double> p, std::string label) {
  if (p.size() != dim_) {
    throw Error(ErrorKind::kDimensionMismatch,
                "point has " + std::to_string(p.size()) + " coordinates, expected " +
                    std::to_string(dim_));
  }
  for (double x : p) {
    if (!std::isfinite(x)) throw Error(ErrorKind::kInvalidInput, "non-finite coordinate");
  }
  // Labels are all-or-nothing.
  if (!label.empty() && labels_.empty() && !coords_.empty()) labels_.resize(size());
  coords_.insert(coords_.end(), p.begin(), p.end());
  if (!label.empty() || !labels_.empty()) labels_.push_back(std::move(label));
}

PointCloud PointCloud::subset(std::span<const Vertex> indices) const {
  PointCloud out(dim_);
  out.coords_.reserve(indices.size() * dim_);
  for (Vertex i : indices) {
    if (i >= size()) throw Error(ErrorKind::kUnknownVertex, "point index out of range");
    auto p = point(i);
    out.coords_.insert(out.coords_.end(), p.begin(), p.end());
    if (has_labels()) out.labels_.push_back(labels_[i]);
  }
  return out;
}

PointCloud PointCloud::concat(const PointCloud& other) const {
  if (other.dim_ != dim_) {
    throw Error(ErrorKind::kDimensionMismatch, "cannot concatenate clouds of different dimension");
  }
  PointCloud out = *this;
  out.coords_.insert(out.coords_.end(), other.coords_.begin(), other.coords_.end());
  if (has_labels() && other.has_labels()) {
    out.labels_.insert(out.labels_.end(), other.labels_.begin(), other.labels_.end());
  } else {
    out.labels_.clear();
  }
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void ThresholdPolicy::validate() const {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(ErrorKind::kInvalidInput, "threshold must be positive");
  }
  if (!(relative_tolerance >= 0.0) || !(relative_tolerance < ambiguity_band)) {
    throw Error(ErrorKind::kInvalidInput,
                "need 0 <= relative_tolerance < ambiguity_band");
  }
}

Proximity classify_squared_distance(double d2, const ThresholdPolicy& policy) {
  const double t2 = policy.threshold * policy.threshold;
  if (std::abs(d2 - t2) <= t2 * policy.relative_tolerance) return Proximity::kEdge;
  if (d2 > t2 * (1.0 - policy.ambiguity_band) && d2 < t2 * (1.0 + policy.ambiguity_band)) {
    return Proximity::kAmbiguous;
  }
  return d2 <= t2 ? Proximity::kEdge : Proximity::kNonEdge;
}

Graph proximity_graph(const PointCloud& cloud, const ThresholdPolicy& policy) {
  policy.validate();
  if (cloud.empty()) throw Error(ErrorKind::kInvalidInput, "point cloud is empty");
  const std::size_t n = cloud.size();
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double d2 = squared_distance(cloud.point(u), cloud.point(v));
      switch (classify_squared_distance(d2, policy)) {
        case Proximity::kEdge:
          g.add_edge(u, v);
          break;
        case Proximity::kNonEdge:
          break;
        case Proximity::kAmbiguous: {
          std::ostringstream msg;
          msg.precision(17);
          msg << "pair (" << u << "," << v << ") has distance " << std::sqrt(d2)
              << " inside the ambiguity band around " << policy.threshold;
          throw Error(ErrorKind::kAmbiguousDistance, msg.str());
        }
      }
    }
  }
  return g;
}

std::vector<CubeIndex> cube_index(const PointCloud& cloud, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::kInvalidInput, "epsilon must be positive");
  std::vector<CubeIndex> out;
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    CubeIndex c;
    c.epsilon = epsilon;
    for (double x : cloud.point(i)) {
      c.coords.push_back(static_cast<std::int64_t>(std::floor(x / epsilon)));
    }
    out.push_back(std::move(c));
  }
  return out;
}

PointCloud apply_plane_rotation(const PointCloud& cloud, double angle) {
  if (cloud.dim() != 2) {
    throw Error(ErrorKind::kDimensionMismatch, "plane rotation needs a 2-dimensional cloud");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<double> coords;
  coords.reserve(cloud.coordinates().size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    coords.push_back(c * p[0] - s * p[1]);
    coords.push_back(s * p[0] + c * p[1]);
  }
  return PointCloud(2, std::move(coords), cloud.labels());
}

PointCloud embed_plane_in_r5(const PointCloud& cloud) {
  if (cloud.dim() != 2) {
    throw Error(ErrorKind::kDimensionMismatch, "R^5 embedding needs a 2-dimensional cloud");
  }
  const double a = std::sqrt(2.0) / 4.0;
  const double h = std::sqrt(3.0) / 6.0;
  std::vector<double> coords;
  coords.reserve(cloud.size() * 5);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    coords.insert(coords.end(), {a, p[0], a, p[1], h});
  }
  return PointCloud(5, std::move(coords), cloud.labels());
}

}  // namespace rips
