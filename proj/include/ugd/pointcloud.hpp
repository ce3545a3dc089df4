// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ugd {

/// Single exception type used across the library; messages are one-liners
/// suitable for the CLI's machine-parsable error channel.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ordered list of 3D points, optionally with unit normals.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector3d> normals;  // empty, or one unit vector per point

  int size() const { return static_cast<int>(points.size()); }
  bool has_normals() const { return !normals.empty(); }

  /// Throws Error if any invariant is violated: at least one point, finite
  /// coordinates, and (when present) one unit normal per point.
  void validate() const;
};

/// Axis-aligned bounding-box diagonal length.
double bbox_diagonal(const PointCloud& cloud);

/// Mean over all points of the distance to the nearest distinct point.
/// Requires at least two points.
double avg_nn_edge_length(const PointCloud& cloud);

struct Neighbor {
  int index;
  double distance;
};

/// Exact k nearest neighbors by Euclidean distance, ascending, ties broken
/// by lower index. Requires k <= point count. Convenience wrapper that
/// builds a spatial index per call; use KdTree directly for bulk queries.
std::vector<Neighbor> knn(const PointCloud& cloud, const Eigen::Vector3d& query,
                          int k);

/// PCA plane-fit normals from each point's k_nn neighborhood (the point
/// itself included). Normal sign is unconstrained; degenerate neighborhoods
/// yield +z. Requires point count >= k_nn >= 3.
PointCloud estimate_normals(const PointCloud& cloud, int k_nn);

/// Greedy farthest point sampling. The first anchor is drawn from the seeded
/// stream; each following anchor maximizes the minimum distance to the
/// already selected set, ties broken by lower index.
std::vector<int> farthest_point_sampling(const PointCloud& cloud, int m,
                                         std::uint64_t seed);

/// s local points around an FPS anchor, centered at the anchor and scaled by
/// the patch radius so every local coordinate has norm <= 1.
struct Patch {
  Eigen::Vector3d anchor;
  std::vector<Eigen::Vector3d> points;  // exactly s entries
  std::vector<int> source_indices;      // parallel to points; may repeat
};

enum class RadiusMode { Absolute, BBoxFraction };

struct PipelineConfig {
  int m = 64;    // anchor count
  int s = 256;   // points per patch
  RadiusMode radius_mode = RadiusMode::BBoxFraction;
  double radius = 0.1;  // length, or fraction of the bounding-box diagonal
  int k_nn = 16;        // neighborhood size for normal estimation
  int d = 64;           // feature dimension
  std::uint64_t seed = 0;

  void validate() const;
};

double resolve_radius(const PointCloud& cloud, const PipelineConfig& cfg);

/// m patches at FPS anchors. In-sphere points are sampled uniformly without
/// replacement; spheres with fewer than s points keep every member once and
/// pad by resampling with replacement. Deterministic given (cloud, cfg).
std::vector<Patch> extract_patches(const PointCloud& cloud,
                                   const PipelineConfig& cfg);

}  // namespace ugd
