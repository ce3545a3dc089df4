// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#include "ugd/pointcloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ugd/kdtree.hpp"
#include "ugd/numeric.hpp"
#include "ugd/rng.hpp"

namespace ugd {

namespace {
// Stream ids for seed derivation within this module.
constexpr std::uint64_t kFpsStream = 0x1001;
constexpr std::uint64_t kPatchStream = 0x1002;
}  // namespace

void PointCloud::validate() const {
  if (points.empty()) throw Error("point cloud: must contain at least one point");
  for (const auto& p : points) {
    if (!p.allFinite()) throw Error("point cloud: non-finite coordinate");
  }
  if (!normals.empty()) {
    if (normals.size() != points.size()) {
      throw Error("point cloud: normal count does not match point count");
    }
    for (const auto& n : normals) {
      if (!n.allFinite() || std::abs(n.norm() - 1.0) > 1e-6) {
        throw Error("point cloud: normals must be unit length");
      }
    }
  }
}

double bbox_diagonal(const PointCloud& cloud) {
  if (cloud.points.empty()) throw Error("bbox_diagonal: empty cloud");
  Eigen::Vector3d lo = cloud.points[0], hi = cloud.points[0];
  for (const auto& p : cloud.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

double avg_nn_edge_length(const PointCloud& cloud) {
  const int n = cloud.size();
  if (n < 2) throw Error("avg_nn_edge_length: need at least two points");
  KdTree tree(cloud.points);
  std::vector<double> dists(n);
  for (int i = 0; i < n; ++i) {
    const auto nn = tree.knn(cloud.points[i], 2);
    // At most one of the two hits is the query point itself.
    dists[i] = nn[0].index != i ? nn[0].distance : nn[1].distance;
  }
  return pairwise_sum(dists) / static_cast<double>(n);
}

std::vector<Neighbor> knn(const PointCloud& cloud, const Eigen::Vector3d& query,
                          int k) {
  if (k > cloud.size()) throw Error("knn: k exceeds point count");
  return KdTree(cloud.points).knn(query, k);
}

PointCloud estimate_normals(const PointCloud& cloud, int k_nn) {
  if (k_nn < 3) throw Error("estimate_normals: k_nn must be >= 3");
  if (cloud.size() < k_nn) throw Error("estimate_normals: k_nn exceeds point count");
  KdTree tree(cloud.points);
  PointCloud out;
  out.points = cloud.points;
  out.normals.resize(cloud.points.size());
  for (int i = 0; i < cloud.size(); ++i) {
    const auto nbrs = tree.knn(cloud.points[i], k_nn);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& nb : nbrs) mean += cloud.points[nb.index];
    mean /= static_cast<double>(nbrs.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& nb : nbrs) {
      const Eigen::Vector3d c = cloud.points[nb.index] - mean;
      cov += c * c.transpose();
    }
    if (cov.norm() < 1e-300) {
      out.normals[i] = Eigen::Vector3d::UnitZ();  // degenerate neighborhood
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Eigen::Vector3d normal = eig.eigenvectors().col(0);  // smallest eigenvalue
    const double norm = normal.norm();
    out.normals[i] = norm > 0 ? Eigen::Vector3d(normal / norm)
                              : Eigen::Vector3d::UnitZ();
  }
  return out;
}

std::vector<int> farthest_point_sampling(const PointCloud& cloud, int m,
                                         std::uint64_t seed) {
  const int n = cloud.size();
  if (m < 1) throw Error("farthest_point_sampling: m must be >= 1");
  if (m > n) throw Error("farthest_point_sampling: m exceeds point count");
  RngStream rng = RngStream::derive(seed, kFpsStream);
  std::vector<int> selected;
  selected.reserve(m);
  const int first = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
  selected.push_back(first);

  std::vector<double> min_d2(n);
  std::vector<char> taken(n, 0);
  taken[first] = 1;
  for (int i = 0; i < n; ++i) {
    min_d2[i] = (cloud.points[i] - cloud.points[first]).squaredNorm();
  }
  while (static_cast<int>(selected.size()) < m) {
    int best = -1;
    double best_d2 = -1.0;
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (min_d2[i] > best_d2) {
        best_d2 = min_d2[i];
        best = i;
      }
    }
    selected.push_back(best);
    taken[best] = 1;
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double d2 = (cloud.points[i] - cloud.points[best]).squaredNorm();
      if (d2 < min_d2[i]) min_d2[i] = d2;
    }
  }
  return selected;
}

void PipelineConfig::validate() const {
  if (m < 1) throw Error("pipeline config: m must be >= 1");
  if (s < 1) throw Error("pipeline config: s must be >= 1");
  if (k_nn < 3) throw Error("pipeline config: k_nn must be >= 3");
  if (d < 2) throw Error("pipeline config: d must be >= 2");
  if (!(radius > 0.0)) throw Error("pipeline config: radius must be positive");
}

double resolve_radius(const PointCloud& cloud, const PipelineConfig& cfg) {
  cfg.validate();
  if (cfg.radius_mode == RadiusMode::Absolute) return cfg.radius;
  const double diag = bbox_diagonal(cloud);
  const double r = cfg.radius * diag;
  if (!(r > 0.0)) throw Error("resolve_radius: degenerate bounding box");
  return r;
}

std::vector<Patch> extract_patches(const PointCloud& cloud,
                                   const PipelineConfig& cfg) {
  cfg.validate();
  if (cloud.points.empty()) throw Error("extract_patches: empty cloud");
  const double r = resolve_radius(cloud, cfg);
  const auto anchors = farthest_point_sampling(cloud, cfg.m, cfg.seed);
  KdTree tree(cloud.points);

  std::vector<Patch> patches(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Eigen::Vector3d anchor = cloud.points[anchors[i]];
    std::vector<int> in_sphere = tree.radius_search(anchor, r);
    // The anchor itself is at distance zero, so in_sphere is never empty.
    RngStream rng = RngStream::derive(cfg.seed, kPatchStream, i);
    std::vector<int> chosen;
    chosen.reserve(cfg.s);
    const int avail = static_cast<int>(in_sphere.size());
    if (avail >= cfg.s) {
      // Partial Fisher-Yates: uniform without replacement.
      for (int j = 0; j < cfg.s; ++j) {
        const int pick = j + static_cast<int>(rng.uniform_int(
                                 static_cast<std::uint64_t>(avail - j)));
        std::swap(in_sphere[j], in_sphere[pick]);
        chosen.push_back(in_sphere[j]);
      }
    } else {
      chosen = in_sphere;
      while (static_cast<int>(chosen.size()) < cfg.s) {
        chosen.push_back(in_sphere[static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::uint64_t>(avail)))]);
      }
    }
    Patch& patch = patches[i];
    patch.anchor = anchor;
    patch.source_indices = std::move(chosen);
    patch.points.reserve(cfg.s);
    for (int idx : patch.source_indices) {
      patch.points.push_back((cloud.points[idx] - anchor) / r);
    }
  }
  return patches;
}

}  // namespace ugd
