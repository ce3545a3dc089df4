// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ugd/pointcloud.hpp"

namespace ugd {

/// Exact spatial index over a fixed set of points. Median-split build,
/// leaf-based search. Results match a linear scan with (distance, index)
/// ordering exactly, including tie handling.
class KdTree {
 public:
  explicit KdTree(const std::vector<Eigen::Vector3d>& points);

  int size() const { return static_cast<int>(points_.size()); }

  /// k nearest neighbors, ascending by (distance, index). Requires k <= size.
  std::vector<Neighbor> knn(const Eigen::Vector3d& query, int k) const;

  /// Nearest neighbor shortcut.
  Neighbor nearest(const Eigen::Vector3d& query) const;

  /// All indices with distance <= radius, sorted ascending by index.
  std::vector<int> radius_search(const Eigen::Vector3d& query,
                                 double radius) const;

 private:
  struct Node {
    int left = -1, right = -1;   // child node ids; -1 for leaf
    int begin = 0, end = 0;      // index range into order_ (leaves)
    int axis = 0;
    double split = 0.0;
  };

  struct HeapEntry {
    double d2;
    int index;
    // max-heap: farthest first; among equal distances the higher index is
    // "worse" so that ties resolve toward lower indices.
    bool operator<(const HeapEntry& o) const {
      return d2 < o.d2 || (d2 == o.d2 && index < o.index);
    }
  };

  int build(int begin, int end);
  void search_knn(int node, const Eigen::Vector3d& q, int k,
                  std::vector<HeapEntry>& heap) const;
  void search_radius(int node, const Eigen::Vector3d& q, double r2,
                     std::vector<int>& out) const;

  std::vector<Eigen::Vector3d> points_;
  std::vector<int> order_;  // permutation of point indices, grouped by node
  std::vector<Node> nodes_;
  int root_ = -1;
  static constexpr int kLeafSize = 16;
};

}  // namespace ugd
