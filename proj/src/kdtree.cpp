// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#include "ugd/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace ugd {

KdTree::KdTree(const std::vector<Eigen::Vector3d>& points) : points_(points) {
  if (points_.empty()) throw Error("kdtree: empty point set");
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * points_.size() / kLeafSize + 2);
  root_ = build(0, static_cast<int>(points_.size()));
}

int KdTree::build(int begin, int end) {
  Node node;
  node.begin = begin;
  node.end = end;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return id;

  Eigen::Vector3d lo = points_[order_[begin]];
  Eigen::Vector3d hi = lo;
  for (int i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);

  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](int a, int b) {
                     return points_[a][axis] < points_[b][axis];
                   });
  const double split = points_[order_[mid]][axis];

  nodes_[id].axis = axis;
  nodes_[id].split = split;
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::search_knn(int node_id, const Eigen::Vector3d& q, int k,
                        std::vector<HeapEntry>& heap) const {
  const Node& node = nodes_[node_id];
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int idx = order_[i];
      const double d2 = (points_[idx] - q).squaredNorm();
      const HeapEntry cand{d2, idx};
      if (static_cast<int>(heap.size()) < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end());
      } else if (cand.d2 < heap.front().d2 ||
                 (cand.d2 == heap.front().d2 && cand.index < heap.front().index)) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  const double diff = q[node.axis] - node.split;
  const int near = diff <= 0.0 ? node.left : node.right;
  const int far = diff <= 0.0 ? node.right : node.left;
  search_knn(near, q, k, heap);
  // Visit the far side unless it provably cannot improve the result; ties
  // must be visited because a tied point with a lower index wins.
  if (static_cast<int>(heap.size()) < k || diff * diff <= heap.front().d2) {
    search_knn(far, q, k, heap);
  }
}

std::vector<Neighbor> KdTree::knn(const Eigen::Vector3d& query, int k) const {
  if (k < 1) throw Error("knn: k must be >= 1");
  if (k > size()) throw Error("knn: k exceeds point count");
  std::vector<HeapEntry> heap;
  heap.reserve(k);
  search_knn(root_, query, k, heap);
  std::sort(heap.begin(), heap.end(), [](const HeapEntry& a, const HeapEntry& b) {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
  });
  std::vector<Neighbor> out(heap.size());
  for (std::size_t i = 0; i < heap.size(); ++i) {
    out[i] = Neighbor{heap[i].index, std::sqrt(heap[i].d2)};
  }
  return out;
}

Neighbor KdTree::nearest(const Eigen::Vector3d& query) const {
  return knn(query, 1)[0];
}

void KdTree::search_radius(int node_id, const Eigen::Vector3d& q, double r2,
                           std::vector<int>& out) const {
  const Node& node = nodes_[node_id];
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int idx = order_[i];
      if ((points_[idx] - q).squaredNorm() <= r2) out.push_back(idx);
    }
    return;
  }
  const double diff = q[node.axis] - node.split;
  if (diff <= 0.0) {
    search_radius(node.left, q, r2, out);
    if (diff * diff <= r2) search_radius(node.right, q, r2, out);
  } else {
    search_radius(node.right, q, r2, out);
    if (diff * diff <= r2) search_radius(node.left, q, r2, out);
  }
}

std::vector<int> KdTree::radius_search(const Eigen::Vector3d& query,
                                       double radius) const {
  std::vector<int> out;
  search_radius(root_, query, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ugd
