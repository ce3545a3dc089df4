// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#include "ugd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ugd/kdtree.hpp"
#include "ugd/numeric.hpp"
#include "ugd/parallel.hpp"

namespace ugd {

namespace {
constexpr double kPi = 3.14159265358979323846;

MetricReport aggregate(std::vector<double> errors, double peak) {
  MetricReport report;
  report.peak = peak;
  report.mse = pairwise_sum(errors) / static_cast<double>(errors.size());
  report.rmse = std::sqrt(report.mse);
  report.hausdorff = *std::max_element(errors.begin(), errors.end());
  report.psnr_db = report.mse == 0.0
                       ? std::numeric_limits<double>::infinity()
                       : 10.0 * std::log10(peak * peak / report.mse);
  report.per_point_errors = std::move(errors);
  return report;
}

std::vector<double> nn_squared_errors(const PointCloud& eval,
                                      const PointCloud& ref) {
  KdTree tree(ref.points);
  std::vector<double> errors(eval.points.size());
  parallel_for(eval.points.size(), [&](std::size_t i) {
    const Neighbor nn = tree.nearest(eval.points[i]);
    errors[i] = (eval.points[i] - ref.points[nn.index]).squaredNorm();
  });
  return errors;
}
}  // namespace

MetricReport po2po(const PointCloud& eval, const PointCloud& ref) {
  if (eval.points.empty() || ref.points.empty()) {
    throw Error("po2po: clouds must be nonempty");
  }
  return aggregate(nn_squared_errors(eval, ref), bbox_diagonal(ref));
}

MetricReport po2pl(const PointCloud& eval, const PointCloud& ref) {
  if (eval.points.empty() || ref.points.empty()) {
    throw Error("po2pl: clouds must be nonempty");
  }
  if (!ref.has_normals()) throw Error("po2pl: reference has no normals");
  KdTree tree(ref.points);
  std::vector<double> errors(eval.points.size());
  parallel_for(eval.points.size(), [&](std::size_t i) {
    const Neighbor nn = tree.nearest(eval.points[i]);
    const double proj =
        (eval.points[i] - ref.points[nn.index]).dot(ref.normals[nn.index]);
    errors[i] = proj * proj;
  });
  return aggregate(std::move(errors), bbox_diagonal(ref));
}

Pl2PlReport pl2pl(const PointCloud& eval, const PointCloud& ref) {
  if (eval.points.empty() || ref.points.empty()) {
    throw Error("pl2pl: clouds must be nonempty");
  }
  if (!eval.has_normals() || !ref.has_normals()) {
    throw Error("pl2pl: both clouds need normals");
  }
  KdTree tree(ref.points);
  Pl2PlReport report;
  report.per_point_similarity.resize(eval.points.size());
  parallel_for(eval.points.size(), [&](std::size_t i) {
    const Neighbor nn = tree.nearest(eval.points[i]);
    const double dot =
        std::min(1.0, std::abs(eval.normals[i].dot(ref.normals[nn.index])));
    report.per_point_similarity[i] = 1.0 - 2.0 * std::acos(dot) / kPi;
  });
  report.mean = pairwise_sum(report.per_point_similarity) /
                static_cast<double>(report.per_point_similarity.size());
  report.min = *std::min_element(report.per_point_similarity.begin(),
                                 report.per_point_similarity.end());
  return report;
}

double chamfer(const PointCloud& eval, const PointCloud& ref) {
  if (eval.points.empty() || ref.points.empty()) {
    throw Error("chamfer: clouds must be nonempty");
  }
  const auto fwd = nn_squared_errors(eval, ref);
  const auto bwd = nn_squared_errors(ref, eval);
  return pairwise_sum(fwd) / static_cast<double>(fwd.size()) +
         pairwise_sum(bwd) / static_cast<double>(bwd.size());
}

}  // namespace ugd
