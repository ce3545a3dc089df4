// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ugd/pointcloud.hpp"

namespace ugd {

/// Aggregated full-reference error report. rmse = sqrt(mse), hausdorff is the
/// worst per-point error, psnr_db = 10*log10(peak^2/mse) with peak the
/// reference bounding-box diagonal (+inf when mse is zero).
struct MetricReport {
  std::vector<double> per_point_errors;
  double mse = 0.0;
  double rmse = 0.0;
  double hausdorff = 0.0;
  double psnr_db = 0.0;
  double peak = 0.0;
};

/// Squared distance to the nearest reference point, per evaluated point.
MetricReport po2po(const PointCloud& eval, const PointCloud& ref);

/// Squared projection of the residual onto the nearest reference point's
/// normal. The reference must carry normals.
MetricReport po2pl(const PointCloud& eval, const PointCloud& ref);

/// Tangent-plane angular similarity in [0, 1] between each evaluated normal
/// and its nearest reference normal; 1 means parallel planes.
struct Pl2PlReport {
  std::vector<double> per_point_similarity;
  double mean = 0.0;
  double min = 0.0;  // worst case
};
Pl2PlReport pl2pl(const PointCloud& eval, const PointCloud& ref);

/// Symmetric sum of mean squared nearest-neighbor distances.
double chamfer(const PointCloud& eval, const PointCloud& ref);

}  // namespace ugd
