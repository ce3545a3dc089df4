// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "ugd/pointcloud.hpp"

namespace ugd {

struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Eigen::Vector3i> triangles;

  void validate() const;  // indices in range, positive total area
  double total_area() const;
};

/// Uniform surface sampling: triangles chosen with probability proportional
/// to area (zero-area triangles skipped), points uniform via barycentric
/// coordinates. Requires n >= 1 and positive total area.
PointCloud sample_mesh(const TriangleMesh& mesh, int n, std::uint64_t seed);

/// ascii PLY with an element face; polygons are fan-triangulated.
TriangleMesh load_mesh_ply(const std::filesystem::path& path);

}  // namespace ugd
