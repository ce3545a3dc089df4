// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "ugd/pointcloud.hpp"

namespace ugd {

enum class CloudFormat { Xyz, PlyAscii };

/// Picks the format from the file extension (.xyz / .ply).
CloudFormat cloud_format_from_path(const std::filesystem::path& path);

/// XYZ: one point per line, 3 (or 6, with normals) whitespace-separated
/// decimal reals. PLY: ascii 1.0, element vertex with x y z and optional
/// nx ny nz. Malformed content raises Error naming the line.
PointCloud load_point_cloud(const std::filesystem::path& path,
                            CloudFormat format);
PointCloud load_point_cloud(const std::filesystem::path& path);

/// Full-precision output ("%.17g"): save-then-load reproduces coordinates
/// bit-exactly.
void save_point_cloud(const PointCloud& cloud,
                      const std::filesystem::path& path, CloudFormat format);
void save_point_cloud(const PointCloud& cloud,
                      const std::filesystem::path& path);

}  // namespace ugd
