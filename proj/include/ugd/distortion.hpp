// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ugd/pointcloud.hpp"
#include "ugd/rng.hpp"

namespace ugd {

/// GN Gaussian, UN uniform, IN impulse (thresholded uniform), EN exponential
/// with random sign, MN a mix of the four basic kinds.
enum class NoiseKind { GN, UN, IN, EN, MN };

std::string kind_name(NoiseKind kind);
NoiseKind kind_from_name(const std::string& name);
constexpr int kNumKinds = 5;

/// One labeled distortion. Level multipliers xi are unitless and applied to
/// the cloud's mean nearest-neighbor edge length. alpha holds the mixing
/// weights over (GN, UN, IN, EN): a one-hot direction for pure kinds, a
/// nonnegative unit-L2 vector for MN (xi is unused for MN; each component
/// runs at its own table value for the same level).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::GN;
  int level_index = 1;  // 1..5
  double xi = 0.0;
  Eigen::Vector4d alpha = Eigen::Vector4d::Zero();

  void validate() const;
};

/// The five level multipliers of a pure kind. MN is rejected: its levels are
/// those of its components.
std::array<double, 5> level_table(NoiseKind kind);

/// Builds a pure-kind spec with xi from the level table and one-hot alpha.
NoiseSpec pure_spec(NoiseKind kind, int level_index);

/// Builds an MN spec; alpha must be nonnegative with unit L2 norm.
NoiseSpec mixed_spec(int level_index, const Eigen::Vector4d& alpha);

/// Four uniform [0,1] draws, L2-normalized (all-zero draws are redrawn).
Eigen::Vector4d sample_mix_weights(RngStream& rng);
Eigen::Vector4d sample_mix_weights(std::uint64_t seed);

/// Adds an i.i.d. per-point, per-axis displacement of the spec's kind and
/// level. Point count and ordering are preserved; normals are dropped.
/// Per-point streams are derived from the seed, so two calls with the same
/// seed but different levels share the same underlying draws.
PointCloud apply_noise(const PointCloud& cloud, const NoiseSpec& spec,
                       double l_r, std::uint64_t seed);

struct DistortedCloud {
  int clean_index = 0;
  NoiseSpec spec;
  std::uint64_t noise_seed = 0;
  PointCloud cloud;
};

/// 5 kinds x 5 levels per clean cloud, deterministic given the seed. MN
/// samples a fresh alpha per (cloud, level).
std::vector<DistortedCloud> build_distortion_set(
    const std::vector<PointCloud>& clean, std::uint64_t seed);

/// Sidecar metadata record (kind, level, xi, alpha, seed) as a JSON string.
std::string noise_spec_to_json(const NoiseSpec& spec, std::uint64_t seed);
NoiseSpec noise_spec_from_json(const std::string& text, std::uint64_t* seed_out);

}  // namespace ugd
