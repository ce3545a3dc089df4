// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#include "ugd/distortion.hpp"

#include <cmath>

#include <json.hpp>

#include "ugd/parallel.hpp"

namespace ugd {

namespace {
constexpr std::uint64_t kPointStream = 0x3001;
constexpr std::uint64_t kMixStream = 0x3002;
constexpr std::uint64_t kSetStream = 0x3003;
constexpr double kImpulseThreshold = 0.2;  // in units of l_r

// Basic displacement draws. Each consumes a fixed number of values from the
// stream so that mixes and level sweeps stay aligned draw-for-draw.
Eigen::Vector3d draw_gn(RngStream& rng, double sigma) {
  return {sigma * rng.normal(), sigma * rng.normal(), sigma * rng.normal()};
}

Eigen::Vector3d draw_un(RngStream& rng, double half_width) {
  Eigen::Vector3d e;
  for (int a = 0; a < 3; ++a) {
    e[a] = half_width * (2.0 * rng.next_double() - 1.0);
  }
  return e;
}

Eigen::Vector3d draw_in(RngStream& rng, double half_width, double l_r) {
  Eigen::Vector3d e = draw_un(rng, half_width);
  for (int a = 0; a < 3; ++a) {
    if (std::abs(e[a]) <= kImpulseThreshold * l_r) e[a] = 0.0;
  }
  return e;
}

Eigen::Vector3d draw_en(RngStream& rng, double mean) {
  Eigen::Vector3d e;
  for (int a = 0; a < 3; ++a) {
    const double mag = rng.exponential(mean);
    e[a] = rng.sign() * mag;
  }
  return e;
}

Eigen::Vector3d draw_displacement(RngStream& rng, const NoiseSpec& spec,
                                  double l_r) {
  switch (spec.kind) {
    case NoiseKind::GN:
      return draw_gn(rng, spec.xi * l_r);
    case NoiseKind::UN:
      return draw_un(rng, spec.xi * l_r);
    case NoiseKind::IN:
      return draw_in(rng, spec.xi * l_r, l_r);
    case NoiseKind::EN:
      return draw_en(rng, spec.xi * l_r);
    case NoiseKind::MN: {
      const int lvl = spec.level_index - 1;
      const Eigen::Vector3d e_gn = draw_gn(rng, level_table(NoiseKind::GN)[lvl] * l_r);
      const Eigen::Vector3d e_un = draw_un(rng, level_table(NoiseKind::UN)[lvl] * l_r);
      const Eigen::Vector3d e_in = draw_in(rng, level_table(NoiseKind::IN)[lvl] * l_r, l_r);
      const Eigen::Vector3d e_en = draw_en(rng, level_table(NoiseKind::EN)[lvl] * l_r);
      return spec.alpha[0] * e_gn + spec.alpha[1] * e_un + spec.alpha[2] * e_in +
             spec.alpha[3] * e_en;
    }
  }
  throw Error("apply_noise: unknown kind");
}
}  // namespace

std::string kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::GN: return "GN";
    case NoiseKind::UN: return "UN";
    case NoiseKind::IN: return "IN";
    case NoiseKind::EN: return "EN";
    case NoiseKind::MN: return "MN";
  }
  throw Error("unknown noise kind");
}

NoiseKind kind_from_name(const std::string& name) {
  if (name == "GN") return NoiseKind::GN;
  if (name == "UN") return NoiseKind::UN;
  if (name == "IN") return NoiseKind::IN;
  if (name == "EN") return NoiseKind::EN;
  if (name == "MN") return NoiseKind::MN;
  throw Error("unknown noise kind '" + name + "'");
}

void NoiseSpec::validate() const {
  if (level_index < 1 || level_index > 5) {
    throw Error("noise spec: level_index must be in 1..5");
  }
  if ((alpha.array() < 0.0).any()) {
    throw Error("noise spec: alpha components must be nonnegative");
  }
  if (std::abs(alpha.norm() - 1.0) > 1e-9) {
    throw Error("noise spec: alpha must have unit L2 norm");
  }
  if (kind != NoiseKind::MN) {
    const int hot = static_cast<int>(kind);
    for (int i = 0; i < 4; ++i) {
      const double want = i == hot ? 1.0 : 0.0;
      if (std::abs(alpha[i] - want) > 1e-9) {
        throw Error("noise spec: pure kinds require a one-hot alpha");
      }
    }
  }
}

std::array<double, 5> level_table(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::GN:
    case NoiseKind::EN:
      return {0.2, 0.4, 0.7, 1.0, 1.4};
    case NoiseKind::UN:
    case NoiseKind::IN:
      return {0.6, 1.2, 2.1, 3.0, 4.2};
    case NoiseKind::MN:
      throw Error("level_table: MN levels come from its component kinds");
  }
  throw Error("level_table: unknown kind");
}

NoiseSpec pure_spec(NoiseKind kind, int level_index) {
  if (kind == NoiseKind::MN) throw Error("pure_spec: MN is not a pure kind");
  if (level_index < 1 || level_index > 5) {
    throw Error("pure_spec: level_index must be in 1..5");
  }
  NoiseSpec spec;
  spec.kind = kind;
  spec.level_index = level_index;
  spec.xi = level_table(kind)[level_index - 1];
  spec.alpha = Eigen::Vector4d::Zero();
  spec.alpha[static_cast<int>(kind)] = 1.0;
  return spec;
}

NoiseSpec mixed_spec(int level_index, const Eigen::Vector4d& alpha) {
  NoiseSpec spec;
  spec.kind = NoiseKind::MN;
  spec.level_index = level_index;
  spec.xi = 0.0;  // components run at their own table values
  spec.alpha = alpha;
  spec.validate();
  return spec;
}

Eigen::Vector4d sample_mix_weights(RngStream& rng) {
  for (;;) {
    Eigen::Vector4d a;
    for (int i = 0; i < 4; ++i) a[i] = rng.next_double();
    const double norm = a.norm();
    if (norm > 0.0) return a / norm;
  }
}

Eigen::Vector4d sample_mix_weights(std::uint64_t seed) {
  RngStream rng = RngStream::derive(seed, kMixStream);
  return sample_mix_weights(rng);
}

PointCloud apply_noise(const PointCloud& cloud, const NoiseSpec& spec,
                       double l_r, std::uint64_t seed) {
  if (!(l_r > 0.0)) throw Error("apply_noise: l_r must be positive");
  spec.validate();
  cloud.validate();
  PointCloud out;
  out.points.resize(cloud.points.size());
  parallel_for(cloud.points.size(), [&](std::size_t i) {
    RngStream rng = RngStream::derive(seed, kPointStream, i);
    out.points[i] = cloud.points[i] + draw_displacement(rng, spec, l_r);
  });
  return out;
}

std::vector<DistortedCloud> build_distortion_set(
    const std::vector<PointCloud>& clean, std::uint64_t seed) {
  std::vector<DistortedCloud> out;
  out.reserve(clean.size() * 25);
  for (std::size_t c = 0; c < clean.size(); ++c) {
    const double l_r = avg_nn_edge_length(clean[c]);
    for (int k = 0; k < kNumKinds; ++k) {
      const NoiseKind kind = static_cast<NoiseKind>(k);
      for (int level = 1; level <= 5; ++level) {
        NoiseSpec spec;
        if (kind == NoiseKind::MN) {
          RngStream mix = RngStream::derive(seed, kMixStream, c, level);
          spec = mixed_spec(level, sample_mix_weights(mix));
        } else {
          spec = pure_spec(kind, level);
        }
        const std::uint64_t noise_seed =
            RngStream::derive(seed, kSetStream, c, static_cast<std::uint64_t>(k) * 8 + level)
                .next_u64();
        DistortedCloud item;
        item.clean_index = static_cast<int>(c);
        item.spec = spec;
        item.noise_seed = noise_seed;
        item.cloud = apply_noise(clean[c], spec, l_r, noise_seed);
        out.push_back(std::move(item));
      }
    }
  }
  return out;
}

std::string noise_spec_to_json(const NoiseSpec& spec, std::uint64_t seed) {
  nlohmann::json j;
  j["kind"] = kind_name(spec.kind);
  j["level_index"] = spec.level_index;
  j["xi"] = spec.xi;
  j["alpha"] = {spec.alpha[0], spec.alpha[1], spec.alpha[2], spec.alpha[3]};
  j["seed"] = seed;
  return j.dump();
}

NoiseSpec noise_spec_from_json(const std::string& text,
                               std::uint64_t* seed_out) {
  const auto j = nlohmann::json::parse(text);
  NoiseSpec spec;
  spec.kind = kind_from_name(j.at("kind").get<std::string>());
  spec.level_index = j.at("level_index").get<int>();
  spec.xi = j.at("xi").get<double>();
  const auto a = j.at("alpha");
  for (int i = 0; i < 4; ++i) spec.alpha[i] = a.at(i).get<double>();
  if (seed_out) *seed_out = j.at("seed").get<std::uint64_t>();
  spec.validate();
  return spec;
}

}  // namespace ugd
