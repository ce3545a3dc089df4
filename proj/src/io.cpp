// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#include "ugd/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace ugd {

namespace {

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Parses all whitespace-separated reals on a line. Throws on garbage or
/// non-finite values.
std::vector<double> parse_reals(const std::string& line,
                                const std::string& file, int line_no) {
  std::vector<double> out;
  const char* p = line.c_str();
  for (;;) {
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (*p == '\0') break;
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p) {
      throw Error(file + ":" + std::to_string(line_no) + ": expected a number");
    }
    if (!std::isfinite(v)) {
      throw Error(file + ":" + std::to_string(line_no) + ": non-finite value");
    }
    out.push_back(v);
    p = end;
  }
  return out;
}

void check_normal(const Eigen::Vector3d& n, const std::string& file,
                  int line_no) {
  if (std::abs(n.norm() - 1.0) > 1e-6) {
    throw Error(file + ":" + std::to_string(line_no) +
                ": normal is not unit length");
  }
}

PointCloud load_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  const std::string file = path.filename().string();
  PointCloud cloud;
  std::string line;
  int line_no = 0;
  int columns = 0;  // 3 or 6, fixed by the first data line
  while (std::getline(in, line)) {
    ++line_no;
    const auto vals = parse_reals(line, file, line_no);
    if (vals.empty()) continue;  // blank line
    if (columns == 0) {
      if (vals.size() != 3 && vals.size() != 6) {
        throw Error(file + ":" + std::to_string(line_no) +
                    ": expected 3 or 6 columns, got " +
                    std::to_string(vals.size()));
      }
      columns = static_cast<int>(vals.size());
    } else if (static_cast<int>(vals.size()) != columns) {
      throw Error(file + ":" + std::to_string(line_no) +
                  ": inconsistent column count");
    }
    cloud.points.emplace_back(vals[0], vals[1], vals[2]);
    if (columns == 6) {
      Eigen::Vector3d n(vals[3], vals[4], vals[5]);
      check_normal(n, file, line_no);
      cloud.normals.push_back(n);
    }
  }
  if (cloud.points.empty()) {
    throw Error(file + ": no points found");
  }
  return cloud;
}

PointCloud load_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  const std::string file = path.filename().string();
  std::string line;
  int line_no = 0;

  auto next_line = [&](const char* what) -> std::string {
    if (!std::getline(in, line)) {
      throw Error(file + ":" + std::to_string(line_no) +
                  ": unexpected end of file while reading " + what);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line("header") != "ply") throw Error(file + ":1: not a PLY file");
  bool ascii = false;
  long vertex_count = -1;
  std::vector<std::string> vertex_props;
  std::string current_element;
  for (;;) {
    std::istringstream ls(next_line("header"));
    std::string tok;
    ls >> tok;
    if (tok == "end_header") break;
    if (tok == "format") {
      std::string kind, version;
      ls >> kind >> version;
      ascii = (kind == "ascii");
      if (!ascii) {
        throw Error(file + ":" + std::to_string(line_no) +
                    ": only ascii PLY is supported");
      }
    } else if (tok == "element") {
      std::string name;
      long count = 0;
      ls >> name >> count;
      current_element = name;
      if (name == "vertex") vertex_count = count;
    } else if (tok == "property" && current_element == "vertex") {
      std::string type, name;
      ls >> type >> name;
      if (type == "list") {
        throw Error(file + ":" + std::to_string(line_no) +
                    ": list property on vertex element is not supported");
      }
      vertex_props.push_back(name);
    }
    // comments and non-vertex properties are skipped
  }
  if (!ascii) throw Error(file + ": missing format line");
  if (vertex_count < 0) throw Error(file + ": missing 'element vertex'");

  auto prop_index = [&](const char* name) -> int {
    for (std::size_t i = 0; i < vertex_props.size(); ++i) {
      if (vertex_props[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int ix = prop_index("x"), iy = prop_index("y"), iz = prop_index("z");
  if (ix < 0 || iy < 0 || iz < 0) {
    throw Error(file + ": vertex element must carry x y z properties");
  }
  const int inx = prop_index("nx"), iny = prop_index("ny"), inz = prop_index("nz");
  const bool with_normals = inx >= 0 && iny >= 0 && inz >= 0;

  PointCloud cloud;
  cloud.points.reserve(static_cast<std::size_t>(vertex_count));
  for (long v = 0; v < vertex_count; ++v) {
    if (!std::getline(in, line)) {
      throw Error(file + ":" + std::to_string(line_no) +
                  ": end of file after " + std::to_string(v) + " of " +
                  std::to_string(vertex_count) + " declared vertices");
    }
    ++line_no;
    const auto vals = parse_reals(line, file, line_no);
    if (vals.size() < vertex_props.size()) {
      throw Error(file + ":" + std::to_string(line_no) +
                  ": vertex line has too few values");
    }
    cloud.points.emplace_back(vals[ix], vals[iy], vals[iz]);
    if (with_normals) {
      Eigen::Vector3d n(vals[inx], vals[iny], vals[inz]);
      check_normal(n, file, line_no);
      cloud.normals.push_back(n);
    }
  }
  if (cloud.points.empty()) throw Error(file + ": no points found");
  return cloud;
}

}  // namespace

CloudFormat cloud_format_from_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".xyz" || ext == ".txt") return CloudFormat::Xyz;
  if (ext == ".ply") return CloudFormat::PlyAscii;
  throw Error("unrecognized cloud extension '" + ext + "' (use .xyz or .ply)");
}

PointCloud load_point_cloud(const std::filesystem::path& path,
                            CloudFormat format) {
  PointCloud cloud = format == CloudFormat::Xyz ? load_xyz(path) : load_ply(path);
  cloud.validate();
  return cloud;
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
  return load_point_cloud(path, cloud_format_from_path(path));
}

void save_point_cloud(const PointCloud& cloud,
                      const std::filesystem::path& path, CloudFormat format) {
  cloud.validate();
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  const bool with_normals = cloud.has_normals();
  if (format == CloudFormat::PlyAscii) {
    out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    if (with_normals) {
      out << "property double nx\nproperty double ny\nproperty double nz\n";
    }
    out << "end_header\n";
  }
  for (int i = 0; i < cloud.size(); ++i) {
    const auto& p = cloud.points[i];
    out << fmt_real(p.x()) << ' ' << fmt_real(p.y()) << ' ' << fmt_real(p.z());
    if (with_normals) {
      const auto& n = cloud.normals[i];
      out << ' ' << fmt_real(n.x()) << ' ' << fmt_real(n.y()) << ' '
          << fmt_real(n.z());
    }
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

void save_point_cloud(const PointCloud& cloud,
                      const std::filesystem::path& path) {
  save_point_cloud(cloud, path, cloud_format_from_path(path));
}

}  // namespace ugd
