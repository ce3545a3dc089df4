// ugd — no-reference geometric quality scoring for point clouds
// SPDX-License-Identifier: Apache-2.0

#include "ugd/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ugd/rng.hpp"

namespace ugd {

namespace {
constexpr std::uint64_t kMeshStream = 0x2001;

double triangle_area(const TriangleMesh& mesh, const Eigen::Vector3i& t) {
  const Eigen::Vector3d& a = mesh.vertices[t[0]];
  const Eigen::Vector3d& b = mesh.vertices[t[1]];
  const Eigen::Vector3d& c = mesh.vertices[t[2]];
  return 0.5 * (b - a).cross(c - a).norm();
}
}  // namespace

double TriangleMesh::total_area() const {
  double sum = 0.0;
  for (const auto& t : triangles) sum += triangle_area(*this, t);
  return sum;
}

void TriangleMesh::validate() const {
  const int nv = static_cast<int>(vertices.size());
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= nv) throw Error("mesh: triangle index out of range");
    }
  }
  bool any_positive = false;
  for (const auto& t : triangles) {
    if (triangle_area(*this, t) > 0.0) {
      any_positive = true;
      break;
    }
  }
  if (!any_positive) throw Error("mesh: no triangle with positive area");
}

PointCloud sample_mesh(const TriangleMesh& mesh, int n, std::uint64_t seed) {
  if (n < 1) throw Error("sample_mesh: n must be >= 1");
  mesh.validate();

  std::vector<double> cumulative;
  std::vector<int> tri_ids;
  cumulative.reserve(mesh.triangles.size());
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const double area = triangle_area(mesh, mesh.triangles[i]);
    if (area <= 0.0) continue;  // degenerate triangles carry no surface
    total += area;
    cumulative.push_back(total);
    tri_ids.push_back(static_cast<int>(i));
  }
  if (!(total > 0.0)) throw Error("sample_mesh: zero total surface area");

  RngStream rng = RngStream::derive(seed, kMeshStream);
  PointCloud cloud;
  cloud.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double pick = rng.next_double() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    const std::size_t slot =
        std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                              cumulative.size() - 1);
    const Eigen::Vector3i& t = mesh.triangles[tri_ids[slot]];
    double u = rng.next_double();
    double v = rng.next_double();
    if (u + v > 1.0) {  // reflect into the triangle
      u = 1.0 - u;
      v = 1.0 - v;
    }
    const Eigen::Vector3d& a = mesh.vertices[t[0]];
    const Eigen::Vector3d& b = mesh.vertices[t[1]];
    const Eigen::Vector3d& c = mesh.vertices[t[2]];
    cloud.points.push_back(a + u * (b - a) + v * (c - a));
  }
  return cloud;
}

TriangleMesh load_mesh_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  const std::string file = path.filename().string();
  std::string line;
  int line_no = 0;

  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) {
      throw Error(file + ":" + std::to_string(line_no) + ": unexpected end of file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != "ply") throw Error(file + ":1: not a PLY file");
  long vertex_count = -1, face_count = -1;
  int vertex_cols = 0;
  std::string current_element;
  for (;;) {
    std::istringstream ls(next_line());
    std::string tok;
    ls >> tok;
    if (tok == "end_header") break;
    if (tok == "format") {
      std::string kind;
      ls >> kind;
      if (kind != "ascii") {
        throw Error(file + ": only ascii PLY meshes are supported");
      }
    } else if (tok == "element") {
      std::string name;
      long count = 0;
      ls >> name >> count;
      current_element = name;
      if (name == "vertex") vertex_count = count;
      if (name == "face") face_count = count;
    } else if (tok == "property" && current_element == "vertex") {
      ++vertex_cols;
    }
  }
  if (vertex_count < 0 || face_count < 0) {
    throw Error(file + ": mesh requires vertex and face elements");
  }

  TriangleMesh mesh;
  mesh.vertices.reserve(vertex_count);
  for (long v = 0; v < vertex_count; ++v) {
    std::istringstream ls(next_line());
    double x, y, z;
    if (!(ls >> x >> y >> z)) {
      throw Error(file + ":" + std::to_string(line_no) + ": bad vertex line");
    }
    mesh.vertices.emplace_back(x, y, z);
  }
  for (long f = 0; f < face_count; ++f) {
    std::istringstream ls(next_line());
    int count = 0;
    if (!(ls >> count) || count < 3) {
      throw Error(file + ":" + std::to_string(line_no) + ": bad face line");
    }
    std::vector<int> idx(count);
    for (int k = 0; k < count; ++k) {
      if (!(ls >> idx[k])) {
        throw Error(file + ":" + std::to_string(line_no) + ": bad face index");
      }
    }
    for (int k = 1; k + 1 < count; ++k) {
      mesh.triangles.emplace_back(idx[0], idx[k], idx[k + 1]);
    }
  }
  mesh.validate();
  return mesh;
}

}  // namespace ugd
