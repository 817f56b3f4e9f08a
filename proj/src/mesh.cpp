#include "groovegait/mesh.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace groovegait {

Eigen::Vector3d TriangleMesh::normal(std::size_t i) const {
  const Eigen::Vector3i& t = triangles[i];
  const Eigen::Vector3d n = (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]);
  const double len = n.norm();
  return len > 0 ? Eigen::Vector3d(n / len) : Eigen::Vector3d::Zero();
}

namespace {

struct BoundaryPoint {
  Vec2d xy;
  double s = 0;  // normal distance from the tile corner
  int bottom = 0;
  int top = 0;
};

double ridge_profile(double s, double pitch, double height) {
  const double r = s - std::floor(s / pitch) * pitch;
  return height * (1.0 - std::abs(2.0 * r / pitch - 1.0));
}

}  // namespace

TriangleMesh substrate_mesh(const Tile& tile, double base_thickness_mm) {
  tile.validate();
  if (!(base_thickness_mm > 0)) throw GeometryError("substrate_mesh: base thickness must be > 0");
  const double pitch = tile.groove.pitch_mm;
  const double height = tile.groove.ridge_height_mm;
  if (pitch > std::min(tile.width(), tile.height()))
    throw GeometryError("substrate_mesh: pitch " + std::to_string(pitch) +
                        " mm exceeds the tile " + std::to_string(tile.id) + " footprint");

  const Vec2d n = unit_deg(tile.groove.normal_deg());
  const Vec2d origin = tile.corner();
  auto s_of = [&](const Vec2d& p) { return n.dot(p - origin); };

  const std::array<Vec2d, 4> corners = {Vec2d(tile.x_min_mm, tile.y_min_mm),
                                        Vec2d(tile.x_max_mm, tile.y_min_mm),
                                        Vec2d(tile.x_max_mm, tile.y_max_mm),
                                        Vec2d(tile.x_min_mm, tile.y_max_mm)};
  std::array<double, 4> corner_s{};
  for (int i = 0; i < 4; ++i) corner_s[i] = s_of(corners[i]);
  const double s_min = *std::min_element(corner_s.begin(), corner_s.end());
  const double s_max = *std::max_element(corner_s.begin(), corner_s.end());
  const double tol = 1e-9 * pitch;

  // Crease lines of the profile: valleys at multiples of the pitch, crests halfway.
  std::vector<double> levels{s_min};
  if (height > 0) {
    const double half = 0.5 * pitch;
    for (long k = static_cast<long>(std::ceil(s_min / half)); k * half < s_max; ++k) {
      const double level = static_cast<double>(k) * half;
      if (level > s_min + tol && level < s_max - tol) levels.push_back(level);
    }
  }
  levels.push_back(s_max);

  TriangleMesh mesh;
  auto add_vertex = [&](const Vec2d& xy, double z) {
    mesh.vertices.emplace_back(xy.x(), xy.y(), z);
    return static_cast<int>(mesh.vertices.size() - 1);
  };
  auto top_z = [&](double s) { return base_thickness_mm + ridge_profile(s, pitch, height); };

  // Perimeter points, counter-clockwise: each corner followed by the crease
  // crossings along the edge leaving it.
  std::vector<BoundaryPoint> boundary;
  for (int i = 0; i < 4; ++i) {
    const Vec2d& a = corners[i];
    const Vec2d& b = corners[(i + 1) % 4];
    const double sa = corner_s[i];
    const double sb = corner_s[(i + 1) % 4];
    boundary.push_back({a, sa, add_vertex(a, 0.0), add_vertex(a, top_z(sa))});
    if (std::abs(sb - sa) <= tol) continue;
    std::vector<double> crossing;
    for (std::size_t k = 1; k + 1 < levels.size(); ++k) {
      const double level = levels[k];
      if (level > std::min(sa, sb) + tol && level < std::max(sa, sb) - tol) crossing.push_back(level);
    }
    if (sb < sa) std::reverse(crossing.begin(), crossing.end());
    for (const double level : crossing) {
      const Vec2d p = a + (level - sa) / (sb - sa) * (b - a);
      boundary.push_back({p, level, add_vertex(p, 0.0), add_vertex(p, top_z(level))});
    }
  }

  auto add_triangle = [&](int a, int b, int c) { mesh.triangles.emplace_back(a, b, c); };

  // Top and bottom faces, one convex polygon per band between crease lines.
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    std::vector<const BoundaryPoint*> poly;
    for (const auto& p : boundary)
      if (p.s >= levels[j] - tol && p.s <= levels[j + 1] + tol) poly.push_back(&p);
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
      add_triangle(poly[0]->top, poly[k]->top, poly[k + 1]->top);
      add_triangle(poly[0]->bottom, poly[k + 1]->bottom, poly[k]->bottom);
    }
  }

  // Side walls; these cap the ridge ends.
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const BoundaryPoint& a = boundary[k];
    const BoundaryPoint& b = boundary[(k + 1) % boundary.size()];
    add_triangle(a.bottom, b.bottom, b.top);
    add_triangle(a.bottom, b.top, a.top);
  }
  return mesh;
}

double signed_volume(const TriangleMesh& mesh) {
  double six_v = 0;
  for (const auto& t : mesh.triangles)
    six_v += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]]));
  return six_v / 6.0;
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>;
  const U bits = std::bit_cast<U>(value);
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  out.write(bytes, sizeof(U));
}

}  // namespace

std::size_t write_stl(const TriangleMesh& mesh, std::ostream& out) {
  std::string header(80, ' ');
  header.replace(0, kStlHeaderTag.size(), kStlHeaderTag);
  out.write(header.data(), 80);
  put_le(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const Eigen::Vector3f n = mesh.normal(i).cast<float>();
    for (int c = 0; c < 3; ++c) put_le(out, n[c]);
    for (int v = 0; v < 3; ++v) {
      const Eigen::Vector3f p = mesh.vertices[mesh.triangles[i][v]].cast<float>();
      for (int c = 0; c < 3; ++c) put_le(out, p[c]);
    }
    put_le(out, std::uint16_t{0});
  }
  if (!out) throw std::runtime_error("write_stl: stream write failed");
  return 84 + 50 * mesh.triangles.size();
}

}  // namespace groovegait
