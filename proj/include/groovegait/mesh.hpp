#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "groovegait/substrate.hpp"

namespace groovegait {

/// Indexed triangle mesh, counter-clockwise winding seen from outside.
struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Eigen::Vector3i> triangles;

  std::size_t triangle_count() const { return triangles.size(); }
  /// Outward unit normal of triangle `i` (zero for a degenerate triangle).
  Eigen::Vector3d normal(std::size_t i) const;
};

/// Closed slab over the tile footprint whose top face is a triangular ridge
/// profile: zero height on the ridge-boundary lines (normal distance from the
/// tile corner a multiple of the pitch), peaking at `ridge_height_mm` halfway
/// between them. Ridges run perpendicular to the groove normal and are capped
/// where they meet the tile edges. A zero ridge height yields a 12-triangle box.
TriangleMesh substrate_mesh(const Tile& tile, double base_thickness_mm);

/// Enclosed volume by the divergence theorem (positive for outward winding).
double signed_volume(const TriangleMesh& mesh);

inline constexpr std::string_view kStlHeaderTag = "groove-gait substrate";

/// Binary little-endian STL. Returns the number of bytes written
/// (84 + 50 * triangles). Throws std::runtime_error if the stream fails.
std::size_t write_stl(const TriangleMesh& mesh, std::ostream& out);

}  // namespace groovegait
