#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "groovegait/mesh.hpp"
#include "mesh_oracle.hpp"

using namespace groovegait;
using namespace groovegait::testing;

namespace {

Tile tile(double angle, double w = 10, double h = 8, double pitch = 0.45, double height = 0.15) {
  Tile t;
  t.id = 4;
  t.x_min_mm = -3;
  t.x_max_mm = -3 + w;
  t.y_min_mm = 2;
  t.y_max_mm = 2 + h;
  t.groove = {angle, pitch, height};
  return t;
}

std::string stl_bytes(const TriangleMesh& m) {
  std::ostringstream out;
  write_stl(m, out);
  return out.str();
}

}  // namespace

TEST_CASE("flat slab is a 12-triangle box") {
  const TriangleMesh m = substrate_mesh(tile(0, 10, 8, 0.45, 0.0), 2);
  CHECK(m.triangle_count() == 12);
  CHECK(audit_edges(m).empty());
  CHECK(signed_volume(m) == doctest::Approx(160.0).epsilon(1e-12));
  CHECK(stl_bytes(m).size() == 84 + 50 * 12);
}

TEST_CASE("empty mesh writes only the header and count") {
  CHECK(stl_bytes(TriangleMesh{}).size() == 84);
}

TEST_CASE("closed-form ridge integral sanity") {
  // Over whole periods the mean height is h/2.
  const TriangleWave w{0.5L, 0.2L};
  CHECK(static_cast<double>(w.F1(5.0L)) == doctest::Approx(5.0 * 0.2 / 2).epsilon(1e-15));
  CHECK(static_cast<double>(w.F1(-5.0L)) == doctest::Approx(-0.5).epsilon(1e-15));
  // F2 agrees with a midpoint-rule integral of F1.
  long double sum = 0;
  const int n = 200000;
  const long double s = 3.37L;
  for (int i = 0; i < n; ++i) sum += w.F1((i + 0.5L) * s / n) * s / n;
  CHECK(static_cast<double>(w.F2(s)) == doctest::Approx(static_cast<double>(sum)).epsilon(1e-9));
}

TEST_CASE("ridged tiles are watertight with the closed-form volume") {
  for (double angle : {0.0, 15.0, -35.0, 45.0, 90.0, -90.0, 7.3}) {
    CAPTURE(angle);
    const Tile t = tile(angle);
    const TriangleMesh m = substrate_mesh(t, 1.5);
    CHECK(audit_edges(m).empty());
    CHECK(signed_volume(m) == doctest::Approx(closed_form_volume(t, 1.5)).epsilon(1e-6));
  }
}

TEST_CASE("random tiles pass the audit and the volume oracle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 60; ++i) {
    const double pitch = 0.2 + unit(rng);
    const Tile t = tile(-90 + 180 * unit(rng), pitch + 15 * unit(rng), pitch + 15 * unit(rng), pitch,
                        0.5 * unit(rng));
    const double thickness = 0.1 + 3 * unit(rng);
    const TriangleMesh m = substrate_mesh(t, thickness);
    REQUIRE(audit_edges(m).empty());
    CHECK(signed_volume(m) == doctest::Approx(closed_form_volume(t, thickness)).epsilon(1e-6));
    CHECK(stl_bytes(m).size() == 84 + 50 * m.triangle_count());
  }
}

TEST_CASE("crest count matches width over pitch") {
  // 0 degree grooves: normal along x, crests at x_min + (n + 1/2) pitch.
  const Tile t = tile(0, 9.0, 4, 0.45, 0.15);
  const TriangleMesh m = substrate_mesh(t, 1);
  std::set<double> crest_x;
  for (const auto& v : m.vertices)
    if (v.z() == doctest::Approx(1.15).epsilon(1e-12)) crest_x.insert(std::round(v.x() * 1e6) / 1e6);
  CHECK(crest_x.size() == 20);
}

TEST_CASE("top surface is within the ridge envelope") {
  const TriangleMesh m = substrate_mesh(tile(20), 2);
  for (const auto& v : m.vertices) {
    CHECK(v.z() >= 0);
    CHECK(v.z() <= 2.15 + 1e-12);
  }
}

TEST_CASE("STL bytes re-parse to the same triangles") {
  const TriangleMesh m = substrate_mesh(tile(-25), 2);
  const std::string bytes = stl_bytes(m);
  const StlFile f = parse_stl(bytes);
  CHECK(f.header.rfind(kStlHeaderTag, 0) == 0);
  CHECK(f.header.size() == 80);
  REQUIRE(f.count == m.triangle_count());
  REQUIRE(f.triangles.size() == m.triangle_count());
  for (std::size_t i = 0; i < m.triangle_count(); ++i) {
    const Eigen::Vector3d n = m.normal(i);
    for (int k = 0; k < 3; ++k) {
      REQUIRE(f.triangles[i].normal[k] == static_cast<float>(n[k]));
      for (int v = 0; v < 3; ++v)
        REQUIRE(f.triangles[i].vertices[v][k] ==
                static_cast<float>(m.vertices[m.triangles[i][v]][k]));
    }
    REQUIRE(f.triangles[i].attribute == 0);
  }
}

TEST_CASE("outward normals") {
  const TriangleMesh m = substrate_mesh(tile(0, 10, 8, 0.45, 0.0), 2);
  for (std::size_t i = 0; i < m.triangle_count(); ++i) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (int v = 0; v < 3; ++v) centroid += m.vertices[m.triangles[i][v]] / 3;
    const Eigen::Vector3d box_centre(2, 6, 1);
    CHECK(m.normal(i).dot(centroid - box_centre) > 0);
  }
}

TEST_CASE("geometry errors") {
  CHECK_THROWS_AS(substrate_mesh(tile(0, 0.4, 5), 1), GeometryError);
  CHECK_THROWS_AS(substrate_mesh(tile(0), 0), GeometryError);
  CHECK_THROWS_AS(substrate_mesh(tile(0), -1), GeometryError);
}

TEST_CASE("mesh output is deterministic") {
  CHECK(stl_bytes(substrate_mesh(tile(33), 2)) == stl_bytes(substrate_mesh(tile(33), 2)));
}
