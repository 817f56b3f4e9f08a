#pragma once

#include <string>

#include "groovegait/sim.hpp"

namespace groovegait::testing {

inline Tile strip(int id, double x0, double x1, double angle, double half_width = 300) {
  Tile t;
  t.id = id;
  t.x_min_mm = x0;
  t.x_max_mm = x1;
  t.y_min_mm = -half_width;
  t.y_max_mm = half_width;
  t.groove.angle_deg = angle;
  return t;
}

// A world that is one groove angle everywhere (background only).
inline Scenario uniform(double angle_deg, long cycles, double k_front = 0.5) {
  Scenario sc;
  sc.world = World({}, Groove{angle_deg});
  sc.params.k_front = k_front;
  sc.cycles = cycles;
  return sc;
}

inline std::string scenario_path(const std::string& name) {
  return std::string(GG_SCENARIO_DIR) + "/" + name;
}

}  // namespace groovegait::testing
