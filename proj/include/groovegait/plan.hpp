#pragma once

#include <vector>

#include "groovegait/sim.hpp"

namespace groovegait {

/// Waypoints for the front foot, in millimetres.
struct PathTarget {
  std::vector<Vec2d> waypoints;
  double tolerance_mm = 1;

  void validate() const;
};

struct TilePalette {
  std::vector<double> allowed_angles_deg;  // external sign
  double tile_length_mm = 25;
  int max_tiles = 20;
  /// Lateral extent of each planned tile, centred on the start position.
  double tile_width_mm = 400;
  double pitch_mm = 0.45;
  double ridge_height_mm = 0.15;

  void validate() const;
};

struct PlannedTile {
  double angle_deg = 0;  // external sign
  double length_mm = 0;
};

struct PlanMetrics {
  double final_miss_mm = 0;
  double max_waypoint_miss_mm = 0;
  double total_course_length_mm = 0;
};

/// Where planned tiles go: strips along +x starting at the initial front-foot
/// position, each `tile_width_mm` wide and centred on it laterally.
struct PlanLayout {
  Vec2d origin_mm = Vec2d::Zero();
  double tile_width_mm = 400;
  double pitch_mm = 0.45;
  double ridge_height_mm = 0.15;
  Groove background;
};

/// Start pose and gait for planning.
struct PlanStart {
  Params params;
  Vec2d rear_mm = Vec2d::Zero();
  double heading_deg = 0;  // external sign, must lie in (-90, 90)
  Groove background;
};

struct Plan {
  std::vector<PlannedTile> tiles;
  PlanLayout layout;
  Trajectory predicted;
  PlanMetrics metrics;
  bool converged = false;
};

/// Tiles laid out as substrate rectangles (ids 0..n-1).
std::vector<Tile> layout_tiles(const PlanLayout& layout, const std::vector<PlannedTile>& tiles);

/// Simulates `tiles` from `start` until the front foot leaves the course end.
Trajectory simulate_course(const PlanStart& start, const PlanLayout& layout,
                           const std::vector<PlannedTile>& tiles);

/// Closest approach of the front-foot polyline to `point`.
double closest_approach(const Trajectory& trajectory, const Vec2d& point);

/// Absolute heading error (degrees) at the last sample toward the first
/// waypoint still ahead of the front foot along +x; zero when none is.
double exit_heading_error(const Trajectory& trajectory, const PathTarget& target);

PlanMetrics evaluate(const Plan& plan, const PathTarget& target);

/// Receding-horizon greedy tiling with one-tile lookahead. Ties in heading
/// error go to the smaller |angle|, then to the negative angle.
Plan plan_greedy(const PathTarget& target, const TilePalette& palette, const PlanStart& start);

struct RefineSchedule {
  double initial_step_deg = 5;
  double min_step_deg = 0.1;
};

/// Coordinate descent on the tile angles (continuous) minimising the final
/// miss distance. `history`, when given, receives the miss after each pass.
Plan refine(const Plan& plan, const PathTarget& target, const PlanStart& start,
            const RefineSchedule& schedule = {}, std::vector<double>* history = nullptr);

}  // namespace groovegait
