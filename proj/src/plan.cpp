#include "groovegait/plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace groovegait {

void PathTarget::validate() const {
  if (waypoints.size() < 2) throw InvariantError("target: at least two waypoints are required");
  for (std::size_t i = 1; i < waypoints.size(); ++i)
    if (waypoints[i] == waypoints[i - 1])
      throw InvariantError("target: consecutive waypoints must be distinct");
  if (!(tolerance_mm > 0)) throw InvariantError("target.tolerance_mm must be > 0");
}

void TilePalette::validate() const {
  if (allowed_angles_deg.empty()) throw InvariantError("palette: allowed_angles_deg is empty");
  for (double a : allowed_angles_deg)
    if (!(a >= -90 && a <= 90)) throw InvariantError("palette: angles must lie in [-90, 90]");
  if (!(tile_length_mm > 0)) throw InvariantError("palette.tile_length_mm must be > 0");
  if (max_tiles < 1) throw InvariantError("palette.max_tiles must be >= 1");
  if (!(tile_width_mm > 0)) throw InvariantError("palette.tile_width_mm must be > 0");
  Groove{0, pitch_mm, ridge_height_mm}.validate("palette");
}

std::vector<Tile> layout_tiles(const PlanLayout& layout, const std::vector<PlannedTile>& tiles) {
  std::vector<Tile> out;
  out.reserve(tiles.size());
  double x = layout.origin_mm.x();
  const double half = 0.5 * layout.tile_width_mm;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    Tile t;
    t.id = static_cast<int>(i);
    t.x_min_mm = x;
    t.x_max_mm = x + tiles[i].length_mm;
    t.y_min_mm = layout.origin_mm.y() - half;
    t.y_max_mm = layout.origin_mm.y() + half;
    t.groove = {tiles[i].angle_deg, layout.pitch_mm, layout.ridge_height_mm};
    out.push_back(t);
    x = t.x_max_mm;
  }
  return out;
}

Trajectory simulate_course(const PlanStart& start, const PlanLayout& layout,
                           const std::vector<PlannedTile>& tiles) {
  double course = 0;
  for (const auto& t : tiles) course += t.length_mm;
  const double end_x = layout.origin_mm.x() + course;

  Scenario sc;
  sc.world = World(layout_tiles(layout, tiles), layout.background);
  sc.params = start.params;
  sc.initial_rear_mm = start.rear_mm;
  sc.initial_heading_deg = start.heading_deg;
  const double per_cycle = start.params.beta * start.params.stroke_mm();
  sc.cycles = static_cast<long>(std::ceil(3.0 * course / per_cycle)) + 10;
  return run_until(sc, [end_x](const State& s) { return s.front_mm.x() >= end_x; });
}

double closest_approach(const Trajectory& trajectory, const Vec2d& point) {
  const auto& samples = trajectory.samples;
  double best = std::numeric_limits<double>::infinity();
  if (samples.empty()) return best;
  best = (samples.front().front_mm - point).norm();
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const Vec2d a = samples[i - 1].front_mm;
    const Vec2d ab = samples[i].front_mm - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0 ? std::clamp((point - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (a + t * ab - point).norm());
  }
  return best;
}

double exit_heading_error(const Trajectory& trajectory, const PathTarget& target) {
  const Sample& last = trajectory.samples.back();
  const Vec2d p = last.front_mm;
  const auto ahead = std::find_if(target.waypoints.begin(), target.waypoints.end(),
                                  [&](const Vec2d& w) { return w.x() > p.x(); });
  // Nothing left ahead: every candidate scores the same.
  if (ahead == target.waypoints.end()) return 0;
  const Vec2d to_goal = *ahead - p;
  return std::abs(wrap_deg(direction_deg(to_goal) - paper_angle_to_internal(last.heading_deg)));
}

PlanMetrics evaluate(const Plan& plan, const PathTarget& target) {
  PlanMetrics m;
  m.final_miss_mm = closest_approach(plan.predicted, target.waypoints.back());
  for (const auto& w : target.waypoints)
    m.max_waypoint_miss_mm = std::max(m.max_waypoint_miss_mm, closest_approach(plan.predicted, w));
  for (const auto& t : plan.tiles) m.total_course_length_mm += t.length_mm;
  return m;
}

namespace {

PlanLayout make_layout(const TilePalette& palette, const PlanStart& start) {
  PlanLayout layout;
  const State s0 = initial_state(start.params, start.rear_mm,
                                 paper_angle_to_internal(start.heading_deg));
  layout.origin_mm = s0.front_mm;
  layout.tile_width_mm = palette.tile_width_mm;
  layout.pitch_mm = palette.pitch_mm;
  layout.ridge_height_mm = palette.ridge_height_mm;
  layout.background = start.background;
  return layout;
}

void check_start(const PlanStart& start) {
  start.params.validate();
  if (!(start.heading_deg > -90 && start.heading_deg < 90))
    throw InvariantError("plan: initial heading must lie in (-90, 90) so the course runs along +x");
}

// Candidate a beats b: lower error, then smaller |angle|, then negative angle.
bool better_candidate(double err_a, double angle_a, double err_b, double angle_b) {
  constexpr double kTie = 1e-12;
  if (err_a < err_b - kTie) return true;
  if (err_a > err_b + kTie) return false;
  if (std::abs(angle_a) != std::abs(angle_b)) return std::abs(angle_a) < std::abs(angle_b);
  return angle_a < angle_b;
}

}  // namespace

Plan plan_greedy(const PathTarget& target, const TilePalette& palette, const PlanStart& start) {
  target.validate();
  palette.validate();
  check_start(start);

  Plan plan;
  plan.layout = make_layout(palette, start);
  const Vec2d final_wp = target.waypoints.back();

  while (static_cast<int>(plan.tiles.size()) < palette.max_tiles) {
    std::vector<PlannedTile> candidate = plan.tiles;
    candidate.push_back({0, palette.tile_length_mm});
    double best_err = std::numeric_limits<double>::infinity();
    double best_angle = 0;
    bool have = false;
    for (const double angle : palette.allowed_angles_deg) {
      candidate.back().angle_deg = angle;
      const double err = exit_heading_error(simulate_course(start, plan.layout, candidate), target);
      if (!have || better_candidate(err, angle, best_err, best_angle)) {
        best_err = err;
        best_angle = angle;
        have = true;
      }
    }
    plan.tiles.push_back({best_angle, palette.tile_length_mm});
    plan.predicted = simulate_course(start, plan.layout, plan.tiles);

    if (closest_approach(plan.predicted, final_wp) <= target.tolerance_mm) {
      plan.converged = true;
      break;
    }
    // Past the final waypoint: later tiles cannot bring the path back to it.
    if (plan.predicted.samples.back().front_mm.x() > final_wp.x() + target.tolerance_mm) break;
  }
  plan.metrics = evaluate(plan, target);
  return plan;
}

Plan refine(const Plan& plan, const PathTarget& target, const PlanStart& start,
            const RefineSchedule& schedule, std::vector<double>* history) {
  target.validate();
  check_start(start);
  Plan best = plan;
  if (best.tiles.empty()) return best;

  auto miss_of = [&](const std::vector<PlannedTile>& tiles) {
    return closest_approach(simulate_course(start, best.layout, tiles), target.waypoints.back());
  };
  double best_miss = miss_of(best.tiles);
  if (history) history->push_back(best_miss);

  double step = schedule.initial_step_deg;
  while (step >= schedule.min_step_deg) {
    bool improved = false;
    for (std::size_t i = 0; i < best.tiles.size(); ++i) {
      for (const double sign : {1.0, -1.0}) {
        std::vector<PlannedTile> trial = best.tiles;
        trial[i].angle_deg = std::clamp(trial[i].angle_deg + sign * step, -90.0, 90.0);
        if (trial[i].angle_deg == best.tiles[i].angle_deg) continue;
        const double miss = miss_of(trial);
        if (miss < best_miss) {
          best_miss = miss;
          best.tiles = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (history) history->push_back(best_miss);
    if (!improved) step *= 0.5;
  }

  best.predicted = simulate_course(start, best.layout, best.tiles);
  best.metrics = evaluate(best, target);
  best.converged = best.metrics.final_miss_mm <= target.tolerance_mm;
  return best;
}

}  // namespace groovegait
