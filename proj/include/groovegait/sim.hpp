#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groovegait/gait.hpp"
#include "groovegait/substrate.hpp"

namespace groovegait {

/// A world, gait parameters and a start pose. The robot starts contracted with
/// its rear foot at `initial_rear_mm`; the heading uses the external sign.
struct Scenario {
  World world;
  Params params;
  Vec2d initial_rear_mm = Vec2d::Zero();
  double initial_heading_deg = 0;
  long cycles = 0;

  void validate() const;
  State initial_state() const;
  double duration_s() const { return static_cast<double>(cycles) / params.frequency_hz; }
};

struct Sample {
  double time_s = 0;
  Phase phase = Phase::kContracted;
  Vec2d rear_mm = Vec2d::Zero();
  Vec2d front_mm = Vec2d::Zero();
  double heading_deg = 0;  // external sign
  int front_tile = kBackground;
  int rear_tile = kBackground;
};

/// One sample per half cycle plus the initial state.
struct Trajectory {
  Scenario scenario;
  std::vector<Sample> samples;
};

Sample make_sample(const State& state, const World& world);

Trajectory run(const Scenario& scenario);

/// Like run(), but stops early once `stop` holds for the contracted state
/// reached at the end of a cycle. The echoed scenario carries the cycle count
/// actually simulated, so run() on it reproduces the result.
Trajectory run_until(const Scenario& scenario, const std::function<bool(const State&)>& stop);

enum class Foot { kFront, kRear };

inline const char* foot_name(Foot f) { return f == Foot::kFront ? "front" : "rear"; }

struct Crossing {
  std::size_t sample_index = 0;
  Foot foot = Foot::kFront;
  int from_tile = kBackground;
  int to_tile = kBackground;

  bool operator==(const Crossing&) const = default;
};

/// Tile changes of either foot between consecutive samples, front before rear.
std::vector<Crossing> crossings(const Trajectory& trajectory, const World& world);

struct Summary {
  double final_heading_deg = 0;  // external sign
  double net_displacement_mm = 0;
  double path_length_mm = 0;
  std::map<int, double> per_tile_mean_heading;  // keyed by front-foot tile id
};

Summary summarize(const Trajectory& trajectory);

/// Copy of `scenario` with every tile and the background set to `angle_deg`.
Scenario with_groove_angle(const Scenario& scenario, double angle_deg);

struct SweepRow {
  double groove_angle_deg = 0;
  double final_heading_deg = 0;
  std::optional<long> cycles_to_half_alignment;
};

/// First cycle index at which the front foot's groove-relative angle is at
/// most half its initial magnitude. Empty when the initial angle is zero or
/// the threshold is never met.
std::optional<long> cycles_to_half_alignment(const Trajectory& trajectory);

std::vector<SweepRow> sweep(const Scenario& base, std::span<const double> angles_deg);

}  // namespace groovegait
