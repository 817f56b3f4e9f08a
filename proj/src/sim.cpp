#include "groovegait/sim.hpp"

#include <cmath>

namespace groovegait {

void Scenario::validate() const {
  params.validate();
  if (cycles < 0) throw InvariantError("run.cycles must be >= 0");
  if (!(initial_heading_deg >= -180 && initial_heading_deg <= 180))
    throw InvariantError("initial.heading_deg must lie in [-180, 180]");
}

State Scenario::initial_state() const {
  return groovegait::initial_state(params, initial_rear_mm,
                                   paper_angle_to_internal(initial_heading_deg));
}

Sample make_sample(const State& state, const World& world) {
  Sample s;
  s.time_s = state.time_s;
  s.phase = state.phase;
  s.rear_mm = state.rear_mm;
  s.front_mm = state.front_mm;
  s.heading_deg = internal_angle_to_paper(heading(state));
  s.front_tile = world.locate(state.front_mm);
  s.rear_tile = world.locate(state.rear_mm);
  return s;
}

Trajectory run_until(const Scenario& scenario, const std::function<bool(const State&)>& stop) {
  scenario.validate();
  Trajectory out{scenario, {}};
  out.samples.reserve(static_cast<std::size_t>(2 * scenario.cycles + 1));

  const World& world = scenario.world;
  const Params& params = scenario.params;
  State state = scenario.initial_state();
  out.samples.push_back(make_sample(state, world));

  long done = 0;
  try {
    for (; done < scenario.cycles; ++done) {
      state = extension_step(state, world, params);
      out.samples.push_back(make_sample(state, world));
      state = contraction_step(state, world, params);
      out.samples.push_back(make_sample(state, world));
      if (stop && stop(state)) {
        ++done;
        break;
      }
    }
  } catch (const DegenerateState& e) {
    throw DegenerateState("simulation failed: coincident feet", done);
  }
  out.scenario.cycles = done;
  return out;
}

Trajectory run(const Scenario& scenario) { return run_until(scenario, {}); }

std::vector<Crossing> crossings(const Trajectory& trajectory, const World& world) {
  std::vector<Crossing> events;
  const auto& samples = trajectory.samples;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const int f0 = world.locate(samples[i - 1].front_mm);
    const int f1 = world.locate(samples[i].front_mm);
    const int r0 = world.locate(samples[i - 1].rear_mm);
    const int r1 = world.locate(samples[i].rear_mm);
    if (f0 != f1) events.push_back({i, Foot::kFront, f0, f1});
    if (r0 != r1) events.push_back({i, Foot::kRear, r0, r1});
  }
  return events;
}

Summary summarize(const Trajectory& trajectory) {
  const auto& samples = trajectory.samples;
  Summary sum;
  if (samples.empty()) return sum;
  sum.final_heading_deg = samples.back().heading_deg;
  sum.net_displacement_mm = (samples.back().front_mm - samples.front().front_mm).norm();
  for (std::size_t i = 1; i < samples.size(); ++i)
    sum.path_length_mm += (samples[i].front_mm - samples[i - 1].front_mm).norm();

  std::map<int, std::pair<double, long>> acc;
  for (const auto& s : samples) {
    auto& [total, count] = acc[s.front_tile];
    total += s.heading_deg;
    ++count;
  }
  for (const auto& [id, tc] : acc) sum.per_tile_mean_heading[id] = tc.first / tc.second;
  return sum;
}

Scenario with_groove_angle(const Scenario& scenario, double angle_deg) {
  std::vector<Tile> tiles = scenario.world.tiles();
  for (auto& t : tiles) t.groove.angle_deg = angle_deg;
  Groove background = scenario.world.background();
  background.angle_deg = angle_deg;
  Scenario out = scenario;
  out.world = World(std::move(tiles), background);
  return out;
}

std::optional<long> cycles_to_half_alignment(const Trajectory& trajectory) {
  const World& world = trajectory.scenario.world;
  const auto& samples = trajectory.samples;
  auto delta_at = [&](const Sample& s) {
    return groove_relative_angle(world.groove_at(s.front_mm),
                                 paper_angle_to_internal(s.heading_deg));
  };
  if (samples.empty()) return std::nullopt;
  const double initial = std::abs(delta_at(samples.front()));
  if (initial == 0) return std::nullopt;
  // Contracted samples sit at even indices, one per completed cycle.
  for (std::size_t i = 0; i < samples.size(); i += 2)
    if (std::abs(delta_at(samples[i])) <= 0.5 * initial) return static_cast<long>(i / 2);
  return std::nullopt;
}

std::vector<SweepRow> sweep(const Scenario& base, std::span<const double> angles_deg) {
  if (angles_deg.empty()) throw InvariantError("sweep: angle list must not be empty");
  std::vector<SweepRow> rows;
  rows.reserve(angles_deg.size());
  for (const double angle : angles_deg) {
    const Trajectory traj = run(with_groove_angle(base, angle));
    rows.push_back({angle, traj.samples.back().heading_deg, cycles_to_half_alignment(traj)});
  }
  return rows;
}

}  // namespace groovegait
