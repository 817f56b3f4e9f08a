#pragma once

#include <string>

#include "groovegait/angles.hpp"
#include "groovegait/errors.hpp"
#include "groovegait/substrate.hpp"

namespace groovegait {

/// Drive and contact parameters of the anchor-extend-contract gait.
///
/// The defaults reproduce the hardware figures (25 mm contracted, 27 mm
/// extended at 1.9 kV, 0.4 Hz drive). The coupling gains and the anchoring
/// share are model parameters: `k_front` blends the front foot's slip
/// direction toward the groove normal, `k_rear` does the same for the dragged
/// rear foot, and `beta` is the share of each extension stroke realised as
/// front-foot advance (the rest slides the rear foot back).
template <typename Scalar>
struct GaitParams {
  Scalar l_min_mm = 25;
  Scalar l_max_mm = 27;
  Scalar v_max_kv = Scalar(1.9);
  Scalar frequency_hz = Scalar(0.4);
  Scalar k_front = Scalar(0.5);
  Scalar k_rear = 0;
  Scalar beta = 1;
  bool snap_to_ridge = false;

  Scalar stroke_mm() const { return l_max_mm - l_min_mm; }
  Scalar half_period_s() const { return Scalar(1) / (Scalar(2) * frequency_hz); }

  void validate() const {
    if (!(l_min_mm > 0 && l_min_mm < l_max_mm))
      throw InvariantError("gait: require 0 < l_min_mm < l_max_mm");
    if (!(v_max_kv > 0)) throw InvariantError("gait.v_max_kv must be > 0");
    if (!(frequency_hz > 0)) throw InvariantError("gait.frequency_hz must be > 0");
    if (!(k_front >= 0 && k_front <= 1)) throw InvariantError("gait.k_front must lie in [0, 1]");
    if (!(k_rear >= 0 && k_rear <= 1)) throw InvariantError("gait.k_rear must lie in [0, 1]");
    if (!(beta > 0 && beta <= 1)) throw InvariantError("gait.beta must lie in (0, 1]");
  }
};

enum class Phase { kContracted = 0, kExtended = 1 };

inline const char* phase_name(Phase p) {
  return p == Phase::kContracted ? "contracted" : "extended";
}

template <typename Scalar>
struct RobotState {
  Vec2<Scalar> rear_mm = Vec2<Scalar>::Zero();
  Vec2<Scalar> front_mm = Vec2<Scalar>::Zero();
  Phase phase = Phase::kContracted;
  long cycle_index = 0;
  Scalar time_s = 0;

  /// Half-cycles elapsed since the start of the run.
  long half_cycles() const { return 2 * cycle_index + (phase == Phase::kExtended ? 1 : 0); }
};

/// Body length under a static drive voltage; linear between the two end states.
template <typename Scalar>
Scalar length_at_voltage(const GaitParams<Scalar>& params, Scalar v_kv) {
  if (!(v_kv >= 0 && v_kv <= params.v_max_kv))
    throw RangeError("length_at_voltage: voltage " + std::to_string(double(v_kv)) +
                     " kV outside [0, v_max]");
  return params.l_min_mm + params.stroke_mm() * (v_kv / params.v_max_kv);
}

/// Body-axis direction (rear to front), internal degrees in (-180, 180].
template <typename Scalar>
Scalar heading(const RobotState<Scalar>& state) {
  const Vec2<Scalar> axis = state.front_mm - state.rear_mm;
  if (axis.x() == 0 && axis.y() == 0)
    throw DegenerateState("coincident feet", state.cycle_index);
  return direction_deg(axis);
}

/// Contracted state with the rear foot at `rear` facing `heading_internal_deg`.
template <typename Scalar>
RobotState<Scalar> initial_state(const GaitParams<Scalar>& params, const Vec2<Scalar>& rear,
                                 Scalar heading_internal_deg) {
  RobotState<Scalar> s;
  s.rear_mm = rear;
  s.front_mm = rear + params.l_min_mm * unit_deg(heading_internal_deg);
  return s;
}

namespace detail {

template <typename Scalar>
Scalar phase_time(const GaitParams<Scalar>& params, long half_cycles) {
  return static_cast<Scalar>(half_cycles) / (Scalar(2) * params.frequency_hz);
}

}  // namespace detail

/// Voltage-on half cycle: the front foot slips forward, deflected toward its
/// groove normal by k_front, while the rear slides back by the unanchored share.
/// The rear is then re-placed so the body length is exactly l_max.
template <typename Scalar>
RobotState<Scalar> extension_step(const RobotState<Scalar>& state, const WorldMap<Scalar>& world,
                                  const GaitParams<Scalar>& params) {
  if (state.phase != Phase::kContracted)
    throw InvariantError("extension_step requires a contracted state");
  const Scalar psi = heading(state);
  const Scalar stroke = params.stroke_mm();

  const int front_tile = world.locate_index(state.front_mm);
  const GrooveSpec<Scalar>& front_groove =
      front_tile < 0 ? world.background() : world.tiles()[front_tile].groove;
  const Scalar delta_front = groove_relative_angle(front_groove, psi);
  const Scalar delta_rear = groove_relative_angle(world.groove_at(state.rear_mm), psi);

  RobotState<Scalar> next = state;
  next.front_mm += params.beta * stroke * unit_deg(psi + params.k_front * delta_front);
  next.rear_mm -= (Scalar(1) - params.beta) * stroke * unit_deg(psi + params.k_rear * delta_rear);

  if (params.snap_to_ridge) {
    const int i = world.locate_index(next.front_mm);
    next.front_mm = i < 0 ? snap_to_ridge_lines(world.background(), Vec2<Scalar>(0, 0), next.front_mm)
                          : snap_to_ridge(world.tiles()[i], next.front_mm);
  }

  const Vec2<Scalar> chord = next.front_mm - next.rear_mm;
  if (chord.x() == 0 && chord.y() == 0) throw DegenerateState("coincident feet", state.cycle_index);
  next.rear_mm = next.front_mm - params.l_max_mm * (chord / chord.norm());
  next.phase = Phase::kExtended;
  next.time_s = detail::phase_time(params, next.half_cycles());
  return next;
}

/// Voltage-off half cycle: the front foot holds while the rear is dragged
/// forward by one stroke, then re-placed at exactly l_min behind the front.
template <typename Scalar>
RobotState<Scalar> contraction_step(const RobotState<Scalar>& state,
                                    const WorldMap<Scalar>& world,
                                    const GaitParams<Scalar>& params) {
  if (state.phase != Phase::kExtended)
    throw InvariantError("contraction_step requires an extended state");
  const Scalar psi = heading(state);
  const Scalar delta_rear = groove_relative_angle(world.groove_at(state.rear_mm), psi);

  RobotState<Scalar> next = state;
  next.rear_mm += params.stroke_mm() * unit_deg(psi + params.k_rear * delta_rear);

  const Vec2<Scalar> chord = next.front_mm - next.rear_mm;
  if (chord.x() == 0 && chord.y() == 0) throw DegenerateState("coincident feet", state.cycle_index);
  next.rear_mm = next.front_mm - params.l_min_mm * (chord / chord.norm());
  next.phase = Phase::kContracted;
  next.cycle_index = state.cycle_index + 1;
  next.time_s = detail::phase_time(params, next.half_cycles());
  return next;
}

template <typename Scalar>
RobotState<Scalar> full_cycle(const RobotState<Scalar>& state, const WorldMap<Scalar>& world,
                              const GaitParams<Scalar>& params) {
  return contraction_step(extension_step(state, world, params), world, params);
}

using Params = GaitParams<double>;
using State = RobotState<double>;

}  // namespace groovegait
