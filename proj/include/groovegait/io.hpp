#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "groovegait/fit.hpp"
#include "groovegait/plan.hpp"
#include "groovegait/sim.hpp"

namespace groovegait {

// ---------------------------------------------------------------------------
// Scenario files (YAML). Sections: gait, background, tiles, initial, run.
// Missing keys take documented defaults; each default applied is reported in
// `notes`. Unknown keys and invariant violations raise ParseError with the
// offending line.
// ---------------------------------------------------------------------------

Scenario parse_scenario(const std::string& text, const std::string& source,
                        std::vector<std::string>* notes = nullptr);
Scenario load_scenario(const std::filesystem::path& path, std::vector<std::string>* notes = nullptr);

enum class FitMethod { kGolden, kNelderMead };

/// Calibration problem file: `scenario` (path relative to the file),
/// `method` (golden | nelder_mead), `free` (name -> [lo, hi]) and an optional
/// `max_evaluations`.
struct ProblemFile {
  Scenario scenario;
  FitMethod method = FitMethod::kNelderMead;
  std::vector<FreeParam> free_params;
  std::vector<Bounds> bounds;
  long max_evaluations = 0;  // 0: optimizer default
};

ProblemFile load_problem(const std::filesystem::path& path);

/// Planner target file: `waypoints`, `tolerance_mm` and optional `gait`,
/// `background` and `initial` sections with the scenario schema.
struct TargetFile {
  PathTarget target;
  PlanStart start;
};

TargetFile load_target(const std::filesystem::path& path, std::vector<std::string>* notes = nullptr);

/// Palette file: palette fields plus an optional `refine` section
/// (`initial_step_deg`, `min_step_deg`).
struct PaletteFile {
  TilePalette palette;
  RefineSchedule refine;
};

PaletteFile load_palette(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Text tables
// ---------------------------------------------------------------------------

inline constexpr const char* kTrajectoryHeader =
    "time_s,phase,rear_x_mm,rear_y_mm,front_x_mm,front_y_mm,heading_deg,front_tile,rear_tile";

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

/// The columns of a trajectory CSV needed for plotting and checks.
struct TrajectoryTable {
  std::vector<double> time_s;
  std::vector<double> heading_deg;
  std::vector<Vec2d> front_mm;
  std::vector<int> front_tile;
};

TrajectoryTable read_trajectory_csv(std::istream& in, const std::string& source);

/// Header `time_s,heading_deg`.
std::vector<ObservationPoint> read_observations_csv(std::istream& in, const std::string& source);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// One `angle_deg,length_mm` line per tile and a trailing `#` metrics line.
void write_plan_file(const Plan& plan, std::ostream& out);
std::vector<PlannedTile> read_plan_file(std::istream& in, const std::string& source);

void write_fit_report(const FitResult& result, FitMethod method,
                      const std::vector<FreeParam>& free_params,
                      const std::vector<double>& final_headings, std::ostream& out);

}  // namespace groovegait
