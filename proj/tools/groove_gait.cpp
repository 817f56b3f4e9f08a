// groove-gait: simulate, calibrate and design groove-steered inchworm gaits.

#include <CLI11.hpp>
#include <iostream>

#include "groovegait/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = groovegait::cli;
  CLI::App app{"Quasi-static inchworm simulator on groove-patterned substrates"};
  app.require_subcommand(1);

  std::string scenario, output, problem, observations, target, palette, trajectory, input, out_dir;
  std::vector<double> angles;
  std::vector<std::string> csvs;
  double thickness = 2.0;
  double width = 400.0;
  bool markers = false;

  auto* sim = app.add_subcommand("simulate", "Run a scenario and write its trajectory CSV");
  sim->add_option("scenario", scenario, "Scenario file (YAML)")->required();
  sim->add_option("-o,--output", output, "Trajectory CSV")->required();

  auto* sw = app.add_subcommand("sweep", "Run a scenario once per groove angle");
  sw->add_option("scenario", scenario, "Base scenario file")->required();
  sw->add_option("-a,--angles", angles, "Groove angles in degrees (right-turn positive)")
      ->required()
      ->delimiter(',');
  sw->add_option("-o,--output", output, "Summary CSV")->required();

  auto* cal = app.add_subcommand("calibrate", "Fit coupling parameters to observed headings");
  cal->add_option("problem", problem, "Problem file (YAML)")->required();
  cal->add_option("observations", observations, "Observation CSV (time_s,heading_deg)")->required();
  cal->add_option("-o,--output", output, "Fit report")->required();

  auto* pl = app.add_subcommand("plan", "Design a tile sequence that steers toward waypoints");
  pl->add_option("target", target, "Target file (YAML)")->required();
  pl->add_option("palette", palette, "Palette file (YAML)")->required();
  pl->add_option("-o,--output", output, "Plan file")->required();
  pl->add_option("-t,--trajectory", trajectory, "Predicted trajectory CSV")->required();

  auto* me = app.add_subcommand("mesh", "Export one binary STL per tile");
  me->add_option("input", input, "Scenario (.yaml) or plan file")->required();
  me->add_option("-d,--output-dir", out_dir, "Output directory")->required();
  me->add_option("--thickness", thickness, "Base slab thickness in mm")->capture_default_str();
  me->add_option("--width", width, "Tile width for plan input, mm")->capture_default_str();

  auto* pt = app.add_subcommand("plot", "Plot heading against time as SVG");
  pt->add_option("trajectories", csvs, "Trajectory CSV files")->required();
  pt->add_option("-o,--output", output, "SVG file")->required();
  pt->add_flag("--tile-markers", markers, "Mark front-foot tile changes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kOk : cli::kInputError;
  }

  if (*sim) return cli::simulate(scenario, output, std::cerr);
  if (*sw) return cli::sweep(scenario, angles, output, std::cerr);
  if (*cal) return cli::calibrate(problem, observations, output, std::cerr);
  if (*pl) return cli::plan(target, palette, output, trajectory, std::cerr);
  if (*me) return cli::mesh(input, out_dir, thickness, width, std::cerr);
  if (*pt) {
    std::vector<std::filesystem::path> paths(csvs.begin(), csvs.end());
    return cli::plot(paths, output, markers, std::cerr);
  }
  return cli::kInternalError;
}
