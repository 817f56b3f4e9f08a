#include "groovegait/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "groovegait/format.hpp"
#include "groovegait/io.hpp"
#include "groovegait/mesh.hpp"
#include "groovegait/plot.hpp"

namespace groovegait::cli {

namespace {

template <typename F>
int guarded(std::ostream& diag, F&& body) {
  try {
    body();
    return kOk;
  } catch (const ParseError& e) {
    diag << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateState& e) {
    diag << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    diag << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    diag << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

Scenario load_with_notes(const fs::path& path, std::ostream& diag) {
  std::vector<std::string> notes;
  Scenario sc = load_scenario(path, &notes);
  for (const auto& n : notes) diag << "note: " << n << '\n';
  return sc;
}

bool is_yaml(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".yaml" || ext == ".yml";
}

}  // namespace

int simulate(const fs::path& scenario, const fs::path& output, std::ostream& diag) {
  return guarded(diag, [&] {
    const Trajectory traj = run(load_with_notes(scenario, diag));
    std::ostringstream csv;
    write_trajectory_csv(traj, csv);
    write_file(output, csv.str());
  });
}

int sweep(const fs::path& scenario, const std::vector<double>& angles_deg, const fs::path& output,
          std::ostream& diag) {
  return guarded(diag, [&] {
    const Scenario base = load_with_notes(scenario, diag);
    for (double a : angles_deg)
      if (!(a >= -90 && a <= 90))
        throw InvariantError("sweep: angle " + format_number(a) + " outside [-90, 90]");
    const auto rows = groovegait::sweep(base, angles_deg);
    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    write_file(output, csv.str());
  });
}

int calibrate(const fs::path& problem, const fs::path& observations, const fs::path& output,
              std::ostream& diag) {
  return guarded(diag, [&] {
    const ProblemFile pf = load_problem(problem);
    auto in = open_input(observations);
    FitProblem fp;
    fp.series.push_back({pf.scenario, read_observations_csv(in, observations.string())});
    fp.free_params = pf.free_params;
    fp.bounds = pf.bounds;

    FitResult result;
    if (pf.method == FitMethod::kGolden) {
      GoldenOptions opt;
      if (pf.max_evaluations > 0) opt.max_evaluations = pf.max_evaluations;
      result = fit_golden(fp, opt);
    } else {
      NelderMeadOptions opt;
      if (pf.max_evaluations > 0) opt.max_evaluations = pf.max_evaluations;
      result = fit_nelder_mead(fp, opt);
    }

    std::vector<double> finals;
    for (const auto& s : fp.series) {
      Scenario sc = s.scenario;
      sc.params = apply_params(sc.params, fp.free_params, result.params);
      finals.push_back(run(sc).samples.back().heading_deg);
    }
    std::ostringstream report;
    write_fit_report(result, pf.method, fp.free_params, finals, report);
    write_file(output, report.str());
  });
}

int plan(const fs::path& target, const fs::path& palette, const fs::path& output,
         const fs::path& trajectory, std::ostream& diag) {
  return guarded(diag, [&] {
    std::vector<std::string> notes;
    const TargetFile tf = load_target(target, &notes);
    for (const auto& n : notes) diag << "note: " << n << '\n';
    const PaletteFile pf = load_palette(palette);

    const Plan greedy = plan_greedy(tf.target, pf.palette, tf.start);
    const Plan refined = refine(greedy, tf.target, tf.start, pf.refine);
    if (!refined.converged)
      diag << "note: plan did not reach the final waypoint within tolerance (final miss "
           << format_number(refined.metrics.final_miss_mm) << " mm)\n";

    std::ostringstream plan_text;
    write_plan_file(refined, plan_text);
    write_file(output, plan_text.str());
    std::ostringstream csv;
    write_trajectory_csv(refined.predicted, csv);
    write_file(trajectory, csv.str());
  });
}

int mesh(const fs::path& input, const fs::path& output_dir, double base_thickness_mm,
         double plan_width_mm, std::ostream& diag) {
  return guarded(diag, [&] {
    std::vector<Tile> tiles;
    if (is_yaml(input)) {
      tiles = load_with_notes(input, diag).world.tiles();
    } else {
      auto in = open_input(input);
      PlanLayout layout;
      layout.tile_width_mm = plan_width_mm;
      tiles = layout_tiles(layout, read_plan_file(in, input.string()));
    }
    if (tiles.empty()) diag << "note: no tiles to mesh\n";

    // Build every mesh before touching the output directory.
    std::vector<std::pair<int, std::string>> files;
    for (const auto& t : tiles) {
      std::ostringstream bytes;
      write_stl(substrate_mesh(t, base_thickness_mm), bytes);
      files.emplace_back(t.id, bytes.str());
    }
    fs::create_directories(output_dir);
    for (const auto& [id, bytes] : files)
      write_file(output_dir / ("tile_" + std::to_string(id) + ".stl"), bytes);
  });
}

int plot(const std::vector<fs::path>& trajectories, const fs::path& output, bool tile_markers,
         std::ostream& diag) {
  return guarded(diag, [&] {
    if (trajectories.empty()) throw std::invalid_argument("plot: at least one CSV is required");
    std::vector<PlotSeries> series;
    for (const auto& path : trajectories) {
      auto in = open_input(path);
      const TrajectoryTable table = read_trajectory_csv(in, path.string());
      PlotSeries s{path.stem().string(), table.time_s, table.heading_deg, {}};
      for (std::size_t i = 1; i < table.front_tile.size(); ++i)
        if (table.front_tile[i] != table.front_tile[i - 1]) s.boundary_times_s.push_back(table.time_s[i]);
      series.push_back(std::move(s));
    }
    PlotOptions opt;
    opt.tile_markers = tile_markers;
    write_file(output, render_svg(series, opt));
  });
}

}  // namespace groovegait::cli
