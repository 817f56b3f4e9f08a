#include "groovegait/io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "groovegait/format.hpp"

namespace groovegait {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Source name plus the sink for "default applied" notes.
struct Reader {
  std::string source;
  std::vector<std::string>* notes = nullptr;

  static int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

  [[noreturn]] void fail(const YAML::Node& at, const std::string& message) const {
    throw ParseError(source, line_of(at), message);
  }

  void note(const std::string& message) const {
    if (notes) notes->push_back(source + ": " + message);
  }

  void require_map(const YAML::Node& n, const std::string& what) const {
    if (!n.IsMap()) fail(n, what + " must be a mapping");
  }

  void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                  const std::string& section) const {
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(kv.first, "unknown key '" + key + "'" + (section.empty() ? "" : " in " + section));
    }
  }

  double number(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field + " must be a number");
    try {
      return parse_number(n.Scalar());
    } catch (const std::invalid_argument&) {
      fail(n, field + " must be a number, got '" + n.Scalar() + "'");
    }
  }

  long integer(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field + " must be an integer");
    try {
      return parse_integer(n.Scalar());
    } catch (const std::invalid_argument&) {
      fail(n, field + " must be an integer, got '" + n.Scalar() + "'");
    }
  }

  bool boolean(const YAML::Node& n, const std::string& field) const {
    if (n.IsScalar() && (n.Scalar() == "true" || n.Scalar() == "false")) return n.Scalar() == "true";
    fail(n, field + " must be true or false");
  }

  Vec2d pair(const YAML::Node& n, const std::string& field) const {
    if (!n.IsSequence() || n.size() != 2) fail(n, field + " must be a two-element list");
    return {number(n[0], field + "[0]"), number(n[1], field + "[1]")};
  }

  double number_or(const YAML::Node& map, const char* key, double fallback,
                   const std::string& section) const {
    const YAML::Node v = map[key];
    if (!v) {
      note(section + "." + key + " not given; using default " + format_number(fallback));
      return fallback;
    }
    return number(v, section + "." + key);
  }

  template <typename F>
  void guard(const YAML::Node& at, F&& f) const {
    try {
      f();
    } catch (const InvariantError& e) {
      fail(at, e.what());
    }
  }
};

YAML::Node parse_yaml(const std::string& text, const std::string& source) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(source, e.mark.line + 1, e.msg);
  }
}

Params read_gait(const Reader& r, const YAML::Node& root) {
  Params p;
  const YAML::Node g = root["gait"];
  if (!g) {
    r.note("no gait section; using default gait parameters");
    return p;
  }
  r.require_map(g, "gait");
  r.check_keys(g, {"l_min_mm", "l_max_mm", "v_max_kv", "frequency_hz", "k_front", "k_rear", "beta",
                   "snap_to_ridge"},
               "gait");
  p.l_min_mm = r.number_or(g, "l_min_mm", p.l_min_mm, "gait");
  p.l_max_mm = r.number_or(g, "l_max_mm", p.l_max_mm, "gait");
  p.v_max_kv = r.number_or(g, "v_max_kv", p.v_max_kv, "gait");
  p.frequency_hz = r.number_or(g, "frequency_hz", p.frequency_hz, "gait");
  p.k_front = r.number_or(g, "k_front", p.k_front, "gait");
  p.k_rear = r.number_or(g, "k_rear", p.k_rear, "gait");
  p.beta = r.number_or(g, "beta", p.beta, "gait");
  if (const YAML::Node s = g["snap_to_ridge"]) p.snap_to_ridge = r.boolean(s, "gait.snap_to_ridge");
  r.guard(g, [&] { p.validate(); });
  return p;
}

Groove read_groove_fields(const Reader& r, const YAML::Node& m, const std::string& where,
                          bool angle_required) {
  Groove g;
  const YAML::Node a = m["groove_angle_deg"];
  if (a)
    g.angle_deg = r.number(a, where + ".groove_angle_deg");
  else if (angle_required)
    r.fail(m, where + ": groove_angle_deg is required");
  if (const YAML::Node v = m["pitch_mm"]) g.pitch_mm = r.number(v, where + ".pitch_mm");
  if (const YAML::Node v = m["ridge_height_mm"])
    g.ridge_height_mm = r.number(v, where + ".ridge_height_mm");
  r.guard(m, [&] { g.validate(where); });
  return g;
}

World read_world(const Reader& r, const YAML::Node& root) {
  Groove background;
  if (const YAML::Node b = root["background"]) {
    r.require_map(b, "background");
    r.check_keys(b, {"groove_angle_deg", "pitch_mm", "ridge_height_mm"}, "background");
    background = read_groove_fields(r, b, "background", false);
  }

  std::vector<Tile> tiles;
  const YAML::Node list = root["tiles"];
  if (list) {
    if (!list.IsSequence()) r.fail(list, "tiles must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const YAML::Node t = list[i];
      const std::string where = "tiles[" + std::to_string(i) + "]";
      r.require_map(t, where);
      r.check_keys(t, {"id", "x_min_mm", "x_max_mm", "y_min_mm", "y_max_mm", "groove_angle_deg",
                       "pitch_mm", "ridge_height_mm"},
                   where);
      Tile tile;
      tile.id = t["id"] ? static_cast<int>(r.integer(t["id"], where + ".id")) : static_cast<int>(i);
      auto bound = [&](const char* key) {
        const YAML::Node v = t[key];
        if (!v) r.fail(t, where + ": " + key + " is required");
        return r.number(v, where + "." + key);
      };
      tile.x_min_mm = bound("x_min_mm");
      tile.x_max_mm = bound("x_max_mm");
      tile.y_min_mm = bound("y_min_mm");
      tile.y_max_mm = bound("y_max_mm");
      tile.groove = read_groove_fields(r, t, where, true);
      r.guard(t, [&] { tile.validate(); });
      for (const auto& prev : tiles)
        if (prev.id == tile.id) r.fail(t, where + ": duplicate tile id " + std::to_string(tile.id));
      tiles.push_back(tile);
    }
  }
  return World(std::move(tiles), background);
}

void read_initial(const Reader& r, const YAML::Node& root, Vec2d& rear, double& heading) {
  const YAML::Node init = root["initial"];
  if (!init) {
    r.note("no initial section; starting at rear_mm [0, 0], heading_deg 0");
    return;
  }
  r.require_map(init, "initial");
  r.check_keys(init, {"rear_mm", "heading_deg"}, "initial");
  if (const YAML::Node v = init["rear_mm"]) rear = r.pair(v, "initial.rear_mm");
  heading = r.number_or(init, "heading_deg", 0.0, "initial");
  if (!(heading >= -180 && heading <= 180))
    r.fail(init, "initial.heading_deg must lie in [-180, 180]");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source,
                        std::vector<std::string>* notes) {
  const Reader r{source, notes};
  const YAML::Node root = parse_yaml(text, source);
  r.require_map(root, "scenario");
  r.check_keys(root, {"description", "gait", "background", "tiles", "initial", "run"}, "");

  Scenario sc;
  sc.params = read_gait(r, root);
  sc.world = read_world(r, root);
  read_initial(r, root, sc.initial_rear_mm, sc.initial_heading_deg);

  const YAML::Node run_node = root["run"];
  if (!run_node) r.fail(root, "run section with cycles is required");
  r.require_map(run_node, "run");
  r.check_keys(run_node, {"cycles"}, "run");
  if (!run_node["cycles"]) r.fail(run_node, "run.cycles is required");
  sc.cycles = r.integer(run_node["cycles"], "run.cycles");
  if (sc.cycles < 0) r.fail(run_node["cycles"], "run.cycles must be >= 0");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path, std::vector<std::string>* notes) {
  return parse_scenario(read_text(path), path.string(), notes);
}

ProblemFile load_problem(const std::filesystem::path& path) {
  const std::string source = path.string();
  const Reader r{source, nullptr};
  const YAML::Node root = parse_yaml(read_text(path), source);
  r.require_map(root, "problem");
  r.check_keys(root, {"description", "scenario", "method", "free", "max_evaluations"}, "");

  ProblemFile pf;
  const YAML::Node sc = root["scenario"];
  if (!sc || !sc.IsScalar()) r.fail(root, "scenario (path to a scenario file) is required");
  pf.scenario = load_scenario(path.parent_path() / sc.Scalar());

  if (const YAML::Node m = root["method"]) {
    if (m.IsScalar() && m.Scalar() == "golden")
      pf.method = FitMethod::kGolden;
    else if (m.IsScalar() && m.Scalar() == "nelder_mead")
      pf.method = FitMethod::kNelderMead;
    else
      r.fail(m, "method must be golden or nelder_mead");
  }

  const YAML::Node free = root["free"];
  if (!free || !free.IsMap() || free.size() == 0)
    r.fail(free ? free : root, "free must map at least one parameter to [lo, hi]");
  for (const auto& kv : free) {
    const std::string name = kv.first.as<std::string>();
    try {
      pf.free_params.push_back(parse_param_name(name));
    } catch (const InvariantError& e) {
      r.fail(kv.first, e.what());
    }
    const Vec2d b = r.pair(kv.second, "free." + name);
    pf.bounds.push_back({b.x(), b.y()});
  }
  if (const YAML::Node m = root["max_evaluations"]) {
    pf.max_evaluations = r.integer(m, "max_evaluations");
    if (pf.max_evaluations < 1) r.fail(m, "max_evaluations must be >= 1");
  }
  r.guard(free, [&] {
    FitProblem check{{}, pf.free_params, pf.bounds};
    check.validate();
  });
  return pf;
}

TargetFile load_target(const std::filesystem::path& path, std::vector<std::string>* notes) {
  const std::string source = path.string();
  const Reader r{source, notes};
  const YAML::Node root = parse_yaml(read_text(path), source);
  r.require_map(root, "target");
  r.check_keys(root, {"description", "waypoints", "tolerance_mm", "gait", "background", "initial"},
               "");

  TargetFile tf;
  const YAML::Node wps = root["waypoints"];
  if (!wps || !wps.IsSequence()) r.fail(root, "waypoints must be a list of [x, y] pairs");
  for (std::size_t i = 0; i < wps.size(); ++i)
    tf.target.waypoints.push_back(r.pair(wps[i], "waypoints[" + std::to_string(i) + "]"));
  const YAML::Node tol = root["tolerance_mm"];
  if (!tol) r.fail(root, "tolerance_mm is required");
  tf.target.tolerance_mm = r.number(tol, "tolerance_mm");
  r.guard(wps, [&] { tf.target.validate(); });

  tf.start.params = read_gait(r, root);
  tf.start.background = read_world(r, root).background();
  read_initial(r, root, tf.start.rear_mm, tf.start.heading_deg);
  return tf;
}

PaletteFile load_palette(const std::filesystem::path& path) {
  const std::string source = path.string();
  const Reader r{source, nullptr};
  const YAML::Node root = parse_yaml(read_text(path), source);
  r.require_map(root, "palette");
  r.check_keys(root, {"description", "allowed_angles_deg", "tile_length_mm", "max_tiles",
                      "tile_width_mm", "pitch_mm", "ridge_height_mm", "refine"},
               "");
  PaletteFile pf;
  TilePalette& p = pf.palette;
  const YAML::Node angles = root["allowed_angles_deg"];
  if (!angles || !angles.IsSequence()) r.fail(root, "allowed_angles_deg must be a list");
  for (std::size_t i = 0; i < angles.size(); ++i)
    p.allowed_angles_deg.push_back(
        r.number(angles[i], "allowed_angles_deg[" + std::to_string(i) + "]"));
  if (const YAML::Node v = root["tile_length_mm"]) p.tile_length_mm = r.number(v, "tile_length_mm");
  if (const YAML::Node v = root["max_tiles"]) p.max_tiles = static_cast<int>(r.integer(v, "max_tiles"));
  if (const YAML::Node v = root["tile_width_mm"]) p.tile_width_mm = r.number(v, "tile_width_mm");
  if (const YAML::Node v = root["pitch_mm"]) p.pitch_mm = r.number(v, "pitch_mm");
  if (const YAML::Node v = root["ridge_height_mm"]) p.ridge_height_mm = r.number(v, "ridge_height_mm");
  if (const YAML::Node ref = root["refine"]) {
    r.require_map(ref, "refine");
    r.check_keys(ref, {"initial_step_deg", "min_step_deg"}, "refine");
    if (const YAML::Node v = ref["initial_step_deg"])
      pf.refine.initial_step_deg = r.number(v, "refine.initial_step_deg");
    if (const YAML::Node v = ref["min_step_deg"])
      pf.refine.min_step_deg = r.number(v, "refine.min_step_deg");
    if (!(pf.refine.min_step_deg > 0 && pf.refine.initial_step_deg >= pf.refine.min_step_deg))
      r.fail(ref, "refine: require 0 < min_step_deg <= initial_step_deg");
  }
  r.guard(root, [&] { p.validate(); });
  return pf;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << kTrajectoryHeader << '\n';
  for (const auto& s : trajectory.samples) {
    out << format_number(s.time_s) << ',' << phase_name(s.phase) << ','
        << format_number(s.rear_mm.x()) << ',' << format_number(s.rear_mm.y()) << ','
        << format_number(s.front_mm.x()) << ',' << format_number(s.front_mm.y()) << ','
        << format_number(s.heading_deg) << ',' << s.front_tile << ',' << s.rear_tile << '\n';
  }
}

namespace {

template <typename RowFn>
void for_each_row(std::istream& in, const std::string& source, std::string_view header,
                  std::size_t columns, RowFn&& fn) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty file, expected header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ParseError(source, 1, "expected header '" + std::string(header) + "'");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != columns)
      throw ParseError(source, line_no,
                       "expected " + std::to_string(columns) + " fields, got " +
                           std::to_string(fields.size()));
    try {
      fn(fields, line_no);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
}

}  // namespace

TrajectoryTable read_trajectory_csv(std::istream& in, const std::string& source) {
  TrajectoryTable t;
  for_each_row(in, source, kTrajectoryHeader, 9, [&](const auto& f, int) {
    if (f[1] != "contracted" && f[1] != "extended")
      throw std::invalid_argument("phase must be contracted or extended");
    t.time_s.push_back(parse_number(f[0]));
    t.front_mm.emplace_back(parse_number(f[4]), parse_number(f[5]));
    t.heading_deg.push_back(parse_number(f[6]));
    t.front_tile.push_back(static_cast<int>(parse_integer(f[7])));
  });
  return t;
}

std::vector<ObservationPoint> read_observations_csv(std::istream& in, const std::string& source) {
  std::vector<ObservationPoint> pts;
  for_each_row(in, source, "time_s,heading_deg", 2, [&](const auto& f, int line_no) {
    const ObservationPoint p{parse_number(f[0]), parse_number(f[1])};
    if (p.time_s < 0) throw ParseError(source, line_no, "time_s must be >= 0");
    if (!pts.empty() && !(p.time_s > pts.back().time_s))
      throw ParseError(source, line_no, "time_s must be strictly increasing");
    pts.push_back(p);
  });
  return pts;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "groove_angle_deg,final_heading_deg,cycles_to_half_alignment\n";
  for (const auto& r : rows) {
    out << format_number(r.groove_angle_deg) << ',' << format_number(r.final_heading_deg) << ',';
    if (r.cycles_to_half_alignment) out << *r.cycles_to_half_alignment;
    out << '\n';
  }
}

void write_plan_file(const Plan& plan, std::ostream& out) {
  for (const auto& t : plan.tiles)
    out << format_number(t.angle_deg) << ',' << format_number(t.length_mm) << '\n';
  out << "# final_miss_mm=" << format_number(plan.metrics.final_miss_mm)
      << ",max_waypoint_miss_mm=" << format_number(plan.metrics.max_waypoint_miss_mm)
      << ",total_course_length_mm=" << format_number(plan.metrics.total_course_length_mm)
      << ",converged=" << (plan.converged ? "true" : "false") << '\n';
}

std::vector<PlannedTile> read_plan_file(std::istream& in, const std::string& source) {
  std::vector<PlannedTile> tiles;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw ParseError(source, line_no, "expected angle_deg,length_mm");
    try {
      PlannedTile t{parse_number(f[0]), parse_number(f[1])};
      if (!(t.angle_deg >= -90 && t.angle_deg <= 90))
        throw std::invalid_argument("angle_deg must lie in [-90, 90]");
      if (!(t.length_mm > 0)) throw std::invalid_argument("length_mm must be > 0");
      tiles.push_back(t);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return tiles;
}

void write_fit_report(const FitResult& result, FitMethod method,
                      const std::vector<FreeParam>& free_params,
                      const std::vector<double>& final_headings, std::ostream& out) {
  out << "method: " << (method == FitMethod::kGolden ? "golden" : "nelder_mead") << '\n';
  for (std::size_t i = 0; i < free_params.size(); ++i)
    out << param_name(free_params[i]) << ": "
        << format_number(result.params[static_cast<Eigen::Index>(i)]) << '\n';
  out << "sse_deg2: " << format_number(result.sse) << '\n';
  out << "evaluations: " << result.evaluations << '\n';
  out << "converged: " << (result.converged ? "true" : "false") << '\n';
  for (std::size_t i = 0; i < final_headings.size(); ++i)
    out << "final_heading_deg[" << i << "]: " << format_number(final_headings[i]) << '\n';
  for (const auto& n : result.notes) out << "note: " << n << '\n';
}

}  // namespace groovegait
