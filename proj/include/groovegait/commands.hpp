#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace groovegait::cli {

namespace fs = std::filesystem;

/// Exit codes shared by every command.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kInternalError = 2;

int simulate(const fs::path& scenario, const fs::path& output, std::ostream& diag);

int sweep(const fs::path& scenario, const std::vector<double>& angles_deg, const fs::path& output,
          std::ostream& diag);

int calibrate(const fs::path& problem, const fs::path& observations, const fs::path& output,
              std::ostream& diag);

/// Writes the plan file to `output` and the predicted trajectory CSV to `trajectory`.
int plan(const fs::path& target, const fs::path& palette, const fs::path& output,
         const fs::path& trajectory, std::ostream& diag);

/// `input` is a scenario (.yaml/.yml) or a plan file. Plan tiles are laid
/// along +x from the origin, `plan_width_mm` wide.
int mesh(const fs::path& input, const fs::path& output_dir, double base_thickness_mm,
         double plan_width_mm, std::ostream& diag);

int plot(const std::vector<fs::path>& trajectories, const fs::path& output, bool tile_markers,
         std::ostream& diag);

}  // namespace groovegait::cli
