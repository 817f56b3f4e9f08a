#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "groovegait/sim.hpp"

namespace groovegait {

/// Gait parameters the calibrator may vary.
enum class FreeParam { kFront, kRear, kBeta };

std::string_view param_name(FreeParam p);
FreeParam parse_param_name(std::string_view name);  // throws InvariantError

struct Bounds {
  double lo = 0;
  double hi = 1;
  double width() const { return hi - lo; }
};

struct ObservationPoint {
  double time_s = 0;
  double heading_deg = 0;  // external sign
};

struct ObservationSeries {
  Scenario scenario;
  std::vector<ObservationPoint> points;

  void validate() const;
};

struct FitProblem {
  std::vector<ObservationSeries> series;
  std::vector<FreeParam> free_params;
  std::vector<Bounds> bounds;  // parallel to free_params

  void validate() const;
  Eigen::VectorXd lower() const;
  Eigen::VectorXd upper() const;
};

struct FitResult {
  Eigen::VectorXd params;
  double sse = 0;
  long evaluations = 0;
  bool converged = false;
  /// Best objective value after each optimizer iteration.
  std::vector<double> best_history;
  /// Diagnostics such as weakly identifiable parameter directions.
  std::vector<std::string> notes;
};

/// `base` with the free parameters replaced by `values`.
Params apply_params(const Params& base, const std::vector<FreeParam>& free,
                    const Eigen::VectorXd& values);

/// Simulated heading (external sign) at time `t`, linear between samples.
double interpolate_heading(const Trajectory& trajectory, double time_s);

/// Sum of squared heading residuals in deg^2. Candidates outside the bounds
/// are evaluated at their projection onto the box plus 1e6 * distance^2.
double loss(const FitProblem& problem, const Eigen::VectorXd& candidate);

struct GoldenOptions {
  double bracket_tol = 1e-4;
  long max_evaluations = 200;
};

/// Golden-section search on [lo, hi]. The end points are evaluated too, and
/// the best point seen is returned.
FitResult minimize_golden(const std::function<double(double)>& objective, double lo, double hi,
                          const GoldenOptions& options = {});

FitResult fit_golden(const FitProblem& problem, const GoldenOptions& options = {});

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double initial_offset = 0.1;  // fraction of each bound width
  double diameter_tol = 1e-5;
  double spread_tol = 1e-8;
  long max_evaluations = 500;
};

/// Nelder-Mead started from the centre of the box [lower, upper].
FitResult minimize_nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                               const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                               const NelderMeadOptions& options = {});

FitResult fit_nelder_mead(const FitProblem& problem, const NelderMeadOptions& options = {});

/// Finite-difference Hessian of the loss at `at`, in bound-normalised
/// coordinates (each axis scaled to unit width).
Eigen::MatrixXd normalized_hessian(const FitProblem& problem, const Eigen::VectorXd& at);

/// Notes for directions whose curvature is below `ratio` times the largest.
std::vector<std::string> identifiability_notes(const FitProblem& problem,
                                               const Eigen::VectorXd& at, double ratio = 1e-3);

}  // namespace groovegait
