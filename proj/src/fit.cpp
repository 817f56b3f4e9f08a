#include "groovegait/fit.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "groovegait/format.hpp"

namespace groovegait {

std::string_view param_name(FreeParam p) {
  switch (p) {
    case FreeParam::kFront: return "k_front";
    case FreeParam::kRear: return "k_rear";
    case FreeParam::kBeta: return "beta";
  }
  return "?";
}

FreeParam parse_param_name(std::string_view name) {
  if (name == "k_front") return FreeParam::kFront;
  if (name == "k_rear") return FreeParam::kRear;
  if (name == "beta") return FreeParam::kBeta;
  throw InvariantError("unknown free parameter '" + std::string(name) +
                       "' (expected k_front, k_rear or beta)");
}

void ObservationSeries::validate() const {
  scenario.validate();
  const double duration = scenario.duration_s();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double t = points[i].time_s;
    if (!(t >= 0)) throw InvariantError("observation times must be >= 0");
    if (i > 0 && !(t > points[i - 1].time_s))
      throw InvariantError("observation times must be strictly increasing");
    if (t > duration) throw InvariantError("observation time exceeds the scenario duration");
  }
}

void FitProblem::validate() const {
  if (free_params.empty()) throw ArityError("fit: at least one free parameter is required");
  if (bounds.size() != free_params.size())
    throw InvariantError("fit: one bound interval per free parameter is required");
  for (std::size_t i = 0; i < free_params.size(); ++i) {
    const auto name = std::string(param_name(free_params[i]));
    const Bounds& b = bounds[i];
    if (!(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo <= b.hi))
      throw InvariantError("fit: bounds of " + name + " must be finite with lo <= hi");
    const bool beta = free_params[i] == FreeParam::kBeta;
    if (b.lo < 0 || b.hi > 1 || (beta && b.lo <= 0))
      throw InvariantError("fit: bounds of " + name + " exceed the parameter's valid range");
    for (std::size_t j = 0; j < i; ++j)
      if (free_params[j] == free_params[i]) throw InvariantError("fit: duplicate parameter " + name);
  }
  for (const auto& s : series) s.validate();
}

Eigen::VectorXd FitProblem::lower() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(bounds.size()));
  for (std::size_t i = 0; i < bounds.size(); ++i) v[static_cast<Eigen::Index>(i)] = bounds[i].lo;
  return v;
}

Eigen::VectorXd FitProblem::upper() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(bounds.size()));
  for (std::size_t i = 0; i < bounds.size(); ++i) v[static_cast<Eigen::Index>(i)] = bounds[i].hi;
  return v;
}

Params apply_params(const Params& base, const std::vector<FreeParam>& free,
                    const Eigen::VectorXd& values) {
  Params p = base;
  for (std::size_t i = 0; i < free.size(); ++i) {
    const double v = values[static_cast<Eigen::Index>(i)];
    switch (free[i]) {
      case FreeParam::kFront: p.k_front = v; break;
      case FreeParam::kRear: p.k_rear = v; break;
      case FreeParam::kBeta: p.beta = v; break;
    }
  }
  return p;
}

double interpolate_heading(const Trajectory& trajectory, double time_s) {
  const auto& samples = trajectory.samples;
  if (samples.empty()) throw InvariantError("interpolate_heading: empty trajectory");
  const double pos = time_s * 2.0 * trajectory.scenario.params.frequency_hz;
  if (pos <= 0) return samples.front().heading_deg;
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= samples.size()) return samples.back().heading_deg;
  const double frac = pos - static_cast<double>(i);
  const double h0 = samples[i].heading_deg;
  const double h1 = samples[i + 1].heading_deg;
  return wrap_deg(h0 + frac * wrap_deg(h1 - h0));
}

double loss(const FitProblem& problem, const Eigen::VectorXd& candidate) {
  const Eigen::VectorXd projected = candidate.cwiseMax(problem.lower()).cwiseMin(problem.upper());
  const double penalty = 1e6 * (candidate - projected).squaredNorm();

  double sse = 0;
  for (const auto& series : problem.series) {
    if (series.points.empty()) continue;
    Scenario sc = series.scenario;
    sc.params = apply_params(sc.params, problem.free_params, projected);
    const Trajectory traj = run(sc);
    for (const auto& obs : series.points) {
      const double r = wrap_deg(interpolate_heading(traj, obs.time_s) - obs.heading_deg);
      sse += r * r;
    }
  }
  return sse + penalty;
}

FitResult minimize_golden(const std::function<double(double)>& objective, double lo, double hi,
                          const GoldenOptions& options) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  FitResult res;
  double best_x = lo;
  double best_f = std::numeric_limits<double>::infinity();
  auto eval = [&](double x) {
    const double f = objective(x);
    ++res.evaluations;
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
    return f;
  };

  double a = lo;
  double b = hi;
  eval(a);
  eval(b);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  res.best_history.push_back(best_f);
  while (b - a >= options.bracket_tol && res.evaluations < options.max_evaluations) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
    res.best_history.push_back(best_f);
  }
  res.converged = b - a < options.bracket_tol;
  res.params = Eigen::VectorXd::Constant(1, best_x);
  res.sse = best_f;
  return res;
}

namespace {

void finish(const FitProblem& problem, FitResult& res) {
  res.params = res.params.cwiseMax(problem.lower()).cwiseMin(problem.upper());
  res.sse = loss(problem, res.params);
  res.notes = identifiability_notes(problem, res.params);
}

}  // namespace

FitResult fit_golden(const FitProblem& problem, const GoldenOptions& options) {
  if (problem.free_params.size() != 1)
    throw ArityError("fit_golden needs exactly one free parameter, got " +
                     std::to_string(problem.free_params.size()));
  problem.validate();
  const Bounds b = problem.bounds.front();
  FitResult res = minimize_golden(
      [&](double x) { return loss(problem, Eigen::VectorXd::Constant(1, x)); }, b.lo, b.hi,
      options);
  finish(problem, res);
  return res;
}

FitResult minimize_nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                               const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                               const NelderMeadOptions& opt) {
  const Eigen::Index n = lower.size();
  if (n == 0) throw ArityError("Nelder-Mead needs at least one free parameter");

  FitResult res;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++res.evaluations;
    return objective(x);
  };

  std::vector<Eigen::VectorXd> simplex;
  std::vector<double> values;
  const Eigen::VectorXd centre = 0.5 * (lower + upper);
  simplex.push_back(centre);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = centre;
    v[i] += opt.initial_offset * (upper[i] - lower[i]);
    simplex.push_back(v);
  }
  for (const auto& v : simplex) values.push_back(eval(v));

  std::vector<std::size_t> order(simplex.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Eigen::VectorXd> s;
    std::vector<double> f;
    for (std::size_t i : order) {
      s.push_back(simplex[i]);
      f.push_back(values[i]);
    }
    simplex = std::move(s);
    values = std::move(f);
  };
  auto diameter = [&] {
    double d = 0;
    for (std::size_t i = 0; i < simplex.size(); ++i)
      for (std::size_t j = i + 1; j < simplex.size(); ++j)
        d = std::max(d, (simplex[i] - simplex[j]).norm());
    return d;
  };

  sort_simplex();
  res.best_history.push_back(values.front());
  const std::size_t worst = simplex.size() - 1;

  while (true) {
    if (diameter() < opt.diameter_tol || values.back() - values.front() < opt.spread_tol) {
      res.converged = true;
      break;
    }
    if (res.evaluations >= opt.max_evaluations) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < worst; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(worst);

    const Eigen::VectorXd xr = centroid + opt.reflection * (centroid - simplex[worst]);
    const double fr = eval(xr);
    if (fr < values.front()) {
      const Eigen::VectorXd xe = centroid + opt.expansion * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
    } else if (fr < values[worst - 1]) {
      simplex[worst] = xr;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + opt.contraction * (xr - centroid))
                                         : Eigen::VectorXd(centroid + opt.contraction *
                                                                          (simplex[worst] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : values[worst])) {
        simplex[worst] = xc;
        values[worst] = fc;
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i] = simplex[0] + opt.shrink * (simplex[i] - simplex[0]);
          values[i] = eval(simplex[i]);
        }
      }
    }
    sort_simplex();
    res.best_history.push_back(values.front());
  }

  res.params = simplex.front();
  res.sse = values.front();
  return res;
}

FitResult fit_nelder_mead(const FitProblem& problem, const NelderMeadOptions& options) {
  problem.validate();
  FitResult res = minimize_nelder_mead([&](const Eigen::VectorXd& x) { return loss(problem, x); },
                                       problem.lower(), problem.upper(), options);
  finish(problem, res);
  return res;
}

Eigen::MatrixXd normalized_hessian(const FitProblem& problem, const Eigen::VectorXd& at) {
  const Eigen::Index n = at.size();
  const Eigen::VectorXd lo = problem.lower();
  const Eigen::VectorXd width = problem.upper() - lo;
  const double h = 1e-3;

  // Stencil centre pulled inside the box so no probe is penalised.
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ui = width[i] > 0 ? (at[i] - lo[i]) / width[i] : 0.5;
    u[i] = std::clamp(ui, 2 * h, 1 - 2 * h);
  }
  auto f = [&](const Eigen::VectorXd& unit) {
    return loss(problem, (lo.array() + unit.array() * width.array()).matrix());
  };

  Eigen::MatrixXd hess(n, n);
  const double f0 = f(u);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd up = u, dn = u;
    up[i] += h;
    dn[i] -= h;
    hess(i, i) = (f(up) - 2 * f0 + f(dn)) / (h * h);
    for (Eigen::Index j = 0; j < i; ++j) {
      Eigen::VectorXd pp = u, pm = u, mp = u, mm = u;
      pp[i] += h, pp[j] += h;
      pm[i] += h, pm[j] -= h;
      mp[i] -= h, mp[j] += h;
      mm[i] -= h, mm[j] -= h;
      hess(i, j) = hess(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
    }
  }
  return hess;
}

std::vector<std::string> identifiability_notes(const FitProblem& problem,
                                               const Eigen::VectorXd& at, double ratio) {
  std::vector<std::string> notes;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normalized_hessian(problem, at));
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double largest = lambda.cwiseAbs().maxCoeff();
  if (!(largest > 0)) {
    notes.push_back("near-zero curvature: loss is flat around the fitted parameters");
    return notes;
  }
  if (lambda.size() < 2) return notes;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda[k] > ratio * largest) continue;
    std::ostringstream os;
    os << "near-zero curvature (relative " << format_number(lambda[k] / largest, 3)
       << ") along direction {";
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      if (i) os << ", ";
      os << param_name(problem.free_params[static_cast<std::size_t>(i)]) << ": "
         << format_number(eig.eigenvectors()(i, k), 3);
    }
    os << "}: parameters weakly identifiable from heading data";
    notes.push_back(os.str());
  }
  return notes;
}

}  // namespace groovegait
