/// Study drivers: fine-grid maximum-norm errors, temporal and spatial
/// convergence sweeps, and the run configuration they share.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdg/dg_stepper.hpp"
#include "fracdg/problems.hpp"
#include "fracdg/report.hpp"
#include "fracdg/time_mesh.hpp"

namespace fracdg {

struct StudyConfig {
  std::string problem = "paper";
  double mu = 0.5;
  double T = 1.0;
  double gamma = 1.0;
  std::vector<int> n_list = {10, 20, 40, 80, 160, 320};
  int m_elements = 4096;  // spatial resolution for time studies
  std::vector<int> m_list = {10, 20, 40, 80, 160};
  int space_n = 2000;        // time resolution for space studies
  double space_gamma = 0.0;  // 0: pick max(1, 2/sigma) from the problem
  int fine_m = 10;
  double error_rel = 0.05;
  double rate_abs = 0.05;
  std::string output;
  std::string reference;
  std::string u0_mode = "ritz";
};

inline InitialValue parse_initial_value(const std::string& mode) {
  if (mode == "ritz") return InitialValue::ritz;
  if (mode == "interp") return InitialValue::interpolate;
  if (mode == "l2") return InitialValue::l2;
  throw std::invalid_argument("unknown u0 mode '" + mode + "' (ritz|interp|l2)");
}

/// max over the fine grid of || U(t) - u(.,t) ||_{L2}. For problems with a
/// separable exact solution the spatial profile is cached at the fixed
/// element quadrature points, which reproduces the generic evaluation to
/// rounding while skipping per-point transcendentals.
inline double fine_grid_error(const ProblemSpec& problem, const SpaceGrid& grid,
                              const DgSolution& sol, int m) {
  if (!problem.has_exact())
    throw std::invalid_argument("fine_grid_error: problem has no exact solution");
  const std::vector<double> pts = fine_grid(sol.mesh, m);
  const auto rule = gauss_rule(5);
  const int M = grid.elements;
  const double h = grid.h;

  const bool separable =
      static_cast<bool>(problem.exact_time_factor) && static_cast<bool>(problem.exact_profile);
  std::vector<double> profile;
  if (separable) {
    profile.reserve(static_cast<std::size_t>(M) * rule.size());
    for (int e = 0; e < M; ++e) {
      const double mid = grid.node(e) + 0.5 * h;
      for (const auto& gp : rule) profile.push_back(problem.exact_profile(mid + 0.5 * h * gp.node));
    }
  }

  double worst = 0.0;
  DofVector w;
  for (const double t : pts) {
    sol.evaluate_into(t, w);
    double acc = 0.0;
    if (separable) {
      const double c = problem.exact_time_factor(t);
      std::size_t idx = 0;
      for (int e = 0; e < M; ++e) {
        const double wl = (e > 0) ? w[e - 1] : 0.0;
        const double wr = (e + 1 < M) ? w[e] : 0.0;
        for (const auto& gp : rule) {
          const double psi = 0.5 * (1.0 + gp.node);
          const double diff = wl * (1.0 - psi) + wr * psi - c * profile[idx++];
          acc += 0.5 * h * gp.weight * diff * diff;
        }
      }
    } else {
      for (int e = 0; e < M; ++e) {
        const double wl = (e > 0) ? w[e - 1] : 0.0;
        const double wr = (e + 1 < M) ? w[e] : 0.0;
        const double mid = grid.node(e) + 0.5 * h;
        for (const auto& gp : rule) {
          const double x = mid + 0.5 * h * gp.node;
          const double psi = (x - grid.node(e)) / h;
          const double diff = wl * (1.0 - psi) + wr * psi - problem.exact(x, t);
          acc += 0.5 * h * gp.weight * diff * diff;
        }
      }
    }
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

namespace detail {

inline void require_doubling(const std::vector<int>& keys, const char* what) {
  if (keys.empty()) throw std::invalid_argument(std::string(what) + ": empty refinement list");
  for (std::size_t i = 1; i < keys.size(); ++i)
    if (keys[i] != 2 * keys[i - 1])
      throw std::invalid_argument(std::string(what) +
                                  ": refinement list must double at each entry");
}

}  // namespace detail

/// Per-node CSV export: t and the interior dof values (left limits; the
/// t = 0 row carries U^0).
inline void export_solution_csv(const DgSolution& sol, std::ostream& os) {
  os << "t";
  for (int i = 0; i < sol.dofs; ++i) os << ",u" << (i + 1);
  os << '\n';
  char buf[32];
  auto row = [&](double t, const DofVector& v) {
    std::snprintf(buf, sizeof buf, "%.17g", t);
    os << buf;
    for (double x : v) {
      std::snprintf(buf, sizeof buf, "%.17g", x);
      os << ',' << buf;
    }
    os << '\n';
  };
  row(0.0, sol.u0);
  for (int n = 1; n <= sol.intervals(); ++n) row(sol.mesh.node(n), sol.uend[n - 1]);
}

/// Temporal sweep at fixed (large) M: one solve per N in n_list.
inline ConvergenceReport time_study(const StudyConfig& cfg) {
  detail::require_doubling(cfg.n_list, "time_study");
  const SpaceGrid grid(cfg.m_elements);
  const ProblemSpec problem = make_problem(cfg.problem, cfg.mu, grid);
  StepperOptions opts;
  opts.initial = parse_initial_value(cfg.u0_mode);

  ConvergenceReport report;
  report.label = "time mu=" + std::to_string(cfg.mu) + " gamma=" + std::to_string(cfg.gamma);
  for (const int N : cfg.n_list) {
    const TimeMesh mesh = graded_mesh(N, cfg.gamma, cfg.T);
    const DgSolution sol = run(problem, grid, mesh, opts);
    ReportRow row;
    row.key = N;
    row.error = fine_grid_error(problem, grid, sol, cfg.fine_m);
    report.rows.push_back(row);
  }
  append_rates(report);
  return report;
}

/// Spatial sweep with the time mesh refined far past the spatial error.
inline ConvergenceReport space_study(const StudyConfig& cfg) {
  detail::require_doubling(cfg.m_list, "space_study");
  StepperOptions opts;
  opts.initial = parse_initial_value(cfg.u0_mode);

  ConvergenceReport report;
  report.label = "space mu=" + std::to_string(cfg.mu);
  for (const int M : cfg.m_list) {
    const SpaceGrid grid(M);
    const ProblemSpec problem = make_problem(cfg.problem, cfg.mu, grid);
    double g = cfg.space_gamma;
    if (g <= 0.0) g = (problem.sigma > 0.0) ? std::max(1.0, 2.0 / problem.sigma) : 2.0;
    const TimeMesh mesh = graded_mesh(cfg.space_n, g, cfg.T);
    const DgSolution sol = run(problem, grid, mesh, opts);
    ReportRow row;
    row.key = M;
    row.error = fine_grid_error(problem, grid, sol, cfg.fine_m);
    report.rows.push_back(row);
  }
  append_rates(report);
  return report;
}

}  // namespace fracdg
