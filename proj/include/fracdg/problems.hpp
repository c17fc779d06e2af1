/// Problem registry: diffusivities, forcings, initial data and exact
/// solutions, including the manufactured benchmark
/// u(x,t) = (1 + t^(1-mu)) sin(pi x) with A(x,t) = 1 + t^(3/2).
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdg/fem1d.hpp"
#include "fracdg/kernel.hpp"
#include "fracdg/quadrature.hpp"

namespace fracdg {

/// One separable forcing contribution g(t) * s(x). The spatial part is either
/// a pointwise profile (assembled into a load vector per grid) or a direct
/// load recipe. `singular_power`, when set, declares the leading t -> 0
/// power of g (possibly 0 for a finite but non-smooth factor) so the stepper
/// can grade its time quadrature; absent means g is smooth on [0, T].
struct ForcingTerm {
  std::function<double(double t)> time_factor;
  std::function<double(double x)> space_profile;
  std::function<DofVector(const SpaceGrid&)> load_builder;
  std::optional<double> singular_power;
};

struct ProblemSpec {
  double mu = 0.5;
  double T = 1.0;
  CoefficientField A;
  std::vector<ForcingTerm> forcing;

  std::function<double(double x, double t)> f;  // pointwise forcing, when it exists
  std::optional<double> f_singular_power;

  std::function<double(double x)> u0;
  std::function<double(double x)> u0_prime;

  std::function<double(double x, double t)> exact;
  std::function<double(double x, double t)> exact_dt;
  std::function<double(double x, double t)> exact_dxx;
  // Separable form of the exact solution, used by the fast error evaluator.
  std::function<double(double t)> exact_time_factor;
  std::function<double(double x)> exact_profile;

  double sigma = 0.0;  // declared temporal regularity exponent; 0 = none

  bool has_exact() const { return static_cast<bool>(exact); }
};

/// The manufactured benchmark problem on (0,1) x (0,1].
inline ProblemSpec paper_example(double mu) {
  FractionalOrder order(mu);
  constexpr double pi = std::numbers::pi;
  const double caputo_coef = std::tgamma(2.0 - mu) / std::tgamma(2.0 - 2.0 * mu);

  ProblemSpec p;
  p.mu = order.mu;
  p.T = 1.0;

  p.A.value = [](double, double t) { return 1.0 + t * std::sqrt(t); };
  p.A.time_only = [](double t) { return 1.0 + t * std::sqrt(t); };
  p.A.a_min = 1.0;
  p.A.a_max = 2.0;

  p.u0 = [](double x) { return std::sin(pi * x); };
  p.u0_prime = [](double x) { return pi * std::cos(pi * x); };

  p.exact = [mu](double x, double t) { return (1.0 + std::pow(t, 1.0 - mu)) * std::sin(pi * x); };
  p.exact_dt = [mu](double x, double t) {
    return (1.0 - mu) * std::pow(t, -mu) * std::sin(pi * x);
  };
  p.exact_dxx = [mu](double x, double t) {
    return -pi * pi * (1.0 + std::pow(t, 1.0 - mu)) * std::sin(pi * x);
  };
  p.exact_time_factor = [mu](double t) { return 1.0 + std::pow(t, 1.0 - mu); };
  p.exact_profile = [](double x) { return std::sin(pi * x); };

  // pow covers the t = 0 limits: 0 for mu < 1/2, 1 for mu = 1/2, inf above.
  auto g = [mu, caputo_coef](double t) {
    return caputo_coef * std::pow(t, 1.0 - 2.0 * mu) +
           pi * pi * (1.0 + t * std::sqrt(t)) * (1.0 + std::pow(t, 1.0 - mu));
  };
  p.f = [g](double x, double t) { return g(t) * std::sin(pi * x); };
  p.f_singular_power = std::min(0.0, 1.0 - 2.0 * mu);

  ForcingTerm term;
  term.time_factor = g;
  term.space_profile = p.exact_profile;
  term.singular_power = std::min(0.0, 1.0 - 2.0 * mu);
  p.forcing.push_back(std::move(term));

  p.sigma = 1.0 - mu;
  return p;
}

/// Same diffusivity and initial data but f = 0; drives the stability checks.
inline ProblemSpec paper_homogeneous(double mu) {
  ProblemSpec p = paper_example(mu);
  p.forcing.clear();
  p.f = nullptr;
  p.f_singular_power.reset();
  p.exact = nullptr;
  p.exact_dt = nullptr;
  p.exact_dxx = nullptr;
  p.exact_time_factor = nullptr;
  p.exact_profile = nullptr;
  p.sigma = 0.0;
  return p;
}

inline ProblemSpec zero_problem(double mu) {
  FractionalOrder order(mu);
  ProblemSpec p;
  p.mu = order.mu;
  p.A = constant_coefficient(1.0);
  p.u0 = [](double) { return 0.0; };
  p.u0_prime = [](double) { return 0.0; };
  p.exact = [](double, double) { return 0.0; };
  p.exact_time_factor = [](double) { return 0.0; };
  p.exact_profile = [](double) { return 0.0; };
  return p;
}

/// Piecewise-constant derivative of the P1 interpolant (element interiors).
inline double p1_interpolant_deriv(const SpaceGrid& grid, const DofVector& w, double x) {
  int e = static_cast<int>(x / grid.h);
  if (e >= grid.elements) e = grid.elements - 1;
  if (e < 0) e = 0;
  const double wl = (e > 0) ? w[e - 1] : 0.0;
  const double wr = (e + 1 < grid.elements) ? w[e] : 0.0;
  return (wr - wl) / grid.h;
}

/// Evaluate the P1 interpolant of interior nodal values on a grid.
inline double p1_interpolant(const SpaceGrid& grid, const DofVector& w, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  int e = static_cast<int>(x / grid.h);
  if (e >= grid.elements) e = grid.elements - 1;
  const double psi = (x - grid.node(e)) / grid.h;
  const double wl = (e > 0) ? w[e - 1] : 0.0;
  const double wr = (e + 1 < grid.elements) ? w[e] : 0.0;
  return wl * (1.0 - psi) + wr * psi;
}

/// Consistency probe: exact solution u(x,t) = t * Phi(x) with Phi the P1
/// interpolant of phi, A = 1, and the forcing supplied weakly so the
/// discrete scheme reproduces u up to solver precision.
inline ProblemSpec polynomial_probe(double mu, const SpaceGrid& grid, DofVector phi) {
  FractionalOrder order(mu);
  if (static_cast<int>(phi.size()) != grid.dofs())
    throw std::invalid_argument("polynomial_probe: phi size mismatch");

  ProblemSpec p;
  p.mu = order.mu;
  p.A = constant_coefficient(1.0);
  p.u0 = [](double) { return 0.0; };
  p.u0_prime = [](double) { return 0.0; };

  const double inv_gamma2m = 1.0 / std::tgamma(2.0 - mu);
  ForcingTerm caputo_term;
  caputo_term.time_factor = [mu, inv_gamma2m](double t) {
    return t > 0.0 ? std::pow(t, 1.0 - mu) * inv_gamma2m : 0.0;
  };
  caputo_term.load_builder = [phi](const SpaceGrid& g) {
    return mass_matrix(g).apply(phi);
  };
  caputo_term.singular_power = 1.0 - mu;
  p.forcing.push_back(std::move(caputo_term));

  ForcingTerm stiffness_term;
  stiffness_term.time_factor = [](double t) { return t; };
  stiffness_term.load_builder = [phi](const SpaceGrid& g) {
    return unit_stiffness(g).apply(phi);
  };
  p.forcing.push_back(std::move(stiffness_term));

  auto grid_copy = grid;
  auto phi_eval = [grid_copy, phi](double x) { return p1_interpolant(grid_copy, phi, x); };
  p.exact = [phi_eval](double x, double t) { return t * phi_eval(x); };
  p.exact_time_factor = [](double t) { return t; };
  p.exact_profile = phi_eval;
  p.sigma = 1.0;
  return p;
}

using ProblemBuilder = std::function<ProblemSpec(double mu, const SpaceGrid& grid)>;

/// Name -> builder map so run configurations can select problems by string.
inline const std::map<std::string, ProblemBuilder>& problem_registry() {
  static const std::map<std::string, ProblemBuilder> registry = {
      {"paper", [](double mu, const SpaceGrid&) { return paper_example(mu); }},
      {"paper-homogeneous",
       [](double mu, const SpaceGrid&) { return paper_homogeneous(mu); }},
      {"zero", [](double mu, const SpaceGrid&) { return zero_problem(mu); }},
      {"probe-sin",
       [](double mu, const SpaceGrid& grid) {
         DofVector phi = interpolate(grid, [](double x) { return std::sin(std::numbers::pi * x); });
         return polynomial_probe(mu, grid, std::move(phi));
       }},
  };
  return registry;
}

inline ProblemSpec make_problem(const std::string& name, double mu, const SpaceGrid& grid) {
  auto it = problem_registry().find(name);
  if (it == problem_registry().end())
    throw std::invalid_argument("unknown problem '" + name + "'");
  return it->second(mu, grid);
}

/// Caputo derivative of the exact solution at (x, t) by graded quadrature of
/// the defining integral; the independent reference for residual self-tests.
inline double caputo_of_exact(const ProblemSpec& p, double x, double t, double tol) {
  if (!p.exact_dt) throw std::invalid_argument("caputo_of_exact: exact_dt unavailable");
  const double mid = 0.5 * t;
  // u_t may blow up like s^(sigma-1) at s = 0; the kernel is singular at s = t.
  const double left_exp = (p.sigma > 0.0) ? p.sigma - 1.0 : 0.0;
  const double left = oracle_distance_singular(
      [&](double s) { return omega(1.0 - p.mu, t - s) * p.exact_dt(x, s); }, mid, tol, left_exp);
  const double right = oracle_distance_singular(
      [&](double zeta) { return omega(1.0 - p.mu, zeta) * p.exact_dt(x, t - zeta); }, t - mid,
      tol, -p.mu);
  return left + right;
}

/// Caputo(u) - (A u_x)_x - f at one sample point; needs exact_dt, exact_dxx
/// and an x-independent coefficient.
inline double pde_residual(const ProblemSpec& p, double x, double t, double tol = 1e-10) {
  if (!(p.exact_dxx && p.A.time_only && p.f))
    throw std::invalid_argument("pde_residual: problem lacks closed-form pieces");
  const double caputo = caputo_of_exact(p, x, t, tol);
  const double diffusion = p.A.time_only(t) * p.exact_dxx(x, t);
  return caputo - diffusion - p.f(x, t);
}

}  // namespace fracdg
