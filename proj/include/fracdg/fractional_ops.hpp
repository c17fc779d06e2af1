/// Scalar piecewise polynomials in time (possibly discontinuous at the mesh
/// nodes) and the Riemann-Liouville operators acting on them: pointwise
/// ^R D^mu via the jump expansion, I^alpha in closed form through kernel
/// moments, and the quadrature composition I^mu(^R D^mu v). These back the
/// identity / positivity / continuity verification suites.
///
/// Evaluation points are addressed as (interval, offset from the interval's
/// left node): every kernel argument is then a clean sum of a node distance
/// and the offset, so the weakly singular factors keep full precision all
/// the way into the graded quadrature levels.
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "fracdg/kernel.hpp"
#include "fracdg/quadrature.hpp"
#include "fracdg/time_mesh.hpp"

namespace fracdg {

/// Scalar function on (0, T], polynomial of degree <= 2 on each interval in
/// the local coordinate psi = (t - t_{n-1})/k_n; discontinuities allowed.
struct PiecewisePoly {
  struct Coeffs {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double eval(double psi) const { return c0 + psi * (c1 + psi * c2); }
  };
  TimeMesh mesh;
  std::vector<Coeffs> pieces;

  /// Left-limit convention at interior nodes; t = 0 gives the right limit.
  double eval(double t) const {
    const int n = mesh.interval_of(t);
    const double psi = (t - mesh.node(n - 1)) / mesh.step(n);
    return pieces[n - 1].eval(psi);
  }
  double eval_local(int interval, double psi) const { return pieces[interval - 1].eval(psi); }
  double right_limit(int j) const { return pieces[j].c0; }
  double left_limit(int j) const { return pieces[j - 1].eval(1.0); }
  /// [v]^j = v(t_j^+) - v(t_j^-), 1 <= j <= N-1.
  double jump(int j) const { return right_limit(j) - left_limit(j); }
};

inline PiecewisePoly random_dg_linear(const TimeMesh& mesh, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PiecewisePoly v;
  v.mesh = mesh;
  v.pieces.resize(mesh.intervals());
  for (auto& p : v.pieces) {
    p.c0 = dist(rng);
    p.c1 = dist(rng);
    p.c2 = 0.0;
  }
  return v;
}

inline PiecewisePoly random_continuous(const TimeMesh& mesh, std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PiecewisePoly v;
  v.mesh = mesh;
  v.pieces.resize(mesh.intervals());
  double left = dist(rng);
  for (auto& p : v.pieces) {
    p.c0 = left;
    p.c1 = dist(rng);
    p.c2 = (degree >= 2) ? dist(rng) : 0.0;
    left = p.eval(1.0);
  }
  return v;
}

namespace detail {

// integral of omega_beta(u) * c(psi) du over u in [u_lo, u_hi], where the
// piece's local coordinate decreases linearly from (u_hi - u_lo)/k at u_lo
// ... psi(u) = (u_hi - u) / k (reflected orientation), and k is the full
// piece width. Exact through the raw kernel moments.
inline double reflected_poly_integral(double beta, double u_lo, double u_hi, double k,
                                      const PiecewisePoly::Coeffs& c) {
  const RawMoments r = kernel_raw_moments(u_lo, u_hi, 0.0, beta, 2);
  const double w = u_hi - u_lo;
  const double m0 = r.r0;
  const double m1 = (w * r.r0 - r.r1) / k;
  const double m2 = (w * w * r.r0 - 2.0 * w * r.r1 + r.r2) / (k * k);
  return c.c0 * m0 + c.c1 * m1 + c.c2 * m2;
}

}  // namespace detail

/// I^alpha v at the point t_{i-1} + xi (0 < xi <= k_i), exact through the
/// closed-form kernel moments.
inline double il_at(const PiecewisePoly& v, double alpha, int interval, double xi) {
  const TimeMesh& mesh = v.mesh;
  const double base = mesh.node(interval - 1);
  double sum = 0.0;
  for (int j = 1; j < interval; ++j) {
    const double u_lo = (base - mesh.node(j)) + xi;
    const double u_hi = (base - mesh.node(j - 1)) + xi;
    sum += detail::reflected_poly_integral(alpha, u_lo, u_hi, mesh.step(j), v.pieces[j - 1]);
  }
  sum += detail::reflected_poly_integral(alpha, 0.0, xi, mesh.step(interval),
                                         v.pieces[interval - 1]);
  return sum;
}

inline double il_integral(const PiecewisePoly& v, double alpha, double t) {
  if (!(t > 0.0 && t <= v.mesh.T)) throw std::domain_error("il_integral: t outside (0, T]");
  const int n = v.mesh.interval_of(t);
  return il_at(v, alpha, n, t - v.mesh.node(n - 1));
}

/// ^R D^mu v at the point t_{i-1} + xi, via the jump expansion:
/// omega_{1-mu}(s) v(0+) + jump kernels + the integrated-derivative history,
/// all in closed form.
inline double rl_deriv_at(const PiecewisePoly& v, double mu, int interval, double xi) {
  const TimeMesh& mesh = v.mesh;
  const double base = mesh.node(interval - 1);
  double val = omega(1.0 - mu, base + xi) * v.right_limit(0);
  for (int j = 1; j < interval; ++j)
    val += omega(1.0 - mu, (base - mesh.node(j)) + xi) * v.jump(j);
  for (int j = 1; j < interval; ++j) {
    const double k = mesh.step(j);
    const auto& c = v.pieces[j - 1];
    const PiecewisePoly::Coeffs dc{c.c1 / k, 2.0 * c.c2 / k, 0.0};
    const double u_lo = (base - mesh.node(j)) + xi;
    const double u_hi = (base - mesh.node(j - 1)) + xi;
    val += detail::reflected_poly_integral(1.0 - mu, u_lo, u_hi, k, dc);
  }
  const double k = mesh.step(interval);
  const auto& c = v.pieces[interval - 1];
  const PiecewisePoly::Coeffs dc{c.c1 / k, 2.0 * c.c2 / k, 0.0};
  val += detail::reflected_poly_integral(1.0 - mu, 0.0, xi, k, dc);
  return val;
}

inline double rl_deriv(const PiecewisePoly& v, double mu, double s) {
  if (!(s > 0.0 && s <= v.mesh.T)) throw std::domain_error("rl_deriv: s outside (0, T]");
  const int n = v.mesh.interval_of(s);
  return rl_deriv_at(v, mu, n, s - v.mesh.node(n - 1));
}

namespace detail {

// Piece-by-piece composition of I^mu(^R D^mu v)(t); Rule is any
// distance-variable quadrature (adaptive oracle or the fixed graded rule).
// The integrand is singular like xi^{-mu} at each node (jump kernels) and
// like (t-s)^{mu-1} at s = t. Every piece splits at its midpoint: the left
// half grades into the jump kernel, the right half grades into the outer
// kernel's layer, whose scale is the distance from the piece's right node
// to t (arbitrarily thin when t sits just past the node).
template <class Rule>
double il_of_rl_compose(const PiecewisePoly& v, double mu, double t, Rule&& integrate) {
  const TimeMesh& mesh = v.mesh;
  const int n = mesh.interval_of(t);
  double sum = 0.0;
  for (int i = 1; i < n; ++i) {
    const double tau = t - mesh.node(i - 1);    // distance of t from the left node
    const double tau_r = t - mesh.node(i);      // ... from the right node
    const double k = mesh.step(i);
    const double half = 0.5 * k;
    sum += integrate(
        [&](double xi) { return omega(mu, tau - xi) * rl_deriv_at(v, mu, i, xi); }, half, -mu);
    sum += integrate(
        [&](double zeta) { return omega(mu, tau_r + zeta) * rl_deriv_at(v, mu, i, k - zeta); },
        k - half, 0.0);
  }
  const double tau = t - mesh.node(n - 1);
  const double half = 0.5 * tau;
  sum += integrate([&](double xi) { return omega(mu, tau - xi) * rl_deriv_at(v, mu, n, xi); },
                   half, -mu);
  sum += integrate(
      [&](double zeta) { return omega(mu, zeta) * rl_deriv_at(v, mu, n, tau - zeta); },
      tau - half, mu - 1.0);
  return sum;
}

}  // namespace detail

/// I^mu(^R D^mu v)(t) with every piece integrated by the adaptive oracle at
/// the given tolerance.
inline double il_of_rl_quadrature(const PiecewisePoly& v, double mu, double t, double tol) {
  return detail::il_of_rl_compose(v, mu, t, [tol](auto&& g, double width, double exponent) {
    return oracle_distance_singular(g, width, tol, exponent);
  });
}

/// Same composition with the fixed graded rule per piece. Far cheaper at a
/// fixed ~1e-9 accuracy; the identity sweep cross-checks it against
/// il_of_rl_quadrature on a subsample.
inline double il_of_rl_graded(const PiecewisePoly& v, double mu, double t, int levels = 32,
                              int panels = 3) {
  return detail::il_of_rl_compose(
      v, mu, t, [levels, panels](auto&& g, double width, double exponent) {
        return graded_distance_gauss(g, width, exponent, levels, 4, panels);
      });
}

/// integral over (0, t_upto] of f(interval, xi), piece by piece, declaring a
/// weak xi^exponent singularity at each interval's left node.
template <class F>
double integrate_mesh_distance(F&& f, const TimeMesh& mesh, int upto, double exponent,
                               double tol) {
  double sum = 0.0;
  for (int i = 1; i <= upto; ++i)
    sum += oracle_distance_singular([&](double xi) { return f(i, xi); }, mesh.step(i), tol,
                                    exponent);
  return sum;
}

/// Lemma constant of the positivity bound:
/// (pi a)^a / (1+a)^(1+a) * cos(a pi / 2).
inline double positivity_constant(double alpha) {
  return std::pow(std::numbers::pi * alpha, alpha) / std::pow(1.0 + alpha, 1.0 + alpha) *
         std::cos(alpha * std::numbers::pi / 2.0);
}

}  // namespace fracdg
