/// Power-law kernel omega_beta(x) = x^(beta-1)/Gamma(beta), its exact moments
/// against the local linear-in-time basis, and the Caputo derivative of
/// power functions.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracdg/quadrature.hpp"

namespace fracdg {

/// omega_beta(x) = x^(beta-1) / Gamma(beta) for x >= 0, beta > 0.
/// x = 0 is admitted only for beta >= 1 (value 0, or 1 when beta = 1).
inline double omega(double beta, double x) {
  if (!(beta > 0.0)) throw std::domain_error("omega: beta must be positive");
  if (x < 0.0) throw std::domain_error("omega: negative argument");
  if (x == 0.0) {
    if (beta > 1.0) return 0.0;
    if (beta == 1.0) return 1.0;
    throw std::domain_error("omega: singular at x = 0 for beta < 1");
  }
  return std::pow(x, beta - 1.0) / std::tgamma(beta);
}

/// Raw kernel moments R_q = integral over [t_left, t_right] of
/// (t - t_left)^q * omega_beta(t - a) dt for q = 0..maxq.
struct RawMoments {
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

namespace detail {

// A run works with a handful of kernel indices; avoid re-evaluating the
// gamma function for every history moment.
inline long double cached_gamma_l(long double beta) {
  thread_local long double b0 = -1.0L, v0 = 0.0L, b1 = -1.0L, v1 = 0.0L;
  thread_local bool next = false;
  if (beta == b0) return v0;
  if (beta == b1) return v1;
  const long double g = tgammal(beta);
  if (next) {
    b0 = beta;
    v0 = g;
  } else {
    b1 = beta;
    v1 = g;
  }
  next = !next;
  return g;
}

// Closed-form integration-by-parts recurrence, evaluated in extended
// precision: the subtractions amplify rounding by ~(gap/k)^q, which long
// double keeps below 1e-13 for gap <= k.
inline RawMoments raw_moments_closed(double t_left, double t_right, double a, double beta,
                                     int maxq) {
  const long double k = static_cast<long double>(t_right) - t_left;
  const long double xr = static_cast<long double>(t_right) - a;
  const long double xl = static_cast<long double>(t_left) - a;
  const long double g1 = cached_gamma_l(static_cast<long double>(beta) + 1.0L);
  const long double g2 = g1 * (beta + 1.0L);
  const long double g3 = g2 * (beta + 2.0L);

  const long double pr = powl(xr, static_cast<long double>(beta));
  const long double pl = (xl > 0.0L) ? powl(xl, static_cast<long double>(beta)) : 0.0L;

  // omega_{beta+m}(x) = x^{beta+m-1} / Gamma(beta+m)
  const long double om1r = pr / g1, om1l = pl / g1;
  const long double om2r = pr * xr / g2, om2l = pl * xl / g2;
  const long double om3r = pr * xr * xr / g3, om3l = pl * xl * xl / g3;

  const long double w0_b = om1r - om1l;  // W0(beta)
  RawMoments m;
  m.r0 = static_cast<double>(w0_b);
  if (maxq >= 1) {
    const long double w0_b1 = om2r - om2l;           // W0(beta+1)
    const long double w1_b = k * om1r - w0_b1;       // W1(beta)
    m.r1 = static_cast<double>(w1_b);
    if (maxq >= 2) {
      const long double w0_b2 = om3r - om3l;         // W0(beta+2)
      const long double w1_b1 = k * om2r - w0_b2;    // W1(beta+1)
      const long double w2_b = k * k * om1r - 2.0L * w1_b1;
      m.r2 = static_cast<double>(w2_b);
    }
  }
  return m;
}

// Far-field branch: the integrand is analytic on the interval (the branch
// point t = a lies at least one interval-width away), so a fixed Gauss rule
// is accurate to machine precision while the recurrence would cancel.
inline RawMoments raw_moments_gauss(double t_left, double t_right, double a, double beta) {
  const double k = t_right - t_left;
  const double ratio = (t_left - a) / k;
  const int n = ratio <= 4.0 ? 16 : (ratio <= 16.0 ? 12 : 8);
  const auto rule = gauss_rule(n);
  const double mid = 0.5 * (t_left + t_right);
  const double half = 0.5 * k;
  const double inv_gamma =
      static_cast<double>(1.0L / cached_gamma_l(static_cast<long double>(beta)));
  RawMoments m;
  for (const auto& gp : rule) {
    const double t = mid + half * gp.node;
    const double om = std::pow(t - a, beta - 1.0) * inv_gamma;
    const double y = t - t_left;
    const double w = gp.weight * half * om;
    m.r0 += w;
    m.r1 += w * y;
    m.r2 += w * y * y;
  }
  return m;
}

}  // namespace detail

/// All raw moments R_0..R_maxq in one evaluation.
inline RawMoments kernel_raw_moments(double t_left, double t_right, double a, double beta,
                                     int maxq = 2) {
  if (!(beta > 0.0)) throw std::domain_error("kernel_raw_moments: beta must be positive");
  if (a > t_left) throw std::domain_error("kernel_raw_moments: anchor must satisfy a <= t_left");
  if (!(t_right > t_left)) throw std::domain_error("kernel_raw_moments: empty interval");
  if (maxq < 0 || maxq > 2) throw std::domain_error("kernel_raw_moments: q outside {0,1,2}");
  const double k = t_right - t_left;
  if (t_left - a <= k) return detail::raw_moments_closed(t_left, t_right, a, beta, maxq);
  return detail::raw_moments_gauss(t_left, t_right, a, beta);
}

/// J_q = integral over [t_left, t_right] of ((t - t_left)/k)^q * omega_beta(t - a) dt.
/// The weak singularity at t = a (when a = t_left, beta < 1) is covered by the
/// closed form; no quadrature is involved on that path.
inline double kernel_moment(double t_left, double t_right, double a, double beta, int q) {
  const RawMoments m = kernel_raw_moments(t_left, t_right, a, beta, q);
  const double k = t_right - t_left;
  switch (q) {
    case 0: return m.r0;
    case 1: return m.r1 / k;
    default: return m.r2 / (k * k);
  }
}

/// Moments of the endpoint Lagrange basis L0 = 1 - psi, L1 = psi against
/// omega_beta(t - a): the form every term of the stepper needs.
struct BasisMoments {
  double l0 = 0.0;
  double l1 = 0.0;
};

inline BasisMoments kernel_basis_moments(double t_left, double t_right, double a, double beta) {
  const RawMoments m = kernel_raw_moments(t_left, t_right, a, beta, 1);
  const double j1 = m.r1 / (t_right - t_left);
  return {m.r0 - j1, j1};
}

/// Caputo derivative of s -> s^sigma evaluated at t:
/// Gamma(sigma+1)/Gamma(sigma+1-mu) * t^(sigma-mu).
inline double caputo_power(double mu, double sigma, double t) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("caputo_power: mu outside (0,1)");
  if (!(sigma > 0.0)) throw std::domain_error("caputo_power: sigma must be positive");
  if (!(t > 0.0)) throw std::domain_error("caputo_power: t must be positive");
  return std::tgamma(sigma + 1.0) / std::tgamma(sigma + 1.0 - mu) * std::pow(t, sigma - mu);
}

/// Fractional order mu in (0,1); rejects anything else.
struct FractionalOrder {
  double mu;
  explicit FractionalOrder(double m) : mu(m) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("FractionalOrder: mu outside (0,1)");
  }
};

}  // namespace fracdg
