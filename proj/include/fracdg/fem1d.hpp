/// P1 finite elements on a uniform partition of (0,1) with homogeneous
/// Dirichlet conditions: mass / weighted stiffness assembly, load vectors,
/// the elliptic (Ritz) projector, spatial norms, and the local L2-in-time
/// projector onto linears.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "fracdg/quadrature.hpp"

namespace fracdg {

using DofVector = std::vector<double>;

/// Uniform partition of (0,1) into M elements; unknowns are the M-1 interior
/// nodal values, boundary values are identically zero.
struct SpaceGrid {
  int elements;
  double h;

  explicit SpaceGrid(int M) : elements(M), h(1.0 / M) {
    if (M < 2) throw std::domain_error("SpaceGrid: need at least 2 elements");
  }
  int dofs() const { return elements - 1; }
  double node(int i) const { return i * h; }  // i = 0..M
};

/// Time-and-space diffusivity with declared positivity bounds.
/// `time_only`, when set, marks A as x-independent: A(x,t) = time_only(t).
struct CoefficientField {
  std::function<double(double x, double t)> value;
  double a_min = 0.0;
  double a_max = 0.0;
  std::function<double(double t)> time_only;

  double operator()(double x, double t) const {
    return time_only ? time_only(t) : value(x, t);
  }
};

inline CoefficientField constant_coefficient(double c) {
  CoefficientField A;
  A.value = [c](double, double) { return c; };
  A.time_only = [c](double) { return c; };
  A.a_min = A.a_max = c;
  return A;
}

struct TridiagonalMatrix {
  std::vector<double> lower;  // lower[i] = A(i, i-1), lower[0] unused
  std::vector<double> diag;
  std::vector<double> upper;  // upper[i] = A(i, i+1), upper[n-1] unused

  TridiagonalMatrix() = default;
  explicit TridiagonalMatrix(int n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

  int size() const { return static_cast<int>(diag.size()); }

  void matvec(const DofVector& x, DofVector& y) const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
      double s = diag[i] * x[i];
      if (i > 0) s += lower[i] * x[i - 1];
      if (i + 1 < n) s += upper[i] * x[i + 1];
      y[i] = s;
    }
  }

  DofVector apply(const DofVector& x) const {
    DofVector y(size());
    matvec(x, y);
    return y;
  }

  /// Thomas elimination; the assembled operators here are strictly
  /// diagonally dominant or SPD, so no pivoting is required.
  DofVector solve(DofVector rhs) const {
    const int n = size();
    std::vector<double> c(n, 0.0);
    double piv = diag[0];
    if (piv == 0.0) throw std::runtime_error("TridiagonalMatrix::solve: zero pivot");
    c[0] = upper[0] / piv;
    rhs[0] /= piv;
    for (int i = 1; i < n; ++i) {
      piv = diag[i] - lower[i] * c[i - 1];
      if (piv == 0.0) throw std::runtime_error("TridiagonalMatrix::solve: zero pivot");
      c[i] = upper[i] / piv;
      rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
  }

  /// this += s * other (matching sparsity).
  void add_scaled(const TridiagonalMatrix& other, double s) {
    const int n = size();
    for (int i = 0; i < n; ++i) {
      lower[i] += s * other.lower[i];
      diag[i] += s * other.diag[i];
      upper[i] += s * other.upper[i];
    }
  }

  double quadratic_form(const DofVector& x) const {
    const int n = size();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = diag[i] * x[i];
      if (i > 0) row += lower[i] * x[i - 1];
      if (i + 1 < n) row += upper[i] * x[i + 1];
      s += x[i] * row;
    }
    return s;
  }
};

/// Exact P1 mass matrix: diag 2h/3, off-diagonals h/6.
inline TridiagonalMatrix mass_matrix(const SpaceGrid& grid) {
  TridiagonalMatrix m(grid.dofs());
  const double h = grid.h;
  for (int i = 0; i < m.size(); ++i) {
    m.diag[i] = 2.0 * h / 3.0;
    m.lower[i] = h / 6.0;
    m.upper[i] = h / 6.0;
  }
  m.lower[0] = 0.0;
  m.upper[m.size() - 1] = 0.0;
  return m;
}

/// Constant-coefficient stiffness (A = 1): diag 2/h, off-diagonals -1/h.
inline TridiagonalMatrix unit_stiffness(const SpaceGrid& grid) {
  TridiagonalMatrix m(grid.dofs());
  const double h = grid.h;
  for (int i = 0; i < m.size(); ++i) {
    m.diag[i] = 2.0 / h;
    m.lower[i] = -1.0 / h;
    m.upper[i] = -1.0 / h;
  }
  m.lower[0] = 0.0;
  m.upper[m.size() - 1] = 0.0;
  return m;
}

/// Weighted stiffness K(t)_ij = integral of A(x,t) phi_i' phi_j' dx,
/// 3-point Gauss per element. A nonpositive coefficient value at a
/// quadrature point is a hard error.
inline TridiagonalMatrix stiffness_matrix(const SpaceGrid& grid, double t,
                                          const CoefficientField& A) {
  if (A.time_only) {
    const double a = A.time_only(t);
    if (!(a > 0.0)) throw std::runtime_error("stiffness_matrix: nonpositive coefficient");
    TridiagonalMatrix m = unit_stiffness(grid);
    for (int i = 0; i < m.size(); ++i) {
      m.lower[i] *= a;
      m.diag[i] *= a;
      m.upper[i] *= a;
    }
    return m;
  }

  const int M = grid.elements;
  const double h = grid.h;
  const auto rule = gauss_rule(3);
  // a_e = integral of A over element e, e = 0..M-1
  std::vector<double> a_e(M, 0.0);
  for (int e = 0; e < M; ++e) {
    const double xl = grid.node(e);
    const double mid = xl + 0.5 * h;
    double s = 0.0;
    for (const auto& gp : rule) {
      const double val = A.value(mid + 0.5 * h * gp.node, t);
      if (!(val > 0.0)) throw std::runtime_error("stiffness_matrix: nonpositive coefficient");
      s += gp.weight * val;
    }
    a_e[e] = 0.5 * h * s;
  }
  TridiagonalMatrix m(grid.dofs());
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i < m.size(); ++i) {
    m.diag[i] = (a_e[i] + a_e[i + 1]) * inv_h2;
    if (i > 0) m.lower[i] = -a_e[i] * inv_h2;
    if (i + 1 < m.size()) m.upper[i] = -a_e[i + 1] * inv_h2;
  }
  return m;
}

/// Load entries integral of g(x) phi_i(x) dx, 5-point Gauss per element.
inline DofVector load_vector(const SpaceGrid& grid, const std::function<double(double)>& g) {
  const int M = grid.elements;
  const double h = grid.h;
  const auto rule = gauss_rule(5);
  DofVector r(grid.dofs(), 0.0);
  for (int e = 0; e < M; ++e) {
    const double xl = grid.node(e);
    const double mid = xl + 0.5 * h;
    for (const auto& gp : rule) {
      const double x = mid + 0.5 * h * gp.node;
      const double w = 0.5 * h * gp.weight * g(x);
      const double psi = (x - xl) / h;  // rises toward node e+1
      if (e > 0) r[e - 1] += w * (1.0 - psi);
      if (e + 1 < M) r[e] += w * psi;
    }
  }
  return r;
}

/// Ritz (elliptic) projection of v onto the P1 space w.r.t. a(t,.,.):
/// solves K(t) w = r with r_i = integral of A v' phi_i'. The derivative is
/// taken from dv when provided, else by central differences (step 1e-6).
inline DofVector ritz_project(const SpaceGrid& grid, const std::function<double(double)>& v,
                              const std::function<double(double)>& dv, double t,
                              const CoefficientField& A) {
  const int M = grid.elements;
  const double h = grid.h;
  const auto rule = gauss_rule(5);
  auto deriv = [&](double x) {
    if (dv) return dv(x);
    const double step = 1e-6;
    return (v(x + step) - v(x - step)) / (2.0 * step);
  };
  // c_e = integral over element e of A(x,t) v'(x) dx
  std::vector<double> c_e(M, 0.0);
  for (int e = 0; e < M; ++e) {
    const double mid = grid.node(e) + 0.5 * h;
    double s = 0.0;
    for (const auto& gp : rule) {
      const double x = mid + 0.5 * h * gp.node;
      s += gp.weight * A(x, t) * deriv(x);
    }
    c_e[e] = 0.5 * h * s;
  }
  DofVector rhs(grid.dofs());
  for (int i = 0; i < grid.dofs(); ++i) rhs[i] = (c_e[i] - c_e[i + 1]) / h;
  return stiffness_matrix(grid, t, A).solve(std::move(rhs));
}

/// Nodal interpolant coefficients of v.
inline DofVector interpolate(const SpaceGrid& grid, const std::function<double(double)>& v) {
  DofVector w(grid.dofs());
  for (int i = 1; i < grid.elements; ++i) w[i - 1] = v(grid.node(i));
  return w;
}

/// L2 projection onto the P1 space: solves M w = load(v).
inline DofVector l2_project(const SpaceGrid& grid, const std::function<double(double)>& v) {
  return mass_matrix(grid).solve(load_vector(grid, v));
}

/// || W - exact ||_{L2(0,1)} with W the P1 interpolant of w, 5-point Gauss
/// per element.
inline double l2_error(const SpaceGrid& grid, const DofVector& w,
                       const std::function<double(double)>& exact) {
  const int M = grid.elements;
  const double h = grid.h;
  const auto rule = gauss_rule(5);
  double acc = 0.0;
  for (int e = 0; e < M; ++e) {
    const double wl = (e > 0) ? w[e - 1] : 0.0;
    const double wr = (e + 1 < M) ? w[e] : 0.0;
    const double mid = grid.node(e) + 0.5 * h;
    for (const auto& gp : rule) {
      const double x = mid + 0.5 * h * gp.node;
      const double psi = (x - grid.node(e)) / h;
      const double diff = wl * (1.0 - psi) + wr * psi - exact(x);
      acc += 0.5 * h * gp.weight * diff * diff;
    }
  }
  return std::sqrt(acc);
}

/// sqrt(w^T K(t) w): the energy seminorm |.|_1 induced by a(t,.,.).
inline double h1_seminorm_weighted(const SpaceGrid& grid, const DofVector& w, double t,
                                   const CoefficientField& A) {
  return std::sqrt(stiffness_matrix(grid, t, A).quadratic_form(w));
}

/// || W' - dexact ||_{L2(0,1)} with W the P1 interpolant of w.
inline double h1_seminorm_error(const SpaceGrid& grid, const DofVector& w,
                                const std::function<double(double)>& dexact) {
  const int M = grid.elements;
  const double h = grid.h;
  const auto rule = gauss_rule(5);
  double acc = 0.0;
  for (int e = 0; e < M; ++e) {
    const double wl = (e > 0) ? w[e - 1] : 0.0;
    const double wr = (e + 1 < M) ? w[e] : 0.0;
    const double slope = (wr - wl) / h;
    const double mid = grid.node(e) + 0.5 * h;
    for (const auto& gp : rule) {
      const double diff = slope - dexact(mid + 0.5 * h * gp.node);
      acc += 0.5 * h * gp.weight * diff * diff;
    }
  }
  return std::sqrt(acc);
}

namespace detail {

template <class V>
void axpy_value(V& acc, double s, const V& x) {
  if constexpr (std::is_arithmetic_v<V>) {
    acc += s * x;
  } else {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * x[i];
  }
}

template <class V>
V zero_like(const V& proto) {
  if constexpr (std::is_arithmetic_v<V>) {
    return V(0);
  } else {
    return V(proto.size(), 0.0);
  }
}

}  // namespace detail

/// Local L2-in-time projection onto linears over one interval:
/// Pi(t) = mean + slope * (t - t_mid) with
///   mean  = (1/k) * integral of v,
///   slope = (12/k^3) * integral of (s - t_mid) v(s) ds.
/// Works for scalar- and vector-valued v; integrals by 5-point Gauss.
template <class F>
auto l2_time_project(F&& v, double t_left, double t_right) {
  using V = std::decay_t<decltype(v(t_left))>;
  const double k = t_right - t_left;
  const double t_mid = 0.5 * (t_left + t_right);
  const auto rule = gauss_rule(5);

  V proto = v(t_mid);
  V mean = detail::zero_like(proto);
  V slope = detail::zero_like(proto);
  for (const auto& gp : rule) {
    const double t = t_mid + 0.5 * k * gp.node;
    const V val = v(t);
    const double w = 0.5 * k * gp.weight;
    detail::axpy_value(mean, w / k, val);
    detail::axpy_value(slope, w * 12.0 / (k * k * k) * (t - t_mid), val);
  }

  struct TimeLinear {
    V mean;
    V slope;
    double t_mid;
    V eval(double t) const {
      V out = mean;
      detail::axpy_value(out, t - t_mid, slope);
      return out;
    }
  };
  return TimeLinear{std::move(mean), std::move(slope), t_mid};
}

}  // namespace fracdg
