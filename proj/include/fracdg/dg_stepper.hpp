/// The DG time stepper: per-interval assembly of the 2x2 block system with
/// fractional history sums, block-tridiagonal solve, and the run driver.
///
/// On interval I_n with unknowns (a, b) = (U^{n-1}_+, U^n) and test functions
/// L_p (endpoint Lagrange basis in time), the p-th block row reads
///
///   (1/k_n) Jw2_p M (b - a) + Jw1_p M (a - U^{n-1})
///     + sum_g w_g L_p(tau_g) [L_0(tau_g) K(tau_g) a + L_1(tau_g) K(tau_g) b]
///   = F_p - M sum_{j<n} du_j D_{p,j} - M sum_{j<=n-2} [U]^j E_{p,j}
///
/// with every kernel weight reduced to closed-form moments of
/// omega_beta(t - t_j) against L_p over I_n.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracdg/dg_solution.hpp"
#include "fracdg/fem1d.hpp"
#include "fracdg/kernel.hpp"
#include "fracdg/problems.hpp"
#include "fracdg/quadrature.hpp"
#include "fracdg/time_mesh.hpp"

namespace fracdg {

enum class InitialValue { ritz, interpolate, l2 };

struct StepperOptions {
  InitialValue initial = InitialValue::ritz;
  // Hard failure threshold; the observed residuals sit near machine level.
  double residual_limit = 1e-9;
};

/// 2x2 block system; each block is tridiagonal over the spatial dofs.
struct BlockSystem {
  TridiagonalMatrix p00, p01, p10, p11;
  DofVector r0, r1;

  int dofs() const { return p00.size(); }

  /// Backward-error style relative residual of a candidate solution.
  double residual(const DofVector& a, const DofVector& b) const {
    const int n = dofs();
    DofVector t0(n), t1(n);
    double res = 0.0, rnorm = 0.0, xnorm = 0.0, anorm = 0.0;
    p00.matvec(a, t0);
    p01.matvec(b, t1);
    for (int i = 0; i < n; ++i) res = std::max(res, std::abs(t0[i] + t1[i] - r0[i]));
    p10.matvec(a, t0);
    p11.matvec(b, t1);
    for (int i = 0; i < n; ++i) res = std::max(res, std::abs(t0[i] + t1[i] - r1[i]));
    for (int i = 0; i < n; ++i) {
      rnorm = std::max(rnorm, std::max(std::abs(r0[i]), std::abs(r1[i])));
      xnorm = std::max(xnorm, std::max(std::abs(a[i]), std::abs(b[i])));
      const double row0 = std::abs(p00.lower[i]) + std::abs(p00.diag[i]) + std::abs(p00.upper[i]) +
                          std::abs(p01.lower[i]) + std::abs(p01.diag[i]) + std::abs(p01.upper[i]);
      const double row1 = std::abs(p10.lower[i]) + std::abs(p10.diag[i]) + std::abs(p10.upper[i]) +
                          std::abs(p11.lower[i]) + std::abs(p11.diag[i]) + std::abs(p11.upper[i]);
      anorm = std::max(anorm, std::max(row0, row1));
    }
    const double scale = anorm * xnorm + rnorm;
    return scale > 0.0 ? res / scale : res;
  }
};

namespace detail {

struct Mat2 {
  double a00, a01, a10, a11;
};

inline Mat2 inverse(const Mat2& m) {
  const double det = m.a00 * m.a11 - m.a01 * m.a10;
  if (!std::isfinite(det) || det == 0.0)
    throw std::runtime_error("solve_step: singular 2x2 pivot");
  const double inv = 1.0 / det;
  return {m.a11 * inv, -m.a01 * inv, -m.a10 * inv, m.a00 * inv};
}

}  // namespace detail

/// Direct solve of the block system by block-Thomas elimination over the
/// spatial index (2x2 blocks, bandwidth one block).
inline std::pair<DofVector, DofVector> solve_step(const BlockSystem& sys) {
  using detail::Mat2;
  const int n = sys.dofs();
  std::vector<Mat2> x_fac(n);          // D_i^{-1} C_i
  std::vector<double> y0(n), y1(n);    // D_i^{-1} rhs_i
  Mat2 d{sys.p00.diag[0], sys.p01.diag[0], sys.p10.diag[0], sys.p11.diag[0]};
  double rhs0 = sys.r0[0], rhs1 = sys.r1[0];

  for (int i = 0; i < n; ++i) {
    const Mat2 dinv = detail::inverse(d);
    y0[i] = dinv.a00 * rhs0 + dinv.a01 * rhs1;
    y1[i] = dinv.a10 * rhs0 + dinv.a11 * rhs1;
    if (i + 1 == n) break;

    const Mat2 c{sys.p00.upper[i], sys.p01.upper[i], sys.p10.upper[i], sys.p11.upper[i]};
    x_fac[i] = {dinv.a00 * c.a00 + dinv.a01 * c.a10, dinv.a00 * c.a01 + dinv.a01 * c.a11,
                dinv.a10 * c.a00 + dinv.a11 * c.a10, dinv.a10 * c.a01 + dinv.a11 * c.a11};

    const Mat2 a{sys.p00.lower[i + 1], sys.p01.lower[i + 1], sys.p10.lower[i + 1],
                 sys.p11.lower[i + 1]};
    const Mat2& x = x_fac[i];
    d = {sys.p00.diag[i + 1] - (a.a00 * x.a00 + a.a01 * x.a10),
         sys.p01.diag[i + 1] - (a.a00 * x.a01 + a.a01 * x.a11),
         sys.p10.diag[i + 1] - (a.a10 * x.a00 + a.a11 * x.a10),
         sys.p11.diag[i + 1] - (a.a10 * x.a01 + a.a11 * x.a11)};
    rhs0 = sys.r0[i + 1] - (a.a00 * y0[i] + a.a01 * y1[i]);
    rhs1 = sys.r1[i + 1] - (a.a10 * y0[i] + a.a11 * y1[i]);
  }

  DofVector a(n), b(n);
  a[n - 1] = y0[n - 1];
  b[n - 1] = y1[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    a[i] = y0[i] - (x_fac[i].a00 * a[i + 1] + x_fac[i].a01 * b[i + 1]);
    b[i] = y1[i] - (x_fac[i].a10 * a[i + 1] + x_fac[i].a11 * b[i + 1]);
  }
  return {std::move(a), std::move(b)};
}

/// Dense partial-pivot solve of the same system (interleaved unknown
/// ordering); cross-check for small dof counts.
inline std::pair<DofVector, DofVector> solve_step_dense(const BlockSystem& sys) {
  const int m = sys.dofs();
  const int n = 2 * m;
  std::vector<double> mat(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> rhs(n);
  auto at = [&](int r, int c) -> double& { return mat[static_cast<std::size_t>(r) * n + c]; };
  auto put = [&](const TridiagonalMatrix& blk, int roff, int coff) {
    for (int i = 0; i < m; ++i) {
      at(2 * i + roff, 2 * i + coff) = blk.diag[i];
      if (i > 0) at(2 * i + roff, 2 * (i - 1) + coff) = blk.lower[i];
      if (i + 1 < m) at(2 * i + roff, 2 * (i + 1) + coff) = blk.upper[i];
    }
  };
  put(sys.p00, 0, 0);
  put(sys.p01, 0, 1);
  put(sys.p10, 1, 0);
  put(sys.p11, 1, 1);
  for (int i = 0; i < m; ++i) {
    rhs[2 * i] = sys.r0[i];
    rhs[2 * i + 1] = sys.r1[i];
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
    if (at(piv, col) == 0.0) throw std::runtime_error("solve_step_dense: singular system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(at(piv, c), at(col, c));
      std::swap(rhs[piv], rhs[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double fac = at(r, col) / at(col, col);
      if (fac == 0.0) continue;
      for (int c = col; c < n; ++c) at(r, c) -= fac * at(col, c);
      rhs[r] -= fac * rhs[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= at(r, c) * rhs[c];
    rhs[r] = s / at(r, r);
  }
  DofVector a(m), b(m);
  for (int i = 0; i < m; ++i) {
    a[i] = rhs[2 * i];
    b[i] = rhs[2 * i + 1];
  }
  return {std::move(a), std::move(b)};
}

class DgStepper {
 public:
  DgStepper(ProblemSpec problem, SpaceGrid grid, TimeMesh mesh, StepperOptions options = {})
      : problem_(std::move(problem)),
        grid_(grid),
        options_(options),
        mass_(mass_matrix(grid)),
        x_independent_(static_cast<bool>(problem_.A.time_only)) {
    sol_.mesh = std::move(mesh);
    sol_.dofs = grid.dofs();
    const int N = sol_.mesh.intervals();
    sol_.uplus.assign(N, DofVector());
    sol_.uend.assign(N, DofVector());
    du_.assign(N, DofVector());
    jump_.assign(N, DofVector());
    if (x_independent_) unit_k_ = unit_stiffness(grid);
    for (const auto& term : problem_.forcing) {
      if (!term.time_factor || !(term.load_builder || term.space_profile))
        throw std::invalid_argument("DgStepper: incomplete forcing term");
      term_loads_.push_back(term.load_builder ? term.load_builder(grid)
                                              : load_vector(grid, term.space_profile));
    }
    set_initial_value();
  }

  const DgSolution& solution() const { return sol_; }
  const SpaceGrid& grid() const { return grid_; }
  int solved() const { return solved_; }

  /// Assemble the block system for interval n (1-based); intervals 1..n-1
  /// must already be solved.
  BlockSystem assemble_step(int n) const {
    if (n < 1 || n > sol_.mesh.intervals())
      throw std::domain_error("assemble_step: interval index out of range");
    if (n != solved_ + 1) throw std::logic_error("assemble_step: prior interval not solved");

    const double t0 = sol_.mesh.node(n - 1);
    const double t1 = sol_.mesh.node(n);
    const double k = t1 - t0;
    const double mu = problem_.mu;
    const int m = grid_.dofs();

    const BasisMoments jw2 = kernel_basis_moments(t0, t1, t0, 2.0 - mu);
    const BasisMoments jw1 = kernel_basis_moments(t0, t1, t0, 1.0 - mu);

    BlockSystem sys;
    sys.p00 = TridiagonalMatrix(m);
    sys.p01 = TridiagonalMatrix(m);
    sys.p10 = TridiagonalMatrix(m);
    sys.p11 = TridiagonalMatrix(m);

    // Mass contributions of the local Caputo term and the jump at t_{n-1}.
    sys.p00.add_scaled(mass_, jw1.l0 - jw2.l0 / k);
    sys.p01.add_scaled(mass_, jw2.l0 / k);
    sys.p10.add_scaled(mass_, jw1.l1 - jw2.l1 / k);
    sys.p11.add_scaled(mass_, jw2.l1 / k);

    // Stiffness, 3-point Gauss in time.
    const auto trule = gauss_rule(3);
    if (x_independent_) {
      double c00 = 0, c01 = 0, c10 = 0, c11 = 0;
      for (const auto& gp : trule) {
        const double tau = 0.5 * (t0 + t1) + 0.5 * k * gp.node;
        const double w = 0.5 * k * gp.weight * problem_.A.time_only(tau);
        const double l1 = (tau - t0) / k;
        const double l0 = 1.0 - l1;
        c00 += w * l0 * l0;
        c01 += w * l0 * l1;
        c10 += w * l1 * l0;
        c11 += w * l1 * l1;
      }
      sys.p00.add_scaled(unit_k_, c00);
      sys.p01.add_scaled(unit_k_, c01);
      sys.p10.add_scaled(unit_k_, c10);
      sys.p11.add_scaled(unit_k_, c11);
    } else {
      for (const auto& gp : trule) {
        const double tau = 0.5 * (t0 + t1) + 0.5 * k * gp.node;
        const TridiagonalMatrix kt = stiffness_matrix(grid_, tau, problem_.A);
        const double w = 0.5 * k * gp.weight;
        const double l1 = (tau - t0) / k;
        const double l0 = 1.0 - l1;
        sys.p00.add_scaled(kt, w * l0 * l0);
        sys.p01.add_scaled(kt, w * l0 * l1);
        sys.p10.add_scaled(kt, w * l1 * l0);
        sys.p11.add_scaled(kt, w * l1 * l1);
      }
    }

    // Right-hand side: forcing, the known side of the t_{n-1} jump, and the
    // fractional history of all earlier intervals.
    sys.r0.assign(m, 0.0);
    sys.r1.assign(m, 0.0);
    forcing_rhs(n, sys.r0, sys.r1);

    const DofVector& uprev = (n == 1) ? sol_.u0 : sol_.uend[n - 2];
    DofVector acc0(m, 0.0), acc1(m, 0.0);
    for (int i = 0; i < m; ++i) {
      acc0[i] = -jw1.l0 * uprev[i];
      acc1[i] = -jw1.l1 * uprev[i];
    }

    BasisMoments bm2_prev = kernel_basis_moments(t0, t1, sol_.mesh.node(0), 2.0 - mu);
    for (int j = 1; j <= n - 1; ++j) {
      const BasisMoments bm2_cur = (j == n - 1)
                                       ? jw2
                                       : kernel_basis_moments(t0, t1, sol_.mesh.node(j), 2.0 - mu);
      const BasisMoments bm1 = kernel_basis_moments(t0, t1, sol_.mesh.node(j - 1), 1.0 - mu);
      const double d0 = bm2_prev.l0 - bm2_cur.l0;
      const double d1 = bm2_prev.l1 - bm2_cur.l1;
      const double e0 = bm1.l0;
      const double e1 = bm1.l1;
      const double* du = du_[j - 1].data();
      const double* jp = jump_[j - 1].data();
      for (int i = 0; i < m; ++i) {
        const double dv = du[i];
        const double jv = jp[i];
        acc0[i] += d0 * dv + e0 * jv;
        acc1[i] += d1 * dv + e1 * jv;
      }
      bm2_prev = bm2_cur;
    }

    DofVector tmp(m);
    mass_.matvec(acc0, tmp);
    for (int i = 0; i < m; ++i) sys.r0[i] -= tmp[i];
    mass_.matvec(acc1, tmp);
    for (int i = 0; i < m; ++i) sys.r1[i] -= tmp[i];
    return sys;
  }

  /// Record interval n's pair (normally from solve_step; tests may inject
  /// alternative first-step variants).
  void set_step(int n, DofVector a, DofVector b) {
    if (n != solved_ + 1) throw std::logic_error("set_step: out of order");
    const double k = sol_.mesh.step(n);
    const DofVector& uprev = (n == 1) ? sol_.u0 : sol_.uend[n - 2];
    const int m = grid_.dofs();
    du_[n - 1].resize(m);
    jump_[n - 1].resize(m);
    for (int i = 0; i < m; ++i) {
      du_[n - 1][i] = (b[i] - a[i]) / k;
      jump_[n - 1][i] = a[i] - uprev[i];
    }
    sol_.uplus[n - 1] = std::move(a);
    sol_.uend[n - 1] = std::move(b);
    solved_ = n;
  }

  /// Assemble + solve interval n and store the pair.
  void advance(int n) {
    BlockSystem sys = assemble_step(n);
    auto [a, b] = solve_step(sys);
    const double res = sys.residual(a, b);
    if (res > options_.residual_limit)
      throw std::runtime_error("DgStepper: step residual above limit");
    sol_.max_residual = std::max(sol_.max_residual, res);
    set_step(n, std::move(a), std::move(b));
  }

  const DgSolution& run_all() {
    for (int n = solved_ + 1; n <= sol_.mesh.intervals(); ++n) advance(n);
    return sol_;
  }

 private:
  void set_initial_value() {
    switch (options_.initial) {
      case InitialValue::ritz:
        sol_.u0 = ritz_project(grid_, problem_.u0, problem_.u0_prime, 0.0, problem_.A);
        break;
      case InitialValue::interpolate:
        sol_.u0 = interpolate(grid_, problem_.u0);
        break;
      case InitialValue::l2:
        sol_.u0 = l2_project(grid_, problem_.u0);
        break;
    }
  }

  // integral over I_n of L_p(t) g(t) dt with the term's singularity handling.
  std::pair<double, double> time_weights(const ForcingTerm& term, int n, double t0, double t1,
                                         double k) const {
    auto weighted = [&](auto&& lp) {
      auto f = [&](double t) { return lp(t) * term.time_factor(t); };
      if (term.singular_power) {
        if (n == 1) return graded_gauss_left(f, t0, t1, *term.singular_power);
        // Smooth here but varying on the scale of t itself near the origin.
        const int panels =
            std::min(40, std::max(1, static_cast<int>(std::ceil(3.0 * std::log2(t1 / t0)))));
        return log_graded_gauss(f, t0, t1, 5, panels);
      }
      return gauss_panel(f, t0, t1, 5);
    };
    const double w1 = weighted([&](double t) { return (t - t0) / k; });
    const double w0 = weighted([&](double t) { return (t1 - t) / k; });
    return {w0, w1};
  }

  void forcing_rhs(int n, DofVector& r0, DofVector& r1) const {
    const double t0 = sol_.mesh.node(n - 1);
    const double t1 = sol_.mesh.node(n);
    const double k = t1 - t0;
    const int m = grid_.dofs();

    for (std::size_t ti = 0; ti < problem_.forcing.size(); ++ti) {
      const auto [w0, w1] = time_weights(problem_.forcing[ti], n, t0, t1, k);
      const DofVector& load = term_loads_[ti];
      for (int i = 0; i < m; ++i) {
        r0[i] += w0 * load[i];
        r1[i] += w1 * load[i];
      }
    }

    if (problem_.forcing.empty() && problem_.f) {
      // Generic pointwise forcing: one spatial load per time node.
      auto accumulate = [&](double t, double w) {
        const DofVector load = load_vector(grid_, [&](double x) { return problem_.f(x, t); });
        const double l1 = (t - t0) / k;
        const double l0 = 1.0 - l1;
        for (int i = 0; i < m; ++i) {
          r0[i] += w * l0 * load[i];
          r1[i] += w * l1 * load[i];
        }
      };
      if (problem_.f_singular_power && n == 1) {
        const double w = t1 - t0;
        double hi = t1;
        for (int lev = 0; lev < 40; ++lev) {
          const double lo = t0 + std::ldexp(w, -(lev + 1));
          const double pw = (hi - lo) / 4.0;
          for (int pan = 0; pan < 4; ++pan)
            for (const auto& gp : gauss_rule(4))
              accumulate(lo + pan * pw + 0.5 * pw * (1.0 + gp.node), 0.5 * pw * gp.weight);
          hi = lo;
        }
        // innermost sliver: leading-power stub spread onto L_p(t0) = (1, 0)
        const double delta = hi - t0;
        const DofVector load =
            load_vector(grid_, [&](double x) { return problem_.f(x, t0 + delta); });
        const double stub = delta / (*problem_.f_singular_power + 1.0);
        for (int i = 0; i < m; ++i) r0[i] += stub * load[i];
      } else {
        for (const auto& gp : gauss_rule(5))
          accumulate(0.5 * (t0 + t1) + 0.5 * k * gp.node, 0.5 * k * gp.weight);
      }
    }
  }

  ProblemSpec problem_;
  SpaceGrid grid_;
  StepperOptions options_;
  TridiagonalMatrix mass_;
  TridiagonalMatrix unit_k_;
  bool x_independent_;
  std::vector<DofVector> term_loads_;
  DgSolution sol_;
  std::vector<DofVector> du_;    // du_[n-1] = (U^n - U^{n-1}_+)/k_n
  std::vector<DofVector> jump_;  // jump_[j] = [U]^j
  int solved_ = 0;
};

/// Solve the whole run: U^0 from the configured projection, then intervals
/// 1..N in sequence. History cost is O(N^2 M).
inline DgSolution run(const ProblemSpec& problem, const SpaceGrid& grid, const TimeMesh& mesh,
                      StepperOptions options = {}) {
  DgStepper stepper(problem, grid, mesh, options);
  return stepper.run_all();
}

}  // namespace fracdg
