/// Piecewise-linear-in-time DG solution storage: the initial vector, the
/// right-limit / end-value pair per interval, evaluation and jumps.
#pragma once

#include <stdexcept>
#include <vector>

#include "fracdg/fem1d.hpp"
#include "fracdg/time_mesh.hpp"

namespace fracdg {

struct DgSolution {
  TimeMesh mesh;
  int dofs = 0;
  DofVector u0;
  std::vector<DofVector> uplus;  // uplus[n-1] = U^{n-1}_+ (right limit at t_{n-1})
  std::vector<DofVector> uend;   // uend[n-1]  = U^n       (value at t_n = left limit)
  double max_residual = 0.0;

  int intervals() const { return mesh.intervals(); }

  /// U(t) with the left-limit convention at interior nodes; U(0) = U^0.
  void evaluate_into(double t, DofVector& out) const {
    if (t < 0.0 || t > mesh.T) throw std::domain_error("DgSolution::evaluate: t outside [0, T]");
    if (t == 0.0) {
      out = u0;
      return;
    }
    const int n = mesh.interval_of(t);
    const DofVector& a = uplus[n - 1];
    const DofVector& b = uend[n - 1];
    if (t == mesh.node(n)) {
      out = b;
      return;
    }
    const double l1 = (t - mesh.node(n - 1)) / mesh.step(n);
    const double l0 = 1.0 - l1;
    out.resize(dofs);
    for (int i = 0; i < dofs; ++i) out[i] = l0 * a[i] + l1 * b[i];
  }

  DofVector evaluate(double t) const {
    DofVector out;
    evaluate_into(t, out);
    return out;
  }

  /// [U]^j = U^j_+ - U^j for j = 0..N-1 (j = 0 measures against U^0).
  DofVector jump(int j) const {
    if (j < 0 || j >= intervals()) throw std::domain_error("DgSolution::jump: index out of range");
    const DofVector& before = (j == 0) ? u0 : uend[j - 1];
    DofVector out = uplus[j];
    for (int i = 0; i < dofs; ++i) out[i] -= before[i];
    return out;
  }
};

}  // namespace fracdg
