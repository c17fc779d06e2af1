#include <chrono>
#include <cstdio>
#include "fracdg/verify.hpp"
using namespace fracdg;
using namespace fracdg::checks;
template <class F> void go(const char* n, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    Verdict v = f();
    double dt = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now()-t0).count()/1000.0;
    std::printf("%s  [%6.2fs] %-52s %s\n", v.pass?"PASS":"FAIL", dt, v.name.c_str(), v.detail.c_str());
  } catch (const std::exception& e) {
    std::printf("EXC   %-52s %s (%s)\n", n, e.what(), n);
  }
}
int main() {
  unsigned seed = 20240901;
  go("kernel_oracle", [&]{ return kernel_moment_vs_oracle(seed+1); });
  go("kernel_split", [&]{ return kernel_moment_splitting(seed+2); });
  go("caputo_scale", [&]{ return caputo_power_scaling(seed+3); });
  go("caputo_quad", [&]{ return caputo_power_vs_quadrature(seed+4); });
  go("mesh", [&]{ return mesh_property(seed); });
  go("finegrid", [&]{ return fine_grid_count(seed); });
  go("symbounds", [&]{ return operator_symmetry_bounds(seed+5); });
  go("ritz_orth", [&]{ return ritz_orthogonality(seed); });
  go("ritz_fix", [&]{ return ritz_fixes_trial_space(seed+6); });
  go("ritz_interp", [&]{ return ritz_interpolant_identity(seed); });
  go("ritz_rates", [&]{ return ritz_rates(seed); });
  go("pi_lin", [&]{ return time_projection_exact_on_linears(seed+7); });
  go("pi_bound", [&]{ return time_projection_bound(seed+8); });
  go("pi_rate", [&]{ return time_projection_rate(seed); });
  go("identity", [&]{ return dg_identity(seed+9); });
  go("pos03", [&]{ return rl_positivity(seed+10, 0.3); });
  go("pos05", [&]{ return rl_positivity(seed+10, 0.5); });
  go("pos07", [&]{ return rl_positivity(seed+10, 0.7); });
  go("cont03", [&]{ return il_continuity(seed+11, 0.3); });
  go("cont05", [&]{ return il_continuity(seed+11, 0.5); });
  go("cont07", [&]{ return il_continuity(seed+11, 0.7); });
  go("stab03", [&]{ return stability_ratio(0.3); });
  go("stab05", [&]{ return stability_ratio(0.5); });
  go("stab07", [&]{ return stability_ratio(0.7); });
  go("probe", [&]{ return consistency_probe(seed); });
  go("zero", [&]{ return zero_problem_stays_zero(seed); });
  go("resid", [&]{ return step_residuals(seed); });
  go("dense", [&]{ return block_solve_vs_dense(seed+12); });
  go("mres", [&]{ return manufactured_residual(seed+13); });
  go("reg", [&]{ return regularity_scaling(seed); });
  return 0;
}
