/// Graded time partitions t_n = (n/N)^gamma * T and the fine evaluation grid
/// for the discrete maximum-norm error.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracdg {

struct TimeMesh {
  double T = 1.0;
  double gamma = 1.0;
  std::vector<double> nodes;  // t_0 = 0 .. t_N = T, strictly increasing

  int intervals() const { return static_cast<int>(nodes.size()) - 1; }
  double node(int n) const { return nodes[n]; }
  /// k_n = t_n - t_{n-1}, 1 <= n <= N.
  double step(int n) const { return nodes[n] - nodes[n - 1]; }
  double max_step() const {
    double k = 0.0;
    for (int n = 1; n <= intervals(); ++n) k = std::max(k, step(n));
    return k;
  }

  /// Largest ratio k_j / (gamma * k * t_j^(1 - 1/gamma)); <= 1 when the
  /// graded-mesh step bound holds.
  double mesh_property_ratio() const {
    const double k = max_step();
    double worst = 0.0;
    for (int j = 1; j <= intervals(); ++j) {
      const double bound = gamma * k * std::pow(node(j), 1.0 - 1.0 / gamma);
      worst = std::max(worst, step(j) / bound);
    }
    return worst;
  }

  /// Index n of the interval (t_{n-1}, t_n] containing t; t = 0 maps to 1.
  int interval_of(double t) const {
    if (t < 0.0 || t > T) throw std::domain_error("TimeMesh: t outside [0, T]");
    auto it = std::lower_bound(nodes.begin() + 1, nodes.end(), t);
    int n = static_cast<int>(it - nodes.begin());
    return std::max(1, n);
  }
};

/// Nodes (n/N)^gamma * T, computed in one shot so repeated runs are
/// reproducible; t_N is forced to T exactly.
inline TimeMesh graded_mesh(int N, double gamma, double T) {
  if (N < 1) throw std::domain_error("graded_mesh: N must be >= 1");
  if (!(gamma >= 1.0)) throw std::domain_error("graded_mesh: gamma must be >= 1");
  if (!(T > 0.0)) throw std::domain_error("graded_mesh: T must be positive");
  TimeMesh mesh;
  mesh.T = T;
  mesh.gamma = gamma;
  mesh.nodes.resize(N + 1);
  for (int n = 0; n <= N; ++n)
    mesh.nodes[n] = std::pow(static_cast<double>(n) / N, gamma) * T;
  mesh.nodes[0] = 0.0;
  mesh.nodes[N] = T;
  for (int n = 1; n <= N; ++n)
    if (!(mesh.nodes[n] > mesh.nodes[n - 1]))
      throw std::runtime_error("graded_mesh: nodes not strictly increasing");
  return mesh;
}

/// Wrap an explicit node list (strictly increasing, starting at 0) as a mesh;
/// used by the randomized operator suites.
inline TimeMesh mesh_from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2 || nodes.front() != 0.0)
    throw std::domain_error("mesh_from_nodes: need nodes starting at 0");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw std::domain_error("mesh_from_nodes: nodes not strictly increasing");
  TimeMesh mesh;
  mesh.T = nodes.back();
  mesh.gamma = 1.0;
  mesh.nodes = std::move(nodes);
  return mesh;
}

/// All points t_{j-1} + l*k_j/m (j = 1..N, l = 0..m), sorted, each mesh node
/// appearing once: exactly N*m + 1 points.
inline std::vector<double> fine_grid(const TimeMesh& mesh, int m) {
  if (m < 1) throw std::domain_error("fine_grid: m must be >= 1");
  const int N = mesh.intervals();
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(N) * m + 1);
  for (int j = 1; j <= N; ++j) {
    const double t0 = mesh.node(j - 1);
    const double k = mesh.step(j);
    for (int l = 0; l < m; ++l) pts.push_back(t0 + l * k / m);
  }
  pts.push_back(mesh.T);
  return pts;
}

}  // namespace fracdg
