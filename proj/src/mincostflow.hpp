#pragma once

#include <limits>
#include <vector>

#include "flatchain/errors.hpp"
#include "flatchain/rational.hpp"

namespace flatchain::detail {

// Uncapacitated min-cost flow on the complete directed graph with symmetric
// nonnegative costs, by successive shortest paths (dense Dijkstra with
// potentials). Supplies must sum to zero. Returns flow[u][v] >= 0.
inline std::vector<std::vector<Rational>> dense_min_cost_flow(const std::vector<std::vector<double>>& cost,
                                                              std::vector<Rational> excess) {
  const std::size_t n = excess.size();
  Rational total = 0;
  for (const auto& e : excess) total += e;
  if (sgn(total) != 0) throw InvariantViolation("flow supplies do not balance");
  std::vector<std::vector<Rational>> flow(n, std::vector<Rational>(n, Rational(0)));
  std::vector<double> pot(n, 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  auto arc_cost = [&](std::size_t u, std::size_t v) { return sgn(flow[v][u]) > 0 ? -cost[v][u] : cost[u][v]; };
  while (true) {
    std::vector<double> dist(n, inf);
    std::vector<std::size_t> parent(n, n);
    std::vector<bool> done(n, false);
    bool any = false;
    for (std::size_t v = 0; v < n; ++v)
      if (sgn(excess[v]) > 0) {
        dist[v] = 0.0;
        any = true;
      }
    if (!any) break;
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v] && dist[v] < inf && (u == n || dist[v] < dist[u])) u = v;
      if (u == n) break;
      done[u] = true;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v] || v == u) continue;
        double rc = arc_cost(u, v) + pot[u] - pot[v];
        if (rc < 0) rc = 0;
        if (dist[u] + rc < dist[v]) {
          dist[v] = dist[u] + rc;
          parent[v] = u;
        }
      }
    }
    std::size_t t = n;
    for (std::size_t v = 0; v < n; ++v)
      if (sgn(excess[v]) < 0 && (t == n || dist[v] < dist[t])) t = v;
    if (t == n || dist[t] == inf) throw InvariantViolation("no augmenting path in transport problem");
    Rational delta = -excess[t];
    std::size_t s = t;
    while (parent[s] != n) {
      const std::size_t u = parent[s];
      if (sgn(flow[s][u]) > 0 && flow[s][u] < delta) delta = flow[s][u];
      s = u;
    }
    if (excess[s] < delta) delta = excess[s];
    for (std::size_t v = t; parent[v] != n; v = parent[v]) {
      const std::size_t u = parent[v];
      if (sgn(flow[v][u]) > 0)
        flow[v][u] -= delta;
      else
        flow[u][v] += delta;
    }
    excess[s] -= delta;
    excess[t] += delta;
    for (std::size_t v = 0; v < n; ++v)
      if (dist[v] < inf) pot[v] += dist[v];
  }
  return flow;
}

}  // namespace flatchain::detail
