#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "flatchain/zerochain.hpp"
#include "support.hpp"

namespace testing_support {

// Minimum over spanning trees of atoms + ground of the tree flow cost.
inline double spanning_tree_oracle(const ZeroChain& z) {
  const auto& atoms = z.atoms();
  const std::size_t n = atoms.size(), m = n + 1;
  if (n == 0) return 0.0;
  std::vector<double> supply(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    supply[i] = to_double(atoms[i].coeff.value());
    supply[n] -= supply[i];
  }
  auto cost = [&](std::size_t u, std::size_t v) {
    if (u == n || v == n) return 1.0;
    return distance(atoms[u].point, atoms[v].point);
  };
  if (m == 2) return std::abs(supply[0]) * cost(0, 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> seq(m - 2, 0);
  while (true) {
    std::vector<std::size_t> degree(m, 1);
    for (auto s : seq) ++degree[s];
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto s : seq)
      for (std::size_t v = 0; v < m; ++v)
        if (degree[v] == 1) {
          edges.push_back({v, s});
          --degree[v];
          --degree[s];
          break;
        }
    std::size_t u = m, w = m;
    for (std::size_t v = 0; v < m; ++v)
      if (degree[v] == 1) (u == m ? u : w) = v;
    edges.push_back({u, w});
    // peel leaves to get the forced tree flows
    std::vector<double> rest = supply;
    std::vector<std::vector<std::size_t>> adj(m);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      adj[edges[e].first].push_back(e);
      adj[edges[e].second].push_back(e);
    }
    std::vector<bool> used(edges.size(), false);
    std::vector<std::size_t> deg(m);
    for (std::size_t v = 0; v < m; ++v) deg[v] = adj[v].size();
    double c = 0.0;
    for (std::size_t round = 0; round + 1 < m; ++round) {
      std::size_t leaf = m;
      for (std::size_t v = 0; v < m && leaf == m; ++v)
        if (deg[v] == 1) leaf = v;
      std::size_t e = *std::find_if(adj[leaf].begin(), adj[leaf].end(), [&](std::size_t x) { return !used[x]; });
      used[e] = true;
      std::size_t other = edges[e].first == leaf ? edges[e].second : edges[e].first;
      c += std::abs(rest[leaf]) * cost(leaf, other);
      rest[other] += rest[leaf];
      rest[leaf] = 0;
      --deg[leaf];
      --deg[other];
    }
    best = std::min(best, c);
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == m) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return best;
}

inline ZeroChain random_zero_chain(std::mt19937_64& rng, const GroupDescriptor& g, std::size_t atoms, std::size_t n) {
  std::uniform_int_distribution<long> coeff(-4, 4);
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms; ++i) {
    long c = 0;
    while (c == 0) c = coeff(rng);
    Point p(n);
    for (auto& x : p) x = testing_support::random_rational(rng, 2, 5);
    out.push_back({GroupElement::from_integer(g, c), p});
  }
  return ZeroChain::from_atoms(g, n, std::move(out));
}


}  // namespace testing_support
