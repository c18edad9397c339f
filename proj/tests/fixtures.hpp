// Shared test helpers: brute-force oracles and small generators.
#pragma once

#include <random>
#include <vector>

#include "groupoid.hpp"
#include "simplicial.hpp"

namespace fhg::testing {

inline std::vector<int> level_sizes(const SSet& X) {
  std::vector<int> out;
  for (int n = 0; n <= X.N; ++n) out.push_back(X.size(n));
  return out;
}

// Counts weakly monotone maps [n] -> [m] by direct enumeration.
inline int count_monotone(int n, int m) {
  std::vector<int> v(n + 1, 0);
  int count = 0;
  while (true) {
    bool mono = true;
    for (int i = 0; i < n; ++i) mono = mono && v[i] <= v[i + 1];
    if (mono) ++count;
    int k = 0;
    while (k <= n && ++v[k] > m) v[k++] = 0;
    if (k > n) break;
  }
  return count;
}

inline GroupoidPtr share(FiniteGroupoid G) { return std::make_shared<const FiniteGroupoid>(std::move(G)); }

// pair(k) x (Z/m), built as a pullback of the one-object group groupoid.
inline FiniteGroupoid transitive_groupoid(int k, int m) {
  FiniteGroupoid G = group_groupoid(cyclic_group(m));
  Ids S;
  for (int i = 0; i < k; ++i) S.push_back("p" + std::to_string(i));
  return pullback_groupoid(G, S, std::vector<int>(k, 0)).groupoid;
}

// The trivial torsor at object x: carrier = arrows into x, from the unit groupoid on one point.
inline Bibundle torsor_bibundle(GroupoidPtr G, int x = 0) {
  Bibundle E;
  E.left = share(unit_groupoid({"m"}));
  E.right = G;
  std::vector<int> arrows;
  for (int a = 0; a < G->num_arrows(); ++a)
    if (G->target[a] == x) arrows.push_back(a);
  std::vector<int> pos(G->num_arrows(), -1);
  for (int i = 0; i < static_cast<int>(arrows.size()); ++i) pos[arrows[i]] = i;
  for (int i = 0; i < static_cast<int>(arrows.size()); ++i) {
    int a = arrows[i];
    E.carrier.push_back(G->arrows[a]);
    E.jl.push_back(0);
    E.jr.push_back(G->source[a]);
    E.left_act[pair_key(0, i)] = i;
    for (int b = 0; b < G->num_arrows(); ++b)
      if (G->source[a] == G->target[b]) E.right_act[pair_key(i, b)] = pos[G->mul(a, b)];
  }
  return E;
}

}  // namespace fhg::testing
