// Licensed under the Apache License, Version 2.0.
#include "equivalence.hpp"

#include <map>
#include <set>

namespace fhg {

namespace {

std::string quote(const Ids& ids, int i) { return "'" + ids[i] + "'"; }

bool same_data(const std::shared_ptr<const TwoGroupoidData>& a, const std::shared_ptr<const TwoGroupoidData>& b) {
  return a == b || (a && b && *a == *b);
}

struct BoundaryCell {
  int level;
  Mono mono;
};

std::vector<BoundaryCell> boundary_cells(const SSet& S) {
  std::vector<BoundaryCell> out;
  for (int k = 0; k <= S.N; ++k)
    for (int c : nondegenerate_cells(S, k)) out.push_back({k, parse_mono(S.cells[k][c])});
  return out;
}

std::vector<int> restrict_to_boundary(const SSet& X, const std::vector<BoundaryCell>& cells, int n, int x) {
  std::vector<int> key;
  key.reserve(cells.size());
  for (const auto& c : cells) key.push_back(apply_mono(X, c.mono, n, x));
  return key;
}

std::string boundary_text(const SSet& Z, const std::vector<BoundaryCell>& cells, const std::vector<int>& key) {
  std::string s = "{";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ", ";
    Mono m = cells[i].mono;
    std::string digits;
    for (int v : m) digits += static_cast<char>('0' + v);
    s += digits + "->" + Z.cells[cells[i].level][key[i]];
  }
  return s + "}";
}

bool sorted_unique(const Ids& ids) {
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (!(ids[i - 1] < ids[i])) return false;
  return true;
}

// Sorts a level of tuple cells by id and indexes it.
template <class T>
struct Level {
  Ids ids;
  std::vector<T> cells;
  std::map<T, int> index;

  void finish() {
    auto perm = canonical_order(ids, "cell");
    cells = permute_positions(cells, perm);
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) index[cells[i]] = i;
  }
  int at(const T& t) const {
    auto it = index.find(t);
    return it == index.end() ? -1 : it->second;
  }
};

// Fills every m table of D from horn_space and a rule producing the missing face.
void fill_m_tables(TwoGroupoidData& D, const std::function<int(int, const std::array<int, 3>&)>& fill) {
  for (int i = 0; i < 4; ++i)
    for (const auto& h : horn_space(D, 3, i)) {
      std::array<int, 3> k{h[0], h[1], h[2]};
      D.m[i][k] = fill(i, k);
    }
}

}  // namespace

StrictTwoGroupoidMap identity_two_map(std::shared_ptr<const TwoGroupoidData> X) {
  StrictTwoGroupoidMap f;
  f.source = X;
  f.target = X;
  auto iota = [](std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
    return v;
  };
  f.map = {iota(X->x0.size()), iota(X->x1.size()), iota(X->x2.size())};
  return f;
}

StrictTwoGroupoidMap compose(const StrictTwoGroupoidMap& g, const StrictTwoGroupoidMap& f) {
  if (!same_data(f.target, g.source)) throw Error("maps are not composable");
  auto after = [](const std::vector<int>& b, const std::vector<int>& a) {
    std::vector<int> out;
    for (int x : a) out.push_back(b.at(x));
    return out;
  };
  StrictTwoGroupoidMap h;
  h.source = f.source;
  h.target = g.target;
  h.map = {after(g.map.f0, f.map.f0), after(g.map.f1, f.map.f1), after(g.map.f2, f.map.f2)};
  return h;
}

SimplicialMap as_simplicial_map(const StrictTwoGroupoidMap& f) {
  SimplicialMap s;
  s.source = std::make_shared<const SSet>(as_sset(*f.source));
  s.target = std::make_shared<const SSet>(as_sset(*f.target));
  s.f = {f.map.f0, f.map.f1, f.map.f2};
  return s;
}

Report verify_strict_map(const StrictTwoGroupoidMap& f) {
  if (!f.source || !f.target) {
    Report r;
    r.fail("map has a source and a target", "map/structure", "missing source or target");
    return r;
  }
  return verify_two_groupoid_map(*f.source, *f.target, f.map);
}

PBSpace pb_space(const SimplicialMap& f, int n) {
  const SSet& Z = *f.source;
  const SSet& X = *f.target;
  if (n < 0 || n > Z.N || n > X.N)
    throw Error("pull-back level " + std::to_string(n) + " exceeds truncation " + std::to_string(std::min(Z.N, X.N)));
  PBSpace P;
  P.n = n;
  P.boundary = boundary_complex(n, Z.N);
  auto cells = boundary_cells(P.boundary);
  VecMap<std::vector<int>> by_boundary;
  for (int x = 0; x < X.size(n); ++x) by_boundary[restrict_to_boundary(X, cells, n, x)].push_back(x);
  VecMap<int> key_index;
  std::map<std::pair<int, int>, int> element_index;
  for (const LevelMap& h : enumerate_hom(P.boundary, Z)) {
    std::vector<int> key = nondegenerate_key(P.boundary, h);
    std::vector<int> down(key.size());
    for (std::size_t i = 0; i < key.size(); ++i) down[i] = f.f[cells[i].level][key[i]];
    int b = static_cast<int>(P.boundary_keys.size());
    key_index[key] = b;
    P.boundary_keys.push_back(key);
    auto it = by_boundary.find(down);
    if (it == by_boundary.end()) continue;
    std::string prefix = boundary_text(Z, cells, key) + "|";
    for (int x : it->second) {
      element_index[{b, x}] = static_cast<int>(P.elements.size());
      P.elements.push_back({b, x});
      P.ids.push_back(prefix + X.cells[n][x]);
    }
  }
  for (int z = 0; z < Z.size(n); ++z) {
    auto kb = key_index.find(restrict_to_boundary(Z, cells, n, z));
    int e = -1;
    if (kb != key_index.end()) {
      auto it = element_index.find({kb->second, f.f[n][z]});
      if (it != element_index.end()) e = it->second;
    }
    P.image.push_back(e);
  }
  return P;
}

PBSpace pb_space(const StrictTwoGroupoidMap& f, int n) { return pb_space(as_simplicial_map(f), n); }

Report is_equivalence(const SimplicialMap& f, int m) {
  Report r = verify_simplicial_map(f);
  if (!r.ok()) return r;
  const SSet& Z = *f.source;
  if (m < 0 || m > Z.N) {
    r.fail("degree within the truncation", "equivalence/degree",
           "degree " + std::to_string(m) + " needs level " + std::to_string(m) + " but the truncation is " + std::to_string(Z.N));
    return r;
  }
  for (int n = 0; n <= m; ++n) {
    PBSpace P = pb_space(f, n);
    std::vector<int> hit(P.elements.size(), -1);
    std::string w;
    const std::string level = "level " + std::to_string(n) + ": ";
    for (int z = 0; z < Z.size(n) && w.empty(); ++z) {
      int e = P.image[z];
      if (e < 0) {
        w = level + describe_cell(Z, n, z) + " has no pull-back element";
      } else if (n == m && hit[e] >= 0) {
        w = level + "cells '" + Z.cells[n][hit[e]] + "' and '" + Z.cells[n][z] + "' both map to pull-back element '" +
            P.ids[e] + "'";
      } else if (hit[e] < 0) {
        hit[e] = z;
      }
    }
    for (std::size_t e = 0; e < hit.size() && w.empty(); ++e)
      if (hit[e] < 0) w = level + "pull-back element '" + P.ids[e] + "' is not hit";
    if (n < m)
      r.record("level " + std::to_string(n) + " onto its pull-back space", "equivalence/surjective", w);
    else
      r.record("level " + std::to_string(n) + " bijective with its pull-back space", "equivalence/bijective", w);
    if (!w.empty()) break;
  }
  return r;
}

Report is_equivalence(const StrictTwoGroupoidMap& f, int m) {
  Report r = verify_strict_map(f);
  if (!r.ok()) return r;
  r.add(is_equivalence(as_simplicial_map(f), m));
  return r;
}

Report is_one_equivalence(const SimplicialMap& f, int m) {
  Report r = is_equivalence(f, m);
  if (r.checks().empty() || !verify_simplicial_map(f).ok()) return r;
  const SSet& Z = *f.source;
  const SSet& X = *f.target;
  std::vector<int> pre(X.size(0), -1);
  std::string w;
  for (int z = 0; z < Z.size(0) && w.empty(); ++z) {
    int x = f.f[0][z];
    if (pre[x] >= 0) w = "objects '" + Z.cells[0][pre[x]] + "' and '" + Z.cells[0][z] + "' both map to '" + X.cells[0][x] + "'";
    pre[x] = z;
  }
  for (int x = 0; x < X.size(0) && w.empty(); ++x)
    if (pre[x] < 0) w = "object '" + X.cells[0][x] + "' is not hit";
  r.record("object map is a bijection", "equivalence/objects", w);
  if (!w.empty() || Z.N < 1 || m < 1) return r;

  // with a bijective object map, onto arrows is the same as onto the level-1 pull-back space
  bool onto_arrows = is_surjective(f.f[1], X.size(1));
  PBSpace P = pb_space(f, 1);
  std::vector<char> hit(P.elements.size(), 0);
  for (int e : P.image)
    if (e >= 0) hit[e] = 1;
  bool onto_pb = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  w.clear();
  if (onto_arrows != onto_pb)
    w = std::string("arrow map is ") + (onto_arrows ? "" : "not ") + "onto while the level-1 pull-back map is " +
        (onto_pb ? "" : "not ") + "onto";
  else if (!onto_arrows)
    w = "arrow map is not onto";
  r.record("arrow map onto", "equivalence/arrows", w);
  return r;
}

Report is_one_equivalence(const StrictTwoGroupoidMap& f) {
  Report r = verify_strict_map(f);
  if (!r.ok()) return r;
  r.add(is_one_equivalence(as_simplicial_map(f), 2));
  return r;
}

InverseSearch strict_inverse_search(const SimplicialMap& f) {
  const SSet& Z = *f.source;
  const SSet& X = *f.target;
  InverseSearch out;
  for (const LevelMap& s : enumerate_hom(X, Z)) {
    bool section = true;
    for (int n = 0; n <= X.N && section; ++n)
      for (int x = 0; x < X.size(n) && section; ++x) section = f.f[n][s[n][x]] == x;
    if (!section) continue;
    ++out.sections;
    bool retraction = true;
    for (int n = 0; n <= Z.N && retraction; ++n)
      for (int z = 0; z < Z.size(n) && retraction; ++z) retraction = s[n][f.f[n][z]] == z;
    if (retraction && !out.inverse) out.inverse = s;
  }
  return out;
}

Pullback2 pullback_two_groupoid(std::shared_ptr<const TwoGroupoidData> Xp, const TwoGroupoidData& low,
                                const std::vector<int>& f0, const std::vector<int>& f1) {
  const TwoGroupoidData& X = *Xp;
  const int z0 = static_cast<int>(low.x0.size()), z1 = static_cast<int>(low.x1.size());
  const int x0 = static_cast<int>(X.x0.size()), x1 = static_cast<int>(X.x1.size());
  if (!sorted_unique(low.x0) || !sorted_unique(low.x1)) throw Error("pull-back levels must have sorted, distinct ids");
  auto total = [](const std::vector<int>& t, int len, int range) {
    return static_cast<int>(t.size()) == len && std::all_of(t.begin(), t.end(), [&](int v) { return v >= 0 && v < range; });
  };
  if (!total(low.d1[0], z1, z0) || !total(low.d1[1], z1, z0) || !total(low.s0, z0, z1))
    throw Error("pull-back faces and degeneracy are not total");
  if (!total(f0, z0, x0) || !total(f1, z1, x1)) throw Error("pull-back level maps are not total");
  for (int z = 0; z < z0; ++z)
    if (low.d1[0][low.s0[z]] != z || low.d1[1][low.s0[z]] != z)
      throw Error("degenerate arrow of " + quote(low.x0, z) + " does not have it as both faces");
  if (!is_surjective(f0, x0)) throw Error("object map of the pull-back is not onto");
  for (int h = 0; h < z1; ++h)
    for (int i = 0; i < 2; ++i)
      if (X.d1[i][f1[h]] != f0[low.d1[i][h]]) throw Error("arrow map does not commute with d" + std::to_string(i) + " at " + quote(low.x1, h));
  for (int z = 0; z < z0; ++z)
    if (f1[low.s0[z]] != X.s0[f0[z]]) throw Error("arrow map does not commute with s0 at " + quote(low.x0, z));
  {
    std::set<std::array<int, 3>> present;
    for (int h = 0; h < z1; ++h) present.insert({low.d1[0][h], low.d1[1][h], f1[h]});
    std::vector<std::vector<int>> over(x0);
    for (int z = 0; z < z0; ++z) over[f0[z]].push_back(z);
    for (int x = 0; x < x1; ++x)
      for (int a : over[X.d1[0][x]])
        for (int b : over[X.d1[1][x]])
          if (!present.count({a, b, x}))
            throw Error("no arrow from " + quote(low.x0, a) + " to " + quote(low.x0, b) + " over " + quote(X.x1, x));
  }

  using T4 = std::array<int, 4>;  // (h0, h1, h2, eta)
  Level<T4> L2;
  std::vector<std::vector<int>> over1(x1);
  for (int h = 0; h < z1; ++h) over1[f1[h]].push_back(h);
  for (int y = 0; y < static_cast<int>(X.x2.size()); ++y)
    for (int h0 : over1[X.d2[0][y]])
      for (int h1 : over1[X.d2[1][y]]) {
        if (low.d1[0][h1] != low.d1[0][h0]) continue;
        for (int h2 : over1[X.d2[2][y]]) {
          if (low.d1[0][h2] != low.d1[1][h0] || low.d1[1][h2] != low.d1[1][h1]) continue;
          L2.cells.push_back({h0, h1, h2, y});
          L2.ids.push_back(tuple_id({low.x1[h0], low.x1[h1], low.x1[h2], X.x2[y]}));
        }
      }
  L2.finish();

  auto Z = std::make_shared<TwoGroupoidData>();
  Z->x0 = low.x0;
  Z->x1 = low.x1;
  Z->x2 = L2.ids;
  Z->d1 = low.d1;
  Z->s0 = low.s0;
  for (int i = 0; i < 3; ++i)
    for (const auto& t : L2.cells) Z->d2[i].push_back(t[i]);
  auto need = [&](const T4& t, const std::string& what) {
    int v = L2.at(t);
    if (v < 0) throw Error("pull-back is missing " + what + "; the target does not verify");
    return v;
  };
  for (int h = 0; h < z1; ++h) {
    Z->s1[0].push_back(need({h, h, low.s0[low.d1[1][h]], X.s1[0][f1[h]]}, "s0 of " + quote(low.x1, h)));
    Z->s1[1].push_back(need({low.s0[low.d1[0][h]], h, h, X.s1[1][f1[h]]}, "s1 of " + quote(low.x1, h)));
  }
  fill_m_tables(*Z, [&](int i, const std::array<int, 3>& k) {
    std::array<const T4*, 4> face{};
    for (int j = 0, p = 0; j < 4; ++j)
      if (j != i) face[j] = &L2.cells[k[p++]];
    T4 t{};
    // edge j of face i lies on face j (j < i) or face j + 1 (j >= i)
    for (int j = 0; j < 3; ++j) t[j] = j < i ? (*face[j])[i - 1] : (*face[j + 1])[i];
    auto it = X.m[i].find({L2.cells[k[0]][3], L2.cells[k[1]][3], L2.cells[k[2]][3]});
    if (it == X.m[i].end()) throw Error("target m" + std::to_string(i) + " is not defined on an image horn");
    t[3] = it->second;
    return need(t, "a filler of m" + std::to_string(i));
  });

  Pullback2 out;
  out.z = Z;
  out.projection.source = Z;
  out.projection.target = Xp;
  out.projection.map.f0 = f0;
  out.projection.map.f1 = f1;
  for (const auto& t : L2.cells) out.projection.map.f2.push_back(t[3]);
  return out;
}

Pullback2 refine_arrows(std::shared_ptr<const TwoGroupoidData> Xp, const std::vector<int>& copies) {
  const TwoGroupoidData& X = *Xp;
  if (copies.size() != X.x1.size()) throw Error("need one copy count per arrow");
  Level<std::array<int, 2>> L1;
  for (int x = 0; x < static_cast<int>(X.x1.size()); ++x) {
    if (copies[x] < 1) throw Error("copy counts must be positive");
    for (int k = 0; k < copies[x]; ++k) {
      L1.cells.push_back({x, k});
      L1.ids.push_back(X.x1[x] + "#" + std::to_string(k));
    }
  }
  L1.finish();
  TwoGroupoidData low;
  low.x0 = X.x0;
  low.x1 = L1.ids;
  std::vector<int> f0, f1;
  for (int z = 0; z < static_cast<int>(X.x0.size()); ++z) {
    f0.push_back(z);
    low.s0.push_back(L1.at({X.s0[z], 0}));
  }
  for (const auto& [x, k] : L1.cells) {
    f1.push_back(x);
    for (int i = 0; i < 2; ++i) low.d1[i].push_back(X.d1[i][x]);
  }
  return pullback_two_groupoid(Xp, low, f0, f1);
}

Pullback2 refine_objects(std::shared_ptr<const TwoGroupoidData> Xp, const std::vector<int>& copies) {
  const TwoGroupoidData& X = *Xp;
  if (copies.size() != X.x0.size()) throw Error("need one copy count per object");
  Level<std::array<int, 2>> L0;
  for (int x = 0; x < static_cast<int>(X.x0.size()); ++x) {
    if (copies[x] < 1) throw Error("copy counts must be positive");
    for (int k = 0; k < copies[x]; ++k) {
      L0.cells.push_back({x, k});
      L0.ids.push_back(X.x0[x] + "#" + std::to_string(k));
    }
  }
  L0.finish();
  std::vector<std::vector<int>> over(X.x0.size());
  for (int z = 0; z < static_cast<int>(L0.cells.size()); ++z) over[L0.cells[z][0]].push_back(z);
  Level<std::array<int, 3>> L1;  // (source copy, arrow, target copy)
  for (int x = 0; x < static_cast<int>(X.x1.size()); ++x)
    for (int a : over[X.d1[0][x]])
      for (int b : over[X.d1[1][x]]) {
        L1.cells.push_back({a, x, b});
        L1.ids.push_back(tuple_id({L0.ids[a], X.x1[x], L0.ids[b]}));
      }
  L1.finish();
  TwoGroupoidData low;
  low.x0 = L0.ids;
  low.x1 = L1.ids;
  std::vector<int> f0, f1;
  for (int z = 0; z < static_cast<int>(L0.cells.size()); ++z) {
    int x = L0.cells[z][0];
    f0.push_back(x);
    low.s0.push_back(L1.at({z, X.s0[x], z}));
  }
  for (const auto& [a, x, b] : L1.cells) {
    f1.push_back(x);
    low.d1[0].push_back(a);
    low.d1[1].push_back(b);
  }
  return pullback_two_groupoid(Xp, low, f0, f1);
}

std::vector<std::array<int, 2>> fiber_pairs(const std::vector<int>& f, const std::vector<int>& g, int target_size) {
  std::vector<std::vector<int>> over(target_size);
  for (int b = 0; b < static_cast<int>(g.size()); ++b) over[g[b]].push_back(b);
  std::vector<std::array<int, 2>> out;
  for (int a = 0; a < static_cast<int>(f.size()); ++a)
    for (int b : over[f[a]]) out.push_back({a, b});
  return out;
}

FiberProduct fiber_product_two_groupoid(const StrictTwoGroupoidMap& f, const StrictTwoGroupoidMap& g) {
  if (!same_data(f.target, g.target)) throw Error("fiber product needs maps with a common target");
  for (const auto* m : {&f, &g}) {
    Report r = is_equivalence(*m, 2);
    if (!r.ok())
      throw Error(std::string(m == &f ? "first" : "second") + " map is not an equivalence: " + r.first_failure()->witness);
  }
  const TwoGroupoidData& A = *f.source;
  const TwoGroupoidData& B = *g.source;
  const TwoGroupoidData& X = *f.target;
  using P = std::array<int, 2>;
  auto level = [](const std::vector<P>& pairs, const Ids& a, const Ids& b) {
    Level<P> L;
    for (const auto& p : pairs) {
      L.cells.push_back(p);
      L.ids.push_back(tuple_id({a[p[0]], b[p[1]]}));
    }
    L.finish();
    return L;
  };
  Level<P> L0 = level(fiber_pairs(f.map.f0, g.map.f0, static_cast<int>(X.x0.size())), A.x0, B.x0);
  Level<P> L1 = level(fiber_pairs(f.map.f1, g.map.f1, static_cast<int>(X.x1.size())), A.x1, B.x1);
  Level<P> L2 = level(fiber_pairs(f.map.f2, g.map.f2, static_cast<int>(X.x2.size())), A.x2, B.x2);
  auto Z = std::make_shared<TwoGroupoidData>();
  Z->x0 = L0.ids;
  Z->x1 = L1.ids;
  Z->x2 = L2.ids;
  auto along = [](const Level<P>& to, const std::vector<int>& a, const std::vector<int>& b, const std::vector<P>& cells) {
    std::vector<int> out;
    for (const auto& p : cells) {
      int v = to.at({a[p[0]], b[p[1]]});
      if (v < 0) throw Error("inputs are not strict maps");
      out.push_back(v);
    }
    return out;
  };
  for (int i = 0; i < 2; ++i) Z->d1[i] = along(L0, A.d1[i], B.d1[i], L1.cells);
  Z->s0 = along(L1, A.s0, B.s0, L0.cells);
  for (int i = 0; i < 3; ++i) Z->d2[i] = along(L1, A.d2[i], B.d2[i], L2.cells);
  for (int i = 0; i < 2; ++i) Z->s1[i] = along(L2, A.s1[i], B.s1[i], L1.cells);
  fill_m_tables(*Z, [&](int i, const std::array<int, 3>& k) {
    std::array<int, 3> ka{}, kb{};
    for (int j = 0; j < 3; ++j) {
      ka[j] = L2.cells[k[j]][0];
      kb[j] = L2.cells[k[j]][1];
    }
    auto ia = A.m[i].find(ka);
    auto ib = B.m[i].find(kb);
    int v = (ia == A.m[i].end() || ib == B.m[i].end()) ? -1 : L2.at({ia->second, ib->second});
    if (v < 0) throw Error("fiber product has no filler for an m" + std::to_string(i) + " horn");
    return v;
  });
  FiberProduct out;
  out.z = Z;
  out.left.source = out.right.source = Z;
  out.left.target = f.source;
  out.right.target = g.source;
  auto project = [](const Level<P>& L, int side) {
    std::vector<int> v;
    for (const auto& p : L.cells) v.push_back(p[side]);
    return v;
  };
  out.left.map = {project(L0, 0), project(L1, 0), project(L2, 0)};
  out.right.map = {project(L0, 1), project(L1, 1), project(L2, 1)};
  return out;
}

Report verify_morita_witness(const StrictTwoGroupoidMap& f, const StrictTwoGroupoidMap& g, bool one_morita) {
  Report r;
  r.record("both legs start at the same 2-groupoid", "morita/zig-zag",
           same_data(f.source, g.source) ? "" : "the two legs have different sources");
  if (!r.ok()) return r;
  r.add(one_morita ? is_one_equivalence(f) : is_equivalence(f, 2), "left leg");
  r.add(one_morita ? is_one_equivalence(g) : is_equivalence(g, 2), "right leg");
  return r;
}

HomotopyInvariants homotopy_invariants(const TwoGroupoidData& X) {
  BigonGroupoid B = bigon_groupoid(X);
  const int n1 = static_cast<int>(X.x1.size());
  std::vector<int> cls(n1, -1);
  std::vector<int> rep;
  for (const auto& orbit : object_orbits(B.g)) {
    for (int e : orbit) cls[e] = static_cast<int>(rep.size());
    rep.push_back(*std::min_element(orbit.begin(), orbit.end()));
  }
  const int nc = static_cast<int>(rep.size());
  HomotopyInvariants H;
  FiniteGroupoid& P = H.fundamental;
  P.objects = X.x0;
  for (int c = 0; c < nc; ++c) {
    P.arrows.push_back(X.x1[rep[c]]);
    P.source.push_back(X.d1[0][rep[c]]);
    P.target.push_back(X.d1[1][rep[c]]);
  }
  for (int x = 0; x < static_cast<int>(X.x0.size()); ++x) P.identity.push_back(cls[X.s0[x]]);
  for (int y = 0; y < static_cast<int>(X.x2.size()); ++y)
    P.compose.emplace(pair_key(cls[X.d2[2][y]], cls[X.d2[0][y]]), cls[X.d2[1][y]]);
  P.inverse.assign(nc, -1);
  for (int c = 0; c < nc; ++c)
    for (int d = 0; d < nc; ++d)
      if (P.mul(d, c) == P.identity[P.source[c]]) P.inverse[c] = d;
  canonicalize(P);
  for (int x = 0; x < static_cast<int>(X.x0.size()); ++x) {
    int e = X.s0[x], count = 0;
    for (int a = 0; a < B.g.num_arrows(); ++a) count += B.g.source[a] == e && B.g.target[a] == e;
    H.pi2_orders.push_back(count);
  }
  return H;
}

std::optional<TwoGroupoidMap> strict_map_search(const TwoGroupoidData& D, const TwoGroupoidData& E, bool objects_bijective,
                                                const std::function<bool(const TwoGroupoidMap&)>& accept) {
  const int n0 = static_cast<int>(D.x0.size()), n1 = static_cast<int>(D.x1.size()), n2 = static_cast<int>(D.x2.size());
  const int e0 = static_cast<int>(E.x0.size()), e1 = static_cast<int>(E.x1.size());
  if (objects_bijective && n0 != e0) return std::nullopt;
  std::set<Tetra> TE = tetrahedra(E);
  std::vector<std::vector<Tetra>> touching(n2);
  for (const auto& t : tetrahedra(D))
    for (int y : std::set<int>(t.begin(), t.end())) touching[y].push_back(t);
  std::map<std::array<int, 3>, std::vector<int>> by_faces;
  for (int z = 0; z < static_cast<int>(E.x2.size()); ++z) by_faces[{E.d2[0][z], E.d2[1][z], E.d2[2][z]}].push_back(z);
  std::vector<int> src1(n1, -1), src2(n2, -1), src2_which(n2, -1);
  for (int x = 0; x < n0; ++x) src1[D.s0[x]] = x;
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < n1; ++a)
      if (src2[D.s1[i][a]] < 0) {
        src2[D.s1[i][a]] = a;
        src2_which[D.s1[i][a]] = i;
      }
  TwoGroupoidMap f;
  f.f0.assign(n0, -1);
  f.f1.assign(n1, -1);
  f.f2.assign(n2, -1);
  std::vector<char> used0(e0, 0);
  std::optional<TwoGroupoidMap> found;

  std::function<bool(int)> level2 = [&](int y) -> bool {
    if (y == n2) {
      if (verify_two_groupoid_map(D, E, f).ok() && accept(f)) {
        found = f;
        return true;
      }
      return false;
    }
    auto it = by_faces.find({f.f1[D.d2[0][y]], f.f1[D.d2[1][y]], f.f1[D.d2[2][y]]});
    if (it == by_faces.end()) return false;
    for (int z : it->second) {
      if (src2[y] >= 0 && z != E.s1[src2_which[y]][f.f1[src2[y]]]) continue;
      f.f2[y] = z;
      bool ok = true;
      for (const auto& t : touching[y]) {
        Tetra u{};
        bool complete = true;
        for (int i = 0; i < 4 && complete; ++i) {
          u[i] = f.f2[t[i]];
          complete = u[i] >= 0;
        }
        if (complete && !TE.count(u)) {
          ok = false;
          break;
        }
      }
      if (ok && level2(y + 1)) return true;
      f.f2[y] = -1;
    }
    return false;
  };
  std::function<bool(int)> level1 = [&](int a) -> bool {
    if (a == n1) return level2(0);
    for (int b = 0; b < e1; ++b) {
      if (src1[a] >= 0 && b != E.s0[f.f0[src1[a]]]) continue;
      if (E.d1[0][b] != f.f0[D.d1[0][a]] || E.d1[1][b] != f.f0[D.d1[1][a]]) continue;
      f.f1[a] = b;
      if (level1(a + 1)) return true;
      f.f1[a] = -1;
    }
    return false;
  };
  std::function<bool(int)> level0 = [&](int x) -> bool {
    if (x == n0) return level1(0);
    for (int z = 0; z < e0; ++z) {
      if (objects_bijective && used0[z]) continue;
      f.f0[x] = z;
      used0[z] = 1;
      if (level0(x + 1)) return true;
      used0[z] = 0;
      f.f0[x] = -1;
    }
    return false;
  };
  level0(0);
  return found;
}

MoritaSearch bounded_one_morita_search(const TwoGroupoidData& X, const TwoGroupoidData& Y, int bound) {
  MoritaSearch out;
  for (const auto* D : {&X, &Y}) {
    Report r = verify_two_groupoid(*D);
    if (!r.ok()) {
      out.obstruction = std::string(D == &X ? "first" : "second") + " input does not verify: " + r.first_failure()->witness;
      return out;
    }
  }
  if (X.x0.size() != Y.x0.size()) {
    out.obstruction = "object counts differ (" + std::to_string(X.x0.size()) + " and " + std::to_string(Y.x0.size()) + ")";
    return out;
  }
  HomotopyInvariants hx = homotopy_invariants(X), hy = homotopy_invariants(Y);
  if (!groupoid_iso_search(hx.fundamental, hy.fundamental)) {
    out.obstruction = "fundamental groupoids are not isomorphic";
    return out;
  }
  auto px = hx.pi2_orders, py = hy.pi2_orders;
  std::sort(px.begin(), px.end());
  std::sort(py.begin(), py.end());
  if (px != py) {
    out.obstruction = "second homotopy group orders differ";
    return out;
  }

  auto Xp = std::make_shared<const TwoGroupoidData>(X);
  auto Yp = std::make_shared<const TwoGroupoidData>(Y);
  const int n1 = static_cast<int>(X.x1.size());
  std::vector<int> copies(n1, 1);
  // copy vectors with a fixed total, in lexicographic order
  std::function<bool(int, int)> rec = [&](int pos, int left) -> bool {
    if (pos == n1 - 1) {
      copies[pos] = 1 + left;
      ++out.candidates;
      Pullback2 Z = refine_arrows(Xp, copies);
      auto g = strict_map_search(*Z.z, Y, true, [&](const TwoGroupoidMap& m) {
        return is_one_equivalence(StrictTwoGroupoidMap{Z.z, Yp, m}).ok();
      });
      if (!g) return false;
      out.witness = MoritaWitness{Z.z, Z.projection, StrictTwoGroupoidMap{Z.z, Yp, *g}};
      return true;
    }
    for (int k = 0; k <= left; ++k) {
      copies[pos] = 1 + k;
      if (rec(pos + 1, left - k)) return true;
    }
    return false;
  };
  for (int total = n1; n1 > 0 && total <= bound; ++total)
    if (rec(0, total - n1)) break;
  return out;
}

}  // namespace fhg
