// Licensed under the Apache License, Version 2.0.
#include "groupoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace fhg {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  return a == b || (a && b && *a == *b);
}

PairTable relabel_table(const PairTable& t, const std::vector<int>& left_perm, const std::vector<int>& right_perm,
                        const std::vector<int>& value_perm) {
  PairTable out;
  out.reserve(t.size());
  for (const auto& [k, v] : t) {
    int a = static_cast<int>(k >> 32);
    int b = static_cast<int>(k & 0xffffffffu);
    out[pair_key(left_perm[a], right_perm[b])] = value_perm[v];
  }
  return out;
}

std::string arrow_name(const FiniteGroupoid& G, int a) { return "'" + G.arrows[a] + "'"; }

FiniteGroup finish_group(Ids labels, std::vector<std::vector<int>> mul, int unit) {
  FiniteGroup g;
  std::vector<int> perm = canonical_order(labels, "group element");
  int n = static_cast<int>(labels.size());
  g.elements = labels;
  g.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[perm[a]][perm[b]] = perm[mul[a][b]];
  g.unit = perm[unit];
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul[a][b] == g.unit) g.inv[a] = b;
  return g;
}

}  // namespace

void canonicalize(FiniteGroupoid& G, std::vector<int>& po, std::vector<int>& pa) {
  po = canonical_order(G.objects, "object");
  pa = canonical_order(G.arrows, "arrow");
  G.source = permute_positions(relabel(G.source, po), pa);
  G.target = permute_positions(relabel(G.target, po), pa);
  G.identity = permute_positions(relabel(G.identity, pa), po);
  G.inverse = permute_positions(relabel(G.inverse, pa), pa);
  G.compose = relabel_table(G.compose, pa, pa, pa);
}

void canonicalize(FiniteGroupoid& G) {
  std::vector<int> po, pa;
  canonicalize(G, po, pa);
}

std::vector<std::vector<int>> arrows_from(const FiniteGroupoid& G) {
  std::vector<std::vector<int>> out(G.num_objects());
  for (int a = 0; a < G.num_arrows(); ++a) out[G.source[a]].push_back(a);
  return out;
}

std::vector<std::vector<int>> arrows_into(const FiniteGroupoid& G) {
  std::vector<std::vector<int>> out(G.num_objects());
  for (int a = 0; a < G.num_arrows(); ++a) out[G.target[a]].push_back(a);
  return out;
}

Report verify_groupoid(const FiniteGroupoid& G) {
  Report r;
  const int n0 = G.num_objects(), n1 = G.num_arrows();
  std::string w;
  auto in = [](int v, int n) { return v >= 0 && v < n; };
  if (static_cast<int>(G.source.size()) != n1 || static_cast<int>(G.target.size()) != n1 ||
      static_cast<int>(G.inverse.size()) != n1 || static_cast<int>(G.identity.size()) != n0) {
    w = "table lengths do not match the object and arrow counts";
  }
  for (int a = 0; w.empty() && a < n1; ++a) {
    if (!in(G.source[a], n0) || !in(G.target[a], n0) || !in(G.inverse[a], n1))
      w = "arrow " + arrow_name(G, a) + " has an out-of-range source, target or inverse";
  }
  for (int x = 0; w.empty() && x < n0; ++x) {
    if (!in(G.identity[x], n1)) w = "object '" + G.objects[x] + "' has no identity";
  }
  std::size_t composable = 0;
  for (int a = 0; w.empty() && a < n1; ++a) {
    for (int b = 0; b < n1; ++b) {
      int c = G.mul(a, b);
      bool should = G.source[a] == G.target[b];
      if (should) ++composable;
      if (should && !in(c, n1)) {
        w = "compose undefined on composable pair (" + G.arrows[a] + ", " + G.arrows[b] + ")";
        break;
      }
      if (!should && c != -1) {
        w = "compose defined on non-composable pair (" + G.arrows[a] + ", " + G.arrows[b] + ")";
        break;
      }
    }
  }
  if (w.empty() && composable != G.compose.size()) w = "compose table has entries outside the arrow range";
  r.record("groupoid tables total on their domains", "groupoid/structure", w);
  if (!w.empty()) return r;

  w.clear();
  for (const auto& [k, c] : G.compose) {
    int a = static_cast<int>(k >> 32), b = static_cast<int>(k & 0xffffffffu);
    if (G.source[c] != G.source[b] || G.target[c] != G.target[a]) {
      w = "composite of (" + G.arrows[a] + ", " + G.arrows[b] + ") has wrong endpoints";
      break;
    }
  }
  r.record("source and target of composites", "groupoid/endpoints", w);

  w.clear();
  for (int x = 0; w.empty() && x < n0; ++x) {
    int e = G.identity[x];
    if (G.source[e] != x || G.target[e] != x) w = "identity of '" + G.objects[x] + "' is not a loop at it";
  }
  for (int a = 0; w.empty() && a < n1; ++a) {
    if (G.mul(G.identity[G.target[a]], a) != a || G.mul(a, G.identity[G.source[a]]) != a)
      w = "unit law fails at " + arrow_name(G, a);
  }
  r.record("unit laws", "groupoid/unit", w);

  w.clear();
  auto from = arrows_into(G);
  for (int a = 0; w.empty() && a < n1; ++a) {
    for (int b : from[G.source[a]]) {
      int ab = G.mul(a, b);
      for (int c : from[G.source[b]]) {
        if (G.mul(ab, c) != G.mul(a, G.mul(b, c))) {
          w = "(" + G.arrows[a] + "*" + G.arrows[b] + ")*" + G.arrows[c] + " differs from " + G.arrows[a] + "*(" +
              G.arrows[b] + "*" + G.arrows[c] + ")";
          break;
        }
      }
      if (!w.empty()) break;
    }
  }
  r.record("associativity", "groupoid/associativity", w);

  w.clear();
  for (int a = 0; w.empty() && a < n1; ++a) {
    int i = G.inverse[a];
    if (G.mul(a, i) != G.identity[G.target[a]] || G.mul(i, a) != G.identity[G.source[a]])
      w = "inverse law fails at " + arrow_name(G, a);
  }
  r.record("inverse laws", "groupoid/inverse", w);
  return r;
}

FiniteGroup cyclic_group(int m) {
  if (m < 1) throw Error("cyclic group order must be positive");
  Ids labels;
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < m; ++b) mul[a][b] = (a + b) % m;
  }
  return finish_group(labels, mul, 0);
}

FiniteGroup symmetric_group(int k) {
  if (k < 1 || k > 4) throw Error("symmetric group degree must be between 1 and 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  int n = static_cast<int>(perms.size());
  Ids labels;
  for (const auto& q : perms) {
    std::string s;
    for (int x : q) s += static_cast<char>('0' + x);
    labels.push_back(s);
  }
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
      mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return finish_group(labels, mul, 0);
}

FiniteGroup trivial_group() { return cyclic_group(1); }

FiniteGroupoid group_groupoid(const FiniteGroup& g, const std::string& object) {
  FiniteGroupoid G;
  int n = static_cast<int>(g.elements.size());
  G.objects = {object};
  G.arrows = g.elements;
  G.source.assign(n, 0);
  G.target.assign(n, 0);
  G.identity = {g.unit};
  G.inverse = g.inv;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) G.compose[pair_key(a, b)] = g.mul[a][b];
  canonicalize(G);
  return G;
}

FiniteGroupoid pair_groupoid(int k) {
  if (k < 0) throw Error("pair groupoid size must be non-negative");
  FiniteGroupoid G;
  for (int x = 0; x < k; ++x) G.objects.push_back(std::to_string(x));
  G.identity.assign(k, -1);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      G.arrows.push_back("(" + G.objects[x] + "," + G.objects[y] + ")");
      G.target.push_back(x);
      G.source.push_back(y);
    }
  for (int x = 0; x < k; ++x) G.identity[x] = x * k + x;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      G.inverse.push_back(y * k + x);
      for (int z = 0; z < k; ++z) G.compose[pair_key(x * k + y, y * k + z)] = x * k + z;
    }
  canonicalize(G);
  return G;
}

FiniteGroupoid unit_groupoid(Ids objects) {
  FiniteGroupoid G;
  G.objects = objects;
  G.arrows = objects;
  int n = static_cast<int>(objects.size());
  for (int x = 0; x < n; ++x) {
    G.source.push_back(x);
    G.target.push_back(x);
    G.identity.push_back(x);
    G.inverse.push_back(x);
    G.compose[pair_key(x, x)] = x;
  }
  canonicalize(G);
  return G;
}

SSet groupoid_nerve(const FiniteGroupoid& G, int N) {
  if (N < 0) throw Error("truncation level must be non-negative");
  std::vector<std::vector<std::vector<int>>> strings(N + 1);
  std::vector<VecMap<int>> index(N + 1);
  for (int x = 0; x < G.num_objects(); ++x) strings[0].push_back({x});
  if (N >= 1)
    for (int a = 0; a < G.num_arrows(); ++a) strings[1].push_back({a});
  auto into = arrows_into(G);
  for (int n = 2; n <= N; ++n)
    for (const auto& s : strings[n - 1])
      for (int a : into[G.source[s.back()]]) {
        auto t = s;
        t.push_back(a);
        strings[n].push_back(t);
      }
  std::vector<Ids> cells(N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int i = 0; i < static_cast<int>(strings[n].size()); ++i) {
      index[n][strings[n][i]] = i;
      if (n == 0) {
        cells[0].push_back(G.objects[strings[0][i][0]]);
      } else {
        Ids parts;
        for (int a : strings[n][i]) parts.push_back(G.arrows[a]);
        cells[n].push_back(join(parts, ","));
      }
    }
  }
  SSet X = make_sset(N, cells);
  // vertex k of a string s at level n >= 1
  auto vertex = [&](const std::vector<int>& s, int k) { return k == 0 ? G.target[s[0]] : G.source[s[k - 1]]; };
  for (int n = 1; n <= N; ++n) {
    for (int c = 0; c < static_cast<int>(strings[n].size()); ++c) {
      const auto& s = strings[n][c];
      for (int i = 0; i <= n; ++i) {
        if (n == 1) {
          X.face[1][i][c] = i == 0 ? G.source[s[0]] : G.target[s[0]];
          continue;
        }
        std::vector<int> t;
        for (int k = 0; k < n; ++k) {
          if (i == 0 && k == 0) continue;
          if (i == n && k == n - 1) continue;
          if (i > 0 && i < n && k == i - 1) {
            t.push_back(G.mul(s[i - 1], s[i]));
            continue;
          }
          if (i > 0 && i < n && k == i) continue;
          t.push_back(s[k]);
        }
        X.face[n][i][c] = index[n - 1].at(t);
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < static_cast<int>(strings[n].size()); ++c) {
      const auto& s = strings[n][c];
      for (int i = 0; i <= n; ++i) {
        if (n == 0) {
          X.degen[0][0][c] = index[1].at({G.identity[s[0]]});
          continue;
        }
        std::vector<int> t = s;
        t.insert(t.begin() + i, G.identity[vertex(s, i)]);
        X.degen[n][i][c] = index[n + 1].at(t);
      }
    }
  }
  canonicalize(X);
  return X;
}

std::vector<std::vector<int>> object_orbits(const FiniteGroupoid& G) {
  UnionFind uf(G.num_objects());
  for (int a = 0; a < G.num_arrows(); ++a) uf.unite(G.source[a], G.target[a]);
  std::vector<std::vector<int>> out;
  std::vector<int> slot(G.num_objects(), -1);
  for (int x = 0; x < G.num_objects(); ++x) {
    int r = uf.find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(x);
  }
  return out;
}

std::optional<GroupoidIso> groupoid_iso_search(const FiniteGroupoid& G, const FiniteGroupoid& H) {
  const int n0 = G.num_objects(), n1 = G.num_arrows();
  if (n0 != H.num_objects() || n1 != H.num_arrows()) return std::nullopt;
  auto hom_count = [](const FiniteGroupoid& K) {
    std::map<std::pair<int, int>, int> c;
    for (int a = 0; a < K.num_arrows(); ++a) ++c[{K.source[a], K.target[a]}];
    return c;
  };
  auto gc = hom_count(G), hc = hom_count(H);
  auto count = [](const std::map<std::pair<int, int>, int>& c, int s, int t) {
    auto it = c.find({s, t});
    return it == c.end() ? 0 : it->second;
  };
  GroupoidIso iso;
  iso.objects.assign(n0, -1);
  iso.arrows.assign(n1, -1);
  std::vector<char> used_o(n0, 0), used_a(n1, 0);
  std::vector<int> assigned;
  auto hom_h = [&](int s, int t) {
    std::vector<int> out;
    for (int b = 0; b < n1; ++b)
      if (H.source[b] == s && H.target[b] == t) out.push_back(b);
    return out;
  };

  std::function<bool(int)> arrows = [&](int a) -> bool {
    if (a == n1) return true;
    for (int b : hom_h(iso.objects[G.source[a]], iso.objects[G.target[a]])) {
      if (used_a[b]) continue;
      iso.arrows[a] = b;
      bool ok = true;
      for (int c : assigned) {
        int z = G.mul(a, c);
        if (z >= 0 && iso.arrows[z] >= 0 && H.mul(b, iso.arrows[c]) != iso.arrows[z]) ok = false;
        z = G.mul(c, a);
        if (ok && z >= 0 && iso.arrows[z] >= 0 && H.mul(iso.arrows[c], b) != iso.arrows[z]) ok = false;
        if (ok && G.target[c] == G.target[a]) {
          int y = G.mul(G.inverse[c], a);
          if (iso.arrows[y] >= 0 && H.mul(iso.arrows[c], iso.arrows[y]) != b) ok = false;
        }
        if (!ok) break;
      }
      if (!ok) {
        iso.arrows[a] = -1;
        continue;
      }
      used_a[b] = 1;
      assigned.push_back(a);
      if (arrows(a + 1)) return true;
      assigned.pop_back();
      used_a[b] = 0;
      iso.arrows[a] = -1;
    }
    return false;
  };

  std::function<bool(int)> objects = [&](int x) -> bool {
    if (x == n0) return arrows(0);
    for (int y = 0; y < n0; ++y) {
      if (used_o[y]) continue;
      bool ok = true;
      for (int z = 0; z <= x && ok; ++z) {
        int w = z == x ? y : iso.objects[z];
        ok = count(gc, x, z) == count(hc, y, w) && count(gc, z, x) == count(hc, w, y);
      }
      if (!ok) continue;
      iso.objects[x] = y;
      used_o[y] = 1;
      if (objects(x + 1)) return true;
      used_o[y] = 0;
      iso.objects[x] = -1;
    }
    return false;
  };
  if (!objects(0)) return std::nullopt;
  return iso;
}

void canonicalize(Bibundle& E) {
  std::vector<int> perm = canonical_order(E.carrier, "carrier element");
  std::vector<int> ident_l(E.left ? E.left->num_arrows() : 0), ident_r(E.right ? E.right->num_arrows() : 0);
  std::iota(ident_l.begin(), ident_l.end(), 0);
  std::iota(ident_r.begin(), ident_r.end(), 0);
  E.jl = permute_positions(E.jl, perm);
  E.jr = permute_positions(E.jr, perm);
  E.left_act = relabel_table(E.left_act, ident_l, perm, perm);
  E.right_act = relabel_table(E.right_act, perm, ident_r, perm);
}

Verdict right_principal(const Bibundle& E) {
  const auto& G = *E.right;
  const auto& H = *E.left;
  Verdict v;
  std::vector<std::vector<int>> fibre(H.num_objects());
  for (int e = 0; e < E.size(); ++e) fibre[E.jl[e]].push_back(e);
  for (int x = 0; x < H.num_objects(); ++x) {
    if (fibre[x].empty()) return {false, "left moment map misses object '" + H.objects[x] + "'"};
  }
  auto into = arrows_into(G);
  for (int e = 0; e < E.size(); ++e) {
    std::set<int> hit;
    for (int g : into[E.jr[e]]) {
      int eg = E.act_right(e, g);
      if (eg < 0) return {false, "right action undefined at ('" + E.carrier[e] + "', " + arrow_name(G, g) + ")"};
      if (!hit.insert(eg).second)
        return {false, "right action not free: two arrows move '" + E.carrier[e] + "' to '" + E.carrier[eg] + "'"};
    }
    for (int f : fibre[E.jl[e]]) {
      if (!hit.count(f))
        return {false, "right action not transitive: no arrow moves '" + E.carrier[e] + "' to '" + E.carrier[f] + "'"};
    }
  }
  return v;
}

Verdict left_principal(const Bibundle& E) {
  const auto& G = *E.right;
  const auto& H = *E.left;
  std::vector<std::vector<int>> fibre(G.num_objects());
  for (int e = 0; e < E.size(); ++e) fibre[E.jr[e]].push_back(e);
  for (int x = 0; x < G.num_objects(); ++x) {
    if (fibre[x].empty()) return {false, "right moment map misses object '" + G.objects[x] + "'"};
  }
  auto from = arrows_from(H);
  for (int e = 0; e < E.size(); ++e) {
    std::set<int> hit;
    for (int h : from[E.jl[e]]) {
      int he = E.act_left(h, e);
      if (he < 0) return {false, "left action undefined at (" + arrow_name(H, h) + ", '" + E.carrier[e] + "')"};
      if (!hit.insert(he).second)
        return {false, "left action not free: two arrows move '" + E.carrier[e] + "' to '" + E.carrier[he] + "'"};
    }
    for (int f : fibre[E.jr[e]]) {
      if (!hit.count(f))
        return {false, "left action not transitive: no arrow moves '" + E.carrier[e] + "' to '" + E.carrier[f] + "'"};
    }
  }
  return {};
}

Verdict is_biprincipal(const Bibundle& E) {
  Verdict v = right_principal(E);
  if (!v.ok) return v;
  return left_principal(E);
}

Report verify_bibundle(const Bibundle& E) {
  if (!E.left || !E.right) throw Error("bibundle is missing a groupoid");
  const auto& H = *E.left;
  const auto& G = *E.right;
  Report r;
  const int n = E.size();
  std::string w;
  auto from_h = arrows_from(H);
  auto into_g = arrows_into(G);
  if (static_cast<int>(E.jl.size()) != n || static_cast<int>(E.jr.size()) != n) w = "moment map lengths differ from carrier";
  for (int e = 0; w.empty() && e < n; ++e) {
    if (E.jl[e] < 0 || E.jl[e] >= H.num_objects() || E.jr[e] < 0 || E.jr[e] >= G.num_objects())
      w = "moment maps out of range at '" + E.carrier[e] + "'";
  }
  if (w.empty()) {
    std::size_t lcount = 0, rcount = 0;
    for (int e = 0; w.empty() && e < n; ++e) {
      for (int h : from_h[E.jl[e]]) {
        int v = E.act_left(h, e);
        ++lcount;
        if (v < 0 || v >= n) {
          w = "left action undefined at (" + arrow_name(H, h) + ", '" + E.carrier[e] + "')";
          break;
        }
      }
      for (int g : into_g[E.jr[e]]) {
        if (!w.empty()) break;
        int v = E.act_right(e, g);
        ++rcount;
        if (v < 0 || v >= n) w = "right action undefined at ('" + E.carrier[e] + "', " + arrow_name(G, g) + ")";
      }
    }
    if (w.empty() && lcount != E.left_act.size()) w = "left action has entries outside its domain";
    if (w.empty() && rcount != E.right_act.size()) w = "right action has entries outside its domain";
  }
  r.record("actions total on their domains", "bibundle/structure", w);
  if (!w.empty()) return r;

  w.clear();
  for (int e = 0; w.empty() && e < n; ++e) {
    for (int h : from_h[E.jl[e]]) {
      int he = E.act_left(h, e);
      if (E.jl[he] != H.target[h] || E.jr[he] != E.jr[e]) {
        w = "moments of " + arrow_name(H, h) + " . '" + E.carrier[e] + "' are wrong";
        break;
      }
    }
    for (int g : into_g[E.jr[e]]) {
      if (!w.empty()) break;
      int eg = E.act_right(e, g);
      if (E.jr[eg] != G.source[g] || E.jl[eg] != E.jl[e]) w = "moments of '" + E.carrier[e] + "' . " + arrow_name(G, g) + " are wrong";
    }
  }
  r.record("moment maps compatible with the actions", "bibundle/moment", w);
  if (!w.empty()) return r;

  w.clear();
  for (int e = 0; w.empty() && e < n; ++e) {
    if (E.act_left(H.identity[E.jl[e]], e) != e) w = "identity does not fix '" + E.carrier[e] + "' on the left";
    for (int h : from_h[E.jl[e]]) {
      if (!w.empty()) break;
      int he = E.act_left(h, e);
      for (int h2 : from_h[H.target[h]]) {
        if (E.act_left(h2, he) != E.act_left(H.mul(h2, h), e)) {
          w = "left action not associative at (" + arrow_name(H, h2) + ", " + arrow_name(H, h) + ", '" + E.carrier[e] + "')";
          break;
        }
      }
    }
  }
  r.record("left action axioms", "bibundle/left-action", w);

  w.clear();
  for (int e = 0; w.empty() && e < n; ++e) {
    if (E.act_right(e, G.identity[E.jr[e]]) != e) w = "identity does not fix '" + E.carrier[e] + "' on the right";
    for (int g : into_g[E.jr[e]]) {
      if (!w.empty()) break;
      int eg = E.act_right(e, g);
      for (int g2 : into_g[G.source[g]]) {
        if (E.act_right(eg, g2) != E.act_right(e, G.mul(g, g2))) {
          w = "right action not associative at ('" + E.carrier[e] + "', " + arrow_name(G, g) + ", " + arrow_name(G, g2) + ")";
          break;
        }
      }
    }
  }
  r.record("right action axioms", "bibundle/right-action", w);

  w.clear();
  for (int e = 0; w.empty() && e < n; ++e) {
    for (int h : from_h[E.jl[e]]) {
      int he = E.act_left(h, e);
      for (int g : into_g[E.jr[e]]) {
        if (E.act_right(he, g) != E.act_left(h, E.act_right(e, g))) {
          w = "actions do not commute at (" + arrow_name(H, h) + ", '" + E.carrier[e] + "', " + arrow_name(G, g) + ")";
          break;
        }
      }
      if (!w.empty()) break;
    }
  }
  r.record("left and right actions commute", "bibundle/commute", w);
  if (!r.ok()) return r;

  Verdict v = right_principal(E);
  r.record("right action free and transitive on left-moment fibres", "bibundle/principal", v.ok ? "" : v.witness);
  return r;
}

Bibundle identity_bibundle(GroupoidPtr G) {
  Bibundle E;
  E.left = G;
  E.right = G;
  E.carrier = G->arrows;
  E.jl = G->target;
  E.jr = G->source;
  for (int a = 0; a < G->num_arrows(); ++a) {
    for (int b = 0; b < G->num_arrows(); ++b) {
      int c = G->mul(a, b);
      if (c < 0) continue;
      E.left_act[pair_key(a, b)] = c;
      E.right_act[pair_key(a, b)] = c;
    }
  }
  return E;
}

Composite compose_bibundles(const Bibundle& E, const Bibundle& F, RepOrder order) {
  if (!same_groupoid(E.right, F.left)) throw Error("cannot compose bibundles: middle groupoids differ");
  const auto& B = *E.right;
  std::vector<std::pair<int, int>> pairs;
  PairTable pidx;
  for (int e = 0; e < E.size(); ++e)
    for (int f = 0; f < F.size(); ++f)
      if (E.jr[e] == F.jl[f]) {
        pidx[pair_key(e, f)] = static_cast<int>(pairs.size());
        pairs.push_back({e, f});
      }
  UnionFind uf(static_cast<int>(pairs.size()));
  auto into = arrows_into(B);
  for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
    auto [e, f] = pairs[p];
    for (int b : into[E.jr[e]]) {
      int e2 = E.act_right(e, b);
      int f2 = F.act_left(B.inverse[b], f);
      uf.unite(p, lookup(pidx, e2, f2));
    }
  }
  std::map<int, std::vector<std::pair<int, int>>> by_root;
  for (int p = 0; p < static_cast<int>(pairs.size()); ++p) by_root[uf.find(p)].push_back(pairs[p]);

  Composite C;
  Bibundle& K = C.bib;
  K.left = E.left;
  K.right = F.right;
  std::vector<std::pair<int, int>> reps;
  std::vector<std::vector<std::pair<int, int>>> groups;
  for (auto& [root, ms] : by_root) {
    std::sort(ms.begin(), ms.end());
    auto rep = order == RepOrder::Least ? ms.front() : ms.back();
    K.carrier.push_back("[" + E.carrier[rep.first] + "," + F.carrier[rep.second] + "]");
    reps.push_back(rep);
    groups.push_back(ms);
  }
  std::vector<int> perm = canonical_order(K.carrier, "composite element");
  reps = permute_positions(reps, perm);
  C.members = permute_positions(groups, perm);
  for (int c = 0; c < static_cast<int>(C.members.size()); ++c)
    for (auto [e, f] : C.members[c]) C.pair_class[pair_key(e, f)] = c;
  const int n = K.size();
  K.jl.resize(n);
  K.jr.resize(n);
  auto from_a = arrows_from(*K.left);
  auto into_c = arrows_into(*K.right);
  for (int c = 0; c < n; ++c) {
    auto [e, f] = reps[c];
    K.jl[c] = E.jl[e];
    K.jr[c] = F.jr[f];
    for (int a : from_a[E.jl[e]]) K.left_act[pair_key(a, c)] = lookup(C.pair_class, E.act_left(a, e), f);
    for (int g : into_c[F.jr[f]]) K.right_act[pair_key(c, g)] = lookup(C.pair_class, e, F.act_right(f, g));
  }
  return C;
}

Report verify_bibundle_morphism(const Bibundle& E, const Bibundle& F, const std::vector<int>& phi) {
  Report r;
  std::string w;
  if (!same_groupoid(E.left, F.left) || !same_groupoid(E.right, F.right)) w = "bibundles have different groupoids";
  if (w.empty() && static_cast<int>(phi.size()) != E.size()) w = "map is not total on the carrier";
  for (int e = 0; w.empty() && e < E.size(); ++e) {
    if (phi[e] < 0 || phi[e] >= F.size()) w = "map is not total on the carrier";
    else if (E.jl[e] != F.jl[phi[e]] || E.jr[e] != F.jr[phi[e]]) w = "moment maps not preserved at '" + E.carrier[e] + "'";
  }
  r.record("preserves moment maps", "bibundle/morphism-moment", w);
  if (!w.empty()) return r;
  w.clear();
  for (const auto& [k, v] : E.left_act) {
    int h = static_cast<int>(k >> 32), e = static_cast<int>(k & 0xffffffffu);
    if (phi[v] != F.act_left(h, phi[e])) {
      w = "not left equivariant at (" + arrow_name(*E.left, h) + ", '" + E.carrier[e] + "')";
      break;
    }
  }
  r.record("left equivariant", "bibundle/morphism-left", w);
  w.clear();
  for (const auto& [k, v] : E.right_act) {
    int e = static_cast<int>(k >> 32), g = static_cast<int>(k & 0xffffffffu);
    if (phi[v] != F.act_right(phi[e], g)) {
      w = "not right equivariant at ('" + E.carrier[e] + "', " + arrow_name(*E.right, g) + ")";
      break;
    }
  }
  r.record("right equivariant", "bibundle/morphism-right", w);
  return r;
}

std::optional<std::vector<int>> bibundle_morphism_search(const Bibundle& E, const Bibundle& F) {
  if (!same_groupoid(E.left, F.left) || !same_groupoid(E.right, F.right)) return std::nullopt;
  const auto& H = *E.left;
  const auto& G = *E.right;
  auto from_h = arrows_from(H);
  auto into_g = arrows_into(G);
  std::vector<int> phi(E.size(), -1);
  for (int root = 0; root < E.size(); ++root) {
    if (phi[root] >= 0) continue;
    std::vector<int> candidates;
    int same = find_id(F.carrier, E.carrier[root]);
    if (same >= 0) candidates.push_back(same);
    for (int y = 0; y < F.size(); ++y)
      if (y != same) candidates.push_back(y);
    bool found = false;
    for (int y0 : candidates) {
      if (F.jl[y0] != E.jl[root] || F.jr[y0] != E.jr[root]) continue;
      std::vector<int> touched{root};
      phi[root] = y0;
      std::vector<int> queue{root};
      bool ok = true;
      for (std::size_t qi = 0; ok && qi < queue.size(); ++qi) {
        int x = queue[qi], y = phi[x];
        auto visit = [&](int x2, int y2) {
          if (x2 < 0 || y2 < 0 || E.jl[x2] != F.jl[y2] || E.jr[x2] != F.jr[y2]) {
            ok = false;
            return;
          }
          if (phi[x2] < 0) {
            phi[x2] = y2;
            touched.push_back(x2);
            queue.push_back(x2);
          } else if (phi[x2] != y2) {
            ok = false;
          }
        };
        for (int h : from_h[E.jl[x]]) {
          visit(E.act_left(h, x), F.act_left(h, y));
          if (!ok) break;
        }
        for (int g : into_g[E.jr[x]]) {
          if (!ok) break;
          visit(E.act_right(x, g), F.act_right(y, g));
        }
      }
      if (ok) {
        found = true;
        break;
      }
      for (int t : touched) phi[t] = -1;
    }
    if (!found) return std::nullopt;
  }
  return phi;
}

bool is_bijection(const std::vector<int>& phi, int target_size) {
  if (static_cast<int>(phi.size()) != target_size) return false;
  std::vector<char> hit(target_size, 0);
  for (int v : phi) {
    if (v < 0 || v >= target_size || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

std::vector<int> invert_bijection(const std::vector<int>& phi) {
  std::vector<int> inv(phi.size(), -1);
  for (std::size_t i = 0; i < phi.size(); ++i) inv[phi[i]] = static_cast<int>(i);
  return inv;
}

Chain chain_groupoid(GroupoidPtr G, const std::vector<int>& s_map, const std::vector<int>& t_map, int k) {
  if (k < 1) throw Error("chain length must be positive");
  Chain C;
  C.base = G;
  C.k = k;
  C.s_map = s_map;
  C.t_map = t_map;
  if (k == 1) {
    C.g = G;
    for (int x = 0; x < G->num_objects(); ++x) C.obj_tuple.push_back({x});
    for (int a = 0; a < G->num_arrows(); ++a) C.arr_tuple.push_back({a});
  } else {
    auto K = std::make_shared<FiniteGroupoid>();
    std::vector<int> cur;
    std::function<void(int)> objs = [&](int i) {
      if (i == k) {
        C.obj_tuple.push_back(cur);
        return;
      }
      for (int x = 0; x < G->num_objects(); ++x) {
        if (i > 0 && s_map[cur[i - 1]] != t_map[x]) continue;
        cur.push_back(x);
        objs(i + 1);
        cur.pop_back();
      }
    };
    objs(0);
    for (int i = 0; i < static_cast<int>(C.obj_tuple.size()); ++i) C.obj_index[C.obj_tuple[i]] = i;
    std::function<void(int)> arrs = [&](int i) {
      if (i == k) {
        C.arr_tuple.push_back(cur);
        return;
      }
      for (int a = 0; a < G->num_arrows(); ++a) {
        if (i > 0 && (s_map[G->source[cur[i - 1]]] != t_map[G->source[a]] ||
                      s_map[G->target[cur[i - 1]]] != t_map[G->target[a]]))
          continue;
        cur.push_back(a);
        arrs(i + 1);
        cur.pop_back();
      }
    };
    arrs(0);
    for (const auto& t : C.obj_tuple) {
      Ids parts;
      for (int x : t) parts.push_back(G->objects[x]);
      K->objects.push_back(tuple_id(parts));
    }
    for (int a = 0; a < static_cast<int>(C.arr_tuple.size()); ++a) C.arr_index[C.arr_tuple[a]] = a;
    for (const auto& t : C.arr_tuple) {
      Ids parts;
      std::vector<int> src, tgt, inv;
      for (int a : t) {
        parts.push_back(G->arrows[a]);
        src.push_back(G->source[a]);
        tgt.push_back(G->target[a]);
        inv.push_back(G->inverse[a]);
      }
      K->arrows.push_back(tuple_id(parts));
      K->source.push_back(C.obj_index.at(src));
      K->target.push_back(C.obj_index.at(tgt));
      K->inverse.push_back(C.arr_index.at(inv));
    }
    for (const auto& t : C.obj_tuple) {
      std::vector<int> ids;
      for (int x : t) ids.push_back(G->identity[x]);
      K->identity.push_back(C.arr_index.at(ids));
    }
    auto into = arrows_into(*K);
    for (int a = 0; a < static_cast<int>(C.arr_tuple.size()); ++a) {
      for (int b : into[K->source[a]]) {
        std::vector<int> c(k);
        for (int i = 0; i < k; ++i) c[i] = G->mul(C.arr_tuple[a][i], C.arr_tuple[b][i]);
        K->compose[pair_key(a, b)] = C.arr_index.at(c);
      }
    }
    std::vector<int> po, pa;
    canonicalize(*K, po, pa);
    C.obj_tuple = permute_positions(C.obj_tuple, po);
    C.arr_tuple = permute_positions(C.arr_tuple, pa);
    C.g = K;
  }
  C.obj_index.clear();
  C.arr_index.clear();
  for (int i = 0; i < static_cast<int>(C.obj_tuple.size()); ++i) C.obj_index[C.obj_tuple[i]] = i;
  for (int i = 0; i < static_cast<int>(C.arr_tuple.size()); ++i) C.arr_index[C.arr_tuple[i]] = i;
  return C;
}

ProductBibundle product_bibundle(const std::vector<const Bibundle*>& parts, const std::vector<const Chain*>& lefts,
                                 const std::vector<const Chain*>& rights, const Chain& left, const Chain& right) {
  const int m = static_cast<int>(parts.size());
  if (m == 0 || static_cast<int>(lefts.size()) != m || static_cast<int>(rights.size()) != m)
    throw Error("product bibundle needs one left and one right chain per part");
  int kl = 0, kr = 0;
  for (int i = 0; i < m; ++i) {
    if (!same_groupoid(parts[i]->left, lefts[i]->g) || !same_groupoid(parts[i]->right, rights[i]->g))
      throw Error("product bibundle part groupoids do not match the chains");
    kl += lefts[i]->k;
    kr += rights[i]->k;
  }
  if (kl != left.k || kr != right.k) throw Error("product bibundle chain lengths do not add up");

  ProductBibundle P;
  Bibundle& B = P.bib;
  B.left = left.g;
  B.right = right.g;
  std::vector<int> cur;
  std::vector<int> lt, rt;
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      auto li = left.obj_index.find(lt);
      auto ri = right.obj_index.find(rt);
      if (li == left.obj_index.end() || ri == right.obj_index.end()) return;
      Ids parts_id;
      for (int j = 0; j < m; ++j) parts_id.push_back(parts[j]->carrier[cur[j]]);
      B.carrier.push_back(tuple_id(parts_id));
      B.jl.push_back(li->second);
      B.jr.push_back(ri->second);
      P.tuples.push_back(cur);
      return;
    }
    const Bibundle& E = *parts[i];
    for (int e = 0; e < E.size(); ++e) {
      const auto& ltup = lefts[i]->obj_tuple[E.jl[e]];
      const auto& rtup = rights[i]->obj_tuple[E.jr[e]];
      if (!lt.empty() && left.s_map[lt.back()] != left.t_map[ltup.front()]) continue;
      if (!rt.empty() && right.s_map[rt.back()] != right.t_map[rtup.front()]) continue;
      cur.push_back(e);
      lt.insert(lt.end(), ltup.begin(), ltup.end());
      rt.insert(rt.end(), rtup.begin(), rtup.end());
      rec(i + 1);
      lt.resize(lt.size() - ltup.size());
      rt.resize(rt.size() - rtup.size());
      cur.pop_back();
    }
  };
  rec(0);
  std::vector<int> perm = canonical_order(B.carrier, "product element");
  B.jl = permute_positions(B.jl, perm);
  B.jr = permute_positions(B.jr, perm);
  P.tuples = permute_positions(P.tuples, perm);
  for (int x = 0; x < B.size(); ++x) P.tuple_index[P.tuples[x]] = x;

  auto from_l = arrows_from(*B.left);
  auto into_r = arrows_into(*B.right);
  auto split = [](const std::vector<int>& t, const std::vector<const Chain*>& chains, int i) {
    int off = 0;
    for (int j = 0; j < i; ++j) off += chains[j]->k;
    return std::vector<int>(t.begin() + off, t.begin() + off + chains[i]->k);
  };
  for (int x = 0; x < B.size(); ++x) {
    for (int A : from_l[B.jl[x]]) {
      std::vector<int> out(m);
      for (int i = 0; i < m; ++i) {
        int piece = lefts[i]->arr_index.at(split(left.arr_tuple[A], lefts, i));
        out[i] = parts[i]->act_left(piece, P.tuples[x][i]);
      }
      B.left_act[pair_key(A, x)] = P.tuple_index.at(out);
    }
    for (int A : into_r[B.jr[x]]) {
      std::vector<int> out(m);
      for (int i = 0; i < m; ++i) {
        int piece = rights[i]->arr_index.at(split(right.arr_tuple[A], rights, i));
        out[i] = parts[i]->act_right(P.tuples[x][i], piece);
      }
      B.right_act[pair_key(x, A)] = P.tuple_index.at(out);
    }
  }
  return P;
}

Pullback pullback_groupoid(const FiniteGroupoid& G, const Ids& S, const std::vector<int>& f) {
  if (f.size() != S.size()) throw Error("pullback map must be defined on every point");
  for (int v : f)
    if (v < 0 || v >= G.num_objects()) throw Error("pullback map value out of range");
  Pullback P;
  FiniteGroupoid& H = P.groupoid;
  H.objects = S;
  const int n = static_cast<int>(S.size());
  std::map<std::array<int, 3>, int> index;
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < G.num_arrows(); ++a)
      for (int y = 0; y < n; ++y) {
        if (G.target[a] != f[x] || G.source[a] != f[y]) continue;
        index[{x, a, y}] = static_cast<int>(P.triple.size());
        P.triple.push_back({x, a, y});
        H.arrows.push_back("(" + S[x] + "," + G.arrows[a] + "," + S[y] + ")");
        H.target.push_back(x);
        H.source.push_back(y);
      }
  for (const auto& t : P.triple) H.inverse.push_back(index.at({t[2], G.inverse[t[1]], t[0]}));
  for (int x = 0; x < n; ++x) H.identity.push_back(index.at({x, G.identity[f[x]], x}));
  auto into = arrows_into(H);
  for (int a = 0; a < static_cast<int>(P.triple.size()); ++a)
    for (int b : into[H.source[a]])
      H.compose[pair_key(a, b)] = index.at({P.triple[a][0], G.mul(P.triple[a][1], P.triple[b][1]), P.triple[b][2]});
  std::vector<int> po, pa;
  canonicalize(H, po, pa);
  P.triple = permute_positions(P.triple, pa);
  for (auto& t : P.triple) {
    t[0] = po[t[0]];
    t[2] = po[t[2]];
  }
  std::vector<char> reached(G.num_objects(), 0);
  for (int v : f) reached[v] = 1;
  for (const auto& orbit : object_orbits(G)) {
    bool any = std::any_of(orbit.begin(), orbit.end(), [&](int x) { return reached[x] != 0; });
    if (!any) {
      P.essentially_surjective = false;
      P.witness = "no point maps into the orbit of '" + G.objects[orbit.front()] + "'";
      break;
    }
  }
  return P;
}

Bibundle pullback_bibundle(GroupoidPtr H, const std::vector<std::array<int, 3>>& triple, GroupoidPtr G,
                           const std::vector<int>& f) {
  // f is indexed by the objects of H in their canonical order.
  Bibundle E;
  E.left = H;
  E.right = G;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> elems;
  for (int x = 0; x < H->num_objects(); ++x)
    for (int a = 0; a < G->num_arrows(); ++a)
      if (G->target[a] == f[x]) elems.push_back({x, a});
  for (const auto& [x, a] : elems) E.carrier.push_back("(" + H->objects[x] + "," + G->arrows[a] + ")");
  std::vector<int> perm = canonical_order(E.carrier, "pullback bibundle element");
  elems = permute_positions(elems, perm);
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
    index[elems[i]] = i;
    E.jl.push_back(elems[i].first);
    E.jr.push_back(G->source[elems[i].second]);
  }
  auto from_h = arrows_from(*H);
  auto into_g = arrows_into(*G);
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
    auto [x, a] = elems[i];
    for (int h : from_h[x]) E.left_act[pair_key(h, i)] = index.at({triple[h][0], G->mul(triple[h][1], a)});
    for (int g : into_g[G->source[a]]) E.right_act[pair_key(i, g)] = index.at({x, G->mul(a, g)});
  }
  return E;
}

StrictUnit adjoin_strict_unit(GroupoidPtr G, const Bibundle& E) {
  if (!E.left || !E.right || !same_groupoid(E.right, G)) throw Error("unit bibundle must land in the given groupoid");
  Report check = verify_bibundle(E);
  if (!check.ok()) throw Error("unit bibundle is malformed: " + check.first_failure()->witness);
  const auto& M = *E.left;
  for (int a = 0; a < M.num_arrows(); ++a)
    if (M.source[a] != M.target[a] || M.identity[M.source[a]] != a)
      throw Error("unit bibundle must start at a groupoid with identity arrows only");
  const int nm = M.num_objects(), n0 = G->num_objects();
  std::vector<int> chosen(nm, -1);
  for (int e = 0; e < E.size(); ++e)
    if (chosen[E.jl[e]] < 0) chosen[E.jl[e]] = e;
  Ids S = G->objects;
  std::vector<int> f(n0);
  std::iota(f.begin(), f.end(), 0);
  for (int m = 0; m < nm; ++m) {
    S.push_back("e(" + M.objects[m] + ")");
    f.push_back(E.jr[chosen[m]]);
  }
  Pullback P = pullback_groupoid(*G, S, f);
  FiniteGroupoid H = P.groupoid;
  // S is not sorted yet; pullback_groupoid sorted it, so recover the point order.
  Ids sorted = S;
  std::vector<int> spos = canonical_order(sorted, "object");
  std::vector<int> f_sorted = permute_positions(f, spos);
  std::vector<char> is_old(H.num_objects(), 0);
  for (int x = 0; x < n0; ++x) is_old[spos[x]] = 1;
  for (int a = 0; a < H.num_arrows(); ++a) {
    const auto& t = P.triple[a];
    if (is_old[t[0]] && is_old[t[2]]) H.arrows[a] = G->arrows[t[1]];
  }
  std::vector<int> po, pa;
  canonicalize(H, po, pa);
  auto triple = permute_positions(P.triple, pa);
  for (auto& t : triple) {
    t[0] = po[t[0]];
    t[2] = po[t[2]];
  }
  f_sorted = permute_positions(f_sorted, po);
  StrictUnit U;
  auto Hp = std::make_shared<const FiniteGroupoid>(std::move(H));
  U.groupoid = Hp;
  for (int m = 0; m < nm; ++m) U.unit.push_back(po[spos[n0 + m]]);
  U.morita = pullback_bibundle(Hp, triple, G, f_sorted);

  Bibundle& R = U.restricted;
  R.left = E.left;
  R.right = G;
  std::vector<int> owner(Hp->num_objects(), -1);
  for (int m = 0; m < nm; ++m) owner[U.unit[m]] = m;
  std::vector<int> keep;
  for (int e = 0; e < U.morita.size(); ++e)
    if (owner[U.morita.jl[e]] >= 0) keep.push_back(e);
  std::vector<int> newidx(U.morita.size(), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    int e = keep[i];
    newidx[e] = i;
    R.carrier.push_back(U.morita.carrier[e]);
    R.jl.push_back(owner[U.morita.jl[e]]);
    R.jr.push_back(U.morita.jr[e]);
  }
  auto into_g = arrows_into(*G);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    int e = keep[i];
    for (int a = 0; a < M.num_arrows(); ++a)
      if (M.source[a] == R.jl[i]) R.left_act[pair_key(a, i)] = i;
    for (int g : into_g[R.jr[i]]) R.right_act[pair_key(i, g)] = newidx[U.morita.act_right(e, g)];
  }
  return U;
}

}  // namespace fhg
