// Licensed under the Apache License, Version 2.0.
#include "two_groupoid.hpp"

#include <algorithm>
#include <functional>

namespace fhg {

namespace {

std::string cell(const Ids& ids, int c) { return "'" + ids[c] + "'"; }

std::string tuple_text(const Ids& ids, const std::vector<int>& t) {
  Ids parts;
  for (int c : t) parts.push_back(ids[c]);
  return tuple_id(parts);
}

std::string tetra_text(const TwoGroupoidData& D, const Tetra& t) {
  return tuple_text(D.x2, std::vector<int>(t.begin(), t.end()));
}

bool glues(const TwoGroupoidData& D, const Tetra& t) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (D.d2[a][t[b]] != D.d2[b - 1][t[a]]) return false;
  return true;
}

int find_m(const TwoGroupoidData& D, int i, const std::array<int, 3>& key) {
  auto it = D.m[i].find(key);
  return it == D.m[i].end() ? -1 : it->second;
}

}  // namespace

std::array<int, 3> drop(const Tetra& t, int i) {
  std::array<int, 3> k{};
  for (int a = 0, p = 0; a < 4; ++a)
    if (a != i) k[p++] = t[a];
  return k;
}

Tetra insert(const std::array<int, 3>& k, int i, int v) {
  Tetra t{};
  for (int a = 0, p = 0; a < 4; ++a) t[a] = a == i ? v : k[p++];
  return t;
}

void canonicalize(TwoGroupoidData& D) {
  auto p0 = canonical_order(D.x0, "X0");
  auto p1 = canonical_order(D.x1, "X1");
  auto p2 = canonical_order(D.x2, "X2");
  for (auto& t : D.d1) t = relabel(permute_positions(t, p1), p0);
  D.s0 = relabel(permute_positions(D.s0, p0), p1);
  for (auto& t : D.d2) t = relabel(permute_positions(t, p2), p1);
  for (auto& t : D.s1) t = relabel(permute_positions(t, p1), p2);
  for (auto& table : D.m) {
    std::map<std::array<int, 3>, int> out;
    for (const auto& [k, v] : table) out[{p2[k[0]], p2[k[1]], p2[k[2]]}] = p2[v];
    table = std::move(out);
  }
}

SSet as_sset(const TwoGroupoidData& D) {
  SSet X = make_sset(2, {D.x0, D.x1, D.x2});
  for (int i = 0; i < 2; ++i) X.face[1][i] = D.d1[i];
  X.degen[0][0] = D.s0;
  for (int i = 0; i < 3; ++i) X.face[2][i] = D.d2[i];
  for (int i = 0; i < 2; ++i) X.degen[1][i] = D.s1[i];
  return X;
}

TwoGroupoidData layers_of(const SSet& X) {
  if (X.N < 2) throw Error("need levels 0..2 to read 2-groupoid layers");
  TwoGroupoidData D;
  D.x0 = X.cells[0];
  D.x1 = X.cells[1];
  D.x2 = X.cells[2];
  for (int i = 0; i < 2; ++i) D.d1[i] = X.face[1][i];
  D.s0 = X.degen[0][0];
  for (int i = 0; i < 3; ++i) D.d2[i] = X.face[2][i];
  for (int i = 0; i < 2; ++i) D.s1[i] = X.degen[1][i];
  return D;
}

std::vector<std::vector<int>> horn_tuples(const SSet& X, int m, int j) {
  if (m < 1 || m > X.N + 1 || j < 0 || j > m) throw Error("horn index out of range");
  std::vector<int> pos;
  for (int k = 0; k <= m; ++k)
    if (k != j) pos.push_back(k);
  const int lvl = m - 1;
  const int n = X.size(lvl);
  std::vector<std::vector<std::vector<int>>> by_face;
  if (lvl >= 1) {
    by_face.assign(lvl + 1, std::vector<std::vector<int>>(X.size(lvl - 1)));
    for (int a = 0; a <= lvl; ++a)
      for (int y = 0; y < n; ++y) by_face[a][X.face[lvl][a][y]].push_back(y);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<int> all(n);
  for (int y = 0; y < n; ++y) all[y] = y;
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == pos.size()) {
      out.push_back(cur);
      return;
    }
    const std::vector<int>* cand = &all;
    int b = pos[p];
    if (p > 0 && lvl >= 1) cand = &by_face[pos[0]][X.face[lvl][b - 1][cur[0]]];
    for (int y : *cand) {
      bool ok = true;
      for (std::size_t q = 0; q < p && ok; ++q) {
        int a = pos[q];
        ok = X.face[lvl][a][y] == X.face[lvl][b - 1][cur[q]];
      }
      if (!ok) continue;
      cur.push_back(y);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<int>> horn_space(const TwoGroupoidData& D, int m, int j) {
  if (m != 2 && m != 3) throw Error("horn spaces are defined for m = 2 or 3");
  return horn_tuples(as_sset(D), m, j);
}

std::set<Tetra> tetrahedra(const TwoGroupoidData& D) {
  std::set<Tetra> out;
  for (const auto& h : horn_space(D, 3, 0)) {
    int v = find_m(D, 0, {h[0], h[1], h[2]});
    if (v >= 0) out.insert({v, h[0], h[1], h[2]});
  }
  return out;
}

Report verify_two_groupoid(const TwoGroupoidData& D) {
  Report r;
  const int n0 = static_cast<int>(D.x0.size()), n1 = static_cast<int>(D.x1.size()),
            n2 = static_cast<int>(D.x2.size());
  std::string w;
  auto bad_table = [&](const std::vector<int>& t, int len, int range) {
    if (static_cast<int>(t.size()) != len) return true;
    return std::any_of(t.begin(), t.end(), [&](int v) { return v < 0 || v >= range; });
  };
  for (int i = 0; i < 2 && w.empty(); ++i)
    if (bad_table(D.d1[i], n1, n0)) w = "d" + std::to_string(i) + " on X1 is not a total map to X0";
  if (w.empty() && bad_table(D.s0, n0, n1)) w = "s0 on X0 is not a total map to X1";
  for (int i = 0; i < 3 && w.empty(); ++i)
    if (bad_table(D.d2[i], n2, n1)) w = "d" + std::to_string(i) + " on X2 is not a total map to X1";
  for (int i = 0; i < 2 && w.empty(); ++i)
    if (bad_table(D.s1[i], n1, n2)) w = "s" + std::to_string(i) + " on X1 is not a total map to X2";
  for (int i = 0; i < 4 && w.empty(); ++i)
    for (const auto& [k, v] : D.m[i])
      if (v < 0 || v >= n2 || std::any_of(k.begin(), k.end(), [&](int c) { return c < 0 || c >= n2; })) {
        w = "m" + std::to_string(i) + " has an entry outside X2";
        break;
      }
  r.record("layer tables well formed", "two-groupoid/structure", w);
  if (!w.empty()) return r;

  SSet X = as_sset(D);
  Report simp = verify_simplicial(X);
  r.add(simp);
  if (!simp.ok()) return r;

  w.clear();
  for (int i = 0; i < 2 && w.empty(); ++i) {
    std::vector<char> hit(n0, 0);
    for (int v : D.d1[i]) hit[v] = 1;
    for (int x = 0; x < n0; ++x)
      if (!hit[x]) {
        w = "no X1 element has d" + std::to_string(i) + " = " + cell(D.x0, x);
        break;
      }
  }
  r.record("faces X1 -> X0 surjective", "two-groupoid/1-kan", w);

  w.clear();
  for (int j = 0; j <= 2 && w.empty(); ++j) {
    std::set<std::vector<int>> image;
    for (int y = 0; y < n2; ++y) {
      std::vector<int> t;
      for (int k = 0; k <= 2; ++k)
        if (k != j) t.push_back(D.d2[k][y]);
      image.insert(t);
    }
    for (const auto& h : horn_tuples(X, 2, j))
      if (!image.count(h)) {
        w = "horn " + std::to_string(j) + " " + tuple_text(D.x1, h) + " has no filler in X2";
        break;
      }
  }
  r.record("X2 fills every 2-horn", "two-groupoid/2-kan", w);

  w.clear();
  std::array<std::vector<std::vector<int>>, 4> horns;
  for (int i = 0; i < 4; ++i) horns[i] = horn_tuples(X, 3, i);
  for (int i = 0; i < 4 && w.empty(); ++i) {
    if (horns[i].size() != D.m[i].size()) {
      w = "m" + std::to_string(i) + " has " + std::to_string(D.m[i].size()) + " entries but the horn space has " +
          std::to_string(horns[i].size());
    }
    for (const auto& h : horns[i]) {
      if (!w.empty()) break;
      std::array<int, 3> key{h[0], h[1], h[2]};
      int v = find_m(D, i, key);
      if (v < 0) {
        w = "m" + std::to_string(i) + " undefined on horn " + tuple_text(D.x2, h);
      } else if (!glues(D, insert(key, i, v))) {
        w = "m" + std::to_string(i) + " value " + cell(D.x2, v) + " does not glue into horn " + tuple_text(D.x2, h);
      }
    }
  }
  r.record("m tables total on horn spaces with glued values", "two-groupoid/m-domain", w);
  if (!w.empty()) return r;

  w.clear();
  std::array<std::set<Tetra>, 4> T;
  for (int i = 0; i < 4; ++i)
    for (const auto& [k, v] : D.m[i]) T[i].insert(insert(k, i, v));
  for (int i = 1; i < 4 && w.empty(); ++i) {
    if (T[i] == T[0]) continue;
    for (const auto& t : T[0])
      if (!T[i].count(t)) {
        w = "tetrahedron " + tetra_text(D, t) + " satisfies the m0 equation but not the m" + std::to_string(i) + " equation";
        break;
      }
    if (w.empty())
      for (const auto& t : T[i])
        if (!T[0].count(t)) {
          w = "tetrahedron " + tetra_text(D, t) + " satisfies the m" + std::to_string(i) + " equation but not the m0 equation";
          break;
        }
  }
  r.record("the four m equations are equivalent", "two-groupoid/m-compatibility", w);

  w.clear();
  for (int y = 0; y < n2 && w.empty(); ++y) {
    const Tetra s[3] = {
        {y, y, D.s1[0][D.d2[1][y]], D.s1[0][D.d2[2][y]]},
        {D.s1[0][D.d2[0][y]], y, y, D.s1[1][D.d2[2][y]]},
        {D.s1[1][D.d2[0][y]], D.s1[1][D.d2[1][y]], y, y},
    };
    const int eqs[3][2] = {{1, 0}, {2, 1}, {3, 2}};
    for (int q = 0; q < 3 && w.empty(); ++q)
      for (int i : eqs[q]) {
        if (find_m(D, i, drop(s[q], i)) != y) {
          w = "degenerate tetrahedron " + tetra_text(D, s[q]) + " of " + cell(D.x2, y) + " violates the m" +
              std::to_string(i) + " equation";
          break;
        }
      }
  }
  r.record("m tables fix degenerate tetrahedra", "two-groupoid/coherence", w);

  w.clear();
  // configurations: the six triangles 0ij of a 4-simplex, glued along the edges 0i
  {
    std::vector<std::vector<int>> by_d2(n1);
    std::map<std::pair<int, int>, std::vector<int>> by_d1_d2;
    for (int y = 0; y < n2; ++y) {
      by_d2[D.d2[2][y]].push_back(y);
      by_d1_d2[{D.d2[1][y], D.d2[2][y]}].push_back(y);
    }
    std::array<std::unordered_map<std::uint64_t, int>, 4> fast;
    for (int i : {0, 3})
      for (const auto& [k, v] : D.m[i])
        fast[i][(static_cast<std::uint64_t>(k[0]) * n2 + k[1]) * n2 + k[2]] = v;
    auto mul = [&](int i, int a, int b, int c) {
      auto it = fast[i].find((static_cast<std::uint64_t>(a) * n2 + b) * n2 + c);
      return it == fast[i].end() ? -1 : it->second;
    };
    auto with = [&](int d1, int d2) -> const std::vector<int>& {
      static const std::vector<int> none;
      auto it = by_d1_d2.find({d1, d2});
      return it == by_d1_d2.end() ? none : it->second;
    };
    auto describe = [&](int a012, int a013, int a023, int a014, int a024, int a034) {
      return "configuration 012=" + cell(D.x2, a012) + " 013=" + cell(D.x2, a013) + " 023=" + cell(D.x2, a023) +
             " 014=" + cell(D.x2, a014) + " 024=" + cell(D.x2, a024) + " 034=" + cell(D.x2, a034);
    };
    for (int a012 = 0; a012 < n2 && w.empty(); ++a012) {
      const int e01 = D.d2[2][a012], e02 = D.d2[1][a012];
      for (int a013 : by_d2[e01]) {
        if (!w.empty()) break;
        const int e03 = D.d2[1][a013];
        for (int a023 : with(e03, e02)) {
          if (!w.empty()) break;
          const int first = mul(0, a023, a013, a012);
          for (int a014 : by_d2[e01]) {
            if (!w.empty()) break;
            const int e04 = D.d2[1][a014];
            for (int a024 : with(e04, e02)) {
              if (!w.empty()) break;
              const int f124 = mul(0, a024, a014, a012);
              for (int a034 : with(e04, e03)) {
                int f134 = mul(0, a034, a014, a013);
                int f234 = mul(0, a034, a024, a023);
                int second = (f124 < 0 || f134 < 0 || f234 < 0) ? -1 : mul(3, f234, f134, f124);
                if (first < 0 || second < 0) {
                  w = describe(a012, a013, a023, a014, a024, a034) + ": a multiplication is undefined";
                } else if (first != second) {
                  w = describe(a012, a013, a023, a014, a024, a034) + ": face 123 is " + cell(D.x2, first) +
                      " directly but " + cell(D.x2, second) + " through vertex 4";
                }
                if (!w.empty()) break;
              }
            }
          }
        }
      }
    }
  }
  r.record("both routes to face 123 agree", "two-groupoid/pentagon", w);
  return r;
}

SSet nerve2(const TwoGroupoidData& D, int N) {
  if (N < 0) throw Error("truncation level must be non-negative");
  Report rep = verify_two_groupoid(D);
  if (!rep.ok()) throw Error("nerve needs verified 2-groupoid data: " + rep.first_failure()->witness);
  SSet base = as_sset(D);
  if (N <= 2) return truncate_levels(base, N);
  std::set<Tetra> T = tetrahedra(D);
  std::vector<Tetra> tets(T.begin(), T.end());
  std::map<Tetra, int> index;
  Ids ids;
  for (int c = 0; c < static_cast<int>(tets.size()); ++c) {
    index[tets[c]] = c;
    ids.push_back(tetra_text(D, tets[c]));
  }
  SSet X = make_sset(3, {D.x0, D.x1, D.x2, ids});
  for (int n = 1; n <= 2; ++n) X.face[n] = base.face[n];
  for (int n = 0; n <= 1; ++n) X.degen[n] = base.degen[n];
  for (int c = 0; c < static_cast<int>(tets.size()); ++c)
    for (int i = 0; i < 4; ++i) X.face[3][i][c] = tets[c][i];
  const int n2 = static_cast<int>(D.x2.size());
  for (int y = 0; y < n2; ++y) {
    const Tetra s[3] = {
        {y, y, D.s1[0][D.d2[1][y]], D.s1[0][D.d2[2][y]]},
        {D.s1[0][D.d2[0][y]], y, y, D.s1[1][D.d2[2][y]]},
        {D.s1[1][D.d2[0][y]], D.s1[1][D.d2[1][y]], y, y},
    };
    for (int i = 0; i < 3; ++i) X.degen[2][i][y] = index.at(s[i]);
  }
  canonicalize(X);
  if (N == 3) return X;
  return coskeleton(X, 3, N);
}

TwoGroupoidData truncate_to_data(const SSet& X) {
  if (X.N < 3) throw Error("truncation needs levels 0..3");
  TwoGroupoidData D = layers_of(X);
  for (int c = 0; c < X.size(3); ++c) {
    Tetra t{X.face[3][0][c], X.face[3][1][c], X.face[3][2][c], X.face[3][3][c]};
    for (int i = 0; i < 4; ++i) {
      auto key = drop(t, i);
      auto [it, fresh] = D.m[i].emplace(key, t[i]);
      if (!fresh && it->second != t[i]) {
        throw Error("Kan!(3," + std::to_string(i) + ") fails: horn " +
                    tuple_text(D.x2, std::vector<int>(key.begin(), key.end())) + " has fillers with faces '" +
                    D.x2[it->second] + "' and '" + D.x2[t[i]] + "'");
      }
    }
  }
  for (int i = 0; i < 4; ++i)
    for (const auto& h : horn_space(D, 3, i))
      if (!D.m[i].count({h[0], h[1], h[2]}))
        throw Error("Kan(3," + std::to_string(i) + ") fails: horn " + tuple_text(D.x2, h) + " has no filler");
  return D;
}

TwoGroupoidData point_two_groupoid() {
  TwoGroupoidData D;
  D.x0 = D.x1 = D.x2 = {"*"};
  D.d1 = {std::vector<int>{0}, std::vector<int>{0}};
  D.s0 = {0};
  D.d2 = {std::vector<int>{0}, std::vector<int>{0}, std::vector<int>{0}};
  D.s1 = {std::vector<int>{0}, std::vector<int>{0}};
  for (auto& t : D.m) t[{0, 0, 0}] = 0;
  return D;
}

TwoGroupoidData groupoid_two_data(const FiniteGroupoid& G) { return truncate_to_data(groupoid_nerve(G, 3)); }

BigonGroupoid bigon_groupoid(const TwoGroupoidData& D) {
  const int n1 = static_cast<int>(D.x1.size()), n2 = static_cast<int>(D.x2.size());
  std::vector<char> degenerate(n1, 0);
  for (int e : D.s0) degenerate[e] = 1;
  BigonGroupoid B;
  FiniteGroupoid& G = B.g;
  G.objects = D.x1;
  std::vector<int> arrow_of(n2, -1);
  for (int y = 0; y < n2; ++y)
    if (degenerate[D.d2[2][y]]) {
      arrow_of[y] = static_cast<int>(B.bigon.size());
      B.bigon.push_back(y);
      G.arrows.push_back(D.x2[y]);
      G.target.push_back(D.d2[0][y]);
      G.source.push_back(D.d2[1][y]);
    }
  auto need = [&](int v, const std::string& what) {
    if (v < 0 || arrow_of[v] < 0) throw Error("bigon groupoid: " + what + " is not a bigon; data is not verified");
    return arrow_of[v];
  };
  for (int e = 0; e < n1; ++e) G.identity.push_back(need(D.s1[0][e], "identity of " + cell(D.x1, e)));
  auto full = [&](int y) { return D.s1[0][D.s0[D.d1[0][D.d2[2][y]]]]; };
  for (int a = 0; a < G.num_arrows(); ++a) {
    int y = B.bigon[a];
    G.inverse.push_back(need(find_m(D, 0, {D.s1[0][D.d2[1][y]], y, full(y)}), "inverse of " + cell(D.x2, y)));
    for (int b = 0; b < G.num_arrows(); ++b) {
      if (G.source[a] != G.target[b]) continue;
      int z = B.bigon[b];
      G.compose[pair_key(a, b)] = need(find_m(D, 1, {y, z, full(y)}), "composite of " + cell(D.x2, y) + " and " + cell(D.x2, z));
    }
  }
  return B;
}

BigonGroupoid tilde_bigon_groupoid(const TwoGroupoidData& D) {
  const int n1 = static_cast<int>(D.x1.size()), n2 = static_cast<int>(D.x2.size());
  std::vector<char> degenerate(n1, 0);
  for (int e : D.s0) degenerate[e] = 1;
  BigonGroupoid B;
  FiniteGroupoid& G = B.g;
  G.objects = D.x1;
  std::vector<int> arrow_of(n2, -1);
  for (int y = 0; y < n2; ++y)
    if (degenerate[D.d2[0][y]]) {
      arrow_of[y] = static_cast<int>(B.bigon.size());
      B.bigon.push_back(y);
      G.arrows.push_back(D.x2[y]);
      G.target.push_back(D.d2[2][y]);
      G.source.push_back(D.d2[1][y]);
    }
  auto need = [&](int v, const std::string& what) {
    if (v < 0 || arrow_of[v] < 0) throw Error("bigon groupoid: " + what + " is not a bigon; data is not verified");
    return arrow_of[v];
  };
  for (int e = 0; e < n1; ++e) G.identity.push_back(need(D.s1[1][e], "identity of " + cell(D.x1, e)));
  auto full = [&](int y) { return D.s1[0][D.s0[D.d1[0][D.d2[0][y]]]]; };
  for (int a = 0; a < G.num_arrows(); ++a)
    for (int b = 0; b < G.num_arrows(); ++b) {
      if (G.source[a] != G.target[b]) continue;
      int y3 = B.bigon[a], y1 = B.bigon[b];
      G.compose[pair_key(a, b)] = need(find_m(D, 2, {full(y1), y1, y3}), "composite of " + cell(D.x2, y3) + " and " + cell(D.x2, y1));
    }
  G.inverse.assign(G.num_arrows(), -1);
  for (int a = 0; a < G.num_arrows(); ++a)
    for (int b = 0; b < G.num_arrows(); ++b)
      if (G.source[a] == G.target[b] && G.mul(a, b) == G.identity[G.target[a]] && G.source[b] == G.target[a]) {
        G.inverse[a] = b;
        break;
      }
  return B;
}

TildeIso tilde_bigon_iso(const TwoGroupoidData& D) {
  TildeIso T;
  T.bigons = bigon_groupoid(D);
  T.tilde = tilde_bigon_groupoid(D);
  const auto& G = T.bigons.g;
  const auto& H = T.tilde.g;
  auto tilde_index = [&](int y) {
    auto it = std::find(T.tilde.bigon.begin(), T.tilde.bigon.end(), y);
    return it == T.tilde.bigon.end() ? -1 : static_cast<int>(it - T.tilde.bigon.begin());
  };
  auto bigon_index = [&](int y) {
    auto it = std::find(T.bigons.bigon.begin(), T.bigons.bigon.end(), y);
    return it == T.bigons.bigon.end() ? -1 : static_cast<int>(it - T.bigons.bigon.begin());
  };
  std::string w;
  for (int a = 0; a < G.num_arrows(); ++a) {
    int y = T.bigons.bigon[a];
    int e = D.d2[1][y];
    int v = find_m(D, 0, {D.s1[1][e], D.s1[0][e], y});
    T.phi.push_back(v < 0 ? -1 : tilde_index(v));
    if (T.phi.back() < 0 && w.empty()) w = "bigon " + cell(D.x2, y) + " has no image";
  }
  for (int a = 0; a < H.num_arrows(); ++a) {
    int y = T.tilde.bigon[a];
    int b = D.d2[1][y];
    int v = find_m(D, 3, {y, D.s1[1][b], D.s1[0][b]});
    T.phi_inv.push_back(v < 0 ? -1 : bigon_index(v));
    if (T.phi_inv.back() < 0 && w.empty()) w = "bigon " + cell(D.x2, y) + " has no preimage";
  }
  if (w.empty() && !is_bijection(T.phi, H.num_arrows())) w = "map on bigons is not a bijection";
  for (int a = 0; w.empty() && a < G.num_arrows(); ++a)
    if (T.phi_inv[T.phi[a]] != a) w = "inverse map does not undo " + cell(G.arrows, a);
  T.report.record("bigon sets in bijection", "two-groupoid/bigon-iso", w);
  w.clear();
  for (int a = 0; T.report.ok() && w.empty() && a < G.num_arrows(); ++a) {
    if (H.source[T.phi[a]] != G.source[a] || H.target[T.phi[a]] != G.target[a]) w = "endpoints moved at " + cell(G.arrows, a);
    for (int b = 0; w.empty() && b < G.num_arrows(); ++b) {
      if (G.source[a] != G.target[b]) continue;
      if (T.phi[G.mul(a, b)] != H.mul(T.phi[a], T.phi[b]))
        w = "composite of " + cell(G.arrows, a) + " and " + cell(G.arrows, b) + " not preserved";
    }
  }
  if (T.report.ok()) T.report.record("bigon map is a functor", "two-groupoid/bigon-functor", w);
  return T;
}

std::string crossed_module_violation(const CrossedModule& C) {
  const auto& G = C.g;
  const auto& H = C.h;
  const int ng = static_cast<int>(G.elements.size()), nh = static_cast<int>(H.elements.size());
  if (static_cast<int>(C.boundary.size()) != nh) return "boundary map must be defined on every element of H";
  if (static_cast<int>(C.action.size()) != ng) return "action must be defined for every element of G";
  for (int g = 0; g < ng; ++g)
    if (static_cast<int>(C.action[g].size()) != nh) return "action must be defined on every element of H";
  auto nameg = [&](int g) { return "'" + G.elements[g] + "'"; };
  auto nameh = [&](int h) { return "'" + H.elements[h] + "'"; };
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b)
      if (C.boundary[H.mul[a][b]] != G.mul[C.boundary[a]][C.boundary[b]])
        return "boundary is not a homomorphism at " + nameh(a) + ", " + nameh(b);
  for (int a = 0; a < nh; ++a)
    if (C.action[G.unit][a] != a) return "unit of G moves " + nameh(a);
  for (int g = 0; g < ng; ++g)
    for (int a = 0; a < nh; ++a) {
      for (int b = 0; b < nh; ++b)
        if (C.action[g][H.mul[a][b]] != H.mul[C.action[g][a]][C.action[g][b]])
          return "action of " + nameg(g) + " is not a homomorphism at " + nameh(a) + ", " + nameh(b);
      for (int k = 0; k < ng; ++k)
        if (C.action[G.mul[g][k]][a] != C.action[g][C.action[k][a]])
          return "action is not compatible with multiplication at " + nameg(g) + ", " + nameg(k) + ", " + nameh(a);
      if (C.boundary[C.action[g][a]] != G.mul[G.mul[g][C.boundary[a]]][G.inv[g]])
        return "equivariance fails: boundary of " + nameg(g) + " acting on " + nameh(a) + " is not the conjugate";
    }
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b)
      if (C.action[C.boundary[a]][b] != H.mul[H.mul[a][b]][H.inv[a]])
        return "Peiffer identity fails: boundary of " + nameh(a) + " acting on " + nameh(b) + " is not conjugation";
  return {};
}

CrossedModule trivial_crossed_module(const FiniteGroup& G, const FiniteGroup& H) {
  CrossedModule C;
  C.g = G;
  C.h = H;
  C.boundary.assign(H.elements.size(), G.unit);
  C.action.assign(G.elements.size(), std::vector<int>(H.elements.size()));
  for (auto& row : C.action)
    for (std::size_t a = 0; a < row.size(); ++a) row[a] = static_cast<int>(a);
  return C;
}

TwoGroupoidData crossed_module_fixture(const CrossedModule& C) {
  std::string bad = crossed_module_violation(C);
  if (!bad.empty()) throw Error("not a crossed module: " + bad);
  const auto& G = C.g;
  const auto& H = C.h;
  const int ng = static_cast<int>(G.elements.size()), nh = static_cast<int>(H.elements.size());
  auto mulg = [&](int a, int b) { return G.mul[a][b]; };
  auto mulh = [&](int a, int b) { return H.mul[a][b]; };
  TwoGroupoidData D;
  D.x0 = {"*"};
  D.x1 = G.elements;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      for (int h = 0; h < nh; ++h) D.x2.push_back("(" + G.elements[a] + "," + G.elements[b] + "," + H.elements[h] + ")");
  std::vector<int> perm = canonical_order(D.x2, "X2");
  auto idx = [&](int a, int b, int h) { return perm[(a * ng + b) * nh + h]; };
  const int n2 = ng * ng * nh;
  D.d1 = {std::vector<int>(ng, 0), std::vector<int>(ng, 0)};
  D.s0 = {G.unit};
  for (auto& t : D.d2) t.assign(n2, -1);
  for (auto& t : D.s1) t.assign(ng, -1);
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      for (int h = 0; h < nh; ++h) {
        int y = idx(a, b, h);
        D.d2[0][y] = b;
        D.d2[1][y] = mulg(mulg(C.boundary[h], a), b);
        D.d2[2][y] = a;
      }
  for (int g = 0; g < ng; ++g) {
    D.s1[0][g] = idx(G.unit, g, H.unit);
    D.s1[1][g] = idx(g, G.unit, H.unit);
  }
  // a tetrahedron is determined by g01, g12, g23, h012, h123, h013
  for (int g01 = 0; g01 < ng; ++g01)
    for (int g12 = 0; g12 < ng; ++g12)
      for (int g23 = 0; g23 < ng; ++g23)
        for (int h012 = 0; h012 < nh; ++h012)
          for (int h123 = 0; h123 < nh; ++h123)
            for (int h013 = 0; h013 < nh; ++h013) {
              int h023 = mulh(mulh(h013, C.action[g01][h123]), H.inv[h012]);
              int g02 = mulg(mulg(C.boundary[h012], g01), g12);
              int g13 = mulg(mulg(C.boundary[h123], g12), g23);
              Tetra t{idx(g12, g23, h123), idx(g02, g23, h023), idx(g01, g13, h013), idx(g01, g12, h012)};
              for (int i = 0; i < 4; ++i) D.m[i][drop(t, i)] = t[i];
            }
  return D;
}

CechFixture cech_fixture(const Ids& M, const std::vector<std::pair<std::string, Ids>>& cover, int N) {
  Ids points = M;
  canonical_order(points, "point");
  const int np = static_cast<int>(points.size()), nc = static_cast<int>(cover.size());
  std::vector<std::vector<char>> in(nc, std::vector<char>(np, 0));
  std::vector<char> covered(np, 0);
  for (int a = 0; a < nc; ++a)
    for (const auto& x : cover[a].second) {
      int p = find_id(points, x);
      if (p < 0) throw Error("chart '" + cover[a].first + "' contains '" + x + "' which is not a point");
      in[a][p] = 1;
      covered[p] = 1;
    }
  for (int p = 0; p < np; ++p)
    if (!covered[p]) throw Error("cover misses point '" + points[p] + "'");
  std::vector<std::vector<std::vector<int>>> cells(N + 1);
  std::vector<VecMap<int>> index(N + 1);
  std::vector<Ids> ids(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int p, int k) {
      if (k == n + 1) {
        std::vector<int> c{p};
        c.insert(c.end(), cur.begin(), cur.end());
        index[n][c] = static_cast<int>(cells[n].size());
        cells[n].push_back(c);
        Ids names;
        for (int a : cur) names.push_back(cover[a].first);
        ids[n].push_back(points[p] + ":" + join(names, ","));
        return;
      }
      for (int a = 0; a < nc; ++a) {
        if (!in[a][p]) continue;
        cur.push_back(a);
        rec(p, k + 1);
        cur.pop_back();
      }
    };
    for (int p = 0; p < np; ++p) rec(p, 0);
  }
  SSet X = make_sset(N, ids);
  for (int n = 1; n <= N; ++n)
    for (int c = 0; c < static_cast<int>(cells[n].size()); ++c)
      for (int i = 0; i <= n; ++i) {
        auto t = cells[n][c];
        t.erase(t.begin() + 1 + i);
        X.face[n][i][c] = index[n - 1].at(t);
      }
  for (int n = 0; n < N; ++n)
    for (int c = 0; c < static_cast<int>(cells[n].size()); ++c)
      for (int i = 0; i <= n; ++i) {
        auto t = cells[n][c];
        t.insert(t.begin() + 1 + i, t[1 + i]);
        X.degen[n][i][c] = index[n + 1].at(t);
      }
  std::vector<std::vector<int>> point_of(N + 1);
  for (int n = 0; n <= N; ++n)
    for (const auto& c : cells[n]) point_of[n].push_back(c[0]);
  std::vector<std::vector<int>> perm(N + 1);
  for (int n = 0; n <= N; ++n) {
    Ids copy = X.cells[n];
    perm[n] = canonical_order(copy, "cell");
  }
  canonicalize(X);
  CechFixture F;
  F.cech = std::make_shared<const SSet>(std::move(X));
  F.base = std::make_shared<const SSet>(constant_sset(points, N));
  F.projection.source = F.cech;
  F.projection.target = F.base;
  for (int n = 0; n <= N; ++n) F.projection.f.push_back(permute_positions(point_of[n], perm[n]));
  return F;
}

Report verify_two_groupoid_map(const TwoGroupoidData& D, const TwoGroupoidData& E, const TwoGroupoidMap& f) {
  Report r;
  std::string w;
  auto total = [](const std::vector<int>& t, std::size_t len, std::size_t range) {
    return t.size() == len && std::all_of(t.begin(), t.end(), [&](int v) { return v >= 0 && v < static_cast<int>(range); });
  };
  if (!total(f.f0, D.x0.size(), E.x0.size()) || !total(f.f1, D.x1.size(), E.x1.size()) ||
      !total(f.f2, D.x2.size(), E.x2.size()))
    w = "level maps are not total";
  r.record("level maps total", "map/structure", w);
  if (!w.empty()) return r;
  for (int i = 0; i < 2 && w.empty(); ++i)
    for (std::size_t a = 0; a < D.x1.size(); ++a)
      if (f.f0[D.d1[i][a]] != E.d1[i][f.f1[a]]) {
        w = "d" + std::to_string(i) + " not preserved at " + cell(D.x1, static_cast<int>(a));
        break;
      }
  for (std::size_t x = 0; x < D.x0.size() && w.empty(); ++x)
    if (f.f1[D.s0[x]] != E.s0[f.f0[x]]) w = "s0 not preserved at " + cell(D.x0, static_cast<int>(x));
  for (int i = 0; i < 3 && w.empty(); ++i)
    for (std::size_t y = 0; y < D.x2.size(); ++y)
      if (f.f1[D.d2[i][y]] != E.d2[i][f.f2[y]]) {
        w = "d" + std::to_string(i) + " not preserved at " + cell(D.x2, static_cast<int>(y));
        break;
      }
  for (int i = 0; i < 2 && w.empty(); ++i)
    for (std::size_t a = 0; a < D.x1.size(); ++a)
      if (f.f2[D.s1[i][a]] != E.s1[i][f.f1[a]]) {
        w = "s" + std::to_string(i) + " not preserved at " + cell(D.x1, static_cast<int>(a));
        break;
      }
  r.record("commutes with faces and degeneracies", "map/simplicial", w);
  w.clear();
  for (int i = 0; i < 4 && w.empty(); ++i)
    for (const auto& [k, v] : D.m[i]) {
      if (find_m(E, i, {f.f2[k[0]], f.f2[k[1]], f.f2[k[2]]}) != f.f2[v]) {
        w = "m" + std::to_string(i) + " not preserved at " + tetra_text(D, insert(k, i, v));
        break;
      }
    }
  r.record("commutes with the m tables", "map/multiplication", w);
  return r;
}

std::optional<TwoGroupoidMap> two_groupoid_iso_search(const TwoGroupoidData& D, const TwoGroupoidData& E) {
  const int n0 = static_cast<int>(D.x0.size()), n1 = static_cast<int>(D.x1.size()), n2 = static_cast<int>(D.x2.size());
  if (n0 != static_cast<int>(E.x0.size()) || n1 != static_cast<int>(E.x1.size()) || n2 != static_cast<int>(E.x2.size()))
    return std::nullopt;
  std::set<Tetra> TE = tetrahedra(E);
  std::set<Tetra> TD = tetrahedra(D);
  if (TD.size() != TE.size()) return std::nullopt;
  std::vector<std::vector<Tetra>> touching(n2);
  for (const auto& t : TD)
    for (int y : std::set<int>(t.begin(), t.end())) touching[y].push_back(t);
  TwoGroupoidMap f;
  f.f0.assign(n0, -1);
  f.f1.assign(n1, -1);
  f.f2.assign(n2, -1);
  std::vector<char> used0(n0, 0), used1(n1, 0), used2(n2, 0);

  // degenerate cells are forced by their sources, so search the others and derive the rest
  std::vector<int> src1(n1, -1), src2(n2, -1), src2_which(n2, -1);
  for (int x = 0; x < n0; ++x) src1[D.s0[x]] = x;
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < n1; ++a)
      if (src2[D.s1[i][a]] < 0) {
        src2[D.s1[i][a]] = a;
        src2_which[D.s1[i][a]] = i;
      }

  std::function<bool(int)> level2 = [&](int y) -> bool {
    if (y == n2) return true;
    std::vector<int> cands;
    if (src2[y] >= 0) {
      cands.push_back(E.s1[src2_which[y]][f.f1[src2[y]]]);
    } else {
      for (int z = 0; z < n2; ++z) cands.push_back(z);
    }
    for (int z : cands) {
      if (used2[z]) continue;
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) ok = E.d2[i][z] == f.f1[D.d2[i][y]];
      if (!ok) continue;
      f.f2[y] = z;
      used2[z] = 1;
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
      used2[z] = 0;
      f.f2[y] = -1;
    }
    return false;
  };
  std::function<bool(int)> level1 = [&](int a) -> bool {
    if (a == n1) return level2(0);
    std::vector<int> cands;
    if (src1[a] >= 0) {
      cands.push_back(E.s0[f.f0[src1[a]]]);
    } else {
      for (int b = 0; b < n1; ++b) cands.push_back(b);
    }
    for (int b : cands) {
      if (used1[b] || E.d1[0][b] != f.f0[D.d1[0][a]] || E.d1[1][b] != f.f0[D.d1[1][a]]) continue;
      f.f1[a] = b;
      used1[b] = 1;
      if (level1(a + 1)) return true;
      used1[b] = 0;
      f.f1[a] = -1;
    }
    return false;
  };
  std::function<bool(int)> level0 = [&](int x) -> bool {
    if (x == n0) return level1(0);
    for (int z = 0; z < n0; ++z) {
      if (used0[z]) continue;
      f.f0[x] = z;
      used0[z] = 1;
      if (level0(x + 1)) return true;
      used0[z] = 0;
      f.f0[x] = -1;
    }
    return false;
  };
  if (!level0(0)) return std::nullopt;
  if (!verify_two_groupoid_map(D, E, f).ok()) return std::nullopt;
  return f;
}

}  // namespace fhg
