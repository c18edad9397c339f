// Licensed under the Apache License, Version 2.0.
#include "simplicial.hpp"

#include <map>
#include <set>
#include <tuple>

namespace fhg {

SSet make_sset(int N, const std::vector<Ids>& cells) {
  if (N < 0) throw Error("truncation level must be non-negative");
  if (static_cast<int>(cells.size()) != N + 1) throw Error("expected N+1 levels of cells");
  SSet X;
  X.N = N;
  X.cells = cells;
  X.face.resize(N + 1);
  X.degen.resize(N + 1);
  for (int n = 1; n <= N; ++n) {
    X.face[n].assign(n + 1, std::vector<int>(cells[n].size(), -1));
  }
  for (int n = 0; n < N; ++n) {
    X.degen[n].assign(n + 1, std::vector<int>(cells[n].size(), -1));
  }
  return X;
}

void canonicalize(SSet& X) {
  std::vector<std::vector<int>> perm(X.N + 1);
  for (int n = 0; n <= X.N; ++n) perm[n] = canonical_order(X.cells[n], "cell");
  for (int n = 1; n <= X.N; ++n) {
    for (auto& tab : X.face[n]) tab = relabel(permute_positions(tab, perm[n]), perm[n - 1]);
  }
  for (int n = 0; n < X.N; ++n) {
    for (auto& tab : X.degen[n]) tab = relabel(permute_positions(tab, perm[n]), perm[n + 1]);
  }
}

int apply_mono(const SSet& X, const Mono& sigma, int p, int y) {
  const int n = static_cast<int>(sigma.size()) - 1;
  std::vector<char> in_image(p + 1, 0);
  for (int v : sigma) in_image[v] = 1;
  int cur = y;
  int level = p;
  for (int v = p; v >= 0; --v) {
    if (!in_image[v]) {
      cur = X.face[level][v][cur];
      --level;
    }
  }
  // compressed values are consecutive, so a repeat at position q means s_q
  for (int q = 0; q < n; ++q) {
    if (sigma[q] == sigma[q + 1]) {
      cur = X.degen[level][q][cur];
      ++level;
    }
  }
  return cur;
}

namespace {

std::string mono_string(const Mono& m) {
  std::string s;
  for (int v : m) s += static_cast<char>('0' + v);
  return s;
}

}  // namespace

EZ ez_decompose(const SSet& X, int n, int c) {
  EZ out;
  out.sigma.resize(n + 1);
  for (int t = 0; t <= n; ++t) out.sigma[t] = t;
  out.level = n;
  out.cell = c;
  while (out.level > 0) {
    int found_i = -1, found_x = -1;
    for (int i = 0; i < out.level && found_i < 0; ++i) {
      for (int x = 0; x < X.size(out.level - 1); ++x) {
        if (X.degen[out.level - 1][i][x] == out.cell) {
          found_i = i;
          found_x = x;
          break;
        }
      }
    }
    if (found_i < 0) break;
    // cell = s_i x, so sigma becomes codegeneracy_i after the old sigma
    for (int& v : out.sigma) {
      if (v > found_i) --v;
    }
    out.cell = found_x;
    --out.level;
  }
  return out;
}

Mono parse_mono(const std::string& digits) {
  Mono m;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw Error("not a simplex cell name: '" + digits + "'");
    m.push_back(ch - '0');
  }
  return m;
}

SSet simplex_subcomplex(int m, int N, const std::function<bool(unsigned)>& keep) {
  if (m < 0 || m > 9) throw Error("simplex dimension must be in 0..9");
  if (N < 0) throw Error("truncation level must be non-negative");
  std::vector<Ids> cells(N + 1);
  for (int n = 0; n <= N; ++n) {
    Mono cur(n + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == n + 1) {
        unsigned mask = 0;
        for (int v : cur) mask |= 1u << v;
        if (keep(mask)) cells[n].push_back(mono_string(cur));
        return;
      }
      for (int v = lo; v <= m; ++v) {
        cur[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
  }
  SSet X = make_sset(N, cells);
  for (int n = 0; n <= N; ++n) std::sort(X.cells[n].begin(), X.cells[n].end());
  for (int n = 1; n <= N; ++n) {
    for (int c = 0; c < X.size(n); ++c) {
      const std::string& id = X.cells[n][c];
      for (int i = 0; i <= n; ++i) {
        std::string f = id;
        f.erase(static_cast<std::size_t>(i), 1);
        X.face[n][i][c] = X.index(n - 1, f);
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < X.size(n); ++c) {
      const std::string& id = X.cells[n][c];
      for (int i = 0; i <= n; ++i) {
        std::string s = id;
        s.insert(static_cast<std::size_t>(i), 1, id[i]);
        X.degen[n][i][c] = X.index(n + 1, s);
      }
    }
  }
  return X;
}

SSet standard_simplex(int m, int N) {
  return simplex_subcomplex(m, N, [](unsigned) { return true; });
}

SSet horn_complex(int m, int j, int N) {
  if (m < 1) throw Error("horn dimension must be positive");
  if (j < 0 || j > m) throw Error("horn index j=" + std::to_string(j) + " out of range 0.." + std::to_string(m));
  unsigned need = ((1u << (m + 1)) - 1) & ~(1u << j);
  return simplex_subcomplex(m, N, [need](unsigned mask) { return (mask & need) != need; });
}

SSet boundary_complex(int m, int N) {
  if (m < 0) throw Error("boundary dimension must be non-negative");
  unsigned full = (1u << (m + 1)) - 1;
  return simplex_subcomplex(m, N, [full](unsigned mask) { return mask != full; });
}

SSet constant_sset(Ids points, int N) {
  std::sort(points.begin(), points.end());
  std::vector<Ids> cells(N + 1, points);
  SSet X = make_sset(N, cells);
  std::vector<int> ident(points.size());
  for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = static_cast<int>(i);
  for (int n = 1; n <= N; ++n) {
    for (auto& t : X.face[n]) t = ident;
  }
  for (int n = 0; n < N; ++n) {
    for (auto& t : X.degen[n]) t = ident;
  }
  canonicalize(X);
  return X;
}

std::string describe_cell(const SSet& X, int n, int c) {
  return "level " + std::to_string(n) + " cell '" + X.cells[n][c] + "'";
}

Report verify_simplicial(const SSet& X) {
  Report r;
  const std::string anchor_struct = "simplicial/structure";
  // structure first: later checks index blindly
  {
    std::string bad;
    if (static_cast<int>(X.cells.size()) != X.N + 1 || static_cast<int>(X.face.size()) != X.N + 1 ||
        static_cast<int>(X.degen.size()) != X.N + 1) {
      bad = "level count does not match truncation level " + std::to_string(X.N);
    }
    for (int n = 0; n <= X.N && bad.empty(); ++n) {
      for (std::size_t c = 1; c < X.cells[n].size() && bad.empty(); ++c) {
        if (!(X.cells[n][c - 1] < X.cells[n][c])) {
          bad = "level " + std::to_string(n) + " ids not strictly sorted at '" + X.cells[n][c] + "'";
        }
      }
      if (n >= 1) {
        if (static_cast<int>(X.face[n].size()) != n + 1) bad = "level " + std::to_string(n) + " needs n+1 face maps";
        for (int i = 0; i <= n && bad.empty(); ++i) {
          if (X.face[n][i].size() != X.cells[n].size()) bad = "face table size mismatch";
          for (int c = 0; c < X.size(n) && bad.empty(); ++c) {
            int v = X.face[n][i][c];
            if (v < 0 || v >= X.size(n - 1)) bad = "d_" + std::to_string(i) + " undefined on " + describe_cell(X, n, c);
          }
        }
      }
      if (n < X.N) {
        if (static_cast<int>(X.degen[n].size()) != n + 1) bad = "level " + std::to_string(n) + " needs n+1 degeneracies";
        for (int i = 0; i <= n && bad.empty(); ++i) {
          if (X.degen[n][i].size() != X.cells[n].size()) bad = "degeneracy table size mismatch";
          for (int c = 0; c < X.size(n) && bad.empty(); ++c) {
            int v = X.degen[n][i][c];
            if (v < 0 || v >= X.size(n + 1)) bad = "s_" + std::to_string(i) + " undefined on " + describe_cell(X, n, c);
          }
        }
      }
    }
    if (!bad.empty()) {
      r.fail("total face and degeneracy tables", anchor_struct, bad);
      return r;
    }
    r.pass("total face and degeneracy tables", anchor_struct);
  }

  auto I = [](int i) { return std::to_string(i); };
  {
    std::string w;
    for (int n = 2; n <= X.N && w.empty(); ++n) {
      for (int i = 0; i < n && w.empty(); ++i) {
        for (int j = i + 1; j <= n && w.empty(); ++j) {
          for (int x = 0; x < X.size(n); ++x) {
            int lhs = X.face[n - 1][i][X.face[n][j][x]];
            int rhs = X.face[n - 1][j - 1][X.face[n][i][x]];
            if (lhs != rhs) {
              w = "d_" + I(i) + " d_" + I(j) + " != d_" + I(j - 1) + " d_" + I(i) + " on " + describe_cell(X, n, x) +
                  " ('" + X.cells[n - 2][lhs] + "' vs '" + X.cells[n - 2][rhs] + "')";
              break;
            }
          }
        }
      }
    }
    if (w.empty()) r.pass("d_i d_j = d_{j-1} d_i for i < j", "simplicial/face-face");
    else r.fail("d_i d_j = d_{j-1} d_i for i < j", "simplicial/face-face", w);
  }
  {
    std::string w;
    for (int n = 0; n + 2 <= X.N && w.empty(); ++n) {
      for (int i = 0; i <= n && w.empty(); ++i) {
        for (int j = i; j <= n && w.empty(); ++j) {
          for (int x = 0; x < X.size(n); ++x) {
            int lhs = X.degen[n + 1][i][X.degen[n][j][x]];
            int rhs = X.degen[n + 1][j + 1][X.degen[n][i][x]];
            if (lhs != rhs) {
              w = "s_" + I(i) + " s_" + I(j) + " != s_" + I(j + 1) + " s_" + I(i) + " on " + describe_cell(X, n, x);
              break;
            }
          }
        }
      }
    }
    if (w.empty()) r.pass("s_i s_j = s_{j+1} s_i for i <= j", "simplicial/degeneracy-degeneracy");
    else r.fail("s_i s_j = s_{j+1} s_i for i <= j", "simplicial/degeneracy-degeneracy", w);
  }
  {
    std::string w;
    for (int n = 0; n < X.N && w.empty(); ++n) {
      for (int j = 0; j <= n && w.empty(); ++j) {
        for (int i = 0; i <= n + 1 && w.empty(); ++i) {
          for (int x = 0; x < X.size(n); ++x) {
            int lhs = X.face[n + 1][i][X.degen[n][j][x]];
            int rhs;
            std::string rule;
            if (i < j) {
              rhs = X.degen[n - 1][j - 1][X.face[n][i][x]];
              rule = "s_" + I(j - 1) + " d_" + I(i);
            } else if (i == j || i == j + 1) {
              rhs = x;
              rule = "id";
            } else {
              rhs = X.degen[n - 1][j][X.face[n][i - 1][x]];
              rule = "s_" + I(j) + " d_" + I(i - 1);
            }
            if (lhs != rhs) {
              w = "d_" + I(i) + " s_" + I(j) + " != " + rule + " on " + describe_cell(X, n, x);
              break;
            }
          }
        }
      }
    }
    if (w.empty()) r.pass("face-degeneracy identities", "simplicial/face-degeneracy");
    else r.fail("face-degeneracy identities", "simplicial/face-degeneracy", w);
  }
  {
    std::string w;
    for (int n = 0; n < X.N && w.empty(); ++n) {
      for (int i = 0; i <= n && w.empty(); ++i) {
        std::vector<int> seen(X.size(n + 1), -1);
        for (int x = 0; x < X.size(n); ++x) {
          int v = X.degen[n][i][x];
          if (seen[v] >= 0) {
            w = "s_" + I(i) + " identifies " + describe_cell(X, n, seen[v]) + " and '" + X.cells[n][x] + "'";
            break;
          }
          seen[v] = x;
        }
      }
    }
    if (w.empty()) r.pass("degeneracies injective", "simplicial/degeneracy-injective");
    else r.fail("degeneracies injective", "simplicial/degeneracy-injective", w);
  }
  return r;
}

std::vector<int> nondegenerate_cells(const SSet& X, int n) {
  std::vector<char> deg(X.size(n), 0);
  if (n > 0) {
    for (const auto& tab : X.degen[n - 1]) {
      for (int v : tab) deg[v] = 1;
    }
  }
  std::vector<int> out;
  for (int c = 0; c < X.size(n); ++c) {
    if (!deg[c]) out.push_back(c);
  }
  return out;
}

Report verify_simplicial_map(const SimplicialMap& f) {
  Report r;
  const SSet& S = *f.source;
  const SSet& X = *f.target;
  const std::string anchor = "simplicial/strict-map";
  if (S.N != X.N || static_cast<int>(f.f.size()) != S.N + 1) {
    r.fail("map levels match", anchor, "truncation levels differ");
    return r;
  }
  for (int n = 0; n <= S.N; ++n) {
    if (static_cast<int>(f.f[n].size()) != S.size(n)) {
      r.fail("map levels match", anchor, "level " + std::to_string(n) + " map is not total");
      return r;
    }
    for (int v : f.f[n]) {
      if (v < 0 || v >= X.size(n)) {
        r.fail("map levels match", anchor, "level " + std::to_string(n) + " value out of range");
        return r;
      }
    }
  }
  std::string w;
  for (int n = 1; n <= S.N && w.empty(); ++n) {
    for (int i = 0; i <= n && w.empty(); ++i) {
      for (int c = 0; c < S.size(n); ++c) {
        if (X.face[n][i][f.f[n][c]] != f.f[n - 1][S.face[n][i][c]]) {
          w = "d_" + std::to_string(i) + " not preserved at " + describe_cell(S, n, c);
          break;
        }
      }
    }
  }
  for (int n = 0; n < S.N && w.empty(); ++n) {
    for (int i = 0; i <= n && w.empty(); ++i) {
      for (int c = 0; c < S.size(n); ++c) {
        if (X.degen[n][i][f.f[n][c]] != f.f[n + 1][S.degen[n][i][c]]) {
          w = "s_" + std::to_string(i) + " not preserved at " + describe_cell(S, n, c);
          break;
        }
      }
    }
  }
  if (w.empty()) r.pass("commutes with faces and degeneracies", anchor);
  else r.fail("commutes with faces and degeneracies", anchor, w);
  return r;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap h;
  h.source = f.source;
  h.target = g.target;
  h.f.resize(f.f.size());
  for (std::size_t n = 0; n < f.f.size(); ++n) {
    h.f[n].resize(f.f[n].size());
    for (std::size_t c = 0; c < f.f[n].size(); ++c) h.f[n][c] = g.f[n][f.f[n][c]];
  }
  return h;
}

SimplicialMap identity_map(std::shared_ptr<const SSet> X) {
  SimplicialMap h;
  h.source = X;
  h.target = X;
  h.f.resize(X->N + 1);
  for (int n = 0; n <= X->N; ++n) {
    h.f[n].resize(X->size(n));
    for (int c = 0; c < X->size(n); ++c) h.f[n][c] = c;
  }
  return h;
}

SimplicialMap inclusion_map(std::shared_ptr<const SSet> sub, std::shared_ptr<const SSet> whole) {
  SimplicialMap h;
  h.source = sub;
  h.target = whole;
  h.f.resize(sub->N + 1);
  for (int n = 0; n <= sub->N; ++n) {
    for (const auto& id : sub->cells[n]) {
      int v = whole->index(n, id);
      if (v < 0) throw Error("cell '" + id + "' missing from ambient simplicial set");
      h.f[n].push_back(v);
    }
  }
  return h;
}

std::vector<int> nondegenerate_key(const SSet& S, const LevelMap& f) {
  std::vector<int> key;
  for (int n = 0; n <= S.N; ++n) {
    for (int c : nondegenerate_cells(S, n)) key.push_back(f[n][c]);
  }
  return key;
}

namespace {

class HomSearch {
 public:
  HomSearch(const SSet& S, const SSet& X) : S_(S), X_(X) {
    src_.resize(S.N + 1);
    for (int n = 0; n <= S.N; ++n) src_[n].resize(S.size(n));
    for (int n = 0; n < S.N; ++n) {
      for (int i = 0; i <= n; ++i) {
        for (int x = 0; x < S.size(n); ++x) src_[n + 1][S.degen[n][i][x]].push_back({i, x});
      }
    }
    build_order();
    face_index_.resize(X.N + 1);
    for (int n = 1; n <= X.N; ++n) {
      bool needed = false;
      for (int c = 0; c < S.size(n) && !needed; ++c) needed = src_[n][c].empty();
      if (!needed) continue;
      for (int x = 0; x < X.size(n); ++x) {
        std::vector<int> key(n + 1);
        for (int i = 0; i <= n; ++i) key[i] = X.face[n][i][x];
        face_index_[n][key].push_back(x);
      }
    }
    all0_.resize(X.size(0));
    for (int x = 0; x < X.size(0); ++x) all0_[x] = x;
    f_.resize(S.N + 1);
    for (int n = 0; n <= S.N; ++n) f_[n].assign(S.size(n), -1);
  }

  std::vector<LevelMap> run() {
    dfs(0);
    std::vector<std::pair<std::vector<int>, std::size_t>> keyed;
    keyed.reserve(out_.size());
    for (std::size_t k = 0; k < out_.size(); ++k) keyed.push_back({nondegenerate_key(S_, out_[k]), k});
    std::sort(keyed.begin(), keyed.end());
    std::vector<LevelMap> sorted;
    sorted.reserve(out_.size());
    for (auto& [key, k] : keyed) sorted.push_back(std::move(out_[k]));
    return sorted;
  }

 private:
  // Topological order (faces and degeneracy sources first), placing the highest
  // ready dimension first so that constraints bite early.
  void build_order() {
    std::map<std::pair<int, int>, std::set<std::pair<int, int>>> succ;
    std::map<std::pair<int, int>, int> indeg;
    for (int n = 0; n <= S_.N; ++n) {
      for (int c = 0; c < S_.size(n); ++c) {
        std::set<std::pair<int, int>> preds;
        if (n >= 1) {
          for (int i = 0; i <= n; ++i) preds.insert({n - 1, S_.face[n][i][c]});
        }
        for (auto [i, x] : src_[n][c]) preds.insert({n - 1, x});
        indeg[{n, c}] = static_cast<int>(preds.size());
        for (const auto& p : preds) succ[p].insert({n, c});
      }
    }
    std::set<std::tuple<int, int, int>> ready;  // (-level, level, cell)
    for (auto& [node, d] : indeg) {
      if (d == 0) ready.insert({-node.first, node.first, node.second});
    }
    while (!ready.empty()) {
      auto [neg, n, c] = *ready.begin();
      ready.erase(ready.begin());
      order_.push_back({n, c});
      for (const auto& s : succ[{n, c}]) {
        if (--indeg[s] == 0) ready.insert({-s.first, s.first, s.second});
      }
    }
  }

  bool consistent(int n, int c, int v) const {
    if (n >= 1) {
      for (int i = 0; i <= n; ++i) {
        if (X_.face[n][i][v] != f_[n - 1][S_.face[n][i][c]]) return false;
      }
    }
    for (auto [i, x] : src_[n][c]) {
      if (X_.degen[n - 1][i][f_[n - 1][x]] != v) return false;
    }
    return true;
  }

  void dfs(std::size_t pos) {
    if (pos == order_.size()) {
      out_.push_back(f_);
      return;
    }
    auto [n, c] = order_[pos];
    if (!src_[n][c].empty()) {
      auto [i, x] = src_[n][c].front();
      int v = X_.degen[n - 1][i][f_[n - 1][x]];
      if (!consistent(n, c, v)) return;
      f_[n][c] = v;
      dfs(pos + 1);
      f_[n][c] = -1;
      return;
    }
    const std::vector<int>* cand = &all0_;
    if (n >= 1) {
      std::vector<int> key(n + 1);
      for (int i = 0; i <= n; ++i) key[i] = f_[n - 1][S_.face[n][i][c]];
      auto it = face_index_[n].find(key);
      if (it == face_index_[n].end()) return;
      cand = &it->second;
    }
    for (int v : *cand) {
      f_[n][c] = v;
      dfs(pos + 1);
    }
    f_[n][c] = -1;
  }

  const SSet& S_;
  const SSet& X_;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> src_;
  std::vector<std::pair<int, int>> order_;
  std::vector<VecMap<std::vector<int>>> face_index_;
  std::vector<int> all0_;
  LevelMap f_;
  std::vector<LevelMap> out_;
};

}  // namespace

std::vector<LevelMap> enumerate_hom(const SSet& S, const SSet& X) {
  if (S.N != X.N) throw Error("enumerate_hom: truncation levels differ");
  return HomSearch(S, X).run();
}

namespace {

std::string describe_horn(const SSet& H, const SSet& X, const LevelMap& f) {
  std::string s = "{";
  bool first = true;
  for (int n = 0; n <= H.N; ++n) {
    for (int c : nondegenerate_cells(H, n)) {
      if (!first) s += ", ";
      first = false;
      s += H.cells[n][c] + "->" + X.cells[n][f[n][c]];
    }
  }
  return s + "}";
}

}  // namespace

KanResult check_kan(const SSet& X, int m, int j) {
  if (m < 1 || m > X.N) throw Error("check_kan: m=" + std::to_string(m) + " outside 1.." + std::to_string(X.N));
  SSet H = horn_complex(m, j, X.N);
  std::vector<LevelMap> horns = enumerate_hom(H, X);
  VecMap<std::size_t> where;
  for (std::size_t k = 0; k < horns.size(); ++k) where[nondegenerate_key(H, horns[k])] = k;

  std::vector<std::pair<int, Mono>> nd;
  for (int n = 0; n <= H.N; ++n) {
    for (int c : nondegenerate_cells(H, n)) nd.push_back({n, parse_mono(H.cells[n][c])});
  }
  std::vector<int> hit_by(horns.size(), -1);
  KanResult res;
  res.horns = horns.size();
  res.simplices = static_cast<std::size_t>(X.size(m));
  std::string collision;
  for (int x = 0; x < X.size(m); ++x) {
    std::vector<int> key;
    key.reserve(nd.size());
    for (auto& [n, sigma] : nd) key.push_back(apply_mono(X, sigma, m, x));
    auto it = where.find(key);
    if (it == where.end()) throw Error("check_kan: restriction is not a horn; input is not simplicial");
    std::size_t k = it->second;
    if (hit_by[k] >= 0) {
      if (collision.empty()) {
        collision = "simplices '" + X.cells[m][hit_by[k]] + "' and '" + X.cells[m][x] + "' fill the same horn " +
                    describe_horn(H, X, horns[k]);
      }
    } else {
      hit_by[k] = x;
    }
  }
  for (std::size_t k = 0; k < horns.size(); ++k) {
    if (hit_by[k] < 0) {
      res.status = KanStatus::Fails;
      res.witness = "unfilled horn " + describe_horn(H, X, horns[k]);
      return res;
    }
  }
  res.unique = collision.empty();
  res.status = res.unique ? KanStatus::HoldsUniquely : KanStatus::Holds;
  res.witness = collision;
  return res;
}

Report verify_n_groupoid(const SSet& X, int n, int up_to, int unique_from) {
  if (up_to > X.N) {
    throw Error("verify_n_groupoid: up_to=" + std::to_string(up_to) + " exceeds truncation level " + std::to_string(X.N));
  }
  if (unique_from < 0) unique_from = n + 1;
  Report r;
  for (int m = 1; m <= up_to; ++m) {
    for (int j = 0; j <= m; ++j) {
      KanResult k = check_kan(X, m, j);
      std::string name = "Kan(" + std::to_string(m) + "," + std::to_string(j) + ")";
      if (k.status == KanStatus::Fails) {
        r.fail(name, "kan/existence", k.witness);
        continue;
      }
      r.pass(name, "kan/existence");
      if (m >= unique_from) {
        std::string uname = "Kan!(" + std::to_string(m) + "," + std::to_string(j) + ")";
        if (k.unique) r.pass(uname, "kan/uniqueness");
        else r.fail(uname, "kan/uniqueness", k.witness);
      }
    }
  }
  return r;
}

SSet truncate_levels(const SSet& X, int N) {
  if (N > X.N) throw Error("cannot truncate above the existing level");
  SSet Y;
  Y.N = N;
  Y.cells.assign(X.cells.begin(), X.cells.begin() + N + 1);
  Y.face.assign(X.face.begin(), X.face.begin() + N + 1);
  Y.degen.assign(X.degen.begin(), X.degen.begin() + N + 1);
  Y.degen[N].clear();
  return Y;
}

SSet skeleton(const SSet& X, int k) {
  if (k < 0 || k > X.N) throw Error("skeleton: k must be in 0..N");
  const int N = X.N;
  if (k == N) return X;
  std::vector<std::vector<int>> nondeg(k + 1);
  for (int p = 0; p <= k; ++p) nondeg[p] = nondegenerate_cells(X, p);

  auto sid = [&](const Mono& sigma, int p, int y) { return X.cells[p][y] + "^" + mono_string(sigma); };

  std::vector<Ids> cells(N + 1);
  for (int n = 0; n <= k; ++n) cells[n] = X.cells[n];
  for (int n = k + 1; n <= N; ++n) {
    for (int p = 0; p <= k; ++p) {
      // surjections [n] -> [p]
      Mono sigma(n + 1, 0);
      std::function<void(int)> rec = [&](int pos) {
        if (pos == n + 1) {
          if (sigma[n] != p) return;
          for (int y : nondeg[p]) cells[n].push_back(sid(sigma, p, y));
          return;
        }
        for (int step = 0; step <= 1; ++step) {
          sigma[pos] = sigma[pos - 1] + step;
          if (sigma[pos] <= p) rec(pos + 1);
        }
      };
      if (n == 0) continue;
      sigma[0] = 0;
      rec(1);
    }
  }
  SSet Y = make_sset(N, cells);
  for (int n = 0; n <= N; ++n) std::sort(Y.cells[n].begin(), Y.cells[n].end());

  // cell of level n given by mu: [n] -> [p] applied to nondegenerate y
  auto normal = [&](const Mono& mu, int p, int y) -> int {
    const int n = static_cast<int>(mu.size()) - 1;
    std::vector<int> rank(p + 1, -1);
    Mono inj;
    for (int v : mu) {
      if (rank[v] < 0) {
        rank[v] = static_cast<int>(inj.size());
        inj.push_back(v);
      }
    }
    int q = static_cast<int>(inj.size()) - 1;
    int yq = apply_mono(X, inj, p, y);
    Mono comp(mu.size());
    for (std::size_t t = 0; t < mu.size(); ++t) comp[t] = rank[mu[t]];
    if (n <= k) return apply_mono(X, comp, q, yq);
    EZ e = ez_decompose(X, q, yq);
    Mono full(mu.size());
    for (std::size_t t = 0; t < mu.size(); ++t) full[t] = e.sigma[comp[t]];
    return Y.index(n, sid(full, e.level, e.cell));
  };

  for (int n = 1; n <= N; ++n) {
    for (int c = 0; c < Y.size(n); ++c) {
      for (int i = 0; i <= n; ++i) {
        if (n <= k) {
          Y.face[n][i][c] = X.face[n][i][c];
          continue;
        }
        const std::string& id = Y.cells[n][c];
        auto hat = id.rfind('^');
        Mono sigma = parse_mono(id.substr(hat + 1));
        int p = sigma.back();
        int y = X.index(p, id.substr(0, hat));
        Mono mu = sigma;
        mu.erase(mu.begin() + i);
        Y.face[n][i][c] = normal(mu, p, y);
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < Y.size(n); ++c) {
      for (int i = 0; i <= n; ++i) {
        if (n < k) {
          Y.degen[n][i][c] = X.degen[n][i][c];
          continue;
        }
        Mono sigma;
        int p, y;
        if (n == k) {
          EZ e = ez_decompose(X, n, c);
          sigma = e.sigma;
          p = e.level;
          y = e.cell;
        } else {
          const std::string& id = Y.cells[n][c];
          auto hat = id.rfind('^');
          sigma = parse_mono(id.substr(hat + 1));
          p = sigma.back();
          y = X.index(p, id.substr(0, hat));
        }
        sigma.insert(sigma.begin() + i, sigma[i]);
        Y.degen[n][i][c] = Y.index(n + 1, sid(sigma, p, y));
      }
    }
  }
  return Y;
}

SSet coskeleton(const SSet& X, int k, int N) {
  if (k < 0 || k > X.N) throw Error("coskeleton: k must be in 0..N of the input");
  if (N < k) throw Error("coskeleton: target level below k");
  SSet Y;
  Y.N = N;
  Y.cells.assign(X.cells.begin(), X.cells.begin() + k + 1);
  Y.face.assign(X.face.begin(), X.face.begin() + k + 1);
  Y.degen.assign(X.degen.begin(), X.degen.begin() + k + 1);
  Y.cells.resize(N + 1);
  Y.face.resize(N + 1);
  Y.degen.resize(N + 1);
  Y.degen[k].clear();
  // tuples[n][c] = faces of the level-n cell c (only for n > k)
  std::vector<std::vector<std::vector<int>>> tuples(N + 1);
  for (int n = k + 1; n <= N; ++n) {
    const int lower = n - 1;
    // candidates for x_j given d_0..d_{j-1}
    std::vector<VecMap<std::vector<int>>> by_prefix(n + 1);
    for (int j = 1; j <= n; ++j) {
      for (int x = 0; x < Y.size(lower); ++x) {
        std::vector<int> key(j);
        for (int i = 0; i < j; ++i) key[i] = lower >= 1 ? Y.face[lower][i][x] : 0;
        by_prefix[j][key].push_back(x);
      }
    }
    std::vector<std::vector<int>> found;
    std::vector<int> cur(n + 1);
    std::function<void(int)> rec = [&](int j) {
      if (j == n + 1) {
        found.push_back(cur);
        return;
      }
      if (j == 0) {
        for (int x = 0; x < Y.size(lower); ++x) {
          cur[0] = x;
          rec(1);
        }
        return;
      }
      // d_i x_j = d_{j-1} x_i for i < j
      std::vector<int> key(j);
      for (int i = 0; i < j; ++i) key[i] = lower >= 1 ? Y.face[lower][j - 1][cur[i]] : 0;
      auto it = by_prefix[j].find(key);
      if (it == by_prefix[j].end()) return;
      for (int x : it->second) {
        cur[j] = x;
        rec(j + 1);
      }
    };
    rec(0);
    Ids ids;
    ids.reserve(found.size());
    for (auto& t : found) {
      Ids parts;
      for (int x : t) parts.push_back(Y.cells[lower][x]);
      ids.push_back(tuple_id(parts));
    }
    std::vector<int> perm = canonical_order(ids, "cell");
    tuples[n] = permute_positions(found, perm);
    Y.cells[n] = ids;
    Y.face[n].assign(n + 1, std::vector<int>(found.size()));
    for (std::size_t c = 0; c < found.size(); ++c) {
      for (int i = 0; i <= n; ++i) Y.face[n][i][c] = tuples[n][c][i];
    }
    VecMap<int> where;
    for (std::size_t c = 0; c < found.size(); ++c) where[tuples[n][c]] = static_cast<int>(c);
    // degeneracies from level n-1 into level n
    Y.degen[lower].assign(lower + 1, std::vector<int>(Y.size(lower)));
    for (int x = 0; x < Y.size(lower); ++x) {
      for (int i = 0; i <= lower; ++i) {
        std::vector<int> t(n + 1);
        for (int j = 0; j <= n; ++j) {
          if (j < i) t[j] = Y.degen[lower - 1][i - 1][Y.face[lower][j][x]];
          else if (j == i || j == i + 1) t[j] = x;
          else t[j] = Y.degen[lower - 1][i][Y.face[lower][j - 1][x]];
        }
        auto it = where.find(t);
        if (it == where.end()) throw Error("coskeleton: degenerate family missing; input is not simplicial");
        Y.degen[lower][i][x] = it->second;
      }
    }
  }
  return Y;
}

}  // namespace fhg
