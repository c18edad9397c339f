// Licensed under the Apache License, Version 2.0.
#include "stacky.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace fhg {

namespace {

std::string quote(const Ids& ids, int i) { return "'" + ids[i] + "'"; }

int tuple_at(const ProductBibundle& P, const std::vector<int>& t) {
  auto it = P.tuple_index.find(t);
  return it == P.tuple_index.end() ? -1 : it->second;
}

int chain_arrow(const Chain& c, const std::vector<int>& t) {
  auto it = c.arr_index.find(t);
  return it == c.arr_index.end() ? -1 : it->second;
}

bool is_identity(const FiniteGroupoid& G, int a) { return G.identity[G.target[a]] == a; }

// A member ((1_r, eta), f) of a class of the right composite p (q r).
struct PureRight {
  int r = -1, eta = -1, f = -1;
};

std::vector<PureRight> pure_right_members(const AssociatorDomains& A) {
  const auto& G = *A.c1.g;
  std::vector<PureRight> out(A.right.members.size());
  for (std::size_t c = 0; c < out.size(); ++c)
    for (auto [y, f] : A.right.members[c]) {
      const auto& t = A.id_m.tuples[y];
      if (is_identity(G, t[0])) {
        out[c] = {G.target[t[0]], t[1], f};
        break;
      }
    }
  return out;
}

// Inverse of a unitor: arrow -> multiplication element, -1 when not hit.
std::vector<int> unitor_inverse(const std::vector<int>& unitor, int arrows) {
  std::vector<int> inv(arrows, -1);
  for (int e = 0; e < static_cast<int>(unitor.size()); ++e)
    if (unitor[e] >= 0 && unitor[e] < arrows) inv[unitor[e]] = e;
  return inv;
}

// Multiplication elements over (unit, q) when side == 0, over (p, unit) when side == 1, as a
// bibundle from G to G acting through the free slot.
Bibundle unit_restriction(const StackyGroupoidData& D, const Chain& c2, int side, std::vector<int>& index) {
  const auto& G = *D.g;
  const Bibundle& E = D.mult;
  Bibundle U;
  U.left = D.g;
  U.right = D.g;
  index.assign(E.size(), -1);
  std::vector<int> members;
  for (int e = 0; e < E.size(); ++e) {
    const auto& pq = c2.obj_tuple[E.jl[e]];
    int free = pq[1 - side], fixed = pq[side];
    int x = side == 0 ? D.t_map[free] : D.s_map[free];
    if (fixed != D.unit[x]) continue;
    index[e] = static_cast<int>(members.size());
    members.push_back(e);
    U.carrier.push_back(E.carrier[e]);
    U.jl.push_back(free);
    U.jr.push_back(E.jr[e]);
  }
  auto from = arrows_from(G);
  auto into = arrows_into(G);
  for (int u = 0; u < U.size(); ++u) {
    int e = members[u];
    const auto& pq = c2.obj_tuple[E.jl[e]];
    for (int g : from[U.jl[u]]) {
      std::vector<int> t(2);
      t[1 - side] = g;
      t[side] = G.identity[pq[side]];
      int A = chain_arrow(c2, t);
      int v = A < 0 ? -1 : E.act_left(A, e);
      if (v >= 0 && index[v] >= 0) U.left_act[pair_key(g, u)] = index[v];
    }
    for (int g : into[U.jr[u]]) {
      int v = E.act_right(e, g);
      if (v >= 0 && index[v] >= 0) U.right_act[pair_key(u, g)] = index[v];
    }
  }
  return U;
}

// Pushes every pure triple of ((p q) r) s around both sides of the cube and compares the classes
// reached in p (q (r s)).
std::string cube_witness(const StackyGroupoidData& D, const AssociatorDomains& A, const std::vector<int>& assoc) {
  const auto& G = *D.g;
  const Bibundle& E = D.mult;
  Chain c4 = chain_groupoid(D.g, D.s_map, D.t_map, 4);
  ProductBibundle p11e = product_bibundle({&A.id, &A.id, &E}, {&A.c1, &A.c1, &A.c2}, {&A.c1, &A.c1, &A.c1}, c4, A.c3);
  Composite inner = compose_bibundles(p11e.bib, A.id_m.bib, D.order);
  Composite outer = compose_bibundles(inner.bib, E, D.order);
  auto pure = pure_right_members(A);
  auto first = [&](int e) { return A.c2.obj_tuple[E.jl[e]][0]; };
  auto second = [&](int e) { return A.c2.obj_tuple[E.jl[e]][1]; };
  auto id = [&](int p) { return G.identity[p]; };

  // ((eta, 1_q), f) in the left composite -> pure member of its image
  auto step = [&](int eta, int q, int f) -> PureRight {
    int y = tuple_at(A.m_id, {eta, id(q)});
    int c = y < 0 ? -1 : lookup(A.left.pair_class, y, f);
    if (c < 0) return {};
    return pure[assoc[c]];
  };
  auto final_class = [&](int p1, int p2, int h, int r, int k, int f) {
    int x = tuple_at(p11e, {id(p1), id(p2), h});
    int y = tuple_at(A.id_m, {id(r), k});
    int xy = (x < 0 || y < 0) ? -1 : lookup(inner.pair_class, x, y);
    return xy < 0 ? -1 : lookup(outer.pair_class, xy, f);
  };

  std::vector<std::vector<int>> by_first(G.num_objects());
  for (int e = 0; e < E.size(); ++e) by_first[first(e)].push_back(e);
  for (int e1 = 0; e1 < E.size(); ++e1)
    for (int e2 : by_first[E.jr[e1]])
      for (int e3 : by_first[E.jr[e2]]) {
        const int p1 = first(e1), p2 = second(e1), p3 = second(e2), p4 = second(e3);
        auto where = [&] {
          return "triple (" + quote(E.carrier, e1) + ", " + quote(E.carrier, e2) + ", " + quote(E.carrier, e3) + ")";
        };
        // first side: reassociate the outer pair, swap, reassociate again
        PureRight a1 = step(e2, p4, e3);
        if (a1.eta < 0) return where() + " leaves the left composite";
        PureRight a3 = step(e1, E.jr[a1.eta], a1.f);
        if (a3.eta < 0) return where() + " leaves the left composite after the swap";
        int route_a = final_class(p1, p2, a1.eta, a3.r, a3.eta, a3.f);
        // second side: inner, outer, inner
        PureRight b1 = step(e1, p3, e2);
        if (b1.eta < 0) return where() + " leaves the left composite";
        PureRight b2 = step(b1.f, p4, e3);
        if (b2.eta < 0) return where() + " leaves the left composite at the second step";
        PureRight b3 = step(b1.eta, p4, b2.eta);
        if (b3.eta < 0) return where() + " leaves the left composite at the third step";
        int route_b = final_class(p1, b3.r, b3.eta, p1, b3.f, b2.f);
        if (route_a < 0 || route_b < 0) return where() + " reaches no class of the fully right-bracketed composite";
        if (route_a != route_b)
          return where() + ": the two sides reach " + quote(outer.bib.carrier, route_a) + " and " +
                 quote(outer.bib.carrier, route_b);
      }
  return {};
}

}  // namespace

Chain pairs_chain(const StackyGroupoidData& D) { return chain_groupoid(D.g, D.s_map, D.t_map, 2); }

AssociatorDomains associator_domains(const StackyGroupoidData& D) {
  AssociatorDomains A;
  A.c1 = chain_groupoid(D.g, D.s_map, D.t_map, 1);
  A.c2 = chain_groupoid(D.g, D.s_map, D.t_map, 2);
  A.c3 = chain_groupoid(D.g, D.s_map, D.t_map, 3);
  A.id = identity_bibundle(D.g);
  A.m_id = product_bibundle({&D.mult, &A.id}, {&A.c2, &A.c1}, {&A.c1, &A.c1}, A.c3, A.c2);
  A.id_m = product_bibundle({&A.id, &D.mult}, {&A.c1, &A.c2}, {&A.c1, &A.c1}, A.c3, A.c2);
  A.left = compose_bibundles(A.m_id.bib, D.mult, D.order);
  A.right = compose_bibundles(A.id_m.bib, D.mult, D.order);
  return A;
}

Report verify_stacky(const StackyGroupoidData& D) {
  Report r;
  std::string w;
  if (!D.g) {
    r.fail("presentation tables well formed", "stacky/structure", "no presenting groupoid");
    return r;
  }
  const auto& G = *D.g;
  const Bibundle& E = D.mult;
  const int nb = static_cast<int>(D.base.size()), no = G.num_objects(), na = G.num_arrows();
  auto in_range = [](const std::vector<int>& v, int len, int range, bool allow_missing) {
    if (static_cast<int>(v.size()) != len) return false;
    return std::all_of(v.begin(), v.end(), [&](int x) { return (allow_missing && x == -1) || (x >= 0 && x < range); });
  };
  if (!in_range(D.s_map, no, nb, false)) w = "source map is not a total map from objects to the base";
  else if (!in_range(D.t_map, no, nb, false)) w = "target map is not a total map from objects to the base";
  else if (!in_range(D.unit, nb, no, false)) w = "unit is not a total map from the base to objects";
  else if (!E.right || !(*E.right == G)) w = "multiplication does not land in the presenting groupoid";
  else if (!E.left || !(*E.left == *pairs_chain(D).g)) w = "multiplication does not start at the pairs groupoid";
  else if (!in_range(D.left_unitor, E.size(), na, true)) w = "left unitor is not a partial map to arrows";
  else if (!in_range(D.right_unitor, E.size(), na, true)) w = "right unitor is not a partial map to arrows";
  r.record("presentation tables well formed", "stacky/structure", w);
  if (!w.empty()) return r;

  r.add(verify_groupoid(G));
  if (!r.ok()) return r;

  w.clear();
  for (int a = 0; a < na && w.empty(); ++a)
    if (D.s_map[G.source[a]] != D.s_map[G.target[a]] || D.t_map[G.source[a]] != D.t_map[G.target[a]])
      w = "arrow " + quote(G.arrows, a) + " joins objects with different source or target points";
  if (w.empty() && !is_surjective(D.s_map, nb)) w = "source map is not onto the base";
  if (w.empty() && !is_surjective(D.t_map, nb)) w = "target map is not onto the base";
  r.record("source and target constant on orbits and onto", "stacky/source-target", w);

  w.clear();
  for (int x = 0; x < nb && w.empty(); ++x)
    if (D.s_map[D.unit[x]] != x || D.t_map[D.unit[x]] != x)
      w = "unit at " + quote(D.base, x) + " is object " + quote(G.objects, D.unit[x]) + " over other points";
  r.record("unit is a section of source and target", "stacky/unit-section", w);

  r.add(verify_bibundle(E));
  if (!r.ok()) return r;
  Verdict hs = right_principal(E);
  r.record("multiplication is right principal", "stacky/multiplication", hs.witness);

  Chain c2 = pairs_chain(D);
  w.clear();
  for (int e = 0; e < E.size() && w.empty(); ++e) {
    const auto& pq = c2.obj_tuple[E.jl[e]];
    if (D.t_map[E.jr[e]] != D.t_map[pq[0]]) w = "target of product differs from target of first factor at " + quote(E.carrier, e);
    else if (D.s_map[E.jr[e]] != D.s_map[pq[1]])
      w = "source of product differs from source of second factor at " + quote(E.carrier, e);
  }
  r.record("product has the outer source and target", "stacky/moment-compatibility", w);
  if (!r.ok()) return r;

  AssociatorDomains A = associator_domains(D);
  w.clear();
  if (static_cast<int>(D.assoc.size()) != A.left.bib.size() || !is_bijection(D.assoc, A.right.bib.size()))
    w = "associator is not a bijection between the two triple composites";
  r.record("associator is a bijection", "stacky/associator", w);
  if (!w.empty()) return r;
  r.add(verify_bibundle_morphism(A.left.bib, A.right.bib, D.assoc), "associator");
  if (!r.ok()) return r;

  r.record("associator satisfies the cube identity", "stacky/cube", cube_witness(D, A, D.assoc));

  std::vector<int> lidx, ridx;
  Bibundle Ul = unit_restriction(D, c2, 0, lidx);
  Bibundle Ur = unit_restriction(D, c2, 1, ridx);
  w.clear();
  std::vector<int> lphi(Ul.size(), -1), rphi(Ur.size(), -1);
  for (int e = 0; e < E.size() && w.empty(); ++e) {
    if ((lidx[e] >= 0) != (D.left_unitor[e] >= 0)) w = "left unitor domain differs at " + quote(E.carrier, e);
    else if ((ridx[e] >= 0) != (D.right_unitor[e] >= 0)) w = "right unitor domain differs at " + quote(E.carrier, e);
    if (lidx[e] >= 0) lphi[lidx[e]] = D.left_unitor[e];
    if (ridx[e] >= 0) rphi[ridx[e]] = D.right_unitor[e];
  }
  if (w.empty() && !is_bijection(lphi, na)) w = "left unitor is not a bijection onto arrows";
  if (w.empty() && !is_bijection(rphi, na)) w = "right unitor is not a bijection onto arrows";
  r.record("unitors are bijections on their domains", "stacky/unitors", w);
  if (!w.empty()) return r;
  r.add(verify_bibundle_morphism(Ul, A.id, lphi), "left unitor");
  r.add(verify_bibundle_morphism(Ur, A.id, rphi), "right unitor");
  if (!r.ok()) return r;

  std::vector<int> bl_inv = unitor_inverse(D.left_unitor, na), br_inv = unitor_inverse(D.right_unitor, na);
  std::vector<int> assoc_inv = invert_bijection(D.assoc);
  auto pure_r = pure_right_members(A);
  auto first = [&](int e) { return c2.obj_tuple[E.jl[e]][0]; };
  auto second = [&](int e) { return c2.obj_tuple[E.jl[e]][1]; };
  auto act_pair = [&](int g1, int g2, int e) {
    int Aa = chain_arrow(c2, {g1, g2});
    return Aa < 0 ? -1 : E.act_left(Aa, e);
  };

  // g h -> (g h) 1 -> g (h 1) -> g h
  w.clear();
  for (int e = 0; e < E.size() && w.empty(); ++e) {
    int p1 = first(e), p2 = second(e), y = D.s_map[p2];
    int u = br_inv[G.identity[E.jr[e]]];
    int x = tuple_at(A.m_id, {e, G.identity[D.unit[y]]});
    int c = x < 0 ? -1 : lookup(A.left.pair_class, x, u);
    PureRight pr = c < 0 ? PureRight{} : pure_r[D.assoc[c]];
    int out = pr.eta < 0 ? -1 : act_pair(G.identity[p1], D.right_unitor[pr.eta], pr.f);
    if (out != e) w = "right unit triangle moves " + quote(E.carrier, e) + (out < 0 ? " off the carrier" : " to " + quote(E.carrier, out));
  }
  r.record("right unit triangle is the identity", "stacky/unit-triangle-right", w);

  // g h -> 1 (g h) -> (1 g) h -> g h
  w.clear();
  for (int e = 0; e < E.size() && w.empty(); ++e) {
    int p1 = first(e), p2 = second(e), xb = D.t_map[p1];
    int u = bl_inv[G.identity[E.jr[e]]];
    int y = tuple_at(A.id_m, {G.identity[D.unit[xb]], e});
    int c = y < 0 ? -1 : lookup(A.right.pair_class, y, u);
    int out = -1;
    if (c >= 0)
      for (auto [m, f] : A.left.members[assoc_inv[c]]) {
        const auto& t = A.m_id.tuples[m];
        if (!is_identity(G, t[1])) continue;
        out = act_pair(D.left_unitor[t[0]], G.identity[p2], f);
        break;
      }
    if (out != e) w = "left unit triangle moves " + quote(E.carrier, e) + (out < 0 ? " off the carrier" : " to " + quote(E.carrier, out));
  }
  r.record("left unit triangle is the identity", "stacky/unit-triangle-left", w);

  // g -> 1 g -> (1 g) 1 -> g 1 -> g, through every member of the intermediate class
  w.clear();
  for (int p = 0; p < no && w.empty(); ++p) {
    int y = D.s_map[p];
    int u = bl_inv[G.identity[p]];
    int v = br_inv[G.identity[E.jr[u]]];
    int x = tuple_at(A.m_id, {u, G.identity[D.unit[y]]});
    int c = x < 0 ? -1 : lookup(A.left.pair_class, x, v);
    if (c < 0) {
      w = "unit composite at " + quote(G.objects, p) + " is missing";
      break;
    }
    for (auto [m, f] : A.left.members[c]) {
      const auto& t = A.m_id.tuples[m];
      int lu = D.left_unitor[t[0]];
      int out = lu < 0 ? -1 : act_pair(lu, t[1], f);
      if (out < 0 || D.right_unitor[out] != G.identity[p]) {
        w = "mixed unit triangle at " + quote(G.objects, p) + " is not the identity through " + quote(A.left.bib.carrier, c);
        break;
      }
    }
  }
  r.record("mixed unit triangle is the identity", "stacky/unit-triangle-mixed", w);

  // t(e(x)) read off through the left unitor and the moment compatibility
  w.clear();
  for (int q = 0; q < no && w.empty(); ++q) {
    int xb = D.t_map[q];
    int u = bl_inv[G.identity[q]];
    bool derived = D.t_map[E.jr[u]] == xb && D.t_map[first(u)] == D.t_map[E.jr[u]];
    bool direct = D.t_map[D.unit[xb]] == xb;
    if (derived != direct)
      w = "unit section at " + quote(D.base, xb) + " is " + (direct ? "valid" : "invalid") + " directly but " +
          (derived ? "valid" : "invalid") + " through the unitors";
  }
  r.record("unit section agrees with the unitors", "stacky/unit-derived", w);

  Bibundle I = inverse_bibundle(D);
  Verdict inv = is_biprincipal(I);
  r.record("inverse bibundle is biprincipal", "stacky/inverse", inv.witness);
  if (D.inverse) {
    w.clear();
    auto phi = bibundle_morphism_search(I, *D.inverse);
    if (!phi || !is_bijection(*phi, D.inverse->size())) w = "supplied inverse is not isomorphic to the derived inverse bibundle";
    r.record("supplied inverse matches the derived one", "stacky/inverse-iso", w);
  }
  return r;
}

Bibundle inverse_bibundle(const StackyGroupoidData& D) {
  const auto& G = *D.g;
  const Bibundle& E = D.mult;
  Chain c2 = pairs_chain(D);
  std::vector<char> unit_object(G.num_objects(), 0);
  for (int o : D.unit)
    if (o >= 0 && o < G.num_objects()) unit_object[o] = 1;
  Bibundle I;
  I.left = D.g;
  I.right = D.g;
  std::vector<int> pos(E.size(), -1), members;
  for (int e = 0; e < E.size(); ++e) {
    if (!unit_object[E.jr[e]]) continue;
    pos[e] = I.size();
    members.push_back(e);
    I.carrier.push_back(E.carrier[e]);
    I.jl.push_back(c2.obj_tuple[E.jl[e]][0]);
    I.jr.push_back(c2.obj_tuple[E.jl[e]][1]);
  }
  auto from = arrows_from(G);
  auto into = arrows_into(G);
  for (int i = 0; i < I.size(); ++i) {
    int e = members[i];
    for (int g : from[I.jl[i]]) {
      int A = chain_arrow(c2, {g, G.identity[I.jr[i]]});
      int v = A < 0 ? -1 : E.act_left(A, e);
      if (v >= 0 && pos[v] >= 0) I.left_act[pair_key(g, i)] = pos[v];
    }
    for (int g : into[I.jr[i]]) {
      int A = chain_arrow(c2, {G.identity[I.jl[i]], G.inverse[g]});
      int v = A < 0 ? -1 : E.act_left(A, e);
      if (v >= 0 && pos[v] >= 0) I.right_act[pair_key(i, g)] = pos[v];
    }
  }
  return I;
}

StrictInverse strict_inverse_check(const StackyGroupoidData& D) {
  StrictInverse S;
  Report rep = verify_stacky(D);
  if (!rep.ok()) {
    S.witness = rep.first_failure()->anchor + ": " + rep.first_failure()->witness;
    return S;
  }
  const auto& G = *D.g;
  Bibundle I = inverse_bibundle(D);
  Verdict v = is_biprincipal(I);
  if (!v.ok) {
    S.witness = v.witness;
    return S;
  }
  S.section.assign(G.num_objects(), -1);
  for (int i = I.size() - 1; i >= 0; --i) S.section[I.jl[i]] = i;
  for (int p = 0; p < G.num_objects(); ++p) S.objects.push_back(I.jr[S.section[p]]);
  auto into = arrows_into(G);
  for (int a = 0; a < G.num_arrows(); ++a) {
    int moved = I.act_left(a, S.section[G.source[a]]);
    int base = S.section[G.target[a]];
    int image = -1;
    for (int g : into[I.jr[base]])
      if (I.act_right(base, g) == moved) image = g;
    if (image < 0) {
      S.witness = "no arrow carries the section along " + quote(G.arrows, a);
      return S;
    }
    S.arrows.push_back(image);
  }
  for (int a = 0; a < G.num_arrows() && S.witness.empty(); ++a)
    for (int b = 0; b < G.num_arrows() && S.witness.empty(); ++b) {
      int ab = G.mul(a, b);
      if (ab >= 0 && S.arrows[ab] != G.mul(S.arrows[a], S.arrows[b]))
        S.witness = "induced map does not preserve the composite of " + quote(G.arrows, a) + " and " + quote(G.arrows, b);
    }
  S.ok = S.witness.empty();
  return S;
}

TwoGroupoidData to_two_groupoid(const StackyGroupoidData& D) {
  Report rep = verify_stacky(D);
  if (!rep.ok()) throw Error("stacky data does not verify: " + rep.first_failure()->law + ": " + rep.first_failure()->witness);
  const auto& G = *D.g;
  const Bibundle& E = D.mult;
  AssociatorDomains A = associator_domains(D);
  TwoGroupoidData X;
  X.x0 = D.base;
  X.x1 = G.objects;
  X.x2 = E.carrier;
  X.d1 = {D.s_map, D.t_map};
  X.s0 = D.unit;
  for (auto& t : X.d2) t.resize(E.size());
  for (int e = 0; e < E.size(); ++e) {
    const auto& pq = A.c2.obj_tuple[E.jl[e]];
    X.d2[0][e] = pq[1];
    X.d2[1][e] = E.jr[e];
    X.d2[2][e] = pq[0];
  }
  auto bl_inv = unitor_inverse(D.left_unitor, G.num_arrows());
  auto br_inv = unitor_inverse(D.right_unitor, G.num_arrows());
  for (int p = 0; p < G.num_objects(); ++p) {
    X.s1[0].push_back(bl_inv[G.identity[p]]);
    X.s1[1].push_back(br_inv[G.identity[p]]);
  }

  // (class of p (q r), last factor) -> middle elements of its pure members
  std::map<std::pair<int, int>, std::vector<int>> pure;
  for (int c = 0; c < static_cast<int>(A.right.members.size()); ++c)
    for (auto [y, f] : A.right.members[c]) {
      const auto& t = A.id_m.tuples[y];
      if (is_identity(G, t[0])) pure[{c, f}].push_back(t[1]);
    }
  SSet S = as_sset(X);
  for (const auto& h : horn_tuples(S, 3, 0)) {
    int e1 = h[0], e2 = h[1], e3 = h[2];
    int y = tuple_at(A.m_id, {e3, G.identity[X.d2[0][e1]]});
    int c = y < 0 ? -1 : lookup(A.left.pair_class, y, e1);
    auto it = c < 0 ? pure.end() : pure.find({D.assoc[c], e2});
    if (it == pure.end() || it->second.size() != 1)
      throw Error("associator does not determine a unique filler for the horn (" + quote(E.carrier, e1) + ", " +
                  quote(E.carrier, e2) + ", " + quote(E.carrier, e3) + ")");
    X.m[0][{e1, e2, e3}] = it->second.front();
  }
  for (const auto& t : tetrahedra(X))
    for (int i = 1; i < 4; ++i) {
      auto [pos, fresh] = X.m[i].emplace(drop(t, i), t[i]);
      if (!fresh && pos->second != t[i])
        throw Error("associator gives two fillers for one horn at face " + std::to_string(i) + " of " +
                    quote(E.carrier, t[i]));
    }
  return X;
}

StackyGroupoidData from_two_groupoid(const TwoGroupoidData& X, RepOrder order) {
  Report rep = verify_two_groupoid(X);
  if (!rep.ok()) throw Error("2-groupoid data does not verify: " + rep.first_failure()->law + ": " + rep.first_failure()->witness);
  auto m = [&](int i, int a, int b, int c) {
    auto it = X.m[i].find({a, b, c});
    if (it == X.m[i].end()) throw Error("multiplication table " + std::to_string(i) + " is not total");
    return it->second;
  };
  BigonGroupoid B = bigon_groupoid(X);
  TildeIso T = tilde_bigon_iso(X);
  StackyGroupoidData D;
  D.g = std::make_shared<const FiniteGroupoid>(B.g);
  D.base = X.x0;
  D.s_map = X.d1[0];
  D.t_map = X.d1[1];
  D.unit = X.s0;
  D.order = order;
  const auto& G = *D.g;
  Chain c2 = pairs_chain(D);

  Bibundle& E = D.mult;
  E.left = c2.g;
  E.right = D.g;
  E.carrier = X.x2;
  const int n2 = static_cast<int>(X.x2.size());
  for (int e = 0; e < n2; ++e) {
    E.jl.push_back(c2.obj_index.at({X.d2[2][e], X.d2[0][e]}));
    E.jr.push_back(X.d2[1][e]);
  }
  auto into = arrows_into(G);
  auto from2 = arrows_from(*c2.g);
  for (int e = 0; e < n2; ++e) {
    for (int g : into[E.jr[e]]) E.right_act[pair_key(e, g)] = m(1, e, B.bigon[g], X.s1[0][X.d2[2][e]]);
    for (int A : from2[E.jl[e]]) {
      const auto& bb = c2.arr_tuple[A];
      int v = m(1, B.bigon[bb[1]], e, X.s1[1][X.d2[2][e]]);
      E.left_act[pair_key(A, e)] = m(0, v, X.s1[0][X.d2[1][v]], B.bigon[bb[0]]);
    }
  }

  D.left_unitor.assign(n2, -1);
  D.right_unitor.assign(n2, -1);
  for (int a = 0; a < G.num_arrows(); ++a) D.left_unitor[B.bigon[a]] = a;
  for (int a = 0; a < T.tilde.g.num_arrows(); ++a) D.right_unitor[T.tilde.bigon[a]] = T.phi_inv[a];

  AssociatorDomains A = associator_domains(D);
  std::map<std::pair<int, int>, std::vector<int>> by_edges;  // (d2, d1) -> elements
  for (int e = 0; e < n2; ++e) by_edges[{X.d2[2][e], X.d2[1][e]}].push_back(e);
  D.assoc.assign(A.left.bib.size(), -1);
  for (int c = 0; c < A.left.bib.size(); ++c) {
    for (auto [y, e1] : A.left.members[c]) {
      const auto& t = A.m_id.tuples[y];
      if (!is_identity(G, t[1])) continue;
      int e3 = t[0];
      for (int e2 : by_edges[{X.d2[2][e3], X.d2[1][e1]}]) {
        int e0 = m(0, e1, e2, e3);
        int z = tuple_at(A.id_m, {G.identity[X.d2[2][e3]], e0});
        int target = z < 0 ? -1 : lookup(A.right.pair_class, z, e2);
        if (target < 0) throw Error("associator image of " + quote(A.left.bib.carrier, c) + " is not a composite class");
        if (D.assoc[c] >= 0 && D.assoc[c] != target)
          throw Error("associator depends on the representative of " + quote(A.left.bib.carrier, c));
        D.assoc[c] = target;
      }
    }
    if (D.assoc[c] < 0) throw Error("class " + quote(A.left.bib.carrier, c) + " has no pure representative");
  }
  return D;
}

StackyGroupoidData package_groupoid(const FiniteGroupoid& K) {
  StackyGroupoidData D;
  D.g = std::make_shared<const FiniteGroupoid>(unit_groupoid(K.arrows));
  const auto& G = *D.g;
  std::vector<int> obj_of(K.num_arrows());  // arrow of K -> object of G
  for (int a = 0; a < K.num_arrows(); ++a) obj_of[a] = find_id(G.objects, K.arrows[a]);
  std::vector<int> arrow_of(G.num_objects());
  for (int a = 0; a < K.num_arrows(); ++a) arrow_of[obj_of[a]] = a;
  D.base = K.objects;
  for (int p = 0; p < G.num_objects(); ++p) {
    D.s_map.push_back(K.source[arrow_of[p]]);
    D.t_map.push_back(K.target[arrow_of[p]]);
  }
  for (int x = 0; x < K.num_objects(); ++x) D.unit.push_back(obj_of[K.identity[x]]);
  Chain c2 = pairs_chain(D);

  Bibundle& E = D.mult;
  E.left = c2.g;
  E.right = D.g;
  std::vector<std::array<int, 2>> pairs;
  for (const auto& pq : c2.obj_tuple) {
    E.carrier.push_back(tuple_id({G.objects[pq[0]], G.objects[pq[1]]}));
    pairs.push_back({pq[0], pq[1]});
  }
  std::vector<int> perm = canonical_order(E.carrier, "composable pair");
  pairs = permute_positions(pairs, perm);
  for (int e = 0; e < E.size(); ++e) {
    E.jl.push_back(c2.obj_index.at({pairs[e][0], pairs[e][1]}));
    int k = K.mul(arrow_of[pairs[e][0]], arrow_of[pairs[e][1]]);
    E.jr.push_back(obj_of[k]);
    E.left_act[pair_key(c2.g->identity[E.jl[e]], e)] = e;
    E.right_act[pair_key(e, G.identity[E.jr[e]])] = e;
  }
  D.left_unitor.assign(E.size(), -1);
  D.right_unitor.assign(E.size(), -1);
  for (int e = 0; e < E.size(); ++e) {
    int p = pairs[e][0], q = pairs[e][1];
    if (p == D.unit[D.t_map[q]]) D.left_unitor[e] = G.identity[q];
    if (q == D.unit[D.s_map[p]]) D.right_unitor[e] = G.identity[p];
  }

  // the only member of each class is ((a b, 1), (ab, c)) resp. ((1, (b, c)), (a, bc))
  AssociatorDomains A = associator_domains(D);
  std::map<std::array<int, 3>, int> right_class;
  auto factors = [&](int e) { return c2.obj_tuple[E.jl[e]]; };
  for (int c = 0; c < A.right.bib.size(); ++c) {
    auto [y, f] = A.right.members[c].front();
    const auto& t = A.id_m.tuples[y];
    right_class[{G.target[t[0]], factors(t[1])[0], factors(t[1])[1]}] = c;
  }
  D.assoc.assign(A.left.bib.size(), -1);
  for (int c = 0; c < A.left.bib.size(); ++c) {
    auto [y, f] = A.left.members[c].front();
    const auto& t = A.m_id.tuples[y];
    D.assoc[c] = right_class.at({factors(t[0])[0], factors(t[0])[1], G.target[t[1]]});
  }
  return D;
}

std::vector<std::vector<int>> associator_search(const StackyGroupoidData& D, int limit) {
  std::vector<std::vector<int>> found;
  AssociatorDomains A = associator_domains(D);
  const Bibundle& L = A.left.bib;
  const Bibundle& R = A.right.bib;
  if (L.size() != R.size()) return found;
  auto from = arrows_from(*L.left);
  auto into = arrows_into(*L.right);

  // orbits of the two actions, each with its consistent images
  std::vector<int> orbit_of(L.size(), -1);
  std::vector<std::vector<int>> orbits;
  for (int root = 0; root < L.size(); ++root) {
    if (orbit_of[root] >= 0) continue;
    std::vector<int> members{root};
    orbit_of[root] = static_cast<int>(orbits.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      int x = members[i];
      auto add = [&](int y) {
        if (y >= 0 && orbit_of[y] < 0) {
          orbit_of[y] = orbit_of[root];
          members.push_back(y);
        }
      };
      for (int h : from[L.jl[x]]) add(L.act_left(h, x));
      for (int g : into[L.jr[x]]) add(L.act_right(x, g));
    }
    orbits.push_back(members);
  }
  std::vector<std::vector<std::vector<int>>> options(orbits.size());
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    int root = orbits[o][0];
    for (int y0 = 0; y0 < R.size(); ++y0) {
      if (R.jl[y0] != L.jl[root] || R.jr[y0] != L.jr[root]) continue;
      std::map<int, int> phi{{root, y0}};
      std::vector<int> queue{root};
      bool ok = true;
      for (std::size_t i = 0; ok && i < queue.size(); ++i) {
        int x = queue[i], y = phi[x];
        auto visit = [&](int x2, int y2) {
          if (y2 < 0 || L.jl[x2] != R.jl[y2] || L.jr[x2] != R.jr[y2]) {
            ok = false;
          } else if (auto it = phi.find(x2); it == phi.end()) {
            phi[x2] = y2;
            queue.push_back(x2);
          } else if (it->second != y2) {
            ok = false;
          }
        };
        for (int h : from[L.jl[x]])
          if (ok) visit(L.act_left(h, x), R.act_left(h, y));
        for (int g : into[L.jr[x]])
          if (ok) visit(L.act_right(x, g), R.act_right(y, g));
      }
      if (!ok) continue;
      std::vector<int> images;
      for (int x : orbits[o]) images.push_back(phi.at(x));
      options[o].push_back(images);
    }
  }
  std::vector<int> assoc(L.size(), -1);
  std::vector<char> used(R.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t o) {
    if (static_cast<int>(found.size()) >= limit) return;
    if (o == orbits.size()) {
      if (cube_witness(D, A, assoc).empty()) found.push_back(assoc);
      return;
    }
    for (const auto& images : options[o]) {
      bool free = std::all_of(images.begin(), images.end(), [&](int y) { return !used[y]; });
      if (!free) continue;
      for (std::size_t i = 0; i < images.size(); ++i) {
        assoc[orbits[o][i]] = images[i];
        used[images[i]] = 1;
      }
      rec(o + 1);
      for (std::size_t i = 0; i < images.size(); ++i) used[images[i]] = 0;
    }
  };
  rec(0);
  return found;
}

}  // namespace fhg
