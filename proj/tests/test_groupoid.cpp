#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"

using namespace fhg;
using namespace fhg::testing;

namespace {

// Closure of the relation (e, f) ~ (e.b, b^-1.f) by repeated relaxation, no union-find.
std::map<std::pair<int, int>, int> brute_classes(const Bibundle& E, const Bibundle& F) {
  const auto& B = *E.right;
  std::map<std::pair<int, int>, int> label;
  for (int e = 0; e < E.size(); ++e)
    for (int f = 0; f < F.size(); ++f)
      if (E.jr[e] == F.jl[f]) label[{e, f}] = static_cast<int>(label.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [p, l] : label) {
      for (int b = 0; b < B.num_arrows(); ++b) {
        if (B.target[b] != E.jr[p.first]) continue;
        auto q = std::make_pair(E.act_right(p.first, b), F.act_left(B.inverse[b], p.second));
        int m = std::min(l, label.at(q));
        if (l != m || label.at(q) != m) {
          l = m;
          label.at(q) = m;
          changed = true;
        }
      }
    }
  }
  return label;
}

bool isomorphic(const Bibundle& E, const Bibundle& F) {
  auto phi = bibundle_morphism_search(E, F);
  return phi && is_bijection(*phi, F.size()) && verify_bibundle_morphism(E, F, *phi).ok();
}

}  // namespace

TEST_CASE("groupoid fixtures verify") {
  CHECK(verify_groupoid(pair_groupoid(3)).ok());
  CHECK(pair_groupoid(3).num_arrows() == 9);
  CHECK(verify_groupoid(group_groupoid(cyclic_group(5))).ok());
  FiniteGroupoid s3 = group_groupoid(symmetric_group(3));
  CHECK(verify_groupoid(s3).ok());
  CHECK(s3.num_arrows() == 6);
  CHECK(verify_groupoid(unit_groupoid({"b", "a"})).ok());

  FiniteGroupoid bad = pair_groupoid(2);
  bad.compose[pair_key(1, 1)] = 0;
  Report r = verify_groupoid(bad);
  CHECK_FALSE(r.ok());
}

TEST_CASE("groupoid isomorphism search") {
  auto iso = groupoid_iso_search(pair_groupoid(2), transitive_groupoid(2, 1));
  CHECK(iso.has_value());
  CHECK_FALSE(groupoid_iso_search(group_groupoid(cyclic_group(4)), transitive_groupoid(2, 1)).has_value());
  // Z/4 and Z/2 x Z/2 share counts but differ
  FiniteGroupoid z4 = group_groupoid(cyclic_group(4));
  FiniteGroupoid z22;
  z22.objects = {"*"};
  z22.arrows = {"00", "01", "10", "11"};
  z22.source = z22.target = {0, 0, 0, 0};
  z22.identity = {0};
  z22.inverse = {0, 1, 2, 3};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) z22.compose[pair_key(a, b)] = a ^ b;
  REQUIRE(verify_groupoid(z22).ok());
  CHECK_FALSE(groupoid_iso_search(z4, z22).has_value());
  CHECK(groupoid_iso_search(z4, z4).has_value());
}

TEST_CASE("identity bibundle") {
  auto z2 = share(group_groupoid(cyclic_group(2)));
  Bibundle I = identity_bibundle(z2);
  CHECK(I.size() == 2);
  CHECK(I.jl == std::vector<int>{0, 0});
  CHECK(I.jr == std::vector<int>{0, 0});
  CHECK(verify_bibundle(I).ok());
  CHECK(is_biprincipal(I).ok);
  for (int k = 1; k <= 3; ++k) CHECK(identity_bibundle(share(pair_groupoid(k))).size() == k * k);

  Bibundle bad = I;
  bad.right_act[pair_key(1, 1)] = 1;
  Report r = verify_bibundle(bad);
  REQUIRE_FALSE(r.ok());
  CHECK_FALSE(r.first_failure()->witness.empty());
}

TEST_CASE("bibundle composition") {
  auto G = share(transitive_groupoid(2, 2));
  Bibundle I = identity_bibundle(G);
  Composite C = compose_bibundles(I, I);
  CHECK(verify_bibundle(C.bib).ok());
  CHECK(isomorphic(C.bib, I));
  CHECK(is_biprincipal(C.bib).ok);

  auto z3 = share(group_groupoid(cyclic_group(3)));
  Bibundle T = torsor_bibundle(z3);
  REQUIRE(verify_bibundle(T).ok());
  Composite TI = compose_bibundles(T, identity_bibundle(z3));
  CHECK(isomorphic(TI.bib, T));
  CHECK(isomorphic(T, TI.bib));

  // union-find agrees with the relaxation oracle
  auto brute = brute_classes(T, identity_bibundle(z3));
  std::set<int> labels;
  for (auto& [p, l] : brute) labels.insert(l);
  CHECK(static_cast<int>(labels.size()) == TI.bib.size());
  for (auto& [p, l] : brute)
    for (auto& [q, m] : brute)
      CHECK((l == m) == (lookup(TI.pair_class, p.first, p.second) == lookup(TI.pair_class, q.first, q.second)));

  // representative choice gives an isomorphic result
  Composite TG = compose_bibundles(T, identity_bibundle(z3), RepOrder::Greatest);
  CHECK(TG.bib.carrier != TI.bib.carrier);
  CHECK(isomorphic(TG.bib, TI.bib));
}

TEST_CASE("composition is associative up to isomorphism and preserves Morita") {
  auto H = share(transitive_groupoid(2, 2));
  auto G = share(group_groupoid(cyclic_group(2)));
  Ids S = H->objects;
  Pullback P = pullback_groupoid(*G, S, {0, 0});
  auto Hp = share(P.groupoid);
  Bibundle E = pullback_bibundle(Hp, P.triple, G, {0, 0});
  REQUIRE(verify_bibundle(E).ok());
  REQUIRE(is_biprincipal(E).ok);
  Bibundle I = identity_bibundle(G);
  Bibundle left = compose_bibundles(compose_bibundles(E, I).bib, I).bib;
  Bibundle right = compose_bibundles(E, compose_bibundles(I, I).bib).bib;
  CHECK(isomorphic(left, right));
  CHECK(is_biprincipal(left).ok);
  CHECK(is_biprincipal(right).ok);
}

TEST_CASE("morphism search") {
  auto z2 = share(group_groupoid(cyclic_group(2)));
  Bibundle T = torsor_bibundle(z2);
  auto phi = bibundle_morphism_search(T, T);
  REQUIRE(phi);
  CHECK(*phi == std::vector<int>{0, 1});

  auto z4 = share(group_groupoid(cyclic_group(4)));
  Bibundle A = identity_bibundle(z4);
  Bibundle B = torsor_bibundle(z4);
  CHECK_FALSE(bibundle_morphism_search(A, B).has_value());  // different left groupoids

  // same groupoids, different carrier sizes: Z/2 plus a trivial component
  FiniteGroupoid D;
  D.objects = {"a", "b"};
  D.arrows = {"a0", "a1", "b0"};
  D.source = D.target = {0, 0, 1};
  D.identity = {0, 2};
  D.inverse = {0, 1, 2};
  D.compose = {{pair_key(0, 0), 0}, {pair_key(0, 1), 1}, {pair_key(1, 0), 1}, {pair_key(1, 1), 0}, {pair_key(2, 2), 2}};
  auto Dp = share(D);
  REQUIRE(verify_groupoid(D).ok());
  Bibundle at_a = torsor_bibundle(Dp, 0), at_b = torsor_bibundle(Dp, 1);
  REQUIRE(verify_bibundle(at_a).ok());
  REQUIRE(verify_bibundle(at_b).ok());
  CHECK(at_a.size() == 2);
  CHECK(at_b.size() == 1);
  CHECK_FALSE(bibundle_morphism_search(at_a, at_b).has_value());
  CHECK_FALSE(bibundle_morphism_search(at_b, at_a).has_value());
}

TEST_CASE("pullback groupoids") {
  FiniteGroupoid z2 = group_groupoid(cyclic_group(2));
  Pullback id = pullback_groupoid(z2, z2.objects, {0});
  CHECK(groupoid_iso_search(id.groupoid, z2).has_value());
  Pullback two = pullback_groupoid(z2, {"a", "b"}, {0, 0});
  CHECK(two.groupoid.num_arrows() == 8);
  CHECK(verify_groupoid(two.groupoid).ok());
  CHECK(two.essentially_surjective);

  FiniteGroupoid p2 = unit_groupoid({"u", "v"});
  Pullback miss = pullback_groupoid(p2, {"a"}, {0});
  CHECK_FALSE(miss.essentially_surjective);
  CHECK(miss.witness.find("v") != std::string::npos);

  auto G = share(z2);
  auto H = share(two.groupoid);
  Bibundle E = pullback_bibundle(H, two.triple, G, {0, 0});
  CHECK(verify_bibundle(E).ok());
  CHECK(is_biprincipal(E).ok);

  auto U = share(p2);
  auto Hm = share(miss.groupoid);
  Bibundle Em = pullback_bibundle(Hm, miss.triple, U, {0});
  CHECK(verify_bibundle(Em).ok());
  CHECK_FALSE(is_biprincipal(Em).ok);
}

TEST_CASE("adjoin a strict unit") {
  auto z2 = share(group_groupoid(cyclic_group(2)));
  Bibundle T = torsor_bibundle(z2);
  StrictUnit U = adjoin_strict_unit(z2, T);
  CHECK(U.groupoid->num_objects() == 2);
  CHECK(verify_groupoid(*U.groupoid).ok());
  CHECK(U.groupoid->objects[U.unit[0]] == "e(m)");
  CHECK(verify_bibundle(U.morita).ok());
  CHECK(is_biprincipal(U.morita).ok);
  CHECK(verify_bibundle(U.restricted).ok());
  CHECK(isomorphic(U.restricted, T));
  // the old object is a full subgroupoid with its arrows unchanged
  for (const auto& a : z2->arrows) CHECK(find_id(U.groupoid->arrows, a) >= 0);
  // the new object is isomorphic to the old one
  auto orbits = object_orbits(*U.groupoid);
  CHECK(orbits.size() == 1);

  Bibundle none;
  none.left = share(unit_groupoid({}));
  none.right = z2;
  StrictUnit V = adjoin_strict_unit(z2, none);
  CHECK(*V.groupoid == *z2);
  CHECK(V.unit.empty());
}

TEST_CASE("property: random pullbacks are Morita equivalent to their target") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    int k = 1 + static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 3);
    auto G = share(transitive_groupoid(k, m));
    int s = 1 + static_cast<int>(rng() % 3);
    Ids S;
    std::vector<int> f;
    for (int i = 0; i < s; ++i) {
      S.push_back("q" + std::to_string(i));
      f.push_back(static_cast<int>(rng() % k));
    }
    Pullback P = pullback_groupoid(*G, S, f);
    CHECK(verify_groupoid(P.groupoid).ok());
    CHECK(P.essentially_surjective);
    CHECK(P.groupoid.num_arrows() == s * s * m);
    auto H = share(P.groupoid);
    Bibundle E = pullback_bibundle(H, P.triple, G, f);
    CHECK(verify_bibundle(E).ok());
    CHECK(is_biprincipal(E).ok);
    Composite C = compose_bibundles(E, identity_bibundle(G));
    CHECK(isomorphic(C.bib, E));
  }
}
