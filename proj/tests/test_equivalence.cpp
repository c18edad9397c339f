#include <random>

#include "doctest.h"
#include "equivalence.hpp"
#include "fixtures.hpp"

using namespace fhg;
using namespace fhg::testing;

namespace {

std::shared_ptr<const TwoGroupoidData> xmod_z2z2() {
  return std::make_shared<const TwoGroupoidData>(
      crossed_module_fixture(trivial_crossed_module(cyclic_group(2), cyclic_group(2))));
}

std::string failure(const Report& r) {
  const Check* c = r.first_failure();
  return c ? c->anchor + ": " + c->witness : std::string();
}

std::string first_anchor(const Report& r) { return r.first_failure() ? r.first_failure()->anchor : ""; }

CechFixture two_chart_cech(int N) { return cech_fixture({"a", "b", "c"}, {{"A", {"a", "b"}}, {"B", {"b", "c"}}}, N); }

// Triples of Z1 cells glued like the faces of a triangle, lifted to X2 along f1.
int brute_pullback_level2(const TwoGroupoidData& low, const std::vector<int>& f1, const TwoGroupoidData& X) {
  const int z1 = static_cast<int>(low.x1.size());
  int count = 0;
  for (int y = 0; y < static_cast<int>(X.x2.size()); ++y)
    for (int h0 = 0; h0 < z1; ++h0)
      for (int h1 = 0; h1 < z1; ++h1)
        for (int h2 = 0; h2 < z1; ++h2) {
          bool faces = f1[h0] == X.d2[0][y] && f1[h1] == X.d2[1][y] && f1[h2] == X.d2[2][y];
          bool glued = low.d1[0][h1] == low.d1[0][h0] && low.d1[0][h2] == low.d1[1][h0] && low.d1[1][h2] == low.d1[1][h1];
          count += faces && glued;
        }
  return count;
}

TwoGroupoidData lower_levels(const TwoGroupoidData& Z) {
  TwoGroupoidData low;
  low.x0 = Z.x0;
  low.x1 = Z.x1;
  low.d1 = Z.d1;
  low.s0 = Z.s0;
  return low;
}

}  // namespace

TEST_CASE("pull-back spaces") {
  auto nerve = std::make_shared<const SSet>(groupoid_nerve(group_groupoid(cyclic_group(2)), 3));
  SimplicialMap id = identity_map(nerve);
  CHECK(pb_space(id, 1).elements.size() == 2);
  CHECK(pb_space(id, 0).elements.size() == 1);

  CechFixture F = two_chart_cech(2);
  CHECK(pb_space(F.projection, 0).elements.size() == 3);
  // pairs of cover points over one point of M
  int pairs = 0;
  for (int a = 0; a < F.cech->size(0); ++a)
    for (int b = 0; b < F.cech->size(0); ++b) pairs += F.projection.f[0][a] == F.projection.f[0][b];
  CHECK(pb_space(F.projection, 1).elements.size() == pairs);
  CHECK(pairs == 6);
  CHECK_THROWS_AS(pb_space(F.projection, 3), Error);
}

TEST_CASE("Cech projection is an equivalence without a strict inverse") {
  CechFixture F = two_chart_cech(2);
  Report r = is_equivalence(F.projection, 1);
  CHECK_MESSAGE(r.ok(), failure(r));
  InverseSearch s = strict_inverse_search(F.projection);
  CHECK(s.sections == 2);
  CHECK(!s.inverse);
  Report one = is_one_equivalence(F.projection, 1);
  CHECK(first_anchor(one) == "equivalence/objects");

  CechFixture single = cech_fixture({"a"}, {{"A", {"a"}}}, 2);
  CHECK(is_equivalence(single.projection, 1).ok());
  CHECK(strict_inverse_search(single.projection).inverse.has_value());
}

TEST_CASE("chart missing part of the base fails on objects") {
  CechFixture part = cech_fixture({"a", "b"}, {{"A", {"a", "b"}}}, 2);
  auto M = std::make_shared<const SSet>(constant_sset({"a", "b", "c"}, 2));
  SimplicialMap f{part.cech, M, part.projection.f};
  Report r = is_equivalence(f, 1);
  REQUIRE(!r.ok());
  CHECK(r.first_failure()->law == "level 0 onto its pull-back space");
  CHECK(r.first_failure()->witness.find("|c' is not hit") != std::string::npos);
}

TEST_CASE("identity maps are equivalences") {
  auto X = xmod_z2z2();
  StrictTwoGroupoidMap id = identity_two_map(X);
  for (int m = 0; m <= 2; ++m) CHECK(is_equivalence(id, m).ok());
  CHECK(is_one_equivalence(id).ok());
}

TEST_CASE("pull-back along identities") {
  auto X = xmod_z2z2();
  StrictTwoGroupoidMap id = identity_two_map(X);
  Pullback2 P = pullback_two_groupoid(X, lower_levels(*X), id.map.f0, id.map.f1);
  CHECK(verify_two_groupoid(*P.z).ok());
  CHECK(two_groupoid_iso_search(*P.z, *X).has_value());
}

TEST_CASE("arrow refinement of the crossed module") {
  auto X = xmod_z2z2();
  Pullback2 P = refine_arrows(X, {2, 2});
  CHECK(P.z->x0.size() == 1);
  CHECK(P.z->x1.size() == 4);
  CHECK(static_cast<int>(P.z->x2.size()) == brute_pullback_level2(lower_levels(*P.z), P.projection.map.f1, *X));
  CHECK(P.z->x2.size() == 64);
  Report v = verify_two_groupoid(*P.z);
  CHECK_MESSAGE(v.ok(), failure(v));
  Report r = is_one_equivalence(P.projection);
  CHECK_MESSAGE(r.ok(), failure(r));
  CHECK(pb_space(P.projection, 2).elements.size() == 64);
}

TEST_CASE("object refinement is an equivalence but not a 1-equivalence") {
  auto X = xmod_z2z2();
  Pullback2 P = refine_objects(X, {2});
  CHECK(P.z->x0.size() == 2);
  CHECK(P.z->x1.size() == 8);
  CHECK(static_cast<int>(P.z->x2.size()) == brute_pullback_level2(lower_levels(*P.z), P.projection.map.f1, *X));
  Report v = verify_two_groupoid(*P.z);
  CHECK_MESSAGE(v.ok(), failure(v));
  CHECK(is_equivalence(P.projection).ok());
  CHECK(first_anchor(is_one_equivalence(P.projection)) == "equivalence/objects");
}

TEST_CASE("pull-back preconditions") {
  auto X = xmod_z2z2();
  TwoGroupoidData low = lower_levels(*X);
  low.x1 = {low.x1[0]};
  low.d1 = {std::vector<int>{0}, std::vector<int>{0}};
  low.s0 = {0};
  CHECK_THROWS_WITH_AS(pullback_two_groupoid(X, low, {0}, {0}), doctest::Contains("no arrow"), Error);
}

TEST_CASE("fiber products of equivalences") {
  auto X = xmod_z2z2();
  StrictTwoGroupoidMap id = identity_two_map(X);
  FiberProduct diag = fiber_product_two_groupoid(id, id);
  CHECK(two_groupoid_iso_search(*diag.z, *X).has_value());

  Pullback2 A = refine_arrows(X, {2, 1});
  Pullback2 B = refine_arrows(X, {1, 2});
  Pullback2 C = refine_objects(X, {2});
  // each projection is a 1-equivalence when the other input is one
  for (const auto& [f, g, f_one, g_one] : {std::tuple{A, B, true, true}, std::tuple{A, C, true, false}}) {
    FiberProduct P = fiber_product_two_groupoid(f.projection, g.projection);
    Report v = verify_two_groupoid(*P.z);
    REQUIRE_MESSAGE(v.ok(), failure(v));
    CHECK(is_equivalence(P.left).ok());
    CHECK(is_equivalence(P.right).ok());
    CHECK(is_one_equivalence(P.left).ok() == g_one);
    CHECK(is_one_equivalence(P.right).ok() == f_one);
    // both routes to X agree, m tables included
    StrictTwoGroupoidMap l = compose(f.projection, P.left), r = compose(g.projection, P.right);
    CHECK(l.map.f2 == r.map.f2);
    CHECK(verify_strict_map(l).ok());
    CHECK(P.z->x2.size() == fiber_pairs(f.projection.map.f2, g.projection.map.f2, static_cast<int>(X->x2.size())).size());
  }
}

TEST_CASE("composites of equivalences") {
  auto X = xmod_z2z2();
  Pullback2 A = refine_arrows(X, {2, 1});
  Pullback2 B = refine_objects(A.z, {2});
  Pullback2 C = refine_arrows(B.z, std::vector<int>(B.z->x1.size(), 1));
  StrictTwoGroupoidMap ab = compose(A.projection, B.projection);
  StrictTwoGroupoidMap abc = compose(ab, C.projection);
  for (const auto* f : {&ab, &abc}) {
    Report r = is_equivalence(*f);
    CHECK_MESSAGE(r.ok(), failure(r));
  }
  CechFixture F = two_chart_cech(2);
  CechFixture G = cech_fixture({"a", "b", "c"}, {{"U", {"a", "b", "c"}}}, 2);
  CHECK(is_equivalence(compose(identity_map(F.base), F.projection), 1).ok());
  CHECK(is_equivalence(G.projection, 2).ok());
}

TEST_CASE("property: induced map of fiber products is onto") {
  std::mt19937 rng(11);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int round = 0; round < 200; ++round) {
    // U -> Ubar, V -> Vbar x_Ubar U onto, W -> Wbar onto, all over U and Ubar
    int nub = 1 + pick(3), nu = nub + pick(3);
    std::vector<int> pu(nu);
    for (int u = 0; u < nu; ++u) pu[u] = u < nub ? u : pick(nub);
    std::vector<std::vector<int>> over_u(nub);
    for (int u = 0; u < nu; ++u) over_u[pu[u]].push_back(u);
    int nvb = 1 + pick(4), nwb = 1 + pick(4);
    std::vector<int> avb(nvb), bwb(nwb);
    for (auto& x : avb) x = pick(nub);
    for (auto& x : bwb) x = pick(nub);
    std::vector<int> av, pv, bw, pw;
    for (int vb = 0; vb < nvb; ++vb)
      for (int u : over_u[avb[vb]]) {
        for (int k = 0; k <= pick(2); ++k) {
          av.push_back(u);
          pv.push_back(vb);
        }
      }
    for (int wb = 0; wb < nwb; ++wb)
      for (int k = 0; k <= pick(2); ++k) {
        const auto& us = over_u[bwb[wb]];
        bw.push_back(us[pick(static_cast<int>(us.size()))]);
        pw.push_back(wb);
      }
    std::set<std::array<int, 2>> image;
    for (auto [v, w] : fiber_pairs(av, bw, nu)) image.insert({pv[v], pw[w]});
    auto bars = fiber_pairs(avb, bwb, nub);
    CHECK(image.size() == bars.size());
  }
}

TEST_CASE("Morita witnesses") {
  auto X = xmod_z2z2();
  StrictTwoGroupoidMap id = identity_two_map(X);
  CHECK(verify_morita_witness(id, id, true).ok());

  MoritaSearch same = bounded_one_morita_search(*X, *X, 2);
  REQUIRE(same.witness);
  CHECK(same.candidates == 1);
  CHECK(verify_morita_witness(same.witness->to_x, same.witness->to_y, true).ok());

  Pullback2 R = refine_arrows(X, {1, 2});
  MoritaSearch found = bounded_one_morita_search(*X, *R.z, 3);
  REQUIRE(found.witness);
  Report w = verify_morita_witness(found.witness->to_x, found.witness->to_y, true);
  CHECK_MESSAGE(w.ok(), failure(w));
  CHECK(!bounded_one_morita_search(*X, *R.z, 2).witness);

  MoritaSearch none = bounded_one_morita_search(groupoid_two_data(group_groupoid(cyclic_group(2))),
                                                groupoid_two_data(group_groupoid(cyclic_group(3))), 10);
  CHECK(!none.witness);
  CHECK(none.obstruction == "fundamental groupoids are not isomorphic");
  CHECK(none.candidates == 0);
}

TEST_CASE("corrupted leg of a Morita witness") {
  auto X = xmod_z2z2();
  Pullback2 R = refine_arrows(X, {1, 2});
  StrictTwoGroupoidMap g = R.projection;
  const TwoGroupoidData& Z = *R.z;
  std::set<int> degenerate(Z.s1[0].begin(), Z.s1[0].end());
  degenerate.insert(Z.s1[1].begin(), Z.s1[1].end());
  int y = 0;
  while (degenerate.count(y)) ++y;
  // another X2 cell with the same faces
  int old = g.map.f2[y], other = -1;
  for (int z = 0; z < static_cast<int>(X->x2.size()); ++z)
    if (z != old && X->d2[0][z] == X->d2[0][old] && X->d2[1][z] == X->d2[1][old] && X->d2[2][z] == X->d2[2][old]) other = z;
  REQUIRE(other >= 0);
  g.map.f2[y] = other;
  Report r = verify_morita_witness(R.projection, g, true);
  REQUIRE(!r.ok());
  CHECK(r.first_failure()->anchor == "map/multiplication");
  CHECK(r.first_failure()->law.rfind("right leg", 0) == 0);
}

TEST_CASE("homotopy invariants") {
  HomotopyInvariants h = homotopy_invariants(*xmod_z2z2());
  CHECK(verify_groupoid(h.fundamental).ok());
  CHECK(h.fundamental.num_arrows() == 2);
  CHECK(h.pi2_orders == std::vector<int>{2});
  HomotopyInvariants k = homotopy_invariants(*refine_arrows(xmod_z2z2(), {2, 3}).z);
  CHECK(groupoid_iso_search(h.fundamental, k.fundamental).has_value());
  CHECK(k.pi2_orders == std::vector<int>{2});
}
