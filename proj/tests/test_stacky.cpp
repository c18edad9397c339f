#include "doctest.h"
#include "fixtures.hpp"
#include "stacky.hpp"

using namespace fhg;
using namespace fhg::testing;

namespace {

TwoGroupoidData xmod_z2z2() { return crossed_module_fixture(trivial_crossed_module(cyclic_group(2), cyclic_group(2))); }

CrossedModule inversion_module() {
  CrossedModule C = trivial_crossed_module(cyclic_group(2), cyclic_group(3));
  C.action[1] = {0, 2, 1};
  return C;
}

std::string failure(const Report& r) {
  const Check* c = r.first_failure();
  return c ? c->anchor + ": " + c->witness : std::string();
}

std::vector<FiniteGroupoid> ordinary_groupoids() {
  return {group_groupoid(cyclic_group(3)), pair_groupoid(2), transitive_groupoid(2, 2), group_groupoid(symmetric_group(3))};
}

bool cube_holds(const StackyGroupoidData& D) {
  for (const Check& c : verify_stacky(D).checks())
    if (c.anchor == "stacky/cube") return c.pass;
  return false;
}

}  // namespace

TEST_CASE("crossed module as stacky data") {
  StackyGroupoidData D = from_two_groupoid(xmod_z2z2());
  CHECK(D.g->num_objects() == 2);
  CHECK(D.g->num_arrows() == 4);
  CHECK(D.mult.size() == 8);
  Report r = verify_stacky(D);
  CHECK_MESSAGE(r.ok(), failure(r));
  CHECK(inverse_bibundle(D).size() == 4);
  CHECK(is_biprincipal(inverse_bibundle(D)).ok);
  CHECK(strict_inverse_check(D).ok);
}

TEST_CASE("round trip through stacky data") {
  for (const TwoGroupoidData& X :
       {xmod_z2z2(), crossed_module_fixture(inversion_module()), point_two_groupoid(),
        crossed_module_fixture(trivial_crossed_module(cyclic_group(3), cyclic_group(2)))}) {
    for (RepOrder order : {RepOrder::Least, RepOrder::Greatest}) {
      StackyGroupoidData D = from_two_groupoid(X, order);
      Report r = verify_stacky(D);
      REQUIRE_MESSAGE(r.ok(), failure(r));
      TwoGroupoidData Y = to_two_groupoid(D);
      CHECK(verify_two_groupoid(Y).ok());
      CHECK(two_groupoid_iso_search(X, Y).has_value());
    }
  }
}

TEST_CASE("ordinary groupoids packaged as stacky data") {
  for (const FiniteGroupoid& K : ordinary_groupoids()) {
    StackyGroupoidData D = package_groupoid(K);
    Report r = verify_stacky(D);
    REQUIRE_MESSAGE(r.ok(), failure(r));
    TwoGroupoidData X = to_two_groupoid(D);
    CHECK(two_groupoid_iso_search(X, groupoid_two_data(K)).has_value());
    StackyGroupoidData back = from_two_groupoid(X);
    CHECK(groupoid_iso_search(*back.g, *D.g).has_value());
    Bibundle I = inverse_bibundle(D);
    CHECK(I.size() == K.num_arrows());
    CHECK(is_biprincipal(I).ok);
    CHECK(strict_inverse_check(D).ok);
  }
}

TEST_CASE("point stacky data") {
  StackyGroupoidData D = from_two_groupoid(point_two_groupoid());
  CHECK(D.g->num_arrows() == 1);
  CHECK(D.mult.size() == 1);
  CHECK(verify_stacky(D).ok());
  CHECK(to_two_groupoid(D) == point_two_groupoid());
}

TEST_CASE("associator search recovers a valid associator") {
  for (const StackyGroupoidData& D : {from_two_groupoid(xmod_z2z2()), package_groupoid(pair_groupoid(2))}) {
    auto found = associator_search(D, 100);
    REQUIRE(!found.empty());
    CHECK(std::find(found.begin(), found.end(), D.assoc) != found.end());
    for (const auto& a : found) {
      StackyGroupoidData E = D;
      E.assoc = a;
      CHECK(cube_holds(E));
    }
  }
}

// Swapping two classes breaks the data unless the result is another associator found by search;
// for Z/2 acting trivially on Z/2 one such swap gives a non-isomorphic 2-groupoid.
TEST_CASE("swapped associator classes") {
  StackyGroupoidData D = from_two_groupoid(xmod_z2z2());
  auto found = associator_search(D, 1000);
  CHECK(found.size() == 8);
  int survivors = 0;
  for (std::size_t i = 0; i < D.assoc.size(); ++i)
    for (std::size_t j = i + 1; j < D.assoc.size(); ++j) {
      StackyGroupoidData E = D;
      std::swap(E.assoc[i], E.assoc[j]);
      Report r = verify_stacky(E);
      if (!r.ok()) {
        CHECK(!r.first_failure()->witness.empty());
        continue;
      }
      ++survivors;
      CHECK(std::find(found.begin(), found.end(), E.assoc) != found.end());
      CHECK(!two_groupoid_iso_search(xmod_z2z2(), to_two_groupoid(E)).has_value());
    }
  CHECK(survivors == 1);
}

TEST_CASE("broken unit") {
  StackyGroupoidData D = from_two_groupoid(xmod_z2z2());
  StackyGroupoidData E = D;
  E.unit[0] = (E.unit[0] + 1) % E.g->num_objects();
  Report r = verify_stacky(E);
  CHECK(!r.ok());
  CHECK(!strict_inverse_check(E).ok);
}

TEST_CASE("supplied inverse bibundle") {
  StackyGroupoidData D = from_two_groupoid(xmod_z2z2());
  Bibundle I = inverse_bibundle(D);
  for (auto& id : I.carrier) id = "inv:" + id;
  D.inverse = I;
  Report r = verify_stacky(D);
  CHECK_MESSAGE(r.ok(), failure(r));
  I.right_act.clear();
  for (int i = 0; i < I.size(); ++i)
    for (int g = 0; g < D.g->num_arrows(); ++g)
      if (D.g->target[g] == I.jr[i] && D.g->source[g] == I.jr[i]) I.right_act[pair_key(i, g)] = i;
  D.inverse = I;
  r = verify_stacky(D);
  CHECK(!r.ok());
  CHECK(r.first_failure()->anchor == "stacky/inverse-iso");
}

TEST_CASE("representative order does not change the associator") {
  for (const TwoGroupoidData& X : {xmod_z2z2(), crossed_module_fixture(inversion_module())}) {
    StackyGroupoidData a = from_two_groupoid(X, RepOrder::Least);
    StackyGroupoidData b = from_two_groupoid(X, RepOrder::Greatest);
    AssociatorDomains A = associator_domains(a), B = associator_domains(b);
    REQUIRE(A.left.members.size() == B.left.members.size());
    auto class_map = [](const Composite& from, const Composite& to) {
      std::vector<int> out;
      for (const auto& m : from.members) out.push_back(lookup(to.pair_class, m.front().first, m.front().second));
      return out;
    };
    auto left = class_map(A.left, B.left), right = class_map(A.right, B.right);
    for (std::size_t c = 0; c < a.assoc.size(); ++c) CHECK(right[a.assoc[c]] == b.assoc[left[c]]);
    CHECK(two_groupoid_iso_search(to_two_groupoid(a), to_two_groupoid(b)).has_value());
  }
}
