#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace fhg;
using namespace fhg::testing;

namespace {

// Strictly increasing sequences in [m] whose image avoids containing `need`.
int count_nondegenerate_filtered(int n, int m, unsigned forbidden_superset) {
  int count = 0;
  for (unsigned mask = 0; mask < (1u << (m + 1)); ++mask) {
    if (__builtin_popcount(mask) != n + 1) continue;
    if ((mask & forbidden_superset) == forbidden_superset) continue;
    ++count;
  }
  return count;
}

SSet nerve_of_cyclic(int m, int N) { return groupoid_nerve(group_groupoid(cyclic_group(m)), N); }

}  // namespace

TEST_CASE("standard simplex level sizes match monotone map counts") {
  CHECK(level_sizes(standard_simplex(0, 3)) == std::vector<int>{1, 1, 1, 1});
  CHECK(level_sizes(standard_simplex(2, 2)) == std::vector<int>{3, 6, 10});
  SSet d1 = standard_simplex(1, 1);
  CHECK(d1.cells[1] == Ids{"00", "01", "11"});
  for (int m = 0; m <= 3; ++m) {
    SSet X = standard_simplex(m, 4);
    for (int n = 0; n <= 4; ++n) CHECK(X.size(n) == count_monotone(n, m));
    CHECK(verify_simplicial(X).ok());
  }
}

TEST_CASE("horn and boundary complexes have the filtered nondegenerate cells") {
  SSet h = horn_complex(2, 1, 2);
  CHECK(nondegenerate_cells(h, 0).size() == 3);
  auto e = nondegenerate_cells(h, 1);
  REQUIRE(e.size() == 2);
  CHECK(h.cells[1][e[0]] == "01");
  CHECK(h.cells[1][e[1]] == "12");
  CHECK(nondegenerate_cells(h, 2).empty());

  SSet h10 = horn_complex(1, 0, 1);
  CHECK(nondegenerate_cells(h10, 0).size() == 1);
  CHECK(nondegenerate_cells(h10, 1).empty());

  SSet h20 = horn_complex(2, 0, 2);
  auto e20 = nondegenerate_cells(h20, 1);
  REQUIRE(e20.size() == 2);
  CHECK(h20.cells[1][e20[0]] == "01");
  CHECK(h20.cells[1][e20[1]] == "02");

  SSet b1 = boundary_complex(1, 1);
  CHECK(b1.size(0) == 2);
  CHECK(nondegenerate_cells(b1, 1).empty());
  SSet b2 = boundary_complex(2, 2);
  CHECK(nondegenerate_cells(b2, 0).size() == 3);
  CHECK(nondegenerate_cells(b2, 1).size() == 3);
  CHECK(nondegenerate_cells(b2, 2).empty());
  for (const auto& id : h.cells[1]) CHECK(b2.index(1, id) >= 0);

  for (int m = 1; m <= 4; ++m) {
    for (int j = 0; j <= m; ++j) {
      SSet H = horn_complex(m, j, m);
      CHECK(verify_simplicial(H).ok());
      unsigned need = ((1u << (m + 1)) - 1) & ~(1u << j);
      for (int n = 0; n <= m; ++n)
        CHECK(static_cast<int>(nondegenerate_cells(H, n).size()) == count_nondegenerate_filtered(n, m, need));
    }
  }
}

TEST_CASE("corrupted face table is reported with a witness") {
  SSet X = standard_simplex(2, 2);
  CHECK(verify_simplicial(X).ok());
  int c = X.index(2, "012");
  X.face[2][0][c] = X.index(1, "01");
  Report r = verify_simplicial(X);
  REQUIRE_FALSE(r.ok());
  CHECK(r.first_failure()->witness.find("012") != std::string::npos);
}

TEST_CASE("group nerves") {
  for (int m : {1, 2, 3}) {
    SSet X = nerve_of_cyclic(m, 4);
    CHECK(verify_simplicial(X).ok());
    int p = 1;
    for (int n = 0; n <= 4; ++n, p *= m) CHECK(X.size(n) == p);
    for (int mm = 2; mm <= 4; ++mm)
      for (int j = 0; j <= mm; ++j) CHECK(check_kan(X, mm, j).status == KanStatus::HoldsUniquely);
  }
  SSet z2 = nerve_of_cyclic(2, 4);
  auto nd = nondegenerate_cells(z2, 1);
  REQUIRE(nd.size() == 1);
  CHECK(z2.cells[1][nd[0]] == "1");
  CHECK(verify_n_groupoid(nerve_of_cyclic(3, 4), 1, 4).ok());
}

TEST_CASE("hom enumeration") {
  SSet z2 = nerve_of_cyclic(2, 2);
  CHECK(enumerate_hom(horn_complex(2, 1, 2), z2).size() == 4);
  CHECK(enumerate_hom(standard_simplex(2, 2), z2).size() == 4);
  SSet pg = groupoid_nerve(pair_groupoid(3), 3);
  CHECK(enumerate_hom(standard_simplex(0, 3), pg).size() == 3);
  for (int m = 0; m <= 3; ++m) CHECK(static_cast<int>(enumerate_hom(standard_simplex(m, 3), pg).size()) == pg.size(m));
  auto maps = enumerate_hom(standard_simplex(1, 2), z2);
  for (std::size_t i = 1; i < maps.size(); ++i)
    CHECK(nondegenerate_key(standard_simplex(1, 2), maps[i - 1]) < nondegenerate_key(standard_simplex(1, 2), maps[i]));
}

TEST_CASE("Kan checks") {
  SSet c = constant_sset({"a", "b"}, 3);
  for (int m = 1; m <= 3; ++m)
    for (int j = 0; j <= m; ++j) CHECK(check_kan(c, m, j).status == KanStatus::HoldsUniquely);
  CHECK(verify_n_groupoid(c, 0, 3).ok());

  // the 1-simplex is the nerve of a category: inner horns fill, outer ones need inverses
  CHECK(check_kan(standard_simplex(1, 2), 2, 1).status == KanStatus::HoldsUniquely);
  KanResult k = check_kan(standard_simplex(1, 2), 2, 0);
  CHECK(k.status == KanStatus::Fails);
  CHECK_FALSE(k.witness.empty());

  SSet empty = make_sset(2, {{}, {}, {}});
  CHECK(check_kan(empty, 2, 1).status == KanStatus::HoldsUniquely);
  CHECK_THROWS_AS(verify_n_groupoid(c, 0, 4), Error);
}

TEST_CASE("skeleton and coskeleton") {
  SSet pt = constant_sset({"*"}, 3);
  CHECK(level_sizes(coskeleton(pt, 0, 3)) == std::vector<int>{1, 1, 1, 1});
  SSet pair2 = groupoid_nerve(pair_groupoid(2), 3);
  SSet cs = coskeleton(skeleton(pair2, 1), 1, 3);
  CHECK(level_sizes(cs) == std::vector<int>{2, 4, 8, 16});
  CHECK(verify_simplicial(cs).ok());
  CHECK(verify_simplicial(skeleton(pair2, 1)).ok());
}

TEST_CASE("property: nerves of random transitive groupoids") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    int k = 1 + static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 3);
    FiniteGroupoid G = transitive_groupoid(k, m);
    REQUIRE(verify_groupoid(G).ok());
    SSet X = groupoid_nerve(G, 3);
    CHECK(verify_simplicial(X).ok());
    CHECK(X.size(1) == k * k * m);
    for (int n = 0; n <= 2; ++n) CHECK(static_cast<int>(enumerate_hom(standard_simplex(n, 3), X).size()) == X.size(n));
    CHECK(verify_n_groupoid(X, 1, 3).ok());
    // unique filling above level 2 makes the nerve 2-coskeletal
    SSet Y = coskeleton(skeleton(X, 2), 2, 3);
    CHECK(level_sizes(Y) == level_sizes(X));
    CHECK(verify_simplicial(Y).ok());
    // degenerate images are forced: every hom from a horn extends uniquely
    int mm = 2, j = static_cast<int>(rng() % 3);
    CHECK(static_cast<int>(enumerate_hom(horn_complex(mm, j, 3), X).size()) == X.size(2));
  }
}
