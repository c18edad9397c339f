// Licensed under the Apache License, Version 2.0.
// Equivalences of truncated simplicial sets and 2-groupoid data, pull-backs, fiber products and
// 1-Morita witnesses.
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simplicial.hpp"
#include "two_groupoid.hpp"

namespace fhg {

struct StrictTwoGroupoidMap {
  std::shared_ptr<const TwoGroupoidData> source;
  std::shared_ptr<const TwoGroupoidData> target;
  TwoGroupoidMap map;
};

StrictTwoGroupoidMap identity_two_map(std::shared_ptr<const TwoGroupoidData> X);
StrictTwoGroupoidMap compose(const StrictTwoGroupoidMap& g, const StrictTwoGroupoidMap& f);  // g after f
SimplicialMap as_simplicial_map(const StrictTwoGroupoidMap& f);
Report verify_strict_map(const StrictTwoGroupoidMap& f);

// Pairs (boundary map into Z, cell of X) whose boundaries agree in X, for f: Z -> X at level n.
struct PBSpace {
  int n = 0;
  SSet boundary;                               // boundary complex of the n-simplex
  std::vector<std::vector<int>> boundary_keys;  // Z-images of its nondegenerate cells
  std::vector<std::pair<int, int>> elements;    // (boundary index, cell of X), canonical order
  Ids ids;
  // Z_n -> elements; -1 never happens for a simplicial f.
  std::vector<int> image;
};
PBSpace pb_space(const SimplicialMap& f, int n);
PBSpace pb_space(const StrictTwoGroupoidMap& f, int n);

// Z_n -> PB surjective for n < m and bijective for n = m, checked bottom-up.
Report is_equivalence(const SimplicialMap& f, int m);
Report is_equivalence(const StrictTwoGroupoidMap& f, int m = 2);
// An equivalence whose object map is a bijection.
Report is_one_equivalence(const SimplicialMap& f, int m);
Report is_one_equivalence(const StrictTwoGroupoidMap& f);

// Simplicial maps s: X -> Z with f s = id and s f = id. Sections alone are counted in `sections`.
struct InverseSearch {
  std::size_t sections = 0;
  std::optional<LevelMap> inverse;
};
InverseSearch strict_inverse_search(const SimplicialMap& f);

// Z0, Z1 with faces d1 and degeneracy s0 taken from `low` (its X2 layer is ignored), mapped to X
// by f0 and f1. Z2 is the pull-back space at level 2.
struct Pullback2 {
  std::shared_ptr<const TwoGroupoidData> z;
  StrictTwoGroupoidMap projection;
};
Pullback2 pullback_two_groupoid(std::shared_ptr<const TwoGroupoidData> X, const TwoGroupoidData& low,
                                const std::vector<int>& f0, const std::vector<int>& f1);
// Z1 = X1 x {copies}: cell x gets copies[x] >= 1 copies "x#k", s0 lands on copy 0.
Pullback2 refine_arrows(std::shared_ptr<const TwoGroupoidData> X, const std::vector<int>& copies);
// Z0 = X0 x {copies}; Z1 holds every (source copy, arrow, target copy).
Pullback2 refine_objects(std::shared_ptr<const TwoGroupoidData> X, const std::vector<int>& copies);

struct FiberProduct {
  std::shared_ptr<const TwoGroupoidData> z;
  StrictTwoGroupoidMap left, right;  // projections to the two sources
};
// Levelwise fiber product of two equivalences with a common target.
FiberProduct fiber_product_two_groupoid(const StrictTwoGroupoidMap& f, const StrictTwoGroupoidMap& g);

// Pairs (a, b) with f(a) = g(b), ordered lexicographically.
std::vector<std::array<int, 2>> fiber_pairs(const std::vector<int>& f, const std::vector<int>& g, int target_size);

Report verify_morita_witness(const StrictTwoGroupoidMap& f, const StrictTwoGroupoidMap& g, bool one_morita);

// Fundamental groupoid on X0 and the orders of the automorphism groups of degenerate edges.
struct HomotopyInvariants {
  FiniteGroupoid fundamental;
  std::vector<int> pi2_orders;  // per object of X0
};
HomotopyInvariants homotopy_invariants(const TwoGroupoidData& X);

// Strict maps D -> E, bijective on objects when asked; stops at the first map `accept` takes.
std::optional<TwoGroupoidMap> strict_map_search(const TwoGroupoidData& D, const TwoGroupoidData& E, bool objects_bijective,
                                                const std::function<bool(const TwoGroupoidMap&)>& accept);

struct MoritaWitness {
  std::shared_ptr<const TwoGroupoidData> z;
  StrictTwoGroupoidMap to_x, to_y;
};
struct MoritaSearch {
  std::optional<MoritaWitness> witness;
  std::string obstruction;  // set when an invariant rules the pair out
  int candidates = 0;
};
// Tries refinements of X's arrows with Z0 = X0 and |Z1| <= bound. Incomplete by design.
MoritaSearch bounded_one_morita_search(const TwoGroupoidData& X, const TwoGroupoidData& Y, int bound);

}  // namespace fhg
