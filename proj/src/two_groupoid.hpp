// Licensed under the Apache License, Version 2.0.
// Three-layer 2-groupoid data X2 => X1 -> X0 with 3-multiplications, its nerve and truncation.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "common.hpp"
#include "groupoid.hpp"
#include "report.hpp"
#include "simplicial.hpp"

namespace fhg {

// Arrows run from the larger vertex to the smaller one; d_i omits vertex i.
// m[i] is keyed by the three faces other than face i, in increasing face order,
// so m[0] takes (eta1, eta2, eta3) and returns eta0.
struct TwoGroupoidData {
  Ids x0, x1, x2;
  std::array<std::vector<int>, 2> d1;
  std::vector<int> s0;
  std::array<std::vector<int>, 3> d2;
  std::array<std::vector<int>, 2> s1;
  std::array<std::map<std::array<int, 3>, int>, 4> m;

  bool operator==(const TwoGroupoidData&) const = default;
};

using Tetra = std::array<int, 4>;

void canonicalize(TwoGroupoidData& D);
// Levels 0..2 as a truncated simplicial set.
SSet as_sset(const TwoGroupoidData& D);
// Level tables from a simplicial set with N >= 2; m tables left empty.
TwoGroupoidData layers_of(const SSet& X);

std::array<int, 3> drop(const Tetra& t, int i);
Tetra insert(const std::array<int, 3>& k, int i, int v);

// Tuples of faces k != j of an m-simplex (m = 2 or 3) glued along common faces.
std::vector<std::vector<int>> horn_space(const TwoGroupoidData& D, int m, int j);
std::vector<std::vector<int>> horn_tuples(const SSet& X, int m, int j);

// Tetrahedra (eta0..eta3) with eta0 = m0(eta1, eta2, eta3).
std::set<Tetra> tetrahedra(const TwoGroupoidData& D);

Report verify_two_groupoid(const TwoGroupoidData& D);

// Level 3 is the tetrahedra set, higher levels are boundary-compatible families.
SSet nerve2(const TwoGroupoidData& D, int N);
// m tables from unique fillers at level 3.
TwoGroupoidData truncate_to_data(const SSet& X);
TwoGroupoidData point_two_groupoid();
TwoGroupoidData groupoid_two_data(const FiniteGroupoid& G);

// Arrows are the bigons eta with d2(eta) degenerate; objects are X1.
// target d0, source d1, identity s0 on X1.
struct BigonGroupoid {
  FiniteGroupoid g;
  std::vector<int> bigon;  // arrow -> X2 element
};
BigonGroupoid bigon_groupoid(const TwoGroupoidData& D);
// Bigons with d0 degenerate: target d2, source d1, identity s1 on X1.
BigonGroupoid tilde_bigon_groupoid(const TwoGroupoidData& D);

struct TildeIso {
  BigonGroupoid bigons;
  BigonGroupoid tilde;
  std::vector<int> phi;      // bigon arrow -> tilde arrow
  std::vector<int> phi_inv;  // tilde arrow -> bigon arrow
  Report report;             // bijection and functoriality checks
};
TildeIso tilde_bigon_iso(const TwoGroupoidData& D);

struct CrossedModule {
  FiniteGroup g;
  FiniteGroup h;
  std::vector<int> boundary;             // H -> G
  std::vector<std::vector<int>> action;  // action[g][h] = g acting on h
};
// Empty when the axioms hold; otherwise names the first failed axiom with a witness.
std::string crossed_module_violation(const CrossedModule& C);
CrossedModule trivial_crossed_module(const FiniteGroup& G, const FiniteGroup& H);
// X0 a point, X1 = G, X2 = (g01, g12, h) with d1 = boundary(h) g01 g12.
TwoGroupoidData crossed_module_fixture(const CrossedModule& C);

struct CechFixture {
  std::shared_ptr<const SSet> cech;
  std::shared_ptr<const SSet> base;  // constant simplicial set on M
  SimplicialMap projection;
};
// Cells (x; a0..an) with x in every chart a_i; ids "x:a0,a1,...".
CechFixture cech_fixture(const Ids& M, const std::vector<std::pair<std::string, Ids>>& cover, int N);

// Levelwise maps commuting with faces, degeneracies and the m tables.
struct TwoGroupoidMap {
  std::vector<int> f0, f1, f2;
};
Report verify_two_groupoid_map(const TwoGroupoidData& D, const TwoGroupoidData& E, const TwoGroupoidMap& f);
std::optional<TwoGroupoidMap> two_groupoid_iso_search(const TwoGroupoidData& D, const TwoGroupoidData& E);

}  // namespace fhg
