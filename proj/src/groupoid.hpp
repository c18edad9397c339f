// Licensed under the Apache License, Version 2.0.
// Finite groupoids, Hilsum-Skandalis bibundles, composition by orbit quotient, Morita checks.
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "report.hpp"
#include "simplicial.hpp"

namespace fhg {

// compose(a, b) = a after b, defined exactly when source(a) == target(b).
struct FiniteGroupoid {
  Ids objects;
  Ids arrows;
  std::vector<int> source, target, identity, inverse;
  PairTable compose;

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  int mul(int a, int b) const { return lookup(compose, a, b); }
  bool operator==(const FiniteGroupoid&) const = default;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

// Sorts objects and arrows by id and rewrites every table.
void canonicalize(FiniteGroupoid& G);
// Same, returning perm[old] = new for objects and arrows.
void canonicalize(FiniteGroupoid& G, std::vector<int>& object_perm, std::vector<int>& arrow_perm);
std::vector<std::vector<int>> arrows_from(const FiniteGroupoid& G);  // object -> arrows with that source
std::vector<std::vector<int>> arrows_into(const FiniteGroupoid& G);  // object -> arrows with that target
Report verify_groupoid(const FiniteGroupoid& G);

struct FiniteGroup {
  Ids elements;
  std::vector<std::vector<int>> mul;
  int unit = 0;
  std::vector<int> inv;
};

FiniteGroup cyclic_group(int m);
FiniteGroup symmetric_group(int k);  // permutations of 0..k-1, k <= 4
FiniteGroup trivial_group();
FiniteGroupoid group_groupoid(const FiniteGroup& G, const std::string& object = "*");
FiniteGroupoid pair_groupoid(int k);
// Only identity arrows; arrow ids equal object ids.
FiniteGroupoid unit_groupoid(Ids objects);

// Level n holds composable strings x0 <- x1 <- ... <- xn; ids are objects, arrows, then "a1,...,an".
// d_0 drops a1, d_n drops an, inner faces compose neighbours, s_i inserts an identity at x_i.
SSet groupoid_nerve(const FiniteGroupoid& G, int N);

// Objects map then arrows map, or nothing.
struct GroupoidIso {
  std::vector<int> objects;
  std::vector<int> arrows;
};
std::optional<GroupoidIso> groupoid_iso_search(const FiniteGroupoid& G, const FiniteGroupoid& H);
std::vector<std::vector<int>> object_orbits(const FiniteGroupoid& G);

// Left groupoid acts along jl, right groupoid along jr.
// left_act(h, e) defined iff source(h) == jl(e); right_act(e, g) defined iff target(g) == jr(e).
struct Bibundle {
  GroupoidPtr left;
  GroupoidPtr right;
  Ids carrier;
  std::vector<int> jl, jr;
  PairTable left_act;
  PairTable right_act;

  int size() const { return static_cast<int>(carrier.size()); }
  int act_left(int h, int e) const { return lookup(left_act, h, e); }
  int act_right(int e, int g) const { return lookup(right_act, e, g); }
};

void canonicalize(Bibundle& E);
Report verify_bibundle(const Bibundle& E);
Bibundle identity_bibundle(GroupoidPtr G);

struct Verdict {
  bool ok = true;
  std::string witness;
};

// Right action free and transitive on the fibres of jl, and jl onto.
Verdict right_principal(const Bibundle& E);
Verdict left_principal(const Bibundle& E);
Verdict is_biprincipal(const Bibundle& E);

// Carrier of the composite is (E x_B F) modulo the diagonal B-action.
struct Composite {
  Bibundle bib;
  PairTable pair_class;                                  // (e, f) -> class
  std::vector<std::vector<std::pair<int, int>>> members;  // class -> pairs, sorted
};
Composite compose_bibundles(const Bibundle& E, const Bibundle& F, RepOrder order = RepOrder::Least);

// Equivariant, moment-preserving carrier maps.
Report verify_bibundle_morphism(const Bibundle& E, const Bibundle& F, const std::vector<int>& phi);
std::optional<std::vector<int>> bibundle_morphism_search(const Bibundle& E, const Bibundle& F);
bool is_bijection(const std::vector<int>& phi, int target_size);
std::vector<int> invert_bijection(const std::vector<int>& phi);

// Iterated fibre product G x_M ... x_M G along s_map (left factor) and t_map (right factor).
struct Chain {
  GroupoidPtr base;
  GroupoidPtr g;  // equals base when k == 1
  int k = 1;
  std::vector<int> s_map, t_map;
  std::vector<std::vector<int>> obj_tuple;
  std::vector<std::vector<int>> arr_tuple;
  VecMap<int> obj_index;
  VecMap<int> arr_index;
};
Chain chain_groupoid(GroupoidPtr G, const std::vector<int>& s_map, const std::vector<int>& t_map, int k);

// Product of bibundles part_i: lefts[i] -> rights[i], restricted to the chains left -> right.
struct ProductBibundle {
  Bibundle bib;
  VecMap<int> tuple_index;  // carrier tuple of part elements -> carrier index
  std::vector<std::vector<int>> tuples;
};
ProductBibundle product_bibundle(const std::vector<const Bibundle*>& parts, const std::vector<const Chain*>& lefts,
                                 const std::vector<const Chain*>& rights, const Chain& left, const Chain& right);

struct Pullback {
  FiniteGroupoid groupoid;
  std::vector<std::array<int, 3>> triple;  // arrow -> (x, g, y)
  bool essentially_surjective = true;
  std::string witness;
};
// Objects S, arrows (x, g, y) with g: f(y) -> f(x).
Pullback pullback_groupoid(const FiniteGroupoid& G, const Ids& S, const std::vector<int>& f);
// Carrier (x, g) with target(g) = f(x); biprincipal iff f is essentially surjective.
Bibundle pullback_bibundle(GroupoidPtr H, const std::vector<std::array<int, 3>>& triple, GroupoidPtr G,
                           const std::vector<int>& f);

struct StrictUnit {
  GroupoidPtr groupoid;          // objects G0 plus one new object per point of M
  std::vector<int> unit;         // M -> objects
  Bibundle morita;               // new groupoid -> G
  Bibundle restricted;           // morita restricted to the new objects, as a bibundle M -> G
};
// E is a bibundle from the unit groupoid on M to G.
StrictUnit adjoin_strict_unit(GroupoidPtr G, const Bibundle& E);

}  // namespace fhg
