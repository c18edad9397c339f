// Licensed under the Apache License, Version 2.0.
// Stacky groupoids presented by a finite groupoid with a multiplication bibundle, and their
// correspondence with 2-groupoid data.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groupoid.hpp"
#include "report.hpp"
#include "two_groupoid.hpp"

namespace fhg {

// The multiplication bibundle runs from the pairs groupoid G x_M G (chains (p, q) with
// source(p) = target(q) in M) to G. The pair (p, q) stands for p after q.
struct StackyGroupoidData {
  GroupoidPtr g;
  Ids base;
  std::vector<int> s_map, t_map;  // objects -> base
  std::vector<int> unit;          // base -> objects
  Bibundle mult;
  // Class of ((p q) r) -> class of (p (q r)), indices into the composites built with `order`.
  std::vector<int> assoc;
  // Multiplication elements over (unit, q) resp. (p, unit) -> arrows of g; -1 elsewhere.
  std::vector<int> left_unitor, right_unitor;
  std::optional<Bibundle> inverse;
  RepOrder order = RepOrder::Least;
};

// Chains, product bibundles and the two triple composites (p q) r and p (q r), both G3 -> G.
struct AssociatorDomains {
  Chain c1, c2, c3;
  Bibundle id;
  ProductBibundle m_id, id_m;
  Composite left, right;
};
AssociatorDomains associator_domains(const StackyGroupoidData& D);
Chain pairs_chain(const StackyGroupoidData& D);

Report verify_stacky(const StackyGroupoidData& D);

// Multiplication elements whose product lands on a unit, with left moment the first factor and
// right moment the second factor, acted on from the right through the inverse.
Bibundle inverse_bibundle(const StackyGroupoidData& D);

struct StrictInverse {
  bool ok = false;
  std::string witness;
  std::vector<int> section;  // object p -> inverse element over p
  std::vector<int> objects;  // functor on objects
  std::vector<int> arrows;   // functor on arrows
};
StrictInverse strict_inverse_check(const StackyGroupoidData& D);

TwoGroupoidData to_two_groupoid(const StackyGroupoidData& D);
StackyGroupoidData from_two_groupoid(const TwoGroupoidData& X, RepOrder order = RepOrder::Least);

// An ordinary groupoid K as the stacky groupoid presented by the unit groupoid on its arrows.
StackyGroupoidData package_groupoid(const FiniteGroupoid& K);

// All associators L -> R, filtered by the cube identity; at most `limit` are returned.
std::vector<std::vector<int>> associator_search(const StackyGroupoidData& D, int limit = 1);

}  // namespace fhg
