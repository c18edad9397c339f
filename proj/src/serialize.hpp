// Licensed under the Apache License, Version 2.0.
// JSON documents, format version "1". Tables are objects keyed by id; binary tables use "a|b" keys.
#pragma once

#include <optional>
#include <string>

#include "equivalence.hpp"
#include "groupoid.hpp"
#include "json.hpp"
#include "simplicial.hpp"
#include "stacky.hpp"
#include "two_groupoid.hpp"

namespace fhg {

using nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

enum class Kind { Simplicial, TwoGroupoid, Groupoid, Bibundle, Stacky, Map };
const char* kind_name(Kind k);

// One of the payloads is set, matching kind. A map carries either a simplicial or a 2-groupoid map.
struct Document {
  Kind kind = Kind::Simplicial;
  std::optional<SSet> simplicial;
  std::optional<TwoGroupoidData> two_groupoid;
  std::optional<FiniteGroupoid> groupoid;
  std::optional<Bibundle> bibundle;
  std::optional<StackyGroupoidData> stacky;
  std::optional<SimplicialMap> simplicial_map;
  std::optional<StrictTwoGroupoidMap> two_map;
};

Document make_document(SSet X);
Document make_document(TwoGroupoidData X);
Document make_document(FiniteGroupoid G);
Document make_document(Bibundle E);
Document make_document(StackyGroupoidData D);
Document make_document(SimplicialMap f);
Document make_document(StrictTwoGroupoidMap f);

// Throws Error naming the JSON path of the first offending field.
Document parse_document(const std::string& text);
Document document_from_json(const json& j);
json document_to_json(const Document& d);
// Sorted keys, two-space indent, trailing newline.
std::string emit_document(const Document& d);
std::string canonical_dump(const json& j);

json report_to_json(const Report& r);

}  // namespace fhg
