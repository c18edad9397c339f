#include "doctest.h"
#include "fixtures.hpp"
#include "serialize.hpp"

using namespace fhg;
using namespace fhg::testing;

namespace {

TwoGroupoidData xmod_z2z2() { return crossed_module_fixture(trivial_crossed_module(cyclic_group(2), cyclic_group(2))); }

// Emitting the parsed document reproduces the bytes.
std::string round_trip(const Document& d) {
  std::string text = emit_document(d);
  std::string again = emit_document(parse_document(text));
  CHECK(again == text);
  return text;
}

std::string parse_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

json edit(const Document& d) { return json::parse(emit_document(d)); }

}  // namespace

TEST_CASE("documents round trip byte for byte") {
  round_trip(make_document(group_groupoid(symmetric_group(3))));
  round_trip(make_document(transitive_groupoid(2, 2)));
  round_trip(make_document(groupoid_nerve(pair_groupoid(3), 3)));
  round_trip(make_document(xmod_z2z2()));
  round_trip(make_document(point_two_groupoid()));
  round_trip(make_document(torsor_bibundle(share(pair_groupoid(2)))));
  round_trip(make_document(identity_bibundle(share(group_groupoid(cyclic_group(3))))));
  CechFixture F = cech_fixture({"a", "b", "c"}, {{"A", {"a", "b"}}, {"B", {"b", "c"}}}, 2);
  round_trip(make_document(F.projection));
  auto X = std::make_shared<const TwoGroupoidData>(xmod_z2z2());
  round_trip(make_document(identity_two_map(X)));
}

TEST_CASE("stacky documents round trip and still verify") {
  for (RepOrder order : {RepOrder::Least, RepOrder::Greatest}) {
    StackyGroupoidData D = from_two_groupoid(xmod_z2z2(), order);
    std::string text = round_trip(make_document(D));
    Document back = parse_document(text);
    REQUIRE(back.stacky);
    CHECK(back.stacky->order == order);
    CHECK(verify_stacky(*back.stacky).ok());
    CHECK(back.stacky->assoc == D.assoc);
  }
  StackyGroupoidData P = package_groupoid(group_groupoid(cyclic_group(3)));
  Document back = parse_document(round_trip(make_document(P)));
  CHECK(verify_stacky(*back.stacky).ok());
}

TEST_CASE("parsed data is canonical regardless of input order") {
  json j = edit(make_document(pair_groupoid(2)));
  json reversed = j;
  std::reverse(reversed["arrows"].begin(), reversed["arrows"].end());
  std::reverse(reversed["objects"].begin(), reversed["objects"].end());
  CHECK(emit_document(document_from_json(reversed)) == emit_document(document_from_json(j)));
}

TEST_CASE("schema errors name the offending path") {
  Document G = make_document(pair_groupoid(2));
  json j = edit(G);
  std::string arrow = j["arrows"][0];
  j["source"][arrow] = "nowhere";
  CHECK(parse_error(j.dump()) == "schema error at /source/" + arrow + ": dangling id 'nowhere'");

  j = edit(G);
  j["target"].erase(arrow);
  CHECK(parse_error(j.dump()) == "schema error at /target: map is not total: no entry for '" + arrow + "'");

  j = edit(G);
  j.erase("compose");
  CHECK(parse_error(j.dump()) == "schema error at /: missing field 'compose'");

  j = edit(G);
  j["format_version"] = "7";
  CHECK(parse_error(j.dump()).find("/format_version: unsupported format version") != std::string::npos);

  j = edit(G);
  j["kind"] = "monoid";
  CHECK(parse_error(j.dump()) == "schema error at /kind: unknown kind 'monoid'");

  j = edit(make_document(xmod_z2z2()));
  j["m"][0][0][3] = "ghost";
  CHECK(parse_error(j.dump()) == "schema error at /m/0/0/3: dangling id 'ghost'");

  j = edit(make_document(xmod_z2z2()));
  j["x1"].push_back(j["x1"][0]);
  CHECK(parse_error(j.dump()).find("/x1: duplicate id") != std::string::npos);

  CHECK(parse_error("{\"kind\": ").rfind("malformed JSON", 0) == 0);
}

TEST_CASE("report as JSON") {
  Report r;
  r.pass("identity", "a/one");
  r.fail("inverse", "a/two", "x has no inverse");
  json j = report_to_json(r);
  CHECK(j["verdict"] == "FAIL");
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][1]["witness"] == "x has no inverse");
  CHECK_FALSE(j["checks"][0].contains("witness"));
}
