#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "fhg/c_api.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  fhg_string_free(s);
  return out;
}

std::string emit(const fhg_document* d) {
  char* text = nullptr;
  REQUIRE(fhg_document_emit(d, &text) == FHG_OK);
  return take(text);
}

}  // namespace

TEST_CASE("fixtures emit and parse back") {
  for (const char* name : {"point", "pair:3", "group:cyclic:2", "xmod:Z2Z2", "cech", "ordinary-groupoid", "identity:pair:2"}) {
    CAPTURE(name);
    fhg_document* d = nullptr;
    REQUIRE(fhg_fixture(name, 0, &d) == FHG_OK);
    std::string text = emit(d);
    fhg_document* back = nullptr;
    REQUIRE(fhg_document_parse(text.data(), text.size(), &back) == FHG_OK);
    CHECK(std::string(fhg_document_kind(back)) == fhg_document_kind(d));
    CHECK(emit(back) == text);
    fhg_report* r = nullptr;
    REQUIRE(fhg_check(back, nullptr, &r) == FHG_OK);
    CHECK(fhg_report_ok(r) == 1);
    fhg_report_free(r);
    fhg_document_free(back);
    fhg_document_free(d);
  }
}

TEST_CASE("status codes") {
  fhg_document* d = nullptr;
  CHECK(fhg_document_parse(nullptr, 0, &d) == FHG_BAD_ARGUMENT);
  CHECK(std::string(fhg_last_error()) == "text is null");
  const std::string bad = "{\"format_version\": \"1\", \"kind\": \"groupoid\"}";
  CHECK(fhg_document_parse(bad.data(), bad.size(), &d) == FHG_INPUT_ERROR);
  CHECK(d == nullptr);
  CHECK(std::string(fhg_last_error()) == "schema error at /: missing field 'objects'");
  CHECK(fhg_fixture("pair:0", 0, &d) == FHG_BAD_ARGUMENT);
  CHECK(fhg_fixture("klein-bottle", 0, &d) == FHG_BAD_ARGUMENT);

  REQUIRE(fhg_fixture("pair:2", 0, &d) == FHG_OK);
  fhg_document* out = nullptr;
  CHECK(fhg_truncate(d, &out) == FHG_INPUT_ERROR);
  CHECK(fhg_from_stacky(d, &out) == FHG_INPUT_ERROR);
  CHECK(fhg_check(d, "hypergraph", nullptr) == FHG_BAD_ARGUMENT);
  fhg_document_free(d);
  CHECK(fhg_report_ok(nullptr) == 0);
}

TEST_CASE("failing checks still return a report") {
  fhg_document* cech = nullptr;
  REQUIRE(fhg_fixture("cech", 2, &cech) == FHG_OK);
  fhg_report* r = nullptr;
  REQUIRE(fhg_equivalence(cech, 1, 1, &r) == FHG_OK);
  CHECK(fhg_report_ok(r) == 0);
  char* json = nullptr;
  REQUIRE(fhg_report_json(r, &json) == FHG_OK);
  std::string text = take(json);
  CHECK(text.find("\"anchor\": \"equivalence/objects\"") != std::string::npos);
  CHECK(text.find("\"verdict\": \"FAIL\"") != std::string::npos);
  fhg_report_free(r);
  REQUIRE(fhg_equivalence(cech, 1, 0, &r) == FHG_OK);
  CHECK(fhg_report_ok(r) == 1);
  fhg_report_free(r);
  fhg_document_free(cech);
}

TEST_CASE("stacky round trip through the C interface") {
  fhg_document *x = nullptr, *s = nullptr, *back = nullptr, *inv = nullptr;
  REQUIRE(fhg_fixture("xmod:Z2Z2", 0, &x) == FHG_OK);
  REQUIRE(fhg_to_stacky(x, FHG_ORDER_GREATEST, &s) == FHG_OK);
  REQUIRE(fhg_from_stacky(s, &back) == FHG_OK);
  CHECK(std::string(fhg_document_kind(back)) == "two_groupoid");
  REQUIRE(fhg_inverse_bibundle(s, &inv) == FHG_OK);
  CHECK(std::string(fhg_document_kind(inv)) == "bibundle");
  fhg_report* r = nullptr;
  fhg_document* witness = nullptr;
  REQUIRE(fhg_morita_search(x, back, 4, &r, &witness) == FHG_OK);
  CHECK(fhg_report_ok(r) == 1);
  CHECK(witness != nullptr);
  fhg_report_free(r);
  for (fhg_document* d : {x, s, back, inv, witness}) fhg_document_free(d);
}
