// Licensed under the Apache License, Version 2.0.
#include "fhg/c_api.h"

#include <cstdlib>
#include <cstring>

#include "serialize.hpp"

struct fhg_document {
  fhg::Document doc;
};
struct fhg_report {
  fhg::Report report;
};

namespace {

using namespace fhg;

thread_local std::string last_error;

struct BadArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
fhg_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return FHG_OK;
  } catch (const BadArgument& e) {
    last_error = e.what();
    return FHG_BAD_ARGUMENT;
  } catch (const Error& e) {
    last_error = e.what();
    return FHG_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return FHG_INTERNAL_ERROR;
  }
}

template <class T>
T* need(T* p, const char* what) {
  if (!p) throw BadArgument(std::string(what) + " is null");
  return p;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fhg_document* wrap(Document d) { return new fhg_document{std::move(d)}; }
fhg_report* wrap(Report r) { return new fhg_report{std::move(r)}; }

RepOrder rep_order(fhg_order o) { return o == FHG_ORDER_GREATEST ? RepOrder::Greatest : RepOrder::Least; }

int positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 1) throw BadArgument(what + " must be a positive integer, got '" + text + "'");
  return v;
}

FiniteGroupoid groupoid_fixture(const std::string& name) {
  if (name.rfind("pair:", 0) == 0) return pair_groupoid(positive(name.substr(5), "pair size"));
  if (name.rfind("group:cyclic:", 0) == 0) return group_groupoid(cyclic_group(positive(name.substr(13), "group order")));
  if (name.rfind("group:symmetric:", 0) == 0) {
    int k = positive(name.substr(16), "permutation degree");
    if (k > 4) throw BadArgument("permutation degree must be at most 4");
    return group_groupoid(symmetric_group(k));
  }
  throw BadArgument("unknown groupoid fixture '" + name + "'");
}

Document fixture(const std::string& name, int level) {
  if (name == "point") return make_document(point_two_groupoid());
  if (name == "xmod:Z2Z2") return make_document(crossed_module_fixture(trivial_crossed_module(cyclic_group(2), cyclic_group(2))));
  if (name == "cech") {
    if (level < 1 || level > 6) throw BadArgument("cech level must be in 1..6");
    return make_document(cech_fixture({"a", "b", "c"}, {{"A", {"a", "b"}}, {"B", {"b", "c"}}}, level).projection);
  }
  if (name == "ordinary-groupoid") return make_document(package_groupoid(pair_groupoid(2)));
  if (name.rfind("identity:", 0) == 0) {
    Document d = fixture(name.substr(9), level);
    if (d.groupoid) d = make_document(groupoid_two_data(*d.groupoid));
    if (!d.two_groupoid) throw BadArgument("identity fixtures take a groupoid or 2-groupoid fixture");
    return make_document(identity_two_map(std::make_shared<const TwoGroupoidData>(*d.two_groupoid)));
  }
  if (name.rfind("ordinary-groupoid:", 0) == 0) return make_document(package_groupoid(groupoid_fixture(name.substr(18))));
  return make_document(groupoid_fixture(name));
}

Report prefixed(const Report& r, const std::string& prefix) {
  Report out;
  out.add(r, prefix);
  return out;
}

Report check_bibundle(const Bibundle& E) {
  Report r;
  r.add(verify_groupoid(*E.left), "left groupoid");
  r.add(verify_groupoid(*E.right), "right groupoid");
  r.add(verify_bibundle(E));
  return r;
}

Report check_map(const Document& d) {
  Report r;
  if (d.simplicial_map) {
    const SimplicialMap& f = *d.simplicial_map;
    r.add(verify_simplicial(*f.source), "source");
    r.add(verify_simplicial(*f.target), "target");
    r.add(verify_simplicial_map(f));
  } else {
    const StrictTwoGroupoidMap& f = *d.two_map;
    r.add(verify_two_groupoid(*f.source), "source");
    r.add(verify_two_groupoid(*f.target), "target");
    r.add(verify_strict_map(f));
  }
  return r;
}

Report check(const Document& d, const std::string& as) {
  auto mismatch = [&]() -> Report { throw Error(std::string("a ") + kind_name(d.kind) + " document cannot be checked as " + as); };
  if (as.empty()) {
    switch (d.kind) {
      case Kind::Simplicial: return verify_simplicial(*d.simplicial);
      case Kind::TwoGroupoid: return verify_two_groupoid(*d.two_groupoid);
      case Kind::Groupoid: return verify_groupoid(*d.groupoid);
      case Kind::Bibundle: return check_bibundle(*d.bibundle);
      case Kind::Stacky: return verify_stacky(*d.stacky);
      case Kind::Map: return check_map(d);
    }
  }
  if (as == "simplicial") {
    if (d.simplicial) return verify_simplicial(*d.simplicial);
    if (d.two_groupoid) return verify_simplicial(as_sset(*d.two_groupoid));
    if (d.groupoid) return verify_simplicial(groupoid_nerve(*d.groupoid, 3));
    return mismatch();
  }
  if (as == "two-groupoid") {
    if (d.two_groupoid) return verify_two_groupoid(*d.two_groupoid);
    if (d.simplicial) {
      if (d.simplicial->N < 3) throw Error("truncating to 2-groupoid data needs levels up to 3");
      return verify_two_groupoid(truncate_to_data(*d.simplicial));
    }
    if (d.groupoid) return verify_two_groupoid(groupoid_two_data(*d.groupoid));
    return mismatch();
  }
  if (as == "groupoid") {
    if (d.groupoid) return verify_groupoid(*d.groupoid);
    return mismatch();
  }
  if (as == "bibundle") {
    if (d.bibundle) return check_bibundle(*d.bibundle);
    return mismatch();
  }
  if (as == "stacky") {
    if (d.stacky) return verify_stacky(*d.stacky);
    if (d.two_groupoid) {
      Report r = verify_two_groupoid(*d.two_groupoid);
      if (!r.ok()) return r;
      r.add(verify_stacky(from_two_groupoid(*d.two_groupoid)), "stacky data");
      return r;
    }
    return mismatch();
  }
  throw BadArgument("unknown check target '" + as + "'");
}

Report check_n_groupoid(const Document& d, int n, int up_to) {
  if (n < 0) throw BadArgument("n must be non-negative");
  SSet X;
  if (d.simplicial) {
    X = *d.simplicial;
    if (up_to <= 0) up_to = X.N;
    if (up_to > X.N) throw Error("horns up to dimension " + std::to_string(up_to) + " need levels up to " + std::to_string(up_to));
  } else {
    if (up_to <= 0) up_to = 4;
    if (up_to > 6) throw BadArgument("up_to must be at most 6");
    if (d.groupoid) X = groupoid_nerve(*d.groupoid, up_to);
    else if (d.two_groupoid) X = nerve2(*d.two_groupoid, up_to);
    else throw Error(std::string("a ") + kind_name(d.kind) + " document has no nerve");
  }
  Report r = prefixed(verify_simplicial(X), "simplicial");
  r.add(verify_n_groupoid(X, n, up_to));
  return r;
}

Document nerve(const Document& d, int level) {
  if (level < 0 || level > 6) throw BadArgument("nerve level must be in 0..6");
  if (d.groupoid) return make_document(groupoid_nerve(*d.groupoid, level));
  if (d.two_groupoid) {
    if (level < 2) throw BadArgument("the nerve of 2-groupoid data needs level at least 2");
    return make_document(nerve2(*d.two_groupoid, level));
  }
  throw Error(std::string("a ") + kind_name(d.kind) + " document has no nerve");
}

Document truncate(const Document& d) {
  if (!d.simplicial) throw Error("truncation takes a simplicial document");
  if (d.simplicial->N < 3) throw Error("truncating to 2-groupoid data needs levels up to 3");
  return make_document(truncate_to_data(*d.simplicial));
}

Document to_stacky(const Document& d, RepOrder order) {
  if (d.two_groupoid) return make_document(from_two_groupoid(*d.two_groupoid, order));
  if (d.groupoid) return make_document(package_groupoid(*d.groupoid));
  throw Error("stacky data comes from a two_groupoid or groupoid document");
}

Document from_stacky(const Document& d) {
  if (!d.stacky) throw Error("expected a stacky document");
  Report r = verify_stacky(*d.stacky);
  if (!r.ok()) throw Error("stacky data does not verify: " + r.first_failure()->law + ": " + r.first_failure()->witness);
  return make_document(to_two_groupoid(*d.stacky));
}

Report equivalence(const Document& d, int degree, bool one) {
  if (d.kind != Kind::Map) throw Error("equivalence checks take a map document");
  Report r = check_map(d);
  if (!r.ok()) return r;
  if (d.simplicial_map) {
    const SimplicialMap& f = *d.simplicial_map;
    int top = std::min(f.source->N, f.target->N);
    if (degree < 0) degree = std::min(2, top);
    if (degree > top) throw BadArgument("degree exceeds the truncation level");
    r.add(one ? is_one_equivalence(f, degree) : is_equivalence(f, degree));
  } else {
    if (degree >= 0 && degree != 2) throw BadArgument("maps of 2-groupoid data are checked at degree 2");
    r.add(one ? is_one_equivalence(*d.two_map) : is_equivalence(*d.two_map));
  }
  return r;
}

std::shared_ptr<const TwoGroupoidData> two_groupoid_of(const Document& d) {
  if (d.two_groupoid) return std::make_shared<const TwoGroupoidData>(*d.two_groupoid);
  if (d.groupoid) return std::make_shared<const TwoGroupoidData>(groupoid_two_data(*d.groupoid));
  throw Error("expected a two_groupoid or groupoid document");
}

Report morita(const Document& x, const Document& y, int bound, std::optional<Document>& witness) {
  if (bound < 1) throw BadArgument("bound must be positive");
  auto X = two_groupoid_of(x), Y = two_groupoid_of(y);
  Report r;
  r.add(verify_two_groupoid(*X), "first");
  r.add(verify_two_groupoid(*Y), "second");
  if (!r.ok()) return r;
  MoritaSearch s = bounded_one_morita_search(*X, *Y, bound);
  if (!s.witness) {
    std::string why = s.obstruction.empty()
                          ? "no zig-zag with at most " + std::to_string(bound) + " middle arrows (" + std::to_string(s.candidates) + " candidates tried)"
                          : s.obstruction;
    r.fail("1-Morita zig-zag found", "morita/search", why);
    return r;
  }
  r.pass("1-Morita zig-zag found", "morita/search");
  r.add(verify_two_groupoid(*s.witness->z), "middle");
  r.add(verify_morita_witness(s.witness->to_x, s.witness->to_y, true));
  witness = make_document(*s.witness->z);
  return r;
}

}  // namespace

extern "C" {

const char* fhg_version(void) { return "1.0.0"; }
const char* fhg_last_error(void) { return last_error.c_str(); }
void fhg_string_free(char* s) { std::free(s); }

fhg_status fhg_document_parse(const char* text, size_t length, fhg_document** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = wrap(parse_document(std::string(need(text, "text"), length)));
  });
}

fhg_status fhg_document_emit(const fhg_document* doc, char** out) {
  return guarded([&] { *need(out, "out") = copy_string(emit_document(need(doc, "document")->doc)); });
}

const char* fhg_document_kind(const fhg_document* doc) { return doc ? kind_name(doc->doc.kind) : ""; }
void fhg_document_free(fhg_document* doc) { delete doc; }

fhg_status fhg_fixture(const char* name, int level, fhg_document** out) {
  return guarded([&] { *need(out, "out") = wrap(fixture(need(name, "name"), level == 0 ? 2 : level)); });
}

fhg_status fhg_check(const fhg_document* doc, const char* as, fhg_report** out) {
  return guarded([&] { *need(out, "out") = wrap(check(need(doc, "document")->doc, as ? as : "")); });
}

fhg_status fhg_check_n_groupoid(const fhg_document* doc, int n, int up_to, fhg_report** out) {
  return guarded([&] { *need(out, "out") = wrap(check_n_groupoid(need(doc, "document")->doc, n, up_to)); });
}

fhg_status fhg_nerve(const fhg_document* doc, int level, fhg_document** out) {
  return guarded([&] { *need(out, "out") = wrap(nerve(need(doc, "document")->doc, level)); });
}

fhg_status fhg_truncate(const fhg_document* doc, fhg_document** out) {
  return guarded([&] { *need(out, "out") = wrap(truncate(need(doc, "document")->doc)); });
}

fhg_status fhg_to_stacky(const fhg_document* doc, fhg_order order, fhg_document** out) {
  return guarded([&] { *need(out, "out") = wrap(to_stacky(need(doc, "document")->doc, rep_order(order))); });
}

fhg_status fhg_from_stacky(const fhg_document* doc, fhg_document** out) {
  return guarded([&] { *need(out, "out") = wrap(from_stacky(need(doc, "document")->doc)); });
}

fhg_status fhg_equivalence(const fhg_document* map, int degree, int one, fhg_report** out) {
  return guarded([&] { *need(out, "out") = wrap(equivalence(need(map, "map")->doc, degree, one != 0)); });
}

fhg_status fhg_fiber_product(const fhg_document* f, const fhg_document* g, fhg_document** z, fhg_document** left,
                             fhg_document** right) {
  return guarded([&] {
    need(z, "z");
    need(left, "left");
    need(right, "right");
    const Document& a = need(f, "first map")->doc;
    const Document& b = need(g, "second map")->doc;
    if (!a.two_map || !b.two_map) throw Error("fiber products take maps of 2-groupoid data");
    FiberProduct P = fiber_product_two_groupoid(*a.two_map, *b.two_map);
    *z = wrap(make_document(*P.z));
    *left = wrap(make_document(P.left));
    *right = wrap(make_document(P.right));
  });
}

fhg_status fhg_compose_bibundles(const fhg_document* e, const fhg_document* f, fhg_order order, fhg_document** out) {
  return guarded([&] {
    const Document& a = need(e, "first bibundle")->doc;
    const Document& b = need(f, "second bibundle")->doc;
    if (!a.bibundle || !b.bibundle) throw Error("composition takes two bibundle documents");
    *need(out, "out") = wrap(make_document(compose_bibundles(*a.bibundle, *b.bibundle, rep_order(order)).bib));
  });
}

fhg_status fhg_inverse_bibundle(const fhg_document* stacky, fhg_document** out) {
  return guarded([&] {
    const Document& d = need(stacky, "document")->doc;
    if (!d.stacky) throw Error("expected a stacky document");
    *need(out, "out") = wrap(make_document(inverse_bibundle(*d.stacky)));
  });
}

fhg_status fhg_morita_search(const fhg_document* x, const fhg_document* y, int bound, fhg_report** out,
                             fhg_document** witness) {
  return guarded([&] {
    need(out, "out");
    if (witness) *witness = nullptr;
    std::optional<Document> w;
    Report r = morita(need(x, "first document")->doc, need(y, "second document")->doc, bound, w);
    *out = wrap(std::move(r));
    if (witness && w) *witness = wrap(std::move(*w));
  });
}

int fhg_report_ok(const fhg_report* report) { return report && report->report.ok() ? 1 : 0; }

fhg_status fhg_report_text(const fhg_report* report, char** out) {
  return guarded([&] { *need(out, "out") = copy_string(need(report, "report")->report.text()); });
}

fhg_status fhg_report_json(const fhg_report* report, char** out) {
  return guarded([&] { *need(out, "out") = copy_string(canonical_dump(report_to_json(need(report, "report")->report))); });
}

void fhg_report_free(fhg_report* report) { delete report; }

}  // extern "C"
