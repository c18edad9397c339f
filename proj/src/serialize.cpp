// Licensed under the Apache License, Version 2.0.
#include "serialize.hpp"

#include <set>

namespace fhg {

namespace {

std::string pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// A JSON value together with its path, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("schema error at " + (path_.empty() ? std::string("/") : path_) + ": " + msg);
  }
  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  Node at(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) fail("missing field '" + key + "'");
    return Node(*it, path_ + "/" + pointer_token(key));
  }
  Node at(std::size_t i) const {
    if (!j_.is_array()) fail("expected an array");
    if (i >= j_.size()) fail("expected at least " + std::to_string(i + 1) + " entries");
    return Node(j_[i], path_ + "/" + std::to_string(i));
  }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  void expect_size(std::size_t n) const {
    if (size() != n) fail("expected " + std::to_string(n) + " entries, found " + std::to_string(j_.size()));
  }
  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  int integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<int>();
  }
  // Array of distinct strings, returned sorted.
  Ids ids() const {
    Ids out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).str());
    std::sort(out.begin(), out.end());
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i] == out[i - 1]) fail("duplicate id '" + out[i] + "'");
    return out;
  }
  template <class F>
  void each(F&& f) const {
    if (!j_.is_object()) fail("expected an object");
    for (auto it = j_.begin(); it != j_.end(); ++it) f(it.key(), Node(it.value(), path_ + "/" + pointer_token(it.key())));
  }

 private:
  const json& j_;
  std::string path_;
};

int resolve(const Node& n, const Ids& ids, const std::string& id) {
  int i = find_id(ids, id);
  if (i < 0) n.fail("dangling id '" + id + "'");
  return i;
}

std::vector<int> read_map(const Node& n, const Ids& dom, const Ids& cod, bool total) {
  std::vector<int> out(dom.size(), -1);
  n.each([&](const std::string& key, const Node& v) {
    int a = find_id(dom, key);
    if (a < 0) v.fail("unknown id '" + key + "' in the domain");
    out[a] = resolve(v, cod, v.str());
  });
  if (total)
    for (std::size_t a = 0; a < dom.size(); ++a)
      if (out[a] < 0) n.fail("map is not total: no entry for '" + dom[a] + "'");
  return out;
}

json write_map(const std::vector<int>& v, const Ids& dom, const Ids& cod) {
  json j = json::object();
  for (std::size_t a = 0; a < v.size(); ++a)
    if (v[a] >= 0) j[dom[a]] = cod[v[a]];
  return j;
}

PairTable read_pair_table(const Node& n, const Ids& A, const Ids& B, const Ids& C) {
  PairTable out;
  n.each([&](const std::string& key, const Node& v) {
    int a = -1, b = -1;
    for (std::size_t p = key.find('|'); p != std::string::npos && a < 0; p = key.find('|', p + 1)) {
      int x = find_id(A, key.substr(0, p)), y = find_id(B, key.substr(p + 1));
      if (x >= 0 && y >= 0) {
        a = x;
        b = y;
      }
    }
    if (a < 0) v.fail("key '" + key + "' is not of the form a|b with known ids");
    out[pair_key(a, b)] = resolve(v, C, v.str());
  });
  return out;
}

json write_pair_table(const PairTable& t, const Ids& A, const Ids& B, const Ids& C) {
  json j = json::object();
  for (const auto& [k, v] : t) {
    int a = static_cast<int>(k >> 32), b = static_cast<int>(k & 0xffffffffu);
    j[A[a] + "|" + B[b]] = C[v];
  }
  return j;
}

json ids_json(const Ids& ids) { return json(ids); }

// ---- groupoids and bibundles

json groupoid_json(const FiniteGroupoid& G) {
  json j;
  j["objects"] = ids_json(G.objects);
  j["arrows"] = ids_json(G.arrows);
  j["source"] = write_map(G.source, G.arrows, G.objects);
  j["target"] = write_map(G.target, G.arrows, G.objects);
  j["identity"] = write_map(G.identity, G.objects, G.arrows);
  j["inverse"] = write_map(G.inverse, G.arrows, G.arrows);
  j["compose"] = write_pair_table(G.compose, G.arrows, G.arrows, G.arrows);
  return j;
}

FiniteGroupoid read_groupoid(const Node& n) {
  FiniteGroupoid G;
  G.objects = n.at("objects").ids();
  G.arrows = n.at("arrows").ids();
  G.source = read_map(n.at("source"), G.arrows, G.objects, true);
  G.target = read_map(n.at("target"), G.arrows, G.objects, true);
  G.identity = read_map(n.at("identity"), G.objects, G.arrows, true);
  G.inverse = read_map(n.at("inverse"), G.arrows, G.arrows, true);
  G.compose = read_pair_table(n.at("compose"), G.arrows, G.arrows, G.arrows);
  return G;
}

// Carrier, moments and actions; the groupoids are written separately.
json bibundle_tables(const Bibundle& E) {
  json j;
  j["carrier"] = ids_json(E.carrier);
  j["jl"] = write_map(E.jl, E.carrier, E.left->objects);
  j["jr"] = write_map(E.jr, E.carrier, E.right->objects);
  j["left_act"] = write_pair_table(E.left_act, E.left->arrows, E.carrier, E.carrier);
  j["right_act"] = write_pair_table(E.right_act, E.carrier, E.right->arrows, E.carrier);
  return j;
}

Bibundle read_bibundle_tables(const Node& n, GroupoidPtr left, GroupoidPtr right) {
  Bibundle E;
  E.left = std::move(left);
  E.right = std::move(right);
  E.carrier = n.at("carrier").ids();
  E.jl = read_map(n.at("jl"), E.carrier, E.left->objects, true);
  E.jr = read_map(n.at("jr"), E.carrier, E.right->objects, true);
  E.left_act = read_pair_table(n.at("left_act"), E.left->arrows, E.carrier, E.carrier);
  E.right_act = read_pair_table(n.at("right_act"), E.carrier, E.right->arrows, E.carrier);
  return E;
}

json bibundle_json(const Bibundle& E) {
  json j = bibundle_tables(E);
  j["left"] = groupoid_json(*E.left);
  j["right"] = groupoid_json(*E.right);
  return j;
}

Bibundle read_bibundle(const Node& n) {
  auto left = std::make_shared<const FiniteGroupoid>(read_groupoid(n.at("left")));
  auto right = std::make_shared<const FiniteGroupoid>(read_groupoid(n.at("right")));
  return read_bibundle_tables(n, left, right);
}

// ---- simplicial sets and 2-groupoid data

json sset_json(const SSet& X) {
  json j;
  j["N"] = X.N;
  j["cells"] = json::array();
  for (int n = 0; n <= X.N; ++n) j["cells"].push_back(ids_json(X.cells[n]));
  j["faces"] = json::array();
  for (int n = 1; n <= X.N; ++n) {
    json level = json::array();
    for (int i = 0; i <= n; ++i) level.push_back(write_map(X.face[n][i], X.cells[n], X.cells[n - 1]));
    j["faces"].push_back(level);
  }
  j["degeneracies"] = json::array();
  for (int n = 0; n < X.N; ++n) {
    json level = json::array();
    for (int i = 0; i <= n; ++i) level.push_back(write_map(X.degen[n][i], X.cells[n], X.cells[n + 1]));
    j["degeneracies"].push_back(level);
  }
  return j;
}

SSet read_sset(const Node& n) {
  int N = n.at("N").integer();
  if (N < 0 || N > 12) n.at("N").fail("truncation level must be in 0..12");
  Node cells = n.at("cells");
  cells.expect_size(static_cast<std::size_t>(N) + 1);
  std::vector<Ids> levels;
  for (int k = 0; k <= N; ++k) levels.push_back(cells.at(k).ids());
  SSet X = make_sset(N, levels);
  Node faces = n.at("faces");
  faces.expect_size(N);
  for (int k = 1; k <= N; ++k) {
    Node level = faces.at(k - 1);
    level.expect_size(k + 1);
    for (int i = 0; i <= k; ++i) X.face[k][i] = read_map(level.at(i), X.cells[k], X.cells[k - 1], true);
  }
  Node degen = n.at("degeneracies");
  degen.expect_size(N);
  for (int k = 0; k < N; ++k) {
    Node level = degen.at(k);
    level.expect_size(k + 1);
    for (int i = 0; i <= k; ++i) X.degen[k][i] = read_map(level.at(i), X.cells[k], X.cells[k + 1], true);
  }
  return X;
}

json two_json(const TwoGroupoidData& D) {
  json j;
  j["x0"] = ids_json(D.x0);
  j["x1"] = ids_json(D.x1);
  j["x2"] = ids_json(D.x2);
  j["d1"] = {write_map(D.d1[0], D.x1, D.x0), write_map(D.d1[1], D.x1, D.x0)};
  j["s0"] = write_map(D.s0, D.x0, D.x1);
  j["d2"] = json::array();
  for (int i = 0; i < 3; ++i) j["d2"].push_back(write_map(D.d2[i], D.x2, D.x1));
  j["s1"] = {write_map(D.s1[0], D.x1, D.x2), write_map(D.s1[1], D.x1, D.x2)};
  j["m"] = json::array();
  for (int i = 0; i < 4; ++i) {
    json table = json::array();
    for (const auto& [k, v] : D.m[i]) table.push_back({D.x2[k[0]], D.x2[k[1]], D.x2[k[2]], D.x2[v]});
    j["m"].push_back(table);
  }
  return j;
}

TwoGroupoidData read_two(const Node& n) {
  TwoGroupoidData D;
  D.x0 = n.at("x0").ids();
  D.x1 = n.at("x1").ids();
  D.x2 = n.at("x2").ids();
  Node d1 = n.at("d1");
  d1.expect_size(2);
  for (int i = 0; i < 2; ++i) D.d1[i] = read_map(d1.at(i), D.x1, D.x0, true);
  D.s0 = read_map(n.at("s0"), D.x0, D.x1, true);
  Node d2 = n.at("d2");
  d2.expect_size(3);
  for (int i = 0; i < 3; ++i) D.d2[i] = read_map(d2.at(i), D.x2, D.x1, true);
  Node s1 = n.at("s1");
  s1.expect_size(2);
  for (int i = 0; i < 2; ++i) D.s1[i] = read_map(s1.at(i), D.x1, D.x2, true);
  Node m = n.at("m");
  m.expect_size(4);
  for (int i = 0; i < 4; ++i) {
    Node table = m.at(i);
    for (std::size_t r = 0; r < table.size(); ++r) {
      Node row = table.at(r);
      row.expect_size(4);
      std::array<int, 4> v{};
      for (int c = 0; c < 4; ++c) v[c] = resolve(row.at(c), D.x2, row.at(c).str());
      if (!D.m[i].emplace(std::array<int, 3>{v[0], v[1], v[2]}, v[3]).second) row.fail("duplicate m" + std::to_string(i) + " entry");
    }
  }
  return D;
}

// ---- stacky data

json stacky_json(const StackyGroupoidData& D) {
  const FiniteGroupoid& G = *D.g;
  json j;
  j["groupoid"] = groupoid_json(G);
  j["base"] = ids_json(D.base);
  j["s_map"] = write_map(D.s_map, G.objects, D.base);
  j["t_map"] = write_map(D.t_map, G.objects, D.base);
  j["unit"] = write_map(D.unit, D.base, G.objects);
  j["order"] = D.order == RepOrder::Least ? "least" : "greatest";
  j["mult"] = bibundle_tables(D.mult);
  j["left_unitor"] = write_map(D.left_unitor, D.mult.carrier, G.arrows);
  j["right_unitor"] = write_map(D.right_unitor, D.mult.carrier, G.arrows);
  AssociatorDomains A = associator_domains(D);
  j["associator"] = write_map(D.assoc, A.left.bib.carrier, A.right.bib.carrier);
  if (D.inverse) j["inverse"] = bibundle_tables(*D.inverse);
  return j;
}

StackyGroupoidData read_stacky(const Node& n) {
  StackyGroupoidData D;
  D.g = std::make_shared<const FiniteGroupoid>(read_groupoid(n.at("groupoid")));
  const FiniteGroupoid& G = *D.g;
  D.base = n.at("base").ids();
  D.s_map = read_map(n.at("s_map"), G.objects, D.base, true);
  D.t_map = read_map(n.at("t_map"), G.objects, D.base, true);
  D.unit = read_map(n.at("unit"), D.base, G.objects, true);
  std::string order = n.at("order").str();
  if (order != "least" && order != "greatest") n.at("order").fail("expected \"least\" or \"greatest\"");
  D.order = order == "least" ? RepOrder::Least : RepOrder::Greatest;
  Chain c2 = pairs_chain(D);
  D.mult = read_bibundle_tables(n.at("mult"), c2.g, D.g);
  D.left_unitor = read_map(n.at("left_unitor"), D.mult.carrier, G.arrows, false);
  D.right_unitor = read_map(n.at("right_unitor"), D.mult.carrier, G.arrows, false);
  if (n.has("inverse")) D.inverse = read_bibundle_tables(n.at("inverse"), D.g, D.g);
  Node assoc = n.at("associator");
  AssociatorDomains A;
  try {
    A = associator_domains(D);
  } catch (const Error& e) {
    assoc.fail(std::string("cannot build the triple composites: ") + e.what());
  }
  D.assoc = read_map(assoc, A.left.bib.carrier, A.right.bib.carrier, true);
  return D;
}

// ---- maps

json payload_json(const Document& d);

json map_json(const Document& d) {
  json j;
  j["levels"] = json::array();
  if (d.simplicial_map) {
    const SimplicialMap& f = *d.simplicial_map;
    j["source"] = document_to_json(make_document(*f.source));
    j["target"] = document_to_json(make_document(*f.target));
    for (int n = 0; n <= f.source->N; ++n) j["levels"].push_back(write_map(f.f[n], f.source->cells[n], f.target->cells[n]));
  } else {
    const StrictTwoGroupoidMap& f = *d.two_map;
    j["source"] = document_to_json(make_document(*f.source));
    j["target"] = document_to_json(make_document(*f.target));
    j["levels"].push_back(write_map(f.map.f0, f.source->x0, f.target->x0));
    j["levels"].push_back(write_map(f.map.f1, f.source->x1, f.target->x1));
    j["levels"].push_back(write_map(f.map.f2, f.source->x2, f.target->x2));
  }
  return j;
}

Document read_document(const Node& n, bool top);

Document read_map_doc(const Node& n) {
  Document src = read_document(n.at("source"), false);
  Document dst = read_document(n.at("target"), false);
  Node levels = n.at("levels");
  Document d;
  d.kind = Kind::Map;
  if (src.kind == Kind::Simplicial && dst.kind == Kind::Simplicial) {
    SimplicialMap f;
    f.source = std::make_shared<const SSet>(*src.simplicial);
    f.target = std::make_shared<const SSet>(*dst.simplicial);
    if (f.source->N != f.target->N) n.fail("source and target truncations differ");
    levels.expect_size(static_cast<std::size_t>(f.source->N) + 1);
    for (int k = 0; k <= f.source->N; ++k) f.f.push_back(read_map(levels.at(k), f.source->cells[k], f.target->cells[k], true));
    d.simplicial_map = std::move(f);
  } else if (src.kind == Kind::TwoGroupoid && dst.kind == Kind::TwoGroupoid) {
    StrictTwoGroupoidMap f;
    f.source = std::make_shared<const TwoGroupoidData>(*src.two_groupoid);
    f.target = std::make_shared<const TwoGroupoidData>(*dst.two_groupoid);
    levels.expect_size(3);
    f.map.f0 = read_map(levels.at(0), f.source->x0, f.target->x0, true);
    f.map.f1 = read_map(levels.at(1), f.source->x1, f.target->x1, true);
    f.map.f2 = read_map(levels.at(2), f.source->x2, f.target->x2, true);
    d.two_map = std::move(f);
  } else {
    n.fail("maps run between two simplicial documents or two two_groupoid documents");
  }
  return d;
}

Kind read_kind(const Node& n) {
  std::string k = n.str();
  for (Kind c : {Kind::Simplicial, Kind::TwoGroupoid, Kind::Groupoid, Kind::Bibundle, Kind::Stacky, Kind::Map})
    if (k == kind_name(c)) return c;
  n.fail("unknown kind '" + k + "'");
}

Document read_document(const Node& n, bool top) {
  if (!n.raw().is_object()) n.fail("expected an object");
  if (top || n.has("format_version")) {
    std::string v = n.at("format_version").str();
    if (v != kFormatVersion) n.at("format_version").fail("unsupported format version '" + v + "'");
  }
  Document d;
  d.kind = read_kind(n.at("kind"));
  switch (d.kind) {
    case Kind::Simplicial: d.simplicial = read_sset(n); break;
    case Kind::TwoGroupoid: d.two_groupoid = read_two(n); break;
    case Kind::Groupoid: d.groupoid = read_groupoid(n); break;
    case Kind::Bibundle: d.bibundle = read_bibundle(n); break;
    case Kind::Stacky: d.stacky = read_stacky(n); break;
    case Kind::Map: return read_map_doc(n);
  }
  return d;
}

json payload_json(const Document& d) {
  switch (d.kind) {
    case Kind::Simplicial: return sset_json(*d.simplicial);
    case Kind::TwoGroupoid: return two_json(*d.two_groupoid);
    case Kind::Groupoid: return groupoid_json(*d.groupoid);
    case Kind::Bibundle: return bibundle_json(*d.bibundle);
    case Kind::Stacky: return stacky_json(*d.stacky);
    case Kind::Map: return map_json(d);
  }
  return {};
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Simplicial: return "simplicial";
    case Kind::TwoGroupoid: return "two_groupoid";
    case Kind::Groupoid: return "groupoid";
    case Kind::Bibundle: return "bibundle";
    case Kind::Stacky: return "stacky";
    case Kind::Map: return "map";
  }
  return "";
}

Document make_document(SSet X) {
  Document d;
  d.kind = Kind::Simplicial;
  d.simplicial = std::move(X);
  return d;
}
Document make_document(TwoGroupoidData X) {
  Document d;
  d.kind = Kind::TwoGroupoid;
  d.two_groupoid = std::move(X);
  return d;
}
Document make_document(FiniteGroupoid G) {
  Document d;
  d.kind = Kind::Groupoid;
  d.groupoid = std::move(G);
  return d;
}
Document make_document(Bibundle E) {
  Document d;
  d.kind = Kind::Bibundle;
  d.bibundle = std::move(E);
  return d;
}
Document make_document(StackyGroupoidData D) {
  Document d;
  d.kind = Kind::Stacky;
  d.stacky = std::move(D);
  return d;
}
Document make_document(SimplicialMap f) {
  Document d;
  d.kind = Kind::Map;
  d.simplicial_map = std::move(f);
  return d;
}
Document make_document(StrictTwoGroupoidMap f) {
  Document d;
  d.kind = Kind::Map;
  d.two_map = std::move(f);
  return d;
}

Document document_from_json(const json& j) { return read_document(Node(j, ""), true); }

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j);
}

json document_to_json(const Document& d) {
  json j = payload_json(d);
  j["kind"] = kind_name(d.kind);
  return j;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string emit_document(const Document& d) {
  json j = document_to_json(d);
  j["format_version"] = kFormatVersion;
  return canonical_dump(j);
}

json report_to_json(const Report& r) {
  json checks = json::array();
  for (const Check& c : r.checks()) {
    json e;
    e["law"] = c.law;
    e["anchor"] = c.anchor;
    e["status"] = c.pass ? "PASS" : "FAIL";
    if (!c.pass) e["witness"] = c.witness;
    checks.push_back(e);
  }
  json j;
  j["checks"] = checks;
  j["verdict"] = r.ok() ? "PASS" : "FAIL";
  return j;
}

}  // namespace fhg
