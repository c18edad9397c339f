// Acceptance run: one PASS/FAIL line per criterion. Optional argument: path to the fhg executable.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "equivalence.hpp"
#include "serialize.hpp"
#include "stacky.hpp"

using namespace fhg;

namespace {

// Collects the first problem met by a criterion.
struct Outcome {
  std::string problem;
  void require(bool cond, const std::string& what) {
    if (!cond && problem.empty()) problem = what;
  }
  void require(const Report& r, const std::string& what) {
    if (!r.ok() && problem.empty()) problem = what + ": " + r.first_failure()->law + ": " + r.first_failure()->witness;
  }
};

CrossedModule inversion_module() {
  CrossedModule C = trivial_crossed_module(cyclic_group(2), cyclic_group(3));
  C.action[1] = {0, 2, 1};
  return C;
}

std::vector<std::pair<std::string, TwoGroupoidData>> two_groupoid_fixtures() {
  return {{"xmod(Z2,Z2)", crossed_module_fixture(trivial_crossed_module(cyclic_group(2), cyclic_group(2)))},
          {"xmod(Z2 acting on Z3)", crossed_module_fixture(inversion_module())},
          {"xmod(Z3,Z2)", crossed_module_fixture(trivial_crossed_module(cyclic_group(3), cyclic_group(2)))},
          {"point", point_two_groupoid()}};
}

std::vector<std::pair<std::string, FiniteGroupoid>> ordinary_fixtures() {
  FiniteGroupoid z2 = group_groupoid(cyclic_group(2));
  return {{"Z3", group_groupoid(cyclic_group(3))},
          {"pair(2)", pair_groupoid(2)},
          {"pair(2) x Z2", pullback_groupoid(z2, {"p", "q"}, {0, 0}).groupoid},
          {"S3", group_groupoid(symmetric_group(3))}};
}

std::vector<std::pair<std::string, StackyGroupoidData>> stacky_fixtures() {
  std::vector<std::pair<std::string, StackyGroupoidData>> out;
  for (const auto& [name, X] : two_groupoid_fixtures()) {
    out.push_back({name + " least", from_two_groupoid(X, RepOrder::Least)});
    out.push_back({name + " greatest", from_two_groupoid(X, RepOrder::Greatest)});
  }
  for (const auto& [name, K] : ordinary_fixtures()) out.push_back({"packaged " + name, package_groupoid(K)});
  return out;
}

// Composable strings of length n, counted over all arrow tuples.
long count_strings(const FiniteGroupoid& G, int n) {
  if (n == 0) return G.num_objects();
  std::vector<int> t(n, 0);
  long count = 0;
  const int a = G.num_arrows();
  while (true) {
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i) ok = ok && G.source[t[i]] == G.target[t[i + 1]];
    count += ok;
    int k = 0;
    while (k < n && ++t[k] == a) t[k++] = 0;
    if (k == n) break;
  }
  return count;
}

long power(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Outcome nerve_laws() {
  Outcome o;
  struct Case {
    std::string name;
    FiniteGroupoid G;
    std::function<long(int)> closed;
  };
  std::vector<Case> cases = {{"Z/2", group_groupoid(cyclic_group(2)), [](int n) { return power(2, n); }},
                             {"Z/3", group_groupoid(cyclic_group(3)), [](int n) { return power(3, n); }},
                             {"pair(3)", pair_groupoid(3), [](int n) { return power(3, n + 1); }}};
  for (const Case& c : cases) {
    SSet X = groupoid_nerve(c.G, 4);
    for (int n = 0; n <= 4; ++n) {
      long strings = count_strings(c.G, n);
      o.require(X.size(n) == strings && strings == c.closed(n),
                c.name + " level " + std::to_string(n) + " has " + std::to_string(X.size(n)) + " cells, expected " +
                    std::to_string(c.closed(n)));
    }
    o.require(verify_n_groupoid(X, 1, 4), c.name + " is not a 1-groupoid");
    for (int m = 2; m <= 4; ++m)
      for (int j = 0; j <= m; ++j)
        o.require(check_kan(X, m, j).status == KanStatus::HoldsUniquely,
                  c.name + " horn (" + std::to_string(m) + "," + std::to_string(j) + ") lacks unique fillers");
  }
  return o;
}

Outcome two_groupoid_axioms() {
  Outcome o;
  TwoGroupoidData X = crossed_module_fixture(trivial_crossed_module(cyclic_group(2), cyclic_group(2)));
  o.require(verify_two_groupoid(X), "crossed module data");
  SSet N = nerve2(X, 4);
  o.require(verify_simplicial(N), "nerve is not simplicial");
  o.require(verify_n_groupoid(N, 2, 4), "nerve is not a 2-groupoid");
  o.require(truncate_to_data(N) == X, "truncating the nerve changes the data");
  return o;
}

Outcome correspondence() {
  Outcome o;
  for (const auto& [name, X] : two_groupoid_fixtures())
    for (RepOrder order : {RepOrder::Least, RepOrder::Greatest}) {
      StackyGroupoidData D = from_two_groupoid(X, order);
      o.require(verify_stacky(D), name + " stacky data");
      TwoGroupoidData Y = to_two_groupoid(D);
      o.require(verify_two_groupoid(Y), name + " round trip data");
      o.require(two_groupoid_iso_search(X, Y).has_value(), name + " round trip is not isomorphic");
    }
  for (const auto& [name, K] : ordinary_fixtures()) {
    StackyGroupoidData D = package_groupoid(K);
    o.require(verify_stacky(D), "packaged " + name);
    TwoGroupoidData X = to_two_groupoid(D);
    o.require(two_groupoid_iso_search(X, groupoid_two_data(K)).has_value(), name + " does not come back as itself");
    StackyGroupoidData back = from_two_groupoid(X);
    o.require(groupoid_iso_search(*back.g, *D.g).has_value(), name + " groupoid of arrows changed");
  }
  return o;
}

Outcome inverse_elimination() {
  Outcome o;
  for (auto [name, D] : stacky_fixtures()) {
    Bibundle I = inverse_bibundle(D);
    Verdict v = is_biprincipal(I);
    o.require(v.ok, name + " inverse is not biprincipal: " + v.witness);
    Bibundle supplied = I;
    for (auto& id : supplied.carrier) id = "i:" + id;
    canonicalize(supplied);
    auto phi = bibundle_morphism_search(supplied, I);
    o.require(phi && is_bijection(*phi, I.size()), name + " supplied inverse is not isomorphic to the derived one");
    D.inverse = supplied;
    o.require(verify_stacky(D), name + " with supplied inverse");
  }
  return o;
}

std::vector<int> copies(const TwoGroupoidData& X, std::vector<int> pattern) {
  std::vector<int> out(X.x1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pattern[i % pattern.size()];
  return out;
}

TwoGroupoidData lower_levels(const TwoGroupoidData& Z) {
  TwoGroupoidData low;
  low.x0 = Z.x0;
  low.x1 = Z.x1;
  low.d1 = Z.d1;
  low.s0 = Z.s0;
  return low;
}

Outcome equivalences() {
  Outcome o;
  CechFixture F = cech_fixture({"a", "b", "c"}, {{"A", {"a", "b"}}, {"B", {"b", "c"}}}, 2);
  o.require(is_equivalence(F.projection, 1), "cech projection");
  o.require(!strict_inverse_search(F.projection).inverse.has_value(), "cech projection has a strict inverse");

  auto X = std::make_shared<const TwoGroupoidData>(
      crossed_module_fixture(trivial_crossed_module(cyclic_group(2), cyclic_group(2))));
  std::vector<int> id0(X->x0.size()), id1(X->x1.size());
  std::iota(id0.begin(), id0.end(), 0);
  std::iota(id1.begin(), id1.end(), 0);
  std::vector<Pullback2> pullbacks = {pullback_two_groupoid(X, lower_levels(*X), id0, id1),
                                      refine_arrows(X, copies(*X, {2, 1})), refine_arrows(X, copies(*X, {1, 2})),
                                      refine_arrows(X, copies(*X, {2}))};
  for (std::size_t i = 0; i < pullbacks.size(); ++i) {
    std::string name = "pull-back " + std::to_string(i);
    o.require(verify_two_groupoid(*pullbacks[i].z), name);
    o.require(verify_strict_map(pullbacks[i].projection), name + " projection");
    o.require(is_one_equivalence(pullbacks[i].projection), name + " projection");
  }

  Pullback2 objects = refine_objects(X, {2});
  o.require(is_equivalence(objects.projection), "object refinement");
  std::vector<std::pair<const StrictTwoGroupoidMap*, const StrictTwoGroupoidMap*>> pairs = {
      {&pullbacks[1].projection, &pullbacks[2].projection},
      {&pullbacks[1].projection, &objects.projection},
      {&pullbacks[0].projection, &pullbacks[0].projection}};
  for (const auto& [f, g] : pairs) {
    FiberProduct P = fiber_product_two_groupoid(*f, *g);
    o.require(verify_two_groupoid(*P.z), "fiber product");
    o.require(is_equivalence(P.left), "fiber product left projection");
    o.require(is_equivalence(P.right), "fiber product right projection");
  }

  Pullback2 twice = refine_arrows(pullbacks[1].z, copies(*pullbacks[1].z, {1, 2}));
  StrictTwoGroupoidMap composite = compose(pullbacks[1].projection, twice.projection);
  o.require(verify_strict_map(composite), "composite");
  o.require(is_equivalence(composite), "composite of equivalences");
  auto cz = std::make_shared<const TwoGroupoidData>(*objects.z);
  Pullback2 over = refine_arrows(cz, copies(*cz, {2, 1}));
  o.require(is_equivalence(compose(objects.projection, over.projection)), "composite through the object refinement");
  SimplicialMap cech_twice = compose(F.projection, identity_map(F.cech));
  o.require(is_equivalence(cech_twice, 1), "cech projection after identity");
  return o;
}

Outcome representative_independence() {
  Outcome o;
  int composed = 0;
  for (const auto& [name, X] : two_groupoid_fixtures()) {
    TwoGroupoidData a = to_two_groupoid(from_two_groupoid(X, RepOrder::Least));
    TwoGroupoidData b = to_two_groupoid(from_two_groupoid(X, RepOrder::Greatest));
    o.require(two_groupoid_iso_search(a, b).has_value(), name + " outputs differ under reversed order");
  }
  for (const auto& [name, D] : stacky_fixtures()) {
    Bibundle I = inverse_bibundle(D);
    std::vector<std::pair<const Bibundle*, const Bibundle*>> products = {{&I, &I}, {&D.mult, &I}};
    Bibundle id = identity_bibundle(D.g);
    products.push_back({&id, &I});
    for (const auto& [e, f] : products) {
      if (e->right->objects != f->left->objects || *e->right != *f->left) continue;
      Bibundle least = compose_bibundles(*e, *f, RepOrder::Least).bib;
      Bibundle greatest = compose_bibundles(*e, *f, RepOrder::Greatest).bib;
      ++composed;
      auto phi = bibundle_morphism_search(least, greatest);
      o.require(phi && is_bijection(*phi, greatest.size()), name + " composites differ under reversed order");
    }
  }
  o.require(composed == 3 * static_cast<int>(stacky_fixtures().size()), "some composites were skipped");
  return o;
}

int run_cli(const std::string& cli, const std::string& args) {
  int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome negative_controls(const std::string& cli) {
  Outcome o;
  auto expect_failure = [&](const Report& r, const std::string& family, const std::string& name) {
    const Check* c = r.first_failure();
    o.require(c != nullptr, name + " perturbation went unnoticed");
    if (!c) return;
    o.require(!c->witness.empty() && !c->law.empty(), name + " failure lacks a witness");
    o.require(c->anchor.rfind(family, 0) == 0, name + " failed at " + c->anchor + ", expected " + family);
  };

  SSet N = groupoid_nerve(group_groupoid(cyclic_group(3)), 3);
  N.face[2][1][1] = (N.face[2][1][1] + 1) % N.size(1);
  expect_failure(verify_simplicial(N), "simplicial/", "nerve face");

  FiniteGroupoid G = pair_groupoid(3);
  auto it = G.compose.begin();
  it->second = (it->second + 1) % G.num_arrows();
  expect_failure(verify_groupoid(G), "groupoid/", "groupoid composition");

  TwoGroupoidData X = crossed_module_fixture(inversion_module());
  auto m = X.m[0].begin();
  while (m != X.m[0].end() && m->first[0] == m->first[1]) ++m;
  m->second = (m->second + 1) % static_cast<int>(X.x2.size());
  expect_failure(verify_two_groupoid(X), "two-groupoid/", "2-groupoid m table");

  auto Z3 = std::make_shared<const FiniteGroupoid>(group_groupoid(cyclic_group(3)));
  Bibundle E = identity_bibundle(Z3);
  E.right_act.begin()->second = (E.right_act.begin()->second + 1) % E.size();
  expect_failure(verify_bibundle(E), "bibundle/", "bibundle action");

  StackyGroupoidData D = from_two_groupoid(crossed_module_fixture(inversion_module()));
  D.assoc[0] = (D.assoc[0] + 1) % static_cast<int>(D.assoc.size());
  expect_failure(verify_stacky(D), "stacky/", "associator");

  auto Xp = std::make_shared<const TwoGroupoidData>(crossed_module_fixture(inversion_module()));
  StrictTwoGroupoidMap f = identity_two_map(Xp);
  f.map.f1[1] = 0;
  expect_failure(verify_strict_map(f), "map/", "2-groupoid map");

  CechFixture F = cech_fixture({"a", "b", "c"}, {{"A", {"a", "b"}}, {"B", {"b", "c"}}}, 2);
  SimplicialMap p = F.projection;
  p.f[0][0] = (p.f[0][0] + 1) % p.target->size(0);
  expect_failure(verify_simplicial_map(p), "simplicial/", "simplicial map");

  if (!cli.empty()) {
    std::string path = "acceptance_perturbed.json";
    FiniteGroupoid H = pair_groupoid(2);
    H.compose.begin()->second = (H.compose.begin()->second + 1) % H.num_arrows();
    std::ofstream(path) << emit_document(make_document(H));
    int code = run_cli(cli, "check " + path);
    o.require(code == 1, "cli exited " + std::to_string(code) + " on a perturbed groupoid");
    std::ofstream(path) << emit_document(make_document(pair_groupoid(2)));
    code = run_cli(cli, "check " + path);
    o.require(code == 0, "cli exited " + std::to_string(code) + " on the intact groupoid");
    std::remove(path.c_str());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    std::string title;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"nerve laws for Z/2, Z/3 and pair(3)", nerve_laws},
      {"crossed module data, its nerve and truncation", two_groupoid_axioms},
      {"round trips through stacky data", correspondence},
      {"inverse bibundles are biprincipal and match supplied inverses", inverse_elimination},
      {"Cech projection, pull-backs, fiber products and composites", equivalences},
      {"outputs do not depend on representative order", representative_independence},
      {"perturbed fixtures fail with witnesses", [&] { return negative_controls(cli); }},
  };
  bool all = true;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.problem = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.problem.empty();
    std::printf("%s criterion %zu: %s (%.2fs)%s%s\n", o.problem.empty() ? "PASS" : "FAIL", i + 1, criteria[i].title.c_str(),
                secs, o.problem.empty() ? "" : ": ", o.problem.c_str());
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.2fs\n", total);
  return all ? 0 : 1;
}
