// Licensed under the Apache License, Version 2.0.
// Command-line front end over the C interface. Exit codes: 0 all checks pass, 1 a check failed,
// 2 input or usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fhg/c_api.h"

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Doc = std::unique_ptr<fhg_document, decltype(&fhg_document_free)>;
using Rep = std::unique_ptr<fhg_report, decltype(&fhg_report_free)>;

Doc doc_ptr(fhg_document* d) { return Doc(d, &fhg_document_free); }
Rep rep_ptr(fhg_report* r) { return Rep(r, &fhg_report_free); }

void ensure(fhg_status s) {
  if (s != FHG_OK) throw InputError(fhg_last_error());
}

std::string take(char* s) {
  std::string out(s);
  fhg_string_free(s);
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Doc load(const std::string& path) {
  std::string text = read_input(path);
  fhg_document* d = nullptr;
  fhg_status s = fhg_document_parse(text.data(), text.size(), &d);
  if (s != FHG_OK) throw InputError((path == "-" ? std::string("<stdin>") : path) + ": " + fhg_last_error());
  return doc_ptr(d);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

void emit(const Doc& d, const std::string& path) {
  char* text = nullptr;
  ensure(fhg_document_emit(d.get(), &text));
  write_output(path, take(text));
}

int report(const Rep& r, bool as_json) {
  char* text = nullptr;
  ensure(as_json ? fhg_report_json(r.get(), &text) : fhg_report_text(r.get(), &text));
  std::cout << take(text);
  return fhg_report_ok(r.get()) ? 0 : 1;
}

fhg_order parse_order(const std::string& s) { return s == "greatest" ? FHG_ORDER_GREATEST : FHG_ORDER_LEAST; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite 2-groupoids, stacky groupoids and their equivalences"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print reports as JSON");
  auto orders = CLI::IsMember({"least", "greatest"});

  std::string file = "-", second, out, as, order = "least", left_out, right_out;
  int n_groupoid = -1, up_to = 0, level = 0, degree = -1, bound = 4;
  bool one = false;

  auto* check = app.add_subcommand("check", "Verify a document");
  check->add_option("file", file, "Input document, - for stdin");
  check->add_option("--as", as, "Structure to verify")
      ->check(CLI::IsMember({"simplicial", "two-groupoid", "groupoid", "bibundle", "stacky"}));
  check->add_option("--n-groupoid", n_groupoid, "Check the Kan conditions of an n-groupoid")->check(CLI::NonNegativeNumber);
  check->add_option("--up-to", up_to, "Highest horn dimension")->check(CLI::PositiveNumber);

  auto* nerve = app.add_subcommand("nerve", "Nerve of a groupoid or of 2-groupoid data");
  nerve->add_option("file", file);
  nerve->add_option("-N", level, "Truncation level")->required();
  nerve->add_option("-o", out, "Output file");

  auto* truncate = app.add_subcommand("truncate", "2-groupoid data from levels 0..3 of a simplicial set");
  truncate->add_option("file", file);
  truncate->add_option("-o", out);

  auto* to_stacky = app.add_subcommand("to-stacky", "Stacky groupoid data of 2-groupoid data or of a groupoid");
  to_stacky->add_option("file", file);
  to_stacky->add_option("--order", order, "Representative order")->check(orders);
  to_stacky->add_option("-o", out);

  auto* from_stacky = app.add_subcommand("from-stacky", "2-groupoid data of stacky groupoid data");
  from_stacky->add_option("file", file);
  from_stacky->add_option("-o", out);

  auto* equiv = app.add_subcommand("equiv", "Check that a map is an equivalence");
  equiv->add_option("file", file);
  equiv->add_flag("--one", one, "Also require a bijection on objects");
  equiv->add_option("--degree", degree, "Level at which the map must be bijective")->check(CLI::NonNegativeNumber);

  auto* fiber = app.add_subcommand("fiber-product", "Fiber product of two maps with a common target");
  fiber->add_option("first", file)->required();
  fiber->add_option("second", second)->required();
  fiber->add_option("-o", out);
  fiber->add_option("--left-out", left_out, "Write the first projection");
  fiber->add_option("--right-out", right_out, "Write the second projection");

  auto* compose = app.add_subcommand("compose-bibundle", "Compose two bibundles");
  compose->add_option("first", file)->required();
  compose->add_option("second", second)->required();
  compose->add_option("--order", order)->check(orders);
  compose->add_option("-o", out);

  auto* inverse = app.add_subcommand("inverse-bibundle", "Inverse bibundle of stacky groupoid data");
  inverse->add_option("file", file);
  inverse->add_option("-o", out);

  std::string name;
  auto* fixture = app.add_subcommand("fixture", "Write a built-in fixture");
  fixture->add_option("name", name,
                      "point, pair:k, group:cyclic:m, group:symmetric:k, xmod:Z2Z2, cech, ordinary-groupoid[:name], identity:name")
      ->required();
  fixture->add_option("-N,--level", level, "Truncation level of simplicial fixtures")->check(CLI::PositiveNumber);
  fixture->add_option("-o", out);

  auto* morita = app.add_subcommand("morita-search", "Search for a 1-Morita zig-zag");
  morita->add_option("first", file)->required();
  morita->add_option("second", second)->required();
  morita->add_option("--bound", bound, "Largest middle arrow set")->check(CLI::PositiveNumber);
  morita->add_option("-o", out, "Write the middle 2-groupoid when found");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if ((fiber->parsed() || compose->parsed() || morita->parsed()) && file == "-" && second == "-")
      throw InputError("only one input can come from stdin");

    if (check->parsed()) {
      Doc d = load(file);
      fhg_report* r = nullptr;
      if (n_groupoid >= 0) {
        if (!as.empty() && as != "simplicial") throw InputError("--n-groupoid checks the simplicial structure");
        ensure(fhg_check_n_groupoid(d.get(), n_groupoid, up_to, &r));
      } else {
        if (up_to > 0) throw InputError("--up-to needs --n-groupoid");
        ensure(fhg_check(d.get(), as.empty() ? nullptr : as.c_str(), &r));
      }
      return report(rep_ptr(r), as_json);
    }
    if (equiv->parsed()) {
      Doc d = load(file);
      fhg_report* r = nullptr;
      ensure(fhg_equivalence(d.get(), degree, one, &r));
      return report(rep_ptr(r), as_json);
    }
    if (morita->parsed()) {
      Doc x = load(file), y = load(second);
      fhg_report* r = nullptr;
      fhg_document* w = nullptr;
      ensure(fhg_morita_search(x.get(), y.get(), bound, &r, &w));
      Rep rep = rep_ptr(r);
      Doc witness = doc_ptr(w);
      if (witness && !out.empty()) emit(witness, out);
      return report(rep, as_json);
    }

    fhg_document* result = nullptr;
    if (nerve->parsed()) {
      Doc d = load(file);
      ensure(fhg_nerve(d.get(), level, &result));
    } else if (truncate->parsed()) {
      Doc d = load(file);
      ensure(fhg_truncate(d.get(), &result));
    } else if (to_stacky->parsed()) {
      Doc d = load(file);
      ensure(fhg_to_stacky(d.get(), parse_order(order), &result));
    } else if (from_stacky->parsed()) {
      Doc d = load(file);
      ensure(fhg_from_stacky(d.get(), &result));
    } else if (fiber->parsed()) {
      Doc f = load(file), g = load(second);
      fhg_document *left = nullptr, *right = nullptr;
      ensure(fhg_fiber_product(f.get(), g.get(), &result, &left, &right));
      Doc l = doc_ptr(left), r = doc_ptr(right);
      if (!left_out.empty()) emit(l, left_out);
      if (!right_out.empty()) emit(r, right_out);
    } else if (compose->parsed()) {
      Doc e = load(file), f = load(second);
      ensure(fhg_compose_bibundles(e.get(), f.get(), parse_order(order), &result));
    } else if (inverse->parsed()) {
      Doc d = load(file);
      ensure(fhg_inverse_bibundle(d.get(), &result));
    } else if (fixture->parsed()) {
      ensure(fhg_fixture(name.c_str(), level, &result));
    }
    emit(doc_ptr(result), out);
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
