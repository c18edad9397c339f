// Licensed under the Apache License, Version 2.0.
#include "report.hpp"

namespace fhg {

void Report::pass(std::string law, std::string anchor) {
  checks_.push_back({std::move(law), std::move(anchor), true, {}});
}

void Report::fail(std::string law, std::string anchor, std::string witness) {
  if (witness.empty()) witness = "(no detail)";
  checks_.push_back({std::move(law), std::move(anchor), false, std::move(witness)});
}

void Report::record(std::string law, std::string anchor, std::string witness) {
  if (witness.empty()) pass(std::move(law), std::move(anchor));
  else fail(std::move(law), std::move(anchor), std::move(witness));
}

void Report::add(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    Check copy = c;
    if (!prefix.empty()) copy.law = prefix + ": " + copy.law;
    checks_.push_back(std::move(copy));
  }
}

bool Report::ok() const { return first_failure() == nullptr; }

const Check* Report::first_failure() const {
  for (const auto& c : checks_) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

std::string Report::text() const {
  std::string out;
  for (const auto& c : checks_) {
    out += c.pass ? "PASS " : "FAIL ";
    out += c.law + " [" + c.anchor + "]";
    if (!c.pass) out += ": " + c.witness;
    out += "\n";
  }
  out += ok() ? "verdict: PASS\n" : "verdict: FAIL\n";
  return out;
}

}  // namespace fhg
