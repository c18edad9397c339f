// Licensed under the Apache License, Version 2.0.
#pragma once

#include <string>
#include <vector>

namespace fhg {

struct Check {
  std::string law;
  std::string anchor;
  bool pass = true;
  std::string witness;  // empty iff pass
};

// Ordered list of law checks. Verifiers stop adding checks of a family after its first failure.
class Report {
 public:
  void pass(std::string law, std::string anchor);
  void fail(std::string law, std::string anchor, std::string witness);
  // Pass when witness is empty, fail otherwise.
  void record(std::string law, std::string anchor, std::string witness);
  void add(const Report& other, const std::string& prefix = "");

  bool ok() const;
  const std::vector<Check>& checks() const { return checks_; }
  const Check* first_failure() const;
  std::string text() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace fhg
