#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace guess::repro {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240521;
  unsigned workers = 1;
};

struct Criterion {
  int id;
  std::string title;
  std::function<CriterionResult(const Options&)> run;
};

/// Every reproduction check, in order.
const std::vector<Criterion>& criteria();

CriterionResult run_one(const Criterion& c, const Options& opts);
std::vector<CriterionResult> run_all(const Options& opts);

/// "[PASS] 3 title (1.23 s): detail"
std::string summary_line(const CriterionResult& r);

}  // namespace guess::repro
