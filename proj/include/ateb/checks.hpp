#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ateb/audit.hpp"

namespace ateb::checks {

struct Options {
  std::optional<int> size;  // overrides the check's own enumeration bound
  std::optional<std::size_t> budget;
  std::optional<std::size_t> path;
  TraceAudit* audit = nullptr;  // every trace a check builds is handed here
};

struct Result {
  bool pass = true;
  std::size_t cases = 0;
  std::string detail;
  std::vector<std::string> counterexamples;  // canonical syntax, first few

  void fail(const std::string& what);
};

struct Check {
  std::string id;
  std::string title;
  int default_size;
  std::function<Result(const Options&)> run;
};

// Lemma suites by id, e.g. lx:expansion, lu:commute-ol-fls, ls:init-shift,
// mmt:expansion.
const std::vector<Check>& registry();
const Check* find(std::string_view id);

// Ids whose runs build reduction traces (the trace audit covers these).
const std::vector<std::string>& trace_producers();

}  // namespace ateb::checks
