#pragma once

#include <string>

#include "ateb/kernel.hpp"

namespace ateb {

// Replays every trace handed to it, then corrupts each step once in two
// ways and checks that replay notices: the step's result is replaced by
// its source, and its label by a rule that does not apply there.
class TraceAudit {
 public:
  std::size_t traces = 0;
  std::size_t steps = 0;
  std::size_t replay_failures = 0;
  std::size_t mutations = 0;
  std::size_t undetected = 0;
  std::string first_problem;

  bool ok() const { return replay_failures == 0 && undetected == 0; }

  template <RewriteSystem S>
  void record(const S& sys, const Trace<typename S::Term>& tr, const std::string& where) {
    ++traces;
    steps += tr.length();
    auto r = replay(sys, tr);
    if (!r.ok) {
      if (!replay_failures++) note(where + ": step " + std::to_string(r.failed_at) + ": " + r.reason);
      return;
    }
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
      auto copy = tr;
      copy.steps[i].after = copy.steps[i].before;
      check_detected(sys, copy, where, i, "result replaced by source");
      if (auto j = inapplicable_rule(sys, tr.steps[i])) {
        copy = tr;
        copy.steps[i].rule = std::string(sys.rules()[*j]);
        check_detected(sys, copy, where, i, "label replaced");
      }
    }
  }

 private:
  void note(std::string s) {
    if (first_problem.empty()) first_problem = std::move(s);
  }

  template <RewriteSystem S>
  void check_detected(const S& sys, const Trace<typename S::Term>& t, const std::string& where,
                      std::size_t i, const char* what) {
    ++mutations;
    if (replay(sys, t).ok && !undetected++)
      note(where + ": step " + std::to_string(i) + " " + what + " went unnoticed");
  }

  template <RewriteSystem S>
  static std::optional<std::size_t> inapplicable_rule(const S& sys,
                                                      const ReductionStep<typename S::Term>& st) {
    const auto& node = subterm_at(st.before, st.at);
    for (std::size_t j = 0; j < sys.rules().size(); ++j) {
      if (sys.rules()[j] == st.rule) continue;
      RootRewrites<typename S::Term> out;
      sys.root_rewrites(node, RuleSet::only(j), out);
      if (out.empty()) return j;
    }
    return std::nullopt;
  }
};

}  // namespace ateb
