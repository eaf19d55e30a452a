// One line per acceptance criterion, PASS or FAIL.  Bounds and limits are
// fixed here; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ateb/checks.hpp"

using namespace ateb;

namespace {

struct Run {
  const char* id;
  int size;
};

struct Criterion {
  int number;
  const char* name;
  std::vector<Run> runs;
  double max_seconds = 0;  // 0: no time limit
};

constexpr std::size_t kBudget = 100000;
constexpr std::size_t kPath = 4;

const std::vector<Criterion> kCriteria{
    {1, "lx:expansion", {{"lx:expansion", 7}}, 60.0},
    {2, "lx:typability + lx:sn", {{"lx:direct", 6}}},
    {3, "lu:fun-props", {{"lu:funshift+1", 3}, {"lu:funshift-comp", 0}, {"lu:funcons-comp", 0}}},
    {4,
     "lu:commute",
     {{"lu:commute-ol-fls", 6}, {"lu:commute-ol-flc", 6}, {"lu:commute-ol-fs", 6}}},
    {5, "lu:init + lu:simulate", {{"lu:init", 5}, {"lu:simulate", 4}}},
    {6, "ls:sigma-terminates", {{"ls:sigma-terminates", 6}}},
    {7, "ls:init-id / ls:init-shift / ls:comp-up",
     {{"ls:init-id", 5}, {"ls:init-shift", 6}, {"ls:comp-up", 6}}},
    {8,
     "ls:init + ls:simulate, lsn:init + lsn:simulate",
     {{"ls:init", 4}, {"ls:simulate", 4}, {"lsn:init", 4}, {"lsn:simulate", 4}}},
    {9, "lwsn:expansion + lwsn:typability", {{"lwsn:expansion", 5}, {"lwsn:typability", 5}}},
    {10, "mmt:expansion + mmt:typability", {{"mmt:expansion", 5}, {"mmt:typability", 5}}},
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(int n, bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s  %2d  %s: %s\n", pass ? "PASS" : "FAIL", n, name.c_str(), detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  TraceAudit audit;
  int failed = 0;

  for (const auto& c : kCriteria) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    std::vector<std::string> witnesses;
    for (const auto& r : c.runs) {
      checks::Options o;
      if (r.size) o.size = r.size;
      o.budget = kBudget;
      o.path = kPath;
      o.audit = &audit;
      auto res = checks::find(r.id)->run(o);
      pass = pass && res.pass;
      if (!detail.empty()) detail += "; ";
      detail += std::string(r.id) + " " + res.detail;
      for (const auto& w : res.counterexamples) witnesses.push_back(std::string(r.id) + ": " + w);
    }
    double secs = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.1f s", secs);
    detail += buf;
    if (c.max_seconds > 0) {
      std::snprintf(buf, sizeof buf, ", limit %.0f s", c.max_seconds);
      detail += buf;
      pass = pass && secs < c.max_seconds;
    }
    detail += ")";
    line(c.number, pass, c.name, detail);
    for (const auto& w : witnesses) std::printf("          counterexample %s\n", w.c_str());
    failed += !pass;
  }

  // 11: everything the suites above produced, replayed and corrupted.
  {
    bool pass = audit.ok() && audit.traces > 0 && audit.mutations > 0;
    std::string detail = std::to_string(audit.traces) + " traces, " +
                         std::to_string(audit.steps) + " steps replayed, " +
                         std::to_string(audit.mutations) + " single-step corruptions, " +
                         std::to_string(audit.undetected) + " unnoticed, " +
                         std::to_string(audit.replay_failures) + " replay failures";
    if (!audit.first_problem.empty()) detail += "; first: " + audit.first_problem;
    line(11, pass, "kernel:traces", detail);
    failed += !pass;
  }

  // 12: negative control.
  {
    checks::Options o;
    o.budget = kBudget;
    auto res = checks::find("kernel:omega")->run(o);
    line(12, res.pass, "negative control (Omega)", res.detail);
    failed += !res.pass;
  }

  std::printf("%d of 12 criteria failed\n", failed);
  return failed ? 1 : 0;
}
