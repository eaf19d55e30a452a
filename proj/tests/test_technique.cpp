#include "doctest.h"

#include <set>

#include "ateb/bundles.hpp"
#include "ateb/checks.hpp"

using namespace ateb;
using namespace ateb::technique;

namespace {

lx::Term lxp(const char* s) { return lx::parse(s); }

std::vector<Case<lx::Term, NamedEnv>> lx_cases() {
  return {{lxp("x[y/x]"), parse_named_env("y:i")},
          {lxp("(\\x:i. x)[y/z]"), parse_named_env("y:i")},
          {lxp("(x z)[y/x]"), parse_named_env("y:i->i, z:i")},
          {lxp("x z"), parse_named_env("x:i->i, z:i")}};
}

}  // namespace

TEST_CASE("an empty stream of cases passes with nothing counted") {
  auto rep = check_direct(checks::lx_bundle(), {}, 1000);
  CHECK(rep.ok());
  CHECK(rep.terms == 0);
  auto sim = check_simulation(checks::lu_bundle(), {}, 4);
  CHECK(sim.ok());
  CHECK(sim.counter("paths") == 0);
}

TEST_CASE("the direct pipeline passes on typed lx terms") {
  auto rep = check_direct(checks::lx_bundle(), lx_cases(), 100000);
  CHECK(rep.ok());
  CHECK(rep.terms == 4);
}

TEST_CASE("untyped cases are skipped") {
  std::vector<Case<lx::Term, NamedEnv>> cs{{lxp("x x"), parse_named_env("x:i")}};
  auto rep = check_direct(checks::lx_bundle(), cs, 1000);
  CHECK(rep.terms == 0);
}

TEST_CASE("a corrupted Ateb is caught") {
  // Renames the free y to w in the expansion: the result is no longer
  // typable under the case's environment and does not reduce back to t.
  auto b = checks::lx_bundle();
  b.ateb = [](const lx::Term& t, const std::optional<NamedEnv>& e) {
    return lx::embed(pure::subst_meta(lx::ateb_of(t, e), "y", pure::var("w")));
  };
  auto rep = check_direct(b, lx_cases(), 100000);
  CHECK_FALSE(rep.ok());
  CHECK(rep.failures == 3);  // every case mentioning y
  REQUIRE_FALSE(rep.failed.empty());
  auto line = rep.failed.front().line();
  CHECK(line.find("typability=untypable") != std::string::npos);
  CHECK(line.find("expansion=not found") != std::string::npos);
}

TEST_CASE("an index is its own witness and simulates nothing") {
  std::vector<Case<lu::Term, DbEnv>> cs{{lu::idx(1), parse_db_env("i")}};
  auto b = checks::lu_bundle();
  auto w = b.init(lu::idx(1), parse_db_env("i"));
  REQUIRE(w);
  CHECK(w->length() == 0);
  CHECK(w->end() == lu::idx(1));
  auto rep = check_simulation(b, cs, 4);
  CHECK(rep.ok());
  CHECK(rep.counter("steps") == 0);
}

TEST_CASE("strict and lax rules must split the rule table") {
  auto b = checks::lu_bundle();
  b.lax = RuleSet::all();
  CHECK_THROWS_AS(b.check_split(), PreconditionError);
  std::vector<Case<lu::Term, DbEnv>> cs{{lu::idx(1), parse_db_env("i")}};
  CHECK_THROWS_AS(check_simulation(b, cs, 2), PreconditionError);
  auto c = checks::ls_bundle();
  c.strict = RuleSet{};
  CHECK_THROWS_AS(c.check_split(), PreconditionError);
}

TEST_CASE("a simulation that skips a B step is caught") {
  auto b = checks::lu_bundle();
  b.simulate = [](const ReductionStep<lu::Term>&, const lu::Term& u) {
    return std::optional<Trace<lu::Term>>(Trace<lu::Term>{u, {}});
  };
  std::vector<Case<lu::Term, DbEnv>> cs{{lu::parse("(\\i.1) 1"), parse_db_env("i")}};
  CHECK(check_simulation(checks::lu_bundle(), cs, 4).ok());
  auto rep = check_simulation(b, cs, 4);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.failed.size() == 1);
  CHECK(rep.failed[0].line().find("bad simulation of B step") != std::string::npos);
}

TEST_CASE("the witness is probed for SN") {
  std::vector<Case<ls::Term, DbEnv>> cs{{ls::parse("(\\i.1) 1"), parse_db_env("i")},
                                        {ls::parse("1[2 . id]"), parse_db_env("i, i")}};
  auto rep = check_simulation(checks::ls_bundle(), cs, 4, nullptr, 100000);
  CHECK(rep.ok());
  REQUIRE(rep.terms == 2);

  // A budget too small to finish the probe leaves the bound unproved,
  // which is reported rather than passed over.
  auto small = check_simulation(checks::ls_bundle(), {cs[0]}, 4, nullptr, 1);
  CHECK_FALSE(small.ok());
  REQUIRE(small.failed.size() == 1);
  CHECK(small.failed[0].line().find("sn(u)=BudgetExhausted") != std::string::npos);
}

TEST_CASE("the trace audit replays and corrupts") {
  lx::System sys;
  auto res = normalize(sys, lxp("(\\x. x x) y"), RuleSet::all(), 100);
  REQUIRE(res.trace.length() >= 3);
  TraceAudit audit;
  audit.record(sys, res.trace, "sample");
  CHECK(audit.ok());
  CHECK(audit.traces == 1);
  CHECK(audit.steps == res.trace.length());
  CHECK(audit.mutations >= res.trace.length());

  auto bad = res.trace;
  bad.steps[1].rule = "Beta";
  audit.record(sys, bad, "broken");
  CHECK_FALSE(audit.ok());
  CHECK(audit.replay_failures == 1);
  CHECK(audit.first_problem.find("broken") == 0);
}

TEST_CASE("registry ids are unique and resolvable") {
  std::set<std::string> seen;
  for (const auto& c : checks::registry()) {
    CHECK(seen.insert(c.id).second);
    CHECK(checks::find(c.id) == &c);
  }
  CHECK(checks::find("bogus:id") == nullptr);
  for (const auto& id : checks::trace_producers()) CHECK(checks::find(id) != nullptr);
}

TEST_CASE("small registry runs") {
  checks::Options o;
  for (const char* id : {"lu:funshift-comp", "lu:funcons-comp", "kernel:omega", "ls:init"}) {
    CAPTURE(id);
    auto r = checks::find(id)->run(o);
    CHECK(r.pass);
    CHECK(r.cases > 0);
  }
  o.size = 3;
  TraceAudit audit;
  o.audit = &audit;
  CHECK(checks::find("mmt:expansion")->run(o).pass);
  CHECK(audit.traces > 0);
  CHECK(audit.ok());
}
