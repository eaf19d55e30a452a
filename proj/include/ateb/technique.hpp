#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ateb/audit.hpp"
#include "ateb/error.hpp"
#include "ateb/kernel.hpp"
#include "ateb/types.hpp"

namespace ateb::technique {

// One line per checked term: the term, then name=verdict pairs.
struct Record {
  std::string term;
  std::vector<std::pair<std::string, std::string>> checks;
  bool ok = true;

  void add(std::string name, std::string verdict, bool pass) {
    checks.emplace_back(std::move(name), std::move(verdict));
    ok = ok && pass;
  }
  std::string line() const;
};

struct Report {
  std::string pipeline;
  std::size_t terms = 0;
  std::size_t failures = 0;
  std::vector<Record> failed;  // the first few, as witnesses
  std::vector<Record> all;     // only when keep_all is set
  bool keep_all = false;
  // Extra counts a pipeline wants to show (paths driven, steps simulated...).
  std::vector<std::pair<std::string, std::size_t>> counters;

  bool ok() const { return failures == 0; }
  void add(Record r);
  void count(const std::string& name, std::size_t n = 1);
  std::size_t counter(const std::string& name) const;
  void merge(const Report& o);
  std::string summary() const;
};

template <class T, class Env>
struct Case {
  T term;
  Env env;
};

// A calculus as the two pipelines see it.  The simulation fields are only
// needed by check_simulation.
template <RewriteSystem S, class Env>
struct Bundle {
  using T = typename S::Term;

  std::string name;
  S sys;
  std::function<Checked<Type>(const Env&, const T&)> typecheck;
  // Substitution-free, as a term of the same system.
  std::function<T(const T&, const std::optional<Env>&)> ateb;
  // Rules Ateb(t) ->* t may use, and how deep to look.
  RuleSet beta;
  std::function<std::size_t(const T&)> expansion_depth;
  std::function<std::string(const T&)> show;
  // SN of the pure reading of Ateb(t); used to flag a term whose expansion
  // is SN while the term itself is not proved SN.
  std::function<bool(const T&, std::size_t budget)> pure_sn;

  // Steps simulated strictly (u ->+ u', at most strict_max steps) and laxly
  // (u ->* u').  They must partition the rule table.
  RuleSet strict, lax;
  std::size_t strict_max = 1;
  std::function<bool(const T&, const T&)> lessdot;
  // Trace from Ateb(t) (typed by env) to a u with u <. t.
  std::function<std::optional<Trace<T>>(const T&, const std::optional<Env>&)> init;
  std::function<std::optional<Trace<T>>(const ReductionStep<T>&, const T&)> simulate;

  void check_split() const {
    for (std::size_t i = 0; i < sys.rules().size(); ++i)
      if (strict.has(i) == lax.has(i))
        throw PreconditionError(name + ": rule " + std::string(sys.rules()[i]) +
                                " must be in exactly one of the strict and lax sets");
  }
};

namespace detail {

template <class T>
bool only_rules(const Trace<T>& tr, const auto& sys, RuleSet r) {
  for (const auto& s : tr.steps) {
    auto i = rule_index(sys, s.rule);
    if (!i || !r.has(*i)) return false;
  }
  return true;
}

inline std::string sn_text(bool proved, std::size_t depth, std::size_t visited) {
  return proved ? "ProvedSN(depth " + std::to_string(depth) + ")"
                : "BudgetExhausted(" + std::to_string(visited) + " visited)";
}

}  // namespace detail

// Properties 1 and 2 plus the SN probe, for each typed case.  Untyped
// cases are skipped.
template <RewriteSystem S, class Env>
Report check_direct(const Bundle<S, Env>& b, const std::vector<Case<typename S::Term, Env>>& cases,
                    std::size_t budget, TraceAudit* audit = nullptr) {
  using ateb::to_string;
  Report rep;
  rep.pipeline = "direct/" + b.name;
  for (const auto& c : cases) {
    auto a = b.typecheck(c.env, c.term);
    if (!a) continue;
    Record r;
    r.term = b.show(c.term) + " in " + to_string(c.env);

    auto at = b.typecheck(c.env, b.ateb(c.term, c.env));
    bool typed = at && *at == *a;
    r.add("typability", typed ? "ok" : (at ? "type changed" : "untypable"), typed);

    auto tr = reachable(b.sys, b.ateb(c.term, std::nullopt), c.term, b.beta,
                        b.expansion_depth(c.term));
    bool expanded = tr && replay(b.sys, *tr).ok;
    if (tr && audit) audit->record(b.sys, *tr, rep.pipeline + " " + r.term);
    r.add("expansion", expanded ? "ok(" + std::to_string(tr->length()) + ")" : "not found",
          expanded);

    auto v = is_sn(b.sys, c.term, budget);
    std::string sn = detail::sn_text(v.proved(), v.max_depth, v.visited);
    if (!v.proved() && expanded && b.pure_sn && b.pure_sn(c.term, budget))
      sn += " while Ateb(t) is SN";
    r.add("sn", sn, v.proved());
    rep.add(std::move(r));
  }
  return rep;
}

// Properties 3 to 5: the initialization witness, then every reduction path
// of length <= path_len from t driven alongside a u with u <. t, starting
// from u = t and from u = the witness.  With sn_budget set, the witness is
// also probed for SN and the strict steps along each path are bounded by
// its longest reduction.
template <RewriteSystem S, class Env>
Report check_simulation(const Bundle<S, Env>& b,
                        const std::vector<Case<typename S::Term, Env>>& cases,
                        std::size_t path_len, TraceAudit* audit = nullptr,
                        std::optional<std::size_t> sn_budget = std::nullopt) {
  using ateb::to_string;
  using T = typename S::Term;
  b.check_split();
  Report rep;
  rep.pipeline = "simulation/" + b.name;
  for (const auto& c : cases) {
    auto a = b.typecheck(c.env, c.term);
    if (!a) continue;
    Record r;
    r.term = b.show(c.term) + " in " + to_string(c.env);
    std::string where = rep.pipeline + " " + r.term;

    auto w = b.init(c.term, c.env);
    if (!w) {
      r.add("init", "no witness", false);
      rep.add(std::move(r));
      continue;
    }
    if (audit) audit->record(b.sys, *w, where);
    bool init_ok = w->start == b.ateb(c.term, c.env) && replay(b.sys, *w).ok &&
                   detail::only_rules(*w, b.sys, b.strict) && b.lessdot(w->end(), c.term);
    r.add("init", init_ok ? "ok(" + std::to_string(w->length()) + ")" : "invalid", init_ok);

    std::optional<std::size_t> bound;
    if (sn_budget) {
      auto v = is_sn(b.sys, w->end(), *sn_budget);
      r.add("sn(u)", detail::sn_text(v.proved(), v.max_depth, v.visited), v.proved());
      if (v.proved()) bound = v.max_depth;
    }

    std::string problem;
    std::size_t paths = 0, steps = 0;
    // Depth-first over reduction paths; strict counts strict steps so far,
    // checked against the bound only on the chain starting at the witness.
    std::function<void(const T&, const T&, std::size_t, std::size_t, bool)> drive =
        [&](const T& t, const T& u, std::size_t depth, std::size_t strict, bool bounded) {
          if (!problem.empty()) return;
          auto rs = depth < path_len ? redexes(b.sys, t, RuleSet::all())
                                     : std::vector<Redex<T>>{};
          if (rs.empty()) ++paths;
          for (const auto& rx : rs) {
            auto st = to_step(b.sys, t, rx);
            ++steps;
            auto sim = b.simulate(st, u);
            std::string at = st.rule + " step " + b.show(t) + " -> " + b.show(st.after) +
                             " with u = " + b.show(u);
            if (!sim) {
              problem = "no simulation of " + at;
              return;
            }
            if (audit) audit->record(b.sys, *sim, where);
            bool is_strict = b.strict.has(rx.rule);
            bool shape = is_strict ? sim->length() >= 1 && sim->length() <= b.strict_max &&
                                         detail::only_rules(*sim, b.sys, b.strict)
                                   : detail::only_rules(*sim, b.sys, b.lax);
            if (!(sim->start == u) || !replay(b.sys, *sim).ok || !shape ||
                !b.lessdot(sim->end(), st.after)) {
              problem = "bad simulation of " + at;
              return;
            }
            std::size_t s2 = strict + (is_strict ? 1 : 0);
            if (bounded && bound && s2 > *bound) {
              problem = "more strict steps than the longest reduction of the witness at " + at;
              return;
            }
            drive(st.after, sim->end(), depth + 1, s2, bounded);
          }
        };
    drive(c.term, c.term, 0, 0, false);
    if (init_ok) drive(c.term, w->end(), 0, 0, true);
    r.add("paths", problem.empty() ? "ok(" + std::to_string(paths) + ")" : problem,
          problem.empty());
    rep.count("paths", paths);
    rep.count("steps", steps);
    rep.add(std::move(r));
  }
  return rep;
}

}  // namespace ateb::technique
