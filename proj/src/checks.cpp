#include "ateb/checks.hpp"

#include "ateb/bundles.hpp"

#include "ateb/lambda_sigma.hpp"
#include "ateb/lambda_sigma_n.hpp"
#include "ateb/lambda_upsilon.hpp"
#include "ateb/lambda_wsn.hpp"
#include "ateb/lambda_x.hpp"
#include "ateb/mu_mutilde.hpp"
#include "ateb/technique.hpp"

namespace ateb::checks {

void Result::fail(const std::string& what) {
  pass = false;
  if (counterexamples.size() < 5) counterexamples.push_back(what);
}

namespace {

using technique::Bundle;
using technique::Case;
using technique::Report;

const std::vector<Name> kNames{"x", "y", "z"};
constexpr std::size_t kBudget = 100000;
constexpr std::size_t kPath = 4;

int size_of(const Options& o, int dflt) { return o.size.value_or(dflt); }

Result from_report(const Report& rep) {
  Result r;
  r.cases = rep.terms;
  r.detail = rep.summary();
  for (const auto& rec : rep.failed) r.fail(rec.line());
  r.pass = rep.ok();
  return r;
}

// ------------------------------------------------------------------- lx


Result lx_expansion(const Options& o) {
  lx::System sys;
  RuleSet beta = rule_set(sys, {"Beta"});
  Result r;
  lx::enumerate(size_of(o, 7), kNames, [&](const lx::Term& t) {
    ++r.cases;
    std::size_t n = lx::count_substs(t);
    auto tr = reachable(sys, lx::embed(lx::ateb_of(t)), t, beta, n);
    if (tr && o.audit) o.audit->record(sys, *tr, "lx:expansion " + lx::to_string(t));
    if (!tr || tr->length() != n || !replay(sys, *tr).ok) r.fail(lx::to_string(t));
  });
  r.detail = std::to_string(r.cases) + " terms, Beta-only traces of length #Subst";
  return r;
}

Result lx_direct(const Options& o) {
  std::vector<Case<lx::Term, NamedEnv>> cases;
  lx::enumerate(size_of(o, 6), kNames, [&](const lx::Term& t0) {
    auto envs = sample_named_envs(lx::free_vars(t0));
    lx::annotate_all(t0, [&](const lx::Term& t) {
      for (const auto& env : envs)
        if (lx::typecheck(env, t)) cases.push_back({t, env});
    });
  });
  return from_report(technique::check_direct(lx_bundle(), cases, o.budget.value_or(kBudget),
                                             o.audit));
}

Result omega(const Options& o) {
  lx::System sys;
  lx::Term w = lx::parse("(\\x. x x) (\\x. x x)");
  auto v = is_sn(sys, w, o.budget.value_or(kBudget));
  Result r;
  r.cases = 1;
  if (v.proved()) r.fail("ProvedSN reported for " + lx::to_string(w));
  if (!v.loop) r.fail("no loop witness for " + lx::to_string(w));
  if (v.loop) {
    if (!replay(sys, *v.loop).ok) r.fail("loop witness does not replay");
    if (o.audit) o.audit->record(sys, *v.loop, "kernel:omega");
  }
  r.detail = std::string(v.proved() ? "ProvedSN" : "BudgetExhausted") + ", loop of length " +
             (v.loop ? std::to_string(v.loop->length()) : std::string("-"));
  return r;
}

// ------------------------------------------------------------------- lu

// Substitution-free terms over indices 1..max_index.
std::vector<lu::Term> lu_pure_terms(int max_size, std::uint32_t max_index) {
  std::vector<std::vector<lu::Term>> by(static_cast<std::size_t>(max_size) + 1);
  for (std::uint32_t n = 1; n <= max_index; ++n) by[1].push_back(lu::idx(n));
  for (int k = 2; k <= max_size; ++k) {
    auto& out = by[static_cast<std::size_t>(k)];
    for (const auto& b : by[static_cast<std::size_t>(k - 1)]) out.push_back(lu::lam(b));
    for (int a = 1; a + 1 < k; ++a)
      for (const auto& f : by[static_cast<std::size_t>(a)])
        for (const auto& g : by[static_cast<std::size_t>(k - 1 - a)])
          out.push_back(lu::app(f, g));
  }
  std::vector<lu::Term> all;
  for (auto& v : by) all.insert(all.end(), v.begin(), v.end());
  return all;
}

Result lu_funshift_succ(const Options& o) {
  Result r;
  // Indices n, m <= 12 with i, j <= 8, then small terms over 1..8, i, j <= 4.
  auto check = [&](const lu::Term& t, const lu::Term& u, std::size_t i, std::size_t j) {
    ++r.cases;
    if (lu::fshift(i, t) == lu::fshift(j, u) && !(lu::fshift(i + 1, t) == lu::fshift(j + 1, u)))
      r.fail(lu::to_string(t) + ", " + lu::to_string(u) + ", i=" + std::to_string(i) +
             ", j=" + std::to_string(j));
  };
  for (std::uint32_t n = 1; n <= 12; ++n)
    for (std::uint32_t m = 1; m <= 12; ++m)
      for (std::size_t i = 0; i <= 8; ++i)
        for (std::size_t j = 0; j <= 8; ++j) check(lu::idx(n), lu::idx(m), i, j);
  auto ts = lu_pure_terms(size_of(o, 3), 8);
  for (std::size_t i = 0; i <= 4; ++i)
    for (std::size_t j = 0; j <= 4; ++j)
      for (const auto& t : ts)
        for (const auto& u : ts) check(t, u, i, j);
  r.detail = std::to_string(r.cases) + " instances";
  return r;
}

Result lu_comp(const Options&, bool cons) {
  Result r;
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::uint32_t n = 2; n <= 12; ++n) {
      ++r.cases;
      lu::Term lhs = cons ? lu::flift_cons(i + 1, lu::idx(n)) : lu::flift_shift(i + 1, lu::idx(n));
      lu::Term rhs = cons ? lu::flift_shift(1, lu::flift_cons(i, lu::idx(n - 1)))
                          : lu::fshift(1, lu::flift_shift(i, lu::idx(n - 1)));
      if (!(lhs == rhs)) r.fail("n=" + std::to_string(n) + ", i=" + std::to_string(i));
    }
  r.detail = std::to_string(r.cases) + " instances, 2 <= n <= 12, i <= 8";
  return r;
}

Result lu_commute(const Options& o, int which) {
  Result r;
  lu::enumerate(size_of(o, 6), [&](const lu::Term& t) {
    if (!lu::eligible(t)) return;
    ++r.cases;
    for (std::size_t i = 0; i <= 3; ++i) {
      auto f = [&](const lu::Term& x) {
        return which == 0 ? lu::flift_shift(i, x)
                          : which == 1 ? lu::flift_cons(i, x) : lu::fshift(i, x);
      };
      if (!(lu::overline(f(t)) == f(lu::overline(t))))
        r.fail(lu::to_string(t) + ", i=" + std::to_string(i));
    }
  });
  r.detail = std::to_string(r.cases) + " eligible terms, i <= 3";
  return r;
}

Result all_of(const Options& o, std::initializer_list<const char*> ids) {
  Result r;
  for (const char* id : ids) {
    Result x = find(id)->run(o);
    r.cases += x.cases;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string(id) + ": " + x.detail;
    for (const auto& c : x.counterexamples) r.fail(std::string(id) + ": " + c);
    r.pass = r.pass && x.pass;
  }
  return r;
}

Result lu_init(const Options& o) {
  lu::System sys;
  Result r;
  lu::enumerate(size_of(o, 5), [&](const lu::Term& t) {
    ++r.cases;
    auto w = lu::init_witness(t);
    if (o.audit) o.audit->record(sys, w.trace, "lu:init " + lu::to_string(t));
    bool ok = w.trace.start == lu::ateb_term(t) && w.trace.end() == w.u &&
              trace_only_uses(sys, w.trace, {"B"}) && replay(sys, w.trace).ok &&
              lu::lessdot(w.u, t);
    if (!ok) r.fail(lu::to_string(t));
  });
  r.detail = std::to_string(r.cases) + " terms, B-only witnesses u <. t";
  return r;
}


Result lu_simulate(const Options& o) {
  std::vector<Case<lu::Term, DbEnv>> cases;
  auto envs = sample_db_envs(2);
  lu::enumerate(size_of(o, 4), [&](const lu::Term& t0) {
    lu::annotate_all(t0, [&](const lu::Term& t) {
      for (const auto& env : envs)
        if (lu::typecheck(env, t)) cases.push_back({t, env});
    });
  });
  return from_report(
      technique::check_simulation(lu_bundle(), cases, o.path.value_or(kPath), o.audit));
}

// ------------------------------------------------------------------- ls

Result ls_sigma_terminates(const Options& o) {
  Result r;
  ls::enumerate(size_of(o, 6), 3, [&](const ls::Term& t) {
    ++r.cases;
    try {
      ls::sigma(t);
    } catch (const FuelExhausted&) {
      r.fail(ls::to_string(t));
    }
  });
  r.detail = std::to_string(r.cases) + " terms, numerals 1..3, fuel 10n^2+100";
  return r;
}

Result ls_init_id(const Options& o) {
  Result r;
  ls::enumerate(size_of(o, 5), 3, [&](const ls::Term& t) {
    ++r.cases;
    if (!(ls::sigma(t) == ls::sigma(ls::clo(t, ls::id())))) r.fail(ls::to_string(t));
  });
  r.detail = std::to_string(r.cases) + " terms";
  return r;
}

Result ls_init_shift(const Options& o) {
  Result r;
  ls::enumerate(size_of(o, 6), 3, [&](const ls::Term& t) {
    if (!ls::substitution_free(t)) return;
    ++r.cases;
    if (!(ls::sigma(ls::upshift(0, 1, t)) == ls::sigma(ls::clo(t, ls::shift()))))
      r.fail(ls::to_string(t));
    for (std::size_t i = 1; i <= 2; ++i)
      if (!(ls::sigma(ls::upshift(i, 1, t)) == ls::sigma(ls::clo(t, ls::lifted_shift(i)))))
        r.fail(ls::to_string(t) + ", i=" + std::to_string(i));
  });
  r.detail = std::to_string(r.cases) + " substitution-free terms, lifted i <= 2";
  return r;
}

Result ls_comp_up(const Options& o) {
  Result r;
  ls::enumerate(size_of(o, 6), 3, [&](const ls::Term& t) {
    if (ls::has_shift(t)) return;
    ++r.cases;
    for (std::size_t i = 0; i <= 3; ++i)
      for (std::size_t j = 0; j <= 3; ++j)
        for (std::size_t l = 0; l <= 3; ++l)
          if (!(ls::upshift(i, j, ls::upshift(i, l, t)) == ls::upshift(i, j + l, t)))
            r.fail(ls::to_string(t) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                   ", l=" + std::to_string(l));
  });
  r.detail = std::to_string(r.cases) + " shift-free terms, i, j, l <= 3";
  return r;
}

Result ls_init(const Options& o) {
  ls::System sys;
  Result r;
  ls::enumerate(size_of(o, 4), 3, [&](const ls::Term& t) {
    ++r.cases;
    auto w = ls::init_witness(t);
    if (!w) {
      r.fail("no witness: " + ls::to_string(t));
      return;
    }
    if (o.audit) o.audit->record(sys, w->trace, "ls:init " + ls::to_string(t));
    bool ok = w->trace.start == ls::ateb_term(t) && w->trace.end() == w->u &&
              trace_only_uses(sys, w->trace, {"B"}) && replay(sys, w->trace).ok &&
              ls::lessdot(w->u, t);
    if (!ok) r.fail(ls::to_string(t));
  });
  r.detail = std::to_string(r.cases) + " terms, B-only witnesses u <. t";
  return r;
}


std::vector<Case<ls::Term, DbEnv>> ls_cases(int size) {
  std::vector<Case<ls::Term, DbEnv>> cases;
  auto envs = sample_db_envs(2);
  ls::enumerate(size, 3, [&](const ls::Term& t0) {
    ls::annotate_all(t0, [&](const ls::Term& t) {
      for (const auto& env : envs)
        if (ls::typecheck(env, t)) cases.push_back({t, env});
    });
  });
  return cases;
}

Result ls_simulate(const Options& o) {
  return from_report(technique::check_simulation(ls_bundle(), ls_cases(size_of(o, 4)),
                                                 o.path.value_or(kPath), o.audit));
}

Result ls_sn_transfer(const Options& o) {
  return from_report(technique::check_simulation(ls_bundle(), ls_cases(size_of(o, 4)),
                                                 o.path.value_or(kPath), o.audit,
                                                 o.budget.value_or(kBudget)));
}

// ------------------------------------------------------------------ lsn

Result lsn_init(const Options& o) {
  lsn::System sys;
  Result r;
  lsn::enumerate(size_of(o, 4), kNames, [&](const lsn::Term& t) {
    ++r.cases;
    auto w = lsn::init_witness(t);
    if (!w) {
      r.fail("no witness: " + lsn::to_string(t));
      return;
    }
    if (o.audit) o.audit->record(sys, w->trace, "lsn:init " + lsn::to_string(t));
    bool ok = w->trace.start == lsn::ateb_term(t) && w->trace.end() == w->u &&
              trace_only_uses(sys, w->trace, {"B"}) && replay(sys, w->trace).ok &&
              lsn::lessdot(w->u, t);
    if (!ok) r.fail(lsn::to_string(t));
  });
  r.detail = std::to_string(r.cases) + " terms, B-only witnesses u <. t";
  return r;
}


Result lsn_simulate(const Options& o) {
  std::vector<Case<lsn::Term, NamedEnv>> cases;
  lsn::enumerate(size_of(o, 4), kNames, [&](const lsn::Term& t0) {
    auto envs = sample_named_envs(lsn::free_vars(t0));
    lsn::annotate_all(t0, [&](const lsn::Term& t) {
      for (const auto& env : envs)
        if (lsn::typecheck(env, t)) cases.push_back({t, env});
    });
  });
  return from_report(
      technique::check_simulation(lsn_bundle(), cases, o.path.value_or(kPath), o.audit));
}

// ----------------------------------------------------------------- lwsn

Result lwsn_expansion(const Options& o) {
  lw::System sys;
  Result r;
  lw::enumerate(size_of(o, 5), kNames, [&](const lw::Term& t) {
    ++r.cases;
    lw::Term a = lw::ateb_term(t);
    auto tr = lw::expansion_trace(t);
    if (o.audit) o.audit->record(sys, tr, "lwsn:expansion " + lw::to_string(t));
    bool ok = lw::substitution_free(a) && tr.start == a && tr.end() == t &&
              trace_only_uses(sys, tr, {"b", "empty", "d"}) && replay(sys, tr).ok;
    if (!ok) r.fail(lw::to_string(t));
  });
  r.detail = std::to_string(r.cases) + " terms, traces over {b, empty, d}";
  return r;
}

Result lwsn_typability(const Options& o) {
  Result r;
  std::size_t scoped = 0;
  // Typing enforces exactly the set conditions well_scoped checks, so a
  // term that is not well scoped in the domain it needs is untypable.
  lw::enumerate(size_of(o, 5), kNames, [&](const lw::Term& t0) {
    NameSet dom = lw::required_vars(t0);
    if (!lw::well_scoped(dom, t0)) return;
    ++scoped;
    auto envs = sample_named_envs(dom);
    lw::annotate_all(t0, [&](const lw::Term& t) {
      for (const auto& env : envs) {
        auto a = lw::typecheck(env, t);
        if (!a) continue;
        ++r.cases;
        auto b = lw::typecheck(env, lw::ateb_term(t, env));
        if (!b || *b != *a) r.fail(lw::to_string(t) + " in " + to_string(env));
      }
    });
  });
  r.detail = std::to_string(r.cases) + " typed terms (" + std::to_string(scoped) +
             " well-scoped shapes)";
  return r;
}

// ------------------------------------------------------------------ mmt

const std::vector<Name> kMmtVars{"x", "y"};
const std::vector<Name> kMmtCovars{"a", "b"};

// Chain length by the sort of the body and of the source.
std::size_t mmt_chain(const mmt::Term& s) {
  bool co = mmt::is_covar(s.name());
  switch (mmt::sort_of(s.kid(0))) {
    case mmt::Sort::Command:
      return 1;
    case mmt::Sort::Term:
      return co ? 4 : 5;
    case mmt::Sort::Context:
      return co ? 5 : 4;
  }
  return 0;
}

std::size_t mmt_expected(const mmt::Term& t) {
  std::size_t n = t.kind() == mmt::Kind::Sub ? mmt_chain(t) : 0;
  for (const auto& k : t.kids()) n += mmt_expected(k);
  return n;
}

Result mmt_expansion(const Options& o) {
  mmt::System sys;
  Result r;
  mmt::enumerate(size_of(o, 5), kMmtVars, kMmtCovars, [&](const mmt::Term& t) {
    ++r.cases;
    Trace<mmt::Term> tr;
    try {
      tr = mmt::expansion_trace(t);
    } catch (const PreconditionError& e) {
      r.fail(mmt::to_string(t) + ": " + e.what());
      return;
    }
    if (o.audit) o.audit->record(sys, tr, "mmt:expansion " + mmt::to_string(t));
    bool ok = tr.start == mmt::ateb_term(t) && mmt::substitution_free(tr.start) &&
              tr.length() == mmt_expected(t) && replay(sys, tr).ok &&
              mmt::alpha_equal(tr.end(), t);
    if (!ok) r.fail(mmt::to_string(t));
  });
  r.detail = std::to_string(r.cases) + " subjects, proof rule chains replayed (lemmas only)";
  return r;
}

Result mmt_typability(const Options& o) {
  Result r;
  mmt::enumerate(size_of(o, 5), kMmtVars, kMmtCovars, [&](const mmt::Term& t0) {
    auto envs = sample_named_envs(mmt::free_vars(t0));
    mmt::annotate_all(t0, [&](const mmt::Term& t) {
      for (const auto& all : envs) {
        TwoSidedEnv env;
        for (const auto& [x, a] : all) (mmt::is_covar(x) ? env.right : env.left)[x] = a;
        auto a = mmt::typecheck(env, t);
        if (!a) continue;
        ++r.cases;
        auto b = mmt::typecheck(env, mmt::ateb_term(t, env));
        if (!b || *b != *a) r.fail(mmt::to_string(t) + " in " + to_string(env));
      }
    });
  });
  r.detail = std::to_string(r.cases) + " typed subjects (lemmas only)";
  return r;
}

// --------------------------------------------------------------- kernel

Result kernel_traces(const Options& o) {
  TraceAudit audit;
  Options inner = o;
  inner.audit = &audit;
  Result r;
  for (const auto& id : trace_producers()) {
    Result x = find(id)->run(inner);
    if (!x.pass) r.fail(id + " itself fails");
  }
  r.cases = audit.traces;
  r.detail = std::to_string(audit.traces) + " traces, " + std::to_string(audit.steps) +
             " steps, " + std::to_string(audit.mutations) + " corruptions, " +
             std::to_string(audit.undetected) + " unnoticed";
  if (!audit.ok()) r.fail(audit.first_problem);
  if (o.audit) {
    o.audit->traces += audit.traces;
    o.audit->steps += audit.steps;
    o.audit->mutations += audit.mutations;
  }
  return r;
}

std::vector<Check> build() {
  using O = const Options&;
  return {
      {"lx:expansion", "Ateb(t) ->Beta* t in exactly #Subst(t) steps", 7, lx_expansion},
      {"lx:direct", "typed lx terms: Ateb typable, expansion, SN", 6, lx_direct},
      {"lx:typability", "same run as lx:direct", 6, lx_direct},
      {"lx:sn", "same run as lx:direct", 6, lx_direct},
      {"lu:funshift+1", "fshift(i,t) = fshift(j,u) implies the +1 case", 3, lu_funshift_succ},
      {"lu:funshift-comp", "flift_shift(i+1,n) = fshift(1, flift_shift(i,n-1))", 0,
       [](O o) { return lu_comp(o, false); }},
      {"lu:funcons-comp", "flift_cons(i+1,n) = flift_shift(1, flift_cons(i,n-1))", 0,
       [](O o) { return lu_comp(o, true); }},
      {"lu:fun-props", "the three re-indexer properties", 3,
       [](O o) { return all_of(o, {"lu:funshift+1", "lu:funshift-comp", "lu:funcons-comp"}); }},
      {"lu:commute-ol-fls", "overline commutes with flift_shift", 6,
       [](O o) { return lu_commute(o, 0); }},
      {"lu:commute-ol-flc", "overline commutes with flift_cons", 6,
       [](O o) { return lu_commute(o, 1); }},
      {"lu:commute-ol-fs", "overline commutes with fshift", 6,
       [](O o) { return lu_commute(o, 2); }},
      {"lu:commute", "the three commutation lemmas", 6,
       [](O o) {
         return all_of(o, {"lu:commute-ol-fls", "lu:commute-ol-flc", "lu:commute-ol-fs"});
       }},
      {"lu:init", "initialization witnesses", 5, lu_init},
      {"lu:simulate", "simulation chains from typed terms", 4, lu_simulate},
      {"ls:sigma-terminates", "sigma-normalization within fuel", 6, ls_sigma_terminates},
      {"ls:init-id", "sigma(t) = sigma(t[id])", 5, ls_init_id},
      {"ls:init-shift", "sigma(Up(0,1,t)) = sigma(t[!]), lifted forms", 6, ls_init_shift},
      {"ls:comp-up", "Up(i,j,Up(i,l,t)) = Up(i,j+l,t)", 6, ls_comp_up},
      {"ls:init", "initialization witnesses", 4, ls_init},
      {"ls:simulate", "simulation chains from typed terms", 4, ls_simulate},
      {"ls:sn-transfer", "simulation chains bounded by the witness's SN depth", 4,
       ls_sn_transfer},
      {"lsn:init", "initialization witnesses", 4, lsn_init},
      {"lsn:simulate", "simulation chains from typed terms", 4, lsn_simulate},
      {"lwsn:expansion", "Ateb(t) ->{b,empty,d}* t", 5, lwsn_expansion},
      {"lwsn:typability", "Ateb preserves strict typing", 5, lwsn_typability},
      {"mmt:expansion", "proof rule chains replay and land on t", 5, mmt_expansion},
      {"mmt:typability", "Ateb preserves the judgment", 5, mmt_typability},
      {"kernel:omega", "Omega is never proved SN and yields a loop", 0, omega},
      {"kernel:traces", "every trace replays; corrupted steps are noticed", 0, kernel_traces},
  };
}

}  // namespace

technique::Bundle<lx::System, NamedEnv> lx_bundle() {
  technique::Bundle<lx::System, NamedEnv> b;
  b.name = "lx";
  b.typecheck = [](const NamedEnv& e, const lx::Term& t) { return lx::typecheck(e, t); };
  b.ateb = [](const lx::Term& t, const std::optional<NamedEnv>& e) {
    return lx::embed(lx::ateb_of(t, e));
  };
  b.beta = rule_set(b.sys, {"Beta"});
  b.expansion_depth = [](const lx::Term& t) { return lx::count_substs(t); };
  b.show = [](const lx::Term& t) { return lx::to_string(t); };
  b.pure_sn = [](const lx::Term& t, std::size_t budget) {
    return is_sn(pure::NamedSystem{}, lx::ateb_of(t), budget).proved();
  };
  return b;
}

technique::Bundle<lu::System, DbEnv> lu_bundle() {
  technique::Bundle<lu::System, DbEnv> b;
  b.name = "lu";
  b.typecheck = [](const DbEnv& e, const lu::Term& t) { return lu::typecheck(e, t); };
  b.ateb = [](const lu::Term& t, const std::optional<DbEnv>& e) { return lu::ateb_term(t, e); };
  b.beta = b.sys.b_rules();
  b.show = [](const lu::Term& t) { return lu::to_string(t); };
  b.strict = b.sys.b_rules();
  b.lax = b.sys.r2_rules();
  b.lessdot = [](const lu::Term& u, const lu::Term& t) { return lu::lessdot(u, t); };
  b.init = [](const lu::Term& t, const std::optional<DbEnv>& e) {
    return std::optional<Trace<lu::Term>>(lu::init_witness(t, e).trace);
  };
  b.simulate = [](const ReductionStep<lu::Term>& st, const lu::Term& u) {
    return lu::simulate_step(st, u);
  };
  return b;
}

technique::Bundle<ls::System, DbEnv> ls_bundle() {
  technique::Bundle<ls::System, DbEnv> b;
  b.name = "ls";
  b.typecheck = [](const DbEnv& e, const ls::Term& t) { return ls::typecheck(e, t); };
  b.ateb = [](const ls::Term& t, const std::optional<DbEnv>& e) { return ls::ateb_term(t, e); };
  b.beta = b.sys.b_rules();
  b.show = [](const ls::Term& t) { return ls::to_string(t); };
  b.strict = b.sys.b_rules();
  b.lax = b.sys.sigma_rules();
  b.lessdot = [](const ls::Term& u, const ls::Term& t) { return ls::lessdot(u, t); };
  b.init = [](const ls::Term& t, const std::optional<DbEnv>& e) -> std::optional<Trace<ls::Term>> {
    auto w = ls::init_witness(t, e);
    if (!w) return std::nullopt;
    return w->trace;
  };
  b.simulate = [](const ReductionStep<ls::Term>& st, const ls::Term& u) {
    return ls::simulate_step(st, u);
  };
  return b;
}

technique::Bundle<lsn::System, NamedEnv> lsn_bundle() {
  technique::Bundle<lsn::System, NamedEnv> b;
  b.name = "lsn";
  b.typecheck = [](const NamedEnv& e, const lsn::Term& t) { return lsn::typecheck(e, t); };
  b.ateb = [](const lsn::Term& t, const std::optional<NamedEnv>& e) {
    return lsn::ateb_term(t, e);
  };
  b.beta = b.sys.b_rules();
  b.show = [](const lsn::Term& t) { return lsn::to_string(t); };
  b.strict = b.sys.b_rules();
  b.lax = b.sys.sigma_rules();
  b.lessdot = [](const lsn::Term& u, const lsn::Term& t) { return lsn::lessdot(u, t); };
  b.init = [](const lsn::Term& t,
              const std::optional<NamedEnv>& e) -> std::optional<Trace<lsn::Term>> {
    auto w = lsn::init_witness(t, e);
    if (!w) return std::nullopt;
    return w->trace;
  };
  b.simulate = [](const ReductionStep<lsn::Term>& st, const lsn::Term& u) {
    return lsn::simulate_step(st, u);
  };
  return b;
}

const std::vector<Check>& registry() {
  static const std::vector<Check> r = build();
  return r;
}

const Check* find(std::string_view id) {
  for (const auto& c : registry())
    if (c.id == id) return &c;
  return nullptr;
}

const std::vector<std::string>& trace_producers() {
  static const std::vector<std::string> ids{
      "lx:expansion", "lx:direct",   "lu:init",        "lu:simulate",   "ls:init",
      "ls:simulate",  "lsn:init",    "lsn:simulate",   "lwsn:expansion", "mmt:expansion",
      "kernel:omega"};
  return ids;
}

}  // namespace ateb::checks
