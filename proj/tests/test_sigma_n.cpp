#include "doctest.h"

#include <map>

#include "ateb/lambda_sigma.hpp"
#include "ateb/lambda_sigma_n.hpp"

using namespace ateb;
using namespace ateb::lsn;

namespace {

const std::vector<Name> kPool{"x", "y", "z"};

Term step_with(const Term& t, const char* rule) {
  System sys;
  auto rs = redexes(sys, t, rule_set(sys, {rule}));
  REQUIRE(rs.size() == 1);
  return rs[0].result;
}
Term step_with(const std::string& src, const char* rule) { return step_with(parse(src), rule); }

// Oracle: the nameless reading of a named term, as a De Bruijn lambda-sigma
// term over the free-name list `names` (index 1 = names[0]).
ls::Term to_ls(const Term& t, const std::vector<Name>& names);

// Translates s under `names`; returns the translated substitution and the
// name list seen by the body.
std::pair<ls::Term, std::vector<Name>> to_ls_sub(const Term& s, const std::vector<Name>& names) {
  switch (s.kind()) {
    case Kind::Id:
      return {ls::id(), names};
    case Kind::Cons: {
      auto [rest, inner] = to_ls_sub(s.kid(1), names);
      inner.insert(inner.begin(), s.name());
      return {ls::cons(to_ls(s.kid(0), names), rest), inner};
    }
    case Kind::Comp: {
      auto [s2, mid] = to_ls_sub(s.kid(1), names);
      auto [s1, inner] = to_ls_sub(s.kid(0), mid);
      return {ls::comp(s1, s2), inner};
    }
    default:
      FAIL("not a substitution");
      return {};
  }
}

ls::Term to_ls(const Term& t, const std::vector<Name>& names) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = std::find(names.begin(), names.end(), t.name());
      REQUIRE(it != names.end());
      return ls::num(static_cast<std::uint32_t>(it - names.begin()) + 1);
    }
    case Kind::App:
      return ls::app(to_ls(t.kid(0), names), to_ls(t.kid(1), names));
    case Kind::Lam: {
      std::vector<Name> inner = names;
      inner.insert(inner.begin(), t.name());
      return ls::lam(to_ls(t.kid(0), inner), t.annot());
    }
    case Kind::Clo: {
      auto [s, inner] = to_ls_sub(t.kid(1), names);
      return ls::clo(to_ls(t.kid(0), inner), s);
    }
    default:
      FAIL("not a term");
      return {};
  }
}

// Every name of t, so that discarded substituends still translate.
std::vector<Name> name_list(const Term& t) { return all_names(t).items(); }

pure::Named beta_nf(const pure::Named& t) {
  auto r = normalize(pure::NamedSystem{}, t, RuleSet::all(), 10000, false);
  REQUIRE_FALSE(r.exhausted);
  return r.term;
}

}  // namespace

TEST_CASE("rule table examples") {
  CHECK(step_with("x[(y z/x) . id]", "VarCons1") == parse("y z"));
  CHECK(step_with("x[(z/y) . id]", "VarCons2") == parse("x[id]"));
  CHECK(step_with("x[id]", "VarId") == var("x"));
  CHECK(step_with("(\\x. x) y", "B") == parse("x[(y/x) . id]"));
  CHECK(step_with("(x y)[id]", "App") == parse("x[id] y[id]"));
  CHECK(step_with("x[id][id]", "Clos") == parse("x[id o id]"));
  CHECK(step_with(clo(var("x"), comp(id(), id())), "IdL") == parse("x[id]"));
  CHECK(step_with(clo(var("x"), parse_sub("((y/x) . id) o (z/y) . id")), "Map") ==
        clo(var("x"), parse_sub("(y[(z/y) . id]/x) . (id o (z/y) . id)")));
  CHECK(step_with(clo(var("x"), parse_sub("(id o id) o id")), "Ass") ==
        clo(var("x"), parse_sub("id o id o id")));
  // The binder is renamed away from every name in the redex.
  Term r = step_with("(\\x. x y)[(x/y) . id]", "Lambda");
  REQUIRE(r.kind() == Kind::Lam);
  CHECK(r.name() == "x1");
  CHECK(r == parse("\\x1. (x y)[(x1/x) . (x/y) . id]"));
}

TEST_CASE("print and parse round-trip") {
  std::size_t n = 0;
  enumerate(5, kPool, [&](const Term& t) {
    CHECK_MESSAGE(parse(to_string(t)) == t, to_string(t));
    ++n;
  });
  enumerate_subs(5, kPool,
                 [&](const Term& s) { CHECK_MESSAGE(parse_sub(to_string(s)) == s, to_string(s)); });
  CHECK(n > 1000);
  Term t = parse("\\x:i->i. x[((\\y:i. y)/z) . (id o id)]");
  CHECK(parse(to_string(t)) == t);
  CHECK_THROWS_AS(parse("id"), ParseError);
  CHECK_THROWS_AS(parse("x[(y/id) . id]"), ParseError);
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse("x[(y/x) . id]")) == NameSet{"y"});
  CHECK(free_vars(parse("(x z)[(y/x) . id]")) == NameSet{"y", "z"});
  CHECK(free_vars(parse("x[(y/z) . id]")) == NameSet{"x"});
  CHECK(free_vars(parse("x[((z/y) . id) o (x/z) . id]")) == NameSet{"x"});
  CHECK(free_vars(parse("x[(y/x) . id o (z/y) . id]")) == NameSet{"z"});
}

TEST_CASE("sigma normal forms") {
  Term n = sigma(parse("(\\x. x)[id]"));
  CHECK(pure::alpha_equal(to_pure(n), pure::parse_named("\\z. z")));
  CHECK(sigma_key(parse("x[id]")) == sigma_key(var("x")));
  CHECK(sigma_key(parse("(\\x. y)[(x/y) . id]")) == pure::alpha_key(pure::parse_named("\\z. x")));
  std::size_t m = 0;
  enumerate(6, kPool, [&](const Term& t) {
    CHECK_NOTHROW(sigma(t));
    ++m;
  });
  CHECK(m > 6000);
}

TEST_CASE("sigma steps never capture") {
  // Every sigma step keeps the nameless reading fixed up to sigma.
  System sys;
  std::size_t steps = 0;
  enumerate(6, kPool, [&](const Term& t) {
    auto names = name_list(t);
    auto ref = ls::sigma(to_ls(t, names));
    auto nf = normalize(sys, t, sys.sigma_rules(), sigma_fuel(t));
    REQUIRE_FALSE(nf.exhausted);
    for (const auto& st : nf.trace.steps) {
      ++steps;
      CHECK(free_vars(st.after).subset_of(free_vars(st.before)));
      CHECK_MESSAGE(ls::sigma(to_ls(st.after, names)) == ref, to_string(st.before));
    }
    CHECK(ls::to_pure(ref) == pure::to_db(to_pure(nf.term), names));
  });
  CHECK(steps > 1000);
}

TEST_CASE("ateb examples") {
  CHECK(pure::to_string(ateb_of(var("x"))) == "x");
  CHECK(pure::to_string(ateb_of(parse("x[(y/x) . id]"))) == "(\\x. x) y");
  Term t = parse("x[(y/x) . id]");
  Term s = parse("x[((y/x) . id) o (z/y) . id]");
  CHECK(ateb_of(s) == ateb_of(parse("x[(y/x) . id][(z/y) . id]")));
  CHECK(ateb_of(t) == ateb_of(clo(t, id())));
}

TEST_CASE("ateb and the calculus agree on normal forms") {
  std::size_t n = 0;
  enumerate(5, kPool, [&](const Term& t) {
    auto nf = normalize(System{}, t, RuleSet::all(), 1000, false);
    if (nf.exhausted) return;
    REQUIRE(substitution_free(nf.term));
    CHECK_MESSAGE(pure::alpha_equal(to_pure(nf.term), beta_nf(ateb_of(t))), to_string(t));
    ++n;
  });
  CHECK(n > 1000);
}

TEST_CASE("ateb preserves types") {
  std::size_t typed = 0;
  auto envs = sample_named_envs(NameSet{"x", "y"});
  enumerate(5, {"x", "y"}, [&](const Term& t0) {
    annotate_all(t0, [&](const Term& t) {
      for (const auto& env : envs) {
        auto a = typecheck(env, t);
        if (!a) continue;
        ++typed;
        auto b = pure::typecheck(env, ateb_of(t, env));
        CHECK_MESSAGE(b, to_string(t) << " in " << to_string(env));
        if (b) CHECK(*b == *a);
      }
    });
  });
  CHECK(typed > 1000);
}

TEST_CASE("skeleton order") {
  CHECK(lessdot(parse("\\x. x"), parse("(\\x. x)[id]")));
  CHECK(preceq(parse("x[(y/x) . id]"), parse("x[(y/x) . id][(z/y) . id]")));
  CHECK_FALSE(preceq(parse("\\x. x"), parse("(\\x. x)[((\\y. y)/z) . id]")));
  CHECK_FALSE(potentially_redexable(parse_sub("(x/y) . id")));
  CHECK(potentially_redexable(parse_sub("(x y/y) . id")));
  enumerate(4, kPool, [](const Term& t) { CHECK(lessdot(t, t)); });
}

TEST_CASE("sigma-equal closures agree on every cons") {
  // Group sigma-normal (t, s, x) by the sigma-normal form of t[(w/x) . s],
  // w fresh; within a group t[(u/x) . s] has one sigma-normal form.
  std::vector<Term> ts, ss;
  std::map<std::string, bool> seen;
  enumerate(4, kPool, [&](const Term& t) {
    Term n = sigma(t);
    if (seen.emplace("t" + to_string(n), true).second) ts.push_back(n);
  });
  enumerate_subs(4, kPool, [&](const Term& s) {
    Term n = sigma(s);
    if (seen.emplace("s" + to_string(n), true).second) ss.push_back(n);
  });
  const Term us[] = {var("y"), parse("x z"), parse("\\y. y x")};
  std::map<std::string, std::vector<std::string>> groups;
  std::size_t bad = 0, triples = 0;
  for (const auto& t : ts)
    for (const auto& s : ss)
      for (const auto& x : kPool) {
        ++triples;
        std::string k = x + "|" + sigma_key(clo(t, cons(var("w"), x, s)));
        std::vector<std::string> vals;
        for (const auto& u : us) vals.push_back(sigma_key(clo(t, cons(u, x, s))));
        auto [it, fresh] = groups.emplace(k, vals);
        if (!fresh && it->second != vals) ++bad;
      }
  CHECK(triples > 1000);
  CHECK(bad == 0);
}

TEST_CASE("initialization witnesses") {
  System sys;
  auto w = init_witness(parse("x[(y/x) . id]"));
  REQUIRE(w);
  CHECK(w->u == parse("x[(y/x) . id]"));
  CHECK(w->trace.start == app(lam("x", var("x")), var("y")));
  CHECK(w->trace.length() == 1);
  auto w2 = init_witness(parse("(\\x. x)[id]"));
  REQUIRE(w2);
  CHECK(w2->u == parse("\\x. x"));
  CHECK(w2->trace.length() == 0);
  CHECK_FALSE(init_witness(parse("x[(y/x) . (z/y) . id]")));

  std::size_t n = 0, gaps = 0;
  enumerate(5, kPool, [&](const Term& t) {
    auto x = init_witness(t);
    if (!x) {
      ++gaps;
      return;
    }
    ++n;
    CHECK(x->trace.start == ateb_term(t));
    CHECK(x->trace.end() == x->u);
    CHECK(trace_only_uses(sys, x->trace, {"B"}));
    auto rp = replay(sys, x->trace);
    CHECK_MESSAGE(rp.ok, to_string(t) << ": " << rp.reason);
    CHECK_MESSAGE(lessdot(x->u, t), to_string(t) << " <- " << to_string(x->u));
  });
  CHECK(n > 1000);
  CHECK(gaps == 0);
}

TEST_CASE("simulation examples") {
  System sys;
  Term t = parse("(\\x. x) y");
  auto st = to_step(sys, t, *first_redex(sys, t, sys.b_rules()));
  auto tr = simulate_step(st, t);
  REQUIRE(tr);
  CHECK(tr->end() == parse("x[(y/x) . id]"));
  CHECK(tr->length() == 1);

  Term t2 = parse("(\\x. x)[id]");
  auto st2 = to_step(sys, t2, *first_redex(sys, t2, sys.sigma_rules()));
  auto tr2 = simulate_step(st2, parse("\\x. x"));
  REQUIRE(tr2);
  CHECK(tr2->length() == 0);
}
