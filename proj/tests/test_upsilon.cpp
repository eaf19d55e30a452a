#include "doctest.h"

#include "ateb/lambda_upsilon.hpp"

using namespace ateb;
using namespace ateb::lu;

namespace {

Term step_with(const std::string& src, const char* rule) {
  System sys;
  auto rs = redexes(sys, parse(src), rule_set(sys, {rule}));
  REQUIRE(rs.size() == 1);
  return rs[0].result;
}

// Oracle for the re-indexers on indices, written against the index tables.
std::uint32_t oracle_ls(std::size_t i, std::uint32_t n) { return n > i ? n + 1 : n; }
std::uint32_t oracle_lc(std::size_t i, std::uint32_t n) {
  return n > i + 1 ? n : (n == i + 1 ? 1 : n + 1);
}

std::vector<Term> pure_terms(int max_size, std::uint32_t max_index) {
  std::vector<std::vector<Term>> by(static_cast<std::size_t>(max_size) + 1);
  for (std::uint32_t n = 1; n <= max_index; ++n) by[1].push_back(idx(n));
  for (int k = 2; k <= max_size; ++k) {
    auto& out = by[static_cast<std::size_t>(k)];
    for (const auto& b : by[static_cast<std::size_t>(k - 1)]) out.push_back(lam(b));
    for (int a = 1; a + 1 < k; ++a)
      for (const auto& f : by[static_cast<std::size_t>(a)])
        for (const auto& g : by[static_cast<std::size_t>(k - 1 - a)]) out.push_back(app(f, g));
  }
  std::vector<Term> all;
  for (auto& v : by) all.insert(all.end(), v.begin(), v.end());
  return all;
}

bool has_lam(const Term& t) {
  return has_kind<Kind>(t, [](Kind k) { return k == Kind::Lam; });
}

pure::Db beta_nf(const pure::Db& t) {
  auto r = normalize(pure::DbSystem{}, t, RuleSet::all(), 10000, false);
  REQUIRE_FALSE(r.exhausted);
  return r.term;
}

}  // namespace

TEST_CASE("rule table examples") {
  CHECK(to_string(step_with("1[^(!)]", "FVarLift")) == "1");
  CHECK(to_string(step_with("2[^(!)]", "RVarLift")) == "1[!][!]");
  CHECK(to_string(step_with("3[!]", "VarShift")) == "4");
  CHECK(to_string(step_with("(\\.1) 2", "B")) == "1[2/]");
  CHECK(to_string(step_with("(\\.1)[!]", "Lambda")) == "\\.1[^(!)]");
  CHECK(to_string(step_with("(1 2)[3/]", "App")) == "1[3/] 2[3/]");
  CHECK(to_string(step_with("1[\\.1/]", "FVar")) == "\\.1");
  CHECK(to_string(step_with("4[\\.1/]", "RVar")) == "3");
}

TEST_CASE("print and parse round-trip") {
  int n = 0;
  enumerate(5, [&](const Term& t) {
    CHECK(parse(to_string(t)) == t);
    ++n;
  });
  CHECK(n > 1000);
  Term t = parse("\\i->i.1 (2[^(^(3/))])");
  CHECK(parse(to_string(t)) == t);
  CHECK_THROWS_AS(parse("0"), ParseError);
  CHECK_THROWS_AS(parse("1[^(!]"), ParseError);
}

TEST_CASE("substitution typing") {
  Type i = Type::iota();
  auto a = typecheck_sub(DbEnv({i}), shift());
  REQUIRE(a);
  CHECK(a->empty());
  auto b = typecheck_sub(DbEnv{}, slash(parse("\\i.1")));
  REQUIRE(b);
  CHECK(*b == DbEnv({Type::arrow(i, i)}));
  auto c = typecheck(DbEnv({i}), idx(2));
  REQUIRE_FALSE(c);
  CHECK(c.error().kind == TypeErrorKind::Unbound);
}

TEST_CASE("literal lift typing rejects a lifted shift") {
  Type i = Type::iota();
  DbEnv env({i, i});
  Term t = parse("1[^(!)]");
  auto lit = typecheck(env, t);
  REQUIRE_FALSE(lit);
  CHECK(lit.error().kind == TypeErrorKind::SideCondition);
  auto gen = typecheck(env, t, LiftTyping::General);
  REQUIRE(gen);
  CHECK(*gen == i);
  // A lifted cons is accepted by both readings.
  CHECK(typecheck(DbEnv({i, i}), parse("2[^(1/)]")));
}

TEST_CASE("the literal lift rule is not preserved by the Lambda rule") {
  DbEnv env({Type::iota()});
  Term t = parse("(\\i.1)[!]");
  REQUIRE(typecheck(env, t));
  Term t2 = step_with("(\\i.1)[!]", "Lambda");
  CHECK_FALSE(typecheck(env, t2));
  auto gen = typecheck(env, t2, LiftTyping::General);
  REQUIRE(gen);
  CHECK(*gen == *typecheck(env, t));
}

TEST_CASE("re-indexer examples") {
  CHECK(flift_shift(2, idx(3)) == idx(4));
  CHECK(flift_shift(2, idx(2)) == idx(2));
  CHECK(flift_shift(0, lam(idx(1))) == lam(idx(1)));
  CHECK(fshift(3, idx(2)) == idx(5));
  CHECK(fshift(0, parse("\\.2 7")) == parse("\\.2 7"));
  CHECK(fshift(1, lam(idx(2))) == lam(idx(3)));
  CHECK(flift_cons(2, idx(3)) == idx(1));
  CHECK(flift_cons(2, idx(5)) == idx(5));
  CHECK(flift_cons(2, idx(1)) == idx(2));
  CHECK(flift_shift(0, parse("1[2/]")) == parse("1[3/]"));
  CHECK_THROWS_AS(flift_shift(0, parse("1[!]")), PreconditionError);
  CHECK_THROWS_AS(flift_cons(0, parse("1[^(2/)]")), PreconditionError);
  CHECK_THROWS_AS(fshift(1, parse("1[!]")), PreconditionError);
}

TEST_CASE("re-indexers agree with the index tables") {
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::uint32_t n = 1; n <= 12; ++n) {
      CHECK(flift_shift(i, idx(n)) == idx(oracle_ls(i, n)));
      CHECK(flift_cons(i, idx(n)) == idx(oracle_lc(i, n)));
      CHECK(fshift(i, idx(n)) == idx(n + static_cast<std::uint32_t>(i)));
    }
}

TEST_CASE("composition properties of the re-indexers") {
  std::size_t bad = 0;
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::uint32_t n = 2; n <= 12; ++n) {
      if (!(flift_shift(i + 1, idx(n)) == fshift(1, flift_shift(i, idx(n - 1))))) ++bad;
      if (!(flift_cons(i + 1, idx(n)) == flift_shift(1, flift_cons(i, idx(n - 1))))) ++bad;
    }
  CHECK(bad == 0);
}

TEST_CASE("shift injectivity step") {
  auto ts = pure_terms(3, 8);
  std::size_t premises = 0, bad = 0;
  for (std::size_t i = 0; i <= 4; ++i)
    for (std::size_t j = 0; j <= 4; ++j) {
      std::vector<Term> fi, fj;
      for (const auto& t : ts) {
        fi.push_back(fshift(i, t));
        fj.push_back(fshift(j, t));
      }
      for (std::size_t a = 0; a < ts.size(); ++a)
        for (std::size_t b = 0; b < ts.size(); ++b)
          if (fi[a] == fj[b]) {
            ++premises;
            if (!(fshift(i + 1, ts[a]) == fshift(j + 1, ts[b]))) ++bad;
          }
    }
  CHECK(premises > ts.size());
  CHECK(bad == 0);
}

TEST_CASE("ateb examples") {
  CHECK(pure::to_string(ateb_of(parse("1[2/]"))) == "(\\.1) 2");
  Term t = parse("(1[1/] 4[^(^(^(1/)))])[^(^(!))]");
  CHECK(pure::to_string(ateb_of(t)) == "(\\.1) 1 ((\\.1) 5)");
  // Independent oracle: the full normal form of t in the calculus is the
  // beta normal form of its expansion.
  auto nf = normalize(System{}, t, RuleSet::all(), 1000, false);
  REQUIRE_FALSE(nf.exhausted);
  CHECK(to_pure(nf.term) == beta_nf(ateb_of(t)));
  CHECK(pure::to_string(to_pure(nf.term)) == "1 5");
}

TEST_CASE("ateb and the calculus agree on normal forms") {
  std::size_t n = 0;
  enumerate(5, [&](const Term& t) {
    auto nf = normalize(System{}, t, RuleSet::all(), 1000, false);
    if (nf.exhausted) return;
    auto pure_nf = normalize(pure::DbSystem{}, ateb_of(t), RuleSet::all(), 1000, false);
    if (pure_nf.exhausted) return;
    CHECK(to_pure(nf.term) == pure_nf.term);
    ++n;
  });
  CHECK(n > 1000);
}

TEST_CASE("overline examples") {
  CHECK(overline(parse("3[!]")) == idx(4));
  CHECK(overline(idx(7)) == idx(7));
  CHECK(overline(parse("1[^(2/)]")) == parse("2[3/]"));
  CHECK(overline(parse("(1 2)[^(^(!))]")) == parse("1 2"));
  CHECK(overline(parse("(1 4)[^(^(!))]")) == parse("1 5"));
}

TEST_CASE("skeleton order examples") {
  CHECK(preceq(idx(1), idx(9)));
  CHECK(preceq(parse("1[^(2/)]"), parse("1[!][^(^(^(2/)))]")));
  CHECK_FALSE(preceq_sub(shift(), slash(idx(1))));
  CHECK(lessdot(idx(4), parse("3[!]")));
  CHECK_FALSE(lessdot(idx(5), parse("3[!]")));
  CHECK(preceq(idx(1), parse("1[^(!)]")));
  CHECK_FALSE(preceq(idx(1), parse("1[^(!)]"), Skeleton::Literal));
  CHECK(preceq(idx(1), parse("1[!]"), Skeleton::Literal));
  enumerate(4, [](const Term& t) { CHECK(lessdot(t, t)); });
}

TEST_CASE("commutation of overline with the re-indexers") {
  std::size_t n = 0, bad = 0;
  enumerate(6, [&](const Term& t) {
    if (!eligible(t)) return;
    ++n;
    for (std::size_t i = 0; i <= 3; ++i) {
      if (!(overline(flift_shift(i, t)) == flift_shift(i, overline(t)))) ++bad;
      if (!(overline(flift_cons(i, t)) == flift_cons(i, overline(t)))) ++bad;
      if (!(overline(fshift(i, t)) == fshift(i, overline(t)))) ++bad;
    }
  });
  CHECK(n > 1000);
  CHECK(bad == 0);
}

TEST_CASE("initialization witnesses") {
  System sys;
  CHECK(init_witness(idx(3)).trace.length() == 0);
  auto w = init_witness(parse("1[2/]"));
  CHECK(w.u == parse("1[2/]"));
  CHECK(w.trace.length() == 1);
  auto w2 = init_witness(parse("3[!]"));
  CHECK(w2.u == idx(4));
  CHECK(w2.trace.length() == 0);

  std::size_t n = 0;
  enumerate(5, [&](const Term& t) {
    Witness x = init_witness(t);
    CHECK(x.trace.start == ateb_term(t));
    CHECK(x.trace.end() == x.u);
    CHECK(trace_only_uses(sys, x.trace, {"B"}));
    auto rp = replay(sys, x.trace);
    CHECK_MESSAGE(rp.ok, to_string(t) << ": " << rp.reason);
    CHECK_MESSAGE(lessdot(x.u, t), to_string(t));
    ++n;
  });
  CHECK(n > 1000);
}

TEST_CASE("the literal skeleton clause breaks initialization") {
  Term t = parse("1[^(!)]");
  Witness w = init_witness(t);
  CHECK(lessdot(w.u, t));
  CHECK_FALSE(lessdot(w.u, t, Skeleton::Literal));
}

TEST_CASE("typed initialization annotates the introduced binders") {
  Type i = Type::iota();
  DbEnv env({i});
  Term t = parse("1[^(1/)]");
  REQUIRE(typecheck(DbEnv({i, Type::arrow(i, i)}), parse("(\\i.1)[1/]")));
  Witness w = init_witness(t, env);
  CHECK(w.trace.start == ateb_term(t, env));
  CHECK(replay(System{}, w.trace).ok);
  CHECK(lessdot(w.u, t));
}

TEST_CASE("ateb preserves types") {
  std::size_t typed = 0;
  auto envs = sample_db_envs(2);
  enumerate(5, [&](const Term& t0) {
    annotate_all(t0, [&](const Term& t) {
      for (auto mode : {LiftTyping::Literal, LiftTyping::General})
        for (const auto& env : envs) {
          auto a = typecheck(env, t, mode);
          if (!a) continue;
          ++typed;
          auto b = pure::typecheck(env, ateb_of(t, env, mode));
          CHECK_MESSAGE(b, to_string(t) << " in " << to_string(env));
          if (b) CHECK(*b == *a);
        }
    });
  });
  CHECK(typed > 1000);
}

TEST_CASE("re-indexer typing properties") {
  // Clauses for the shift functions hold everywhere; the cons function
  // holds on binder-free terms and fails under a binder, since the binder
  // clause moves index 1 as well.
  auto ts = pure_terms(5, 3);
  auto envs = sample_db_envs(2);
  std::size_t c1 = 0, c2 = 0, c3 = 0, c2_binder_bad = 0;
  for (const auto& t0 : ts)
    annotate_all(t0, [&](const Term& t) {
      for (const auto& gamma : envs) {
        auto a = typecheck(gamma, t);
        if (!a) continue;
        for (const auto& delta : envs) {
          DbEnv dg = concat(delta, gamma);
          auto r = typecheck(dg, fshift(delta.size(), t));
          CHECK(r);
          if (r) CHECK(*r == *a);
          ++c1;
        }
      }
      for (const auto& env : envs)
        for (std::size_t i = 0; i <= env.size(); ++i) {
          auto a = typecheck(env, t);
          if (a) {
            for (const auto& b : sample_types()) {
              auto r = typecheck(env.insert_at(i, b), flift_shift(i, t));
              CHECK(r);
              if (r) CHECK(*r == *a);
              ++c3;
            }
          }
          if (i == env.size()) continue;
          if (!a) continue;
          // env = delta, B, gamma with |delta| = i
          DbEnv moved = env.erase_at(i).push(*env.lookup(i + 1));
          auto r = typecheck(moved, flift_cons(i, t));
          bool ok = r && *r == *a;
          ++c2;
          if (!has_lam(t)) CHECK(ok);
          else if (!ok) ++c2_binder_bad;
        }
    });
  CHECK(c1 > 100);
  CHECK(c2 > 100);
  CHECK(c3 > 100);
  CHECK(c2_binder_bad > 0);
  // The smallest counterexample: B, Gamma |- \C.2 : C -> B.
  Type i = Type::iota(), ii = Type::arrow(i, i);
  DbEnv env({ii});
  Term t = parse("\\i.2");
  REQUIRE(typecheck(env, t));
  CHECK(flift_cons(0, t) == parse("\\i.1"));
  CHECK(*typecheck(env, flift_cons(0, t)) != *typecheck(env, t));
}

TEST_CASE("simulation examples") {
  System sys;
  ReductionStep<Term> b{"B", {}, parse("(\\.1) 2"), parse("1[2/]")};
  auto r = simulate_step(b, b.before);
  REQUIRE(r);
  CHECK(r->end() == parse("1[2/]"));
  CHECK(r->length() == 1);

  ReductionStep<Term> vs{"VarShift", {}, parse("3[!]"), idx(4)};
  auto r2 = simulate_step(vs, idx(4));
  REQUIRE(r2);
  CHECK(r2->length() == 0);
  CHECK(r2->end() == idx(4));

  ReductionStep<Term> rv{"RVarLift", {}, parse("2[^(!)]"), parse("1[!][!]")};
  auto r3 = simulate_step(rv, rv.before);
  REQUIRE(r3);
  CHECK(r3->end() == parse("1[!][!]"));
}

TEST_CASE("R2 terminates on small terms") {
  System sys;
  enumerate(4, [&](const Term& t) {
    auto v = is_sn(sys, t, 100000, sys.r2_rules());
    CHECK(v.proved());
  });
}
