#include "doctest.h"

#include <set>

#include "ateb/pure.hpp"

using namespace ateb;
using namespace ateb::pure;

namespace {

Db normal_form(const Db& t) {
  DbSystem sys;
  auto r = normalize(sys, t, RuleSet::all(), 1000);
  REQUIRE_FALSE(r.exhausted);
  return r.term;
}

}  // namespace

TEST_CASE("named beta step") {
  NamedSystem sys;
  auto rs = redexes(sys, parse_named("(\\x. x) y"));
  REQUIRE(rs.size() == 1);
  CHECK(to_string(rs[0].result) == "y");
  CHECK(rs[0].at.empty());
}

TEST_CASE("subst_meta avoids capture") {
  Named r = subst_meta(parse_named("\\y. x"), "x", var("y"));
  REQUIRE(r.kind() == NKind::Lam);
  CHECK(r.name() != "y");
  CHECK(r.kid(0).name() == "y");
  CHECK(alpha_equal(r, parse_named("\\z. y")));
}

TEST_CASE("subst_meta leaves shadowed binders") {
  Named t = parse_named("\\x. x");
  CHECK(subst_meta(t, "x", var("y")) == t);
}

TEST_CASE("simultaneous substitution is not sequential") {
  Named t = parse_named("x y");
  Named r = subst_simultaneous(t, {{"x", var("y")}, {"y", var("x")}});
  CHECK(to_string(r) == "y x");
  Named l = subst_simultaneous(parse_named("\\y. x y"), {{"x", var("y")}});
  CHECK(alpha_equal(l, parse_named("\\z. y z")));
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(parse_named("\\x. \\y. x"), parse_named("\\a. \\b. a")));
  CHECK_FALSE(alpha_equal(parse_named("\\x. \\y. x"), parse_named("\\x. \\y. y")));
  CHECK_FALSE(alpha_equal(parse_named("\\x. y"), parse_named("\\x. z")));
  CHECK_FALSE(alpha_equal(parse_named("\\x:i. x"), parse_named("\\x. x")));
}

TEST_CASE("db beta shifts free indices") {
  // (\. 2 1) 3  ->  2 3  (index 2 under the binder is free 1)
  CHECK(to_string(normal_form(parse_db("(\\.2 1) 3"))) == "1 3");
  CHECK(to_string(normal_form(parse_db("(\\.\\.2) 1"))) == "\\.2");
  CHECK(to_string(normal_form(parse_db("(\\.\\.1 3) 1"))) == "\\.1 2");
}

TEST_CASE("printing round-trips") {
  for (const char* s : {"x", "x y z", "x (y z)", "(\\x. x) y", "\\x:i -> i. x y",
                        "x (\\y. y)", "(\\x. x) (\\y. y)"}) {
    CHECK(to_string(parse_named(s)) == s);
  }
  for (const char* s : {"1", "\\.1", "\\i.1", "(\\i -> i.1 2) (\\.1)", "1 (2 3)"}) {
    CHECK(to_string(parse_db(s)) == s);
  }
  CHECK_THROWS_AS(parse_db("0"), ParseError);
  CHECK_THROWS_AS(parse_named("(x"), ParseError);
}

TEST_CASE("typechecking") {
  CHECK(*typecheck(NamedEnv{}, parse_named("\\x:i. x")) == parse_type("i -> i"));
  CHECK(*typecheck(NamedEnv{{"y", Type::iota()}}, parse_named("(\\x:i. x) y")) == Type::iota());
  CHECK_FALSE(typecheck(NamedEnv{}, parse_named("\\x. x")));
  CHECK(typecheck(NamedEnv{}, parse_named("\\x. x")).error().kind == TypeErrorKind::Unannotated);
  CHECK(typecheck(NamedEnv{}, parse_named("x")).error().kind == TypeErrorKind::Unbound);
  CHECK_FALSE(typecheck(NamedEnv{{"x", Type::iota()}}, parse_named("x x")));
  CHECK(*typecheck(DbEnv({Type::iota()}), parse_db("(\\i.1) 1")) == Type::iota());
}

TEST_CASE("to_db") {
  CHECK(to_string(to_db(parse_named("\\x. x y"), {"y"})) == "\\.1 2");
  CHECK(to_string(to_db(parse_named("\\x. \\y. x"), {})) == "\\.\\.2");
  CHECK_THROWS_AS(to_db(parse_named("z"), {"y"}), PreconditionError);
}

TEST_CASE("enumeration counts") {
  // Closed-form counts: N1 = 3, Nk = 3 N(k-1) + sum N(a) N(b).
  std::vector<long> n(6, 0);
  n[1] = 3;
  for (int k = 2; k <= 5; ++k) {
    n[static_cast<std::size_t>(k)] = 3 * n[static_cast<std::size_t>(k - 1)];
    for (int a = 1; a < k - 1; ++a)
      n[static_cast<std::size_t>(k)] += n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(k - 1 - a)];
  }
  long total = 0, seen = 0;
  for (int k = 1; k <= 5; ++k) total += n[static_cast<std::size_t>(k)];
  std::set<std::string> keys;
  enumerate_named(5, {"x", "y", "z"}, [&](const Named& t) {
    ++seen;
    keys.insert(to_string(t));
  });
  CHECK(seen == total);
  CHECK(keys.size() == static_cast<std::size_t>(total));
}

TEST_CASE("named and De Bruijn beta agree") {
  NamedSystem ns;
  DbSystem ds;
  std::vector<Name> fr{"x", "y", "z"};
  int checked = 0;
  enumerate_named(5, {"x", "y", "z"}, [&](const Named& t) {
    auto a = redexes(ns, t);
    auto b = redexes(ds, to_db(t, fr));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(to_db(a[i].result, fr) == b[i].result);
      CHECK(a[i].at == b[i].at);
    }
    ++checked;
  });
  CHECK(checked == 993);
}

TEST_CASE("typed terms: subject reduction and strong normalization") {
  DbSystem sys;
  std::size_t typed = 0;
  enumerate_db(4, [&](const Db& t) {
    annotate_all(t, [&](const Db& a) {
      for (const auto& env : sample_db_envs(2)) {
        auto ty = typecheck(env, a);
        if (!ty) continue;
        ++typed;
        for (const auto& rx : redexes(sys, a)) {
          auto ty2 = typecheck(env, rx.result);
          REQUIRE(ty2);
          CHECK(*ty2 == *ty);
        }
        CHECK(is_sn(sys, a, 100000).proved());
      }
    });
  });
  CHECK(typed > 100);
}
