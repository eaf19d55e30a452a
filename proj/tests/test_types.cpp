#include "doctest.h"

#include "ateb/error.hpp"
#include "ateb/types.hpp"

using namespace ateb;

TEST_CASE("arrow is right associative and minus binds tighter") {
  Type i = Type::iota();
  CHECK(parse_type("i -> i -> i") == Type::arrow(i, Type::arrow(i, i)));
  CHECK(parse_type("(i -> i) -> i") == Type::arrow(Type::arrow(i, i), i));
  CHECK(parse_type("i - i -> i") == Type::arrow(Type::minus(i, i), i));
  CHECK(parse_type("i - i - i") == Type::minus(Type::minus(i, i), i));
}

TEST_CASE("type printing round-trips") {
  for (const char* s : {"i", "i -> i", "(i -> i) -> i", "i - i", "i - (i - i)", "(i -> i) - i",
                        "i -> i - i", "((i -> i) -> i) -> i"}) {
    Type t = parse_type(s);
    CHECK(to_string(t) == s);
    CHECK(parse_type(to_string(t)) == t);
  }
}

TEST_CASE("absent type equals only itself") {
  CHECK(Type() == Type());
  CHECK_FALSE(Type() == Type::iota());
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_type("i ->");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_type("(i"), ParseError);
  CHECK_THROWS_AS(parse_type("i $"), ParseError);
}

TEST_CASE("env_split_db") {
  DbEnv e = parse_db_env("i, i -> i, (i -> i) -> i");
  auto [a, b] = env_split_db(e, 1);
  CHECK(a.size() == 1);
  CHECK(b.size() == 2);
  CHECK(concat(a, b) == e);
  auto [c, d] = env_split_db(e, 3);
  CHECK(d.empty());
  CHECK_THROWS_AS(env_split_db(e, 4), std::out_of_range);
}

TEST_CASE("db env edits") {
  Type i = Type::iota();
  Type ii = Type::arrow(i, i);
  DbEnv e({i, ii});
  CHECK(e.lookup(1) == i);
  CHECK(e.lookup(2) == ii);
  CHECK_FALSE(e.lookup(3));
  CHECK_FALSE(e.lookup(0));
  CHECK(e.insert_at(1, ii) == DbEnv({i, ii, ii}));
  CHECK(e.erase_at(0) == DbEnv({ii}));
  CHECK(e.push(ii) == DbEnv({ii, i, ii}));
}

TEST_CASE("named and two-sided environments parse") {
  NamedEnv e = parse_named_env("x:i, y:i -> i");
  CHECK(e.at("y") == parse_type("i -> i"));
  TwoSidedEnv t = parse_two_sided_env("x:i | a:i - i");
  CHECK(t.left.size() == 1);
  CHECK(t.right.at("a") == parse_type("i - i"));
  CHECK(parse_two_sided_env("| a:i").left.empty());
}

TEST_CASE("sample environments") {
  CHECK(sample_types().size() == 3);
  CHECK(sample_db_envs(2).size() == 13);
  CHECK(sample_named_envs(NameSet{"x", "y"}).size() == 9);
}
