#include "doctest.h"

#include "ateb/kernel.hpp"
#include "ateb/pure.hpp"

using namespace ateb;

namespace {

enum class K : std::uint8_t { A, B, C, Pair };
using T = Tree<K>;

T leaf(K k) { return T::make(k, {}); }
T pair(T a, T b) { return T::make(K::Pair, {}, {std::move(a), std::move(b)}); }

std::string show(const T& t) {
  switch (t.kind()) {
    case K::A: return "a";
    case K::B: return "b";
    case K::C: return "c";
    case K::Pair: return "(" + show(t.kid(0)) + " " + show(t.kid(1)) + ")";
  }
  return "?";
}

// a -> b, b -> a, b -> c.  Non-terminating because of the first two.
struct Toy {
  using Term = T;
  static constexpr std::string_view kRules[] = {"ab", "ba", "bc"};
  std::span<const std::string_view> rules() const { return kRules; }
  void root_rewrites(const T& t, RuleSet r, RootRewrites<T>& out) const {
    if (t.kind() == K::A && r.has(0)) out.emplace_back(0, leaf(K::B));
    if (t.kind() == K::B && r.has(1)) out.emplace_back(1, leaf(K::A));
    if (t.kind() == K::B && r.has(2)) out.emplace_back(2, leaf(K::C));
  }
  std::string key(const T& t) const { return show(t); }
};

}  // namespace

TEST_CASE("redexes are in preorder then rule order") {
  Toy sys;
  T t = pair(leaf(K::B), pair(leaf(K::A), leaf(K::B)));
  auto rs = redexes(sys, t);
  REQUIRE(rs.size() == 5);
  CHECK(rs[0].at == Path{0});
  CHECK(rs[0].rule == 1);
  CHECK(rs[1].at == Path{0});
  CHECK(rs[1].rule == 2);
  CHECK(rs[2].at == Path{1, 0});
  CHECK(rs[3].at == Path{1, 1});
  CHECK(show(rs[4].result) == "(b (a c))");
}

TEST_CASE("rule sets reject unknown labels") {
  Toy sys;
  CHECK_NOTHROW(rule_set(sys, {"ab", "bc"}));
  CHECK_THROWS_AS(rule_set(sys, {"zz"}), std::invalid_argument);
  RuleSet r = rule_set(sys, {"bc"});
  CHECK(redexes(sys, leaf(K::B), r).size() == 1);
}

TEST_CASE("normalize reports fuel exhaustion") {
  Toy sys;
  auto r = normalize(sys, leaf(K::A), RuleSet::all(), 5);
  CHECK(r.exhausted);
  CHECK(r.trace.length() == 5);
  auto ok = normalize(sys, leaf(K::A), rule_set(sys, {"ab", "bc"}), 5);
  CHECK_FALSE(ok.exhausted);
  CHECK(show(ok.term) == "c");
  CHECK(ok.trace.length() == 2);
  CHECK(replay(sys, ok.trace).ok);
}

TEST_CASE("reachable finds the shortest trace") {
  Toy sys;
  auto tr = reachable(sys, pair(leaf(K::A), leaf(K::A)), pair(leaf(K::C), leaf(K::B)),
                      RuleSet::all(), 4);
  REQUIRE(tr);
  CHECK(tr->length() == 3);
  CHECK(replay(sys, *tr).ok);
  CHECK_FALSE(reachable(sys, leaf(K::C), leaf(K::A), RuleSet::all(), 4));
  CHECK_FALSE(reachable(sys, leaf(K::A), leaf(K::C), RuleSet::all(), 1));
}

TEST_CASE("search with a lower bound on steps") {
  Toy sys;
  auto tr = search(sys, leaf(K::A), RuleSet::all(), 2, 2,
                   [](const T& t) { return t.kind() == K::A; });
  REQUIRE(tr);
  CHECK(tr->length() == 2);
}

TEST_CASE("is_sn: proof, depth, loop witness and budget") {
  Toy sys;
  auto v = is_sn(sys, pair(leaf(K::B), leaf(K::C)), 100, rule_set(sys, {"ab", "bc"}));
  CHECK(v.proved());
  CHECK(v.max_depth == 1);
  auto w = is_sn(sys, leaf(K::A), 100);
  CHECK_FALSE(w.proved());
  REQUIRE(w.loop);
  CHECK(w.loop->length() == 2);
  CHECK(show(w.loop->end()) == show(w.loop->start));
  CHECK(replay(sys, *w.loop).ok);
  auto x = is_sn(sys, pair(pair(leaf(K::A), leaf(K::A)), pair(leaf(K::A), leaf(K::A))), 3,
                 rule_set(sys, {"ab", "bc"}));
  CHECK_FALSE(x.proved());
  CHECK_FALSE(x.loop);
}

TEST_CASE("ProvedSN depth bounds normalization") {
  pure::DbSystem sys;
  auto t = pure::parse_db("(\\.1 1) ((\\.1) 2)");
  auto v = is_sn(sys, t, 1000);
  REQUIRE(v.proved());
  CHECK(v.max_depth == 3);
  CHECK_FALSE(normalize(sys, t, RuleSet::all(), static_cast<long>(v.max_depth)).exhausted);
}

TEST_CASE("omega loops") {
  pure::DbSystem sys;
  auto w = is_sn(sys, pure::parse_db("(\\.1 1) (\\.1 1)"), 1000);
  CHECK_FALSE(w.proved());
  REQUIRE(w.loop);
  CHECK(w.loop->length() == 1);
}

TEST_CASE("replay rejects corrupted traces") {
  Toy sys;
  auto tr = *reachable(sys, pair(leaf(K::A), leaf(K::B)), pair(leaf(K::C), leaf(K::C)),
                       rule_set(sys, {"ab", "bc"}), 4);
  REQUIRE(replay(sys, tr).ok);
  for (std::size_t i = 0; i < tr.length(); ++i) {
    auto bad_rule = tr;
    bad_rule.steps[i].rule = bad_rule.steps[i].rule == "ab" ? "bc" : "ab";
    CHECK_FALSE(replay(sys, bad_rule).ok);
    auto bad_path = tr;
    bad_path.steps[i].at = {static_cast<std::uint8_t>(1 - tr.steps[i].at[0])};
    CHECK_FALSE(replay(sys, bad_path).ok);
    auto bad_after = tr;
    bad_after.steps[i].after = pair(leaf(K::A), leaf(K::A));
    CHECK_FALSE(replay(sys, bad_after).ok);
    auto unknown = tr;
    unknown.steps[i].rule = "nope";
    CHECK(replay(sys, unknown).reason.find("unknown") != std::string::npos);
  }
  auto deep = tr;
  deep.steps[0].at = {0, 0, 0};
  CHECK_FALSE(replay(sys, deep).ok);
}
