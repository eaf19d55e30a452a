#pragma once

#include <concepts>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ateb/tree.hpp"

namespace ateb {

// Subset of a system's rule table, by index.
class RuleSet {
 public:
  constexpr RuleSet() = default;
  static constexpr RuleSet all() { return RuleSet(~std::uint64_t{0}); }
  static constexpr RuleSet only(std::size_t i) { return RuleSet(std::uint64_t{1} << i); }
  constexpr bool has(std::size_t i) const { return (bits_ >> i) & 1u; }
  constexpr RuleSet with(std::size_t i) const { return RuleSet(bits_ | (std::uint64_t{1} << i)); }
  constexpr RuleSet without(std::size_t i) const {
    return RuleSet(bits_ & ~(std::uint64_t{1} << i));
  }
  constexpr bool empty() const { return bits_ == 0; }
  friend constexpr bool operator==(RuleSet, RuleSet) = default;

 private:
  constexpr explicit RuleSet(std::uint64_t b) : bits_(b) {}
  std::uint64_t bits_ = 0;
};

template <class T>
using RootRewrites = std::vector<std::pair<std::size_t, T>>;

// A rewrite system: a rule table, the rewrites applicable at the root of a
// term (in rule-table order), and a key identifying terms up to the
// system's notion of equality (syntactic or alpha).
template <class S>
concept RewriteSystem = requires(const S& s, const typename S::Term& t, RuleSet r,
                                 RootRewrites<typename S::Term>& out) {
  { s.rules() } -> std::convertible_to<std::span<const std::string_view>>;
  s.root_rewrites(t, r, out);
  { s.key(t) } -> std::convertible_to<std::string>;
};

template <class S>
std::optional<std::size_t> rule_index(const S& sys, std::string_view label) {
  auto rs = sys.rules();
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs[i] == label) return i;
  return std::nullopt;
}

// Unknown labels are rejected.
template <class S>
RuleSet rule_set(const S& sys, std::initializer_list<std::string_view> labels) {
  RuleSet r;
  for (auto l : labels) {
    auto i = rule_index(sys, l);
    if (!i) throw std::invalid_argument("unknown rule label: " + std::string(l));
    r = r.with(*i);
  }
  return r;
}

template <class S>
RuleSet rule_set(const S& sys, const std::vector<std::string>& labels) {
  RuleSet r;
  for (const auto& l : labels) {
    auto i = rule_index(sys, l);
    if (!i) throw std::invalid_argument("unknown rule label: " + l);
    r = r.with(*i);
  }
  return r;
}

template <class S>
RuleSet all_rules_except(const S& sys, std::initializer_list<std::string_view> labels) {
  RuleSet r;
  for (std::size_t i = 0; i < sys.rules().size(); ++i) r = r.with(i);
  for (auto l : labels) {
    auto i = rule_index(sys, l);
    if (!i) throw std::invalid_argument("unknown rule label: " + std::string(l));
    r = r.without(*i);
  }
  return r;
}

template <class T>
struct Redex {
  std::size_t rule;
  Path at;
  T result;  // the whole term after contraction
};

template <class T>
struct ReductionStep {
  std::string rule;
  Path at;
  T before;
  T after;
};

template <class T>
struct Trace {
  T start;
  std::vector<ReductionStep<T>> steps;

  const T& end() const { return steps.empty() ? start : steps.back().after; }
  std::size_t length() const { return steps.size(); }
  void push(std::string rule, Path at, T after) {
    T before = end();
    steps.push_back({std::move(rule), std::move(at), std::move(before), std::move(after)});
  }
  void append(const Trace& o) {
    for (const auto& s : o.steps) steps.push_back(s);
  }
};

namespace detail {

template <class S, class T>
void local_redexes(const S& sys, const T& t, RuleSet r, Path& at,
                   std::vector<std::pair<Path, std::pair<std::size_t, T>>>& out) {
  RootRewrites<T> here;
  sys.root_rewrites(t, r, here);
  for (auto& h : here) out.push_back({at, std::move(h)});
  for (std::size_t i = 0; i < t.arity(); ++i) {
    at.push_back(static_cast<std::uint8_t>(i));
    local_redexes(sys, t.kid(i), r, at, out);
    at.pop_back();
  }
}

template <class S, class T>
bool first_local(const S& sys, const T& t, RuleSet r, Path& at,
                 std::pair<std::size_t, T>& found) {
  RootRewrites<T> here;
  sys.root_rewrites(t, r, here);
  if (!here.empty()) {
    found = std::move(here.front());
    return true;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    at.push_back(static_cast<std::uint8_t>(i));
    if (first_local(sys, t.kid(i), r, at, found)) return true;
    at.pop_back();
  }
  return false;
}

}  // namespace detail

// All one-step reducts, in preorder of position and then rule-table order.
template <RewriteSystem S>
std::vector<Redex<typename S::Term>> redexes(const S& sys, const typename S::Term& t,
                                             RuleSet r = RuleSet::all()) {
  using T = typename S::Term;
  std::vector<std::pair<Path, std::pair<std::size_t, T>>> local;
  Path at;
  detail::local_redexes(sys, t, r, at, local);
  std::vector<Redex<T>> out;
  out.reserve(local.size());
  for (auto& [p, rr] : local) out.push_back({rr.first, p, replace_at(t, p, rr.second)});
  return out;
}

template <RewriteSystem S>
std::optional<Redex<typename S::Term>> first_redex(const S& sys, const typename S::Term& t,
                                                   RuleSet r = RuleSet::all()) {
  using T = typename S::Term;
  Path at;
  std::pair<std::size_t, T> found;
  if (!detail::first_local(sys, t, r, at, found)) return std::nullopt;
  return Redex<T>{found.first, at, replace_at(t, at, found.second)};
}

template <RewriteSystem S>
ReductionStep<typename S::Term> to_step(const S& sys, const typename S::Term& before,
                                        const Redex<typename S::Term>& rx) {
  return {std::string(sys.rules()[rx.rule]), rx.at, before, rx.result};
}

template <class T>
struct NormalizeResult {
  T term;
  Trace<T> trace;
  bool exhausted = false;  // fuel ran out before a normal form was reached
};

// Leftmost-outermost strategy restricted to `r`.
template <RewriteSystem S>
NormalizeResult<typename S::Term> normalize(const S& sys, const typename S::Term& t,
                                            RuleSet r, long fuel, bool record = true) {
  using T = typename S::Term;
  NormalizeResult<T> res{t, Trace<T>{t, {}}, false};
  for (long k = 0;; ++k) {
    auto rx = first_redex(sys, res.term, r);
    if (!rx) return res;
    if (k >= fuel) {
      res.exhausted = true;
      return res;
    }
    if (record) res.trace.steps.push_back(to_step(sys, res.term, *rx));
    res.term = std::move(rx->result);
  }
}

// Breadth-first search from `from`, over steps in `r`, for a term at depth
// in [min_steps, max_steps] satisfying `pred`.  Returns the shortest trace.
template <RewriteSystem S>
std::optional<Trace<typename S::Term>> search(
    const S& sys, const typename S::Term& from, RuleSet r, std::size_t min_steps,
    std::size_t max_steps, const std::function<bool(const typename S::Term&)>& pred,
    std::size_t max_nodes = 1'000'000) {
  using T = typename S::Term;
  struct Node {
    T term;
    long parent;
    std::size_t rule;
    Path at;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  nodes.push_back({from, -1, 0, {}, 0});
  if (min_steps == 0) seen.insert(sys.key(from));
  auto build = [&](long idx) {
    std::vector<long> chain;
    for (long i = idx; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) chain.push_back(i);
    Trace<T> tr{from, {}};
    for (auto it = chain.rbegin() + 1; it < chain.rend(); ++it) {
      const Node& n = nodes[static_cast<std::size_t>(*it)];
      tr.push(std::string(sys.rules()[n.rule]), n.at, n.term);
    }
    return tr;
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= min_steps && pred(nodes[head].term))
      return build(static_cast<long>(head));
    if (nodes[head].depth >= max_steps) continue;
    auto rs = redexes(sys, nodes[head].term, r);
    for (auto& rx : rs) {
      if (!seen.insert(sys.key(rx.result)).second) continue;
      nodes.push_back({std::move(rx.result), static_cast<long>(head), rx.rule, std::move(rx.at),
                       nodes[head].depth + 1});
      if (nodes.size() > max_nodes) return std::nullopt;
    }
  }
  return std::nullopt;
}

template <RewriteSystem S>
std::optional<Trace<typename S::Term>> reachable(const S& sys, const typename S::Term& from,
                                                 const typename S::Term& to, RuleSet r,
                                                 std::size_t max_depth,
                                                 std::size_t max_nodes = 1'000'000) {
  const std::string target = sys.key(to);
  return search(
      sys, from, r, 0, max_depth,
      [&](const typename S::Term& t) { return sys.key(t) == target; }, max_nodes);
}

template <class T>
struct SnVerdict {
  enum class Kind { ProvedSN, BudgetExhausted };
  Kind kind = Kind::BudgetExhausted;
  std::size_t max_depth = 0;  // longest reduction, when proved
  std::size_t visited = 0;    // distinct terms explored
  // A reduction returning to a term already on the current path.
  std::optional<Trace<T>> loop;

  bool proved() const { return kind == Kind::ProvedSN; }
};

// Exhaustive exploration of the reduction graph, by depth-first search
// under a depth bound that doubles until a round completes without being
// cut.  Running out of budget is reported as such and never read as
// non-termination; a cycle on the current path is reported as a loop
// witness.
template <RewriteSystem S>
SnVerdict<typename S::Term> is_sn(const S& sys, const typename S::Term& t, std::size_t budget,
                                  RuleSet r = RuleSet::all()) {
  using T = typename S::Term;
  struct Frame {
    T term;
    std::string key;
    std::vector<Redex<T>> succ;
    std::size_t next = 0;
    std::size_t best = 0;
    bool cut = false;
  };
  SnVerdict<T> v;
  // Exact longest-reduction lengths of fully explored terms.
  std::unordered_map<std::string, std::size_t> done;
  const std::string root_key = sys.key(t);
  for (std::size_t bound = 8;; bound *= 2) {
    std::unordered_set<std::string> on_path;
    std::vector<Frame> stack;
    bool round_cut = false;
    auto push = [&](const T& term, std::string key) {
      Frame f{term, std::move(key), redexes(sys, term, r)};
      on_path.insert(f.key);
      stack.push_back(std::move(f));
      ++v.visited;
    };
    if (auto it = done.find(root_key); it != done.end()) {
      v.max_depth = it->second;
      v.kind = SnVerdict<T>::Kind::ProvedSN;
      return v;
    }
    push(t, root_key);
    while (!stack.empty()) {
      if (v.visited > budget) {
        v.kind = SnVerdict<T>::Kind::BudgetExhausted;
        return v;
      }
      Frame& f = stack.back();
      if (f.next < f.succ.size()) {
        const Redex<T>& rx = f.succ[f.next++];
        std::string k = sys.key(rx.result);
        if (auto it = done.find(k); it != done.end()) {
          f.best = std::max(f.best, it->second + 1);
          continue;
        }
        if (on_path.count(k)) {
          std::size_t from = 0;
          while (stack[from].key != k) ++from;
          Trace<T> loop{stack[from].term, {}};
          for (std::size_t i = from; i < stack.size(); ++i) {
            const Redex<T>& taken = stack[i].succ[stack[i].next - 1];
            loop.push(std::string(sys.rules()[taken.rule]), taken.at, taken.result);
          }
          v.kind = SnVerdict<T>::Kind::BudgetExhausted;
          v.loop = std::move(loop);
          return v;
        }
        if (stack.size() >= bound) {
          f.cut = true;
          continue;
        }
        T next = rx.result;  // push may reallocate the stack
        push(next, std::move(k));
        continue;
      }
      std::size_t best = f.best;
      bool cut = f.cut;
      if (!cut) done[f.key] = best;
      on_path.erase(f.key);
      stack.pop_back();
      if (!stack.empty()) {
        stack.back().best = std::max(stack.back().best, best + 1);
        stack.back().cut = stack.back().cut || cut;
      } else {
        round_cut = cut;
        v.max_depth = best;
      }
    }
    if (!round_cut) {
      v.kind = SnVerdict<T>::Kind::ProvedSN;
      return v;
    }
  }
}

struct ReplayResult {
  bool ok = true;
  std::size_t failed_at = 0;
  std::string reason;
};

// Re-checks every step of a trace against the rule table.
template <RewriteSystem S>
ReplayResult replay(const S& sys, const Trace<typename S::Term>& tr) {
  using T = typename S::Term;
  std::string cur = sys.key(tr.start);
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const auto& st = tr.steps[i];
    auto fail = [&](std::string why) { return ReplayResult{false, i, std::move(why)}; };
    if (sys.key(st.before) != cur) return fail("step does not start where the previous ended");
    auto ri = rule_index(sys, st.rule);
    if (!ri) return fail("unknown rule " + st.rule);
    const T* node = &st.before;
    for (auto k : st.at) {
      if (k >= node->arity()) return fail("path " + path_to_string(st.at) + " out of range");
      node = &node->kid(k);
    }
    RootRewrites<T> out;
    sys.root_rewrites(*node, RuleSet::only(*ri), out);
    if (out.empty()) return fail(st.rule + " does not apply at " + path_to_string(st.at));
    std::string want = sys.key(st.after);
    bool matched = false;
    for (const auto& [rule, res] : out)
      if (sys.key(replace_at(st.before, st.at, res)) == want) {
        matched = true;
        break;
      }
    if (!matched) return fail("result differs from " + st.rule + " at " + path_to_string(st.at));
    cur = std::move(want);
  }
  return {};
}

template <RewriteSystem S>
bool trace_only_uses(const S&, const Trace<typename S::Term>& tr,
                     std::initializer_list<std::string_view> labels) {
  for (const auto& s : tr.steps) {
    bool ok = false;
    for (auto l : labels) ok = ok || s.rule == l;
    if (!ok) return false;
  }
  return true;
}

}  // namespace ateb
