#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ateb/error.hpp"
#include "ateb/kernel.hpp"
#include "ateb/tree.hpp"
#include "ateb/types.hpp"

namespace ateb::lw {

//   Var(name)  App(t, u)  Lam(name; annot; body)
//   Sub(t, u; name = x, set_a = G, set_b = D)   t[x, u, G, D]
//   Weak(t; set_a = L)                          L t
enum class Kind : std::uint8_t { Var, App, Lam, Sub, Weak };
using Term = Tree<Kind>;

Term var(const Name& x);
Term app(Term f, Term a);
Term lam(const Name& x, Term body, Type annot = {});
Term sub(Term t, const Name& x, Term u, NameSet gamma, NameSet delta);
Term weak(NameSet lambda, Term t);

bool substitution_free(const Term& t);
std::size_t count_subs(const Term& t);

// Variables a strict environment must declare for t.
NameSet required_vars(const Term& t);

// The set conditions of the typing rules, types ignored: a term typable
// under an environment is well scoped in its domain.
bool well_scoped(const NameSet& dom, const Term& t);

// Strict typing: the axiom admits exactly x:A, unused variables go through
// Weak.  Set conditions failing are SideCondition errors.
Checked<Type> typecheck(const NamedEnv& env, const Term& t);

// Weak nodes are emitted even for empty sets.
Term ateb_term(const Term& t, const std::optional<NamedEnv>& env = std::nullopt);
// The b steps from ateb_term(t) back to t, innermost first.
Trace<Term> expansion_trace(const Term& t);

std::string to_string(const Term& t);
std::string to_string(const NameSet& s);
Term parse(std::string_view src);

class System {
 public:
  using Term = lw::Term;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const { return to_string(t); }
};

// Positions where two of the composition rules fire at once.
std::vector<Path> c_rule_overlaps(const Term& t);

void enumerate(int max_size, const std::vector<Name>& pool,
               const std::function<void(const Term&)>& visit);
void annotate_all(const Term& t, const std::function<void(const Term&)>& visit);

}  // namespace ateb::lw
