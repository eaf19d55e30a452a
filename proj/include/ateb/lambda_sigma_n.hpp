#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ateb/error.hpp"
#include "ateb/kernel.hpp"
#include "ateb/pure.hpp"
#include "ateb/tree.hpp"
#include "ateb/types.hpp"

namespace ateb::lsn {

// Terms: Var(name) App Lam(name; annot; body) Clo(t, s)
// Substitutions: Id Cons(t, s; name) Comp(s1, s2)
enum class Kind : std::uint8_t { Var, App, Lam, Clo, Id, Cons, Comp };
using Term = Tree<Kind>;

Term var(const Name& x);
Term app(Term f, Term a);
Term lam(const Name& x, Term body, Type annot = {});
Term clo(Term t, Term s);
Term id();
// (t/x) . s
Term cons(Term t, const Name& x, Term s);
Term comp(Term s1, Term s2);

bool is_sub(const Term& x);
bool substitution_free(const Term& t);
NameSet free_vars(const Term& t);

Term embed(const pure::Named& t);
pure::Named to_pure(const Term& t);

Checked<Type> typecheck(const NamedEnv& env, const Term& t);
Checked<NamedEnv> typecheck_sub(const NamedEnv& env, const Term& s);

Term ateb_term(const Term& t, const std::optional<NamedEnv>& env = std::nullopt);
pure::Named ateb_of(const Term& t, const std::optional<NamedEnv>& env = std::nullopt);

bool potentially_redexable(const Term& x);

class System {
 public:
  using Term = lsn::Term;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const;
  RuleSet b_rules() const { return RuleSet::only(0); }
  RuleSet sigma_rules() const;
};

long sigma_fuel(const Term& t);
// Normal form under sigma_rules().  Throws FuelExhausted.
Term sigma(const Term& t);
// Alpha-canonical key of sigma(t).
std::string sigma_key(const Term& t);

// Compares shapes; binder and variable names are not compared.
bool preceq(const Term& u, const Term& t);
bool lessdot(const Term& u, const Term& t);

struct Witness {
  Term u;
  Trace<Term> trace;
};
// Empty when the construction meets a closure (\x.v)[s] applied to an
// argument.
std::optional<Witness> init_witness(const Term& t,
                                    const std::optional<NamedEnv>& env = std::nullopt);

std::optional<Trace<Term>> simulate_step(const ReductionStep<Term>& step, const Term& u,
                                         std::size_t depth = 4);

std::string to_string(const Term& t);
Term parse(std::string_view src);
Term parse_sub(std::string_view src);

void enumerate(int max_size, const std::vector<Name>& pool,
               const std::function<void(const Term&)>& visit);
void enumerate_subs(int max_size, const std::vector<Name>& pool,
                    const std::function<void(const Term&)>& visit);
void annotate_all(const Term& t, const std::function<void(const Term&)>& visit);

}  // namespace ateb::lsn
