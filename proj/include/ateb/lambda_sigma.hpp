#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ateb/error.hpp"
#include "ateb/kernel.hpp"
#include "ateb/pure.hpp"
#include "ateb/tree.hpp"
#include "ateb/types.hpp"

namespace ateb::ls {

// Terms: Num(num) App Lam(body; annot) Clo(t, s)
// Substitutions: Id Shift Cons(t, s) Comp(s1, s2)
enum class Kind : std::uint8_t { Num, App, Lam, Clo, Id, Shift, Cons, Comp };
using Term = Tree<Kind>;

Term num(std::uint32_t n);
Term app(Term f, Term a);
Term lam(Term body, Type annot = {});
Term clo(Term t, Term s);
Term id();
Term shift();
Term cons(Term t, Term s);
Term comp(Term s1, Term s2);

bool is_sub(const Term& x);
bool has_shift(const Term& x);
bool substitution_free(const Term& t);

Term embed(const pure::Db& t);
pure::Db to_pure(const Term& t);

// Up{i,j}.  Precondition: no Shift node; throws PreconditionError.
Term upshift(std::size_t i, std::size_t j, const Term& t);
struct UpSub {
  std::size_t i;
  Term s;
};
UpSub upshift_sub(std::size_t i, std::size_t j, const Term& s);

Checked<Type> typecheck(const DbEnv& env, const Term& t);
Checked<DbEnv> typecheck_sub(const DbEnv& env, const Term& s);

Term ateb_term(const Term& t, const std::optional<DbEnv>& env = std::nullopt);
pure::Db ateb_of(const Term& t, const std::optional<DbEnv>& env = std::nullopt);

// Flattening.  `rest` empty stands for the absent substitution.
struct FlatResult {
  std::size_t n;
  std::optional<Term> rest;
};
Term overline(const Term& t);
FlatResult overline_sub(const Term& s);

// Contains an application or an abstraction.
bool potentially_redexable(const Term& x);

class System {
 public:
  using Term = ls::Term;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const;
  RuleSet b_rules() const { return RuleSet::only(0); }
  // Every rule but B, numeral unfolding included.
  RuleSet sigma_rules() const;
};

// Folds 1[! o ... o !] (k shifts) into the numeral k+1, everywhere.
Term canonicalize(const Term& t);
long sigma_fuel(const Term& t);
// Normal form under sigma_rules(), canonicalized.  Throws FuelExhausted.
Term sigma(const Term& t);

bool preceq(const Term& u, const Term& t);
bool lessdot(const Term& u, const Term& t);

struct Witness {
  Term u;
  Trace<Term> trace;
};
// Empty when the construction reaches a closure (\v)[s] applied to an
// argument, which no B step can contract.
std::optional<Witness> init_witness(const Term& t, const std::optional<DbEnv>& env = std::nullopt);

std::optional<Trace<Term>> simulate_step(const ReductionStep<Term>& step, const Term& u,
                                         std::size_t depth = 4);

// s^i(!) as 1 . (s^(i-1)(!) o !).
Term lifted_shift(std::size_t i);

std::string to_string(const Term& t);
Term parse(std::string_view src);
Term parse_sub(std::string_view src);

// Terms of size <= max_size over numerals 1..max_num.
void enumerate(int max_size, std::uint32_t max_num, const std::function<void(const Term&)>& visit);
void enumerate_subs(int max_size, std::uint32_t max_num,
                    const std::function<void(const Term&)>& visit);
void annotate_all(const Term& t, const std::function<void(const Term&)>& visit);

}  // namespace ateb::ls
