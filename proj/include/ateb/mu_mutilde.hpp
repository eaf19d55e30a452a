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

namespace ateb::mmt {

// Names starting with a..h are context variables, every other name is a
// term variable.  Sub is t{x <- v} or t{a <- e}: kids {t, substituend},
// name = the source; its category is that of t.
//
//   commands  Cut(v, e)
//   terms     Var  Lam(x; v)  ConsEV(e, v)  Mu(a; c)
//   contexts  CoVar  CoLam(a; e)  ConsVE(v, e)  MuTilde(x; c)
enum class Kind : std::uint8_t {
  Cut, Var, Lam, ConsEV, Mu, CoVar, CoLam, ConsVE, MuTilde, Sub
};
using Term = Tree<Kind>;

enum class Sort : std::uint8_t { Command, Term, Context };

bool is_covar(const Name& x);
Sort sort_of(const Term& t);
const char* sort_name(Sort s);

Term cut(Term v, Term e);
Term var(const Name& x);
Term lam(const Name& x, Term v, Type annot = {});
Term cons_ev(Term e, Term v);
Term mu(const Name& a, Term c, Type annot = {});
Term covar(const Name& a);
Term colam(const Name& a, Term e, Type annot = {});
Term cons_ve(Term v, Term e);
Term mutilde(const Name& x, Term c, Type annot = {});
Term sub(Term t, const Name& src, Term s);

// Categories of every kid agree with the grammar.
bool well_formed(const Term& t);

NameSet free_vars(const Term& t);
bool substitution_free(const Term& t);
std::size_t count_subs(const Term& t);

// Terms and contexts get their type; a valid command gets the absent Type.
Checked<Type> typecheck(const TwoSidedEnv& env, const Term& t);

// With an environment the binders introduced are annotated with the types
// synthesized for the pieces they bind.
Term ateb_term(const Term& t, const std::optional<TwoSidedEnv>& env = std::nullopt);
// Ateb(t) back to t: the fixed rule chain of each substitution, outermost
// first, each followed by the chains of its two pieces.
Trace<Term> expansion_trace(const Term& t);
// Rule labels of the chain for a substitution of this shape.
std::vector<std::string_view> chain_for(const Term& t);

std::string alpha_key(const Term& t);
bool alpha_equal(const Term& a, const Term& b);
std::string to_string(const Term& t);
Term parse(std::string_view src);

class System {
 public:
  using Term = mmt::Term;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const { return alpha_key(t); }
};

void enumerate(int max_size, const std::vector<Name>& term_vars,
               const std::vector<Name>& covars, const std::function<void(const Term&)>& visit);
void annotate_all(const Term& t, const std::function<void(const Term&)>& visit);

}  // namespace ateb::mmt
