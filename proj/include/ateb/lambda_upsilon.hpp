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

namespace ateb::lu {

// Terms and substitutions share one node type.
//   Idx(num)  App(t, u)  Lam(body; annot)  Clo(t, s)
//   Slash(t)  Lift(s)    Shift
enum class Kind : std::uint8_t { Idx, App, Lam, Clo, Slash, Lift, Shift };
using Term = Tree<Kind>;

Term idx(std::uint32_t n);
Term app(Term f, Term a);
Term lam(Term body, Type annot = {});
Term clo(Term t, Term s);
Term slash(Term t);
Term lift(Term s);
Term shift();
// The i-fold lift of s.
Term lifts(std::size_t i, Term s);

bool is_sub(const Term& x);

// s = lift^i(base) with base a Slash or a Shift.
struct LiftView {
  std::size_t depth;
  Term base;
};
LiftView view_lifts(const Term& s);

// True when t contains no Lift and no Shift.
bool eligible(const Term& t);

Term embed(const pure::Db& t);
// Precondition: t is substitution-free.
pure::Db to_pure(const Term& t);

// The re-indexing functions.  They throw PreconditionError on a term that
// contains a Lift or a Shift.
Term flift_shift(std::size_t i, const Term& t);
Term fshift(std::size_t i, const Term& t);
Term flift_cons(std::size_t i, const Term& t);

enum class LiftTyping {
  Literal,  // A,G |- ^(s) : A,B,G  only when  G |- s : B,G
  General,  // A,G |- ^(s) : A,G'   whenever   G |- s : G'
};

Checked<Type> typecheck(const DbEnv& env, const Term& t, LiftTyping mode = LiftTyping::Literal);
Checked<DbEnv> typecheck_sub(const DbEnv& env, const Term& s,
                             LiftTyping mode = LiftTyping::Literal);

Term ateb_term(const Term& t, const std::optional<DbEnv>& env = std::nullopt,
               LiftTyping mode = LiftTyping::Literal);
pure::Db ateb_of(const Term& t, const std::optional<DbEnv>& env = std::nullopt,
                 LiftTyping mode = LiftTyping::Literal);

Term overline(const Term& t);

enum class Skeleton {
  Literal,      // t <= t'[!] only for a bare shift
  Generalized,  // t <= t'[^i(!)] for any i
};

bool preceq(const Term& u, const Term& t, Skeleton mode = Skeleton::Generalized);
bool preceq_sub(const Term& s, const Term& s2, Skeleton mode = Skeleton::Generalized);
bool lessdot(const Term& u, const Term& t, Skeleton mode = Skeleton::Generalized);

struct Witness {
  Term u;
  Trace<Term> trace;  // B steps from ateb_term(t)
};
Witness init_witness(const Term& t, const std::optional<DbEnv>& env = std::nullopt,
                     LiftTyping mode = LiftTyping::Literal);

std::string to_string(const Term& t);
Term parse(std::string_view src);

class System {
 public:
  using Term = lu::Term;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const { return to_string(t); }
  RuleSet b_rules() const;
  RuleSet r2_rules() const;
};

// Given u <. t and a step t -> t', finds u' with u <. t': exactly one B
// step when the step is B, otherwise at most `depth` non-B steps.
std::optional<Trace<Term>> simulate_step(const ReductionStep<Term>& step, const Term& u,
                                         std::size_t depth = 3);

// Terms (not substitutions) of size <= max_size, indices 1..max_size+1.
void enumerate(int max_size, const std::function<void(const Term&)>& visit);
void annotate_all(const Term& t, const std::function<void(const Term&)>& visit);

}  // namespace ateb::lu
