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

namespace ateb::lx {

// Subst node: kids {body, substituend}, name = the substituted variable.
enum class Kind : std::uint8_t { Var, App, Lam, Subst };
using Term = Tree<Kind>;

Term var(const Name& x);
Term app(Term f, Term a);
Term lam(const Name& x, Term body, Type annot = {});
Term subst(Term body, const Name& x, Term u);

NameSet free_vars(const Term& t);
std::size_t count_substs(const Term& t);

Term embed(const pure::Named& t);

Checked<Type> typecheck(const NamedEnv& env, const Term& t);

// Replaces every t[u/x] by (\x. t) u.  With an environment, the binders it
// introduces are annotated with the type synthesized for u.
pure::Named ateb_of(const Term& t, const std::optional<NamedEnv>& env = std::nullopt);

std::string alpha_key(const Term& t);
std::string to_string(const Term& t);
Term parse(std::string_view src);

class System {
 public:
  using Term = lx::Term;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const { return alpha_key(t); }
};

void enumerate(int max_size, const std::vector<Name>& pool,
               const std::function<void(const Term&)>& visit);
void annotate_all(const Term& t, const std::function<void(const Term&)>& visit);

}  // namespace ateb::lx
