#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ateb/error.hpp"
#include "ateb/kernel.hpp"
#include "ateb/tree.hpp"
#include "ateb/types.hpp"

namespace ateb::pure {

// Named terms.
enum class NKind : std::uint8_t { Var, App, Lam };
using Named = Tree<NKind>;

Named var(const Name& x);
Named app(Named f, Named a);
Named lam(const Name& x, Named body, Type annot = {});

// De Bruijn terms; indices start at 1.
enum class DKind : std::uint8_t { Idx, App, Lam };
using Db = Tree<DKind>;

Db idx(std::uint32_t n);
Db app(Db f, Db a);
Db lam(Db body, Type annot = {});

NameSet free_vars(const Named& t);

// Capture-avoiding t{x := u}.  Bound names clashing with FV(u) are renamed
// with fresh_name.
Named subst_meta(const Named& t, const Name& x, const Named& u);
// Simultaneous substitution; names absent from the map are left alone.
Named subst_simultaneous(const Named& t, const std::map<Name, Named>& m);

// t[1 := u] with the usual shifting: the contractum of (\t) u.
Db db_beta(const Db& body, const Db& arg);
// Adds d to every index > cutoff.
Db db_shift(const Db& t, long d, std::uint32_t cutoff = 0);

// Alpha-canonical rendering: bound names become _0, _1, ... by depth.
std::string alpha_key(const Named& t);
bool alpha_equal(const Named& a, const Named& b);

// Translation to De Bruijn form.  `free` lists the free names, index 1
// first below all binders.  Throws PreconditionError for names not listed.
Db to_db(const Named& t, const std::vector<Name>& free);

Checked<Type> typecheck(const NamedEnv& env, const Named& t);
Checked<Type> typecheck(const DbEnv& env, const Db& t);

std::string to_string(const Named& t);
std::string to_string(const Db& t);
Named parse_named(std::string_view src);
Db parse_db(std::string_view src);

class NamedSystem {
 public:
  using Term = Named;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const { return alpha_key(t); }
};

class DbSystem {
 public:
  using Term = Db;
  std::span<const std::string_view> rules() const;
  void root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const;
  std::string key(const Term& t) const { return to_string(t); }
};

// Every term of size <= max_size over the name pool (named) or with
// indices 1..max_size+1 (De Bruijn), unannotated, each exactly once.
void enumerate_named(int max_size, const std::vector<Name>& pool,
                     const std::function<void(const Named&)>& visit);
void enumerate_db(int max_size, const std::function<void(const Db&)>& visit);

// Every way of annotating the binders of t with sample_types().
void annotate_all(const Named& t, const std::function<void(const Named&)>& visit);
void annotate_all(const Db& t, const std::function<void(const Db&)>& visit);

}  // namespace ateb::pure
