#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ateb/names.hpp"

namespace ateb {

// Simple types: base, arrow (A -> B) and subtraction (A - B).  A
// default-constructed Type is "absent" and is used for unannotated binders.
class Type {
 public:
  enum class Kind { Base, Arrow, Minus };

  Type() = default;
  static Type base(std::string name);
  static Type iota() { return base("i"); }
  static Type arrow(Type a, Type b);
  static Type minus(Type a, Type b);

  explicit operator bool() const { return rep_ != nullptr; }
  Kind kind() const;
  const std::string& name() const;
  const Type& left() const;
  const Type& right() const;
  bool is_arrow() const;
  bool is_minus() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Rep;
  std::shared_ptr<const Rep> rep_;
};

struct Type::Rep {
  Kind kind;
  std::string name;
  Type left, right;
};

inline const std::string& Type::name() const { return rep_->name; }
inline const Type& Type::left() const { return rep_->left; }
inline const Type& Type::right() const { return rep_->right; }
inline Type::Kind Type::kind() const { return rep_->kind; }
inline bool Type::is_arrow() const { return rep_ && rep_->kind == Kind::Arrow; }
inline bool Type::is_minus() const { return rep_ && rep_->kind == Kind::Minus; }

std::string to_string(const Type& t);
Type parse_type(std::string_view src);

class TokenStream;
// Parses a type starting at the current token (used by term parsers).
Type parse_type_from(TokenStream& ts);

// The three types used by every typed enumeration: i, i -> i, (i -> i) -> i.
const std::vector<Type>& sample_types();

// De Bruijn environment; entry 0 is index 1.
class DbEnv {
 public:
  DbEnv() = default;
  explicit DbEnv(std::vector<Type> ts) : v_(std::move(ts)) {}

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  const std::vector<Type>& entries() const { return v_; }
  std::optional<Type> lookup(std::size_t n) const {
    if (n == 0 || n > v_.size()) return std::nullopt;
    return v_[n - 1];
  }
  DbEnv push(const Type& a) const {
    std::vector<Type> r;
    r.reserve(v_.size() + 1);
    r.push_back(a);
    r.insert(r.end(), v_.begin(), v_.end());
    return DbEnv(std::move(r));
  }
  DbEnv drop(std::size_t k) const;
  DbEnv insert_at(std::size_t i, const Type& a) const;
  DbEnv erase_at(std::size_t i) const;

  friend bool operator==(const DbEnv&, const DbEnv&) = default;

 private:
  std::vector<Type> v_;
};

// Splits an environment into its first i entries and the rest.  Throws
// std::out_of_range when i exceeds the length.
std::pair<DbEnv, DbEnv> env_split_db(const DbEnv& env, std::size_t i);

DbEnv concat(const DbEnv& a, const DbEnv& b);

using NamedEnv = std::map<Name, Type>;

NamedEnv with_binding(NamedEnv env, const Name& x, const Type& a);
NameSet domain(const NamedEnv& env);

struct TwoSidedEnv {
  NamedEnv left;   // term variables
  NamedEnv right;  // context variables
};

std::string to_string(const DbEnv& env);
std::string to_string(const NamedEnv& env);
std::string to_string(const TwoSidedEnv& env);

// "i, i -> i" (index 1 first) or "" for the empty environment.
DbEnv parse_db_env(std::string_view src);
// "x:i, y:i -> i".
NamedEnv parse_named_env(std::string_view src);
// "x:i | a:i -> i".
TwoSidedEnv parse_two_sided_env(std::string_view src);

// All De Bruijn environments of length <= max_len over sample_types().
std::vector<DbEnv> sample_db_envs(std::size_t max_len);
// All assignments of sample_types() to the names in dom.
std::vector<NamedEnv> sample_named_envs(const NameSet& dom);

}  // namespace ateb
