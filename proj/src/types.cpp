#include "ateb/types.hpp"

#include <stdexcept>

#include "ateb/lexer.hpp"

namespace ateb {

Type Type::base(std::string name) {
  Type t;
  t.rep_ = std::make_shared<const Rep>(Rep{Kind::Base, std::move(name), {}, {}});
  return t;
}

Type Type::arrow(Type a, Type b) {
  Type t;
  t.rep_ = std::make_shared<const Rep>(Rep{Kind::Arrow, {}, std::move(a), std::move(b)});
  return t;
}

Type Type::minus(Type a, Type b) {
  Type t;
  t.rep_ = std::make_shared<const Rep>(Rep{Kind::Minus, {}, std::move(a), std::move(b)});
  return t;
}

bool operator==(const Type& a, const Type& b) {
  if (a.rep_ == b.rep_) return true;
  if (!a.rep_ || !b.rep_) return false;
  if (a.rep_->kind != b.rep_->kind) return false;
  if (a.rep_->kind == Type::Kind::Base) return a.rep_->name == b.rep_->name;
  return a.rep_->left == b.rep_->left && a.rep_->right == b.rep_->right;
}

namespace {

std::string print(const Type& t, int ctx) {
  // ctx 0: top, 1: left of arrow / operand of minus, 2: right of minus
  if (!t) return "?";
  switch (t.kind()) {
    case Type::Kind::Base:
      return t.name();
    case Type::Kind::Arrow: {
      std::string s = print(t.left(), 1) + " -> " + print(t.right(), 0);
      return ctx == 0 ? s : "(" + s + ")";
    }
    case Type::Kind::Minus: {
      std::string s = print(t.left(), 1) + " - " + print(t.right(), 2);
      return ctx == 2 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

Type parse_arrow(TokenStream& ts);

Type parse_atom(TokenStream& ts) {
  if (ts.accept("(")) {
    Type t = parse_arrow(ts);
    ts.expect(")");
    return t;
  }
  return Type::base(ts.expect_ident());
}

Type parse_minus(TokenStream& ts) {
  Type t = parse_atom(ts);
  while (ts.accept("-")) t = Type::minus(t, parse_atom(ts));
  return t;
}

Type parse_arrow(TokenStream& ts) {
  Type t = parse_minus(ts);
  if (ts.accept("->")) return Type::arrow(t, parse_arrow(ts));
  return t;
}

}  // namespace

std::string to_string(const Type& t) { return print(t, 0); }

Type parse_type_from(TokenStream& ts) { return parse_arrow(ts); }

Type parse_type(std::string_view src) {
  TokenStream ts(src);
  Type t = parse_arrow(ts);
  ts.expect_end();
  return t;
}

const std::vector<Type>& sample_types() {
  static const std::vector<Type> ts = [] {
    Type i = Type::iota();
    Type ii = Type::arrow(i, i);
    return std::vector<Type>{i, ii, Type::arrow(ii, i)};
  }();
  return ts;
}

DbEnv DbEnv::drop(std::size_t k) const {
  if (k > v_.size()) throw std::out_of_range("environment drop past end");
  return DbEnv(std::vector<Type>(v_.begin() + static_cast<long>(k), v_.end()));
}

DbEnv DbEnv::insert_at(std::size_t i, const Type& a) const {
  if (i > v_.size()) throw std::out_of_range("environment insert past end");
  std::vector<Type> r = v_;
  r.insert(r.begin() + static_cast<long>(i), a);
  return DbEnv(std::move(r));
}

DbEnv DbEnv::erase_at(std::size_t i) const {
  if (i >= v_.size()) throw std::out_of_range("environment erase past end");
  std::vector<Type> r = v_;
  r.erase(r.begin() + static_cast<long>(i));
  return DbEnv(std::move(r));
}

std::pair<DbEnv, DbEnv> env_split_db(const DbEnv& env, std::size_t i) {
  if (i > env.size()) throw std::out_of_range("env_split_db: index past end");
  const auto& e = env.entries();
  return {DbEnv(std::vector<Type>(e.begin(), e.begin() + static_cast<long>(i))),
          DbEnv(std::vector<Type>(e.begin() + static_cast<long>(i), e.end()))};
}

DbEnv concat(const DbEnv& a, const DbEnv& b) {
  std::vector<Type> r = a.entries();
  r.insert(r.end(), b.entries().begin(), b.entries().end());
  return DbEnv(std::move(r));
}

NamedEnv with_binding(NamedEnv env, const Name& x, const Type& a) {
  env[x] = a;
  return env;
}

NameSet domain(const NamedEnv& env) {
  std::vector<Name> xs;
  for (const auto& [k, v] : env) xs.push_back(k);
  return NameSet(std::move(xs));
}

std::string to_string(const DbEnv& env) {
  std::string s;
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (i) s += ", ";
    s += to_string(env.entries()[i]);
  }
  return s;
}

std::string to_string(const NamedEnv& env) {
  std::string s;
  for (const auto& [x, a] : env) {
    if (!s.empty()) s += ", ";
    s += x + ":" + to_string(a);
  }
  return s;
}

std::string to_string(const TwoSidedEnv& env) {
  return to_string(env.left) + " | " + to_string(env.right);
}

DbEnv parse_db_env(std::string_view src) {
  TokenStream ts(src);
  std::vector<Type> out;
  if (!ts.at_end()) {
    do {
      out.push_back(parse_arrow(ts));
    } while (ts.accept(","));
  }
  ts.expect_end();
  return DbEnv(std::move(out));
}

namespace {

NamedEnv parse_named_bindings(TokenStream& ts, bool stop_at_bar) {
  NamedEnv env;
  if (ts.at_end() || (stop_at_bar && ts.is("|"))) return env;
  do {
    std::string x = ts.expect_ident();
    ts.expect(":");
    env[x] = parse_arrow(ts);
  } while (ts.accept(","));
  return env;
}

}  // namespace

NamedEnv parse_named_env(std::string_view src) {
  TokenStream ts(src);
  NamedEnv env = parse_named_bindings(ts, false);
  ts.expect_end();
  return env;
}

TwoSidedEnv parse_two_sided_env(std::string_view src) {
  TokenStream ts(src);
  TwoSidedEnv env;
  env.left = parse_named_bindings(ts, true);
  if (ts.accept("|")) env.right = parse_named_bindings(ts, false);
  ts.expect_end();
  return env;
}

std::vector<DbEnv> sample_db_envs(std::size_t max_len) {
  std::vector<DbEnv> out{DbEnv{}};
  std::vector<DbEnv> layer{DbEnv{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<DbEnv> next;
    for (const auto& e : layer)
      for (const auto& t : sample_types()) {
        std::vector<Type> v = e.entries();
        v.push_back(t);
        next.emplace_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<NamedEnv> sample_named_envs(const NameSet& dom) {
  std::vector<NamedEnv> out{NamedEnv{}};
  for (const auto& x : dom) {
    std::vector<NamedEnv> next;
    for (const auto& e : out)
      for (const auto& t : sample_types()) next.push_back(with_binding(e, x, t));
    out = std::move(next);
  }
  return out;
}

}  // namespace ateb
