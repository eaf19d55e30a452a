#include "ateb/pure.hpp"

#include <algorithm>

#include "ateb/enumerate.hpp"
#include "ateb/lexer.hpp"

namespace ateb::pure {

Named var(const Name& x) { return Named::make(NKind::Var, {.name = x}); }
Named app(Named f, Named a) { return Named::make(NKind::App, {}, {std::move(f), std::move(a)}); }
Named lam(const Name& x, Named body, Type annot) {
  return Named::make(NKind::Lam, {.name = x, .annot = std::move(annot)}, {std::move(body)});
}

Db idx(std::uint32_t n) { return Db::make(DKind::Idx, {.num = n}); }
Db app(Db f, Db a) { return Db::make(DKind::App, {}, {std::move(f), std::move(a)}); }
Db lam(Db body, Type annot) {
  return Db::make(DKind::Lam, {.annot = std::move(annot)}, {std::move(body)});
}

namespace {

void fv(const Named& t, NameSet& bound, NameSet& out) {
  switch (t.kind()) {
    case NKind::Var:
      if (!bound.contains(t.name())) out.insert(t.name());
      return;
    case NKind::App:
      fv(t.kid(0), bound, out);
      fv(t.kid(1), bound, out);
      return;
    case NKind::Lam: {
      bool had = bound.contains(t.name());
      bound.insert(t.name());
      fv(t.kid(0), bound, out);
      if (!had) bound.erase(t.name());
      return;
    }
  }
}

}  // namespace

NameSet free_vars(const Named& t) {
  NameSet bound, out;
  fv(t, bound, out);
  return out;
}

Named subst_meta(const Named& t, const Name& x, const Named& u) {
  switch (t.kind()) {
    case NKind::Var:
      return t.name() == x ? u : t;
    case NKind::App:
      return app(subst_meta(t.kid(0), x, u), subst_meta(t.kid(1), x, u));
    case NKind::Lam: {
      const Name& y = t.name();
      if (y == x) return t;
      const Named& b = t.kid(0);
      NameSet fu = free_vars(u);
      if (fu.contains(y) && free_vars(b).contains(x)) {
        NameSet used = fu.unite(all_names(b)).with(x);
        Name y2 = fresh_name(y, used);
        Named b2 = subst_meta(b, y, var(y2));
        return lam(y2, subst_meta(b2, x, u), t.annot());
      }
      return lam(y, subst_meta(b, x, u), t.annot());
    }
  }
  return t;
}

Named subst_simultaneous(const Named& t, const std::map<Name, Named>& m) {
  switch (t.kind()) {
    case NKind::Var: {
      auto it = m.find(t.name());
      return it == m.end() ? t : it->second;
    }
    case NKind::App:
      return app(subst_simultaneous(t.kid(0), m), subst_simultaneous(t.kid(1), m));
    case NKind::Lam: {
      std::map<Name, Named> inner = m;
      inner.erase(t.name());
      const Named& b = t.kid(0);
      NameSet fb = free_vars(b);
      NameSet range_fv;
      for (const auto& [k, v] : inner)
        if (fb.contains(k)) range_fv = range_fv.unite(free_vars(v));
      if (inner.empty()) return t;
      Name y = t.name();
      Named body = b;
      if (range_fv.contains(y)) {
        NameSet used = range_fv.unite(all_names(b));
        for (const auto& [k, v] : inner) used.insert(k);
        Name y2 = fresh_name(y, used);
        body = subst_meta(b, y, var(y2));
        y = y2;
      }
      return lam(y, subst_simultaneous(body, inner), t.annot());
    }
  }
  return t;
}

Db db_shift(const Db& t, long d, std::uint32_t cutoff) {
  switch (t.kind()) {
    case DKind::Idx:
      if (t.num() > cutoff) {
        long n = static_cast<long>(t.num()) + d;
        if (n < 1) throw PreconditionError("db_shift: index underflow");
        return idx(static_cast<std::uint32_t>(n));
      }
      return t;
    case DKind::App:
      return app(db_shift(t.kid(0), d, cutoff), db_shift(t.kid(1), d, cutoff));
    case DKind::Lam:
      return lam(db_shift(t.kid(0), d, cutoff + 1), t.annot());
  }
  return t;
}

namespace {

Db db_subst(const Db& t, std::uint32_t j, const Db& s) {
  switch (t.kind()) {
    case DKind::Idx:
      return t.num() == j ? s : t;
    case DKind::App:
      return app(db_subst(t.kid(0), j, s), db_subst(t.kid(1), j, s));
    case DKind::Lam:
      return lam(db_subst(t.kid(0), j + 1, db_shift(s, 1)), t.annot());
  }
  return t;
}

void key_into(const Named& t, std::vector<Name>& bound, std::string& out) {
  switch (t.kind()) {
    case NKind::Var: {
      for (std::size_t i = bound.size(); i-- > 0;)
        if (bound[i] == t.name()) {
          out += "_" + std::to_string(i);
          return;
        }
      out += t.name();
      return;
    }
    case NKind::App:
      out += "(";
      key_into(t.kid(0), bound, out);
      out += " ";
      key_into(t.kid(1), bound, out);
      out += ")";
      return;
    case NKind::Lam:
      out += "\\_" + std::to_string(bound.size());
      if (t.annot()) out += ":" + ateb::to_string(t.annot());
      out += ".";
      bound.push_back(t.name());
      key_into(t.kid(0), bound, out);
      bound.pop_back();
      return;
  }
}

Db to_db_rec(const Named& t, std::vector<Name>& bound, const std::vector<Name>& free) {
  switch (t.kind()) {
    case NKind::Var: {
      for (std::size_t i = bound.size(); i-- > 0;)
        if (bound[i] == t.name()) return idx(static_cast<std::uint32_t>(bound.size() - i));
      auto it = std::find(free.begin(), free.end(), t.name());
      if (it == free.end()) throw PreconditionError("to_db: unlisted free name " + t.name());
      return idx(static_cast<std::uint32_t>(bound.size() + (it - free.begin()) + 1));
    }
    case NKind::App:
      return app(to_db_rec(t.kid(0), bound, free), to_db_rec(t.kid(1), bound, free));
    case NKind::Lam: {
      bound.push_back(t.name());
      Db b = to_db_rec(t.kid(0), bound, free);
      bound.pop_back();
      return lam(b, t.annot());
    }
  }
  return {};
}

}  // namespace

Db db_beta(const Db& body, const Db& arg) {
  return db_shift(db_subst(body, 1, db_shift(arg, 1)), -1);
}

std::string alpha_key(const Named& t) {
  std::vector<Name> bound;
  std::string out;
  key_into(t, bound, out);
  return out;
}

bool alpha_equal(const Named& a, const Named& b) { return alpha_key(a) == alpha_key(b); }

Db to_db(const Named& t, const std::vector<Name>& free) {
  std::vector<Name> bound;
  return to_db_rec(t, bound, free);
}

Checked<Type> typecheck(const NamedEnv& env, const Named& t) {
  switch (t.kind()) {
    case NKind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) return type_error(TypeErrorKind::Unbound, "unbound " + t.name());
      return it->second;
    }
    case NKind::App: {
      auto f = typecheck(env, t.kid(0));
      if (!f) return f;
      auto a = typecheck(env, t.kid(1));
      if (!a) return a;
      if (!f->is_arrow() || f->left() != *a)
        return type_error(TypeErrorKind::Mismatch, "cannot apply " + ateb::to_string(*f) +
                                                       " to " + ateb::to_string(*a));
      return f->right();
    }
    case NKind::Lam: {
      if (!t.annot())
        return type_error(TypeErrorKind::Unannotated, "unannotated binder " + t.name());
      auto b = typecheck(with_binding(env, t.name(), t.annot()), t.kid(0));
      if (!b) return b;
      return Type::arrow(t.annot(), *b);
    }
  }
  return type_error(TypeErrorKind::Shape, "bad term");
}

Checked<Type> typecheck(const DbEnv& env, const Db& t) {
  switch (t.kind()) {
    case DKind::Idx: {
      auto a = env.lookup(t.num());
      if (!a) return type_error(TypeErrorKind::Unbound, "unbound index " + std::to_string(t.num()));
      return *a;
    }
    case DKind::App: {
      auto f = typecheck(env, t.kid(0));
      if (!f) return f;
      auto a = typecheck(env, t.kid(1));
      if (!a) return a;
      if (!f->is_arrow() || f->left() != *a)
        return type_error(TypeErrorKind::Mismatch, "cannot apply " + ateb::to_string(*f) +
                                                       " to " + ateb::to_string(*a));
      return f->right();
    }
    case DKind::Lam: {
      if (!t.annot()) return type_error(TypeErrorKind::Unannotated, "unannotated binder");
      auto b = typecheck(env.push(t.annot()), t.kid(0));
      if (!b) return b;
      return Type::arrow(t.annot(), *b);
    }
  }
  return type_error(TypeErrorKind::Shape, "bad term");
}

namespace {

// pos: 0 top, 1 function of an application, 2 argument.
std::string print(const Named& t, int pos) {
  switch (t.kind()) {
    case NKind::Var:
      return t.name();
    case NKind::App: {
      std::string s = print(t.kid(0), 1) + " " + print(t.kid(1), 2);
      return pos == 2 ? "(" + s + ")" : s;
    }
    case NKind::Lam: {
      std::string s = "\\" + t.name();
      if (t.annot()) s += ":" + ateb::to_string(t.annot());
      s += ". " + print(t.kid(0), 0);
      return pos ? "(" + s + ")" : s;
    }
  }
  return "?";
}

std::string print(const Db& t, int pos) {
  switch (t.kind()) {
    case DKind::Idx:
      return std::to_string(t.num());
    case DKind::App: {
      std::string s = print(t.kid(0), 1) + " " + print(t.kid(1), 2);
      return pos == 2 ? "(" + s + ")" : s;
    }
    case DKind::Lam: {
      std::string s = "\\";
      if (t.annot()) s += ateb::to_string(t.annot());
      s += "." + print(t.kid(0), 0);
      return pos ? "(" + s + ")" : s;
    }
  }
  return "?";
}

Named parse_n(TokenStream& ts);

Named parse_n_atom(TokenStream& ts) {
  if (ts.accept("(")) {
    Named t = parse_n(ts);
    ts.expect(")");
    return t;
  }
  return var(ts.expect_ident());
}

Named parse_n(TokenStream& ts) {
  if (ts.accept("\\")) {
    Name x = ts.expect_ident();
    Type a;
    if (ts.accept(":")) a = parse_type_from(ts);
    ts.expect(".");
    return lam(x, parse_n(ts), a);
  }
  Named t = parse_n_atom(ts);
  for (;;) {
    if (ts.is("\\")) return app(t, parse_n(ts));
    if (ts.is("(") || ts.peek().kind == Token::Kind::Ident) {
      t = app(t, parse_n_atom(ts));
      continue;
    }
    return t;
  }
}

Db parse_d(TokenStream& ts);

Db parse_d_atom(TokenStream& ts) {
  if (ts.accept("(")) {
    Db t = parse_d(ts);
    ts.expect(")");
    return t;
  }
  auto n = ts.expect_number();
  if (n == 0) ts.fail("indices start at 1");
  return idx(static_cast<std::uint32_t>(n));
}

Db parse_d(TokenStream& ts) {
  if (ts.accept("\\")) {
    Type a;
    if (!ts.is(".")) a = parse_type_from(ts);
    ts.expect(".");
    return lam(parse_d(ts), a);
  }
  Db t = parse_d_atom(ts);
  for (;;) {
    if (ts.is("\\")) return app(t, parse_d(ts));
    if (ts.is("(") || ts.peek().kind == Token::Kind::Number) {
      t = app(t, parse_d_atom(ts));
      continue;
    }
    return t;
  }
}

constexpr std::string_view kRules[] = {"Beta"};

}  // namespace

std::string to_string(const Named& t) { return print(t, 0); }
std::string to_string(const Db& t) { return print(t, 0); }

Named parse_named(std::string_view src) {
  TokenStream ts(src);
  Named t = parse_n(ts);
  ts.expect_end();
  return t;
}

Db parse_db(std::string_view src) {
  TokenStream ts(src);
  Db t = parse_d(ts);
  ts.expect_end();
  return t;
}

std::span<const std::string_view> NamedSystem::rules() const { return kRules; }

void NamedSystem::root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const {
  if (r.has(0) && t.kind() == NKind::App && t.kid(0).kind() == NKind::Lam) {
    const Named& f = t.kid(0);
    out.emplace_back(0, subst_meta(f.kid(0), f.name(), t.kid(1)));
  }
}

std::span<const std::string_view> DbSystem::rules() const { return kRules; }

void DbSystem::root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const {
  if (r.has(0) && t.kind() == DKind::App && t.kid(0).kind() == DKind::Lam)
    out.emplace_back(0, db_beta(t.kid(0).kid(0), t.kid(1)));
}

void enumerate_named(int max_size, const std::vector<Name>& pool,
                     const std::function<void(const Named&)>& visit) {
  enumerate_sized<Named>(
      max_size,
      [&](int k, const std::vector<std::vector<Named>>& p, auto&& emit) {
        if (k == 1) {
          for (const auto& x : pool) emit(var(x));
          return;
        }
        for (const auto& b : p[static_cast<std::size_t>(k - 1)])
          for (const auto& x : pool) emit(lam(x, b));
        split2(k - 1, [&](int a, int b) {
          for (const auto& f : p[static_cast<std::size_t>(a)])
            for (const auto& g : p[static_cast<std::size_t>(b)]) emit(app(f, g));
        });
      },
      visit);
}

void enumerate_db(int max_size, const std::function<void(const Db&)>& visit) {
  enumerate_sized<Db>(
      max_size,
      [&](int k, const std::vector<std::vector<Db>>& p, auto&& emit) {
        if (k == 1) {
          for (int n = 1; n <= max_size + 1; ++n) emit(idx(static_cast<std::uint32_t>(n)));
          return;
        }
        for (const auto& b : p[static_cast<std::size_t>(k - 1)]) emit(lam(b));
        split2(k - 1, [&](int a, int b) {
          for (const auto& f : p[static_cast<std::size_t>(a)])
            for (const auto& g : p[static_cast<std::size_t>(b)]) emit(app(f, g));
        });
      },
      visit);
}

void annotate_all(const Named& t, const std::function<void(const Named&)>& visit) {
  annotate_binders<NKind>(t, [](NKind k) { return k == NKind::Lam; }, visit);
}

void annotate_all(const Db& t, const std::function<void(const Db&)>& visit) {
  annotate_binders<DKind>(t, [](DKind k) { return k == DKind::Lam; }, visit);
}

}  // namespace ateb::pure
