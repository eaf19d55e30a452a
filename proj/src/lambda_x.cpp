#include "ateb/lambda_x.hpp"

#include "ateb/enumerate.hpp"
#include "ateb/lexer.hpp"

namespace ateb::lx {

Term var(const Name& x) { return Term::make(Kind::Var, {.name = x}); }
Term app(Term f, Term a) { return Term::make(Kind::App, {}, {std::move(f), std::move(a)}); }
Term lam(const Name& x, Term body, Type annot) {
  return Term::make(Kind::Lam, {.name = x, .annot = std::move(annot)}, {std::move(body)});
}
Term subst(Term body, const Name& x, Term u) {
  return Term::make(Kind::Subst, {.name = x}, {std::move(body), std::move(u)});
}

namespace {

void fv(const Term& t, NameSet& out) {
  switch (t.kind()) {
    case Kind::Var:
      out.insert(t.name());
      return;
    case Kind::App:
      fv(t.kid(0), out);
      fv(t.kid(1), out);
      return;
    case Kind::Lam: {
      NameSet b;
      fv(t.kid(0), b);
      out = out.unite(b.without(t.name()));
      return;
    }
    case Kind::Subst: {
      NameSet b;
      fv(t.kid(0), b);
      out = out.unite(b.without(t.name()));
      fv(t.kid(1), out);
      return;
    }
  }
}

// Renames free occurrences of `from` to `to`; `to` must not occur in t.
Term rename_free(const Term& t, const Name& from, const Name& to) {
  switch (t.kind()) {
    case Kind::Var:
      return t.name() == from ? var(to) : t;
    case Kind::App:
      return app(rename_free(t.kid(0), from, to), rename_free(t.kid(1), from, to));
    case Kind::Lam:
      if (t.name() == from) return t;
      return lam(t.name(), rename_free(t.kid(0), from, to), t.annot());
    case Kind::Subst: {
      Term u = rename_free(t.kid(1), from, to);
      Term b = t.name() == from ? t.kid(0) : rename_free(t.kid(0), from, to);
      return subst(b, t.name(), u);
    }
  }
  return t;
}

void key_into(const Term& t, std::vector<Name>& bound, std::string& out) {
  switch (t.kind()) {
    case Kind::Var:
      for (std::size_t i = bound.size(); i-- > 0;)
        if (bound[i] == t.name()) {
          out += "_" + std::to_string(i);
          return;
        }
      out += t.name();
      return;
    case Kind::App:
      out += "(";
      key_into(t.kid(0), bound, out);
      out += " ";
      key_into(t.kid(1), bound, out);
      out += ")";
      return;
    case Kind::Lam:
      out += "\\_" + std::to_string(bound.size());
      if (t.annot()) out += ":" + ateb::to_string(t.annot());
      out += ".";
      bound.push_back(t.name());
      key_into(t.kid(0), bound, out);
      bound.pop_back();
      return;
    case Kind::Subst: {
      out += "{";
      std::size_t level = bound.size();
      bound.push_back(t.name());
      key_into(t.kid(0), bound, out);
      bound.pop_back();
      out += "[";
      key_into(t.kid(1), bound, out);
      out += "/_" + std::to_string(level) + "]}";
      return;
    }
  }
}

// pos: 0 top, 1 function, 2 argument, 3 body of a postfix substitution.
std::string print(const Term& t, int pos) {
  switch (t.kind()) {
    case Kind::Var:
      return t.name();
    case Kind::App: {
      std::string s = print(t.kid(0), 1) + " " + print(t.kid(1), 2);
      return pos >= 2 ? "(" + s + ")" : s;
    }
    case Kind::Lam: {
      std::string s = "\\" + t.name();
      if (t.annot()) s += ":" + ateb::to_string(t.annot());
      s += ". " + print(t.kid(0), 0);
      return pos ? "(" + s + ")" : s;
    }
    case Kind::Subst:
      return print(t.kid(0), 3) + "[" + print(t.kid(1), 0) + "/" + t.name() + "]";
  }
  return "?";
}

Term parse_term(TokenStream& ts);

Term parse_atom(TokenStream& ts) {
  Term t;
  if (ts.accept("(")) {
    t = parse_term(ts);
    ts.expect(")");
  } else {
    t = var(ts.expect_ident());
  }
  while (ts.accept("[")) {
    Term u = parse_term(ts);
    ts.expect("/");
    Name x = ts.expect_ident();
    ts.expect("]");
    t = subst(t, x, u);
  }
  return t;
}

Term parse_term(TokenStream& ts) {
  if (ts.accept("\\")) {
    Name x = ts.expect_ident();
    Type a;
    if (ts.accept(":")) a = parse_type_from(ts);
    ts.expect(".");
    return lam(x, parse_term(ts), a);
  }
  Term t = parse_atom(ts);
  for (;;) {
    if (ts.is("\\")) return app(t, parse_term(ts));
    if (ts.is("(") || ts.peek().kind == Token::Kind::Ident) {
      t = app(t, parse_atom(ts));
      continue;
    }
    return t;
  }
}

constexpr std::string_view kRules[] = {"Beta", "App", "Lambda", "Var1", "Var2"};

}  // namespace

NameSet free_vars(const Term& t) {
  NameSet out;
  fv(t, out);
  return out;
}

std::size_t count_substs(const Term& t) {
  return count_kind<Kind>(t, [](Kind k) { return k == Kind::Subst; });
}

Term embed(const pure::Named& t) {
  switch (t.kind()) {
    case pure::NKind::Var:
      return var(t.name());
    case pure::NKind::App:
      return app(embed(t.kid(0)), embed(t.kid(1)));
    case pure::NKind::Lam:
      return lam(t.name(), embed(t.kid(0)), t.annot());
  }
  return {};
}

Checked<Type> typecheck(const NamedEnv& env, const Term& t) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) return type_error(TypeErrorKind::Unbound, "unbound " + t.name());
      return it->second;
    }
    case Kind::App: {
      auto f = typecheck(env, t.kid(0));
      if (!f) return f;
      auto a = typecheck(env, t.kid(1));
      if (!a) return a;
      if (!f->is_arrow() || f->left() != *a)
        return type_error(TypeErrorKind::Mismatch, "cannot apply " + ateb::to_string(*f) +
                                                       " to " + ateb::to_string(*a));
      return f->right();
    }
    case Kind::Lam: {
      if (!t.annot())
        return type_error(TypeErrorKind::Unannotated, "unannotated binder " + t.name());
      auto b = typecheck(with_binding(env, t.name(), t.annot()), t.kid(0));
      if (!b) return b;
      return Type::arrow(t.annot(), *b);
    }
    case Kind::Subst: {
      auto u = typecheck(env, t.kid(1));
      if (!u) return u;
      return typecheck(with_binding(env, t.name(), *u), t.kid(0));
    }
  }
  return type_error(TypeErrorKind::Shape, "bad term");
}

pure::Named ateb_of(const Term& t, const std::optional<NamedEnv>& env) {
  switch (t.kind()) {
    case Kind::Var:
      return pure::var(t.name());
    case Kind::App:
      return pure::app(ateb_of(t.kid(0), env), ateb_of(t.kid(1), env));
    case Kind::Lam: {
      std::optional<NamedEnv> inner;
      if (env && t.annot()) inner = with_binding(*env, t.name(), t.annot());
      return pure::lam(t.name(), ateb_of(t.kid(0), inner), t.annot());
    }
    case Kind::Subst: {
      Type b;
      if (env)
        if (auto u = typecheck(*env, t.kid(1))) b = *u;
      std::optional<NamedEnv> inner;
      if (b) inner = with_binding(*env, t.name(), b);
      return pure::app(pure::lam(t.name(), ateb_of(t.kid(0), inner), b), ateb_of(t.kid(1), env));
    }
  }
  return {};
}

std::string alpha_key(const Term& t) {
  std::vector<Name> bound;
  std::string out;
  key_into(t, bound, out);
  return out;
}

std::string to_string(const Term& t) { return print(t, 0); }

Term parse(std::string_view src) {
  TokenStream ts(src);
  Term t = parse_term(ts);
  ts.expect_end();
  return t;
}

std::span<const std::string_view> System::rules() const { return kRules; }

void System::root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const {
  if (t.kind() == Kind::App) {
    if (r.has(0) && t.kid(0).kind() == Kind::Lam) {
      const Term& f = t.kid(0);
      out.emplace_back(0, subst(f.kid(0), f.name(), t.kid(1)));
    }
    return;
  }
  if (t.kind() != Kind::Subst) return;
  const Term& b = t.kid(0);
  const Term& u = t.kid(1);
  const Name& x = t.name();
  switch (b.kind()) {
    case Kind::App:
      if (r.has(1)) out.emplace_back(1, app(subst(b.kid(0), x, u), subst(b.kid(1), x, u)));
      return;
    case Kind::Lam:
      if (r.has(2)) {
        Name y = b.name();
        Term body = b.kid(0);
        if (y == x || free_vars(u).contains(y)) {
          Name y2 = fresh_name(y, all_names(b).unite(all_names(u)).with(x));
          body = rename_free(body, y, y2);
          y = y2;
        }
        out.emplace_back(2, lam(y, subst(body, x, u), b.annot()));
      }
      return;
    case Kind::Var:
      if (b.name() == x) {
        if (r.has(3)) out.emplace_back(3, u);
      } else if (r.has(4)) {
        out.emplace_back(4, b);
      }
      return;
    case Kind::Subst:
      return;
  }
}

void enumerate(int max_size, const std::vector<Name>& pool,
               const std::function<void(const Term&)>& visit) {
  enumerate_sized<Term>(
      max_size,
      [&](int k, const std::vector<std::vector<Term>>& p, auto&& emit) {
        if (k == 1) {
          for (const auto& x : pool) emit(var(x));
          return;
        }
        for (const auto& b : p[static_cast<std::size_t>(k - 1)])
          for (const auto& x : pool) emit(lam(x, b));
        split2(k - 1, [&](int a, int c) {
          for (const auto& f : p[static_cast<std::size_t>(a)])
            for (const auto& g : p[static_cast<std::size_t>(c)]) {
              emit(app(f, g));
              for (const auto& x : pool) emit(subst(f, x, g));
            }
        });
      },
      visit);
}

void annotate_all(const Term& t, const std::function<void(const Term&)>& visit) {
  annotate_binders<Kind>(t, [](Kind k) { return k == Kind::Lam; }, visit);
}

}  // namespace ateb::lx
