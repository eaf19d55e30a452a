#include "ateb/lambda_wsn.hpp"

#include "ateb/enumerate.hpp"
#include "ateb/lexer.hpp"

namespace ateb::lw {

Term var(const Name& x) { return Term::make(Kind::Var, {.name = x}); }
Term app(Term f, Term a) { return Term::make(Kind::App, {}, {std::move(f), std::move(a)}); }
Term lam(const Name& x, Term body, Type annot) {
  return Term::make(Kind::Lam, {.name = x, .annot = std::move(annot)}, {std::move(body)});
}
Term sub(Term t, const Name& x, Term u, NameSet gamma, NameSet delta) {
  return Term::make(Kind::Sub, {.name = x, .set_a = std::move(gamma), .set_b = std::move(delta)},
                    {std::move(t), std::move(u)});
}
Term weak(NameSet lambda, Term t) {
  return Term::make(Kind::Weak, {.set_a = std::move(lambda)}, {std::move(t)});
}

bool substitution_free(const Term& t) {
  return !has_kind<Kind>(t, [](Kind k) { return k == Kind::Sub; });
}

std::size_t count_subs(const Term& t) {
  return count_kind<Kind>(t, [](Kind k) { return k == Kind::Sub; });
}

NameSet required_vars(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      return {t.name()};
    case Kind::App:
      return required_vars(t.kid(0)).unite(required_vars(t.kid(1)));
    case Kind::Lam:
      return required_vars(t.kid(0)).without(t.name());
    case Kind::Weak:
      return required_vars(t.kid(0)).unite(t.set_a());
    case Kind::Sub:
      return required_vars(t.kid(0))
          .without(t.name())
          .unite(t.set_b())
          .unite(required_vars(t.kid(1)))
          .unite(t.set_a());
  }
  return {};
}

namespace {

NamedEnv minus(NamedEnv env, const NameSet& s) {
  for (const auto& x : s) env.erase(x);
  return env;
}

bool within(const NameSet& s, const NamedEnv& env) {
  for (const auto& x : s)
    if (!env.count(x)) return false;
  return true;
}

}  // namespace

bool well_scoped(const NameSet& dom, const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      return dom.size() == 1 && dom.contains(t.name());
    case Kind::Weak:
      return t.set_a().subset_of(dom) && well_scoped(dom.minus(t.set_a()), t.kid(0));
    case Kind::App:
      return well_scoped(dom, t.kid(0)) && well_scoped(dom, t.kid(1));
    case Kind::Lam:
      return !dom.contains(t.name()) && well_scoped(dom.with(t.name()), t.kid(0));
    case Kind::Sub: {
      if (!t.set_a().unite(t.set_b()).subset_of(dom)) return false;
      NameSet inner = dom.minus(t.set_b());
      return well_scoped(dom.minus(t.set_a()), t.kid(1)) && !inner.contains(t.name()) &&
             well_scoped(inner.with(t.name()), t.kid(0));
    }
  }
  return false;
}

Checked<Type> typecheck(const NamedEnv& env, const Term& t) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) return type_error(TypeErrorKind::Unbound, "unbound " + t.name());
      if (env.size() != 1)
        return type_error(TypeErrorKind::SideCondition,
                          "axiom for " + t.name() + " in [" + to_string(env) + "]");
      return it->second;
    }
    case Kind::Weak: {
      if (!within(t.set_a(), env))
        return type_error(TypeErrorKind::SideCondition,
                          "weakening " + to_string(t.set_a()) + " not in [" + to_string(env) + "]");
      return typecheck(minus(env, t.set_a()), t.kid(0));
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
      if (env.count(t.name()))
        return type_error(TypeErrorKind::SideCondition, t.name() + " already declared");
      auto b = typecheck(with_binding(env, t.name(), t.annot()), t.kid(0));
      if (!b) return b;
      return Type::arrow(t.annot(), *b);
    }
    case Kind::Sub: {
      if (!within(t.set_a().unite(t.set_b()), env))
        return type_error(TypeErrorKind::SideCondition,
                          "substitution sets not in [" + to_string(env) + "]");
      auto a = typecheck(minus(env, t.set_a()), t.kid(1));
      if (!a) return a;
      NamedEnv inner = minus(env, t.set_b());
      if (inner.count(t.name()))
        return type_error(TypeErrorKind::SideCondition, t.name() + " already declared");
      return typecheck(with_binding(inner, t.name(), *a), t.kid(0));
    }
  }
  return type_error(TypeErrorKind::Shape, "bad term");
}

Term ateb_term(const Term& t, const std::optional<NamedEnv>& env) {
  switch (t.kind()) {
    case Kind::Var:
      return t;
    case Kind::App:
      return app(ateb_term(t.kid(0), env), ateb_term(t.kid(1), env));
    case Kind::Lam: {
      std::optional<NamedEnv> inner;
      if (env && t.annot()) inner = with_binding(*env, t.name(), t.annot());
      return lam(t.name(), ateb_term(t.kid(0), inner), t.annot());
    }
    case Kind::Weak: {
      std::optional<NamedEnv> inner;
      if (env) inner = minus(*env, t.set_a());
      return weak(t.set_a(), ateb_term(t.kid(0), inner));
    }
    case Kind::Sub: {
      std::optional<NamedEnv> uenv, tenv;
      Type a;
      if (env) {
        uenv = minus(*env, t.set_a());
        if (auto ty = typecheck(*uenv, t.kid(1))) a = *ty;
        if (a) tenv = with_binding(minus(*env, t.set_b()), t.name(), a);
      }
      return app(weak(t.set_b(), lam(t.name(), ateb_term(t.kid(0), tenv), a)),
                 weak(t.set_a(), ateb_term(t.kid(1), uenv)));
    }
  }
  return {};
}

namespace {

Path prefixed(std::initializer_list<std::uint8_t> pre, const Path& p) {
  Path r(pre);
  r.insert(r.end(), p.begin(), p.end());
  return r;
}

void splice(Trace<Term>& out, const Trace<Term>& sub,
            const std::function<Term(const Term&)>& ctx, std::initializer_list<std::uint8_t> pre) {
  for (const auto& st : sub.steps) out.push(st.rule, prefixed(pre, st.at), ctx(st.after));
}

}  // namespace

Trace<Term> expansion_trace(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      return {t, {}};
    case Kind::App: {
      auto a = expansion_trace(t.kid(0));
      auto b = expansion_trace(t.kid(1));
      Trace<Term> tr{app(a.start, b.start), {}};
      splice(tr, a, [&](const Term& x) { return app(x, b.start); }, {0});
      splice(tr, b, [&](const Term& x) { return app(t.kid(0), x); }, {1});
      return tr;
    }
    case Kind::Lam: {
      auto a = expansion_trace(t.kid(0));
      auto wrap = [&](const Term& x) { return lam(t.name(), x, t.annot()); };
      Trace<Term> tr{wrap(a.start), {}};
      splice(tr, a, wrap, {0});
      return tr;
    }
    case Kind::Weak: {
      auto a = expansion_trace(t.kid(0));
      auto wrap = [&](const Term& x) { return weak(t.set_a(), x); };
      Trace<Term> tr{wrap(a.start), {}};
      splice(tr, a, wrap, {0});
      return tr;
    }
    case Kind::Sub: {
      auto a = expansion_trace(t.kid(0));
      auto b = expansion_trace(t.kid(1));
      auto fun = [&](const Term& x) { return weak(t.set_b(), lam(t.name(), x)); };
      auto arg = [&](const Term& x) { return weak(t.set_a(), x); };
      Trace<Term> tr{app(fun(a.start), arg(b.start)), {}};
      splice(tr, a, [&](const Term& x) { return app(fun(x), arg(b.start)); }, {0, 0, 0});
      splice(tr, b, [&](const Term& x) { return app(fun(t.kid(0)), arg(x)); }, {1, 0});
      tr.push("b", {}, t);
      return tr;
    }
  }
  return {t, {}};
}

namespace {

constexpr std::string_view kRules[] = {"b",  "a", "e1", "n1", "n2", "c1", "c2",
                                       "c3", "f", "e2", "d",  "empty", "c4"};

std::string print(const Term& t, int pos);

// pos: 0 top, 1 function, 2 argument, 3 body of a substitution.
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
    case Kind::Weak: {
      std::string s = to_string(t.set_a()) + " " + print(t.kid(0), 2);
      return pos == 3 ? "(" + s + ")" : s;
    }
    case Kind::Sub:
      return print(t.kid(0), 3) + "[" + t.name() + ", " + print(t.kid(1), 0) + ", " +
             to_string(t.set_a()) + ", " + to_string(t.set_b()) + "]";
  }
  return "?";
}

NameSet p_set(TokenStream& ts) {
  ts.expect("{");
  NameSet s;
  if (ts.accept("}")) return s;
  do s.insert(ts.expect_ident());
  while (ts.accept(","));
  ts.expect("}");
  return s;
}

Term p_term(TokenStream& ts);

Term p_atom(TokenStream& ts) {
  if (ts.is("{")) {
    NameSet s = p_set(ts);
    return weak(s, p_atom(ts));
  }
  Term t;
  if (ts.accept("(")) {
    t = p_term(ts);
    ts.expect(")");
  } else {
    t = var(ts.expect_ident());
  }
  while (ts.accept("[")) {
    Name x = ts.expect_ident();
    ts.expect(",");
    Term u = p_term(ts);
    ts.expect(",");
    NameSet g = p_set(ts);
    ts.expect(",");
    NameSet d = p_set(ts);
    ts.expect("]");
    t = sub(t, x, u, g, d);
  }
  return t;
}

Term p_term(TokenStream& ts) {
  if (ts.accept("\\")) {
    Name x = ts.expect_ident();
    Type a;
    if (ts.accept(":")) a = parse_type_from(ts);
    ts.expect(".");
    return lam(x, p_term(ts), a);
  }
  Term t = p_atom(ts);
  for (;;) {
    if (ts.is("\\")) return app(t, p_term(ts));
    if (ts.is("(") || ts.is("{") || ts.peek().kind == Token::Kind::Ident) {
      t = app(t, p_atom(ts));
      continue;
    }
    return t;
  }
}

bool in_diff(const Name& x, const NameSet& a, const NameSet& b) {
  return a.contains(x) && !b.contains(x);
}

}  // namespace

std::string to_string(const NameSet& s) {
  std::string r = "{";
  for (const auto& x : s) {
    if (r.size() > 1) r += ",";
    r += x;
  }
  return r + "}";
}

std::string to_string(const Term& t) { return print(t, 0); }

Term parse(std::string_view src) {
  TokenStream ts(src);
  Term t = p_term(ts);
  ts.expect_end();
  return t;
}

std::span<const std::string_view> System::rules() const { return kRules; }

void System::root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const {
  if (t.kind() == Kind::App) {
    if (!r.has(0)) return;
    const Term* f = &t.kid(0);
    NameSet delta;
    if (f->kind() == Kind::Weak) {
      delta = f->set_a();
      f = &f->kid(0);
    }
    if (f->kind() != Kind::Lam) return;
    Term u = t.kid(1);
    NameSet gamma;
    if (u.kind() == Kind::Weak) {
      gamma = u.set_a();
      u = u.kid(0);
    }
    out.emplace_back(0, sub(f->kid(0), f->name(), u, gamma, delta));
    return;
  }
  if (t.kind() == Kind::Weak) {
    const Term& b = t.kid(0);
    if (r.has(10) && b.kind() == Kind::Weak) out.emplace_back(10, weak(t.set_a().unite(b.set_a()), b.kid(0)));
    if (r.has(11) && t.set_a().empty()) out.emplace_back(11, b);
    return;
  }
  if (t.kind() != Kind::Sub) return;
  const Term& b = t.kid(0);
  const Term& v = t.kid(1);
  const Name& x = t.name();
  const NameSet& G = t.set_a();
  const NameSet& D = t.set_b();
  switch (b.kind()) {
    case Kind::App:
      if (r.has(1)) out.emplace_back(1, app(sub(b.kid(0), x, v, G, D), sub(b.kid(1), x, v, G, D)));
      return;
    case Kind::Weak: {
      const NameSet& L = b.set_a();
      if (in_diff(x, L, G)) {
        if (r.has(2)) out.emplace_back(2, weak(D.unite(L.without(x)), b.kid(0)));
      } else if (r.has(9)) {
        out.emplace_back(9, weak(G.intersect(L), sub(b.kid(0), x, v, G.minus(L), D.unite(L.minus(G)))));
      }
      return;
    }
    case Kind::Var:
      if (r.has(3) && (b.name() != x || G.contains(b.name()))) out.emplace_back(3, weak(D, b));
      if (r.has(4) && b.name() == x) out.emplace_back(4, weak(G, v));
      return;
    case Kind::Lam:
      if (r.has(8))
        out.emplace_back(8, lam(b.name(), sub(b.kid(0), x, v, G.with(b.name()), D), b.annot()));
      return;
    case Kind::Sub: {
      const Term& t0 = b.kid(0);
      const Name& y = b.name();
      const Term& u = b.kid(1);
      const NameSet& L = b.set_a();
      const NameSet& F = b.set_b();
      bool inF = in_diff(x, F, G);
      bool inL = in_diff(x, L, G);
      Term u_x = sub(u, x, v, G.minus(L), D.unite(L.minus(G)));
      if (r.has(5) && inF && !inL)
        out.emplace_back(5, sub(t0, y, u_x, L.intersect(G), D.unite(F.without(x))));
      if (r.has(6) && !inF && !inL)
        out.emplace_back(6, sub(sub(t0, x, v, G.minus(F).with(y), D.unite(F.minus(G))), y, u_x,
                                L.intersect(G), G.intersect(F)));
      if (r.has(7) && inF && inL)
        out.emplace_back(7, sub(t0, y, u, L.without(x).unite(D), F.without(x).unite(D)));
      if (r.has(12) && inL && !inF)
        out.emplace_back(12, sub(sub(t0, x, v, G.minus(F).with(y), D.unite(F.minus(G))), y, u,
                                 D.unite(L.without(x)), G.intersect(F)));
      return;
    }
  }
}

namespace {

void overlaps_into(const Term& t, Path& at, std::vector<Path>& out) {
  if (t.kind() == Kind::Sub && t.kid(0).kind() == Kind::Sub) {
    RootRewrites<Term> rw;
    RuleSet cs = RuleSet::only(5).with(6).with(7).with(12);
    System{}.root_rewrites(t, cs, rw);
    if (rw.size() > 1) out.push_back(at);
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    at.push_back(static_cast<std::uint8_t>(i));
    overlaps_into(t.kid(i), at, out);
    at.pop_back();
  }
}

}  // namespace

std::vector<Path> c_rule_overlaps(const Term& t) {
  std::vector<Path> out;
  Path at;
  overlaps_into(t, at, out);
  return out;
}

void enumerate(int max_size, const std::vector<Name>& pool,
               const std::function<void(const Term&)>& visit) {
  const auto sets = subsets_of(pool);
  enumerate_sized<Term>(
      max_size,
      [&](int k, const std::vector<std::vector<Term>>& p, auto&& emit) {
        if (k == 1) {
          for (const auto& x : pool) emit(var(x));
          return;
        }
        for (const auto& b : p[static_cast<std::size_t>(k - 1)]) {
          for (const auto& x : pool) emit(lam(x, b));
          for (const auto& s : sets) emit(weak(s, b));
        }
        split2(k - 1, [&](int a, int c) {
          for (const auto& f : p[static_cast<std::size_t>(a)])
            for (const auto& g : p[static_cast<std::size_t>(c)]) {
              emit(app(f, g));
              for (const auto& x : pool)
                for (const auto& gs : sets)
                  for (const auto& ds : sets) emit(sub(f, x, g, gs, ds));
            }
        });
      },
      visit);
}

void annotate_all(const Term& t, const std::function<void(const Term&)>& visit) {
  annotate_binders<Kind>(t, [](Kind k) { return k == Kind::Lam; }, visit);
}

}  // namespace ateb::lw
