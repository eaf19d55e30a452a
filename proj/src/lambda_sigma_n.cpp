#include "ateb/lambda_sigma_n.hpp"

#include <algorithm>

#include "ateb/enumerate.hpp"
#include "ateb/lexer.hpp"

namespace ateb::lsn {

Term var(const Name& x) { return Term::make(Kind::Var, {.name = x}); }
Term app(Term f, Term a) { return Term::make(Kind::App, {}, {std::move(f), std::move(a)}); }
Term lam(const Name& x, Term body, Type annot) {
  return Term::make(Kind::Lam, {.name = x, .annot = std::move(annot)}, {std::move(body)});
}
Term clo(Term t, Term s) { return Term::make(Kind::Clo, {}, {std::move(t), std::move(s)}); }
Term id() { return Term::make(Kind::Id, {}); }
Term cons(Term t, const Name& x, Term s) {
  return Term::make(Kind::Cons, {.name = x}, {std::move(t), std::move(s)});
}
Term comp(Term s1, Term s2) { return Term::make(Kind::Comp, {}, {std::move(s1), std::move(s2)}); }

bool is_sub(const Term& x) {
  return x.kind() == Kind::Id || x.kind() == Kind::Cons || x.kind() == Kind::Comp;
}

bool substitution_free(const Term& t) {
  return !has_kind<Kind>(t, [](Kind k) { return k == Kind::Clo; });
}

namespace {

NameSet fv_sub(const NameSet& in, const Term& s);

NameSet fv(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      return {t.name()};
    case Kind::App:
      return fv(t.kid(0)).unite(fv(t.kid(1)));
    case Kind::Lam:
      return fv(t.kid(0)).without(t.name());
    case Kind::Clo:
      return fv_sub(fv(t.kid(0)), t.kid(1));
    default:
      return fv_sub({}, t);
  }
}

// Free names of t[s] given the free names `in` of t.
NameSet fv_sub(const NameSet& in, const Term& s) {
  switch (s.kind()) {
    case Kind::Id:
      return in;
    case Kind::Cons: {
      NameSet r = fv_sub(in.without(s.name()), s.kid(1));
      return in.contains(s.name()) ? r.unite(fv(s.kid(0))) : r;
    }
    case Kind::Comp:
      return fv_sub(fv_sub(in, s.kid(0)), s.kid(1));
    default:
      throw PreconditionError("free_vars: expected a substitution");
  }
}

}  // namespace

NameSet free_vars(const Term& t) { return fv(t); }

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

pure::Named to_pure(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      return pure::var(t.name());
    case Kind::App:
      return pure::app(to_pure(t.kid(0)), to_pure(t.kid(1)));
    case Kind::Lam:
      return pure::lam(t.name(), to_pure(t.kid(0)), t.annot());
    default:
      throw PreconditionError("to_pure: term has a substitution");
  }
}

Checked<NamedEnv> typecheck_sub(const NamedEnv& env, const Term& s) {
  switch (s.kind()) {
    case Kind::Id:
      return env;
    case Kind::Cons: {
      auto a = typecheck(env, s.kid(0));
      if (!a) return a.error();
      auto rest = typecheck_sub(env, s.kid(1));
      if (!rest) return rest;
      return with_binding(*rest, s.name(), *a);
    }
    case Kind::Comp: {
      auto mid = typecheck_sub(env, s.kid(1));
      if (!mid) return mid;
      return typecheck_sub(*mid, s.kid(0));
    }
    default:
      return type_error(TypeErrorKind::Shape, "expected a substitution");
  }
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
    case Kind::Clo: {
      auto d = typecheck_sub(env, t.kid(1));
      if (!d) return d.error();
      return typecheck(*d, t.kid(0));
    }
    default:
      return type_error(TypeErrorKind::Shape, "expected a term");
  }
}

namespace {

std::optional<NamedEnv> under(const std::optional<NamedEnv>& env, const Name& x, const Type& a) {
  if (!env || !a) return std::nullopt;
  return with_binding(*env, x, a);
}

Type synth(const std::optional<NamedEnv>& env, const Term& t) {
  if (!env) return {};
  auto a = typecheck(*env, t);
  return a ? *a : Type{};
}

}  // namespace

Term ateb_term(const Term& t, const std::optional<NamedEnv>& env) {
  switch (t.kind()) {
    case Kind::Var:
      return t;
    case Kind::App:
      return app(ateb_term(t.kid(0), env), ateb_term(t.kid(1), env));
    case Kind::Lam:
      return lam(t.name(), ateb_term(t.kid(0), under(env, t.name(), t.annot())), t.annot());
    case Kind::Clo: {
      const Term& b = t.kid(0);
      const Term& s = t.kid(1);
      switch (s.kind()) {
        case Kind::Id:
          return ateb_term(b, env);
        case Kind::Comp:
          return ateb_term(clo(clo(b, s.kid(0)), s.kid(1)), env);
        case Kind::Cons: {
          Type a = synth(env, s.kid(0));
          return app(ateb_term(clo(lam(s.name(), b, a), s.kid(1)), env), ateb_term(s.kid(0), env));
        }
        default:
          break;
      }
      break;
    }
    default:
      break;
  }
  throw PreconditionError("ateb: malformed term");
}

pure::Named ateb_of(const Term& t, const std::optional<NamedEnv>& env) {
  return to_pure(ateb_term(t, env));
}

bool potentially_redexable(const Term& x) {
  return has_kind<Kind>(x, [](Kind k) { return k == Kind::App || k == Kind::Lam; });
}

namespace {

constexpr std::string_view kRules[] = {"B",    "App",  "Lambda", "VarId", "VarCons1",
                                       "VarCons2", "Clos", "IdL", "Map",    "Ass"};

std::string print(const Term& t, int pos);

// pos 1: a composition needs parentheses.
std::string print_sub(const Term& s, int pos) {
  switch (s.kind()) {
    case Kind::Id:
      return "id";
    case Kind::Cons:
      return "(" + print(s.kid(0), 0) + "/" + s.name() + ") . " + print_sub(s.kid(1), 1);
    case Kind::Comp: {
      std::string r = print_sub(s.kid(0), 1) + " o " + print_sub(s.kid(1), 0);
      return pos ? "(" + r + ")" : r;
    }
    default:
      return "?";
  }
}

// pos: 0 top, 1 function, 2 argument, 3 body of a closure.
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
    case Kind::Clo:
      return print(t.kid(0), 3) + "[" + print_sub(t.kid(1), 0) + "]";
    default:
      return print_sub(t, 0);
  }
}

bool reserved(const Name& x) { return x == "id" || x == "o"; }

Name p_name(TokenStream& ts) {
  if (ts.peek().kind == Token::Kind::Ident && reserved(ts.peek().text))
    ts.fail("'" + ts.peek().text + "' is reserved");
  return ts.expect_ident();
}

Term p_term(TokenStream& ts);
Term p_sub(TokenStream& ts);

Term p_sub1(TokenStream& ts) {
  if (ts.is_ident("id")) {
    ts.next();
    return id();
  }
  ts.expect("(");
  auto m = ts.mark();
  try {
    Term t = p_term(ts);
    if (ts.accept("/")) {
      Name x = p_name(ts);
      ts.expect(")");
      ts.expect(".");
      return cons(t, x, p_sub1(ts));
    }
  } catch (const ParseError&) {
  }
  ts.reset(m);
  Term s = p_sub(ts);
  ts.expect(")");
  return s;
}

Term p_sub(TokenStream& ts) {
  Term s = p_sub1(ts);
  if (ts.is_ident("o")) {
    ts.next();
    return comp(s, p_sub(ts));
  }
  return s;
}

bool starts_atom(const TokenStream& ts) {
  if (ts.is("(")) return true;
  return ts.peek().kind == Token::Kind::Ident && !reserved(ts.peek().text);
}

Term p_atom(TokenStream& ts) {
  Term t;
  if (ts.accept("(")) {
    t = p_term(ts);
    ts.expect(")");
  } else {
    t = var(p_name(ts));
  }
  while (ts.accept("[")) {
    Term s = p_sub(ts);
    ts.expect("]");
    t = clo(t, s);
  }
  return t;
}

Term p_term(TokenStream& ts) {
  if (ts.accept("\\")) {
    Name x = p_name(ts);
    Type a;
    if (ts.accept(":")) a = parse_type_from(ts);
    ts.expect(".");
    return lam(x, p_term(ts), a);
  }
  Term t = p_atom(ts);
  for (;;) {
    if (ts.is("\\")) return app(t, p_term(ts));
    if (starts_atom(ts)) {
      t = app(t, p_atom(ts));
      continue;
    }
    return t;
  }
}

}  // namespace

std::string to_string(const Term& t) { return print(t, 0); }

Term parse(std::string_view src) {
  TokenStream ts(src);
  Term t = p_term(ts);
  ts.expect_end();
  return t;
}

Term parse_sub(std::string_view src) {
  TokenStream ts(src);
  Term s = p_sub(ts);
  ts.expect_end();
  return s;
}

std::span<const std::string_view> System::rules() const { return kRules; }
std::string System::key(const Term& t) const { return to_string(t); }
RuleSet System::sigma_rules() const {
  RuleSet r;
  for (std::size_t i = 1; i < std::size(kRules); ++i) r = r.with(i);
  return r;
}

void System::root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const {
  switch (t.kind()) {
    case Kind::App:
      if (r.has(0) && t.kid(0).kind() == Kind::Lam) {
        const Term& f = t.kid(0);
        out.emplace_back(0, clo(f.kid(0), cons(t.kid(1), f.name(), id())));
      }
      return;
    case Kind::Clo: {
      const Term& b = t.kid(0);
      const Term& s = t.kid(1);
      switch (b.kind()) {
        case Kind::App:
          if (r.has(1)) out.emplace_back(1, app(clo(b.kid(0), s), clo(b.kid(1), s)));
          return;
        case Kind::Lam:
          if (r.has(2)) {
            // Fresh for the whole redex, so nothing in the range of s is captured.
            Name y = fresh_name(b.name(), all_names(t));
            out.emplace_back(2, lam(y, clo(b.kid(0), cons(var(y), b.name(), s)), b.annot()));
          }
          return;
        case Kind::Var:
          if (s.kind() == Kind::Id && r.has(3)) out.emplace_back(3, b);
          if (s.kind() == Kind::Cons) {
            if (s.name() == b.name()) {
              if (r.has(4)) out.emplace_back(4, s.kid(0));
            } else if (r.has(5)) {
              out.emplace_back(5, clo(b, s.kid(1)));
            }
          }
          return;
        case Kind::Clo:
          if (r.has(6)) out.emplace_back(6, clo(b.kid(0), comp(b.kid(1), s)));
          return;
        default:
          return;
      }
    }
    case Kind::Comp: {
      const Term& a = t.kid(0);
      const Term& c = t.kid(1);
      if (a.kind() == Kind::Id && r.has(7)) out.emplace_back(7, c);
      if (a.kind() == Kind::Cons && r.has(8))
        out.emplace_back(8, cons(clo(a.kid(0), c), a.name(), comp(a.kid(1), c)));
      if (a.kind() == Kind::Comp && r.has(9))
        out.emplace_back(9, comp(a.kid(0), comp(a.kid(1), c)));
      return;
    }
    default:
      return;
  }
}

long sigma_fuel(const Term& t) {
  long n = static_cast<long>(t.size());
  return 10 * n * n + 100;
}

Term sigma(const Term& t) {
  System sys;
  long fuel = sigma_fuel(t);
  auto r = normalize(sys, t, sys.sigma_rules(), fuel, false);
  if (r.exhausted) throw FuelExhausted("sigma normalization of " + to_string(t), fuel);
  return r.term;
}

std::string sigma_key(const Term& t) {
  Term n = sigma(t);
  if (is_sub(n) || !substitution_free(n)) return to_string(n);
  return pure::alpha_key(to_pure(n));
}

namespace {

bool preceq_sub(const Term& s, const Term& s2) {
  if (s2.kind() == Kind::Comp) {
    if (!potentially_redexable(s2.kid(1)) && preceq_sub(s, s2.kid(0))) return true;
    if (!potentially_redexable(s2.kid(0)) && preceq_sub(s, s2.kid(1))) return true;
  }
  if (s.kind() == Kind::Id && !potentially_redexable(s2)) return true;
  if (s.kind() != s2.kind()) return false;
  switch (s.kind()) {
    case Kind::Id:
      return true;
    case Kind::Cons:
      return preceq(s.kid(0), s2.kid(0)) && preceq_sub(s.kid(1), s2.kid(1));
    case Kind::Comp:
      return preceq_sub(s.kid(0), s2.kid(0)) && preceq_sub(s.kid(1), s2.kid(1));
    default:
      return false;
  }
}

}  // namespace

bool preceq(const Term& u, const Term& t) {
  if (is_sub(u) || is_sub(t)) return is_sub(u) && is_sub(t) && preceq_sub(u, t);
  if (t.kind() == Kind::Clo && !potentially_redexable(t.kid(1)) && preceq(u, t.kid(0)))
    return true;
  if (u.kind() != t.kind()) return false;
  switch (u.kind()) {
    case Kind::Var:
      return true;
    case Kind::App:
      return preceq(u.kid(0), t.kid(0)) && preceq(u.kid(1), t.kid(1));
    case Kind::Lam:
      return preceq(u.kid(0), t.kid(0));
    case Kind::Clo:
      return preceq(u.kid(0), t.kid(0)) && preceq_sub(u.kid(1), t.kid(1));
    default:
      return false;
  }
}

bool lessdot(const Term& u, const Term& t) { return preceq(u, t) && sigma_key(u) == sigma_key(t); }

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

std::optional<Witness> init_witness(const Term& t, const std::optional<NamedEnv>& env) {
  switch (t.kind()) {
    case Kind::Var:
      return Witness{t, Trace<Term>{t, {}}};
    case Kind::App: {
      auto a = init_witness(t.kid(0), env);
      auto b = init_witness(t.kid(1), env);
      if (!a || !b) return std::nullopt;
      Trace<Term> tr{app(a->trace.start, b->trace.start), {}};
      splice(tr, a->trace, [&](const Term& x) { return app(x, b->trace.start); }, {0});
      splice(tr, b->trace, [&](const Term& x) { return app(a->u, x); }, {1});
      return Witness{app(a->u, b->u), std::move(tr)};
    }
    case Kind::Lam: {
      auto a = init_witness(t.kid(0), under(env, t.name(), t.annot()));
      if (!a) return std::nullopt;
      auto wrap = [&](const Term& x) { return lam(t.name(), x, t.annot()); };
      Trace<Term> tr{wrap(a->trace.start), {}};
      splice(tr, a->trace, wrap, {0});
      return Witness{wrap(a->u), std::move(tr)};
    }
    case Kind::Clo:
      break;
    default:
      throw PreconditionError("init_witness: expected a term");
  }
  const Term& b = t.kid(0);
  const Term& s = t.kid(1);
  switch (s.kind()) {
    case Kind::Id:
      return init_witness(b, env);
    case Kind::Comp:
      return init_witness(clo(clo(b, s.kid(0)), s.kid(1)), env);
    case Kind::Cons: {
      Type ty = synth(env, s.kid(0));
      auto f = init_witness(clo(lam(s.name(), b, ty), s.kid(1)), env);
      auto a = init_witness(s.kid(0), env);
      if (!f || !a) return std::nullopt;
      if (f->u.kind() != Kind::Lam) return std::nullopt;
      Trace<Term> tr{app(f->trace.start, a->trace.start), {}};
      splice(tr, f->trace, [&](const Term& x) { return app(x, a->trace.start); }, {0});
      splice(tr, a->trace, [&](const Term& x) { return app(f->u, x); }, {1});
      Term u = clo(f->u.kid(0), cons(a->u, f->u.name(), id()));
      tr.push("B", {}, u);
      return Witness{u, std::move(tr)};
    }
    default:
      throw PreconditionError("init_witness: expected a substitution");
  }
}

std::optional<Trace<Term>> simulate_step(const ReductionStep<Term>& step, const Term& u,
                                         std::size_t depth) {
  System sys;
  std::string target = sigma_key(step.after);
  auto pred = [&](const Term& x) { return preceq(x, step.after) && sigma_key(x) == target; };
  if (step.rule == "B") return search(sys, u, sys.b_rules(), 1, 1, pred);
  return search(sys, u, sys.sigma_rules(), 0, depth, pred);
}

namespace {

using Pools = std::vector<std::pair<std::vector<Term>, std::vector<Term>>>;

Pools build_pools(int max_size, const std::vector<Name>& pool) {
  const auto top = static_cast<std::size_t>(std::max(max_size, 0));
  Pools p(top + 1);
  for (std::size_t k = 1; k <= top; ++k) {
    auto& [ts, ss] = p[k];
    if (k == 1) {
      for (const auto& x : pool) ts.push_back(var(x));
      ss.push_back(id());
      continue;
    }
    for (const auto& b : p[k - 1].first)
      for (const auto& x : pool) ts.push_back(lam(x, b));
    for (std::size_t a = 1; a + 1 < k; ++a) {
      std::size_t c = k - 1 - a;
      for (const auto& f : p[a].first) {
        for (const auto& g : p[c].first) ts.push_back(app(f, g));
        for (const auto& s : p[c].second) {
          ts.push_back(clo(f, s));
          for (const auto& x : pool) ss.push_back(cons(f, x, s));
        }
      }
      for (const auto& s1 : p[a].second)
        for (const auto& s2 : p[c].second) ss.push_back(comp(s1, s2));
    }
  }
  return p;
}

}  // namespace

void enumerate(int max_size, const std::vector<Name>& pool,
               const std::function<void(const Term&)>& visit) {
  for (const auto& [ts, ss] : build_pools(max_size, pool))
    for (const auto& t : ts) visit(t);
}

void enumerate_subs(int max_size, const std::vector<Name>& pool,
                    const std::function<void(const Term&)>& visit) {
  for (const auto& [ts, ss] : build_pools(max_size, pool))
    for (const auto& s : ss) visit(s);
}

void annotate_all(const Term& t, const std::function<void(const Term&)>& visit) {
  annotate_binders<Kind>(t, [](Kind k) { return k == Kind::Lam; }, visit);
}

}  // namespace ateb::lsn
