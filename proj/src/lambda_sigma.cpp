#include "ateb/lambda_sigma.hpp"

#include <algorithm>

#include "ateb/enumerate.hpp"
#include "ateb/lexer.hpp"

namespace ateb::ls {

Term num(std::uint32_t n) { return Term::make(Kind::Num, {.num = n}); }
Term app(Term f, Term a) { return Term::make(Kind::App, {}, {std::move(f), std::move(a)}); }
Term lam(Term body, Type annot) {
  return Term::make(Kind::Lam, {.annot = std::move(annot)}, {std::move(body)});
}
Term clo(Term t, Term s) { return Term::make(Kind::Clo, {}, {std::move(t), std::move(s)}); }
Term id() { return Term::make(Kind::Id, {}); }
Term shift() { return Term::make(Kind::Shift, {}); }
Term cons(Term t, Term s) { return Term::make(Kind::Cons, {}, {std::move(t), std::move(s)}); }
Term comp(Term s1, Term s2) { return Term::make(Kind::Comp, {}, {std::move(s1), std::move(s2)}); }

bool is_sub(const Term& x) {
  switch (x.kind()) {
    case Kind::Id:
    case Kind::Shift:
    case Kind::Cons:
    case Kind::Comp:
      return true;
    default:
      return false;
  }
}

bool has_shift(const Term& x) {
  return has_kind<Kind>(x, [](Kind k) { return k == Kind::Shift; });
}

bool substitution_free(const Term& t) {
  return !has_kind<Kind>(t, [](Kind k) { return k == Kind::Clo; });
}

Term embed(const pure::Db& t) {
  switch (t.kind()) {
    case pure::DKind::Idx:
      return num(t.num());
    case pure::DKind::App:
      return app(embed(t.kid(0)), embed(t.kid(1)));
    case pure::DKind::Lam:
      return lam(embed(t.kid(0)), t.annot());
  }
  return {};
}

pure::Db to_pure(const Term& t) {
  switch (t.kind()) {
    case Kind::Num:
      return pure::idx(t.num());
    case Kind::App:
      return pure::app(to_pure(t.kid(0)), to_pure(t.kid(1)));
    case Kind::Lam:
      return pure::lam(to_pure(t.kid(0)), t.annot());
    default:
      throw PreconditionError("to_pure: term has a substitution");
  }
}

Term upshift(std::size_t i, std::size_t j, const Term& t) {
  switch (t.kind()) {
    case Kind::Num:
      return t.num() > i ? num(t.num() + static_cast<std::uint32_t>(j)) : t;
    case Kind::App:
      return app(upshift(i, j, t.kid(0)), upshift(i, j, t.kid(1)));
    case Kind::Lam:
      return lam(upshift(i + 1, j, t.kid(0)), t.annot());
    case Kind::Clo: {
      UpSub s = upshift_sub(i, j, t.kid(1));
      return clo(upshift(s.i, j, t.kid(0)), s.s);
    }
    default:
      throw PreconditionError("upshift: expected a term");
  }
}

UpSub upshift_sub(std::size_t i, std::size_t j, const Term& s) {
  switch (s.kind()) {
    case Kind::Id:
      return {i, s};
    case Kind::Cons: {
      UpSub r = upshift_sub(i, j, s.kid(1));
      return {r.i + 1, cons(upshift(i, j, s.kid(0)), r.s)};
    }
    case Kind::Comp: {
      UpSub r2 = upshift_sub(i, j, s.kid(1));
      UpSub r1 = upshift_sub(r2.i, j, s.kid(0));
      return {r1.i, comp(r1.s, r2.s)};
    }
    case Kind::Shift:
      throw PreconditionError("upshift: substitution contains a shift");
    default:
      throw PreconditionError("upshift: expected a substitution");
  }
}

Checked<DbEnv> typecheck_sub(const DbEnv& env, const Term& s) {
  switch (s.kind()) {
    case Kind::Id:
      return env;
    case Kind::Shift:
      if (env.empty()) return type_error(TypeErrorKind::Shape, "shift in an empty environment");
      return env.drop(1);
    case Kind::Cons: {
      auto a = typecheck(env, s.kid(0));
      if (!a) return a.error();
      auto rest = typecheck_sub(env, s.kid(1));
      if (!rest) return rest;
      return rest->push(*a);
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

Checked<Type> typecheck(const DbEnv& env, const Term& t) {
  switch (t.kind()) {
    case Kind::Num: {
      auto a = env.lookup(t.num());
      if (!a)
        return type_error(TypeErrorKind::Unbound, "index " + std::to_string(t.num()) +
                                                      " out of range in [" + to_string(env) + "]");
      return *a;
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
      if (!t.annot()) return type_error(TypeErrorKind::Unannotated, "unannotated binder");
      auto b = typecheck(env.push(t.annot()), t.kid(0));
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

std::optional<DbEnv> drop1(const std::optional<DbEnv>& env) {
  if (!env || env->empty()) return std::nullopt;
  return env->drop(1);
}

Type synth(const std::optional<DbEnv>& env, const Term& t) {
  if (!env) return {};
  auto a = typecheck(*env, t);
  return a ? *a : Type{};
}

std::optional<DbEnv> under(const std::optional<DbEnv>& env, const Type& a) {
  if (!env || !a) return std::nullopt;
  return env->push(a);
}

}  // namespace

Term ateb_term(const Term& t, const std::optional<DbEnv>& env) {
  switch (t.kind()) {
    case Kind::Num:
      return t;
    case Kind::App:
      return app(ateb_term(t.kid(0), env), ateb_term(t.kid(1), env));
    case Kind::Lam:
      return lam(ateb_term(t.kid(0), under(env, t.annot())), t.annot());
    case Kind::Clo: {
      const Term& b = t.kid(0);
      const Term& s = t.kid(1);
      switch (s.kind()) {
        case Kind::Id:
          return ateb_term(b, env);
        case Kind::Shift:
          return upshift(0, 1, ateb_term(b, drop1(env)));
        case Kind::Comp:
          return ateb_term(clo(clo(b, s.kid(0)), s.kid(1)), env);
        case Kind::Cons: {
          Type a = synth(env, s.kid(0));
          return app(ateb_term(clo(lam(b, a), s.kid(1)), env), ateb_term(s.kid(0), env));
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

pure::Db ateb_of(const Term& t, const std::optional<DbEnv>& env) {
  return to_pure(ateb_term(t, env));
}

FlatResult overline_sub(const Term& s) {
  switch (s.kind()) {
    case Kind::Shift:
      return {1, std::nullopt};
    case Kind::Id:
      return {0, std::nullopt};
    case Kind::Cons: {
      FlatResult r = overline_sub(s.kid(1));
      return {r.n, cons(overline(s.kid(0)), r.rest ? *r.rest : id())};
    }
    case Kind::Comp: {
      FlatResult a = overline_sub(s.kid(0));
      FlatResult b = overline_sub(s.kid(1));
      std::size_t n = a.n + b.n;
      if (!a.rest && !b.rest) return {n, std::nullopt};
      if (!a.rest) return {n, b.rest};
      Term s1 = upshift_sub(0, b.n, *a.rest).s;
      if (!b.rest) return {n, s1};
      return {n, comp(s1, *b.rest)};
    }
    default:
      throw PreconditionError("overline: expected a substitution");
  }
}

Term overline(const Term& t) {
  switch (t.kind()) {
    case Kind::Num:
      return t;
    case Kind::App:
      return app(overline(t.kid(0)), overline(t.kid(1)));
    case Kind::Lam:
      return lam(overline(t.kid(0)), t.annot());
    case Kind::Clo: {
      FlatResult r = overline_sub(t.kid(1));
      Term b = upshift(0, r.n, overline(t.kid(0)));
      return r.rest ? clo(b, *r.rest) : b;
    }
    default:
      throw PreconditionError("overline: expected a term");
  }
}

bool potentially_redexable(const Term& x) {
  return has_kind<Kind>(x, [](Kind k) { return k == Kind::App || k == Kind::Lam; });
}

namespace {

constexpr std::string_view kRules[] = {"B",       "App",       "Lambda", "VarId",
                                       "VarCons", "Clos",      "IdL",    "ShiftId",
                                       "ShiftCons", "Map",     "Ass",    "NumUnfold"};

std::string print(const Term& t, int pos);

// pos 1: a composition needs parentheses.
std::string print_sub(const Term& s, int pos) {
  switch (s.kind()) {
    case Kind::Id:
      return "id";
    case Kind::Shift:
      return "!";
    case Kind::Cons:
      return print(s.kid(0), 1) + " . " + print_sub(s.kid(1), 1);
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
    case Kind::Num:
      return std::to_string(t.num());
    case Kind::App: {
      std::string s = print(t.kid(0), 1) + " " + print(t.kid(1), 2);
      return pos >= 2 ? "(" + s + ")" : s;
    }
    case Kind::Lam: {
      std::string s = "\\";
      if (t.annot()) s += ateb::to_string(t.annot());
      s += "." + print(t.kid(0), 0);
      return pos ? "(" + s + ")" : s;
    }
    case Kind::Clo:
      return print(t.kid(0), 3) + "[" + print_sub(t.kid(1), 0) + "]";
    default:
      return print_sub(t, 0);
  }
}

Term p_term(TokenStream& ts);
Term p_sub(TokenStream& ts);

Term p_sub1(TokenStream& ts) {
  if (ts.is_ident("id")) {
    ts.next();
    return id();
  }
  if (ts.accept("!")) return shift();
  if (ts.is("(")) {
    auto m = ts.mark();
    try {
      Term t = p_term(ts);
      if (ts.accept(".")) return cons(t, p_sub1(ts));
    } catch (const ParseError&) {
    }
    ts.reset(m);
    ts.expect("(");
    Term s = p_sub(ts);
    ts.expect(")");
    return s;
  }
  Term t = p_term(ts);
  ts.expect(".");
  return cons(t, p_sub1(ts));
}

Term p_sub(TokenStream& ts) {
  Term s = p_sub1(ts);
  if (ts.is_ident("o")) {
    ts.next();
    return comp(s, p_sub(ts));
  }
  return s;
}

Term p_atom(TokenStream& ts) {
  Term t;
  if (ts.accept("(")) {
    t = p_term(ts);
    ts.expect(")");
  } else {
    auto n = ts.expect_number();
    if (n == 0) ts.fail("indices start at 1");
    t = num(static_cast<std::uint32_t>(n));
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
    Type a;
    if (!ts.is(".")) a = parse_type_from(ts);
    ts.expect(".");
    return lam(p_term(ts), a);
  }
  Term t = p_atom(ts);
  for (;;) {
    if (ts.is("\\")) return app(t, p_term(ts));
    if (ts.is("(") || ts.peek().kind == Token::Kind::Number) {
      t = app(t, p_atom(ts));
      continue;
    }
    return t;
  }
}

bool only_shifts(const Term& s, std::uint32_t& k) {
  if (s.kind() == Kind::Shift) {
    ++k;
    return true;
  }
  return s.kind() == Kind::Comp && only_shifts(s.kid(0), k) && only_shifts(s.kid(1), k);
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
      if (r.has(0) && t.kid(0).kind() == Kind::Lam)
        out.emplace_back(0, clo(t.kid(0).kid(0), cons(t.kid(1), id())));
      return;
    case Kind::Clo: {
      const Term& b = t.kid(0);
      const Term& s = t.kid(1);
      switch (b.kind()) {
        case Kind::App:
          if (r.has(1)) out.emplace_back(1, app(clo(b.kid(0), s), clo(b.kid(1), s)));
          return;
        case Kind::Lam:
          if (r.has(2)) out.emplace_back(2, lam(clo(b.kid(0), cons(num(1), comp(s, shift()))), b.annot()));
          return;
        case Kind::Num:
          if (b.num() == 1) {
            if (s.kind() == Kind::Id && r.has(3)) out.emplace_back(3, b);
            if (s.kind() == Kind::Cons && r.has(4)) out.emplace_back(4, s.kid(0));
          } else if (r.has(11)) {
            out.emplace_back(11, clo(clo(num(b.num() - 1), shift()), s));
          }
          return;
        case Kind::Clo:
          if (r.has(5)) out.emplace_back(5, clo(b.kid(0), comp(b.kid(1), s)));
          return;
        default:
          return;
      }
    }
    case Kind::Comp: {
      const Term& a = t.kid(0);
      const Term& c = t.kid(1);
      if (a.kind() == Kind::Id && r.has(6)) out.emplace_back(6, c);
      if (a.kind() == Kind::Shift && c.kind() == Kind::Id && r.has(7)) out.emplace_back(7, a);
      if (a.kind() == Kind::Shift && c.kind() == Kind::Cons && r.has(8)) out.emplace_back(8, c.kid(1));
      if (a.kind() == Kind::Cons && r.has(9))
        out.emplace_back(9, cons(clo(a.kid(0), c), comp(a.kid(1), c)));
      if (a.kind() == Kind::Comp && r.has(10))
        out.emplace_back(10, comp(a.kid(0), comp(a.kid(1), c)));
      return;
    }
    default:
      return;
  }
}

Term canonicalize(const Term& t) {
  Term r = t;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    Term k = canonicalize(t.kid(i));
    if (!(k == t.kid(i))) r = r.with_kid(i, k);
  }
  if (r.kind() == Kind::Clo && r.kid(0).kind() == Kind::Num) {
    std::uint32_t k = 0;
    if (only_shifts(r.kid(1), k)) return num(r.kid(0).num() + k);
  }
  return r;
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
  return canonicalize(r.term);
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
    case Kind::Shift:
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
    case Kind::Num:
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

bool lessdot(const Term& u, const Term& t) { return preceq(u, t) && sigma(u) == sigma(t); }

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

std::optional<Witness> init_witness(const Term& t, const std::optional<DbEnv>& env) {
  switch (t.kind()) {
    case Kind::Num:
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
      auto a = init_witness(t.kid(0), under(env, t.annot()));
      if (!a) return std::nullopt;
      Trace<Term> tr{lam(a->trace.start, t.annot()), {}};
      splice(tr, a->trace, [&](const Term& x) { return lam(x, t.annot()); }, {0});
      return Witness{lam(a->u, t.annot()), std::move(tr)};
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
    case Kind::Shift: {
      auto a = init_witness(b, drop1(env));
      if (!a) return std::nullopt;
      // Up{0,1} commutes with B and keeps positions.
      Trace<Term> tr{upshift(0, 1, a->trace.start), {}};
      for (const auto& st : a->trace.steps) tr.push(st.rule, st.at, upshift(0, 1, st.after));
      return Witness{upshift(0, 1, a->u), std::move(tr)};
    }
    case Kind::Comp:
      return init_witness(clo(clo(b, s.kid(0)), s.kid(1)), env);
    case Kind::Cons: {
      Type ty = synth(env, s.kid(0));
      auto f = init_witness(clo(lam(b, ty), s.kid(1)), env);
      auto a = init_witness(s.kid(0), env);
      if (!f || !a) return std::nullopt;
      if (f->u.kind() != Kind::Lam) return std::nullopt;
      Trace<Term> tr{app(f->trace.start, a->trace.start), {}};
      splice(tr, f->trace, [&](const Term& x) { return app(x, a->trace.start); }, {0});
      splice(tr, a->trace, [&](const Term& x) { return app(f->u, x); }, {1});
      Term u = clo(f->u.kid(0), cons(a->u, id()));
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
  Term target = sigma(step.after);
  auto pred = [&](const Term& x) { return preceq(x, step.after) && sigma(x) == target; };
  if (step.rule == "B") return search(sys, u, sys.b_rules(), 1, 1, pred);
  return search(sys, u, sys.sigma_rules(), 0, depth, pred);
}

Term lifted_shift(std::size_t i) {
  if (i == 0) return shift();
  return cons(num(1), comp(lifted_shift(i - 1), shift()));
}

namespace {

// pools[k] holds the terms (first) and substitutions (second) of size k.
using Pools = std::vector<std::pair<std::vector<Term>, std::vector<Term>>>;

Pools build_pools(int max_size, std::uint32_t max_num) {
  const auto top = static_cast<std::size_t>(std::max(max_size, 0));
  Pools p(top + 1);
  for (std::size_t k = 1; k <= top; ++k) {
    auto& [ts, ss] = p[k];
    if (k == 1) {
      for (std::uint32_t n = 1; n <= max_num; ++n) ts.push_back(num(n));
      ss.push_back(id());
      ss.push_back(shift());
      continue;
    }
    for (const auto& b : p[k - 1].first) ts.push_back(lam(b));
    for (std::size_t a = 1; a + 1 < k; ++a) {
      std::size_t c = k - 1 - a;
      for (const auto& f : p[a].first) {
        for (const auto& g : p[c].first) ts.push_back(app(f, g));
        for (const auto& s : p[c].second) {
          ts.push_back(clo(f, s));
          ss.push_back(cons(f, s));
        }
      }
      for (const auto& s1 : p[a].second)
        for (const auto& s2 : p[c].second) ss.push_back(comp(s1, s2));
    }
  }
  return p;
}

}  // namespace

void enumerate(int max_size, std::uint32_t max_num, const std::function<void(const Term&)>& visit) {
  for (const auto& [ts, ss] : build_pools(max_size, max_num))
    for (const auto& t : ts) visit(t);
}

void enumerate_subs(int max_size, std::uint32_t max_num,
                    const std::function<void(const Term&)>& visit) {
  for (const auto& [ts, ss] : build_pools(max_size, max_num))
    for (const auto& s : ss) visit(s);
}

void annotate_all(const Term& t, const std::function<void(const Term&)>& visit) {
  annotate_binders<Kind>(t, [](Kind k) { return k == Kind::Lam; }, visit);
}

}  // namespace ateb::ls
