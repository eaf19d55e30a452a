#include "ateb/lambda_upsilon.hpp"

#include "ateb/enumerate.hpp"
#include "ateb/lexer.hpp"

namespace ateb::lu {

Term idx(std::uint32_t n) { return Term::make(Kind::Idx, {.num = n}); }
Term app(Term f, Term a) { return Term::make(Kind::App, {}, {std::move(f), std::move(a)}); }
Term lam(Term body, Type annot) {
  return Term::make(Kind::Lam, {.annot = std::move(annot)}, {std::move(body)});
}
Term clo(Term t, Term s) { return Term::make(Kind::Clo, {}, {std::move(t), std::move(s)}); }
Term slash(Term t) { return Term::make(Kind::Slash, {}, {std::move(t)}); }
Term lift(Term s) { return Term::make(Kind::Lift, {}, {std::move(s)}); }
Term shift() { return Term::make(Kind::Shift, {}); }
Term lifts(std::size_t i, Term s) {
  while (i-- > 0) s = lift(std::move(s));
  return s;
}

bool is_sub(const Term& x) {
  return x.kind() == Kind::Slash || x.kind() == Kind::Lift || x.kind() == Kind::Shift;
}

LiftView view_lifts(const Term& s) {
  std::size_t d = 0;
  const Term* cur = &s;
  while (cur->kind() == Kind::Lift) {
    ++d;
    cur = &cur->kid(0);
  }
  return {d, *cur};
}

bool eligible(const Term& t) {
  return !has_kind<Kind>(t, [](Kind k) { return k == Kind::Lift || k == Kind::Shift; });
}

Term embed(const pure::Db& t) {
  switch (t.kind()) {
    case pure::DKind::Idx:
      return idx(t.num());
    case pure::DKind::App:
      return app(embed(t.kid(0)), embed(t.kid(1)));
    case pure::DKind::Lam:
      return lam(embed(t.kid(0)), t.annot());
  }
  return {};
}

pure::Db to_pure(const Term& t) {
  switch (t.kind()) {
    case Kind::Idx:
      return pure::idx(t.num());
    case Kind::App:
      return pure::app(to_pure(t.kid(0)), to_pure(t.kid(1)));
    case Kind::Lam:
      return pure::lam(to_pure(t.kid(0)), t.annot());
    default:
      throw PreconditionError("to_pure: term has a substitution");
  }
}

namespace {

// Shared skeleton of the re-indexers: `on_index(i, n)` at the leaves, i
// incremented under binders and in closure bodies.
template <class F>
Term reindex(std::size_t i, const Term& t, const F& on_index, const char* who) {
  switch (t.kind()) {
    case Kind::Idx:
      return idx(on_index(i, t.num()));
    case Kind::App:
      return app(reindex(i, t.kid(0), on_index, who), reindex(i, t.kid(1), on_index, who));
    case Kind::Lam:
      return lam(reindex(i + 1, t.kid(0), on_index, who), t.annot());
    case Kind::Clo:
      if (t.kid(1).kind() != Kind::Slash)
        throw PreconditionError(std::string(who) + ": term contains a lift or a shift");
      return clo(reindex(i + 1, t.kid(0), on_index, who),
                 slash(reindex(i, t.kid(1).kid(0), on_index, who)));
    default:
      throw PreconditionError(std::string(who) + ": expected a term");
  }
}

std::uint32_t ls_index(std::size_t i, std::uint32_t n) { return n > i ? n + 1 : n; }

std::uint32_t lc_index(std::size_t i, std::uint32_t n) {
  if (n > i + 1) return n;
  if (n == i + 1) return 1;
  return n + 1;
}

// The cons row at depth 0 is the plain t[u/] row.
Term lc0(std::size_t i, const Term& t) { return i == 0 ? t : flift_cons(i, t); }

}  // namespace

Term flift_shift(std::size_t i, const Term& t) { return reindex(i, t, ls_index, "flift_shift"); }

Term fshift(std::size_t i, const Term& t) {
  if (!eligible(t)) throw PreconditionError("fshift: term contains a lift or a shift");
  Term r = t;
  for (std::size_t k = 0; k < i; ++k) r = flift_shift(0, r);
  return r;
}

Term flift_cons(std::size_t i, const Term& t) { return reindex(i, t, lc_index, "flift_cons"); }

Checked<DbEnv> typecheck_sub(const DbEnv& env, const Term& s, LiftTyping mode) {
  switch (s.kind()) {
    case Kind::Slash: {
      auto a = typecheck(env, s.kid(0), mode);
      if (!a) return a.error();
      return env.push(*a);
    }
    case Kind::Shift:
      if (env.empty()) return type_error(TypeErrorKind::Shape, "shift in an empty environment");
      return env.drop(1);
    case Kind::Lift: {
      if (env.empty()) return type_error(TypeErrorKind::Shape, "lift in an empty environment");
      DbEnv rest = env.drop(1);
      auto inner = typecheck_sub(rest, s.kid(0), mode);
      if (!inner) return inner;
      if (mode == LiftTyping::Literal &&
          (inner->size() != rest.size() + 1 || !(inner->drop(1) == rest)))
        return type_error(TypeErrorKind::SideCondition,
                          "lift premise needs target B," + to_string(rest) + ", got " +
                              to_string(*inner));
      return inner->push(*env.lookup(1));
    }
    default:
      return type_error(TypeErrorKind::Shape, "expected a substitution");
  }
}

Checked<Type> typecheck(const DbEnv& env, const Term& t, LiftTyping mode) {
  switch (t.kind()) {
    case Kind::Idx: {
      auto a = env.lookup(t.num());
      if (!a)
        return type_error(TypeErrorKind::Unbound, "index " + std::to_string(t.num()) +
                                                      " out of range in [" + to_string(env) + "]");
      return *a;
    }
    case Kind::App: {
      auto f = typecheck(env, t.kid(0), mode);
      if (!f) return f;
      auto a = typecheck(env, t.kid(1), mode);
      if (!a) return a;
      if (!f->is_arrow() || f->left() != *a)
        return type_error(TypeErrorKind::Mismatch, "cannot apply " + ateb::to_string(*f) +
                                                       " to " + ateb::to_string(*a));
      return f->right();
    }
    case Kind::Lam: {
      if (!t.annot()) return type_error(TypeErrorKind::Unannotated, "unannotated binder");
      auto b = typecheck(env.push(t.annot()), t.kid(0), mode);
      if (!b) return b;
      return Type::arrow(t.annot(), *b);
    }
    case Kind::Clo: {
      auto d = typecheck_sub(env, t.kid(1), mode);
      if (!d) return d.error();
      return typecheck(*d, t.kid(0), mode);
    }
    default:
      return type_error(TypeErrorKind::Shape, "expected a term");
  }
}

namespace {

struct CloInfo {
  std::size_t i;
  bool cons;
  Term u;  // the substituend when cons
};

CloInfo clo_info(const Term& t) {
  auto v = view_lifts(t.kid(1));
  if (v.base.kind() == Kind::Slash) return {v.depth, true, v.base.kid(0)};
  return {v.depth, false, {}};
}

// Environments for the body and the substituend of a closure, plus the
// binder annotation Ateb introduces; empty when untyped.
struct CloEnvs {
  std::optional<DbEnv> body, repl;
  Type binder;
};

CloEnvs clo_envs(const CloInfo& c, const std::optional<DbEnv>& env, LiftTyping mode) {
  CloEnvs r;
  if (!env) return r;
  if (c.cons) {
    if (c.i > env->size()) return r;
    r.repl = env->drop(c.i);
    auto b = typecheck(*r.repl, c.u, mode);
    if (!b) return r;
    r.binder = *b;
    r.body = env->insert_at(c.i, *b);
  } else if (c.i < env->size()) {
    r.body = env->erase_at(c.i);
  }
  return r;
}

}  // namespace

Term ateb_term(const Term& t, const std::optional<DbEnv>& env, LiftTyping mode) {
  switch (t.kind()) {
    case Kind::Idx:
      return t;
    case Kind::App:
      return app(ateb_term(t.kid(0), env, mode), ateb_term(t.kid(1), env, mode));
    case Kind::Lam: {
      std::optional<DbEnv> inner;
      if (env && t.annot()) inner = env->push(t.annot());
      return lam(ateb_term(t.kid(0), inner, mode), t.annot());
    }
    case Kind::Clo: {
      CloInfo c = clo_info(t);
      CloEnvs e = clo_envs(c, env, mode);
      Term body = ateb_term(t.kid(0), e.body, mode);
      if (!c.cons) return flift_shift(c.i, body);
      return app(lam(lc0(c.i, body), e.binder), fshift(c.i, ateb_term(c.u, e.repl, mode)));
    }
    default:
      throw PreconditionError("ateb: expected a term");
  }
}

pure::Db ateb_of(const Term& t, const std::optional<DbEnv>& env, LiftTyping mode) {
  return to_pure(ateb_term(t, env, mode));
}

Term overline(const Term& t) {
  switch (t.kind()) {
    case Kind::Idx:
      return t;
    case Kind::App:
      return app(overline(t.kid(0)), overline(t.kid(1)));
    case Kind::Lam:
      return lam(overline(t.kid(0)), t.annot());
    case Kind::Clo: {
      CloInfo c = clo_info(t);
      Term body = overline(t.kid(0));
      if (!c.cons) return flift_shift(c.i, body);
      return clo(lc0(c.i, body), slash(fshift(c.i, overline(c.u))));
    }
    default:
      throw PreconditionError("overline: expected a term");
  }
}

bool preceq_sub(const Term& s, const Term& s2, Skeleton mode) {
  if (s2.kind() == Kind::Lift && preceq_sub(s, s2.kid(0), mode)) return true;
  if (s.kind() != s2.kind()) return false;
  switch (s.kind()) {
    case Kind::Shift:
      return true;
    case Kind::Slash:
      return preceq(s.kid(0), s2.kid(0), mode);
    case Kind::Lift:
      return preceq_sub(s.kid(0), s2.kid(0), mode);
    default:
      return false;
  }
}

bool preceq(const Term& u, const Term& t, Skeleton mode) {
  if (t.kind() == Kind::Clo) {
    auto v = view_lifts(t.kid(1));
    bool droppable = v.base.kind() == Kind::Shift &&
                     (v.depth == 0 || mode == Skeleton::Generalized);
    if (droppable && preceq(u, t.kid(0), mode)) return true;
  }
  if (u.kind() != t.kind()) return false;
  switch (u.kind()) {
    case Kind::Idx:
      return true;
    case Kind::App:
      return preceq(u.kid(0), t.kid(0), mode) && preceq(u.kid(1), t.kid(1), mode);
    case Kind::Lam:
      return preceq(u.kid(0), t.kid(0), mode);
    case Kind::Clo:
      return preceq(u.kid(0), t.kid(0), mode) && preceq_sub(u.kid(1), t.kid(1), mode);
    default:
      return preceq_sub(u, t, mode);
  }
}

bool lessdot(const Term& u, const Term& t, Skeleton mode) {
  return overline(u) == overline(t) && preceq(u, t, mode);
}

namespace {

Path prefixed(std::initializer_list<std::uint8_t> pre, const Path& p) {
  Path r(pre);
  r.insert(r.end(), p.begin(), p.end());
  return r;
}

// Appends the steps of `sub`, performed inside the hole of `ctx` at `pre`.
void splice(Trace<Term>& out, const Trace<Term>& sub,
            const std::function<Term(const Term&)>& ctx, std::initializer_list<std::uint8_t> pre) {
  for (const auto& st : sub.steps) out.push(st.rule, prefixed(pre, st.at), ctx(st.after));
}

// Maps each step through a re-indexer; paths are preserved because the
// re-indexers commute with B.
void splice_mapped(Trace<Term>& out, const Trace<Term>& sub,
                   const std::function<Term(const Term&)>& f,
                   const std::function<Term(const Term&)>& ctx,
                   std::initializer_list<std::uint8_t> pre) {
  for (const auto& st : sub.steps) out.push(st.rule, prefixed(pre, st.at), ctx(f(st.after)));
}

}  // namespace

Witness init_witness(const Term& t, const std::optional<DbEnv>& env, LiftTyping mode) {
  switch (t.kind()) {
    case Kind::Idx:
      return {t, Trace<Term>{t, {}}};
    case Kind::App: {
      Witness a = init_witness(t.kid(0), env, mode);
      Witness b = init_witness(t.kid(1), env, mode);
      Trace<Term> tr{app(a.trace.start, b.trace.start), {}};
      splice(tr, a.trace, [&](const Term& x) { return app(x, b.trace.start); }, {0});
      splice(tr, b.trace, [&](const Term& x) { return app(a.u, x); }, {1});
      return {app(a.u, b.u), std::move(tr)};
    }
    case Kind::Lam: {
      std::optional<DbEnv> inner;
      if (env && t.annot()) inner = env->push(t.annot());
      Witness a = init_witness(t.kid(0), inner, mode);
      Trace<Term> tr{lam(a.trace.start, t.annot()), {}};
      splice(tr, a.trace, [&](const Term& x) { return lam(x, t.annot()); }, {0});
      return {lam(a.u, t.annot()), std::move(tr)};
    }
    case Kind::Clo: {
      CloInfo c = clo_info(t);
      CloEnvs e = clo_envs(c, env, mode);
      Witness a = init_witness(t.kid(0), e.body, mode);
      if (!c.cons) {
        auto f = [&](const Term& x) { return flift_shift(c.i, x); };
        Trace<Term> tr{f(a.trace.start), {}};
        splice_mapped(tr, a.trace, f, [](const Term& x) { return x; }, {});
        return {f(a.u), std::move(tr)};
      }
      Witness b = init_witness(c.u, e.repl, mode);
      auto fc = [&](const Term& x) { return lc0(c.i, x); };
      auto fs = [&](const Term& x) { return fshift(c.i, x); };
      const Term arg0 = fs(b.trace.start);
      Trace<Term> tr{app(lam(fc(a.trace.start), e.binder), arg0), {}};
      splice_mapped(tr, a.trace, fc,
                    [&](const Term& x) { return app(lam(x, e.binder), arg0); }, {0, 0});
      const Term fun = lam(fc(a.u), e.binder);
      splice_mapped(tr, b.trace, fs, [&](const Term& x) { return app(fun, x); }, {1});
      Term u = clo(fc(a.u), slash(fs(b.u)));
      tr.push("B", {}, u);
      return {u, std::move(tr)};
    }
    default:
      throw PreconditionError("init_witness: expected a term");
  }
}

namespace {

std::string print(const Term& t, int pos);

std::string print_sub(const Term& s) {
  switch (s.kind()) {
    case Kind::Slash:
      return print(s.kid(0), 0) + "/";
    case Kind::Lift:
      return "^(" + print_sub(s.kid(0)) + ")";
    case Kind::Shift:
      return "!";
    default:
      return "?";
  }
}

// pos: 0 top, 1 function, 2 argument, 3 body of a closure.
std::string print(const Term& t, int pos) {
  switch (t.kind()) {
    case Kind::Idx:
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
      return print(t.kid(0), 3) + "[" + print_sub(t.kid(1)) + "]";
    default:
      return print_sub(t);
  }
}

Term parse_term(TokenStream& ts);

Term parse_sub(TokenStream& ts) {
  if (ts.accept("^")) {
    ts.expect("(");
    Term s = parse_sub(ts);
    ts.expect(")");
    return lift(s);
  }
  if (ts.accept("!")) return shift();
  Term u = parse_term(ts);
  ts.expect("/");
  return slash(u);
}

Term parse_atom(TokenStream& ts) {
  Term t;
  if (ts.accept("(")) {
    t = parse_term(ts);
    ts.expect(")");
  } else {
    auto n = ts.expect_number();
    if (n == 0) ts.fail("indices start at 1");
    t = idx(static_cast<std::uint32_t>(n));
  }
  while (ts.accept("[")) {
    Term s = parse_sub(ts);
    ts.expect("]");
    t = clo(t, s);
  }
  return t;
}

Term parse_term(TokenStream& ts) {
  if (ts.accept("\\")) {
    Type a;
    if (!ts.is(".")) a = parse_type_from(ts);
    ts.expect(".");
    return lam(parse_term(ts), a);
  }
  Term t = parse_atom(ts);
  for (;;) {
    if (ts.is("\\")) return app(t, parse_term(ts));
    if (ts.is("(") || ts.peek().kind == Token::Kind::Number) {
      t = app(t, parse_atom(ts));
      continue;
    }
    return t;
  }
}

constexpr std::string_view kRules[] = {"B",        "App",       "Lambda",   "FVar",
                                       "RVar",     "FVarLift",  "RVarLift", "VarShift"};

}  // namespace

std::string to_string(const Term& t) { return print(t, 0); }

Term parse(std::string_view src) {
  TokenStream ts(src);
  Term t = parse_term(ts);
  ts.expect_end();
  return t;
}

std::span<const std::string_view> System::rules() const { return kRules; }
RuleSet System::b_rules() const { return RuleSet::only(0); }
RuleSet System::r2_rules() const {
  RuleSet r;
  for (std::size_t i = 1; i < std::size(kRules); ++i) r = r.with(i);
  return r;
}

void System::root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const {
  if (t.kind() == Kind::App) {
    if (r.has(0) && t.kid(0).kind() == Kind::Lam) out.emplace_back(0, clo(t.kid(0).kid(0), slash(t.kid(1))));
    return;
  }
  if (t.kind() != Kind::Clo) return;
  const Term& b = t.kid(0);
  const Term& s = t.kid(1);
  switch (b.kind()) {
    case Kind::App:
      if (r.has(1)) out.emplace_back(1, app(clo(b.kid(0), s), clo(b.kid(1), s)));
      return;
    case Kind::Lam:
      if (r.has(2)) out.emplace_back(2, lam(clo(b.kid(0), lift(s)), b.annot()));
      return;
    case Kind::Idx: {
      std::uint32_t n = b.num();
      switch (s.kind()) {
        case Kind::Slash:
          if (n == 1 && r.has(3)) out.emplace_back(3, s.kid(0));
          if (n > 1 && r.has(4)) out.emplace_back(4, idx(n - 1));
          return;
        case Kind::Lift:
          if (n == 1 && r.has(5)) out.emplace_back(5, idx(1));
          if (n > 1 && r.has(6)) out.emplace_back(6, clo(clo(idx(n - 1), s.kid(0)), shift()));
          return;
        case Kind::Shift:
          if (r.has(7)) out.emplace_back(7, idx(n + 1));
          return;
        default:
          return;
      }
    }
    default:
      return;
  }
}

std::optional<Trace<Term>> simulate_step(const ReductionStep<Term>& step, const Term& u,
                                         std::size_t depth) {
  System sys;
  auto pred = [&](const Term& x) { return lessdot(x, step.after); };
  if (step.rule == "B") return search(sys, u, sys.b_rules(), 1, 1, pred);
  return search(sys, u, sys.r2_rules(), 0, depth, pred);
}

void enumerate(int max_size, const std::function<void(const Term&)>& visit) {
  if (max_size < 1) return;
  const auto top = static_cast<std::size_t>(max_size);
  std::vector<std::vector<Term>> terms(top + 1), subs(top + 1);
  for (std::size_t k = 1; k <= top; ++k) {
    auto emit = [&](const Term& x) {
      if (k < top) terms[k].push_back(x);
      else visit(x);
    };
    if (k == 1) {
      for (std::uint32_t n = 1; n <= top + 1; ++n) emit(idx(n));
      subs[1].push_back(shift());
    } else {
      for (const auto& b : terms[k - 1]) emit(lam(b));
      for (std::size_t a = 1; a + 1 < k; ++a) {
        std::size_t c = k - 1 - a;
        for (const auto& f : terms[a]) {
          for (const auto& g : terms[c]) emit(app(f, g));
          for (const auto& s : subs[c]) emit(clo(f, s));
        }
      }
      if (k < top) {
        for (const auto& u : terms[k - 1]) subs[k].push_back(slash(u));
        for (const auto& s : subs[k - 1]) subs[k].push_back(lift(s));
      }
    }
    if (k < top)
      for (const auto& x : terms[k]) visit(x);
  }
}

void annotate_all(const Term& t, const std::function<void(const Term&)>& visit) {
  annotate_binders<Kind>(t, [](Kind k) { return k == Kind::Lam; }, visit);
}

}  // namespace ateb::lu
