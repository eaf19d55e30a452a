#include "ateb/mu_mutilde.hpp"

#include <utility>

#include "ateb/enumerate.hpp"
#include "ateb/lexer.hpp"

namespace ateb::mmt {

bool is_covar(const Name& x) { return !x.empty() && x[0] >= 'a' && x[0] <= 'h'; }

Sort sort_of(const Term& t) {
  switch (t.kind()) {
    case Kind::Cut:
      return Sort::Command;
    case Kind::Var:
    case Kind::Lam:
    case Kind::ConsEV:
    case Kind::Mu:
      return Sort::Term;
    case Kind::Sub:
      return sort_of(t.kid(0));
    default:
      return Sort::Context;
  }
}

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Command:
      return "command";
    case Sort::Term:
      return "term";
    case Sort::Context:
      return "context";
  }
  return "?";
}

Term cut(Term v, Term e) { return Term::make(Kind::Cut, {}, {std::move(v), std::move(e)}); }
Term var(const Name& x) { return Term::make(Kind::Var, {.name = x}); }
Term lam(const Name& x, Term v, Type annot) {
  return Term::make(Kind::Lam, {.name = x, .annot = std::move(annot)}, {std::move(v)});
}
Term cons_ev(Term e, Term v) { return Term::make(Kind::ConsEV, {}, {std::move(e), std::move(v)}); }
Term mu(const Name& a, Term c, Type annot) {
  return Term::make(Kind::Mu, {.name = a, .annot = std::move(annot)}, {std::move(c)});
}
Term covar(const Name& a) { return Term::make(Kind::CoVar, {.name = a}); }
Term colam(const Name& a, Term e, Type annot) {
  return Term::make(Kind::CoLam, {.name = a, .annot = std::move(annot)}, {std::move(e)});
}
Term cons_ve(Term v, Term e) { return Term::make(Kind::ConsVE, {}, {std::move(v), std::move(e)}); }
Term mutilde(const Name& x, Term c, Type annot) {
  return Term::make(Kind::MuTilde, {.name = x, .annot = std::move(annot)}, {std::move(c)});
}
Term sub(Term t, const Name& src, Term s) {
  return Term::make(Kind::Sub, {.name = src}, {std::move(t), std::move(s)});
}

namespace {

Sort sort_of_name(const Name& x) { return is_covar(x) ? Sort::Context : Sort::Term; }

bool is_binder(Kind k) {
  return k == Kind::Lam || k == Kind::CoLam || k == Kind::Mu || k == Kind::MuTilde;
}

Term rebind(const Term& b, const Name& y, Term body) {
  auto f = b.fields();
  f.name = y;
  return Term::make(b.kind(), f, {std::move(body)});
}

void fv(const Term& t, NameSet& out) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::CoVar:
      out.insert(t.name());
      return;
    case Kind::Sub: {
      NameSet b;
      fv(t.kid(0), b);
      out = out.unite(b.without(t.name()));
      fv(t.kid(1), out);
      return;
    }
    default:
      if (is_binder(t.kind())) {
        NameSet b;
        fv(t.kid(0), b);
        out = out.unite(b.without(t.name()));
        return;
      }
      fv(t.kid(0), out);
      fv(t.kid(1), out);
  }
}

// `to` must not occur in t.
Term rename_free(const Term& t, const Name& from, const Name& to) {
  switch (t.kind()) {
    case Kind::Var:
      return t.name() == from ? var(to) : t;
    case Kind::CoVar:
      return t.name() == from ? covar(to) : t;
    case Kind::Sub: {
      Term s = rename_free(t.kid(1), from, to);
      Term b = t.name() == from ? t.kid(0) : rename_free(t.kid(0), from, to);
      return sub(b, t.name(), s);
    }
    default:
      if (is_binder(t.kind())) {
        if (t.name() == from) return t;
        return t.with_kid(0, rename_free(t.kid(0), from, to));
      }
      return t.with_kid(0, rename_free(t.kid(0), from, to))
          .with_kid(1, rename_free(t.kid(1), from, to));
  }
}

}  // namespace

bool well_formed(const Term& t) {
  auto is = [](const Term& x, Sort s) { return well_formed(x) && sort_of(x) == s; };
  switch (t.kind()) {
    case Kind::Var:
      return !is_covar(t.name());
    case Kind::CoVar:
      return is_covar(t.name());
    case Kind::Cut:
    case Kind::ConsVE:
      return is(t.kid(0), Sort::Term) && is(t.kid(1), Sort::Context);
    case Kind::ConsEV:
      return is(t.kid(0), Sort::Context) && is(t.kid(1), Sort::Term);
    case Kind::Lam:
      return !is_covar(t.name()) && is(t.kid(0), Sort::Term);
    case Kind::CoLam:
      return is_covar(t.name()) && is(t.kid(0), Sort::Context);
    case Kind::Mu:
      return is_covar(t.name()) && is(t.kid(0), Sort::Command);
    case Kind::MuTilde:
      return !is_covar(t.name()) && is(t.kid(0), Sort::Command);
    case Kind::Sub:
      return well_formed(t.kid(0)) && is(t.kid(1), sort_of_name(t.name()));
  }
  return false;
}

NameSet free_vars(const Term& t) {
  NameSet out;
  fv(t, out);
  return out;
}

bool substitution_free(const Term& t) {
  return !has_kind<Kind>(t, [](Kind k) { return k == Kind::Sub; });
}

std::size_t count_subs(const Term& t) {
  return count_kind<Kind>(t, [](Kind k) { return k == Kind::Sub; });
}

// ---------------------------------------------------------------- typing

namespace {

TwoSidedEnv bind(TwoSidedEnv env, const Name& x, const Type& a) {
  (is_covar(x) ? env.right : env.left)[x] = a;
  return env;
}

Checked<Type> check(const TwoSidedEnv& env, const Term& t);

Checked<Type> check_binder(const TwoSidedEnv& env, const Term& t) {
  if (!t.annot()) return type_error(TypeErrorKind::Unannotated, "unannotated binder " + t.name());
  auto b = check(bind(env, t.name(), t.annot()), t.kid(0));
  if (!b) return b;
  switch (t.kind()) {
    case Kind::Lam:
      return Type::arrow(t.annot(), *b);
    case Kind::CoLam:
      return Type::minus(t.annot(), *b);
    default:
      return t.annot();
  }
}

Checked<Type> check(const TwoSidedEnv& env, const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::CoVar: {
      const NamedEnv& side = is_covar(t.name()) ? env.right : env.left;
      auto it = side.find(t.name());
      if (it == side.end()) return type_error(TypeErrorKind::Unbound, "unbound " + t.name());
      return it->second;
    }
    case Kind::Cut: {
      auto a = check(env, t.kid(0));
      if (!a) return a;
      auto b = check(env, t.kid(1));
      if (!b) return b;
      if (*a != *b)
        return type_error(TypeErrorKind::Mismatch, "cut between " + ateb::to_string(*a) +
                                                       " and " + ateb::to_string(*b));
      return Type{};
    }
    case Kind::ConsVE:
    case Kind::ConsEV: {
      // v * e : A -> B with v : A, e : B;  e * v : A - B with e : A, v : B.
      auto a = check(env, t.kid(0));
      if (!a) return a;
      auto b = check(env, t.kid(1));
      if (!b) return b;
      return t.kind() == Kind::ConsVE ? Type::arrow(*a, *b) : Type::minus(*a, *b);
    }
    case Kind::Sub: {
      auto a = check(env, t.kid(1));
      if (!a) return a;
      return check(bind(env, t.name(), *a), t.kid(0));
    }
    default:
      return check_binder(env, t);
  }
}

}  // namespace

Checked<Type> typecheck(const TwoSidedEnv& env, const Term& t) {
  if (!well_formed(t)) return type_error(TypeErrorKind::Shape, "ill-sorted subject");
  return check(env, t);
}

// ------------------------------------------------------------------ ateb

namespace {

using OptEnv = std::optional<TwoSidedEnv>;

Type synth(const OptEnv& env, const Term& t) {
  if (!env) return {};
  auto a = check(*env, t);
  return a ? *a : Type{};
}

OptEnv under(const OptEnv& env, const Name& x, const Type& a) {
  if (!env || !a) return std::nullopt;
  return bind(*env, x, a);
}

}  // namespace

Term ateb_term(const Term& t, const OptEnv& env) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::CoVar:
      return t;
    case Kind::Cut:
    case Kind::ConsEV:
    case Kind::ConsVE:
      return t.with_kid(0, ateb_term(t.kid(0), env)).with_kid(1, ateb_term(t.kid(1), env));
    case Kind::Sub:
      break;
    default:
      return t.with_kid(0, ateb_term(t.kid(0), under(env, t.name(), t.annot())));
  }
  const Name& s = t.name();
  Type ty = synth(env, t.kid(1));
  Term b = ateb_term(t.kid(0), under(env, s, ty));
  Term u = ateb_term(t.kid(1), env);
  Type whole = synth(env, t);
  NameSet used = all_names(t);
  bool ctx_src = is_covar(s);
  switch (sort_of(t.kid(0))) {
    case Sort::Command:
      return ctx_src ? cut(mu(s, b, ty), u) : cut(u, mutilde(s, b, ty));
    case Sort::Term:
      if (!ctx_src) {
        Name a = fresh_name("a", used);
        return mu(a, cut(lam(s, b, ty), cons_ve(u, covar(a))), whole);
      } else {
        Name a = fresh_name("b", used);
        return mu(a, cut(mu(s, cut(b, covar(a)), ty), u), whole);
      }
    case Sort::Context:
      if (!ctx_src) {
        Name y = fresh_name("y", used);
        return mutilde(y, cut(u, mutilde(s, cut(var(y), b), ty)), whole);
      } else {
        Name x = fresh_name("x", used);
        return mutilde(x, cut(cons_ev(u, var(x)), colam(s, b, ty)), whole);
      }
  }
  return t;
}

namespace {

using Chain = std::vector<std::pair<std::string_view, Path>>;

Chain chain_of(const Term& t) {
  bool ctx_src = is_covar(t.name());
  switch (sort_of(t.kid(0))) {
    case Sort::Command:
      return {{ctx_src ? "mu" : "mut", {}}};
    case Sort::Term:
      if (!ctx_src)
        return {{"beta", {0}}, {"mut", {0}}, {"ctau", {0}}, {"atau2", {0, 1}}, {"sv", {}}};
      return {{"mu", {0}}, {"ctau", {0}}, {"atau2", {0, 1}}, {"sv", {}}};
    case Sort::Context:
      if (!ctx_src) return {{"mut", {0}}, {"ctau", {0}}, {"xtau2", {0, 0}}, {"se", {}}};
      return {{"betat", {0}}, {"mu", {0}}, {"ctau", {0}}, {"xtau2", {0, 0}}, {"se", {}}};
  }
  return {};
}

Path joined(const Path& a, const Path& b) {
  Path r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

void apply_at(const System& sys, Trace<Term>& tr, std::string_view rule, const Path& at) {
  const Term& cur = tr.end();
  RootRewrites<Term> out;
  sys.root_rewrites(subterm_at(cur, at), RuleSet::only(*rule_index(sys, rule)), out);
  if (out.size() != 1)
    throw PreconditionError("expansion: " + std::string(rule) + " does not apply at " +
                            path_to_string(at) + " in " + to_string(cur));
  tr.push(std::string(rule), at, replace_at(cur, at, out[0].second));
}

// Invariant: the subterm of tr.end() at `at` is ateb_term(t).
void expand(const System& sys, const Term& t, const Path& at, Trace<Term>& tr) {
  if (t.kind() == Kind::Sub)
    for (const auto& [rule, rel] : chain_of(t)) apply_at(sys, tr, rule, joined(at, rel));
  for (std::size_t i = 0; i < t.arity(); ++i)
    expand(sys, t.kid(i), joined(at, {static_cast<std::uint8_t>(i)}), tr);
}

}  // namespace

std::vector<std::string_view> chain_for(const Term& t) {
  std::vector<std::string_view> r;
  if (t.kind() != Kind::Sub) return r;
  for (const auto& [rule, at] : chain_of(t)) r.push_back(rule);
  return r;
}

Trace<Term> expansion_trace(const Term& t) {
  System sys;
  Trace<Term> tr{ateb_term(t), {}};
  expand(sys, t, {}, tr);
  return tr;
}

// ------------------------------------------------------------- rewriting

namespace {

constexpr std::string_view kRules[] = {
    "beta",  "betat", "mu",    "mut",    "ctau",     "xtau1", "xtau2",  "atau1", "atau2",
    "vetau", "evtau", "lamtau", "colamtau", "mutau", "muttau", "sv",    "se"};

}  // namespace

std::span<const std::string_view> System::rules() const { return kRules; }

void System::root_rewrites(const Term& t, RuleSet r, RootRewrites<Term>& out) const {
  switch (t.kind()) {
    case Kind::Cut: {
      const Term& v = t.kid(0);
      const Term& e = t.kid(1);
      if (r.has(0) && v.kind() == Kind::Lam && e.kind() == Kind::ConsVE)
        out.emplace_back(0, cut(e.kid(0), mutilde(v.name(), cut(v.kid(0), e.kid(1)), v.annot())));
      if (r.has(1) && v.kind() == Kind::ConsEV && e.kind() == Kind::CoLam)
        out.emplace_back(1, cut(mu(e.name(), cut(v.kid(1), e.kid(0)), e.annot()), v.kid(0)));
      // Both fire on <mu a. c | mut x. c'>.
      if (r.has(2) && v.kind() == Kind::Mu) out.emplace_back(2, sub(v.kid(0), v.name(), e));
      if (r.has(3) && e.kind() == Kind::MuTilde) out.emplace_back(3, sub(e.kid(0), e.name(), v));
      return;
    }
    case Kind::Mu: {
      const Term& c = t.kid(0);
      if (r.has(15) && c.kind() == Kind::Cut && c.kid(1).kind() == Kind::CoVar &&
          c.kid(1).name() == t.name() && !free_vars(c.kid(0)).contains(t.name()))
        out.emplace_back(15, c.kid(0));
      return;
    }
    case Kind::MuTilde: {
      const Term& c = t.kid(0);
      if (r.has(16) && c.kind() == Kind::Cut && c.kid(0).kind() == Kind::Var &&
          c.kid(0).name() == t.name() && !free_vars(c.kid(1)).contains(t.name()))
        out.emplace_back(16, c.kid(1));
      return;
    }
    case Kind::Sub:
      break;
    default:
      return;
  }
  const Term& b = t.kid(0);
  const Name& s = t.name();
  const Term& u = t.kid(1);
  switch (b.kind()) {
    case Kind::Cut:
      if (r.has(4)) out.emplace_back(4, cut(sub(b.kid(0), s, u), sub(b.kid(1), s, u)));
      return;
    case Kind::Var:
    case Kind::CoVar: {
      std::size_t base = b.kind() == Kind::Var ? 5 : 7;
      if (b.name() == s) {
        if (r.has(base)) out.emplace_back(base, u);
      } else if (r.has(base + 1)) {
        out.emplace_back(base + 1, b);
      }
      return;
    }
    case Kind::ConsVE:
      if (r.has(9)) out.emplace_back(9, cons_ve(sub(b.kid(0), s, u), sub(b.kid(1), s, u)));
      return;
    case Kind::ConsEV:
      if (r.has(10)) out.emplace_back(10, cons_ev(sub(b.kid(0), s, u), sub(b.kid(1), s, u)));
      return;
    case Kind::Sub:
      return;
    default:
      break;
  }
  std::size_t rule = b.kind() == Kind::Lam     ? 11
                     : b.kind() == Kind::CoLam ? 12
                     : b.kind() == Kind::Mu    ? 13
                                               : 14;
  if (!r.has(rule)) return;
  Name y = b.name();
  Term body = b.kid(0);
  if (y == s || free_vars(u).contains(y)) {
    Name y2 = fresh_name(y, all_names(t));
    body = rename_free(body, y, y2);
    y = y2;
  }
  out.emplace_back(rule, rebind(b, y, sub(body, s, u)));
}

// ---------------------------------------------------------- alpha / text

namespace {

void key_into(const Term& t, std::vector<Name>& bound, std::string& out) {
  static constexpr const char* kTag[] = {"C", "v", "L", "Ev", "M", "e", "K", "Ve", "T", "S"};
  switch (t.kind()) {
    case Kind::Var:
    case Kind::CoVar:
      out += kTag[static_cast<int>(t.kind())];
      for (std::size_t i = bound.size(); i-- > 0;)
        if (bound[i] == t.name()) {
          out += "_" + std::to_string(i);
          return;
        }
      out += ":" + t.name();
      return;
    case Kind::Sub: {
      out += "S(";
      std::size_t level = bound.size();
      bound.push_back(t.name());
      key_into(t.kid(0), bound, out);
      bound.pop_back();
      out += "," + std::to_string(level) + ",";
      key_into(t.kid(1), bound, out);
      out += ")";
      return;
    }
    default:
      out += kTag[static_cast<int>(t.kind())];
      if (is_binder(t.kind())) {
        out += std::to_string(bound.size());
        if (t.annot()) out += "{" + ateb::to_string(t.annot()) + "}";
        out += "(";
        bound.push_back(t.name());
        key_into(t.kid(0), bound, out);
        bound.pop_back();
        out += ")";
        return;
      }
      out += "(";
      key_into(t.kid(0), bound, out);
      out += ",";
      key_into(t.kid(1), bound, out);
      out += ")";
  }
}

// pos: 0 free, 1 left of '*', 2 before a postfix substitution.
std::string print(const Term& t, int pos) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::CoVar:
      return t.name();
    case Kind::Cut:
      return "<" + print(t.kid(0), 0) + " | " + print(t.kid(1), 0) + ">";
    case Kind::ConsVE:
    case Kind::ConsEV: {
      std::string s = print(t.kid(0), 1) + " * " + print(t.kid(1), 0);
      return pos ? "(" + s + ")" : s;
    }
    case Kind::Sub:
      return print(t.kid(0), 2) + "{" + t.name() + " <- " + print(t.kid(1), 0) + "}";
    default: {
      const char* kw = t.kind() == Kind::Lam     ? "\\"
                       : t.kind() == Kind::Mu    ? "mu "
                       : t.kind() == Kind::CoLam ? "colam "
                                                 : "mut ";
      std::string s = kw + t.name();
      if (t.annot()) s += ":" + ateb::to_string(t.annot());
      s += ". " + print(t.kid(0), 0);
      return pos ? "(" + s + ")" : s;
    }
  }
}

bool reserved(const std::string& w) { return w == "mu" || w == "mut" || w == "colam"; }

Name p_name(TokenStream& ts) {
  if (ts.peek().kind == Token::Kind::Ident && reserved(ts.peek().text))
    ts.fail("'" + ts.peek().text + "' is reserved");
  return ts.expect_ident();
}

void want(TokenStream& ts, const Term& t, Sort s, const char* where) {
  if (sort_of(t) != s)
    ts.fail(std::string(where) + " must be a " + sort_name(s) + ", got a " +
            sort_name(sort_of(t)));
}

Term p_subject(TokenStream& ts);

Term p_atom(TokenStream& ts) {
  if (ts.accept("(")) {
    Term t = p_subject(ts);
    ts.expect(")");
    return t;
  }
  if (ts.accept("<")) {
    Term v = p_subject(ts);
    want(ts, v, Sort::Term, "left of a cut");
    ts.expect("|");
    Term e = p_subject(ts);
    want(ts, e, Sort::Context, "right of a cut");
    ts.expect(">");
    return cut(v, e);
  }
  Name x = p_name(ts);
  return is_covar(x) ? covar(x) : var(x);
}

Term p_postfix(TokenStream& ts) {
  Term t = p_atom(ts);
  while (ts.accept("{")) {
    Name x = p_name(ts);
    ts.expect("<-");
    Term u = p_subject(ts);
    want(ts, u, sort_of_name(x), "substituend");
    ts.expect("}");
    t = sub(t, x, u);
  }
  return t;
}

Term p_binder(TokenStream& ts, Kind k) {
  bool co = k == Kind::Mu || k == Kind::CoLam;
  Name x = p_name(ts);
  if (is_covar(x) != co) ts.fail("binder " + x + " has the wrong sort");
  Type a;
  if (ts.accept(":")) a = parse_type_from(ts);
  ts.expect(".");
  Term body = p_subject(ts);
  Sort s = k == Kind::Lam ? Sort::Term : k == Kind::CoLam ? Sort::Context : Sort::Command;
  want(ts, body, s, "binder body");
  return Term::make(k, {.name = x, .annot = a}, {body});
}

Term p_subject(TokenStream& ts) {
  if (ts.accept("\\")) return p_binder(ts, Kind::Lam);
  for (auto [w, k] : {std::pair{"mu", Kind::Mu}, std::pair{"mut", Kind::MuTilde},
                      std::pair{"colam", Kind::CoLam}})
    if (ts.is_ident(w)) {
      ts.next();
      return p_binder(ts, k);
    }
  Term l = p_postfix(ts);
  if (!ts.accept("*")) return l;
  Term r = p_subject(ts);
  switch (sort_of(l)) {
    case Sort::Term:
      want(ts, r, Sort::Context, "right of 'v *'");
      return cons_ve(l, r);
    case Sort::Context:
      want(ts, r, Sort::Term, "right of 'e *'");
      return cons_ev(l, r);
    default:
      ts.fail("a command cannot be consed");
  }
}

}  // namespace

std::string alpha_key(const Term& t) {
  std::vector<Name> bound;
  std::string out;
  key_into(t, bound, out);
  return out;
}

bool alpha_equal(const Term& a, const Term& b) { return alpha_key(a) == alpha_key(b); }

std::string to_string(const Term& t) { return print(t, 0); }

Term parse(std::string_view src) {
  TokenStream ts(src);
  Term t = p_subject(ts);
  ts.expect_end();
  return t;
}

// ------------------------------------------------------------ enumeration

void enumerate(int max_size, const std::vector<Name>& term_vars, const std::vector<Name>& covars,
               const std::function<void(const Term&)>& visit) {
  enumerate_sized<Term>(
      max_size,
      [&](int k, const std::vector<std::vector<Term>>& p, auto&& emit) {
        if (k == 1) {
          for (const auto& x : term_vars) emit(var(x));
          for (const auto& a : covars) emit(covar(a));
          return;
        }
        for (const auto& b : p[static_cast<std::size_t>(k - 1)]) {
          switch (sort_of(b)) {
            case Sort::Term:
              for (const auto& x : term_vars) emit(lam(x, b));
              break;
            case Sort::Context:
              for (const auto& a : covars) emit(colam(a, b));
              break;
            case Sort::Command:
              for (const auto& a : covars) emit(mu(a, b));
              for (const auto& x : term_vars) emit(mutilde(x, b));
              break;
          }
        }
        split2(k - 1, [&](int a, int c) {
          for (const auto& f : p[static_cast<std::size_t>(a)]) {
            Sort sf = sort_of(f);
            for (const auto& g : p[static_cast<std::size_t>(c)]) {
              Sort sg = sort_of(g);
              if (sf == Sort::Term && sg == Sort::Context) {
                emit(cut(f, g));
                emit(cons_ve(f, g));
              }
              if (sf == Sort::Context && sg == Sort::Term) emit(cons_ev(f, g));
              if (sg == Sort::Term)
                for (const auto& x : term_vars) emit(sub(f, x, g));
              if (sg == Sort::Context)
                for (const auto& x : covars) emit(sub(f, x, g));
            }
          }
        });
      },
      visit);
}

void annotate_all(const Term& t, const std::function<void(const Term&)>& visit) {
  annotate_binders<Kind>(t, is_binder, visit);
}

}  // namespace ateb::mmt
