// ateb-lab: parse, reduce, typecheck, expand and check terms of the
// explicit substitution calculi.
//
// Exit codes: 0 ok, 1 check failure, 2 parse or usage error, 3 type error,
// 4 fuel or budget exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ateb/checks.hpp"
#include "ateb/lambda_sigma.hpp"
#include "ateb/lambda_sigma_n.hpp"
#include "ateb/lambda_upsilon.hpp"
#include "ateb/lambda_wsn.hpp"
#include "ateb/lambda_x.hpp"
#include "ateb/mu_mutilde.hpp"
#include "ateb/pure.hpp"

using namespace ateb;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInput = 2, kType = 3, kFuel = 4 };

struct Flags {
  std::string calculus;
  std::string term;
  std::string file;
  long fuel = 1000;
  std::size_t budget = 100000;
  bool trace = false;
  std::string format = "text";
  std::string env;
  std::vector<std::string> rules;
  bool sigma = false;
};

// Per-calculus glue.  Every adapter names its system, term and
// environment types and says how to read, show, type and expand terms.

struct PureNamed {
  using Sys = pure::NamedSystem;
  using Env = NamedEnv;
  static Sys::Term parse(std::string_view s) { return pure::parse_named(s); }
  static std::string show(const Sys::Term& t) { return pure::to_string(t); }
  static Env env(std::string_view s) { return parse_named_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return pure::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>&) { return show(t); }
  static RuleSet sigma(const Sys&) { return RuleSet{}; }
};

struct PureDb {
  using Sys = pure::DbSystem;
  using Env = DbEnv;
  static Sys::Term parse(std::string_view s) { return pure::parse_db(s); }
  static std::string show(const Sys::Term& t) { return pure::to_string(t); }
  static Env env(std::string_view s) { return parse_db_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return pure::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>&) { return show(t); }
  static RuleSet sigma(const Sys&) { return RuleSet{}; }
};

struct Lx {
  using Sys = lx::System;
  using Env = NamedEnv;
  static Sys::Term parse(std::string_view s) { return lx::parse(s); }
  static std::string show(const Sys::Term& t) { return lx::to_string(t); }
  static Env env(std::string_view s) { return parse_named_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return lx::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>& e) {
    return pure::to_string(lx::ateb_of(t, e));
  }
  static RuleSet sigma(const Sys& s) { return RuleSet::all().without(*rule_index(s, "Beta")); }
};

struct Lu {
  using Sys = lu::System;
  using Env = DbEnv;
  static Sys::Term parse(std::string_view s) { return lu::parse(s); }
  static std::string show(const Sys::Term& t) { return lu::to_string(t); }
  static Env env(std::string_view s) { return parse_db_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return lu::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>& e) {
    return pure::to_string(lu::ateb_of(t, e));
  }
  static RuleSet sigma(const Sys& s) { return s.r2_rules(); }
};

struct Ls {
  using Sys = ls::System;
  using Env = DbEnv;
  static Sys::Term parse(std::string_view s) { return ls::parse(s); }
  static std::string show(const Sys::Term& t) { return ls::to_string(t); }
  static Env env(std::string_view s) { return parse_db_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return ls::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>& e) {
    return pure::to_string(ls::ateb_of(t, e));
  }
  static RuleSet sigma(const Sys& s) { return s.sigma_rules(); }
};

struct Lsn {
  using Sys = lsn::System;
  using Env = NamedEnv;
  static Sys::Term parse(std::string_view s) { return lsn::parse(s); }
  static std::string show(const Sys::Term& t) { return lsn::to_string(t); }
  static Env env(std::string_view s) { return parse_named_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return lsn::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>& e) {
    return pure::to_string(lsn::ateb_of(t, e));
  }
  static RuleSet sigma(const Sys& s) { return s.sigma_rules(); }
};

struct Lwsn {
  using Sys = lw::System;
  using Env = NamedEnv;
  static Sys::Term parse(std::string_view s) { return lw::parse(s); }
  static std::string show(const Sys::Term& t) { return lw::to_string(t); }
  static Env env(std::string_view s) { return parse_named_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return lw::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>& e) {
    return lw::to_string(lw::ateb_term(t, e));
  }
  static RuleSet sigma(const Sys& s) { return RuleSet::all().without(*rule_index(s, "b")); }
};

struct Mmt {
  using Sys = mmt::System;
  using Env = TwoSidedEnv;
  static Sys::Term parse(std::string_view s) { return mmt::parse(s); }
  static std::string show(const Sys::Term& t) { return mmt::to_string(t); }
  static Env env(std::string_view s) { return parse_two_sided_env(s); }
  static Checked<Type> type(const Env& e, const Sys::Term& t) { return mmt::typecheck(e, t); }
  static std::string ateb(const Sys::Term& t, const std::optional<Env>& e) {
    return mmt::to_string(mmt::ateb_term(t, e));
  }
  static RuleSet sigma(const Sys& s) {
    return RuleSet::all().without(*rule_index(s, "beta")).without(*rule_index(s, "betat"));
  }
};

std::string read_input(const Flags& f) {
  if (!f.term.empty()) return f.term;
  std::ostringstream out;
  if (!f.file.empty()) {
    std::ifstream in(f.file);
    if (!in) throw std::invalid_argument("cannot read " + f.file);
    out << in.rdbuf();
  } else {
    out << std::cin.rdbuf();
  }
  std::string s = out.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

template <class C>
int cmd_parse(const Flags& f) {
  std::cout << C::show(C::parse(read_input(f))) << "\n";
  return kOk;
}

template <class C, class T>
void print_trace(const Trace<T>& tr, const std::string& format) {
  if (format == "jsonl") {
    std::cout << nlohmann::json{{"index", 0}, {"rule", nullptr}, {"path", nullptr},
                                {"term", C::show(tr.start)}}
                     .dump()
              << "\n";
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
      const auto& s = tr.steps[i];
      std::cout << nlohmann::json{{"index", i + 1},
                                  {"rule", s.rule},
                                  {"path", s.at},
                                  {"term", C::show(s.after)}}
                       .dump()
                << "\n";
    }
    return;
  }
  for (const auto& s : tr.steps)
    std::cout << s.rule << " @ " << path_to_string(s.at) << " : " << C::show(s.after) << "\n";
}

template <class C>
int cmd_reduce(const Flags& f) {
  typename C::Sys sys;
  auto t = C::parse(read_input(f));
  RuleSet r = RuleSet::all();
  if (!f.rules.empty()) r = rule_set(sys, f.rules);
  if (f.sigma) r = C::sigma(sys);
  auto res = normalize(sys, t, r, f.fuel, f.trace);
  if (f.trace) print_trace<C>(res.trace, f.format);
  if (res.exhausted) {
    std::cout << "fuel exhausted after " << f.fuel << " steps: " << C::show(res.term) << "\n";
    return kFuel;
  }
  if (!f.trace || f.format == "text") std::cout << C::show(res.term) << "\n";
  return kOk;
}

template <class C>
std::optional<typename C::Env> env_of(const Flags& f) {
  if (f.env.empty()) return std::nullopt;
  return C::env(f.env);
}

template <class C>
int cmd_typecheck(const Flags& f) {
  auto t = C::parse(read_input(f));
  auto a = C::type(env_of<C>(f).value_or(typename C::Env{}), t);
  if (!a) {
    std::cout << "type error: " << a.error().message << "\n";
    return kType;
  }
  if constexpr (std::is_same_v<C, Mmt>) {
    auto s = mmt::sort_of(t);
    if (s == mmt::Sort::Command)
      std::cout << "command\n";
    else
      std::cout << mmt::sort_name(s) << " : " << to_string(*a) << "\n";
  } else {
    std::cout << to_string(*a) << "\n";
  }
  return kOk;
}

template <class C>
int cmd_ateb(const Flags& f) {
  auto t = C::parse(read_input(f));
  auto env = env_of<C>(f);
  if (env) {
    auto a = C::type(*env, t);
    if (!a) {
      std::cout << "type error: " << a.error().message << "\n";
      return kType;
    }
  }
  std::cout << C::ateb(t, env) << "\n";
  return kOk;
}

template <class C>
int cmd_sn(const Flags& f) {
  typename C::Sys sys;
  auto t = C::parse(read_input(f));
  auto v = is_sn(sys, t, f.budget);
  if (v.proved()) {
    std::cout << "SN depth=" << v.max_depth << "\n";
    return kOk;
  }
  std::cout << "BudgetExhausted visited=" << v.visited;
  if (v.loop) std::cout << " loop=" << v.loop->length();
  std::cout << "\n";
  if (v.loop && f.trace) print_trace<C>(*v.loop, f.format);
  return kFuel;
}

template <class C>
int dispatch(const std::string& cmd, const Flags& f) {
  if (cmd == "parse" || cmd == "print") return cmd_parse<C>(f);
  if (cmd == "reduce") return cmd_reduce<C>(f);
  if (cmd == "typecheck") return cmd_typecheck<C>(f);
  if (cmd == "ateb") return cmd_ateb<C>(f);
  if (cmd == "sn") return cmd_sn<C>(f);
  throw std::invalid_argument("unknown command " + cmd);
}

int run_term_command(const std::string& cmd, const Flags& f) {
  const auto& c = f.calculus;
  if (c == "pure") return dispatch<PureNamed>(cmd, f);
  if (c == "pure-db") return dispatch<PureDb>(cmd, f);
  if (c == "lx") return dispatch<Lx>(cmd, f);
  if (c == "lu") return dispatch<Lu>(cmd, f);
  if (c == "ls") return dispatch<Ls>(cmd, f);
  if (c == "lsn") return dispatch<Lsn>(cmd, f);
  if (c == "lwsn") return dispatch<Lwsn>(cmd, f);
  if (c == "mmt") return dispatch<Mmt>(cmd, f);
  throw std::invalid_argument("unknown calculus " + c);
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  auto v = std::stoul(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

template <class C, class W>
int show_witness(const std::optional<W>& w) {
  if (!w) {
    std::cout << "no witness\n";
    return kCheckFailed;
  }
  std::cout << "u = " << C::show(w->u) << "\n";
  print_trace<C>(w->trace, "text");
  return kOk;
}

// The auxiliary functions and orders, for spot checks.
int cmd_fn(const std::string& calculus, const std::string& fn,
           const std::vector<std::string>& a) {
  auto need = [&](std::size_t n) {
    if (a.size() != n)
      throw std::invalid_argument(fn + " takes " + std::to_string(n) + " arguments");
  };
  auto yes = [](bool b) {
    std::cout << (b ? "true" : "false") << "\n";
    return kOk;
  };
  if (calculus == "lu") {
    if (fn == "flift_shift" || fn == "fshift" || fn == "flift_cons") {
      need(2);
      auto i = to_size(a[0]);
      auto t = lu::parse(a[1]);
      auto r = fn == "flift_shift" ? lu::flift_shift(i, t)
               : fn == "fshift"    ? lu::fshift(i, t)
                                   : lu::flift_cons(i, t);
      std::cout << lu::to_string(r) << "\n";
      return kOk;
    }
    if (fn == "overline") {
      need(1);
      std::cout << lu::to_string(lu::overline(lu::parse(a[0]))) << "\n";
      return kOk;
    }
    if (fn == "init")
      return need(1), show_witness<Lu>(std::optional<lu::Witness>(lu::init_witness(lu::parse(a[0]))));
    if (fn == "preceq") return need(2), yes(lu::preceq(lu::parse(a[0]), lu::parse(a[1])));
    if (fn == "lessdot") return need(2), yes(lu::lessdot(lu::parse(a[0]), lu::parse(a[1])));
  }
  if (calculus == "ls") {
    if (fn == "upshift") {
      need(3);
      std::cout << ls::to_string(ls::upshift(to_size(a[0]), to_size(a[1]), ls::parse(a[2])))
                << "\n";
      return kOk;
    }
    if (fn == "overline") {
      need(1);
      std::cout << ls::to_string(ls::overline(ls::parse(a[0]))) << "\n";
      return kOk;
    }
    if (fn == "overline-sub") {
      need(1);
      auto r = ls::overline_sub(ls::parse_sub(a[0]));
      std::cout << r.n << ", " << (r.rest ? ls::to_string(*r.rest) : std::string("-")) << "\n";
      return kOk;
    }
    if (fn == "sigma") {
      need(1);
      std::cout << ls::to_string(ls::sigma(ls::parse(a[0]))) << "\n";
      return kOk;
    }
    if (fn == "init") return need(1), show_witness<Ls>(ls::init_witness(ls::parse(a[0])));
    if (fn == "preceq") return need(2), yes(ls::preceq(ls::parse(a[0]), ls::parse(a[1])));
    if (fn == "lessdot") return need(2), yes(ls::lessdot(ls::parse(a[0]), ls::parse(a[1])));
  }
  if (calculus == "lsn") {
    if (fn == "sigma") {
      need(1);
      std::cout << lsn::to_string(lsn::sigma(lsn::parse(a[0]))) << "\n";
      return kOk;
    }
    if (fn == "init") return need(1), show_witness<Lsn>(lsn::init_witness(lsn::parse(a[0])));
    if (fn == "preceq") return need(2), yes(lsn::preceq(lsn::parse(a[0]), lsn::parse(a[1])));
    if (fn == "lessdot") return need(2), yes(lsn::lessdot(lsn::parse(a[0]), lsn::parse(a[1])));
  }
  if (fn == "expand" && (calculus == "lwsn" || calculus == "mmt")) {
    need(1);
    if (calculus == "lwsn") {
      auto tr = lw::expansion_trace(lw::parse(a[0]));
      std::cout << Lwsn::show(tr.start) << "\n";
      print_trace<Lwsn>(tr, "text");
    } else {
      auto tr = mmt::expansion_trace(mmt::parse(a[0]));
      std::cout << Mmt::show(tr.start) << "\n";
      print_trace<Mmt>(tr, "text");
    }
    return kOk;
  }
  throw std::invalid_argument("no function " + fn + " for " + calculus);
}

int cmd_check(const std::string& id, std::optional<int> size, std::optional<std::size_t> budget,
              std::optional<std::size_t> path) {
  const auto* c = checks::find(id);
  if (!c) {
    std::cerr << "unknown lemma id " << id << "; valid ids:\n";
    for (const auto& k : checks::registry()) std::cerr << "  " << k.id << "\n";
    return kInput;
  }
  if (const char* seed = std::getenv("ATEB_LAB_SEED")) std::cout << "seed " << seed << "\n";
  checks::Options o;
  o.size = size;
  o.budget = budget;
  o.path = path;
  auto r = c->run(o);
  std::cout << (r.pass ? "pass " : "FAIL ") << c->id << ": " << r.detail << "\n";
  for (const auto& ce : r.counterexamples) std::cout << "  counterexample: " << ce << "\n";
  return r.pass ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit substitution calculi workbench"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::string> calculi{"pure", "pure-db", "lx",   "lu",
                                         "ls",   "lsn",     "lwsn", "mmt"};

  auto term_cmd = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("calculus", f.calculus, "pure, pure-db, lx, lu, ls, lsn, lwsn or mmt")
        ->required()
        ->check(CLI::IsMember(calculi));
    s->add_option("term", f.term, "the term (otherwise --file or stdin)");
    s->add_option("--file", f.file, "read the term from a file");
    return s;
  };
  auto* parse = term_cmd("parse", "print the canonical form");
  auto* print = term_cmd("print", "same as parse");
  auto* reduce = term_cmd("reduce", "normalize, leftmost-outermost");
  reduce->add_option("--fuel", f.fuel, "step limit")->capture_default_str();
  reduce->add_flag("--trace", f.trace, "one line per step");
  reduce->add_option("--format", f.format, "trace format")
      ->check(CLI::IsMember({"text", "jsonl"}))
      ->capture_default_str();
  reduce->add_option("--rule", f.rules, "restrict to these rules (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  reduce->add_flag("--sigma", f.sigma, "only the substitution rules");
  auto* typecheck = term_cmd("typecheck", "type under --env");
  typecheck->add_option("--env", f.env, "e.g. \"x:i, y:i->i\", \"i, i->i\", \"x:i | a:i\"");
  auto* ateb = term_cmd("ateb", "the expansion, optionally typed by --env");
  ateb->add_option("--env", f.env, "environment used to annotate fresh binders");
  auto* sn = term_cmd("sn", "bounded strong normalization probe");
  sn->add_option("--budget", f.budget, "distinct terms to explore")->capture_default_str();
  sn->add_flag("--trace", f.trace, "print the loop witness, if any");
  sn->add_option("--format", f.format, "trace format")->check(CLI::IsMember({"text", "jsonl"}));

  std::string id;
  std::optional<int> size;
  std::optional<std::size_t> budget, path;
  auto* check = app.add_subcommand("check", "run a lemma suite");
  check->add_option("id", id, "lemma id, see `list`")->required();
  check->add_option("--size", size, "enumeration bound");
  check->add_option("--budget", budget, "SN budget");
  check->add_option("--path", path, "reduction path length");
  auto* list = app.add_subcommand("list", "list lemma ids");

  std::string fn_calc, fn_name;
  std::vector<std::string> fn_args;
  auto* fn = app.add_subcommand("fn", "evaluate an auxiliary function or order");
  fn->add_option("calculus", fn_calc, "lu, ls, lsn, lwsn or mmt")->required();
  fn->add_option("name", fn_name,
                 "lu: flift_shift fshift flift_cons overline init preceq lessdot; "
                 "ls: upshift overline overline-sub sigma init preceq lessdot; "
                 "lsn: sigma init preceq lessdot; lwsn, mmt: expand")
      ->required();
  fn->add_option("args", fn_args, "numbers and terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*check) return cmd_check(id, size, budget, path);
    if (*list) {
      for (const auto& c : checks::registry()) std::cout << c.id << "  " << c.title << "\n";
      return kOk;
    }
    if (*fn) return cmd_fn(fn_calc, fn_name, fn_args);
    for (auto* s : {parse, print, reduce, typecheck, ateb, sn})
      if (*s) return run_term_command(s->get_name(), f);
  } catch (const ParseError& e) {
    std::cout << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const FuelExhausted& e) {
    std::cout << "fuel exhausted: " << e.what() << "\n";
    return kFuel;
  } catch (const PreconditionError& e) {
    std::cout << "precondition: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cout << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
