// Command-line front end for the wldl library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "wldl/error.hpp"
#include "wldl/finite_semantics.hpp"
#include "wldl/omega.hpp"
#include "wldl/random.hpp"
#include "wldl/syntax.hpp"
#include "wldl/translate.hpp"
#include "wldl/wfa.hpp"

namespace {

using namespace wldl;

struct Common {
  std::string semiring = "nat";
  std::string alphabet;
  std::size_t max_states = kDefaultMaxStates;
  bool json = false;
};

struct Input {
  std::string file;
  std::string expr;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text << '\n';
}

struct Loaded {
  Ast tree;
  Alphabet alphabet;
  Semiring semiring;
};

// Reads the formula text and settles the alphabet: flag, then file header,
// then the letters occurring in the text and in `extra`.
Loaded load(const Input& in, Sort sort, const Common& c, const std::string& extra = "",
            bool need_letters = true) {
  if (in.file.empty() == in.expr.empty()) throw UsageError("give exactly one of -f FILE or -e TEXT");
  const FormulaFile ff = read_formula_text(in.file.empty() ? in.expr : read_file(in.file));
  std::optional<Alphabet> alphabet;
  if (!c.alphabet.empty()) alphabet = Alphabet(c.alphabet);
  if (ff.alphabet) {
    if (alphabet && !(*alphabet == *ff.alphabet))
      throw UsageError("--alphabet {" + alphabet->letters() + "} disagrees with the file header {" +
                       ff.alphabet->letters() + "}");
    alphabet = ff.alphabet;
  }
  if (!alphabet) alphabet = Alphabet(letters_in_text(ff.text) + extra);
  if (alphabet->empty() && need_letters) throw UsageError("the alphabet is empty; declare it with --alphabet");
  const Semiring s = Semiring::from_name(c.semiring);
  return {parse(sort, ff.text, *alphabet, s), *alphabet, s};
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-s,--semiring", c.semiring, "boolean, nat, int, rat, minplus, maxplus or viterbi")
      ->capture_default_str();
  cmd->add_option("--alphabet", c.alphabet, "letters, e.g. \"a b\"");
  cmd->add_option("--max-states", c.max_states, "state budget for automaton constructions")
      ->capture_default_str();
  cmd->add_flag("--json", c.json, "machine-readable output");
}

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("-f,--file", in.file, "formula file");
  cmd->add_option("-e,--expr", in.expr, "formula text");
}

void print_value(const Weight& v, bool json) {
  if (json)
    std::cout << nlohmann::json{{"value", v.to_string()}}.dump() << '\n';
  else
    std::cout << v.to_string() << '\n';
}

std::string show_word(const Word& w) { return w.empty() ? "\"\"" : w; }

// ---------------------------------------------------------------------------

struct EvalArgs {
  Common c;
  Input in;
  std::string kind;
  std::optional<std::string> word;
  std::optional<std::string> lasso;
};

void cmd_eval(const EvalArgs& a) {
  const Sort sort = sort_from_name(a.kind);
  std::string extra = a.word.value_or("");
  if (a.lasso) extra += a.lasso->substr(0, a.lasso->find(':')) + a.lasso->substr(a.lasso->find(':') + 1);
  const Loaded l = load(a.in, sort, a.c, extra);
  const CompileOptions opt{a.c.max_states};
  if (is_omega_sort(sort)) {
    if (!a.lasso || a.word) throw UsageError("infinite-word formulas are evaluated on --lasso u:v");
    const LassoWord w = LassoWord::parse(*a.lasso);
    l.alphabet.check_word(w.stem);
    l.alphabet.check_word(w.loop);
    const Semiring b(SemiringKind::Boolean);
    switch (sort) {
      case Sort::LdlOmega: return print_value(indicator(b, sat_ldlo(l.tree, w, l.alphabet, opt)), a.c.json);
      case Sort::WLdlOmega: return print_value(eval_wldlo(l.tree, w, l.semiring, l.alphabet, opt), a.c.json);
      default: return print_value(eval_greo(l.tree, w, l.semiring, l.alphabet), a.c.json);
    }
  }
  if (!a.word || a.lasso) throw UsageError("finite-word formulas are evaluated on -w WORD");
  const Word& w = *a.word;
  l.alphabet.check_word(w);
  const Semiring b(SemiringKind::Boolean);
  switch (sort) {
    case Sort::Ldl: return print_value(indicator(b, sat_ldl(l.tree, w)), a.c.json);
    case Sort::Ltl: return print_value(indicator(b, sat_ltl(l.tree, w)), a.c.json);
    case Sort::WLdl: return print_value(eval_wldl(l.tree, w, l.semiring), a.c.json);
    case Sort::Gre: return print_value(eval_gre(l.tree, w, l.semiring), a.c.json);
    case Sort::WLtl: return print_value(eval_wltl(l.tree, w, l.semiring), a.c.json);
    default: throw UsageError("cannot evaluate formulas of kind " + a.kind);
  }
}

struct TranslateArgs {
  Common c;
  Input in;
  std::string from;
  std::string to;
  std::string output;
};

void cmd_translate(const TranslateArgs& a) {
  const Sort from = sort_from_name(a.from);
  const Sort to = sort_from_name(a.to);
  const Loaded l = load(a.in, from, a.c);
  const CompileOptions opt{a.c.max_states};
  Ast out;
  if (from == Sort::Gre && to == Sort::WLdl) {
    check_proper_gre(l.tree, l.semiring);
    out = gre_to_wldl(l.tree, l.alphabet);
  } else if (from == Sort::WLdl && to == Sort::Gre) {
    out = wldl_to_gre(l.tree, l.semiring, l.alphabet, opt);
  } else if (from == Sort::GreOmega && to == Sort::WLdlOmega) {
    check_proper_gre(l.tree, l.semiring);
    out = greo_to_wldlo(l.tree, l.alphabet);
  } else if (from == Sort::WLdlOmega && to == Sort::GreOmega) {
    out = wldlo_to_greo(l.tree, l.semiring, l.alphabet, opt);
  } else {
    throw UsageError("no translation from " + a.from + " to " + a.to);
  }
  write_output(a.output, print(out, to));
}

struct CompileArgs {
  Common c;
  Input in;
  std::string kind;
  std::string output;
};

void cmd_compile(const CompileArgs& a) {
  const Sort sort = sort_from_name(a.kind);
  const Loaded l = load(a.in, sort, a.c);
  const CompileOptions opt{a.c.max_states};
  switch (sort) {
    case Sort::WLdl: return write_output(a.output, wfa_to_json(wldl_to_wfa(l.tree, l.semiring, l.alphabet, opt)));
    case Sort::Gre: return write_output(a.output, wfa_to_json(gre_to_wfa(l.tree, l.semiring, l.alphabet)));
    case Sort::Ldl:
      return write_output(a.output, wfa_to_json(wfa_from_nfa(ldl_to_nfa(l.tree, l.alphabet, opt),
                                                             Semiring(SemiringKind::Boolean))));
    case Sort::LdlOmega: {
      const Wba b = wba_from_nba(ldlo_to_nba(l.tree, l.alphabet, opt), Semiring(SemiringKind::Boolean));
      return write_output(a.output, wfa_to_json(b.graph, &b.accepting));
    }
    case Sort::WLdlOmega: {
      const Wba b = wldlo_to_wba(l.tree, l.semiring, l.alphabet, opt);
      return write_output(a.output, wfa_to_json(b.graph, &b.accepting));
    }
    case Sort::GreOmega: {
      const Wba b = greo_to_wba(l.tree, l.semiring, l.alphabet);
      return write_output(a.output, wfa_to_json(b.graph, &b.accepting));
    }
    default: throw UsageError("cannot compile formulas of kind " + a.kind);
  }
}

struct EquivArgs {
  Common c;
  std::string kind = "wldl";
  std::string first;
  std::string second;
  std::optional<std::string> constant;
  bool automata = false;
};

Wfa load_wfa(const std::string& path, const std::string& kind, const Common& c, Alphabet* alphabet) {
  const CompileOptions opt{c.max_states};
  const Sort sort = sort_from_name(kind);
  const Loaded l = load(Input{path, ""}, sort, c);
  if (alphabet) *alphabet = l.alphabet;
  if (sort == Sort::WLdl) return wldl_to_wfa(l.tree, l.semiring, l.alphabet, opt);
  if (sort == Sort::Gre) return gre_to_wfa(l.tree, l.semiring, l.alphabet);
  throw UsageError("equivalence is decided for wldl and gre inputs");
}

void cmd_equiv(EquivArgs a) {
  const Semiring s = Semiring::from_name(a.c.semiring);
  if (!s.field()) throw NotAField(std::string(s.name()));
  if (a.second.empty() == !a.constant.has_value()) throw UsageError("give exactly one of -b FILE or --constant K");
  // a shared alphabet keeps both automata comparable
  Common c = a.c;
  if (c.alphabet.empty() && !a.automata) {
    std::string letters = letters_in_text(read_formula_text(read_file(a.first)).text);
    if (!a.second.empty()) letters += letters_in_text(read_formula_text(read_file(a.second)).text);
    c.alphabet = letters;
  }
  Alphabet alphabet;
  Wfa left = a.automata ? wfa_from_json(read_file(a.first)) : load_wfa(a.first, a.kind, c, &alphabet);
  if (a.automata) alphabet = left.alphabet();
  Wfa right = a.constant ? wfa_constant(s, alphabet, s.parse(*a.constant))
              : a.automata ? wfa_from_json(read_file(a.second))
                           : load_wfa(a.second, a.kind, c, nullptr);
  const EquivResult r = wfa_equiv_field(left, right);
  if (a.c.json) {
    nlohmann::ordered_json j;
    j["equivalent"] = r.equivalent;
    if (r.witness) j["witness"] = *r.witness;
    std::cout << j.dump() << '\n';
    return;
  }
  if (r.equivalent)
    std::cout << "EQUIVALENT\n";
  else
    std::cout << "NOT EQUIVALENT witness=" << show_word(*r.witness) << '\n';
}

struct ProperArgs {
  Common c;
  Input in;
  std::string kind = "wldl";
};

int cmd_proper(const ProperArgs& a) {
  const Sort sort = sort_from_name(a.kind);
  const Loaded l = load(a.in, sort, a.c, "", false);
  try {
    if (sort == Sort::Gre || sort == Sort::GreOmega)
      check_proper_gre(l.tree, l.semiring);
    else if (sort == Sort::WLdl || sort == Sort::WLdlOmega)
      check_proper(l.tree, l.semiring);
    else
      throw UsageError("properness applies to wldl, wldl-omega, gre and gre-omega");
  } catch (const ImproperIteration& e) {
    if (a.c.json)
      std::cout << nlohmann::ordered_json{{"proper", false}, {"offender", e.offender()}}.dump() << '\n';
    else
      std::cout << "IMPROPER (" << e.offender() << ")\n";
    return 2;
  }
  if (a.c.json)
    std::cout << nlohmann::json{{"proper", true}}.dump() << '\n';
  else
    std::cout << "PROPER\n";
  return 0;
}

struct RltlArgs {
  Common c;
  Input in;
};

void cmd_check_rltl(const RltlArgs& a) {
  const Loaded l = load(a.in, Sort::WLtl, a.c, "", false);
  const Ast off = rltl_offender(l.tree);
  if (a.c.json) {
    nlohmann::ordered_json j;
    j["rltl"] = off == nullptr;
    if (off) j["offender"] = print(off, Sort::WLtl);
    std::cout << j.dump() << '\n';
  } else if (off) {
    std::cout << "NOT-RLTL " << print(off, Sort::WLtl) << '\n';
  } else {
    std::cout << "RLTL\n";
  }
}

struct RandomArgs {
  Common c;
  std::string kind = "wldl";
  std::uint64_t seed = 1;
  int depth = 4;
  int count = 1;
};

void cmd_random(const RandomArgs& a) {
  const Sort sort = sort_from_name(a.kind);
  const Alphabet alphabet(a.c.alphabet.empty() ? "ab" : a.c.alphabet);
  RandomAst gen(a.seed, alphabet, Semiring::from_name(a.c.semiring));
  for (int i = 0; i < a.count; ++i) std::cout << print(gen.generate(sort, a.depth), sort) << '\n';
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case Error::Category::Usage:
    case Error::Category::Syntax: return 1;
    case Error::Category::Semantic: return 2;
    case Error::Category::Budget: return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted linear dynamic logic: evaluation, translation and equivalence"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "value of a formula or expression on a word or lasso");
  add_common(e, eval.c);
  add_input(e, eval.in);
  e->add_option("-k,--kind", eval.kind, "ldl, ltl, wldl, wltl, gre, ldl-omega, wldl-omega, gre-omega")->required();
  e->add_option("-w,--word", eval.word, "finite word (\"\" for the empty word)");
  e->add_option("--lasso", eval.lasso, "ultimately periodic word stem:loop");

  TranslateArgs tr;
  auto* t = app.add_subcommand("translate", "formula <-> expression translations");
  add_common(t, tr.c);
  add_input(t, tr.in);
  t->add_option("--from", tr.from, "gre, wldl, gre-omega or wldl-omega")->required();
  t->add_option("--to", tr.to, "gre, wldl, gre-omega or wldl-omega")->required();
  t->add_option("-o,--output", tr.output, "output file (default: stdout)");

  CompileArgs co;
  auto* c = app.add_subcommand("compile", "compile to a (Buchi) weighted automaton in JSON");
  add_common(c, co.c);
  add_input(c, co.in);
  c->add_option("-k,--kind", co.kind, "wldl, gre, ldl, wldl-omega, gre-omega or ldl-omega")->required();
  c->add_option("-o,--output", co.output, "output file (default: stdout)");

  EquivArgs eq;
  eq.c.semiring = "rat";
  auto* q = app.add_subcommand("equiv", "decide equality of two series over the rationals");
  add_common(q, eq.c);
  q->add_option("-k,--kind", eq.kind, "wldl or gre")->capture_default_str();
  q->add_option("-a", eq.first, "first input file")->required();
  q->add_option("-b", eq.second, "second input file");
  q->add_option("--constant", eq.constant, "compare the first input against this constant");
  q->add_flag("--automaton", eq.automata, "inputs are JSON automata");

  ProperArgs pr;
  auto* p = app.add_subcommand("proper", "check that every iteration body is proper");
  add_common(p, pr.c);
  add_input(p, pr.in);
  p->add_option("-k,--kind", pr.kind, "wldl, wldl-omega, gre or gre-omega")->capture_default_str();

  RltlArgs rl;
  auto* r = app.add_subcommand("check-rltl", "check membership in the restricted weighted LTL fragment");
  add_common(r, rl.c);
  add_input(r, rl.in);

  RandomArgs ra;
  auto* g = app.add_subcommand("random", "print seeded random formulas");
  add_common(g, ra.c);
  g->add_option("-k,--kind", ra.kind, "formula kind")->capture_default_str();
  g->add_option("--seed", ra.seed, "generator seed")->capture_default_str();
  g->add_option("--depth", ra.depth, "maximal depth")->capture_default_str();
  g->add_option("-n,--count", ra.count, "number of formulas")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 1;
  }

  try {
    if (*e) cmd_eval(eval);
    if (*t) cmd_translate(tr);
    if (*c) cmd_compile(co);
    if (*q) cmd_equiv(eq);
    if (*p) return cmd_proper(pr);
    if (*r) cmd_check_rltl(rl);
    if (*g) cmd_random(ra);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code(err);
  }
  return 0;
}
