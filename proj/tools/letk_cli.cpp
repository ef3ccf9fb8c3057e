// Command-line front end: parse formulas, decide sequents, check proof
// documents, eliminate cuts, normalize deductions, translate between the
// sequent and deduction formats. Exit codes: 0 success/provable,
// 1 unprovable, 2 input error, 3 budget exceeded.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "letk/calculus.hpp"
#include "letk/cutelim.hpp"
#include "letk/io.hpp"
#include "letk/normalize.hpp"
#include "letk/search.hpp"
#include "letk/translate.hpp"

namespace {

using namespace letk;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << data;
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

json formula_tree(const Formula& f) {
  switch (f.tag()) {
    case Conn::Atom: return {{"conn", "atom"}, {"name", f.atom_name()}};
    case Conn::Neg: return {{"conn", "neg"}, {"arg", formula_tree(f.left())}};
    case Conn::Circ: return {{"conn", "circ"}, {"arg", formula_tree(f.left())}};
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      return {{"conn", f.is(Conn::And) ? "and" : f.is(Conn::Or) ? "or" : "imp"},
              {"left", formula_tree(f.left())},
              {"right", formula_tree(f.right())}};
  }
  return {};
}

std::string format_seq_proof(const CalculusId& id, const SeqProofPtr& p,
                             const std::string& fmt) {
  if (fmt == "text") return render_seq_proof_text(p);
  if (fmt == "latex") return render_seq_proof_latex(p);
  return seq_proof_to_json(id, p).dump(2) + "\n";
}

std::string format_nd(NDSystem sys, const DedPtr& d, const std::string& fmt) {
  if (fmt == "text") return render_nd_text(d);
  if (fmt == "latex") return render_nd_latex(d);
  return nd_to_json(sys, d).dump(2) + "\n";
}

CalculusId logic_to_id(const std::string& logic, const std::string& variant) {
  CalculusId id;
  if (logic == "letj")
    id.calc = Calculus::GLETJ;
  else if (logic == "letf")
    id.calc = Calculus::GLETF;
  else
    id.calc = Calculus::GB;
  id.letf_negcirc =
      variant == "printed" ? NegCircVariant::Printed : NegCircVariant::Corrected;
  return id;
}

int run(int argc, char** argv) {
  CLI::App app{"proof toolkit for the logics of evidence and truth"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string lang = "letj";
  std::string logic = "letj";
  std::string variant = "corrected";
  std::string kind, system, file, formula_text, sequent_text, emit_proof, to;
  std::uint64_t budget_visited = SearchBudget{}.max_visited;
  double time_limit = 10.0;
  bool trace = false;

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula and echo it");
  parse_cmd->add_option("formula", formula_text)->required();
  parse_cmd->add_option("--lang", lang)->check(CLI::IsMember({"letj", "letf"}));
  parse_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json", "latex"}));

  auto* decide_cmd = app.add_subcommand("decide", "decide a sequent by cut-free search");
  decide_cmd->add_option("sequent", sequent_text)->required();
  decide_cmd->add_option("--logic", logic)
      ->required()
      ->check(CLI::IsMember({"letj", "letf", "gb-cutfree"}));
  decide_cmd->add_option("--letf-negcirc", variant)
      ->check(CLI::IsMember({"corrected", "printed"}));
  decide_cmd->add_option("--budget", budget_visited, "max visited sequents");
  decide_cmd->add_option("--time-limit", time_limit, "seconds");
  decide_cmd->add_option("--emit-proof", emit_proof, "write the proof to FILE");
  decide_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json", "latex"}));

  auto* check_cmd = app.add_subcommand("check", "validate a proof document");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"seq", "nd"}));
  check_cmd->add_option("--system", system)
      ->check(CLI::IsMember({"gb", "gletj", "gletf", "nletj", "nletf"}));
  check_cmd->add_option("--letf-negcirc", variant)
      ->check(CLI::IsMember({"corrected", "printed"}));

  auto* cutelim_cmd = app.add_subcommand("cutelim", "eliminate cuts from a proof");
  cutelim_cmd->add_option("file", file)->required();
  cutelim_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json", "latex"}));

  auto* normalize_cmd = app.add_subcommand("normalize", "normalize a deduction");
  normalize_cmd->add_option("file", file)->required();
  normalize_cmd->add_flag("--trace", trace, "stream per-step measures to stderr");
  normalize_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json", "latex"}));

  auto* translate_cmd = app.add_subcommand("translate", "translate between proof formats");
  translate_cmd->add_option("file", file)->required();
  translate_cmd->add_option("--to", to)->required()->check(CLI::IsMember({"seq", "nd"}));
  translate_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json", "latex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  if (parse_cmd->parsed()) {
    Formula f = parse(formula_text, lang == "letf" ? Language::LF : Language::LJ);
    if (format == "text")
      std::cout << render(f) << "\n";
    else if (format == "latex")
      std::cout << render(f, RenderFormat::Latex) << "\n";
    else
      std::cout << formula_tree(f).dump(2) << "\n";
    return 0;
  }

  if (decide_cmd->parsed()) {
    CalculusId id = logic_to_id(logic, variant);
    Language l = id.calc == Calculus::GLETF ? Language::LF : Language::LJ;
    Sequent goal = parse_sequent(sequent_text, l);
    if (single_conclusion(id.calc) && goal.succ.size() > 1)
      throw InputError("at most one succedent formula for a single-conclusion logic");
    SearchBudget budget{budget_visited,
                        std::chrono::milliseconds(static_cast<long long>(
                            time_limit * 1000))};
    DecideResult r = decide(id, goal, budget);
    if (std::holds_alternative<BudgetExceeded>(r)) {
      std::cout << "budget exceeded\n";
      return 3;
    }
    if (std::holds_alternative<Unprovable>(r)) {
      std::cout << "unprovable\n";
      return 1;
    }
    std::cout << "provable\n";
    if (!emit_proof.empty())
      write_file(emit_proof, format_seq_proof(id, std::get<Provable>(r).proof, format));
    return 0;
  }

  if (check_cmd->parsed()) {
    json doc = load_json(file);
    std::string reason;
    bool valid = false;
    if (kind == "seq") {
      auto [id, proof] = seq_proof_from_json(doc);
      if (!system.empty() && system != calculus_name(id.calc))
        throw InputError("document system '" + std::string(calculus_name(id.calc)) +
                         "' does not match --system " + system);
      if (variant == "printed") id.letf_negcirc = NegCircVariant::Printed;
      auto chk = check_sequent_proof(id, proof);
      valid = chk.valid;
      reason = chk.reason;
    } else {
      auto [sys, proof] = nd_from_json(doc);
      if (!system.empty() && system != nd_system_name(sys))
        throw InputError("document system '" + std::string(nd_system_name(sys)) +
                         "' does not match --system " + system);
      auto chk = check_deduction(sys, proof);
      valid = chk.valid;
      reason = chk.reason;
    }
    if (valid) {
      std::cout << "valid\n";
      return 0;
    }
    std::cout << "invalid: " << reason << "\n";
    return 2;
  }

  if (cutelim_cmd->parsed()) {
    auto [id, proof] = seq_proof_from_json(load_json(file));
    auto chk = check_sequent_proof(id, proof);
    if (!chk.valid) throw InputError("invalid proof: " + chk.reason);
    std::cout << format_seq_proof(id, cut_eliminate(id, proof), format);
    return 0;
  }

  if (normalize_cmd->parsed()) {
    auto [sys, proof] = nd_from_json(load_json(file));
    auto chk = check_deduction(sys, proof);
    if (!chk.valid) throw InputError("invalid deduction: " + chk.reason);
    NormalizeStats stats;
    DedPtr out = normalize(sys, proof, &stats);
    if (trace)
      for (auto& [n, m] : stats.trace)
        std::cerr << "cutrank=" << n << " segments=" << m << "\n";
    std::cout << format_nd(sys, out, format);
    return 0;
  }

  if (translate_cmd->parsed()) {
    json doc = load_json(file);
    if (to == "seq") {
      auto [sys, proof] = nd_from_json(doc);
      SeqProofPtr out = nd_to_sequent(sys, proof);
      CalculusId target{sys == NDSystem::NLETF ? Calculus::GLETF : Calculus::GB};
      std::cout << format_seq_proof(target, out, format);
    } else {
      auto [id, proof] = seq_proof_from_json(doc);
      NDSystem target =
          id.calc == Calculus::GLETF ? NDSystem::NLETF : NDSystem::NLETJ;
      std::cout << format_nd(target, sequent_to_nd(id, proof), format);
    }
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
