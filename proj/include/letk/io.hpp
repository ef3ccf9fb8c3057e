#pragma once

// Interchange and rendering for proofs: the JSON document formats described
// in docs/formats.md, the "f1, f2 => g" sequent syntax, an indented text
// view, and bussproofs-style LaTeX.

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "letk/deduction.hpp"
#include "letk/sequent.hpp"

namespace letk {

inline std::optional<SeqRule> seq_rule_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(SeqRule::RNegCirc); ++i) {
    SeqRule r = static_cast<SeqRule>(i);
    if (s == rule_name(r)) return r;
  }
  return std::nullopt;
}

inline std::optional<Calculus> calculus_from_name(const std::string& s) {
  for (Calculus c : {Calculus::GB, Calculus::GLETJ, Calculus::GLETF})
    if (s == calculus_name(c)) return c;
  return std::nullopt;
}

inline std::optional<NDSystem> nd_system_from_name(const std::string& s) {
  for (NDSystem sys : {NDSystem::NLETJ, NDSystem::NLETF})
    if (s == nd_system_name(sys)) return sys;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// sequent text syntax

inline Sequent parse_sequent(std::string_view text, Language lang = Language::LJ) {
  auto arrow = text.find("=>");
  if (arrow == std::string_view::npos)
    throw ParseError(text.size(), "expected '=>' in sequent");
  if (text.find("=>", arrow + 2) != std::string_view::npos)
    throw ParseError(text.find("=>", arrow + 2), "more than one '=>' in sequent");
  auto split = [&](std::string_view side, std::size_t base) {
    FormulaSet out;
    std::size_t start = 0;
    while (start <= side.size()) {
      std::size_t comma = side.find(',', start);
      std::string_view piece =
          side.substr(start, comma == std::string_view::npos ? comma : comma - start);
      std::size_t a = piece.find_first_not_of(" \t");
      if (a == std::string_view::npos) {
        if (comma != std::string_view::npos || !out.empty())
          throw ParseError(base + start, "empty formula in sequent");
      } else {
        std::size_t b = piece.find_last_not_of(" \t");
        try {
          out.insert(parse(piece.substr(a, b - a + 1), lang));
        } catch (const ParseError& e) {
          std::string msg = e.what();
          if (auto cut = msg.rfind(" at position "); cut != std::string::npos)
            msg.resize(cut);
          throw ParseError(base + start + a + e.position, msg);
        }
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  };
  return {split(text.substr(0, arrow), 0), split(text.substr(arrow + 2), arrow + 2)};
}

inline std::string render_sequent(const Sequent& s,
                                  RenderFormat fmt = RenderFormat::Ascii) {
  const char* arrow = fmt == RenderFormat::Ascii    ? "=>"
                      : fmt == RenderFormat::Unicode ? "⇒"
                                                     : "\\Rightarrow";
  std::string out;
  auto join = [&](const FormulaSet& fs) {
    bool first = true;
    for (auto& f : fs) {
      if (!first) out += ", ";
      out += render(f, fmt);
      first = false;
    }
  };
  join(s.ante);
  out += s.ante.empty() ? "" : " ";
  out += arrow;
  if (!s.succ.empty()) {
    out += " ";
    join(s.succ);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON documents

using json = nlohmann::ordered_json;

namespace detail {

inline json formula_list(const FormulaSet& fs) {
  json a = json::array();
  for (auto& f : fs) a.push_back(render(f));
  return a;
}

inline FormulaSet formula_set(const json& a, Language lang) {
  FormulaSet out;
  for (auto& s : a) out.insert(parse(s.get<std::string>(), lang, {true}));
  return out;
}

inline json seq_node_json(const SeqProofPtr& p) {
  json n;
  n["rule"] = rule_name(p->rule);
  n["sequent"] = {{"ante", formula_list(p->seq.ante)},
                  {"succ", formula_list(p->seq.succ)}};
  if (p->principal) n["principal"] = render(*p->principal);
  json prems = json::array();
  for (auto& q : p->premises) prems.push_back(seq_node_json(q));
  n["premises"] = std::move(prems);
  return n;
}

inline SeqProofPtr seq_node_from(const json& n, Language lang) {
  auto rule = seq_rule_from_name(n.at("rule").get<std::string>());
  if (!rule)
    throw std::invalid_argument("unknown sequent rule '" +
                                n.at("rule").get<std::string>() + "'");
  const json& s = n.at("sequent");
  Sequent seq{formula_set(s.at("ante"), lang), formula_set(s.at("succ"), lang)};
  std::optional<Formula> principal;
  if (n.contains("principal")) principal = parse(n["principal"].get<std::string>(), lang, {true});
  std::vector<SeqProofPtr> prems;
  for (auto& q : n.at("premises")) prems.push_back(seq_node_from(q, lang));
  return make_seq_node(std::move(seq), *rule, std::move(principal), std::move(prems));
}

inline std::string marker_str(int m) { return "m" + std::to_string(m); }

inline int marker_from(const std::string& s) {
  if (s.size() < 2 || s[0] != 'm')
    throw std::invalid_argument("bad marker '" + s + "', expected m<number>");
  try {
    return std::stoi(s.substr(1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad marker '" + s + "', expected m<number>");
  }
}

inline json nd_node_json(const DedPtr& d) {
  json n;
  if (d->is_assumption) {
    n["kind"] = "assumption";
    n["formula"] = render(d->formula);
    n["marker"] = marker_str(d->marker);
    return n;
  }
  n["kind"] = "inference";
  n["rule"] = nd_rule_name(d->rule);
  n["formula"] = render(d->formula);
  json prems = json::array();
  for (auto& p : d->premises) prems.push_back(nd_node_json(p));
  n["premises"] = std::move(prems);
  if (!d->discharges.empty()) {
    json ds = json::array();
    for (int m : d->discharges) ds.push_back(marker_str(m));
    n["discharges"] = std::move(ds);
  }
  return n;
}

inline DedPtr nd_node_from(const json& n, Language lang) {
  std::string kind = n.at("kind").get<std::string>();
  Formula f = parse(n.at("formula").get<std::string>(), lang, {true});
  if (kind == "assumption")
    return nd_assume(f, marker_from(n.at("marker").get<std::string>()));
  if (kind != "inference")
    throw std::invalid_argument("unknown node kind '" + kind + "'");
  auto rule = nd_rule_from_name(n.at("rule").get<std::string>());
  if (!rule)
    throw std::invalid_argument("unknown deduction rule '" +
                                n.at("rule").get<std::string>() + "'");
  std::vector<DedPtr> prems;
  for (auto& q : n.at("premises")) prems.push_back(nd_node_from(q, lang));
  std::vector<int> discharges;
  if (n.contains("discharges"))
    for (auto& m : n["discharges"]) discharges.push_back(marker_from(m.get<std::string>()));
  return nd_infer(*rule, f, std::move(prems), std::move(discharges));
}

}  // namespace detail

struct SeqProofDoc {
  CalculusId id;
  SeqProofPtr proof;
};

struct NDDoc {
  NDSystem sys = NDSystem::NLETJ;
  DedPtr proof;
};

inline json seq_proof_to_json(const CalculusId& id, const SeqProofPtr& p) {
  json d;
  d["system"] = calculus_name(id.calc);
  if (id.calc == Calculus::GLETF)
    d["letf_negcirc"] =
        id.letf_negcirc == NegCircVariant::Corrected ? "corrected" : "printed";
  d["proof"] = detail::seq_node_json(p);
  return d;
}

inline SeqProofDoc seq_proof_from_json(const json& d) {
  auto calc = calculus_from_name(d.at("system").get<std::string>());
  if (!calc)
    throw std::invalid_argument("unknown system '" + d.at("system").get<std::string>() +
                                "'");
  CalculusId id{*calc};
  if (d.contains("letf_negcirc")) {
    std::string v = d["letf_negcirc"].get<std::string>();
    if (v == "corrected")
      id.letf_negcirc = NegCircVariant::Corrected;
    else if (v == "printed")
      id.letf_negcirc = NegCircVariant::Printed;
    else
      throw std::invalid_argument("unknown letf_negcirc value '" + v + "'");
  }
  Language lang = *calc == Calculus::GLETF ? Language::LF : Language::LJ;
  return {id, detail::seq_node_from(d.at("proof"), lang)};
}

inline json nd_to_json(NDSystem sys, const DedPtr& d) {
  json doc;
  doc["system"] = nd_system_name(sys);
  doc["proof"] = detail::nd_node_json(d);
  return doc;
}

inline NDDoc nd_from_json(const json& d) {
  auto sys = nd_system_from_name(d.at("system").get<std::string>());
  if (!sys)
    throw std::invalid_argument("unknown system '" + d.at("system").get<std::string>() +
                                "'");
  Language lang = *sys == NDSystem::NLETF ? Language::LF : Language::LJ;
  return {*sys, detail::nd_node_from(d.at("proof"), lang)};
}

// ---------------------------------------------------------------------------
// indented text rendering

namespace detail {

inline void seq_text_rec(const SeqProofPtr& p, int depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += rule_name(p->rule);
  if (p->principal) out += " [" + render(*p->principal) + "]";
  out += "  " + render_sequent(p->seq) + "\n";
  for (auto& q : p->premises) seq_text_rec(q, depth + 1, out);
}

inline void nd_text_rec(const DedPtr& d, int depth, std::string& out) {
  out.append(2 * depth, ' ');
  if (d->is_assumption) {
    out += "[" + marker_str(d->marker) + "] " + render(d->formula) + "\n";
    return;
  }
  out += nd_rule_name(d->rule);
  if (!d->discharges.empty()) {
    out += " <";
    for (std::size_t i = 0; i < d->discharges.size(); ++i)
      out += (i ? "," : "") + marker_str(d->discharges[i]);
    out += ">";
  }
  out += "  " + render(d->formula) + "\n";
  for (auto& p : d->premises) nd_text_rec(p, depth + 1, out);
}

}  // namespace detail

inline std::string render_seq_proof_text(const SeqProofPtr& p) {
  std::string out;
  detail::seq_text_rec(p, 0, out);
  return out;
}

inline std::string render_nd_text(const DedPtr& d) {
  std::string out;
  detail::nd_text_rec(d, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// LaTeX rendering (bussproofs)

namespace detail {

inline const char* inf_macro(std::size_t n) {
  switch (n) {
    case 1: return "\\UnaryInfC";
    case 2: return "\\BinaryInfC";
    case 3: return "\\TrinaryInfC";
    default: throw std::logic_error("too many premises for bussproofs");
  }
}

inline void seq_latex_rec(const SeqProofPtr& p, std::string& out) {
  for (auto& q : p->premises) seq_latex_rec(q, out);
  if (p->premises.empty()) out += "\\AxiomC{}\n";
  out += "\\RightLabel{\\scriptsize " + std::string(rule_name(p->rule)) + "}\n";
  out += std::string(p->premises.empty() ? "\\UnaryInfC" : inf_macro(p->premises.size())) +
         "{$" + render_sequent(p->seq, RenderFormat::Latex) + "$}\n";
}

inline void nd_latex_rec(const DedPtr& d, std::string& out) {
  if (d->is_assumption) {
    out += "\\AxiomC{$[" + render(d->formula, RenderFormat::Latex) + "]^{" +
           std::to_string(d->marker) + "}$}\n";
    return;
  }
  for (auto& p : d->premises) nd_latex_rec(p, out);
  std::string label = nd_rule_name(d->rule);
  if (!d->discharges.empty()) {
    label += "$^{";
    for (std::size_t i = 0; i < d->discharges.size(); ++i)
      label += (i ? "," : "") + std::to_string(d->discharges[i]);
    label += "}$";
  }
  out += "\\RightLabel{\\scriptsize " + label + "}\n";
  out += std::string(inf_macro(d->premises.size())) + "{$" +
         render(d->formula, RenderFormat::Latex) + "$}\n";
}

}  // namespace detail

inline std::string render_seq_proof_latex(const SeqProofPtr& p) {
  std::string out = "\\begin{prooftree}\n";
  detail::seq_latex_rec(p, out);
  out += "\\end{prooftree}\n";
  return out;
}

inline std::string render_nd_latex(const DedPtr& d) {
  std::string out = "\\begin{prooftree}\n";
  detail::nd_latex_rec(d, out);
  out += "\\end{prooftree}\n";
  return out;
}

}  // namespace letk
