#pragma once

// Natural deduction for the evidence-and-truth logics: proof trees for the
// single-conclusion system with the classicality operator (NLETJ) and its
// implication-free multi-valued variant (NLETF), plus the checker.

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "letk/formula.hpp"

namespace letk {

enum class NDRule {
  AndI, AndE1, AndE2,
  OrI1, OrI2, OrE,
  ToI, ToE,
  NegAndI1, NegAndI2, NegAndE,
  NegOrI, NegOrE1, NegOrE2,
  NegToI, NegToE1, NegToE2,
  NegNegI, NegNegE,
  Exp, Pem,
  Cons, Comp,
};

inline const char* nd_rule_name(NDRule r) {
  switch (r) {
    case NDRule::AndI: return "AndI";
    case NDRule::AndE1: return "AndE1";
    case NDRule::AndE2: return "AndE2";
    case NDRule::OrI1: return "OrI1";
    case NDRule::OrI2: return "OrI2";
    case NDRule::OrE: return "OrE";
    case NDRule::ToI: return "ToI";
    case NDRule::ToE: return "ToE";
    case NDRule::NegAndI1: return "NegAndI1";
    case NDRule::NegAndI2: return "NegAndI2";
    case NDRule::NegAndE: return "NegAndE";
    case NDRule::NegOrI: return "NegOrI";
    case NDRule::NegOrE1: return "NegOrE1";
    case NDRule::NegOrE2: return "NegOrE2";
    case NDRule::NegToI: return "NegToI";
    case NDRule::NegToE1: return "NegToE1";
    case NDRule::NegToE2: return "NegToE2";
    case NDRule::NegNegI: return "NegNegI";
    case NDRule::NegNegE: return "NegNegE";
    case NDRule::Exp: return "EXP";
    case NDRule::Pem: return "PEM";
    case NDRule::Cons: return "CONS";
    case NDRule::Comp: return "COMP";
  }
  return "?";
}

inline std::optional<NDRule> nd_rule_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(NDRule::Comp); ++i) {
    NDRule r = static_cast<NDRule>(i);
    if (s == nd_rule_name(r)) return r;
  }
  return std::nullopt;
}

enum class NDSystem { NLETJ, NLETF };

inline const char* nd_system_name(NDSystem s) {
  return s == NDSystem::NLETJ ? "nletj" : "nletf";
}

inline bool nd_rule_allowed(NDSystem s, NDRule r) {
  switch (r) {
    case NDRule::ToI:
    case NDRule::ToE:
    case NDRule::NegToI:
    case NDRule::NegToE1:
    case NDRule::NegToE2:
      return s == NDSystem::NLETJ;
    case NDRule::Cons:
    case NDRule::Comp:
      return s == NDSystem::NLETF;
    default:
      return true;
  }
}

inline bool nd_intro_rule(NDRule r) {
  switch (r) {
    case NDRule::AndI:
    case NDRule::OrI1:
    case NDRule::OrI2:
    case NDRule::ToI:
    case NDRule::NegAndI1:
    case NDRule::NegAndI2:
    case NDRule::NegOrI:
    case NDRule::NegToI:
    case NDRule::NegNegI:
      return true;
    default:
      return false;
  }
}

// Elimination rules; the major premise is always premise 0 (PEM eliminates
// its circled major). EXP, CONS and COMP have no major premise.
inline bool nd_elim_rule(NDRule r) {
  switch (r) {
    case NDRule::AndE1:
    case NDRule::AndE2:
    case NDRule::OrE:
    case NDRule::ToE:
    case NDRule::NegAndE:
    case NDRule::NegOrE1:
    case NDRule::NegOrE2:
    case NDRule::NegToE1:
    case NDRule::NegToE2:
    case NDRule::NegNegE:
    case NDRule::Pem:
      return true;
    default:
      return false;
  }
}

inline bool nd_del_rule(NDRule r) {
  return r == NDRule::OrE || r == NDRule::NegAndE || r == NDRule::Pem ||
         r == NDRule::Comp;
}

// Premise indices that thread segments (minor premises sharing the
// conclusion).
inline std::vector<std::size_t> nd_del_minors(NDRule r) {
  switch (r) {
    case NDRule::OrE:
    case NDRule::NegAndE:
    case NDRule::Pem:
      return {1, 2};
    case NDRule::Comp:
      return {0, 1};
    default:
      return {};
  }
}

struct Deduction;
using DedPtr = std::shared_ptr<const Deduction>;
using NDPath = std::vector<std::size_t>;

struct Deduction {
  bool is_assumption = false;
  Formula formula;              // assumption formula or inference conclusion
  int marker = -1;              // assumption class label
  NDRule rule = NDRule::AndI;   // meaningful for inferences only
  std::vector<DedPtr> premises;
  std::vector<int> discharges;  // class labels closed at this inference
};

inline DedPtr nd_assume(Formula f, int marker) {
  auto d = std::make_shared<Deduction>();
  d->is_assumption = true;
  d->formula = std::move(f);
  d->marker = marker;
  return d;
}

inline DedPtr nd_infer(NDRule r, Formula concl, std::vector<DedPtr> premises,
                       std::vector<int> discharges = {}) {
  auto d = std::make_shared<Deduction>();
  d->rule = r;
  d->formula = std::move(concl);
  d->premises = std::move(premises);
  d->discharges = std::move(discharges);
  return d;
}

inline std::size_t nd_size(const DedPtr& d) {
  std::size_t n = 1;
  for (auto& p : d->premises) n += nd_size(p);
  return n;
}

inline int nd_max_marker(const DedPtr& d) {
  int m = d->is_assumption ? d->marker : -1;
  for (int u : d->discharges) m = std::max(m, u);
  for (auto& p : d->premises) m = std::max(m, nd_max_marker(p));
  return m;
}

// Rename assumption markers and discharge labels per `map`; unmapped labels
// are kept.
inline DedPtr nd_relabel(const DedPtr& d, const std::map<int, int>& map) {
  auto lookup = [&](int u) {
    auto it = map.find(u);
    return it == map.end() ? u : it->second;
  };
  auto out = std::make_shared<Deduction>(*d);
  if (out->is_assumption) {
    out->marker = lookup(out->marker);
  } else {
    for (int& u : out->discharges) u = lookup(u);
    for (auto& p : out->premises) p = nd_relabel(p, map);
  }
  return out;
}

namespace detail {

inline void collect_bound_markers(const DedPtr& d, std::vector<int>& out) {
  if (d->is_assumption) return;
  out.insert(out.end(), d->discharges.begin(), d->discharges.end());
  for (auto& p : d->premises) collect_bound_markers(p, out);
}

}  // namespace detail

// Rename every class label that is discharged inside `d`, drawing fresh
// labels from `counter`. Open classes keep their labels so that discharges
// below a grafting site still capture them.
inline DedPtr nd_freshen_bound(const DedPtr& d, int& counter) {
  std::vector<int> bound;
  detail::collect_bound_markers(d, bound);
  if (bound.empty()) return d;
  std::map<int, int> map;
  for (int u : bound) map.emplace(u, 0);
  for (auto& [u, v] : map) v = ++counter;
  return nd_relabel(d, map);
}

struct NDCheckResult {
  bool valid = false;
  NDPath path;         // offending node when invalid
  std::string reason;
  Formula conclusion;
  FormulaSet open;     // open assumption formulas
};

namespace detail {

struct DischargeSlot {
  NDPath inference;       // node performing the discharge
  std::size_t premise;    // subtree the class must live in
  std::optional<Formula> formula;  // expected class formula, when determined
};

class NDChecker {
 public:
  NDChecker(NDSystem sys) : sys_(sys) {}

  NDCheckResult run(const DedPtr& d) {
    NDCheckResult res;
    NDPath path;
    if (!walk(d, path, res)) return res;
    if (!check_discharges(res)) return res;
    res.valid = true;
    res.conclusion = d->formula;
    for (auto& [marker, occs] : assumptions_)
      if (!slots_.count(marker))
        for (auto& [p, f] : occs) res.open.insert(f);
    return res;
  }

 private:
  static bool fail(NDCheckResult& res, const NDPath& path, std::string reason) {
    res.valid = false;
    res.path = path;
    res.reason = std::move(reason);
    return false;
  }

  bool walk(const DedPtr& d, NDPath& path, NDCheckResult& res) {
    Language lang = sys_ == NDSystem::NLETF ? Language::LF : Language::LJ;
    if (!admits(lang, d->formula))
      return fail(res, path, "'->' is not in the LF language");
    if (d->is_assumption) {
      assumptions_[d->marker].push_back({path, d->formula});
      return true;
    }
    if (!nd_rule_allowed(sys_, d->rule))
      return fail(res, path, std::string(nd_rule_name(d->rule)) + " is not a rule of " +
                                 nd_system_name(sys_));
    for (std::size_t i = 0; i < d->premises.size(); ++i) {
      path.push_back(i);
      bool ok = walk(d->premises[i], path, res);
      path.pop_back();
      if (!ok) return false;
    }
    if (!schema(d, path, res)) return false;
    if (d->rule == NDRule::Comp)
      comp_nodes_.push_back({path, {d->discharges[0], d->discharges[1]}});
    for (std::size_t i = 0; i < d->discharges.size(); ++i) {
      int u = d->discharges[i];
      if (slots_.count(u))
        return fail(res, path, "class label discharged twice");
      DischargeSlot slot;
      slot.inference = path;
      discharge_shape(d, i, slot);
      slots_.emplace(u, std::move(slot));
    }
    return true;
  }

  static void discharge_shape(const DedPtr& d, std::size_t i, DischargeSlot& slot) {
    const Formula& c = d->formula;
    const Formula major = d->premises.empty() ? Formula() : d->premises[0]->formula;
    switch (d->rule) {
      case NDRule::OrE:
        slot.premise = i + 1;
        slot.formula = i == 0 ? major.left() : major.right();
        break;
      case NDRule::NegAndE:
        slot.premise = i + 1;
        slot.formula = Formula::neg(i == 0 ? major.left().left() : major.left().right());
        break;
      case NDRule::Pem:
        slot.premise = i + 1;
        slot.formula = i == 0 ? major.left() : Formula::neg(major.left());
        break;
      case NDRule::Comp:
        slot.premise = i;
        slot.formula = std::nullopt;  // fixed by the class occupants
        break;
      case NDRule::ToI:
        slot.premise = 0;
        slot.formula = c.left();
        break;
      default:
        slot.premise = 0;
        slot.formula = std::nullopt;
        break;
    }
  }

  bool schema(const DedPtr& d, const NDPath& path, NDCheckResult& res) {
    auto bad = [&] { return fail(res, path, std::string(nd_rule_name(d->rule)) +
                                                " instance does not match its schema"); };
    auto arity = [&](std::size_t n, std::size_t labels) {
      return d->premises.size() == n && d->discharges.size() == labels;
    };
    const Formula& c = d->formula;
    auto p = [&](std::size_t i) -> const Formula& { return d->premises[i]->formula; };
    switch (d->rule) {
      case NDRule::AndI:
        return (arity(2, 0) && c.tag() == Conn::And && p(0) == c.left() &&
                p(1) == c.right()) || bad();
      case NDRule::AndE1:
        return (arity(1, 0) && p(0).tag() == Conn::And && c == p(0).left()) || bad();
      case NDRule::AndE2:
        return (arity(1, 0) && p(0).tag() == Conn::And && c == p(0).right()) || bad();
      case NDRule::OrI1:
        return (arity(1, 0) && c.tag() == Conn::Or && p(0) == c.left()) || bad();
      case NDRule::OrI2:
        return (arity(1, 0) && c.tag() == Conn::Or && p(0) == c.right()) || bad();
      case NDRule::OrE:
        return (arity(3, 2) && p(0).tag() == Conn::Or && p(1) == c && p(2) == c) || bad();
      case NDRule::ToI:
        return (arity(1, 1) && c.tag() == Conn::Imp && p(0) == c.right()) || bad();
      case NDRule::ToE:
        return (arity(2, 0) && p(0).tag() == Conn::Imp && p(1) == p(0).left() &&
                c == p(0).right()) || bad();
      case NDRule::NegAndI1:
        return (arity(1, 0) && c.tag() == Conn::Neg && c.left().tag() == Conn::And &&
                p(0) == Formula::neg(c.left().left())) || bad();
      case NDRule::NegAndI2:
        return (arity(1, 0) && c.tag() == Conn::Neg && c.left().tag() == Conn::And &&
                p(0) == Formula::neg(c.left().right())) || bad();
      case NDRule::NegAndE:
        return (arity(3, 2) && p(0).tag() == Conn::Neg && p(0).left().tag() == Conn::And &&
                p(1) == c && p(2) == c) || bad();
      case NDRule::NegOrI:
        return (arity(2, 0) && c.tag() == Conn::Neg && c.left().tag() == Conn::Or &&
                p(0) == Formula::neg(c.left().left()) &&
                p(1) == Formula::neg(c.left().right())) || bad();
      case NDRule::NegOrE1:
        return (arity(1, 0) && p(0).tag() == Conn::Neg && p(0).left().tag() == Conn::Or &&
                c == Formula::neg(p(0).left().left())) || bad();
      case NDRule::NegOrE2:
        return (arity(1, 0) && p(0).tag() == Conn::Neg && p(0).left().tag() == Conn::Or &&
                c == Formula::neg(p(0).left().right())) || bad();
      case NDRule::NegToI:
        return (arity(2, 0) && c.tag() == Conn::Neg && c.left().tag() == Conn::Imp &&
                p(0) == c.left().left() && p(1) == Formula::neg(c.left().right())) || bad();
      case NDRule::NegToE1:
        return (arity(1, 0) && p(0).tag() == Conn::Neg && p(0).left().tag() == Conn::Imp &&
                c == p(0).left().left()) || bad();
      case NDRule::NegToE2:
        return (arity(1, 0) && p(0).tag() == Conn::Neg && p(0).left().tag() == Conn::Imp &&
                c == Formula::neg(p(0).left().right())) || bad();
      case NDRule::NegNegI:
        return (arity(1, 0) && c.tag() == Conn::Neg && c.left().tag() == Conn::Neg &&
                p(0) == c.left().left()) || bad();
      case NDRule::NegNegE:
        return (arity(1, 0) && p(0).tag() == Conn::Neg && p(0).left().tag() == Conn::Neg &&
                c == p(0).left().left()) || bad();
      case NDRule::Exp:
        // canonical premise order circ A, ~A, A; any conclusion
        return (arity(3, 0) && p(0).tag() == Conn::Circ &&
                p(1) == Formula::neg(p(0).left()) && p(2) == p(0).left()) || bad();
      case NDRule::Pem:
        return (arity(3, 2) && p(0).tag() == Conn::Circ && p(1) == c && p(2) == c) || bad();
      case NDRule::Cons:
        return (arity(2, 0) && p(0).tag() == Conn::Circ && p(1) == Formula::neg(p(0))) ||
               bad();
      case NDRule::Comp:
        return (arity(2, 2) && p(0) == c && p(1) == c) || bad();
    }
    return bad();
  }

  bool check_discharges(NDCheckResult& res) {
    std::map<int, Formula> resolved;
    for (auto& [marker, slot] : slots_) {
      NDPath prefix = slot.inference;
      prefix.push_back(slot.premise);
      std::optional<Formula> expected = slot.formula;
      auto it = assumptions_.find(marker);
      if (it == assumptions_.end()) continue;  // vacuous discharge
      for (auto& [apath, af] : it->second) {
        if (apath.size() < prefix.size() ||
            !std::equal(prefix.begin(), prefix.end(), apath.begin()))
          return fail(res, slot.inference,
                      "discharged assumption lies outside the designated subdeduction");
        if (expected && af != *expected)
          return fail(res, slot.inference, "discharged assumption has the wrong formula");
        if (!expected) expected = af;  // first occupant fixes the class formula
      }
      if (expected) resolved.emplace(marker, *expected);
    }
    // COMP classes must pair circ A with ~ circ A for one and the same A
    for (auto& [path, labels] : comp_nodes_) {
      auto get = [&](int u) -> const Formula* {
        auto it = resolved.find(u);
        return it == resolved.end() ? nullptr : &it->second;
      };
      const Formula* f1 = get(labels.first);
      const Formula* f2 = get(labels.second);
      if (f1 && f1->tag() != Conn::Circ)
        return fail(res, path, "COMP must discharge a class of the form @A");
      if (f2 && (f2->tag() != Conn::Neg || f2->left().tag() != Conn::Circ))
        return fail(res, path, "COMP must discharge a class of the form ~@A");
      if (f1 && f2 && f2->left() != *f1)
        return fail(res, path, "COMP classes disagree on the traced formula");
    }
    return true;
  }

  NDSystem sys_;
  std::map<int, std::vector<std::pair<NDPath, Formula>>> assumptions_;
  std::map<int, DischargeSlot> slots_;
  std::vector<std::pair<NDPath, std::pair<int, int>>> comp_nodes_;
};

}  // namespace detail

inline NDCheckResult check_deduction(NDSystem sys, const DedPtr& d) {
  return detail::NDChecker(sys).run(d);
}

inline DedPtr nd_node_at(const DedPtr& d, const NDPath& path) {
  DedPtr cur = d;
  for (std::size_t i : path) cur = cur->premises.at(i);
  return cur;
}

inline DedPtr nd_replace_at(const DedPtr& d, const NDPath& path, const DedPtr& sub,
                            std::size_t depth = 0) {
  if (depth == path.size()) return sub;
  auto out = std::make_shared<Deduction>(*d);
  out->premises.at(path[depth]) =
      nd_replace_at(d->premises.at(path[depth]), path, sub, depth + 1);
  return out;
}

// Graft `repl` onto every assumption of class `marker`, freshening the bound
// labels of each inserted copy.
inline DedPtr nd_substitute(const DedPtr& d, int marker, const DedPtr& repl, int& counter) {
  if (d->is_assumption)
    return d->marker == marker ? nd_freshen_bound(repl, counter) : d;
  bool changed = false;
  std::vector<DedPtr> prems;
  prems.reserve(d->premises.size());
  for (auto& p : d->premises) {
    DedPtr q = nd_substitute(p, marker, repl, counter);
    changed = changed || q != p;
    prems.push_back(std::move(q));
  }
  if (!changed) return d;
  auto out = std::make_shared<Deduction>(*d);
  out->premises = std::move(prems);
  return out;
}

}  // namespace letk
