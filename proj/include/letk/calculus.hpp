#pragma once

// Rule schemas, proof checking and backward rule instantiation for the
// calculi GB (single conclusion, with the unrestricted explosion axiom),
// GLETJ (gentle explosion from @) and GLETF (multiple conclusions, no ->).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "letk/sequent.hpp"

namespace letk {

inline bool single_conclusion(Calculus c) { return c != Calculus::GLETF; }

inline bool rule_allowed(Calculus c, SeqRule r) {
  switch (r) {
    case SeqRule::Id:
    case SeqRule::LW:
    case SeqRule::RW:
    case SeqRule::Cut:
    case SeqRule::LAnd:
    case SeqRule::LOr:
    case SeqRule::LNegOr:
    case SeqRule::LNegAnd:
    case SeqRule::LNegNeg:
    case SeqRule::RNegNeg:
    case SeqRule::Pem:
      return true;
    case SeqRule::Exp0:
      return c == Calculus::GB;
    case SeqRule::Exp1:
      return c == Calculus::GLETJ || c == Calculus::GLETF;
    case SeqRule::Mix:
      return c == Calculus::GLETJ || c == Calculus::GLETF;
    case SeqRule::RAnd:
    case SeqRule::RNegOr:
      return true;
    case SeqRule::ROr1:
    case SeqRule::ROr2:
    case SeqRule::RNegAnd1:
    case SeqRule::RNegAnd2:
      return single_conclusion(c);
    case SeqRule::ROr:
    case SeqRule::RNegAnd:
    case SeqRule::LNegCirc:
    case SeqRule::RNegCirc:
      return c == Calculus::GLETF;
    case SeqRule::LTo:
    case SeqRule::RTo:
    case SeqRule::LNegTo:
    case SeqRule::RNegTo:
      return single_conclusion(c);
  }
  return false;
}

struct RuleInst {
  Sequent conclusion;
  std::vector<Sequent> premises;
};

// Instantiate a logical rule schema with principal P, antecedent context g and
// succedent context d (d is the single passthrough slot for GB/GLETJ and the
// full context for GLETF). Returns nullopt if P has the wrong shape.
inline std::optional<RuleInst> instantiate(const CalculusId& id, SeqRule r, const Formula& P,
                                           const FormulaSet& g, const FormulaSet& d) {
  bool multi = !single_conclusion(id.calc);
  if (!rule_allowed(id.calc, r)) return std::nullopt;
  if (!multi && d.size() > 1) return std::nullopt;

  auto left_concl = [&] { return Sequent{set_with(g, P), d}; };
  auto right_concl = [&] {
    return Sequent{g, multi ? set_with(d, P) : FormulaSet{P}};
  };
  auto lprem = [&](std::initializer_list<Formula> aux) {
    FormulaSet a = g;
    for (auto& f : aux) a.insert(f);
    return Sequent{std::move(a), d};
  };
  auto rprem = [&](std::initializer_list<Formula> aux) {
    FormulaSet s = multi ? d : FormulaSet{};
    for (auto& f : aux) s.insert(f);
    return Sequent{g, std::move(s)};
  };

  switch (r) {
    case SeqRule::LAnd:
      if (!P.is(Conn::And)) return std::nullopt;
      return RuleInst{left_concl(), {lprem({P.left(), P.right()})}};
    case SeqRule::LOr:
      if (!P.is(Conn::Or)) return std::nullopt;
      return RuleInst{left_concl(), {lprem({P.left()}), lprem({P.right()})}};
    case SeqRule::LTo:
      if (!P.is(Conn::Imp)) return std::nullopt;
      return RuleInst{left_concl(), {Sequent{g, {P.left()}}, lprem({P.right()})}};
    case SeqRule::LNegNeg:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Neg))) return std::nullopt;
      return RuleInst{left_concl(), {lprem({P.left().left()})}};
    case SeqRule::LNegOr:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Or))) return std::nullopt;
      return RuleInst{left_concl(),
                      {lprem({Formula::neg(P.left().left()), Formula::neg(P.left().right())})}};
    case SeqRule::LNegAnd:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::And))) return std::nullopt;
      return RuleInst{left_concl(), {lprem({Formula::neg(P.left().left())}),
                                     lprem({Formula::neg(P.left().right())})}};
    case SeqRule::LNegTo:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Imp))) return std::nullopt;
      return RuleInst{left_concl(), {lprem({P.left().left(), Formula::neg(P.left().right())})}};
    case SeqRule::Pem:
      if (!P.is(Conn::Circ)) return std::nullopt;
      return RuleInst{left_concl(), {lprem({P.left()}), lprem({Formula::neg(P.left())})}};
    case SeqRule::Exp1:
      if (!P.is(Conn::Circ)) return std::nullopt;
      if (multi)
        return RuleInst{left_concl(),
                        {rprem({P.left()}), rprem({Formula::neg(P.left())})}};
      if (!d.empty()) return std::nullopt;  // conclusion has an empty succedent
      return RuleInst{Sequent{set_with(g, P), {}},
                      {Sequent{g, {P.left()}}, Sequent{g, {Formula::neg(P.left())}}}};
    case SeqRule::LNegCirc: {
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Circ))) return std::nullopt;
      Formula B = P.left().left();
      Formula aux = id.letf_negcirc == NegCircVariant::Corrected ? Formula::circ(B) : B;
      return RuleInst{left_concl(), {rprem({aux})}};
    }

    case SeqRule::RAnd:
      if (!P.is(Conn::And)) return std::nullopt;
      return RuleInst{right_concl(), {rprem({P.left()}), rprem({P.right()})}};
    case SeqRule::ROr1:
      if (!P.is(Conn::Or)) return std::nullopt;
      return RuleInst{right_concl(), {rprem({P.left()})}};
    case SeqRule::ROr2:
      if (!P.is(Conn::Or)) return std::nullopt;
      return RuleInst{right_concl(), {rprem({P.right()})}};
    case SeqRule::ROr:
      if (!P.is(Conn::Or)) return std::nullopt;
      return RuleInst{right_concl(), {rprem({P.left(), P.right()})}};
    case SeqRule::RTo:
      if (!P.is(Conn::Imp)) return std::nullopt;
      return RuleInst{right_concl(), {Sequent{set_with(g, P.left()), {P.right()}}}};
    case SeqRule::RNegNeg:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Neg))) return std::nullopt;
      return RuleInst{right_concl(), {rprem({P.left().left()})}};
    case SeqRule::RNegOr:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Or))) return std::nullopt;
      return RuleInst{right_concl(), {rprem({Formula::neg(P.left().left())}),
                                      rprem({Formula::neg(P.left().right())})}};
    case SeqRule::RNegAnd1:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::And))) return std::nullopt;
      return RuleInst{right_concl(), {rprem({Formula::neg(P.left().left())})}};
    case SeqRule::RNegAnd2:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::And))) return std::nullopt;
      return RuleInst{right_concl(), {rprem({Formula::neg(P.left().right())})}};
    case SeqRule::RNegAnd:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::And))) return std::nullopt;
      return RuleInst{right_concl(),
                      {rprem({Formula::neg(P.left().left()), Formula::neg(P.left().right())})}};
    case SeqRule::RNegTo:
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Imp))) return std::nullopt;
      return RuleInst{right_concl(),
                      {rprem({P.left().left()}), rprem({Formula::neg(P.left().right())})}};
    case SeqRule::RNegCirc: {
      if (!(P.is(Conn::Neg) && P.left().is(Conn::Circ))) return std::nullopt;
      Formula B = P.left().left();
      Formula aux = id.letf_negcirc == NegCircVariant::Corrected ? Formula::circ(B) : B;
      return RuleInst{right_concl(), {lprem({aux})}};
    }

    default:
      return std::nullopt;  // structural rules are matched directly
  }
}

inline bool left_principal_rule(SeqRule r) {
  switch (r) {
    case SeqRule::LAnd:
    case SeqRule::LOr:
    case SeqRule::LTo:
    case SeqRule::LNegOr:
    case SeqRule::LNegAnd:
    case SeqRule::LNegTo:
    case SeqRule::LNegNeg:
    case SeqRule::Pem:
    case SeqRule::Exp1:
    case SeqRule::LNegCirc:
      return true;
    default:
      return false;
  }
}

inline bool right_principal_rule(SeqRule r) {
  switch (r) {
    case SeqRule::RAnd:
    case SeqRule::ROr1:
    case SeqRule::ROr2:
    case SeqRule::ROr:
    case SeqRule::RTo:
    case SeqRule::RNegOr:
    case SeqRule::RNegAnd1:
    case SeqRule::RNegAnd2:
    case SeqRule::RNegAnd:
    case SeqRule::RNegTo:
    case SeqRule::RNegNeg:
    case SeqRule::RNegCirc:
      return true;
    default:
      return false;
  }
}

struct ProofCheckResult {
  bool valid = true;
  std::vector<int> path;  // premise indices down to the offending node
  std::string reason;
};

namespace detail {

inline bool node_matches_logical(const CalculusId& id, const SequentProof& n) {
  if (!n.principal) return false;
  const Formula& P = *n.principal;
  bool multi = !single_conclusion(id.calc);

  std::vector<FormulaSet> gs, ds;
  if (left_principal_rule(n.rule)) {
    if (!contains(n.seq.ante, P)) return false;
    gs.push_back(set_minus(n.seq.ante, P));
    gs.push_back(n.seq.ante);
    ds.push_back(n.seq.succ);
  } else if (right_principal_rule(n.rule)) {
    if (!contains(n.seq.succ, P)) return false;
    gs.push_back(n.seq.ante);
    if (multi) {
      ds.push_back(set_minus(n.seq.succ, P));
      ds.push_back(n.seq.succ);
    } else {
      if (n.seq.succ != FormulaSet{P}) return false;
      ds.push_back({});
    }
  } else {
    return false;
  }

  for (auto& g : gs)
    for (auto& d : ds) {
      auto inst = instantiate(id, n.rule, P, g, d);
      if (!inst) continue;
      if (inst->conclusion != n.seq) continue;
      if (inst->premises.size() != n.premises.size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < inst->premises.size(); ++i)
        if (n.premises[i]->seq != inst->premises[i]) { ok = false; break; }
      if (ok) return true;
    }
  return false;
}

inline bool node_matches_structural(const CalculusId& id, const SequentProof& n,
                                    std::string& why) {
  bool multi = !single_conclusion(id.calc);
  const Sequent& s = n.seq;
  switch (n.rule) {
    case SeqRule::Id: {
      if (!n.premises.empty()) { why = "Id takes no premises"; return false; }
      if (s.ante.size() != 1 || s.succ.size() != 1 || *s.ante.begin() != *s.succ.begin()) {
        why = "Id requires A => A";
        return false;
      }
      if (n.principal && *n.principal != *s.ante.begin()) { why = "Id principal mismatch"; return false; }
      return true;
    }
    case SeqRule::Exp0: {
      if (!n.premises.empty()) { why = "EXP0 takes no premises"; return false; }
      Formula P = n.principal.value_or(Formula());
      if (P.null() || !P.is(Conn::Circ)) {
        // search the antecedent for a witness
        bool found = false;
        for (auto& f : s.ante)
          if (f.is(Conn::Circ) && contains(s.ante, f.left()) &&
              contains(s.ante, Formula::neg(f.left()))) { found = true; break; }
        if (!found) { why = "EXP0 requires @A, A, ~A in the antecedent"; }
        return found;
      }
      if (!contains(s.ante, P) || !contains(s.ante, P.left()) ||
          !contains(s.ante, Formula::neg(P.left()))) {
        why = "EXP0 requires @A, A, ~A in the antecedent";
        return false;
      }
      return true;
    }
    case SeqRule::LW: {
      if (n.premises.size() != 1) { why = "LW takes one premise"; return false; }
      const Sequent& p = n.premises[0]->seq;
      if (p.succ != s.succ) { why = "LW must preserve the succedent"; return false; }
      auto try_f = [&](const Formula& A) {
        return contains(s.ante, A) &&
               (p.ante == set_minus(s.ante, A) || p.ante == s.ante);
      };
      if (n.principal) {
        if (try_f(*n.principal)) return true;
      } else {
        for (auto& A : s.ante)
          if (try_f(A)) return true;
      }
      why = "LW premise does not match";
      return false;
    }
    case SeqRule::RW: {
      if (n.premises.size() != 1) { why = "RW takes one premise"; return false; }
      const Sequent& p = n.premises[0]->seq;
      if (p.ante != s.ante) { why = "RW must preserve the antecedent"; return false; }
      auto try_f = [&](const Formula& A) {
        if (!contains(s.succ, A)) return false;
        if (multi) return p.succ == set_minus(s.succ, A) || p.succ == s.succ;
        return s.succ == FormulaSet{A} && p.succ.empty();
      };
      if (n.principal) {
        if (try_f(*n.principal)) return true;
      } else {
        for (auto& A : s.succ)
          if (try_f(A)) return true;
      }
      why = "RW premise does not match";
      return false;
    }
    case SeqRule::Cut: {
      if (n.premises.size() != 2) { why = "Cut takes two premises"; return false; }
      if (!n.principal) { why = "Cut must record its cut formula"; return false; }
      const Formula& A = *n.principal;
      const Sequent& l = n.premises[0]->seq;
      const Sequent& r = n.premises[1]->seq;
      Sequent wantl{s.ante, multi ? set_with(s.succ, A) : FormulaSet{A}};
      Sequent wantr{set_with(s.ante, A), s.succ};
      if (l != wantl || r != wantr) { why = "Cut premises do not share the context"; return false; }
      return true;
    }
    case SeqRule::Mix: {
      if (n.premises.size() != 2) { why = "Mix takes two premises"; return false; }
      if (!n.principal) { why = "Mix must record its mix formula"; return false; }
      const Formula& A = *n.principal;
      const Sequent& l = n.premises[0]->seq;
      const Sequent& r = n.premises[1]->seq;
      if (!contains(l.succ, A) || !contains(r.ante, A)) {
        why = "Mix formula must occur on both sides";
        return false;
      }
      if (!multi && l.succ != FormulaSet{A}) { why = "Mix left succedent must be the mix formula"; return false; }
      Sequent want{set_union(l.ante, set_minus(r.ante, A)),
                   set_union(set_minus(l.succ, A), r.succ)};
      if (s != want) { why = "Mix conclusion mismatch"; return false; }
      return true;
    }
    default:
      why = "not a structural rule";
      return false;
  }
}

inline void check_node(const CalculusId& id, const SequentProof& n, std::vector<int>& path,
                       ProofCheckResult& out) {
  if (!out.valid) return;
  auto fail = [&](std::string reason) {
    out.valid = false;
    out.path = path;
    out.reason = std::move(reason);
  };

  if (!single_conclusion(id.calc)) {
    for (auto& f : n.seq.ante)
      if (contains_imp(f)) return fail("'->' is not in the LF language");
    for (auto& f : n.seq.succ)
      if (contains_imp(f)) return fail("'->' is not in the LF language");
  } else if (n.seq.succ.size() > 1) {
    return fail("succedent must contain at most one formula");
  }

  if (!rule_allowed(id.calc, n.rule))
    return fail(std::string(rule_name(n.rule)) + " is not a rule of " + calculus_name(id.calc));

  std::string why;
  switch (n.rule) {
    case SeqRule::Id:
    case SeqRule::Exp0:
    case SeqRule::LW:
    case SeqRule::RW:
    case SeqRule::Cut:
    case SeqRule::Mix:
      if (!node_matches_structural(id, n, why)) return fail(why);
      break;
    default:
      if (!node_matches_logical(id, n))
        return fail(std::string(rule_name(n.rule)) + " instance does not match its schema");
  }

  for (std::size_t i = 0; i < n.premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    check_node(id, *n.premises[i], path, out);
    path.pop_back();
    if (!out.valid) return;
  }
}

}  // namespace detail

inline ProofCheckResult check_sequent_proof(const CalculusId& id, const SeqProofPtr& p) {
  ProofCheckResult out;
  std::vector<int> path;
  detail::check_node(id, *p, path, out);
  return out;
}

// --- weakening helpers -------------------------------------------------------

inline SeqProofPtr lw(SeqProofPtr p, const Formula& A) {
  Sequent s{set_with(p->seq.ante, A), p->seq.succ};
  if (s == p->seq) return p;
  return make_seq_node(std::move(s), SeqRule::LW, A, {std::move(p)});
}

inline SeqProofPtr rw(SeqProofPtr p, const Formula& A, const CalculusId& id) {
  Sequent s{p->seq.ante, set_with(p->seq.succ, A)};
  if (s == p->seq) return p;
  if (single_conclusion(id.calc) && !p->seq.succ.empty())
    throw std::logic_error("cannot weaken a nonempty single-conclusion succedent");
  return make_seq_node(std::move(s), SeqRule::RW, A, {std::move(p)});
}

// Extend a proof's end sequent to `target` by weakenings on both sides.
inline SeqProofPtr weaken_to(SeqProofPtr p, const Sequent& target, const CalculusId& id) {
  if (!std::includes(target.ante.begin(), target.ante.end(), p->seq.ante.begin(),
                     p->seq.ante.end()) ||
      !std::includes(target.succ.begin(), target.succ.end(), p->seq.succ.begin(),
                     p->seq.succ.end()))
    throw std::logic_error("weaken_to: target does not extend the proved sequent");
  for (auto& f : target.ante)
    if (!contains(p->seq.ante, f)) p = lw(std::move(p), f);
  for (auto& f : target.succ)
    if (!contains(p->seq.succ, f)) p = rw(std::move(p), f, id);
  return p;
}

// Id leaf for A => A, weakened out to `target` (which must contain A on both
// relevant sides).
inline SeqProofPtr id_closure_proof(const Formula& A, const Sequent& target,
                                    const CalculusId& id) {
  SeqProofPtr p = make_seq_node(Sequent{{A}, {A}}, SeqRule::Id, A, {});
  return weaken_to(std::move(p), target, id);
}

// --- backward rule instances -------------------------------------------------

struct BackwardInstance {
  SeqRule rule;
  Formula principal;
  std::vector<Sequent> premises;
};

// Enumerate every rule instance whose conclusion is `s`, under the retention
// convention: premises keep the principal formula in their context. Cut and
// Mix are never enumerated. Includes the generalized axiom closures (Id with
// a shared formula, EXP0 with @A, A, ~A present) as zero-premise instances,
// and for the single-conclusion calculi the succedent-drop move (backward RW
// to an empty succedent) whenever some @A is in the antecedent.
inline std::vector<BackwardInstance> rule_instances_backward(const CalculusId& id,
                                                             const Sequent& s) {
  std::vector<BackwardInstance> out;
  bool multi = !single_conclusion(id.calc);
  if (!multi && s.succ.size() > 1) return out;

  for (auto& A : s.ante)
    if (contains(s.succ, A)) out.push_back({SeqRule::Id, A, {}});
  if (id.calc == Calculus::GB)
    for (auto& f : s.ante)
      if (f.is(Conn::Circ) && contains(s.ante, f.left()) &&
          contains(s.ante, Formula::neg(f.left())))
        out.push_back({SeqRule::Exp0, f, {}});

  static const SeqRule left_rules[] = {SeqRule::LAnd, SeqRule::LOr,    SeqRule::LTo,
                                       SeqRule::LNegOr, SeqRule::LNegAnd, SeqRule::LNegTo,
                                       SeqRule::LNegNeg, SeqRule::Pem,  SeqRule::Exp1,
                                       SeqRule::LNegCirc};
  static const SeqRule right_rules[] = {SeqRule::RAnd,     SeqRule::ROr1,    SeqRule::ROr2,
                                        SeqRule::ROr,      SeqRule::RTo,     SeqRule::RNegOr,
                                        SeqRule::RNegAnd1, SeqRule::RNegAnd2, SeqRule::RNegAnd,
                                        SeqRule::RNegTo,   SeqRule::RNegNeg, SeqRule::RNegCirc};

  for (auto& P : s.ante)
    for (SeqRule r : left_rules) {
      if (!rule_allowed(id.calc, r)) continue;
      // Retention: the context keeps the principal, so g = full antecedent.
      auto inst = instantiate(id, r, P, s.ante, s.succ);
      if (!inst || inst->conclusion != s) continue;
      out.push_back({r, P, std::move(inst->premises)});
    }
  for (auto& P : s.succ)
    for (SeqRule r : right_rules) {
      if (!rule_allowed(id.calc, r)) continue;
      auto inst = instantiate(id, r, P, s.ante, multi ? s.succ : FormulaSet{});
      if (!inst || inst->conclusion != s) continue;
      out.push_back({r, P, std::move(inst->premises)});
    }

  if (!multi && !s.succ.empty()) {
    bool has_circ = std::any_of(s.ante.begin(), s.ante.end(),
                                [](const Formula& f) { return f.is(Conn::Circ); });
    if (has_circ)
      out.push_back({SeqRule::RW, *s.succ.begin(), {Sequent{s.ante, {}}}});
  }
  return out;
}

// --- the two derivations of gentle explosion ---------------------------------

struct PropEqDerivations {
  SeqProofPtr gletj;  // cut-free GLETJ proof of @A, ~A, A =>
  SeqProofPtr gb;     // GB proof of the same sequent containing exactly two cuts
};

inline PropEqDerivations build_propeq_derivations(const Formula& A) {
  Formula nA = Formula::neg(A);
  Formula cA = Formula::circ(A);
  CalculusId jd{Calculus::GLETJ};
  CalculusId gb{Calculus::GB};

  // (a) in GLETJ: EXP1 applied to Id + LW premises.
  SeqProofPtr p1 = weaken_to(make_seq_node(Sequent{{A}, {A}}, SeqRule::Id, A, {}),
                             Sequent{{A, nA}, {A}}, jd);
  SeqProofPtr p2 = weaken_to(make_seq_node(Sequent{{nA}, {nA}}, SeqRule::Id, nA, {}),
                             Sequent{{A, nA}, {nA}}, jd);
  SeqProofPtr letj = make_seq_node(Sequent{{cA, A, nA}, {}}, SeqRule::Exp1, cA,
                                   {std::move(p1), std::move(p2)});

  // (b) in GB: two cuts against the explosion axiom, with the hypothetical
  // premises instantiated as weakened identity sequents. Working over the
  // fixed antecedent X = {@A, A, ~A} keeps every cut context aligned.
  FormulaSet X{cA, A, nA};
  SeqProofPtr left1 = id_closure_proof(A, Sequent{X, {A}}, gb);
  SeqProofPtr exp = make_seq_node(Sequent{X, {}}, SeqRule::Exp0, cA, {});
  SeqProofPtr cut1 = make_seq_node(Sequent{X, {}}, SeqRule::Cut, A,
                                   {std::move(left1), std::move(exp)});
  SeqProofPtr left2 = id_closure_proof(nA, Sequent{X, {nA}}, gb);
  SeqProofPtr cut2 = make_seq_node(Sequent{X, {}}, SeqRule::Cut, nA,
                                   {std::move(left2), std::move(cut1)});

  return {std::move(letj), std::move(cut2)};
}

}  // namespace letk
