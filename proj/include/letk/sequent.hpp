#pragma once

// Sequents over formula sets and proof trees for the sequent calculi
// GB, GLETJ and GLETF.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "letk/formula.hpp"

namespace letk {

struct Sequent {
  FormulaSet ante;
  FormulaSet succ;

  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend auto operator<=>(const Sequent&, const Sequent&) = default;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const {
    std::size_t h = 0x5bd1e995;
    for (auto& f : s.ante) h = h * 31 + f.hash();
    h ^= 0x27d4eb2f;
    for (auto& f : s.succ) h = h * 31 + f.hash();
    return h;
  }
};

inline FormulaSet set_union(FormulaSet a, const FormulaSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}
inline FormulaSet set_minus(FormulaSet a, const Formula& f) {
  a.erase(f);
  return a;
}
inline FormulaSet set_with(FormulaSet a, const Formula& f) {
  a.insert(f);
  return a;
}

inline long sequent_weight(const Sequent& s) {
  long w = 0;
  for (auto& f : s.ante) w += weight(f);
  for (auto& f : s.succ) w += weight(f);
  return w;
}

enum class SeqRule {
  Id, Exp0, LW, RW, Cut, Mix,
  LAnd, RAnd, LOr, ROr1, ROr2, ROr,
  LNegOr, RNegOr, LTo, RTo, LNegTo, RNegTo,
  LNegAnd, RNegAnd1, RNegAnd2, RNegAnd,
  Pem, LNegNeg, RNegNeg, Exp1, LNegCirc, RNegCirc,
};

inline const char* rule_name(SeqRule r) {
  switch (r) {
    case SeqRule::Id: return "Id";
    case SeqRule::Exp0: return "EXP0";
    case SeqRule::LW: return "LW";
    case SeqRule::RW: return "RW";
    case SeqRule::Cut: return "Cut";
    case SeqRule::Mix: return "Mix";
    case SeqRule::LAnd: return "LAnd";
    case SeqRule::RAnd: return "RAnd";
    case SeqRule::LOr: return "LOr";
    case SeqRule::ROr1: return "ROr1";
    case SeqRule::ROr2: return "ROr2";
    case SeqRule::ROr: return "ROr";
    case SeqRule::LNegOr: return "LNegOr";
    case SeqRule::RNegOr: return "RNegOr";
    case SeqRule::LTo: return "LTo";
    case SeqRule::RTo: return "RTo";
    case SeqRule::LNegTo: return "LNegTo";
    case SeqRule::RNegTo: return "RNegTo";
    case SeqRule::LNegAnd: return "LNegAnd";
    case SeqRule::RNegAnd1: return "RNegAnd1";
    case SeqRule::RNegAnd2: return "RNegAnd2";
    case SeqRule::RNegAnd: return "RNegAnd";
    case SeqRule::Pem: return "PEM";
    case SeqRule::LNegNeg: return "LNegNeg";
    case SeqRule::RNegNeg: return "RNegNeg";
    case SeqRule::Exp1: return "EXP1";
    case SeqRule::LNegCirc: return "LNegCirc";
    case SeqRule::RNegCirc: return "RNegCirc";
  }
  return "?";
}

enum class Calculus { GB, GLETJ, GLETF };

enum class NegCircVariant { Corrected, Printed };

struct CalculusId {
  Calculus calc = Calculus::GLETJ;
  // Which reading of the ~@ rules GLETF uses; Corrected restores the
  // subformula discipline the other rules follow.
  NegCircVariant letf_negcirc = NegCircVariant::Corrected;
};

inline const char* calculus_name(Calculus c) {
  switch (c) {
    case Calculus::GB: return "gb";
    case Calculus::GLETJ: return "gletj";
    case Calculus::GLETF: return "gletf";
  }
  return "?";
}

struct SequentProof;
using SeqProofPtr = std::shared_ptr<const SequentProof>;

struct SequentProof {
  Sequent seq;
  SeqRule rule = SeqRule::Id;
  std::optional<Formula> principal;
  std::vector<SeqProofPtr> premises;
};

inline SeqProofPtr make_seq_node(Sequent s, SeqRule r, std::optional<Formula> principal,
                                 std::vector<SeqProofPtr> premises) {
  return std::make_shared<SequentProof>(
      SequentProof{std::move(s), r, std::move(principal), std::move(premises)});
}

inline bool is_cut_free(const SeqProofPtr& p) {
  if (p->rule == SeqRule::Cut || p->rule == SeqRule::Mix) return false;
  for (auto& q : p->premises)
    if (!is_cut_free(q)) return false;
  return true;
}

inline std::size_t proof_size(const SeqProofPtr& p) {
  std::size_t n = 1;
  for (auto& q : p->premises) n += proof_size(q);
  return n;
}

}  // namespace letk
