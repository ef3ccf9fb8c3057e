#pragma once

// Cut elimination for GLETJ and GLETF by the mix argument: a single mix is
// removed by double induction on (measure of the mix formula, rank), and a
// whole proof is processed by repeatedly eliminating a topmost cut.

#include <cstdint>
#include <stdexcept>

#include "letk/calculus.hpp"

namespace letk {

// Measure driving the induction. It follows the weight recursion except on
// negated implications: the principal case for ~(B -> D) cuts on B and ~D,
// so the measure of ~(B -> D) must dominate the measure of B (the printed
// weight recursion bounds ~B instead, which is not enough).
inline long mix_measure_weight(const Formula& f) {
  switch (f.tag()) {
    case Conn::Atom: return 0;
    case Conn::Circ:
      return mix_measure_weight(f.left()) + mix_measure_weight(Formula::neg(f.left())) + 1;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      return mix_measure_weight(f.left()) + mix_measure_weight(f.right()) + 1;
    case Conn::Neg: {
      Formula g = f.left();
      switch (g.tag()) {
        case Conn::Atom: return 0;
        case Conn::Neg: return mix_measure_weight(g.left()) + 1;
        case Conn::Circ: return mix_measure_weight(g) + 1;
        case Conn::Imp:
          return mix_measure_weight(g.left()) +
                 mix_measure_weight(Formula::neg(g.right())) + 1;
        default:
          return mix_measure_weight(Formula::neg(g.left())) +
                 mix_measure_weight(Formula::neg(g.right())) + 1;
      }
    }
  }
  return 0;
}

struct RankInfo {
  int rank_left = 0;
  int rank_right = 0;
  int rank = 0;
  long weight = 0;
  Formula cut_formula;
};

namespace detail {

inline int rank_succ_thread(const SeqProofPtr& p, const Formula& A) {
  if (!contains(p->seq.succ, A)) return 0;
  int best = 0;
  for (auto& q : p->premises) best = std::max(best, rank_succ_thread(q, A));
  return 1 + best;
}

inline int rank_ante_thread(const SeqProofPtr& p, const Formula& A) {
  if (!contains(p->seq.ante, A)) return 0;
  int best = 0;
  for (auto& q : p->premises) best = std::max(best, rank_ante_thread(q, A));
  return 1 + best;
}

}  // namespace detail

// Ranks of a proof ending in Cut or Mix: the longest thread of sequents
// containing the cut formula on the relevant side, measured from each premise.
inline RankInfo compute_rank(const SeqProofPtr& p) {
  if (p->rule != SeqRule::Cut && p->rule != SeqRule::Mix)
    throw std::invalid_argument("compute_rank: final inference is not Cut or Mix");
  if (!is_cut_free(p->premises[0]) || !is_cut_free(p->premises[1]))
    throw std::invalid_argument("compute_rank: only the final inference may be a cut");
  const Formula& A = *p->principal;
  RankInfo r;
  r.cut_formula = A;
  r.weight = weight(A);
  r.rank_left = detail::rank_succ_thread(p->premises[0], A);
  r.rank_right = detail::rank_ante_thread(p->premises[1], A);
  r.rank = r.rank_left + r.rank_right;
  return r;
}

struct ElimStats {
  std::uint64_t mixes = 0;            // recursive mix eliminations performed
  std::uint64_t measure_violations = 0;  // recursive calls whose measure failed to drop
  std::uint64_t cuts_eliminated = 0;
};

namespace detail {

class MixEliminator {
 public:
  MixEliminator(const CalculusId& id, ElimStats& stats) : id_(id), stats_(stats) {
    if (id.calc == Calculus::GB)
      throw std::invalid_argument("cut elimination is not available for GB");
  }

  SeqProofPtr run(const SeqProofPtr& left, const SeqProofPtr& right, const Formula& A) {
    return mix(left, right, A, -1);
  }

 private:
  static constexpr long kRankSpan = 1'000'000;

  bool multi() const { return !single_conclusion(id_.calc); }

  Sequent mix_target(const SeqProofPtr& l, const SeqProofPtr& r, const Formula& A) const {
    return Sequent{set_union(l->seq.ante, set_minus(r->seq.ante, A)),
                   set_union(set_minus(l->seq.succ, A), r->seq.succ)};
  }

  SeqProofPtr mix(const SeqProofPtr& left, const SeqProofPtr& right, const Formula& A,
                  long parent_measure) {
    if (!contains(left->seq.succ, A) || !contains(right->seq.ante, A))
      throw std::logic_error("mix: formula missing from a premise");
    if (!multi() && left->seq.succ != FormulaSet{A})
      throw std::logic_error("mix: single-conclusion left succedent must be the mix formula");

    ++stats_.mixes;
    long own = mix_measure_weight(A) * kRankSpan +
               rank_succ_thread(left, A) + rank_ante_thread(right, A);
    if (parent_measure >= 0 && own >= parent_measure) ++stats_.measure_violations;

    Sequent target = mix_target(left, right, A);

    // (a) axiom premises
    if (left->rule == SeqRule::Id) return weaken_to(right, target, id_);
    if (right->rule == SeqRule::Id) return weaken_to(left, target, id_);
    // (I.1.1) the mix formula already sits on the matching side of a premise
    if (contains(left->seq.ante, A)) return weaken_to(right, target, id_);
    if (contains(right->seq.succ, A)) return weaken_to(left, target, id_);

    bool rr = false;
    for (auto& p : right->premises) rr = rr || contains(p->seq.ante, A);
    if (rr) {
      if (left_principal_rule(right->rule) && right->principal && *right->principal == A)
        return right_principal_case(left, right, A, target, own);
      return right_context_case(left, right, A, target, own);
    }

    bool rl = false;
    for (auto& p : left->premises) rl = rl || contains(p->seq.succ, A);
    if (rl) {
      if (right_principal_rule(left->rule) && left->principal && *left->principal == A)
        return left_principal_case(left, right, A, target, own);
      return left_context_case(left, right, A, target, own);
    }

    // rank 2: structural introductions, else both roots are logical with
    // principal A
    if (left->rule == SeqRule::RW)
      return weaken_to(left->premises[0], target, id_);
    if (right->rule == SeqRule::LW)
      return weaken_to(right->premises[0], target, id_);
    return principal_case(left, right, A, target, own);
  }

  // (I.1.2) the right root keeps A in its context; push the mix into the
  // premises and replay the rule at the smaller conclusion.
  SeqProofPtr right_context_case(const SeqProofPtr& left, const SeqProofPtr& right,
                                 const Formula& A, const Sequent& target, long own) {
    if (right->rule == SeqRule::LW || right->rule == SeqRule::RW) {
      const SeqProofPtr& prem = right->premises[0];
      SeqProofPtr q = contains(prem->seq.ante, A) ? mix(left, prem, A, own) : prem;
      return weaken_to(q, target, id_);
    }
    const Formula& P = *right->principal;
    FormulaSet g = target.ante;
    FormulaSet d;
    if (left_principal_rule(right->rule))
      d = target.succ;
    else
      d = multi() ? target.succ : FormulaSet{};
    auto inst = instantiate(id_, right->rule, P, g, d);
    if (!inst || inst->conclusion != target)
      throw std::logic_error("mix: cannot replay the right rule");
    std::vector<SeqProofPtr> prems;
    for (std::size_t i = 0; i < right->premises.size(); ++i) {
      const SeqProofPtr& p = right->premises[i];
      SeqProofPtr q = contains(p->seq.ante, A) ? mix(left, p, A, own) : p;
      prems.push_back(weaken_to(q, inst->premises[i], id_));
    }
    return make_seq_node(target, right->rule, P, std::move(prems));
  }

  // (I.1.3) the right root introduces A on the left; clear A from the
  // contexts, replay the rule, and finish with a mix of right-rank one.
  SeqProofPtr right_principal_case(const SeqProofPtr& left, const SeqProofPtr& right,
                                   const Formula& A, const Sequent& target, long own) {
    FormulaSet g = set_minus(target.ante, A);
    FormulaSet d = target.succ;
    if (!multi() && right->rule != SeqRule::Exp1 && d.size() > 1)
      throw std::logic_error("mix: succedent arity");
    auto inst = instantiate(id_, right->rule, A, g, d);
    if (!inst) throw std::logic_error("mix: cannot replay the right principal rule");
    std::vector<SeqProofPtr> prems;
    for (std::size_t i = 0; i < right->premises.size(); ++i) {
      const SeqProofPtr& p = right->premises[i];
      SeqProofPtr q = contains(p->seq.ante, A) ? mix(left, p, A, own) : p;
      prems.push_back(weaken_to(q, inst->premises[i], id_));
    }
    SeqProofPtr replayed = make_seq_node(inst->conclusion, right->rule, A, std::move(prems));
    SeqProofPtr out = mix(left, replayed, A, own);
    return weaken_to(out, target, id_);
  }

  // (I.2.2) mirror of I.1.2 on the left premise.
  SeqProofPtr left_context_case(const SeqProofPtr& left, const SeqProofPtr& right,
                                const Formula& A, const Sequent& target, long own) {
    if (left->rule == SeqRule::LW || left->rule == SeqRule::RW) {
      const SeqProofPtr& prem = left->premises[0];
      SeqProofPtr q = contains(prem->seq.succ, A) ? mix(prem, right, A, own) : prem;
      return weaken_to(q, target, id_);
    }
    const Formula& P = *left->principal;
    FormulaSet g = target.ante;
    FormulaSet d;
    if (left_principal_rule(left->rule))
      d = target.succ;
    else
      d = multi() ? target.succ : FormulaSet{};
    auto inst = instantiate(id_, left->rule, P, g, d);
    if (!inst || inst->conclusion != target)
      throw std::logic_error("mix: cannot replay the left rule");
    std::vector<SeqProofPtr> prems;
    for (std::size_t i = 0; i < left->premises.size(); ++i) {
      const SeqProofPtr& p = left->premises[i];
      SeqProofPtr q = contains(p->seq.succ, A) ? mix(p, right, A, own) : p;
      prems.push_back(weaken_to(q, inst->premises[i], id_));
    }
    return make_seq_node(target, left->rule, P, std::move(prems));
  }

  // (I.2.3) the left root introduces A on the right under a succedent context
  // still containing A (GLETF only); clear it and finish with a left-rank-one
  // mix.
  SeqProofPtr left_principal_case(const SeqProofPtr& left, const SeqProofPtr& right,
                                  const Formula& A, const Sequent& target, long own) {
    FormulaSet g = target.ante;
    FormulaSet d = set_minus(target.succ, A);
    auto inst = instantiate(id_, left->rule, A, g, multi() ? d : FormulaSet{});
    if (!inst) throw std::logic_error("mix: cannot replay the left principal rule");
    std::vector<SeqProofPtr> prems;
    for (std::size_t i = 0; i < left->premises.size(); ++i) {
      const SeqProofPtr& p = left->premises[i];
      SeqProofPtr q = contains(p->seq.succ, A) ? mix(p, right, A, own) : p;
      prems.push_back(weaken_to(q, inst->premises[i], id_));
    }
    SeqProofPtr replayed = make_seq_node(inst->conclusion, left->rule, A, std::move(prems));
    SeqProofPtr out = mix(replayed, right, A, own);
    return weaken_to(out, target, id_);
  }

  // (d) both roots introduce A; dispatch on its shape and mix the components.
  SeqProofPtr principal_case(const SeqProofPtr& left, const SeqProofPtr& right,
                             const Formula& A, const Sequent& target, long own) {
    bool lok = right_principal_rule(left->rule) && left->principal && *left->principal == A;
    bool rok = left_principal_rule(right->rule) && right->principal && *right->principal == A;
    if (!lok || !rok) throw std::logic_error("mix: unhandled rank-two configuration");

    auto finish = [&](SeqProofPtr p) { return weaken_to(std::move(p), target, id_); };

    switch (A.tag()) {
      case Conn::And: {
        // RAnd premises => B / => D; LAnd premise B, D, Pi => L
        const SeqProofPtr& lp1 = left->premises[0];
        const SeqProofPtr& lp2 = left->premises[1];
        const SeqProofPtr& rp = right->premises[0];
        Formula B = A.left(), D = A.right();
        SeqProofPtr m1 = contains(rp->seq.ante, B) ? mix(lp1, rp, B, own) : rp;
        SeqProofPtr m2 = contains(m1->seq.ante, D) ? mix(lp2, m1, D, own) : m1;
        return finish(m2);
      }
      case Conn::Or: {
        Formula B = A.left(), D = A.right();
        const SeqProofPtr& rp1 = right->premises[0];
        const SeqProofPtr& rp2 = right->premises[1];
        if (left->rule == SeqRule::ROr1)
          return finish(contains(rp1->seq.ante, B) ? mix(left->premises[0], rp1, B, own)
                                                   : rp1);
        if (left->rule == SeqRule::ROr2)
          return finish(contains(rp2->seq.ante, D) ? mix(left->premises[0], rp2, D, own)
                                                   : rp2);
        // GLETF ROr: one premise carrying both disjuncts
        const SeqProofPtr& lp = left->premises[0];
        SeqProofPtr m1 = contains(lp->seq.succ, B) ? mix(lp, rp1, B, own) : lp;
        SeqProofPtr m2 = contains(m1->seq.succ, D) ? mix(m1, rp2, D, own) : m1;
        return finish(m2);
      }
      case Conn::Imp: {
        // RTo premise B, G => D; LTo premises Pi => B and D, Pi => L
        Formula B = A.left(), D = A.right();
        const SeqProofPtr& lp = left->premises[0];
        const SeqProofPtr& rp1 = right->premises[0];
        const SeqProofPtr& rp2 = right->premises[1];
        SeqProofPtr m1 = contains(lp->seq.ante, B) ? mix(rp1, lp, B, own) : lp;
        SeqProofPtr m2 = contains(rp2->seq.ante, D) && contains(m1->seq.succ, D)
                             ? mix(m1, rp2, D, own)
                             : m1;
        return finish(m2);
      }
      case Conn::Neg: {
        Formula body = A.left();
        switch (body.tag()) {
          case Conn::Neg: {
            Formula B = body.left();
            const SeqProofPtr& lp = left->premises[0];
            const SeqProofPtr& rp = right->premises[0];
            return finish(contains(rp->seq.ante, B) && contains(lp->seq.succ, B)
                              ? mix(lp, rp, B, own)
                              : rp);
          }
          case Conn::And: {
            Formula nB = Formula::neg(body.left()), nD = Formula::neg(body.right());
            const SeqProofPtr& rp1 = right->premises[0];
            const SeqProofPtr& rp2 = right->premises[1];
            if (left->rule == SeqRule::RNegAnd1)
              return finish(contains(rp1->seq.ante, nB) ? mix(left->premises[0], rp1, nB, own)
                                                        : rp1);
            if (left->rule == SeqRule::RNegAnd2)
              return finish(contains(rp2->seq.ante, nD) ? mix(left->premises[0], rp2, nD, own)
                                                        : rp2);
            const SeqProofPtr& lp = left->premises[0];
            SeqProofPtr m1 = contains(lp->seq.succ, nB) ? mix(lp, rp1, nB, own) : lp;
            SeqProofPtr m2 = contains(m1->seq.succ, nD) ? mix(m1, rp2, nD, own) : m1;
            return finish(m2);
          }
          case Conn::Or: {
            Formula nB = Formula::neg(body.left()), nD = Formula::neg(body.right());
            const SeqProofPtr& lp1 = left->premises[0];
            const SeqProofPtr& lp2 = left->premises[1];
            const SeqProofPtr& rp = right->premises[0];
            SeqProofPtr m1 = contains(rp->seq.ante, nB) ? mix(lp1, rp, nB, own) : rp;
            SeqProofPtr m2 = contains(m1->seq.ante, nD) ? mix(lp2, m1, nD, own) : m1;
            return finish(m2);
          }
          case Conn::Imp: {
            Formula B = body.left(), nD = Formula::neg(body.right());
            const SeqProofPtr& lp1 = left->premises[0];  // => B
            const SeqProofPtr& lp2 = left->premises[1];  // => ~D
            const SeqProofPtr& rp = right->premises[0];  // B, ~D, Pi => L
            SeqProofPtr m1 = contains(rp->seq.ante, B) ? mix(lp1, rp, B, own) : rp;
            SeqProofPtr m2 = contains(m1->seq.ante, nD) ? mix(lp2, m1, nD, own) : m1;
            return finish(m2);
          }
          case Conn::Circ: {
            // GLETF only: RNegCirc premise aux, G => D'; LNegCirc premise
            // Pi => aux, L
            Formula aux = id_.letf_negcirc == NegCircVariant::Corrected
                              ? Formula::circ(body.left())
                              : body.left();
            const SeqProofPtr& lp = left->premises[0];
            const SeqProofPtr& rp = right->premises[0];
            SeqProofPtr m = contains(rp->seq.succ, aux) && contains(lp->seq.ante, aux)
                                ? mix(rp, lp, aux, own)
                                : lp;
            return finish(m);
          }
          default:
            throw std::logic_error("mix: no logical rule introduces this negation");
        }
      }
      default:
        throw std::logic_error("mix: no right rule introduces this formula");
    }
  }

  CalculusId id_;
  ElimStats& stats_;
};

}  // namespace detail

// Eliminate the final Cut/Mix of a proof whose premise subtrees are cut-free.
inline SeqProofPtr eliminate_single_cut(const CalculusId& id, const SeqProofPtr& p,
                                        ElimStats* stats = nullptr) {
  if (p->rule != SeqRule::Cut && p->rule != SeqRule::Mix)
    throw std::invalid_argument("eliminate_single_cut: final inference is not Cut or Mix");
  if (!is_cut_free(p->premises[0]) || !is_cut_free(p->premises[1]))
    throw std::invalid_argument("eliminate_single_cut: premises must be cut-free");
  ElimStats local;
  ElimStats& st = stats ? *stats : local;
  detail::MixEliminator el(id, st);
  SeqProofPtr out = el.run(p->premises[0], p->premises[1], *p->principal);
  out = weaken_to(out, p->seq, id);
  ++st.cuts_eliminated;
  if (out->seq != p->seq) throw std::logic_error("eliminate_single_cut: end sequent changed");
  return out;
}

// Remove every Cut and Mix, innermost (topmost) first.
inline SeqProofPtr cut_eliminate(const CalculusId& id, const SeqProofPtr& p,
                                 ElimStats* stats = nullptr) {
  if (id.calc == Calculus::GB)
    throw std::invalid_argument("cut elimination is not available for GB");
  std::vector<SeqProofPtr> prems;
  bool changed = false;
  for (auto& q : p->premises) {
    SeqProofPtr r = cut_eliminate(id, q, stats);
    changed = changed || r != q;
    prems.push_back(std::move(r));
  }
  if (p->rule == SeqRule::Cut || p->rule == SeqRule::Mix) {
    SeqProofPtr self = make_seq_node(p->seq, p->rule, p->principal, std::move(prems));
    return eliminate_single_cut(id, self, stats);
  }
  if (!changed) return p;
  return make_seq_node(p->seq, p->rule, p->principal, std::move(prems));
}

}  // namespace letk
