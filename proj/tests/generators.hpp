#pragma once

// Seeded random generators shared by the test binaries: formulas, sequents,
// forward-generated sequent proofs (optionally with inserted cuts) and
// natural deductions.

#include <random>
#include <string>
#include <vector>

#include "letk/calculus.hpp"
#include "letk/deduction.hpp"

namespace letk::testgen {

struct FormulaParams {
  int max_depth = 4;
  int num_atoms = 3;
  Language lang = Language::LJ;
};

inline Formula random_formula(std::mt19937& rng, const FormulaParams& p) {
  auto atom = [&] {
    static const char* names[] = {"p", "q", "r", "s", "t"};
    return Formula::atom(names[rng() % p.num_atoms]);
  };
  if (p.max_depth <= 0) return atom();
  FormulaParams sub = p;
  sub.max_depth = p.max_depth - 1;
  switch (rng() % (p.lang == Language::LF ? 5 : 6)) {
    case 0: return atom();
    case 1: return Formula::neg(random_formula(rng, sub));
    case 2: return Formula::circ(random_formula(rng, sub));
    case 3: return Formula::conj(random_formula(rng, sub), random_formula(rng, sub));
    case 4: return Formula::disj(random_formula(rng, sub), random_formula(rng, sub));
    default: return Formula::imp(random_formula(rng, sub), random_formula(rng, sub));
  }
}

inline Formula random_formula_weight_bounded(std::mt19937& rng, FormulaParams p,
                                             long max_weight) {
  for (int tries = 0; tries < 1000; ++tries) {
    Formula f = random_formula(rng, p);
    if (weight(f) <= max_weight) return f;
  }
  p.max_depth = 1;
  return random_formula(rng, p);
}

inline Sequent random_sequent(std::mt19937& rng, const FormulaParams& p, int max_ante,
                              int max_succ) {
  Sequent s;
  int na = static_cast<int>(rng() % (max_ante + 1));
  int ns = static_cast<int>(rng() % (max_succ + 1));
  for (int i = 0; i < na; ++i) s.ante.insert(random_formula(rng, p));
  for (int i = 0; i < ns; ++i) s.succ.insert(random_formula(rng, p));
  return s;
}

// --- forward generation of valid sequent proofs ------------------------------

inline std::size_t proof_height(const SeqProofPtr& p) {
  std::size_t h = 0;
  for (auto& q : p->premises) h = std::max(h, proof_height(q));
  return h + 1;
}

// Grow a pool of valid cut-free proofs by applying rules forward. The pool
// starts from Id leaves over random formulas.
class ForwardProofGen {
 public:
  ForwardProofGen(CalculusId id, std::mt19937& rng, FormulaParams fp, std::size_t max_height = 8)
      : id_(id), rng_(rng), fp_(fp), max_height_(max_height) {
    if (id.calc == Calculus::GLETF) fp_.lang = Language::LF;
    for (int i = 0; i < 6; ++i) {
      Formula f = random_formula(rng_, fp_);
      pool_.push_back(make_seq_node(Sequent{{f}, {f}}, SeqRule::Id, f, {}));
    }
  }

  SeqProofPtr pick() { return pool_[rng_() % pool_.size()]; }

  // One random forward step; returns the new proof (also added to the pool),
  // or nullptr if the chosen move did not apply.
  SeqProofPtr step() {
    SeqProofPtr out;
    switch (rng_() % 10) {
      case 0: out = do_lw(); break;
      case 1: out = do_rw(); break;
      case 2: out = do_land(); break;
      case 3: out = do_rand(); break;
      case 4: out = do_lor(); break;
      case 5: out = do_ror(); break;
      case 6: out = do_neg_intro(); break;
      case 7: out = do_neg_elim_side(); break;
      case 8: out = do_circ(); break;
      default: out = do_imp(); break;
    }
    if (out && proof_height(out) <= max_height_) {
      pool_.push_back(out);
      return out;
    }
    return nullptr;
  }

  // Run `n` steps and return a proof of height >= 2 if possible.
  SeqProofPtr generate(int n) {
    for (int i = 0; i < n; ++i) step();
    for (std::size_t i = pool_.size(); i-- > 0;)
      if (proof_height(pool_[i]) >= 2) return pool_[i];
    return pool_.back();
  }

  // Insert a cut or mix above a randomly chosen pool proof.
  SeqProofPtr insert_cut() {
    for (int tries = 0; tries < 50; ++tries) {
      SeqProofPtr right = pick();
      if (right->seq.ante.empty()) continue;
      auto it = right->seq.ante.begin();
      std::advance(it, rng_() % right->seq.ante.size());
      Formula a = *it;
      if (rng_() % 2 == 0) {
        // Cut whose left premise is an Id-based proof of G => A (,D).
        Sequent lt{right->seq.ante,
                   multi() ? set_with(right->seq.succ, a) : FormulaSet{a}};
        SeqProofPtr left = id_closure_proof(a, lt, id_);
        return make_seq_node(right->seq, SeqRule::Cut, a, {left, right});
      }
      // Mix against a pool proof deriving A on the right, if one exists.
      for (auto& l : pool_) {
        if (!contains(l->seq.succ, a)) continue;
        if (single_conclusion(id_.calc) && l->seq.succ != FormulaSet{a}) continue;
        Sequent conc{set_union(l->seq.ante, set_minus(right->seq.ante, a)),
                     set_union(set_minus(l->seq.succ, a), right->seq.succ)};
        if (!single_conclusion(id_.calc) || conc.succ.size() <= 1)
          return make_seq_node(conc, SeqRule::Mix, a, {l, right});
      }
    }
    // Fall back to a guaranteed trivial cut (pool Id leaves have a formula
    // in the antecedent).
    for (auto& right : pool_) {
      if (right->seq.ante.empty()) continue;
      Formula a = *right->seq.ante.begin();
      Sequent lt{right->seq.ante, multi() ? set_with(right->seq.succ, a) : FormulaSet{a}};
      SeqProofPtr left = id_closure_proof(a, lt, id_);
      return make_seq_node(right->seq, SeqRule::Cut, a, {left, right});
    }
    throw std::logic_error("insert_cut: empty pool");
  }

 private:
  bool multi() const { return !single_conclusion(id_.calc); }

  Formula fresh_formula() { return random_formula(rng_, fp_); }

  SeqProofPtr do_lw() { return lw(pick(), fresh_formula()); }

  SeqProofPtr do_rw() {
    SeqProofPtr p = pick();
    if (!multi() && !p->seq.succ.empty()) return nullptr;
    return rw(p, fresh_formula(), id_);
  }

  SeqProofPtr do_land() {
    SeqProofPtr p = pick();
    if (p->seq.ante.size() < 1) return nullptr;
    auto it = p->seq.ante.begin();
    std::advance(it, rng_() % p->seq.ante.size());
    Formula a = *it;
    auto jt = p->seq.ante.begin();
    std::advance(jt, rng_() % p->seq.ante.size());
    Formula b = *jt;
    Formula prin = Formula::conj(a, b);
    Sequent conc{set_with(p->seq.ante, prin), p->seq.succ};
    return make_seq_node(conc, SeqRule::LAnd, prin, {p});
  }

  SeqProofPtr do_rand() {
    SeqProofPtr p1 = pick();
    SeqProofPtr p2 = pick();
    if (p1->seq.succ.empty() || p2->seq.succ.empty()) return nullptr;
    Formula a = *p1->seq.succ.begin();
    Formula b = *p2->seq.succ.begin();
    CalculusId id = id_;
    FormulaSet g = set_union(p1->seq.ante, p2->seq.ante);
    if (!multi()) {
      SeqProofPtr q1 = weaken_to(p1, Sequent{g, {a}}, id);
      SeqProofPtr q2 = weaken_to(p2, Sequent{g, {b}}, id);
      return make_seq_node(Sequent{g, {Formula::conj(a, b)}}, SeqRule::RAnd,
                           Formula::conj(a, b), {q1, q2});
    }
    FormulaSet d = set_union(set_minus(p1->seq.succ, a), set_minus(p2->seq.succ, b));
    SeqProofPtr q1 = weaken_to(p1, Sequent{g, set_with(d, a)}, id);
    SeqProofPtr q2 = weaken_to(p2, Sequent{g, set_with(d, b)}, id);
    return make_seq_node(Sequent{g, set_with(d, Formula::conj(a, b))}, SeqRule::RAnd,
                         Formula::conj(a, b), {q1, q2});
  }

  SeqProofPtr do_lor() {
    SeqProofPtr p1 = pick();
    SeqProofPtr p2 = pick();
    if (p1->seq.succ != p2->seq.succ) return nullptr;
    if (p1->seq.ante.empty() || p2->seq.ante.empty()) return nullptr;
    Formula a = *p1->seq.ante.begin();
    Formula b = *p2->seq.ante.begin();
    Formula prin = Formula::disj(a, b);
    FormulaSet g = set_union(p1->seq.ante, p2->seq.ante);
    SeqProofPtr q1 = weaken_to(p1, Sequent{g, p1->seq.succ}, id_);
    SeqProofPtr q2 = weaken_to(p2, Sequent{g, p2->seq.succ}, id_);
    return make_seq_node(Sequent{set_with(g, prin), p1->seq.succ}, SeqRule::LOr, prin, {q1, q2});
  }

  SeqProofPtr do_ror() {
    SeqProofPtr p = pick();
    if (p->seq.succ.empty()) return nullptr;
    Formula a = *p->seq.succ.begin();
    Formula b = fresh_formula();
    if (!multi()) {
      if (rng_() % 2) {
        Formula prin = Formula::disj(a, b);
        return make_seq_node(Sequent{p->seq.ante, {prin}}, SeqRule::ROr1, prin, {p});
      }
      Formula prin = Formula::disj(b, a);
      return make_seq_node(Sequent{p->seq.ante, {prin}}, SeqRule::ROr2, prin, {p});
    }
    Formula prin = Formula::disj(a, b);
    SeqProofPtr q = rw(p, b, id_);
    return make_seq_node(Sequent{p->seq.ante, set_with(set_minus(set_minus(q->seq.succ, a), b),
                                                       prin)},
                         SeqRule::ROr, prin, {q});
  }

  // Negation introductions on the right: ~~A, ~(A&B), ~(A|B).
  SeqProofPtr do_neg_intro() {
    SeqProofPtr p = pick();
    if (p->seq.succ.empty()) return nullptr;
    Formula a = *p->seq.succ.begin();
    switch (rng_() % 3) {
      case 0: {
        Formula prin = Formula::neg(Formula::neg(a));
        if (!multi())
          return make_seq_node(Sequent{p->seq.ante, {prin}}, SeqRule::RNegNeg, prin, {p});
        return make_seq_node(Sequent{p->seq.ante, set_with(set_minus(p->seq.succ, a), prin)},
                             SeqRule::RNegNeg, prin, {p});
      }
      case 1: {
        if (!a.is(Conn::Neg)) return nullptr;
        Formula b = fresh_formula();
        Formula prin = Formula::neg(Formula::conj(a.left(), b));
        if (!multi())
          return make_seq_node(Sequent{p->seq.ante, {prin}}, SeqRule::RNegAnd1, prin, {p});
        SeqProofPtr q = rw(p, Formula::neg(b), id_);
        FormulaSet s = set_minus(set_minus(q->seq.succ, a), Formula::neg(b));
        return make_seq_node(Sequent{p->seq.ante, set_with(s, prin)}, SeqRule::RNegAnd, prin, {q});
      }
      default: {
        if (!a.is(Conn::Neg)) return nullptr;
        SeqProofPtr p2 = pick();
        if (p2->seq.succ.empty()) return nullptr;
        Formula b = *p2->seq.succ.begin();
        if (!b.is(Conn::Neg)) return nullptr;
        Formula prin = Formula::neg(Formula::disj(a.left(), b.left()));
        FormulaSet g = set_union(p->seq.ante, p2->seq.ante);
        if (!multi()) {
          SeqProofPtr q1 = weaken_to(p, Sequent{g, {a}}, id_);
          SeqProofPtr q2 = weaken_to(p2, Sequent{g, {b}}, id_);
          return make_seq_node(Sequent{g, {prin}}, SeqRule::RNegOr, prin, {q1, q2});
        }
        FormulaSet d = set_union(set_minus(p->seq.succ, a), set_minus(p2->seq.succ, b));
        SeqProofPtr q1 = weaken_to(p, Sequent{g, set_with(d, a)}, id_);
        SeqProofPtr q2 = weaken_to(p2, Sequent{g, set_with(d, b)}, id_);
        return make_seq_node(Sequent{g, set_with(d, prin)}, SeqRule::RNegOr, prin, {q1, q2});
      }
    }
  }

  // Negation rules on the left: L~~, L~&, L~|, L~->.
  SeqProofPtr do_neg_elim_side() {
    SeqProofPtr p = pick();
    if (p->seq.ante.empty()) return nullptr;
    auto it = p->seq.ante.begin();
    std::advance(it, rng_() % p->seq.ante.size());
    Formula a = *it;
    switch (rng_() % 3) {
      case 0: {
        Formula prin = Formula::neg(Formula::neg(a));
        return make_seq_node(Sequent{set_with(p->seq.ante, prin), p->seq.succ},
                             SeqRule::LNegNeg, prin, {p});
      }
      case 1: {
        if (!a.is(Conn::Neg)) return nullptr;
        SeqProofPtr p2 = pick();
        if (p2->seq.succ != p->seq.succ) return nullptr;
        auto jt = p2->seq.ante.begin();
        if (p2->seq.ante.empty()) return nullptr;
        std::advance(jt, rng_() % p2->seq.ante.size());
        Formula b = *jt;
        if (!b.is(Conn::Neg)) return nullptr;
        Formula prin = Formula::neg(Formula::conj(a.left(), b.left()));
        FormulaSet g = set_union(p->seq.ante, p2->seq.ante);
        SeqProofPtr q1 = weaken_to(p, Sequent{g, p->seq.succ}, id_);
        SeqProofPtr q2 = weaken_to(p2, Sequent{g, p->seq.succ}, id_);
        return make_seq_node(Sequent{set_with(g, prin), p->seq.succ}, SeqRule::LNegAnd, prin,
                             {q1, q2});
      }
      default: {
        if (!a.is(Conn::Neg)) return nullptr;
        Formula b = fresh_formula();
        Formula prin = Formula::neg(Formula::disj(a.left(), b));
        SeqProofPtr q = lw(p, Formula::neg(b));
        return make_seq_node(Sequent{set_with(q->seq.ante, prin), q->seq.succ},
                             SeqRule::LNegOr, prin, {q});
      }
    }
  }

  // PEM, EXP1 and (for GLETF) the ~@ rules.
  SeqProofPtr do_circ() {
    SeqProofPtr p1 = pick();
    switch (rng_() % 4) {
      case 0: {  // PEM from two pool proofs with matching succedents
        SeqProofPtr p2 = pick();
        if (p1->seq.succ != p2->seq.succ) return nullptr;
        if (p1->seq.ante.empty()) return nullptr;
        Formula a = *p1->seq.ante.begin();
        if (a.is(Conn::Neg)) return nullptr;
        Formula na = Formula::neg(a);
        if (!contains(p2->seq.ante, na)) return nullptr;
        Formula prin = Formula::circ(a);
        FormulaSet g = set_union(p1->seq.ante, p2->seq.ante);
        SeqProofPtr q1 = weaken_to(p1, Sequent{g, p1->seq.succ}, id_);
        SeqProofPtr q2 = weaken_to(p2, Sequent{g, p1->seq.succ}, id_);
        return make_seq_node(Sequent{set_with(g, prin), p1->seq.succ}, SeqRule::Pem, prin,
                             {q1, q2});
      }
      case 1: {  // EXP1 from G => A and G => ~A
        SeqProofPtr p2 = pick();
        if (p1->seq.succ.empty() || p2->seq.succ.empty()) return nullptr;
        Formula a = *p1->seq.succ.begin();
        Formula na = Formula::neg(a);
        if (!contains(p2->seq.succ, na)) return nullptr;
        Formula prin = Formula::circ(a);
        FormulaSet g = set_union(p1->seq.ante, p2->seq.ante);
        if (!multi()) {
          if (p1->seq.succ != FormulaSet{a} || p2->seq.succ != FormulaSet{na}) return nullptr;
          SeqProofPtr q1 = weaken_to(p1, Sequent{g, {a}}, id_);
          SeqProofPtr q2 = weaken_to(p2, Sequent{g, {na}}, id_);
          return make_seq_node(Sequent{set_with(g, prin), {}}, SeqRule::Exp1, prin, {q1, q2});
        }
        FormulaSet d = set_union(set_minus(p1->seq.succ, a), set_minus(p2->seq.succ, na));
        SeqProofPtr q1 = weaken_to(p1, Sequent{g, set_with(d, a)}, id_);
        SeqProofPtr q2 = weaken_to(p2, Sequent{g, set_with(d, na)}, id_);
        return make_seq_node(Sequent{set_with(g, prin), d}, SeqRule::Exp1, prin, {q1, q2});
      }
      case 2: {  // GLETF L~@
        if (!multi()) return nullptr;
        if (p1->seq.succ.empty()) return nullptr;
        Formula aux = *p1->seq.succ.begin();
        Formula b;
        if (id_.letf_negcirc == NegCircVariant::Corrected) {
          if (!aux.is(Conn::Circ)) return nullptr;
          b = aux.left();
        } else {
          b = aux;
        }
        Formula prin = Formula::neg(Formula::circ(b));
        return make_seq_node(Sequent{set_with(p1->seq.ante, prin), set_minus(p1->seq.succ, aux)},
                             SeqRule::LNegCirc, prin, {p1});
      }
      default: {  // GLETF R~@
        if (!multi()) return nullptr;
        if (p1->seq.ante.empty()) return nullptr;
        auto it = p1->seq.ante.begin();
        std::advance(it, rng_() % p1->seq.ante.size());
        Formula aux = *it;
        Formula b;
        if (id_.letf_negcirc == NegCircVariant::Corrected) {
          if (!aux.is(Conn::Circ)) return nullptr;
          b = aux.left();
        } else {
          b = aux;
        }
        Formula prin = Formula::neg(Formula::circ(b));
        return make_seq_node(Sequent{set_minus(p1->seq.ante, aux), set_with(p1->seq.succ, prin)},
                             SeqRule::RNegCirc, prin, {p1});
      }
    }
  }

  // -> rules (GB / GLETJ only): RTo, LNegTo, RNegTo, LTo.
  SeqProofPtr do_imp() {
    if (multi()) return nullptr;
    SeqProofPtr p = pick();
    switch (rng_() % 4) {
      case 0: {  // RTo
        if (p->seq.succ.empty() || p->seq.ante.empty()) return nullptr;
        Formula b = *p->seq.succ.begin();
        auto it = p->seq.ante.begin();
        std::advance(it, rng_() % p->seq.ante.size());
        Formula a = *it;
        Formula prin = Formula::imp(a, b);
        return make_seq_node(Sequent{set_minus(p->seq.ante, a), {prin}}, SeqRule::RTo, prin, {p});
      }
      case 1: {  // LNegTo
        if (p->seq.ante.empty()) return nullptr;
        auto it = p->seq.ante.begin();
        std::advance(it, rng_() % p->seq.ante.size());
        Formula a = *it;
        Formula nb = fresh_formula();
        Formula prin = Formula::neg(Formula::imp(a, nb));
        SeqProofPtr q = lw(p, Formula::neg(nb));
        return make_seq_node(Sequent{set_with(q->seq.ante, prin), q->seq.succ},
                             SeqRule::LNegTo, prin, {q});
      }
      case 2: {  // RNegTo
        SeqProofPtr p2 = pick();
        if (p->seq.succ.empty() || p2->seq.succ.empty()) return nullptr;
        Formula a = *p->seq.succ.begin();
        Formula nb = *p2->seq.succ.begin();
        if (!nb.is(Conn::Neg)) return nullptr;
        Formula prin = Formula::neg(Formula::imp(a, nb.left()));
        FormulaSet g = set_union(p->seq.ante, p2->seq.ante);
        SeqProofPtr q1 = weaken_to(p, Sequent{g, {a}}, id_);
        SeqProofPtr q2 = weaken_to(p2, Sequent{g, {nb}}, id_);
        return make_seq_node(Sequent{g, {prin}}, SeqRule::RNegTo, prin, {q1, q2});
      }
      default: {  // LTo
        SeqProofPtr p2 = pick();
        if (p->seq.succ.empty() || p2->seq.ante.empty()) return nullptr;
        Formula a = *p->seq.succ.begin();
        auto it = p2->seq.ante.begin();
        std::advance(it, rng_() % p2->seq.ante.size());
        Formula b = *it;
        Formula prin = Formula::imp(a, b);
        FormulaSet g = set_union(p->seq.ante, p2->seq.ante);
        SeqProofPtr q1 = weaken_to(p, Sequent{g, {a}}, id_);
        SeqProofPtr q2 = weaken_to(p2, Sequent{g, p2->seq.succ}, id_);
        return make_seq_node(Sequent{set_with(g, prin), p2->seq.succ}, SeqRule::LTo, prin,
                             {q1, q2});
      }
    }
  }

  CalculusId id_;
  std::mt19937& rng_;
  FormulaParams fp_;
  std::size_t max_height_;
  std::vector<SeqProofPtr> pool_;
};

// --- forward generation of valid natural deductions --------------------------

inline std::size_t nd_height(const DedPtr& d) {
  std::size_t h = 0;
  for (auto& p : d->premises) h = std::max(h, nd_height(p));
  return h + 1;
}

// Grow a pool of valid deductions by applying rules forward; assumption
// classes are sometimes populated through a conjunction detour so that
// discharges are exercised.
class DeductionGen {
 public:
  DeductionGen(NDSystem sys, std::mt19937& rng, FormulaParams fp,
               std::size_t max_height = 8)
      : sys_(sys), rng_(rng), fp_(fp), max_height_(max_height) {
    if (sys == NDSystem::NLETF) fp_.lang = Language::LF;
    for (int i = 0; i < 6; ++i) pool_.push_back(assume(random_formula(rng_, fp_)));
  }

  // bound labels are freshened per use so that reusing a pool entry never
  // discharges the same class twice
  DedPtr pick() { return nd_freshen_bound(pool_[rng_() % pool_.size()], counter_); }

  void step() {
    DedPtr d;
    switch (rng_() % 12) {
      case 0: d = do_and(); break;
      case 1: d = do_or(); break;
      case 2: d = do_or_elim(); break;
      case 3: d = do_neg_and(); break;
      case 4: d = do_neg_or(); break;
      case 5: d = do_neg_neg(); break;
      case 6: d = do_imp(); break;
      case 7: d = do_neg_imp(); break;
      case 8: d = do_exp(); break;
      case 9: d = do_pem(); break;
      case 10: d = do_cons(); break;
      default: d = do_comp(); break;
    }
    if (d && nd_height(d) <= max_height_) pool_.push_back(d);
  }

  DedPtr generate(int n) {
    for (int i = 0; i < n; ++i) step();
    for (std::size_t i = pool_.size(); i-- > 0;)
      if (nd_height(pool_[i]) >= 3) return pool_[i];
    return pool_.back();
  }

  int& marker_counter() { return counter_; }

 private:
  DedPtr assume(const Formula& f) { return nd_assume(f, ++counter_); }

  // deduce `target` while opening assumption class (f, marker): project the
  // right half of f & target
  DedPtr via_class(const Formula& f, int marker, const DedPtr& of_target) {
    DedPtr a = nd_assume(f, marker);
    DedPtr both = nd_infer(NDRule::AndI, Formula::conj(f, of_target->formula),
                           {a, of_target});
    return nd_infer(NDRule::AndE2, of_target->formula, {both});
  }

  // a deduction of `f`, from the pool when one matches, else an assumption
  DedPtr of(const Formula& f) {
    for (std::size_t tries = 0; tries < pool_.size(); ++tries) {
      DedPtr d = pick();
      if (d->formula == f) return d;
    }
    return assume(f);
  }

  DedPtr minor(const Formula& f, int marker, const DedPtr& of_target) {
    DedPtr t = nd_freshen_bound(of_target, counter_);
    return rng_() % 2 == 0 ? via_class(f, marker, t) : t;
  }

  DedPtr do_and() {
    DedPtr a = pick(), b = pick();
    DedPtr both = nd_infer(NDRule::AndI, Formula::conj(a->formula, b->formula), {a, b});
    switch (rng_() % 3) {
      case 0: return both;
      case 1: return nd_infer(NDRule::AndE1, a->formula, {both});
      default: return nd_infer(NDRule::AndE2, b->formula, {both});
    }
  }

  DedPtr do_or() {
    DedPtr a = pick();
    Formula b = random_formula(rng_, fp_);
    return rng_() % 2 == 0
               ? nd_infer(NDRule::OrI1, Formula::disj(a->formula, b), {a})
               : nd_infer(NDRule::OrI2, Formula::disj(b, a->formula), {a});
  }

  DedPtr do_or_elim() {
    DedPtr major = pick();
    if (major->formula.tag() != Conn::Or) {
      DedPtr a = pick();
      major = nd_infer(NDRule::OrI1,
                       Formula::disj(a->formula, random_formula(rng_, fp_)), {a});
    }
    DedPtr c = pick();
    int u = ++counter_, v = ++counter_;
    return nd_infer(NDRule::OrE, c->formula,
                    {major, minor(major->formula.left(), u, c),
                     minor(major->formula.right(), v, c)},
                    {u, v});
  }

  DedPtr do_neg_and() {
    Formula g = random_formula(rng_, fp_);
    DedPtr major;
    if (rng_() % 2 == 0) {
      DedPtr a = pick();
      Formula whole = Formula::neg(Formula::conj(a->formula.tag() == Conn::Neg
                                                     ? a->formula.left()
                                                     : Formula::neg(a->formula),
                                                 g));
      // only ~X premises fit NegAndI1
      if (a->formula.tag() != Conn::Neg) return nullptr;
      major = nd_infer(NDRule::NegAndI1, whole, {a});
    } else {
      major = of(Formula::neg(Formula::conj(g, random_formula(rng_, fp_))));
    }
    if (rng_() % 2 == 0) return major;
    DedPtr c = pick();
    int u = ++counter_, v = ++counter_;
    Formula inner = major->formula.left();
    return nd_infer(NDRule::NegAndE, c->formula,
                    {major, minor(Formula::neg(inner.left()), u, c),
                     minor(Formula::neg(inner.right()), v, c)},
                    {u, v});
  }

  DedPtr do_neg_or() {
    DedPtr a = pick();
    if (a->formula.tag() != Conn::Neg) return nullptr;
    DedPtr b = of(Formula::neg(random_formula(rng_, fp_)));
    Formula whole =
        Formula::neg(Formula::disj(a->formula.left(), b->formula.left()));
    DedPtr intro = nd_infer(NDRule::NegOrI, whole, {a, b});
    switch (rng_() % 3) {
      case 0: return intro;
      case 1: return nd_infer(NDRule::NegOrE1, a->formula, {intro});
      default: return nd_infer(NDRule::NegOrE2, b->formula, {intro});
    }
  }

  DedPtr do_neg_neg() {
    DedPtr a = pick();
    DedPtr intro = nd_infer(NDRule::NegNegI, Formula::neg(Formula::neg(a->formula)), {a});
    return rng_() % 2 == 0 ? intro : nd_infer(NDRule::NegNegE, a->formula, {intro});
  }

  DedPtr do_imp() {
    if (sys_ == NDSystem::NLETF) return nullptr;
    DedPtr b = pick();
    Formula a = random_formula(rng_, fp_);
    int u = ++counter_;
    DedPtr body = rng_() % 2 == 0 ? via_class(a, u, b) : b;
    DedPtr intro = nd_infer(NDRule::ToI, Formula::imp(a, b->formula), {body}, {u});
    if (rng_() % 2 == 0) return intro;
    return nd_infer(NDRule::ToE, b->formula, {intro, of(a)});
  }

  DedPtr do_neg_imp() {
    if (sys_ == NDSystem::NLETF) return nullptr;
    DedPtr a = pick();
    DedPtr nb = of(Formula::neg(random_formula(rng_, fp_)));
    Formula whole = Formula::neg(Formula::imp(a->formula, nb->formula.left()));
    DedPtr intro = nd_infer(NDRule::NegToI, whole, {a, nb});
    switch (rng_() % 3) {
      case 0: return intro;
      case 1: return nd_infer(NDRule::NegToE1, a->formula, {intro});
      default: return nd_infer(NDRule::NegToE2, nb->formula, {intro});
    }
  }

  DedPtr do_exp() {
    Formula a = random_formula(rng_, fp_);
    DedPtr c = nd_infer(NDRule::Exp, random_formula(rng_, fp_),
                        {of(Formula::circ(a)), of(Formula::neg(a)), of(a)});
    return c;
  }

  DedPtr do_pem() {
    Formula a = random_formula(rng_, fp_);
    DedPtr c = pick();
    int u = ++counter_, v = ++counter_;
    return nd_infer(NDRule::Pem, c->formula,
                    {of(Formula::circ(a)), minor(a, u, c),
                     minor(Formula::neg(a), v, c)},
                    {u, v});
  }

  DedPtr do_cons() {
    if (sys_ == NDSystem::NLETJ) return nullptr;
    Formula a = random_formula(rng_, fp_);
    return nd_infer(NDRule::Cons, random_formula(rng_, fp_),
                    {of(Formula::circ(a)), of(Formula::neg(Formula::circ(a)))});
  }

  DedPtr do_comp() {
    if (sys_ == NDSystem::NLETJ) return nullptr;
    Formula a = random_formula(rng_, fp_);
    DedPtr c = pick();
    int u = ++counter_, v = ++counter_;
    return nd_infer(NDRule::Comp, c->formula,
                    {minor(Formula::circ(a), u, c),
                     minor(Formula::neg(Formula::circ(a)), v, c)},
                    {u, v});
  }

  NDSystem sys_;
  std::mt19937& rng_;
  FormulaParams fp_;
  std::size_t max_height_;
  int counter_ = 0;
  std::vector<DedPtr> pool_;
};

}  // namespace letk::testgen
