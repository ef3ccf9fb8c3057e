#pragma once

// Translations between natural deductions and sequent proofs: deductions to
// GB/GLETF proofs (with cuts), porting GB proofs to GLETJ by replacing the
// explosion axiom, and sequent proofs back to deductions. An empty succedent
// is identified with the falsum expansion (@_f & ~_f) & _f throughout.

#include <functional>
#include <stdexcept>

#include "letk/calculus.hpp"
#include "letk/deduction.hpp"

namespace letk {

namespace detail {

// Open assumption classes of a subdeduction, keyed by marker.
inline void open_classes(const DedPtr& d, std::map<int, Formula>& out) {
  if (d->is_assumption) {
    out.emplace(d->marker, d->formula);
    return;
  }
  for (auto& p : d->premises) open_classes(p, out);
  for (int u : d->discharges) out.erase(u);
}

inline FormulaSet open_formulas(const DedPtr& d) {
  std::map<int, Formula> m;
  open_classes(d, m);
  FormulaSet s;
  for (auto& [u, f] : m) s.insert(f);
  return s;
}

class NDToSeq {
 public:
  NDToSeq(NDSystem sys)
      : sys_(sys),
        id_{sys == NDSystem::NLETF ? Calculus::GLETF : Calculus::GB},
        multi_(sys == NDSystem::NLETF) {}

  SeqProofPtr run(const DedPtr& d) {
    auto chk = check_deduction(sys_, d);
    if (!chk.valid) throw std::invalid_argument("nd_to_sequent: " + chk.reason);
    return tr(d);
  }

 private:
  SeqProofPtr cut(const Formula& A, SeqProofPtr l, SeqProofPtr r, const Sequent& target) {
    l = weaken_to(std::move(l),
                  Sequent{target.ante, multi_ ? set_with(target.succ, A) : FormulaSet{A}},
                  id_);
    r = weaken_to(std::move(r), Sequent{set_with(target.ante, A), target.succ}, id_);
    return make_seq_node(target, SeqRule::Cut, A, {std::move(l), std::move(r)});
  }

  // A left-rule node over `premises`, cut against the major's translation.
  SeqProofPtr via_left(SeqRule r, const Formula& P, const FormulaSet& g, const Formula& c,
                       std::vector<SeqProofPtr> premises, SeqProofPtr major) {
    Sequent concl{set_with(g, P), {c}};
    SeqProofPtr node = make_seq_node(concl, r, P, std::move(premises));
    return cut(P, std::move(major), std::move(node), Sequent{g, {c}});
  }

  SeqProofPtr tr(const DedPtr& d) {
    if (d->is_assumption)
      return make_seq_node(Sequent{{d->formula}, {d->formula}}, SeqRule::Id, d->formula, {});

    FormulaSet S = open_formulas(d);
    const Formula& C = d->formula;
    Sequent target{S, {C}};
    auto sub = [&](std::size_t i) { return tr(d->premises[i]); };
    auto to = [&](std::size_t i, const Sequent& s) { return weaken_to(sub(i), s, id_); };
    auto right_node = [&](SeqRule r, std::vector<SeqProofPtr> premises) {
      return make_seq_node(target, r, C, std::move(premises));
    };
    auto idc = [&](const Formula& f, FormulaSet ante) {
      return id_closure_proof(f, Sequent{std::move(ante), {f}}, id_);
    };

    switch (d->rule) {
      case NDRule::AndI:
        return right_node(SeqRule::RAnd,
                          {to(0, {S, {C.left()}}), to(1, {S, {C.right()}})});
      case NDRule::AndE1:
      case NDRule::AndE2: {
        Formula P = d->premises[0]->formula;
        return via_left(SeqRule::LAnd, P, S, C,
                        {idc(C, set_union(S, {P.left(), P.right()}))}, sub(0));
      }
      case NDRule::OrI1:
        if (multi_) return right_node(SeqRule::ROr, {to(0, {S, {C.left(), C.right()}})});
        return right_node(SeqRule::ROr1, {to(0, {S, {C.left()}})});
      case NDRule::OrI2:
        if (multi_) return right_node(SeqRule::ROr, {to(0, {S, {C.left(), C.right()}})});
        return right_node(SeqRule::ROr2, {to(0, {S, {C.right()}})});
      case NDRule::OrE: {
        Formula P = d->premises[0]->formula;
        return via_left(SeqRule::LOr, P, S, C,
                        {to(1, {set_with(S, P.left()), {C}}),
                         to(2, {set_with(S, P.right()), {C}})},
                        sub(0));
      }
      case NDRule::ToI:
        return right_node(SeqRule::RTo, {to(0, {set_with(S, C.left()), {C.right()}})});
      case NDRule::ToE: {
        Formula P = d->premises[0]->formula;
        return via_left(SeqRule::LTo, P, S, C,
                        {to(1, {S, {P.left()}}), idc(C, set_with(S, P.right()))}, sub(0));
      }
      case NDRule::NegAndI1:
        if (multi_)
          return right_node(SeqRule::RNegAnd,
                            {to(0, {S, {Formula::neg(C.left().left()),
                                        Formula::neg(C.left().right())}})});
        return right_node(SeqRule::RNegAnd1, {to(0, {S, {Formula::neg(C.left().left())}})});
      case NDRule::NegAndI2:
        if (multi_)
          return right_node(SeqRule::RNegAnd,
                            {to(0, {S, {Formula::neg(C.left().left()),
                                        Formula::neg(C.left().right())}})});
        return right_node(SeqRule::RNegAnd2, {to(0, {S, {Formula::neg(C.left().right())}})});
      case NDRule::NegAndE: {
        Formula P = d->premises[0]->formula;
        return via_left(SeqRule::LNegAnd, P, S, C,
                        {to(1, {set_with(S, Formula::neg(P.left().left())), {C}}),
                         to(2, {set_with(S, Formula::neg(P.left().right())), {C}})},
                        sub(0));
      }
      case NDRule::NegOrI:
        return right_node(SeqRule::RNegOr,
                          {to(0, {S, {Formula::neg(C.left().left())}}),
                           to(1, {S, {Formula::neg(C.left().right())}})});
      case NDRule::NegOrE1:
      case NDRule::NegOrE2: {
        Formula P = d->premises[0]->formula;
        FormulaSet aux{Formula::neg(P.left().left()), Formula::neg(P.left().right())};
        return via_left(SeqRule::LNegOr, P, S, C, {idc(C, set_union(S, aux))}, sub(0));
      }
      case NDRule::NegToI:
        return right_node(SeqRule::RNegTo,
                          {to(0, {S, {C.left().left()}}),
                           to(1, {S, {Formula::neg(C.left().right())}})});
      case NDRule::NegToE1:
      case NDRule::NegToE2: {
        Formula P = d->premises[0]->formula;
        FormulaSet aux{P.left().left(), Formula::neg(P.left().right())};
        return via_left(SeqRule::LNegTo, P, S, C, {idc(C, set_union(S, aux))}, sub(0));
      }
      case NDRule::NegNegI:
        return right_node(SeqRule::RNegNeg, {to(0, {S, {C.left().left()}})});
      case NDRule::NegNegE: {
        Formula P = d->premises[0]->formula;
        return via_left(SeqRule::LNegNeg, P, S, C, {idc(C, set_with(S, C))}, sub(0));
      }
      case NDRule::Pem: {
        Formula P = d->premises[0]->formula;
        return via_left(SeqRule::Pem, P, S, C,
                        {to(1, {set_with(S, P.left()), {C}}),
                         to(2, {set_with(S, Formula::neg(P.left())), {C}})},
                        sub(0));
      }
      case NDRule::Exp: {
        Formula cA = d->premises[0]->formula;
        Formula A = cA.left();
        Formula nA = Formula::neg(A);
        if (multi_) {
          // gentle explosion absorbs the A and ~A premises directly
          std::vector<SeqProofPtr> ps{to(2, {S, {A, C}}), to(1, {S, {nA, C}})};
          SeqProofPtr node =
              make_seq_node(Sequent{set_with(S, cA), {C}}, SeqRule::Exp1, cA, std::move(ps));
          return cut(cA, sub(0), std::move(node), target);
        }
        // the three-cut construction against the explosion axiom
        FormulaSet inner = set_union(S, {A, nA, cA});
        SeqProofPtr leaf = make_seq_node(Sequent{inner, {C}}, SeqRule::Exp0, cA, {});
        SeqProofPtr c1 =
            cut(cA, sub(0), std::move(leaf), Sequent{set_union(S, {A, nA}), {C}});
        SeqProofPtr c2 = cut(nA, sub(1), std::move(c1), Sequent{set_with(S, A), {C}});
        return cut(A, sub(2), std::move(c2), target);
      }
      case NDRule::Cons: {
        Formula cA = d->premises[0]->formula;
        Formula ncA = Formula::neg(cA);
        SeqProofPtr node = make_seq_node(Sequent{set_with(S, ncA), {C}}, SeqRule::LNegCirc,
                                         ncA, {to(0, {S, {cA, C}})});
        return cut(ncA, sub(1), std::move(node), target);
      }
      case NDRule::Comp: {
        // recover the traced formula from either class; both empty means the
        // conclusion is already proved by premise 0
        std::map<int, Formula> cls;
        open_classes(d->premises[0], cls);
        auto it = cls.find(d->discharges[0]);
        Formula cA;
        if (it != cls.end()) {
          cA = it->second;
        } else {
          std::map<int, Formula> cls2;
          open_classes(d->premises[1], cls2);
          auto it2 = cls2.find(d->discharges[1]);
          if (it2 == cls2.end()) return to(0, target);
          cA = it2->second.left();
        }
        Formula ncA = Formula::neg(cA);
        SeqProofPtr node = make_seq_node(Sequent{S, {ncA, C}}, SeqRule::RNegCirc, ncA,
                                         {to(0, {set_with(S, cA), {C}})});
        return cut(ncA, std::move(node), to(1, {set_with(S, ncA), {C}}), target);
      }
    }
    throw std::logic_error("nd_to_sequent: unhandled rule");
  }

  NDSystem sys_;
  CalculusId id_;
  bool multi_;
};

}  // namespace detail

inline SeqProofPtr nd_to_sequent(NDSystem sys, const DedPtr& d) {
  return detail::NDToSeq(sys).run(d);
}

// Replace every explosion-axiom leaf by the gentle-explosion derivation of
// @A, A, ~A => , weakened out to the leaf's sequent.
inline SeqProofPtr port_gb_to_gletj(const SeqProofPtr& p) {
  CalculusId jd{Calculus::GLETJ};
  if (p->rule == SeqRule::Exp0) {
    Formula cA = p->principal.value_or(Formula());
    if (cA.null() || !cA.is(Conn::Circ)) {
      for (auto& f : p->seq.ante)
        if (f.is(Conn::Circ) && contains(p->seq.ante, f.left()) &&
            contains(p->seq.ante, Formula::neg(f.left()))) {
          cA = f;
          break;
        }
    }
    if (cA.null()) throw std::invalid_argument("port_gb_to_gletj: malformed EXP0 leaf");
    return weaken_to(build_propeq_derivations(cA.left()).gletj, p->seq, jd);
  }
  bool changed = false;
  std::vector<SeqProofPtr> prems;
  prems.reserve(p->premises.size());
  for (auto& q : p->premises) {
    SeqProofPtr r = port_gb_to_gletj(q);
    changed = changed || r != q;
    prems.push_back(std::move(r));
  }
  if (!changed) return p;
  return make_seq_node(p->seq, p->rule, p->principal, std::move(prems));
}

namespace detail {

class SeqToND {
 public:
  SeqToND(const CalculusId& id)
      : id_(id),
        sys_(id.calc == Calculus::GLETF ? NDSystem::NLETF : NDSystem::NLETJ) {}

  DedPtr run(const SeqProofPtr& p) {
    auto chk = check_sequent_proof(id_, p);
    if (!chk.valid) throw std::invalid_argument("sequent_to_nd: " + chk.reason);
    return tr(p);
  }

 private:
  using Handler = std::function<DedPtr(const Formula&, const DedPtr&)>;

  int fresh() { return ++counter_; }

  DedPtr fb(const DedPtr& d) { return nd_freshen_bound(d, counter_); }

  static std::vector<Formula> dlist(const FormulaSet& s) { return {s.begin(), s.end()}; }

  // canonical right-nested disjunction of a nonempty list
  static Formula big_or(const std::vector<Formula>& fs, std::size_t from = 0) {
    if (from + 1 == fs.size()) return fs[from];
    return Formula::disj(fs[from], big_or(fs, from + 1));
  }

  // what a sequent with this succedent proves
  static Formula target_of(const FormulaSet& succ) {
    return succ.empty() ? bot_expansion() : big_or(dlist(succ));
  }

  // a deduction of f lifted into the canonical disjunction of `list`
  DedPtr inject(const Formula& f, DedPtr D, const std::vector<Formula>& list,
                std::size_t from = 0) {
    if (from + 1 == list.size()) return D;
    Formula whole = big_or(list, from);
    if (f == list[from]) return nd_infer(NDRule::OrI1, whole, {std::move(D)});
    return nd_infer(NDRule::OrI2, whole, {inject(f, std::move(D), list, from + 1)});
  }

  // case analysis over a deduction of the canonical disjunction of `list`;
  // the handler turns each disjunct into a deduction of the common target
  DedPtr cases(const std::vector<Formula>& list, DedPtr D, const Handler& h,
               std::size_t from = 0) {
    if (from + 1 == list.size()) return h(list[from], std::move(D));
    int u = fresh(), v = fresh();
    DedPtr m1 = h(list[from], nd_assume(list[from], u));
    DedPtr m2 = cases(list, nd_assume(big_or(list, from + 1), v), h, from + 1);
    Formula concl = m1->formula;
    return nd_infer(NDRule::OrE, concl, {std::move(D), std::move(m1), std::move(m2)},
                    {u, v});
  }

  // replace every open assumption of formula f by (a freshened copy of) repl
  DedPtr graft(const DedPtr& d, const Formula& f, const DedPtr& repl) {
    std::vector<int> bound;
    collect_bound_markers(d, bound);
    std::set<int> bs(bound.begin(), bound.end());
    return graft_rec(d, f, repl, bs);
  }

  DedPtr graft_rec(const DedPtr& d, const Formula& f, const DedPtr& repl,
                   const std::set<int>& bound) {
    if (d->is_assumption) {
      if (d->formula == f && !bound.count(d->marker)) return fb(repl);
      return d;
    }
    bool changed = false;
    std::vector<DedPtr> prems;
    prems.reserve(d->premises.size());
    for (auto& p : d->premises) {
      DedPtr q = graft_rec(p, f, repl, bound);
      changed = changed || q != p;
      prems.push_back(std::move(q));
    }
    if (!changed) return d;
    auto out = std::make_shared<Deduction>(*d);
    out->premises = std::move(prems);
    return out;
  }

  // move the open occurrences of f into the class `u`
  DedPtr bind_open(const DedPtr& d, const Formula& f, int u) {
    return graft(d, f, nd_assume(f, u));
  }

  // from a deduction of the falsum expansion to any target, via its components
  DedPtr from_bot(const DedPtr& D, const Formula& t) {
    Formula bot = bot_expansion();
    DedPtr c = nd_infer(NDRule::AndE1, bot.left().left(),
                        {nd_infer(NDRule::AndE1, bot.left(), {fb(D)})});
    DedPtr n = nd_infer(NDRule::AndE2, bot.left().right(),
                        {nd_infer(NDRule::AndE1, bot.left(), {fb(D)})});
    DedPtr a = nd_infer(NDRule::AndE2, bot.right(), {fb(D)});
    return nd_infer(NDRule::Exp, t, {std::move(c), std::move(n), std::move(a)});
  }

  // explosion-style closure concluding `t`, component-wise when t is the
  // falsum expansion so that consequences stay in lowered form
  DedPtr explode(NDRule r, const DedPtr& p0, const DedPtr& p1, const DedPtr& p2,
                 const Formula& t) {
    auto app = [&](const Formula& g) {
      std::vector<DedPtr> ps{fb(p0), fb(p1)};
      if (r == NDRule::Exp) ps.push_back(fb(p2));
      return nd_infer(r, g, std::move(ps));
    };
    if (t != bot_expansion()) return app(t);
    Formula bot = bot_expansion();
    return nd_infer(NDRule::AndI, bot,
                    {nd_infer(NDRule::AndI, bot.left(),
                              {app(bot.left().left()), app(bot.left().right())}),
                     app(bot.right())});
  }

  // adapt a deduction proving target_of(from) into one proving target_of(to)
  DedPtr adapt(DedPtr D, const FormulaSet& from, const FormulaSet& to) {
    if (from == to) return D;
    if (from.empty()) return from_bot(D, target_of(to));
    auto tolist = dlist(to);
    return cases(dlist(from), std::move(D),
                 [&](const Formula& f, const DedPtr& pf) { return inject(f, pf, tolist); });
  }

  DedPtr tr(const SeqProofPtr& n) {
    const Sequent& s = n->seq;
    Formula T = target_of(s.succ);
    auto tolist = dlist(s.succ);
    auto side = [&](const Formula& f, const DedPtr& pf) { return inject(f, pf, tolist); };

    switch (n->rule) {
      case SeqRule::Id:
        return nd_assume(*s.ante.begin(), fresh());

      case SeqRule::Exp0: {
        Formula cA;
        for (auto& f : s.ante)
          if (f.is(Conn::Circ) && contains(s.ante, f.left()) &&
              contains(s.ante, Formula::neg(f.left()))) {
            cA = f;
            break;
          }
        if (n->principal && n->principal->is(Conn::Circ)) cA = *n->principal;
        return explode(NDRule::Exp, nd_assume(cA, fresh()),
                       nd_assume(Formula::neg(cA.left()), fresh()),
                       nd_assume(cA.left(), fresh()), T);
      }

      case SeqRule::LW: {
        DedPtr D = tr(n->premises[0]);
        // pad with the weakened formula so it shows up as an open assumption
        for (auto& f : s.ante)
          if (!contains(n->premises[0]->seq.ante, f))
            D = nd_infer(NDRule::AndE1, T,
                         {nd_infer(NDRule::AndI, Formula::conj(T, f),
                                   {std::move(D), nd_assume(f, fresh())})});
        return D;
      }

      case SeqRule::RW:
        return adapt(tr(n->premises[0]), n->premises[0]->seq.succ, s.succ);

      case SeqRule::Cut:
      case SeqRule::Mix: {
        const Formula A = *n->principal;
        const SeqProofPtr& l = n->premises[0];
        const SeqProofPtr& r = n->premises[1];
        DedPtr D1 = tr(l);
        DedPtr D2 = tr(r);
        return cases(dlist(l.get()->seq.succ), std::move(D1),
                     [&](const Formula& f, const DedPtr& pf) -> DedPtr {
                       if (f == A)
                         return adapt(graft(fb(D2), A, pf), r->seq.succ, s.succ);
                       return side(f, pf);
                     });
      }

      case SeqRule::LAnd: {
        const Formula& P = *n->principal;
        DedPtr D = tr(n->premises[0]);
        DedPtr m = nd_assume(P, fresh());
        D = graft(D, P.left(), nd_infer(NDRule::AndE1, P.left(), {m}));
        return graft(D, P.right(), nd_infer(NDRule::AndE2, P.right(), {m}));
      }
      case SeqRule::LOr: {
        const Formula& P = *n->principal;
        int u = fresh(), v = fresh();
        return nd_infer(NDRule::OrE, T,
                        {nd_assume(P, fresh()),
                         bind_open(tr(n->premises[0]), P.left(), u),
                         bind_open(tr(n->premises[1]), P.right(), v)},
                        {u, v});
      }
      case SeqRule::LTo: {
        const Formula& P = *n->principal;
        DedPtr modus = nd_infer(NDRule::ToE, P.right(),
                                {nd_assume(P, fresh()), tr(n->premises[0])});
        return graft(tr(n->premises[1]), P.right(), modus);
      }
      case SeqRule::LNegOr: {
        const Formula& P = *n->principal;
        DedPtr m = nd_assume(P, fresh());
        Formula na = Formula::neg(P.left().left()), nb = Formula::neg(P.left().right());
        DedPtr D = graft(tr(n->premises[0]), na, nd_infer(NDRule::NegOrE1, na, {m}));
        return graft(D, nb, nd_infer(NDRule::NegOrE2, nb, {m}));
      }
      case SeqRule::LNegAnd: {
        const Formula& P = *n->principal;
        int u = fresh(), v = fresh();
        return nd_infer(NDRule::NegAndE, T,
                        {nd_assume(P, fresh()),
                         bind_open(tr(n->premises[0]), Formula::neg(P.left().left()), u),
                         bind_open(tr(n->premises[1]), Formula::neg(P.left().right()), v)},
                        {u, v});
      }
      case SeqRule::LNegTo: {
        const Formula& P = *n->principal;
        DedPtr m = nd_assume(P, fresh());
        Formula a = P.left().left(), nb = Formula::neg(P.left().right());
        DedPtr D = graft(tr(n->premises[0]), a, nd_infer(NDRule::NegToE1, a, {m}));
        return graft(D, nb, nd_infer(NDRule::NegToE2, nb, {m}));
      }
      case SeqRule::LNegNeg: {
        const Formula& P = *n->principal;
        Formula a = P.left().left();
        return graft(tr(n->premises[0]), a,
                     nd_infer(NDRule::NegNegE, a, {nd_assume(P, fresh())}));
      }
      case SeqRule::Pem: {
        const Formula& P = *n->principal;
        int u = fresh(), v = fresh();
        return nd_infer(NDRule::Pem, T,
                        {nd_assume(P, fresh()),
                         bind_open(tr(n->premises[0]), P.left(), u),
                         bind_open(tr(n->premises[1]), Formula::neg(P.left()), v)},
                        {u, v});
      }
      case SeqRule::Exp1: {
        const Formula& P = *n->principal;
        Formula A = P.left(), nA = Formula::neg(P.left());
        DedPtr m = nd_assume(P, fresh());
        DedPtr D1 = tr(n->premises[0]);  // proves target of succ + A
        DedPtr D2 = tr(n->premises[1]);  // proves target of succ + ~A
        return cases(dlist(n->premises[0]->seq.succ), std::move(D1),
                     [&](const Formula& f, const DedPtr& pfA) -> DedPtr {
                       if (f == A)
                         return cases(dlist(n->premises[1]->seq.succ), fb(D2),
                                      [&](const Formula& g, const DedPtr& pfN) -> DedPtr {
                                        if (g == nA) return explode(NDRule::Exp, m, pfN, pfA, T);
                                        return side(g, pfN);
                                      });
                       return side(f, pfA);
                     });
      }
      case SeqRule::LNegCirc: {
        if (id_.letf_negcirc == NegCircVariant::Printed)
          throw std::invalid_argument(
              "sequent_to_nd: the printed ~@ rules have no deduction counterpart");
        const Formula& P = *n->principal;
        Formula cA = P.left();
        DedPtr m = nd_assume(P, fresh());
        return cases(dlist(n->premises[0]->seq.succ), tr(n->premises[0]),
                     [&](const Formula& f, const DedPtr& pf) -> DedPtr {
                       if (f == cA) return explode(NDRule::Cons, pf, m, nullptr, T);
                       return side(f, pf);
                     });
      }
      case SeqRule::RNegCirc: {
        if (id_.letf_negcirc == NegCircVariant::Printed)
          throw std::invalid_argument(
              "sequent_to_nd: the printed ~@ rules have no deduction counterpart");
        const Formula& P = *n->principal;
        Formula cA = P.left();
        int u = fresh(), v = fresh();
        DedPtr m1 = adapt(bind_open(tr(n->premises[0]), cA, u),
                          n->premises[0]->seq.succ, s.succ);
        DedPtr m2 = side(P, nd_assume(P, v));
        return nd_infer(NDRule::Comp, T, {std::move(m1), std::move(m2)}, {u, v});
      }

      case SeqRule::RAnd: {
        const Formula& P = *n->principal;
        if (!multi())
          return nd_infer(NDRule::AndI, P, {tr(n->premises[0]), tr(n->premises[1])});
        DedPtr D2 = tr(n->premises[1]);
        return cases(dlist(n->premises[0]->seq.succ), tr(n->premises[0]),
                     [&](const Formula& f, const DedPtr& pfA) -> DedPtr {
                       if (f == P.left())
                         return cases(dlist(n->premises[1]->seq.succ), fb(D2),
                                      [&](const Formula& g, const DedPtr& pfB) -> DedPtr {
                                        if (g == P.right())
                                          return side(P, nd_infer(NDRule::AndI, P,
                                                                  {fb(pfA), pfB}));
                                        return side(g, pfB);
                                      });
                       return side(f, pfA);
                     });
      }
      case SeqRule::ROr1:
        return nd_infer(NDRule::OrI1, *n->principal, {tr(n->premises[0])});
      case SeqRule::ROr2:
        return nd_infer(NDRule::OrI2, *n->principal, {tr(n->premises[0])});
      case SeqRule::ROr: {
        const Formula& P = *n->principal;
        return cases(dlist(n->premises[0]->seq.succ), tr(n->premises[0]),
                     [&](const Formula& f, const DedPtr& pf) -> DedPtr {
                       if (f == P.left()) return side(P, nd_infer(NDRule::OrI1, P, {pf}));
                       if (f == P.right()) return side(P, nd_infer(NDRule::OrI2, P, {pf}));
                       return side(f, pf);
                     });
      }
      case SeqRule::RTo: {
        const Formula& P = *n->principal;
        int u = fresh();
        return nd_infer(NDRule::ToI, P, {bind_open(tr(n->premises[0]), P.left(), u)}, {u});
      }
      case SeqRule::RNegNeg: {
        const Formula& P = *n->principal;
        Formula a = P.left().left();
        if (!multi()) return nd_infer(NDRule::NegNegI, P, {tr(n->premises[0])});
        return cases(dlist(n->premises[0]->seq.succ), tr(n->premises[0]),
                     [&](const Formula& f, const DedPtr& pf) -> DedPtr {
                       if (f == a) return side(P, nd_infer(NDRule::NegNegI, P, {pf}));
                       return side(f, pf);
                     });
      }
      case SeqRule::RNegOr: {
        const Formula& P = *n->principal;
        Formula na = Formula::neg(P.left().left()), nb = Formula::neg(P.left().right());
        if (!multi())
          return nd_infer(NDRule::NegOrI, P, {tr(n->premises[0]), tr(n->premises[1])});
        DedPtr D2 = tr(n->premises[1]);
        return cases(dlist(n->premises[0]->seq.succ), tr(n->premises[0]),
                     [&](const Formula& f, const DedPtr& pfA) -> DedPtr {
                       if (f == na)
                         return cases(dlist(n->premises[1]->seq.succ), fb(D2),
                                      [&](const Formula& g, const DedPtr& pfB) -> DedPtr {
                                        if (g == nb)
                                          return side(P, nd_infer(NDRule::NegOrI, P,
                                                                  {fb(pfA), pfB}));
                                        return side(g, pfB);
                                      });
                       return side(f, pfA);
                     });
      }
      case SeqRule::RNegAnd1:
        return nd_infer(NDRule::NegAndI1, *n->principal, {tr(n->premises[0])});
      case SeqRule::RNegAnd2:
        return nd_infer(NDRule::NegAndI2, *n->principal, {tr(n->premises[0])});
      case SeqRule::RNegAnd: {
        const Formula& P = *n->principal;
        Formula na = Formula::neg(P.left().left()), nb = Formula::neg(P.left().right());
        return cases(dlist(n->premises[0]->seq.succ), tr(n->premises[0]),
                     [&](const Formula& f, const DedPtr& pf) -> DedPtr {
                       if (f == na) return side(P, nd_infer(NDRule::NegAndI1, P, {pf}));
                       if (f == nb) return side(P, nd_infer(NDRule::NegAndI2, P, {pf}));
                       return side(f, pf);
                     });
      }
      case SeqRule::RNegTo:
        return nd_infer(NDRule::NegToI, *n->principal,
                        {tr(n->premises[0]), tr(n->premises[1])});

      default:
        throw std::logic_error("sequent_to_nd: unhandled rule");
    }
  }

  bool multi() const { return id_.calc == Calculus::GLETF; }

  CalculusId id_;
  NDSystem sys_;
  int counter_ = 0;
};

}  // namespace detail

inline DedPtr sequent_to_nd(const CalculusId& id, const SeqProofPtr& p) {
  return detail::SeqToND(id).run(p);
}

}  // namespace letk
