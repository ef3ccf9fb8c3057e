#pragma once

// Terminating backward proof search for the cut-free fragments of GB, GLETJ
// and GLETF. Provability is decided by depth-first search over backward rule
// instances with loop blocking and memoization; refutations are cached only
// when they do not depend on sequents still on the search path.

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <variant>

#include "letk/calculus.hpp"

namespace letk {

struct SearchBudget {
  std::uint64_t max_visited = 2'000'000;
  std::chrono::milliseconds time_limit{10'000};
};

struct SearchStats {
  std::uint64_t visited = 0;
  std::chrono::milliseconds elapsed{0};
};

struct Provable {
  SeqProofPtr proof;
  SearchStats stats;
};
struct Unprovable {
  std::set<Sequent> saturation;  // refuted sequents, always including the goal
  SearchStats stats;
};
struct BudgetExceeded {
  SearchStats stats;
};

using DecideResult = std::variant<Provable, Unprovable, BudgetExceeded>;

namespace detail {

struct OutOfBudget {};

struct Searcher {
  CalculusId id;
  SearchBudget budget;
  std::chrono::steady_clock::time_point start;
  std::uint64_t visited = 0;
  std::map<Sequent, SeqProofPtr> proved;
  std::set<Sequent> refuted;

  // Returns the proof if provable. On failure, `deps` receives the path
  // sequents the failure depended on (empty means the refutation is absolute).
  SeqProofPtr search(const Sequent& s, std::set<Sequent>& path, std::set<Sequent>& deps) {
    if (auto it = proved.find(s); it != proved.end()) return it->second;
    if (refuted.count(s)) return nullptr;
    if (path.count(s)) {
      deps.insert(s);
      return nullptr;
    }
    if (++visited > budget.max_visited) throw OutOfBudget{};
    if ((visited & 0x3ff) == 0 &&
        std::chrono::steady_clock::now() - start > budget.time_limit)
      throw OutOfBudget{};

    path.insert(s);
    std::set<Sequent> my_deps;
    SeqProofPtr found;
    for (auto& inst : rule_instances_backward(id, s)) {
      bool trivial = false;
      for (auto& p : inst.premises)
        if (p == s) { trivial = true; break; }
      if (trivial) continue;

      std::vector<SeqProofPtr> subs;
      bool ok = true;
      for (auto& p : inst.premises) {
        SeqProofPtr q = search(p, path, my_deps);
        if (!q) { ok = false; break; }
        subs.push_back(std::move(q));
      }
      if (!ok) continue;

      if (inst.rule == SeqRule::Id) {
        found = id_closure_proof(inst.principal, s, id);
      } else if (inst.rule == SeqRule::Exp0) {
        found = make_seq_node(s, SeqRule::Exp0, inst.principal, {});
      } else {
        found = make_seq_node(s, inst.rule, inst.principal, std::move(subs));
      }
      break;
    }
    path.erase(s);

    if (found) {
      proved.emplace(s, found);
      return found;
    }
    my_deps.erase(s);
    if (my_deps.empty())
      refuted.insert(s);
    else
      deps.insert(my_deps.begin(), my_deps.end());
    return nullptr;
  }
};

}  // namespace detail

inline DecideResult decide(const CalculusId& id, const Sequent& goal,
                           const SearchBudget& budget = {}) {
  detail::Searcher sr{id, budget, std::chrono::steady_clock::now()};
  auto stats_now = [&] {
    return SearchStats{sr.visited,
                       std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - sr.start)};
  };
  try {
    std::set<Sequent> path, deps;
    SeqProofPtr p = sr.search(goal, path, deps);
    if (p) return Provable{std::move(p), stats_now()};
    // At the top level the path is empty, so the goal's refutation is
    // absolute and has been cached.
    return Unprovable{std::move(sr.refuted), stats_now()};
  } catch (detail::OutOfBudget&) {
    return BudgetExceeded{stats_now()};
  }
}

// Every formula occurring anywhere in the proof must be a generalized
// subformula of the end sequent. Proofs containing Cut or Mix are rejected.
inline bool verify_gsf_property(const SeqProofPtr& p) {
  FormulaSet all = p->seq.ante;
  all.insert(p->seq.succ.begin(), p->seq.succ.end());
  FormulaSet closed = gsf_closure(all);

  struct Walk {
    static bool go(const SeqProofPtr& n, const FormulaSet& closed) {
      if (n->rule == SeqRule::Cut || n->rule == SeqRule::Mix) return false;
      for (auto& f : n->seq.ante)
        if (!contains(closed, f)) return false;
      for (auto& f : n->seq.succ)
        if (!contains(closed, f)) return false;
      for (auto& q : n->premises)
        if (!go(q, closed)) return false;
      return true;
    }
  };
  return Walk::go(p, closed);
}

// Independent provability oracle for small goals: bottom-up least fixpoint
// over every sequent built from the generalized subformulas of the goal.
// Exponential in the closure size; test use only.
inline bool provable_fixpoint(const CalculusId& id, const Sequent& goal) {
  FormulaSet all = goal.ante;
  all.insert(goal.succ.begin(), goal.succ.end());
  std::vector<Formula> g;
  for (auto& f : gsf_closure(all)) g.push_back(f);
  bool multi = !single_conclusion(id.calc);
  if (g.size() > (multi ? std::size_t{8} : std::size_t{12}))
    throw std::invalid_argument("fixpoint oracle: closure too large");

  std::vector<Sequent> space;
  std::uint64_t n = std::uint64_t{1} << g.size();
  for (std::uint64_t a = 0; a < n; ++a) {
    FormulaSet ante;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (a & (std::uint64_t{1} << i)) ante.insert(g[i]);
    if (multi) {
      for (std::uint64_t sset = 0; sset < n; ++sset) {
        FormulaSet succ;
        for (std::size_t i = 0; i < g.size(); ++i)
          if (sset & (std::uint64_t{1} << i)) succ.insert(g[i]);
        space.push_back({ante, std::move(succ)});
      }
    } else {
      space.push_back({ante, {}});
      for (auto& f : g) space.push_back({ante, {f}});
    }
  }

  std::set<Sequent> known;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& s : space) {
      if (known.count(s)) continue;
      for (auto& inst : rule_instances_backward(id, s)) {
        bool ok = true;
        for (auto& p : inst.premises)
          if (!known.count(p)) { ok = false; break; }
        if (ok) {
          known.insert(s);
          changed = true;
          break;
        }
      }
    }
  }
  return known.count(goal) > 0;
}

}  // namespace letk
