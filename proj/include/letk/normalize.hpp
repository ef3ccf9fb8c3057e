#pragma once

// Segment analysis and normalization for the natural deduction systems:
// detour conversions, permutation conversions over del-rules, simplification
// of redundant del applications, and lowering of EXP/CONS consequences.

#include <cstdint>
#include <stdexcept>

#include "letk/deduction.hpp"

namespace letk {

struct NDSegment {
  std::vector<NDPath> nodes;  // occurrence chain, topmost first
  Formula formula;
  std::size_t length = 0;
  bool is_maximal = false;
  int cutrank = 0;
};

namespace detail {

inline bool starts_like_redex(const DedPtr& n) {
  return !n->is_assumption && (nd_intro_rule(n->rule) || n->rule == NDRule::Exp ||
                               n->rule == NDRule::Cons);
}

inline void collect_segments(const DedPtr& root, const DedPtr& node, NDPath& path,
                             std::vector<NDSegment>& out) {
  for (std::size_t i = 0; i < node->premises.size(); ++i) {
    path.push_back(i);
    collect_segments(root, node->premises[i], path, out);
    path.pop_back();
  }
  // a segment starts at every occurrence that is not a del-rule conclusion
  if (!node->is_assumption && nd_del_rule(node->rule)) return;
  NDSegment seg;
  seg.formula = node->formula;
  seg.nodes.push_back(path);
  NDPath cur = path;
  while (!cur.empty()) {
    std::size_t slot = cur.back();
    NDPath parent(cur.begin(), cur.end() - 1);
    DedPtr pn = nd_node_at(root, parent);
    auto minors = nd_del_minors(pn->rule);
    if (pn->is_assumption ||
        std::find(minors.begin(), minors.end(), slot) == minors.end())
      break;
    seg.nodes.push_back(parent);
    cur = parent;
  }
  seg.length = seg.nodes.size();
  const NDPath& end = seg.nodes.back();
  if (!end.empty()) {
    NDPath parent(end.begin(), end.end() - 1);
    DedPtr pn = nd_node_at(root, parent);
    bool at_major = !pn->is_assumption && nd_elim_rule(pn->rule) && end.back() == 0;
    seg.is_maximal = at_major && (seg.length > 1 || starts_like_redex(node));
  }
  seg.cutrank = seg.is_maximal ? static_cast<int>(complexity(seg.formula)) : 0;
  out.push_back(std::move(seg));
}

}  // namespace detail

inline std::vector<NDSegment> find_segments(const DedPtr& d) {
  std::vector<NDSegment> out;
  NDPath path;
  detail::collect_segments(d, d, path, out);
  return out;
}

inline int nd_cutrank(const DedPtr& d) {
  int n = 0;
  for (auto& s : find_segments(d)) n = std::max(n, s.cutrank);
  return n;
}

inline bool nd_normal(const DedPtr& d) {
  for (auto& s : find_segments(d))
    if (s.is_maximal) return false;
  return true;
}

namespace detail {

inline bool class_empty(const DedPtr& subtree, int marker) {
  if (subtree->is_assumption) return subtree->marker != marker;
  for (auto& p : subtree->premises)
    if (!class_empty(p, marker)) return false;
  return true;
}

// A del application with an undischarged minor is redundant: that minor
// already proves the conclusion on its own.
inline std::optional<std::size_t> redundant_minor(const DedPtr& n) {
  if (n->is_assumption || !nd_del_rule(n->rule)) return std::nullopt;
  auto minors = nd_del_minors(n->rule);
  for (std::size_t i = 0; i < minors.size(); ++i)
    if (class_empty(n->premises[minors[i]], n->discharges[i])) return minors[i];
  return std::nullopt;
}

inline std::optional<NDPath> find_redundant(const DedPtr& n, NDPath& path) {
  if (redundant_minor(n)) return path;
  for (std::size_t i = 0; i < n->premises.size(); ++i) {
    path.push_back(i);
    auto hit = find_redundant(n->premises[i], path);
    path.pop_back();
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace detail

// Remove redundant del applications to fixpoint.
inline DedPtr nd_simplify(DedPtr d) {
  for (;;) {
    NDPath path;
    auto hit = detail::find_redundant(d, path);
    if (!hit) return d;
    DedPtr node = nd_node_at(d, *hit);
    std::size_t minor = *detail::redundant_minor(node);
    d = nd_replace_at(d, *hit, node->premises[minor]);
  }
}

enum class NDConversion { Detour, Permutation, Simplification };

namespace detail {

// Detour at the elimination node `e` whose major premise is the redex.
inline DedPtr detour_convert(const DedPtr& e, int& counter) {
  const DedPtr& red = e->premises[0];
  if (red->is_assumption) throw std::invalid_argument("detour: major premise is open");
  if (red->rule == NDRule::Exp || red->rule == NDRule::Cons)
    // retarget the explosion at the elimination's conclusion; the other
    // premises of the elimination are dropped
    return nd_infer(red->rule, e->formula, red->premises);
  switch (e->rule) {
    case NDRule::AndE1:
      if (red->rule != NDRule::AndI) break;
      return red->premises[0];
    case NDRule::AndE2:
      if (red->rule != NDRule::AndI) break;
      return red->premises[1];
    case NDRule::OrE: {
      std::size_t i = red->rule == NDRule::OrI1 ? 0 : red->rule == NDRule::OrI2 ? 1 : 2;
      if (i == 2) break;
      return nd_substitute(e->premises[1 + i], e->discharges[i], red->premises[0], counter);
    }
    case NDRule::ToE:
      if (red->rule != NDRule::ToI) break;
      return nd_substitute(red->premises[0], red->discharges[0], e->premises[1], counter);
    case NDRule::NegAndE: {
      std::size_t i = red->rule == NDRule::NegAndI1 ? 0
                      : red->rule == NDRule::NegAndI2 ? 1 : 2;
      if (i == 2) break;
      return nd_substitute(e->premises[1 + i], e->discharges[i], red->premises[0], counter);
    }
    case NDRule::NegOrE1:
      if (red->rule != NDRule::NegOrI) break;
      return red->premises[0];
    case NDRule::NegOrE2:
      if (red->rule != NDRule::NegOrI) break;
      return red->premises[1];
    case NDRule::NegToE1:
      if (red->rule != NDRule::NegToI) break;
      return red->premises[0];
    case NDRule::NegToE2:
      if (red->rule != NDRule::NegToI) break;
      return red->premises[1];
    case NDRule::NegNegE:
      if (red->rule != NDRule::NegNegI) break;
      return red->premises[0];
    default:
      break;
  }
  throw std::invalid_argument("detour: site does not match a redex pattern");
}

// Permutation at the elimination node `e` whose major premise is a del
// application: `e` is duplicated into the del's minors.
inline DedPtr permute_convert(const DedPtr& e, int& counter) {
  const DedPtr& del = e->premises[0];
  if (del->is_assumption || !nd_del_rule(del->rule))
    throw std::invalid_argument("permutation: major premise is not a del application");
  std::vector<DedPtr> prems = del->premises;
  for (std::size_t m : nd_del_minors(del->rule)) {
    std::vector<DedPtr> eprems = e->premises;
    eprems[0] = prems[m];
    DedPtr copy = nd_infer(e->rule, e->formula, std::move(eprems), e->discharges);
    prems[m] = nd_freshen_bound(copy, counter);
  }
  return nd_infer(del->rule, e->formula, std::move(prems), del->discharges);
}

}  // namespace detail

inline DedPtr apply_conversion(const DedPtr& root, const NDPath& site, NDConversion kind,
                               int& counter) {
  DedPtr node = nd_node_at(root, site);
  switch (kind) {
    case NDConversion::Detour:
      return nd_replace_at(root, site, detail::detour_convert(node, counter));
    case NDConversion::Permutation:
      return nd_replace_at(root, site, detail::permute_convert(node, counter));
    case NDConversion::Simplification: {
      auto minor = detail::redundant_minor(node);
      if (!minor) throw std::invalid_argument("simplification: no empty discharge class");
      return nd_replace_at(root, site, node->premises[*minor]);
    }
  }
  throw std::invalid_argument("unknown conversion");
}

namespace detail {

inline bool exp_consequence_ok(const Formula& f) {
  return is_literal(f) || f.tag() == Conn::Circ ||
         (f.tag() == Conn::Neg && f.left().tag() == Conn::Circ);
}

inline void collect_offending(const DedPtr& n, NDPath& path, std::vector<NDPath>& out,
                              std::vector<int>& ranks) {
  for (std::size_t i = 0; i < n->premises.size(); ++i) {
    path.push_back(i);
    collect_offending(n->premises[i], path, out, ranks);
    path.pop_back();
  }
  if (!n->is_assumption && (n->rule == NDRule::Exp || n->rule == NDRule::Cons) &&
      !exp_consequence_ok(n->formula)) {
    out.push_back(path);
    ranks.push_back(static_cast<int>(complexity(n->formula)));
  }
}

// Split one explosion into explosions with strictly simpler consequences.
inline DedPtr lower_one(const DedPtr& node, int& counter) {
  auto child = [&](const Formula& target, bool fresh) {
    std::vector<DedPtr> prems = node->premises;
    if (fresh)
      for (auto& p : prems) p = nd_freshen_bound(p, counter);
    return nd_infer(node->rule, target, std::move(prems));
  };
  const Formula& b = node->formula;
  switch (b.tag()) {
    case Conn::And:
      return nd_infer(NDRule::AndI, b, {child(b.left(), false), child(b.right(), true)});
    case Conn::Or:
      return nd_infer(NDRule::OrI1, b, {child(b.left(), false)});
    case Conn::Imp:
      // the discharged class is empty
      return nd_infer(NDRule::ToI, b, {child(b.right(), false)}, {++counter});
    case Conn::Neg: {
      Formula g = b.left();
      switch (g.tag()) {
        case Conn::And:
          return nd_infer(NDRule::NegAndI1, b, {child(Formula::neg(g.left()), false)});
        case Conn::Or:
          return nd_infer(NDRule::NegOrI, b,
                          {child(Formula::neg(g.left()), false),
                           child(Formula::neg(g.right()), true)});
        case Conn::Imp:
          return nd_infer(NDRule::NegToI, b,
                          {child(g.left(), false),
                           child(Formula::neg(g.right()), true)});
        case Conn::Neg:
          return nd_infer(NDRule::NegNegI, b, {child(g.left(), false)});
        default:
          break;
      }
      break;
    }
    default:
      break;
  }
  throw std::logic_error("lower_one: consequence already admissible");
}

}  // namespace detail

// Split every EXP (and CONS) application whose consequence is compound into
// applications with strictly simpler consequences, to fixpoint; afterwards
// every consequence is a literal, @B or ~@B.
inline DedPtr lower_exp_consequences(DedPtr d) {
  int counter = nd_max_marker(d);
  for (;;) {
    std::vector<NDPath> sites;
    std::vector<int> ranks;
    NDPath path;
    detail::collect_offending(d, path, sites, ranks);
    if (sites.empty()) return d;
    int c = *std::max_element(ranks.begin(), ranks.end());
    // choose a topmost offender of maximal complexity: none of equal
    // complexity in its premise subtrees
    std::size_t pick = sites.size();
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (ranks[i] != c) continue;
      bool top = true;
      for (std::size_t j = 0; j < sites.size(); ++j) {
        if (j == i || ranks[j] != c) continue;
        if (sites[j].size() > sites[i].size() &&
            std::equal(sites[i].begin(), sites[i].end(), sites[j].begin())) {
          top = false;
          break;
        }
      }
      if (top) { pick = i; break; }
    }
    DedPtr node = nd_node_at(d, sites[pick]);
    d = nd_replace_at(d, sites[pick], detail::lower_one(node, counter));
  }
}

struct NormalizeStats {
  std::vector<std::pair<int, std::size_t>> trace;  // (cutrank, critical length sum)
  std::uint64_t conversions = 0;
  std::uint64_t measure_violations = 0;
};

namespace detail {

inline std::pair<int, std::size_t> nd_measure(const std::vector<NDSegment>& segs) {
  int n = 0;
  for (auto& s : segs)
    if (s.is_maximal) n = std::max(n, s.cutrank);
  std::size_t m = 0;
  for (auto& s : segs)
    if (s.is_maximal && s.cutrank == n) m += s.length;
  return {n, m};
}

inline bool path_under(const NDPath& p, const NDPath& prefix) {
  return p.size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), p.begin());
}

// A critical cut may be converted only when no other critical cut occupies
// the region its conversion duplicates: for a detour, the whole subtree above
// the elimination; for a permutation, the elimination's side subtrees.
inline bool eligible(const NDSegment& s, const std::vector<const NDSegment*>& criticals,
                     const DedPtr& root) {
  NDPath epath(s.nodes.back().begin(), s.nodes.back().end() - 1);
  DedPtr e = nd_node_at(root, epath);
  std::vector<NDPath> danger;
  for (std::size_t i = s.length > 1 ? 1 : 0; i < e->premises.size(); ++i) {
    NDPath p = epath;
    p.push_back(i);
    danger.push_back(std::move(p));
  }
  for (const NDSegment* t : criticals) {
    if (t == &s) continue;
    if (t->nodes.back() == s.nodes.back()) continue;  // same redex family
    for (auto& n : t->nodes)
      for (auto& pre : danger)
        if (path_under(n, pre)) return false;
  }
  return true;
}

}  // namespace detail

inline DedPtr normalize(NDSystem sys, DedPtr d, NormalizeStats* stats = nullptr) {
  (void)sys;
  int counter = nd_max_marker(d);
  d = lower_exp_consequences(d);
  d = nd_simplify(d);
  counter = std::max(counter, nd_max_marker(d));
  std::pair<int, std::size_t> prev{0, 0};
  bool have_prev = false;
  for (std::uint64_t iter = 0;; ++iter) {
    if (iter > 200000) throw std::runtime_error("normalize: conversion budget exhausted");
    auto segs = find_segments(d);
    auto measure = detail::nd_measure(segs);
    if (stats) stats->trace.push_back(measure);
    if (have_prev && measure >= prev && stats) ++stats->measure_violations;
    prev = measure;
    have_prev = true;
    std::vector<const NDSegment*> criticals;
    for (auto& s : segs)
      if (s.is_maximal && s.cutrank == measure.first) criticals.push_back(&s);
    if (measure.second == 0 || criticals.empty()) return d;
    // rightmost end node first
    std::sort(criticals.begin(), criticals.end(),
              [](const NDSegment* a, const NDSegment* b) {
                return b->nodes.back() < a->nodes.back();
              });
    const NDSegment* pick = criticals.front();
    for (const NDSegment* s : criticals)
      if (detail::eligible(*s, criticals, d)) { pick = s; break; }
    NDPath epath(pick->nodes.back().begin(), pick->nodes.back().end() - 1);
    d = apply_conversion(d, epath,
                         pick->length > 1 ? NDConversion::Permutation
                                          : NDConversion::Detour,
                         counter);
    d = nd_simplify(d);
    if (stats) ++stats->conversions;
  }
}

}  // namespace letk
