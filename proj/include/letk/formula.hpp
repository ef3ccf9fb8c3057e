#pragma once

// Formula trees for the LET languages: atoms, ~ (negation), @ (classicality),
// & , | and -> (the -> connective is absent from the LF language).
// All values are immutable; operations are pure functions.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace letk {

enum class Conn { Atom, Neg, Circ, And, Or, Imp };

enum class Language { LJ, LF };

// Reserved atom used by the `bot` abbreviation; not writable in user syntax.
inline const std::string kReservedFalsum = "_f";

class Formula {
 public:
  Formula() = default;  // null formula; only valid as a container placeholder

  static Formula atom(std::string name) {
    return Formula(std::make_shared<Node>(Node{Conn::Atom, std::move(name), {}, {}, 0}));
  }
  static Formula neg(Formula a) { return unary(Conn::Neg, std::move(a)); }
  static Formula circ(Formula a) { return unary(Conn::Circ, std::move(a)); }
  static Formula conj(Formula a, Formula b) { return binary(Conn::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Conn::Or, std::move(a), std::move(b)); }
  static Formula imp(Formula a, Formula b) { return binary(Conn::Imp, std::move(a), std::move(b)); }

  bool null() const { return !node_; }
  Conn tag() const { return node_->tag; }
  const std::string& atom_name() const { return node_->name; }
  Formula left() const { return Formula(node_->l); }   // unary operand or lhs
  Formula right() const { return Formula(node_->r); }

  bool is_atom() const { return node_->tag == Conn::Atom; }
  bool is(Conn c) const { return node_->tag == c; }

  std::size_t hash() const { return node_ ? node_->h : 0; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.node_->h != b.node_->h) return false;
    return a.cmp(b) == 0;
  }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    int c = a.cmp(b);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  struct Node {
    Conn tag;
    std::string name;
    std::shared_ptr<const Node> l, r;
    std::size_t h;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
  }

  static Formula unary(Conn c, Formula a) {
    auto n = std::make_shared<Node>(Node{c, {}, a.node_, {}, 0});
    n->h = mix(static_cast<std::size_t>(c) + 11, a.hash());
    return Formula(std::move(n));
  }
  static Formula binary(Conn c, Formula a, Formula b) {
    auto n = std::make_shared<Node>(Node{c, {}, a.node_, b.node_, 0});
    n->h = mix(mix(static_cast<std::size_t>(c) + 11, a.hash()), b.hash());
    return Formula(std::move(n));
  }

  int cmp(const Formula& o) const {
    const Node* x = node_.get();
    const Node* y = o.node_.get();
    if (x == y) return 0;
    if (!x) return -1;
    if (!y) return 1;
    if (x->tag != y->tag) return x->tag < y->tag ? -1 : 1;
    if (x->tag == Conn::Atom) return x->name.compare(y->name);
    int c = Formula(x->l).cmp(Formula(y->l));
    if (c != 0) return c;
    if (!x->r && !y->r) return 0;
    if (!x->r) return -1;
    if (!y->r) return 1;
    return Formula(x->r).cmp(Formula(y->r));
  }

  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

inline bool contains(const FormulaSet& s, const Formula& f) { return s.count(f) > 0; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// --- basic measures ---------------------------------------------------------

inline bool is_literal(const Formula& f) {
  return f.is_atom() || (f.is(Conn::Neg) && f.left().is_atom());
}

// Connective count; used as the complexity measure |A| for cutranks.
inline int complexity(const Formula& f) {
  switch (f.tag()) {
    case Conn::Atom: return 0;
    case Conn::Neg:
    case Conn::Circ: return 1 + complexity(f.left());
    default: return 1 + complexity(f.left()) + complexity(f.right());
  }
}

// The weight measure driving cut elimination: literals weigh 0, negations of
// compounds are measured through their components, and @A counts both A and ~A.
inline long weight(const Formula& f) {
  switch (f.tag()) {
    case Conn::Atom: return 0;
    case Conn::Circ: return weight(f.left()) + weight(Formula::neg(f.left())) + 1;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp: return weight(f.left()) + weight(f.right()) + 1;
    case Conn::Neg: {
      Formula g = f.left();
      switch (g.tag()) {
        case Conn::Atom: return 0;
        case Conn::Neg: return weight(g.left()) + 1;
        case Conn::Circ: return weight(g) + 1;
        default:
          return weight(Formula::neg(g.left())) + weight(Formula::neg(g.right())) + 1;
      }
    }
  }
  return 0;
}

inline bool contains_imp(const Formula& f) {
  switch (f.tag()) {
    case Conn::Atom: return false;
    case Conn::Imp: return true;
    case Conn::Neg:
    case Conn::Circ: return contains_imp(f.left());
    default: return contains_imp(f.left()) || contains_imp(f.right());
  }
}

inline bool admits(Language lang, const Formula& f) {
  return lang == Language::LJ || !contains_imp(f);
}

// `bot` expands to (@_f & ~_f) & _f over the reserved atom.
inline Formula bot_expansion() {
  Formula f = Formula::atom(kReservedFalsum);
  return Formula::conj(Formula::conj(Formula::circ(f), Formula::neg(f)), f);
}

// --- generalized subformulas -------------------------------------------------

// One-step generalized subformulas: A from ~A; A, B from A*B; ~A, ~B from
// ~(A*B); A, ~A from @A.
inline std::vector<Formula> gsf_one_step(const Formula& f) {
  std::vector<Formula> out;
  switch (f.tag()) {
    case Conn::Atom: break;
    case Conn::Circ:
      out.push_back(f.left());
      out.push_back(Formula::neg(f.left()));
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      out.push_back(f.left());
      out.push_back(f.right());
      break;
    case Conn::Neg: {
      Formula g = f.left();
      out.push_back(g);
      if (g.is(Conn::And) || g.is(Conn::Or) || g.is(Conn::Imp)) {
        out.push_back(Formula::neg(g.left()));
        out.push_back(Formula::neg(g.right()));
      }
      break;
    }
  }
  return out;
}

// Reflexive-transitive closure of the one-step relation.
inline FormulaSet gsf_closure(const FormulaSet& fs) {
  FormulaSet closed;
  std::vector<Formula> work(fs.begin(), fs.end());
  while (!work.empty()) {
    Formula f = work.back();
    work.pop_back();
    if (!closed.insert(f).second) continue;
    for (auto& g : gsf_one_step(f)) work.push_back(g);
  }
  return closed;
}

inline int subterm_count(const Formula& f) {
  switch (f.tag()) {
    case Conn::Atom: return 1;
    case Conn::Neg:
    case Conn::Circ: return 1 + subterm_count(f.left());
    default: return 1 + subterm_count(f.left()) + subterm_count(f.right());
  }
}

// --- concrete syntax ---------------------------------------------------------

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct ParseOptions {
  // Interchange files produced by the toolkit may mention the reserved atom;
  // user input may not.
  bool allow_reserved = false;
};

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, Language lang, ParseOptions opts)
      : text_(text), lang_(lang), opts_(opts) {}

  Formula run() {
    Formula f = parse_imp();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  bool peek_arrow() {
    skip_ws();
    return pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>';
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (peek_arrow()) {
      if (lang_ == Language::LF) fail("'->' is not in the LF language");
      pos_ += 2;
      return Formula::imp(lhs, parse_imp());  // right-associative
    }
    return lhs;
  }
  Formula parse_or() {
    Formula f = parse_and();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') { ++pos_; f = Formula::disj(f, parse_and()); }
      else break;
    }
    return f;
  }
  Formula parse_and() {
    Formula f = parse_unary();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '&') { ++pos_; f = Formula::conj(f, parse_unary()); }
      else break;
    }
    return f;
  }
  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '~') { ++pos_; return Formula::neg(parse_unary()); }
    if (c == '@') { ++pos_; return Formula::circ(parse_unary()); }
    if (c == '(') {
      ++pos_;
      Formula f = parse_imp();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (c == '_') fail("atoms starting with '_' are reserved");
    if (c >= 'a' && c <= 'z') return parse_atom();
    fail(std::string("unexpected character '") + c + "'");
  }
  Formula parse_atom() {
    std::size_t start = pos_;
    ++pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "bot") return bot_expansion();
    return Formula::atom(name);
  }

 protected:
  friend Formula parse_reserved_aware(std::string_view, Language, ParseOptions);

  std::string_view text_;
  Language lang_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

inline Formula parse_reserved_aware(std::string_view text, Language lang, ParseOptions opts) {
  if (opts.allow_reserved) {
    // Accept the reserved atom verbatim (interchange files only).
    std::string patched(text);
    // Cheap approach: temporarily rename `_f` to a parseable token.
    const std::string token = "zzreservedfalsumzz";
    for (std::size_t i = 0; (i = patched.find(kReservedFalsum, i)) != std::string::npos;) {
      bool left_ok = i == 0 || !(std::isalnum(static_cast<unsigned char>(patched[i - 1])) ||
                                 patched[i - 1] == '_');
      std::size_t j = i + kReservedFalsum.size();
      bool right_ok = j >= patched.size() ||
                      !(std::isalnum(static_cast<unsigned char>(patched[j])) || patched[j] == '_');
      if (left_ok && right_ok) {
        patched.replace(i, kReservedFalsum.size(), token);
        i += token.size();
      } else {
        ++i;
      }
    }
    Formula raw = Parser(patched, lang, opts).run();
    // Map the token back to the reserved atom.
    struct Fix {
      static Formula go(const Formula& f, const std::string& token) {
        switch (f.tag()) {
          case Conn::Atom:
            return f.atom_name() == token ? Formula::atom(kReservedFalsum) : f;
          case Conn::Neg: return Formula::neg(go(f.left(), token));
          case Conn::Circ: return Formula::circ(go(f.left(), token));
          case Conn::And: return Formula::conj(go(f.left(), token), go(f.right(), token));
          case Conn::Or: return Formula::disj(go(f.left(), token), go(f.right(), token));
          case Conn::Imp: return Formula::imp(go(f.left(), token), go(f.right(), token));
        }
        return f;
      }
    };
    return Fix::go(raw, token);
  }
  return Parser(text, lang, opts).run();
}

}  // namespace detail

inline Formula parse(std::string_view text, Language lang = Language::LJ,
                     ParseOptions opts = {}) {
  return detail::parse_reserved_aware(text, lang, opts);
}

// --- rendering ---------------------------------------------------------------

enum class RenderFormat { Ascii, Unicode, Latex };

namespace detail {

// Precedence levels: -> 1, | 2, & 3, unary 4, atom 5.
inline int prec(const Formula& f) {
  switch (f.tag()) {
    case Conn::Imp: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    case Conn::Neg:
    case Conn::Circ: return 4;
    case Conn::Atom: return 5;
  }
  return 5;
}

inline std::string render_rec(const Formula& f, RenderFormat fmt, int min_prec) {
  if (f == bot_expansion()) {
    switch (fmt) {
      case RenderFormat::Ascii: return "bot";
      case RenderFormat::Unicode: return "⊥";
      case RenderFormat::Latex: return "\\bot";
    }
  }
  auto wrap = [&](std::string s, int p) {
    if (p < min_prec) {
      if (fmt == RenderFormat::Latex) return "(" + s + ")";
      return "(" + s + ")";
    }
    return s;
  };
  switch (f.tag()) {
    case Conn::Atom:
      if (fmt == RenderFormat::Latex && f.atom_name().find('_') != std::string::npos) {
        std::string n = f.atom_name();
        return n;  // reserved atom rendered verbatim; callers using bot never hit this
      }
      return f.atom_name();
    case Conn::Neg: {
      std::string inner = render_rec(f.left(), fmt, 4);
      switch (fmt) {
        case RenderFormat::Ascii: return wrap("~" + inner, 4);
        case RenderFormat::Unicode: return wrap("¬" + inner, 4);
        case RenderFormat::Latex: {
          bool sep = !inner.empty() && inner[0] != '\\' && inner[0] != '(';
          return wrap(std::string("\\neg") + (sep ? " " : "") + inner, 4);
        }
      }
      break;
    }
    case Conn::Circ: {
      std::string inner = render_rec(f.left(), fmt, 4);
      switch (fmt) {
        case RenderFormat::Ascii: return wrap("@" + inner, 4);
        case RenderFormat::Unicode: return wrap("∘" + inner, 4);
        case RenderFormat::Latex: {
          bool sep = !inner.empty() && inner[0] != '\\' && inner[0] != '(';
          return wrap(std::string("\\circ") + (sep ? " " : "") + inner, 4);
        }
      }
      break;
    }
    case Conn::And:
    case Conn::Or:
    case Conn::Imp: {
      int p = prec(f);
      // & and | are left-associative, -> is right-associative.
      int lp = f.is(Conn::Imp) ? p + 1 : p;
      int rp = f.is(Conn::Imp) ? p : p + 1;
      std::string op;
      switch (fmt) {
        case RenderFormat::Ascii:
          op = f.is(Conn::And) ? " & " : f.is(Conn::Or) ? " | " : " -> ";
          break;
        case RenderFormat::Unicode:
          op = f.is(Conn::And) ? " ∧ " : f.is(Conn::Or) ? " ∨ " : " → ";
          break;
        case RenderFormat::Latex:
          op = f.is(Conn::And) ? " \\land " : f.is(Conn::Or) ? " \\lor " : " \\to ";
          break;
      }
      return wrap(render_rec(f.left(), fmt, lp) + op + render_rec(f.right(), fmt, rp), p);
    }
  }
  return {};
}

}  // namespace detail

inline std::string render(const Formula& f, RenderFormat fmt = RenderFormat::Ascii) {
  return detail::render_rec(f, fmt, 0);
}

}  // namespace letk
