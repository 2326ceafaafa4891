//
// Copyright 2026 The prunevc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Hash-consed first-order terms.
//
// Every term lives in a Session. Structurally equal terms built in one
// session share a single node, so `Term` equality is pointer equality.
// Formulas and terms share one representation: logical connectives are
// ordinary heads with children.

#ifndef PRUNEVC_TERM_HPP_
#define PRUNEVC_TERM_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prunevc/errors.hpp"

namespace prunevc {

enum class SymbolKind {
  kConnective,             // and, or, not
  kQuantifier,             // forall, exists
  kInterpretedConstant,    // true, false, integer literals
  kUninterpretedConstant,  // any other zero-arity symbol
  kFunction,               // any other symbol applied to arguments
};

std::string_view to_string(SymbolKind kind);

struct Symbol {
  std::string text;
  SymbolKind kind;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// Kind of `text` used as a head with `arity` children.
SymbolKind classify_symbol(std::string_view text, std::size_t arity);

bool is_integer_literal(std::string_view text);

// True for words that can never name an uninterpreted constant.
bool is_reserved_word(std::string_view text);

namespace detail {
struct TermNode;
}  // namespace detail

// Handle to an interned node. Cheap to copy; valid while its Session lives.
class Term {
 public:
  Term() = default;

  const std::string& head() const;
  SymbolKind kind() const;
  Symbol symbol() const;
  std::span<const Term> children() const;
  std::size_t arity() const { return children().size(); }
  const Term& child(std::size_t i) const { return children()[i]; }
  // Session-unique identity, assigned in interning order.
  std::uint32_t id() const;

  bool is_null() const { return node_ == nullptr; }
  bool is(std::string_view text) const { return node_ != nullptr && head() == text; }
  bool is_constant() const {
    return kind() == SymbolKind::kUninterpretedConstant;
  }

  friend bool operator==(Term a, Term b) { return a.node_ == b.node_; }

 private:
  friend class Session;
  explicit Term(const detail::TermNode* node) : node_(node) {}

  const detail::TermNode* node_ = nullptr;
};

namespace detail {
struct TermNode {
  std::string head;
  SymbolKind kind;
  std::vector<Term> children;
  std::uint32_t id;
};
}  // namespace detail

inline const std::string& Term::head() const { return node_->head; }
inline SymbolKind Term::kind() const { return node_->kind; }
inline std::span<const Term> Term::children() const { return node_->children; }
inline std::uint32_t Term::id() const { return node_->id; }

}  // namespace prunevc

template <>
struct std::hash<prunevc::Term> {
  std::size_t operator()(prunevc::Term t) const noexcept {
    return t.is_null() ? 0 : std::hash<std::uint32_t>{}(t.id());
  }
};

namespace prunevc {

// Heads whose argument order is irrelevant. Defaults to {and, or}.
class CommutativityRegistry {
 public:
  CommutativityRegistry() : symbols_{"and", "or"} {}
  explicit CommutativityRegistry(std::set<std::string, std::less<>> symbols)
      : symbols_(std::move(symbols)) {}

  bool is_commutative(std::string_view head) const {
    return symbols_.find(head) != symbols_.end();
  }
  void add(std::string symbol) { symbols_.insert(std::move(symbol)); }
  const std::set<std::string, std::less<>>& symbols() const { return symbols_; }

 private:
  std::set<std::string, std::less<>> symbols_;
};

// Owns every node created for one pruning job. Not thread-safe.
class Session {
 public:
  Session() = default;
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Returns the unique node for (head, children). Children must come from
  // this session. Throws std::invalid_argument when an interpreted constant
  // is given children.
  Term intern(std::string_view head, std::span<const Term> children = {});
  Term intern(std::string_view head, std::initializer_list<Term> children) {
    return intern(head, std::span<const Term>(children.begin(), children.size()));
  }

  Term constant(std::string_view name) { return intern(name); }
  Term true_term() { return intern("true"); }
  Term false_term() { return intern("false"); }
  Term make_and(std::span<const Term> children) { return intern("and", children); }
  Term make_or(std::span<const Term> children) { return intern("or", children); }
  Term make_and(std::initializer_list<Term> children) { return intern("and", children); }
  Term make_or(std::initializer_list<Term> children) { return intern("or", children); }
  Term make_not(Term t) { return intern("not", {t}); }

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Key {
    std::string head;
    std::vector<std::uint32_t> children;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept;
  };

  std::deque<detail::TermNode> nodes_;
  std::unordered_map<Key, const detail::TermNode*, KeyHash> table_;
};

// ---------------------------------------------------------------------------
// Text form.

// Parses one formula. Throws ParseError with a 1-based line/column.
Term parse_term(Session& session, std::string_view text);

// Canonical single-line rendering; parse_term(print_term(t)) == t.
std::string print_term(Term t);

// ---------------------------------------------------------------------------
// Ordering and normalization.

// Orders by head text (bytewise), then lexicographically by children.
std::strong_ordering compare_terms(Term a, Term b);

// Recursively sorts the children of commutative heads by compare_terms.
Term normalize(Session& session, Term t, const CommutativityRegistry& registry = {});

// ---------------------------------------------------------------------------
// Renaming of uninterpreted constants.

class Substitution {
 public:
  Substitution() = default;

  // Throws ConfigError if either side is not an uninterpreted-constant name,
  // if `from` is already mapped, or if `to` is already an image.
  void add(std::string from, std::string to);

  bool empty() const { return mapping_.empty(); }
  std::size_t size() const { return mapping_.size(); }
  // nullptr when `name` is not in the domain.
  const std::string* find(std::string_view name) const;
  // Sorted by source name.
  const std::map<std::string, std::string, std::less<>>& mapping() const {
    return mapping_;
  }

  // One "old new" line per pair, sorted by old name.
  std::string to_text() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, std::string, std::less<>> mapping_;
  std::set<std::string, std::less<>> images_;
};

// Replaces each constant occurrence in the domain of `subst` simultaneously.
// Re-validates the substitution and throws ConfigError when it touches
// anything but uninterpreted constants.
Term apply_substitution(Session& session, Term t, const Substitution& subst);

// ---------------------------------------------------------------------------
// Boolean constant folding, iterated to a fixpoint.
Term simplify(Session& session, Term t);

// Splices `and` children of `and` nodes and `or` children of `or` nodes into
// their parent, at every depth.
Term flatten_connectives(Session& session, Term t);

// Uninterpreted constants occurring in `t`, sorted by name.
std::set<std::string> collect_constants(Term t);

// Number of nodes in the tree view of `t` (shared subterms counted per use).
std::size_t tree_size(Term t);

}  // namespace prunevc

#endif  // PRUNEVC_TERM_HPP_
