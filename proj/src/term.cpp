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

#include "prunevc/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace prunevc {

namespace {

constexpr std::array<std::string_view, 8> kOperatorTokens = {
    ">", ">=", "<", "<=", "=", "+", "-", "*"};

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  const auto first = static_cast<unsigned char>(text.front());
  if (!std::isalpha(first) && first != '_') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '.' || c == '$';
  });
}

bool is_symbol_token(std::string_view text) {
  return is_identifier(text) ||
         std::find(kOperatorTokens.begin(), kOperatorTokens.end(), text) !=
             kOperatorTokens.end();
}

}  // namespace

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::kConnective: return "connective";
    case SymbolKind::kQuantifier: return "quantifier";
    case SymbolKind::kInterpretedConstant: return "interpreted-constant";
    case SymbolKind::kUninterpretedConstant: return "uninterpreted-constant";
    case SymbolKind::kFunction: return "function";
  }
  return "unknown";
}

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

bool is_reserved_word(std::string_view text) {
  return text == "and" || text == "or" || text == "not" || text == "true" ||
         text == "false" || text == "forall" || text == "exists";
}

SymbolKind classify_symbol(std::string_view text, std::size_t arity) {
  if (text == "and" || text == "or" || text == "not") return SymbolKind::kConnective;
  if (text == "forall" || text == "exists") return SymbolKind::kQuantifier;
  if (text == "true" || text == "false" || is_integer_literal(text)) {
    return SymbolKind::kInterpretedConstant;
  }
  return arity == 0 ? SymbolKind::kUninterpretedConstant : SymbolKind::kFunction;
}

Symbol Term::symbol() const { return Symbol{head(), kind()}; }

// ---------------------------------------------------------------------------
// Interning.

std::size_t Session::KeyHash::operator()(const Key& key) const noexcept {
  std::size_t h = std::hash<std::string>{}(key.head);
  for (std::uint32_t id : key.children) {
    h ^= std::hash<std::uint32_t>{}(id) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Term Session::intern(std::string_view head, std::span<const Term> children) {
  Key key{std::string(head), {}};
  key.children.reserve(children.size());
  for (Term c : children) {
    if (c.is_null()) throw std::invalid_argument("intern: null child term");
    key.children.push_back(c.id());
  }
  if (auto it = table_.find(key); it != table_.end()) return Term(it->second);

  const SymbolKind kind = classify_symbol(head, children.size());
  if (kind == SymbolKind::kInterpretedConstant && !children.empty()) {
    throw std::invalid_argument("intern: interpreted constant '" + key.head +
                                "' cannot take arguments");
  }
  if (nodes_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("intern: session term limit reached");
  }
  nodes_.push_back(detail::TermNode{key.head, kind,
                                    std::vector<Term>(children.begin(), children.end()),
                                    static_cast<std::uint32_t>(nodes_.size())});
  const detail::TermNode* node = &nodes_.back();
  table_.emplace(std::move(key), node);
  return Term(node);
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

struct Token {
  enum class Kind { kOpen, kClose, kAtom, kEnd };
  Kind kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blanks();
    const std::size_t line = line_;
    const std::size_t column = column_;
    if (pos_ >= text_.size()) return {Token::Kind::kEnd, {}, line, column};
    const char c = text_[pos_];
    if (c == '(' || c == ')') {
      advance();
      return {c == '(' ? Token::Kind::kOpen : Token::Kind::kClose,
              text_.substr(pos_ - 1, 1), line, column};
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) advance();
    return {Token::Kind::kAtom, text_.substr(start, pos_ - start), line, column};
  }

 private:
  static bool is_delimiter(char c) {
    return c == '(' || c == ')' || c == ';' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(Session& session, std::string_view text) : session_(session), lexer_(text) {}

  Term parse_single() {
    Token tok = lexer_.next();
    Term t = parse(tok);
    Token rest = lexer_.next();
    if (rest.kind != Token::Kind::kEnd) {
      throw ParseError("unexpected trailing input '" + std::string(rest.text) + "'",
                       rest.line, rest.column);
    }
    return t;
  }

 private:
  static void check_atom(const Token& tok) {
    if (!is_symbol_token(tok.text) && !is_integer_literal(tok.text)) {
      throw ParseError("invalid symbol '" + std::string(tok.text) + "'", tok.line,
                       tok.column);
    }
  }

  Term parse(const Token& tok) {
    switch (tok.kind) {
      case Token::Kind::kEnd:
        throw ParseError("unexpected end of input", tok.line, tok.column);
      case Token::Kind::kClose:
        throw ParseError("unexpected ')'", tok.line, tok.column);
      case Token::Kind::kAtom:
        check_atom(tok);
        return session_.intern(tok.text);
      case Token::Kind::kOpen:
        break;
    }

    const Token head = lexer_.next();
    if (head.kind != Token::Kind::kAtom) {
      throw ParseError("expected a symbol after '('", head.line, head.column);
    }
    check_atom(head);
    if (classify_symbol(head.text, 1) == SymbolKind::kInterpretedConstant) {
      throw ParseError("'" + std::string(head.text) + "' cannot take arguments",
                       head.line, head.column);
    }

    std::vector<Term> children;
    for (Token tok2 = lexer_.next(); tok2.kind != Token::Kind::kClose;
         tok2 = lexer_.next()) {
      if (tok2.kind == Token::Kind::kEnd) {
        throw ParseError("missing ')' for '(' opened here", tok.line, tok.column);
      }
      children.push_back(parse(tok2));
    }

    if (head.text == "not" && children.size() != 1) {
      throw ParseError("'not' takes exactly 1 argument, got " +
                           std::to_string(children.size()),
                       head.line, head.column);
    }
    if ((head.text == "forall" || head.text == "exists") &&
        (children.size() < 2 || !children.front().is_constant())) {
      throw ParseError("'" + std::string(head.text) +
                           "' expects a bound constant followed by a body",
                       head.line, head.column);
    }
    return session_.intern(head.text, children);
  }

  Session& session_;
  Lexer lexer_;
};

void print_into(Term t, std::string& out) {
  if (t.arity() == 0 && t.kind() != SymbolKind::kConnective &&
      t.kind() != SymbolKind::kQuantifier) {
    out += t.head();
    return;
  }
  out += '(';
  out += t.head();
  for (Term c : t.children()) {
    out += ' ';
    print_into(c, out);
  }
  out += ')';
}

}  // namespace

Term parse_term(Session& session, std::string_view text) {
  return Parser(session, text).parse_single();
}

std::string print_term(Term t) {
  std::string out;
  print_into(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Ordering and normalization.

std::strong_ordering compare_terms(Term a, Term b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a.head().compare(b.head()); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const auto ac = a.children();
  const auto bc = b.children();
  const std::size_t n = std::min(ac.size(), bc.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare_terms(ac[i], bc[i]); c != 0) return c;
  }
  return ac.size() <=> bc.size();
}

namespace {

class Normalizer {
 public:
  Normalizer(Session& session, const CommutativityRegistry& registry)
      : session_(session), registry_(registry) {}

  Term run(Term t) {
    if (t.arity() == 0 && !t.is("and") && !t.is("or")) return t;
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    std::vector<Term> children;
    children.reserve(t.arity());
    for (Term c : t.children()) children.push_back(run(c));
    if (registry_.is_commutative(t.head())) {
      std::stable_sort(children.begin(), children.end(),
                       [](Term x, Term y) { return compare_terms(x, y) < 0; });
    }
    Term result = session_.intern(t.head(), children);
    memo_.emplace(t, result);
    return result;
  }

 private:
  Session& session_;
  const CommutativityRegistry& registry_;
  std::unordered_map<Term, Term> memo_;
};

}  // namespace

Term normalize(Session& session, Term t, const CommutativityRegistry& registry) {
  return Normalizer(session, registry).run(t);
}

// ---------------------------------------------------------------------------
// Substitution.

namespace {

void check_renamable(std::string_view name) {
  if (name.empty() || is_reserved_word(name) || is_integer_literal(name)) {
    throw ConfigError("substitution may only rename uninterpreted constants, got '" +
                      std::string(name) + "'");
  }
}

}  // namespace

void Substitution::add(std::string from, std::string to) {
  check_renamable(from);
  check_renamable(to);
  if (mapping_.count(from) != 0) {
    throw ConfigError("substitution maps '" + from + "' twice");
  }
  if (images_.count(to) != 0) {
    throw ConfigError("substitution is not injective: '" + to +
                      "' is the image of two constants");
  }
  images_.insert(to);
  mapping_.emplace(std::move(from), std::move(to));
}

const std::string* Substitution::find(std::string_view name) const {
  auto it = mapping_.find(name);
  return it == mapping_.end() ? nullptr : &it->second;
}

std::string Substitution::to_text() const {
  std::string out;
  for (const auto& [from, to] : mapping_) {
    out += from;
    out += ' ';
    out += to;
    out += '\n';
  }
  return out;
}

Term apply_substitution(Session& session, Term t, const Substitution& subst) {
  std::set<std::string_view> seen_images;
  for (const auto& [from, to] : subst.mapping()) {
    check_renamable(from);
    check_renamable(to);
    if (!seen_images.insert(to).second) {
      throw ConfigError("substitution is not injective at '" + to + "'");
    }
  }
  if (subst.empty()) return t;

  std::unordered_map<Term, Term> memo;
  auto go = [&](auto& self, Term u) -> Term {
    if (u.arity() == 0) {
      if (u.is_constant()) {
        if (const std::string* image = subst.find(u.head())) return session.intern(*image);
      }
      return u;
    }
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    std::vector<Term> children;
    children.reserve(u.arity());
    for (Term c : u.children()) children.push_back(self(self, c));
    Term result = session.intern(u.head(), children);
    memo.emplace(u, result);
    return result;
  };
  return go(go, t);
}

// ---------------------------------------------------------------------------
// Constant folding.

namespace {

class Simplifier {
 public:
  explicit Simplifier(Session& session) : session_(session) {}

  Term run(Term t) {
    if (t.arity() == 0 && !t.is("and") && !t.is("or")) return t;
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    Term result = fold(t);
    memo_.emplace(t, result);
    return result;
  }

 private:
  Term fold(Term t) {
    std::vector<Term> children;
    children.reserve(t.arity());
    for (Term c : t.children()) children.push_back(run(c));

    const bool is_and = t.is("and");
    if (is_and || t.is("or")) {
      // `unit` is the identity element, `zero` the absorbing one.
      const std::string_view unit = is_and ? "true" : "false";
      const std::string_view zero = is_and ? "false" : "true";
      std::vector<Term> kept;
      kept.reserve(children.size());
      for (Term c : children) {
        if (c.is(zero)) return session_.intern(zero);
        if (!c.is(unit)) kept.push_back(c);
      }
      if (kept.empty()) return session_.intern(unit);
      if (kept.size() == 1) return kept.front();
      return session_.intern(t.head(), kept);
    }
    if (t.is("not")) {
      if (children.front().is("true")) return session_.false_term();
      if (children.front().is("false")) return session_.true_term();
    }
    return session_.intern(t.head(), children);
  }

  Session& session_;
  std::unordered_map<Term, Term> memo_;
};

}  // namespace

Term simplify(Session& session, Term t) {
  // A bottom-up pass already reaches the fixpoint; the loop guards it.
  for (;;) {
    Term next = Simplifier(session).run(t);
    if (next == t) return t;
    t = next;
  }
}

Term flatten_connectives(Session& session, Term t) {
  std::unordered_map<Term, Term> memo;
  auto go = [&](auto& self, Term u) -> Term {
    if (u.arity() == 0) return u;
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    const bool assoc = u.is("and") || u.is("or");
    std::vector<Term> children;
    for (Term c : u.children()) {
      const Term f = self(self, c);
      if (assoc && f.is(u.head())) {
        children.insert(children.end(), f.children().begin(), f.children().end());
      } else {
        children.push_back(f);
      }
    }
    const Term result = session.intern(u.head(), children);
    memo.emplace(u, result);
    return result;
  };
  return go(go, t);
}

std::set<std::string> collect_constants(Term t) {
  std::set<std::string> out;
  std::unordered_set<Term> visited;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term u = stack.back();
    stack.pop_back();
    if (!visited.insert(u).second) continue;
    if (u.is_constant()) out.insert(u.head());
    for (Term c : u.children()) stack.push_back(c);
  }
  return out;
}

std::size_t tree_size(Term t) {
  std::unordered_map<Term, std::size_t> memo;
  auto go = [&](auto& self, Term u) -> std::size_t {
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    std::size_t n = 1;
    for (Term c : u.children()) {
      const std::size_t k = self(self, c);
      n = (k > std::numeric_limits<std::size_t>::max() - n)
              ? std::numeric_limits<std::size_t>::max()
              : n + k;
    }
    memo.emplace(u, n);
    return n;
  };
  return go(go, t);
}

}  // namespace prunevc
