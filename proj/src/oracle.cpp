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

#include "prunevc/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>
#include <unordered_set>

namespace prunevc {

// ---------------------------------------------------------------------------
// Assignments and evaluation.

std::optional<bool> Assignment::atom(Term atom) const {
  auto it = atoms_.find(atom);
  if (it == atoms_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> Assignment::integer(std::string_view name) const {
  auto it = integers_.find(name);
  if (it == integers_.end()) return std::nullopt;
  return it->second;
}

std::string Assignment::to_string() const {
  std::vector<std::pair<std::string, bool>> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& [t, v] : atoms_) atoms.emplace_back(print_term(t), v);
  std::sort(atoms.begin(), atoms.end());

  std::string out = "{";
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& [name, v] : atoms) {
    sep();
    out += name + "=" + (v ? "1" : "0");
  }
  for (const auto& [name, v] : integers_) {
    sep();
    out += name + "=" + std::to_string(v);
  }
  out += "}";
  return out;
}

bool is_comparison(Term t) {
  if (t.arity() != 2) return false;
  const std::string& h = t.head();
  return h == ">" || h == ">=" || h == "<" || h == "<=" || h == "=";
}

namespace {

std::int64_t parse_literal(const std::string& text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw EvalError("integer literal out of range: " + text);
  }
  return v;
}

std::int64_t eval_int(Term e, const Assignment& x) {
  if (e.kind() == SymbolKind::kInterpretedConstant && is_integer_literal(e.head())) {
    return parse_literal(e.head());
  }
  if (e.is_constant()) {
    if (auto v = x.integer(e.head())) return *v;
    throw EvalError("uncovered integer constant '" + e.head() + "'");
  }
  const auto args = e.children();
  if (e.is("+") && !args.empty()) {
    std::int64_t sum = 0;
    for (Term a : args) sum += eval_int(a, x);
    return sum;
  }
  if (e.is("*") && !args.empty()) {
    std::int64_t product = 1;
    for (Term a : args) product *= eval_int(a, x);
    return product;
  }
  if (e.is("-") && !args.empty()) {
    if (args.size() == 1) return -eval_int(args[0], x);
    std::int64_t diff = eval_int(args[0], x);
    for (std::size_t i = 1; i < args.size(); ++i) diff -= eval_int(args[i], x);
    return diff;
  }
  throw EvalError("not an integer expression: " + print_term(e));
}

}  // namespace

bool eval(Term t, const Assignment& x) {
  if (t.is("true")) return true;
  if (t.is("false")) return false;
  if (t.kind() == SymbolKind::kQuantifier) {
    throw EvalError("quantified formulas are outside the oracle: " + print_term(t));
  }
  if (t.is("and")) {
    for (Term c : t.children()) {
      if (!eval(c, x)) return false;
    }
    return true;
  }
  if (t.is("or")) {
    for (Term c : t.children()) {
      if (eval(c, x)) return true;
    }
    return false;
  }
  if (t.is("not")) return !eval(t.child(0), x);
  if (is_comparison(t)) {
    const std::int64_t a = eval_int(t.child(0), x);
    const std::int64_t b = eval_int(t.child(1), x);
    const std::string& h = t.head();
    if (h == ">") return a > b;
    if (h == ">=") return a >= b;
    if (h == "<") return a < b;
    if (h == "<=") return a <= b;
    return a == b;
  }
  if (auto v = x.atom(t)) return *v;
  throw EvalError("uncovered atom " + print_term(t));
}

AtomSet collect_atoms(std::span<const Term> formulas) {
  std::unordered_set<Term> visited;
  std::unordered_set<Term> props;
  std::set<std::string> ints;

  auto collect_ints = [&](auto& self, Term e) -> void {
    if (e.is_constant()) ints.insert(e.head());
    for (Term c : e.children()) self(self, c);
  };
  auto go = [&](auto& self, Term t) -> void {
    if (!visited.insert(t).second) return;
    if (t.is("true") || t.is("false")) return;
    if (t.kind() == SymbolKind::kQuantifier) {
      throw EvalError("quantified formulas are outside the oracle: " + print_term(t));
    }
    if (t.is("and") || t.is("or") || t.is("not")) {
      for (Term c : t.children()) self(self, c);
      return;
    }
    if (is_comparison(t)) {
      collect_ints(collect_ints, t);
      return;
    }
    props.insert(t);
  };
  for (Term f : formulas) go(go, f);

  AtomSet out;
  out.propositional.assign(props.begin(), props.end());
  std::sort(out.propositional.begin(), out.propositional.end(),
            [](Term a, Term b) { return compare_terms(a, b) < 0; });
  out.integers.assign(ints.begin(), ints.end());
  return out;
}

std::uint64_t assignment_count(const AtomSet& atoms, const Universe& universe) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (universe.hi < universe.lo) throw ConfigError("empty integer range");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < atoms.propositional.size(); ++i) {
    if (count > kMax / 2) return kMax;
    count *= 2;
  }
  const auto width = static_cast<std::uint64_t>(universe.hi - universe.lo) + 1;
  for (std::size_t i = 0; i < atoms.integers.size(); ++i) {
    if (count > kMax / width) return kMax;
    count *= width;
  }
  return count;
}

void for_each_assignment(const AtomSet& atoms, const Universe& universe,
                         const std::function<bool(const Assignment&)>& visit) {
  const std::uint64_t count = assignment_count(atoms, universe);
  if (count > universe.max_assignments) {
    throw UniverseTooLarge("refusing to enumerate " +
                           (count == std::numeric_limits<std::uint64_t>::max()
                                ? std::string("more than 2^64")
                                : std::to_string(count)) +
                           " assignments (" + std::to_string(atoms.propositional.size()) +
                           " propositional atoms, " + std::to_string(atoms.integers.size()) +
                           " integer constants; limit " +
                           std::to_string(universe.max_assignments) + ")");
  }

  Assignment x;
  std::vector<std::int64_t> values(atoms.integers.size(), universe.lo);
  for (std::size_t k = 0; k < atoms.integers.size(); ++k) {
    x.set_integer(atoms.integers[k], universe.lo);
  }
  const std::size_t p = atoms.propositional.size();
  for (;;) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << p); ++bits) {
      for (std::size_t a = 0; a < p; ++a) {
        x.set_atom(atoms.propositional[a], ((bits >> a) & 1U) != 0);
      }
      if (!visit(x)) return;
    }
    // Odometer over the integer constants.
    std::size_t k = 0;
    while (k < values.size() && values[k] == universe.hi) {
      values[k] = universe.lo;
      x.set_integer(atoms.integers[k], universe.lo);
      ++k;
    }
    if (k == values.size()) return;
    ++values[k];
    x.set_integer(atoms.integers[k], values[k]);
  }
}

std::optional<Assignment> find_model(Term t, const Universe& universe) {
  std::optional<Assignment> model;
  const Term formulas[] = {t};
  for_each_assignment(collect_atoms(formulas), universe, [&](const Assignment& x) {
    if (!eval(t, x)) return true;
    model = x;
    return false;
  });
  return model;
}

bool is_unsat(Term t, const Universe& universe) { return !find_model(t, universe).has_value(); }

// ---------------------------------------------------------------------------
// Generation.

FormulaGenerator::FormulaGenerator(Session& session, const GeneratorParams& params)
    : session_(session), params_(params), rng_(params.seed) {
  const std::size_t n = std::max<std::size_t>(params_.max_atoms, 1);
  if (params_.mode == GeneratorMode::kPropositional) {
    for (std::size_t i = 1; i <= n; ++i) atoms_.push_back(session_.constant("p" + std::to_string(i)));
    return;
  }
  static constexpr std::string_view kOps[] = {">", ">=", "<", "<=", "="};
  const Term x = session_.constant("x");
  const Term y = session_.constant("y");
  const auto span =
      static_cast<std::uint64_t>(std::max<std::int64_t>(params_.literal_hi - params_.literal_lo, 0)) + 1;
  std::unordered_set<Term> seen;
  for (std::size_t tries = 0; atoms_.size() < n && tries < 64 * n; ++tries) {
    const Term lit = session_.intern(std::to_string(params_.literal_lo +
                                                    static_cast<std::int64_t>(below(span))));
    Term lhs = coin(50) ? x : y;
    if (coin(15)) lhs = session_.intern("+", {x, y});
    const Term a = session_.intern(kOps[below(std::size(kOps))], {lhs, lit});
    if (seen.insert(a).second) atoms_.push_back(a);
  }
}

std::uint64_t FormulaGenerator::below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

Term FormulaGenerator::atom() { return atoms_[below(atoms_.size())]; }

Term FormulaGenerator::literal() { return coin(35) ? session_.make_not(atom()) : atom(); }

Term FormulaGenerator::connective(std::string_view head, std::size_t depth) {
  const std::size_t arity =
      params_.binary_only ? 2 : 2 + below(std::max<std::size_t>(params_.max_arity, 2) - 1);
  std::vector<Term> children;
  children.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) children.push_back(formula(depth - 1));
  return session_.intern(head, children);
}

Term FormulaGenerator::formula(std::size_t depth) {
  if (depth == 0) return atom();
  const unsigned total =
      params_.and_weight + params_.or_weight + params_.not_weight + params_.atom_weight;
  std::uint64_t roll = below(std::max(total, 1U));
  if (roll < params_.and_weight) return connective("and", depth);
  roll -= params_.and_weight;
  if (roll < params_.or_weight) return connective("or", depth);
  roll -= params_.or_weight;
  if (roll < params_.not_weight) return session_.make_not(formula(depth - 1));
  return literal();
}

Term FormulaGenerator::mutate(Term t) {
  // Formula positions as child-index paths, capped to keep huge trees
  // cheap. Arguments of comparisons are not formulas and are skipped.
  std::vector<std::vector<std::size_t>> positions;
  std::vector<std::size_t> path;
  auto collect = [&](auto& self, Term u) -> void {
    if (positions.size() >= 4096) return;
    positions.push_back(path);
    if (!u.is("and") && !u.is("or") && !u.is("not")) return;
    for (std::size_t i = 0; i < u.arity(); ++i) {
      path.push_back(i);
      self(self, u.child(i));
      path.pop_back();
    }
  };
  collect(collect, t);
  const std::vector<std::size_t>& target = positions[below(positions.size())];

  auto rewrite = [&](Term sub) -> Term {
    switch (below(5)) {
      case 0:
        return formula(below(3));
      case 1:
        return coin(50) ? session_.intern("and", {sub, literal()})
                        : session_.intern("and", {literal(), sub});
      case 2:
        return coin(50) ? session_.intern("or", {sub, formula(below(2))})
                        : session_.intern("or", {formula(below(2)), sub});
      case 3:
        if (!params_.binary_only && (sub.is("and") || sub.is("or")) && sub.arity() > 2) {
          std::vector<Term> kept(sub.children().begin(), sub.children().end());
          kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(below(kept.size())));
          return session_.intern(sub.head(), kept);
        }
        return literal();
      default:
        return session_.make_not(sub);
    }
  };

  auto rebuild = [&](auto& self, Term u, std::size_t level) -> Term {
    if (level == target.size()) return rewrite(u);
    std::vector<Term> children(u.children().begin(), u.children().end());
    children[target[level]] = self(self, children[target[level]], level + 1);
    return session_.intern(u.head(), children);
  };
  return rebuild(rebuild, t, 0);
}

std::optional<Term> FormulaGenerator::unsat_formula(const Universe& universe,
                                                    std::size_t attempts) {
  auto conjunction = [&]() -> std::optional<Term> {
    Term f = formula();
    for (std::size_t i = 0; i <= attempts; ++i) {
      if (is_unsat(f, universe)) return f;
      const Term clause = formula(below(3));
      if (params_.binary_only || !f.is("and")) {
        f = session_.intern("and", {f, clause});
      } else {
        std::vector<Term> children(f.children().begin(), f.children().end());
        children.push_back(clause);
        f = session_.make_and(children);
      }
    }
    return std::nullopt;
  };

  if (params_.binary_only || coin(60)) return conjunction();
  // Disjunction of UNSAT conjunctions, the usual shape of a VC.
  std::vector<Term> parts;
  const std::size_t k = 2 + below(2);
  for (std::size_t i = 0; i < k; ++i) {
    auto part = conjunction();
    if (!part) return std::nullopt;
    parts.push_back(*part);
  }
  return session_.make_or(parts);
}

DsaGraph FormulaGenerator::graph(std::size_t max_nodes) {
  const std::size_t n = 1 + below(std::max<std::size_t>(max_nodes, 1));
  std::vector<std::vector<NodeId>> preds(n + 1);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId j = 2; j <= n; ++j) {
    for (NodeId i = 1; i < j; ++i) {
      if (coin(j == i + 1 ? 70 : 25)) {
        edges.emplace_back(i, j);
        preds[j].push_back(i);
      }
    }
  }

  DsaGraph g;
  std::vector<Term> formulas(n + 1);
  for (NodeId id = 1; id <= n; ++id) {
    const bool initial = preds[id].empty();
    const bool assertion = coin(initial ? 20 : 60);
    Term phi = formula(below(2));
    // Re-asserting something already assumed upstream is what makes old VCs
    // UNSAT in practice.
    if (assertion && !initial && coin(65)) {
      phi = formulas[preds[id][below(preds[id].size())]];
    }
    formulas[id] = phi;
    g.add_node(id, assertion ? NodeColor::kAssertion : NodeColor::kAssumption, phi);
  }
  for (const auto& [from, to] : edges) g.add_edge(from, to);
  return g;
}

DsaGraph FormulaGenerator::mutate_graph(const DsaGraph& g) {
  DsaGraph out = g;
  const std::size_t ops = 1 + below(2);
  for (std::size_t k = 0; k < ops; ++k) {
    const auto& nodes = out.nodes();
    NodeId max_id = 0;
    for (const DsaNode& n : nodes) max_id = std::max(max_id, n.id);
    const NodeId pick = nodes[below(nodes.size())].id;
    switch (below(4)) {
      case 0: {
        const NodeId id = max_id + 1;
        out.add_node(id, coin(60) ? NodeColor::kAssertion : NodeColor::kAssumption,
                     coin(50) ? out.find(pick)->formula : formula(below(2)));
        out.add_edge(pick, id);
        break;
      }
      case 1:
        out.find(pick)->formula = formula(below(2));
        break;
      case 2: {
        DsaNode* node = out.find(pick);
        node->color = node->color == NodeColor::kAssertion ? NodeColor::kAssumption
                                                           : NodeColor::kAssertion;
        break;
      }
      default: {
        // Edges only run from smaller to larger ids, so the graph stays acyclic.
        const NodeId other = nodes[below(nodes.size())].id;
        if (other != pick) out.add_edge(std::min(pick, other), std::max(pick, other));
        break;
      }
    }
  }
  return out;
}

std::optional<std::pair<Term, Term>> FormulaGenerator::unsat_pair(const Universe& universe,
                                                                  std::size_t attempts) {
  for (std::size_t i = 0; i < attempts; ++i) {
    if (!params_.binary_only && coin(40)) {
      const DsaGraph old_graph = graph();
      const Term p1 = vc(session_, old_graph);
      if (!is_unsat(p1, universe)) continue;
      return std::pair{p1, vc(session_, mutate_graph(old_graph))};
    }
    const auto p1 = unsat_formula(universe);
    if (!p1) continue;
    Term p2 = *p1;
    const std::size_t edits = coin(10) ? 0 : 1 + below(3);
    for (std::size_t e = 0; e < edits; ++e) p2 = mutate(p2);
    return std::pair{*p1, p2};
  }
  return std::nullopt;
}

Term random_formula(Session& session, const GeneratorParams& params) {
  return FormulaGenerator(session, params).formula();
}

std::size_t connective_depth(Term t) {
  if (!(t.is("and") || t.is("or") || t.is("not"))) return 0;
  std::size_t d = 0;
  for (Term c : t.children()) d = std::max(d, connective_depth(c));
  return d + 1;
}

// ---------------------------------------------------------------------------
// Checks.

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kVacuous: return "vacuous";
  }
  return "unknown";
}

PruneCheck check_prune_simple_pointwise(Session& session, Term p1, Term p2,
                                        const Universe& universe) {
  PruneCheck out;
  out.pruned_simple = prune_simple(session, p1, p2);
  out.verdict = Verdict::kPass;
  const Term formulas[] = {p1, p2, out.pruned_simple};
  for_each_assignment(collect_atoms(formulas), universe, [&](const Assignment& x) {
    if (eval(p1, x)) return true;
    const bool before = eval(p2, x);
    const bool after = eval(out.pruned_simple, x);
    if (before == after) return true;
    out.verdict = Verdict::kFail;
    out.reason = before ? "PruneInvA violated by prune_simple" : "PruneInvB violated by prune_simple";
    out.counterexample = x;
    return false;
  });
  return out;
}

PruneCheck check_prune_correct(Session& session, Term p1, Term p2, const Universe& universe,
                               const PruneOptions& options) {
  PruneCheck out;
  if (!is_unsat(p1, universe)) {
    out.verdict = Verdict::kVacuous;
    out.reason = "old formula is satisfiable";
    return out;
  }

  out.pruned = prune(session, p1, p2, options);
  const auto model_before = find_model(p2, universe);
  const auto model_after = find_model(out.pruned, universe);
  if (model_before.has_value() != model_after.has_value()) {
    out.verdict = Verdict::kFail;
    out.reason = model_before ? "pruning made a satisfiable formula UNSAT"
                              : "pruning made an UNSAT formula satisfiable";
    out.counterexample = model_before ? model_before : model_after;
    out.pruned_simple = prune_simple(session, p1, p2);
    return out;
  }

  PruneCheck simple = check_prune_simple_pointwise(session, p1, p2, universe);
  simple.pruned = out.pruned;
  return simple;
}

std::vector<FuzzCase> run_fuzz(std::uint64_t seed, std::size_t count,
                               const GeneratorParams& params, const Universe& universe,
                               const PruneOptions& options) {
  std::vector<FuzzCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Session session;
    GeneratorParams p = params;
    p.seed = seed + i;
    FormulaGenerator gen(session, p);
    FuzzCase c{p.seed, {}};
    if (const auto pair = gen.unsat_pair(universe)) {
      c.check = check_prune_correct(session, pair->first, pair->second, universe, options);
    } else {
      c.check.verdict = Verdict::kVacuous;
      c.check.reason = "no UNSAT old formula found";
    }
    // Terms die with the session.
    c.check.pruned = Term();
    c.check.pruned_simple = Term();
    out.push_back(std::move(c));
  }
  return out;
}

std::string format_report_line(const FuzzCase& c) {
  std::string line = "seed=" + std::to_string(c.seed) +
                     " verdict=" + std::string(to_string(c.check.verdict));
  if (c.check.counterexample) line += " counterexample=" + c.check.counterexample->to_string();
  return line;
}

}  // namespace prunevc
