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

// Brute-force semantics for desk-scale formulas.
//
// Propositional atoms range over {false, true}; uninterpreted constants that
// occur inside comparisons range over a bounded integer interval. Everything
// here enumerates exhaustively and refuses rather than truncates when the
// space is too large.

#ifndef PRUNEVC_ORACLE_HPP_
#define PRUNEVC_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prunevc/pruner.hpp"
#include "prunevc/term.hpp"
#include "prunevc/vcgen.hpp"

namespace prunevc {

struct Universe {
  std::int64_t lo = -4;
  std::int64_t hi = 7;
  std::uint64_t max_assignments = std::uint64_t{1} << 20;
};

class Assignment {
 public:
  void set_atom(Term atom, bool value) { atoms_[atom] = value; }
  void set_integer(const std::string& name, std::int64_t value) { integers_[name] = value; }

  std::optional<bool> atom(Term atom) const;
  std::optional<std::int64_t> integer(std::string_view name) const;

  // "{p=1, q=0, x=3}" with atoms in print order and integers by name.
  std::string to_string() const;

 private:
  std::unordered_map<Term, bool> atoms_;
  std::map<std::string, std::int64_t, std::less<>> integers_;
};

// True for the comparison heads evaluated over integers.
bool is_comparison(Term t);

// Throws EvalError on an uncovered atom, a quantifier, or a non-arithmetic
// function inside a comparison.
bool eval(Term t, const Assignment& x);

// What an assignment for a set of formulas has to cover.
struct AtomSet {
  std::vector<Term> propositional;    // sorted by compare_terms
  std::vector<std::string> integers;  // sorted
};

AtomSet collect_atoms(std::span<const Term> formulas);

// 2^|propositional| * |range|^|integers|. Saturates at UINT64_MAX.
std::uint64_t assignment_count(const AtomSet& atoms, const Universe& universe);

// Calls `visit` on every assignment until it returns false. Throws
// UniverseTooLarge when the count exceeds universe.max_assignments.
void for_each_assignment(const AtomSet& atoms, const Universe& universe,
                         const std::function<bool(const Assignment&)>& visit);

std::optional<Assignment> find_model(Term t, const Universe& universe = {});
bool is_unsat(Term t, const Universe& universe = {});

// ---------------------------------------------------------------------------
// Random generation.

enum class GeneratorMode { kPropositional, kIntegerComparison };

struct GeneratorParams {
  std::size_t max_atoms = 8;
  std::size_t max_depth = 4;
  // Relative weights of the node kinds below the depth limit.
  unsigned and_weight = 3;
  unsigned or_weight = 3;
  unsigned not_weight = 1;
  unsigned atom_weight = 2;
  std::size_t max_arity = 3;
  // Only binary and/or, as the simple pruning function expects.
  bool binary_only = false;
  std::uint64_t seed = 0;
  GeneratorMode mode = GeneratorMode::kPropositional;
  std::int64_t literal_lo = -4;
  std::int64_t literal_hi = 7;
};

class FormulaGenerator {
 public:
  FormulaGenerator(Session& session, const GeneratorParams& params);

  Term formula() { return formula(params_.max_depth); }
  Term formula(std::size_t depth);
  Term atom();
  Term literal();

  // Replaces, wraps, or drops one random subterm of `t`.
  Term mutate(Term t);

  // Conjoins random clauses onto a random formula until the oracle reports
  // UNSAT. nullopt when that does not happen within `attempts` conjunctions.
  std::optional<Term> unsat_formula(const Universe& universe, std::size_t attempts = 12);

  DsaGraph graph(std::size_t max_nodes = 6);
  DsaGraph mutate_graph(const DsaGraph& g);

  // An (old, new) pair with old UNSAT: either a formula and its mutation or
  // the VCs of a DSA graph and its mutation.
  std::optional<std::pair<Term, Term>> unsat_pair(const Universe& universe,
                                                  std::size_t attempts = 64);

  std::uint64_t below(std::uint64_t n);
  bool coin(unsigned percent) { return below(100) < percent; }
  std::mt19937_64& rng() { return rng_; }
  Session& session() { return session_; }
  const GeneratorParams& params() const { return params_; }

 private:
  Term connective(std::string_view head, std::size_t depth);

  Session& session_;
  GeneratorParams params_;
  std::mt19937_64 rng_;
  std::vector<Term> atoms_;
};

// A deterministic function of params.seed.
Term random_formula(Session& session, const GeneratorParams& params);

// Maximum depth of and/or/not nesting; atoms count as 0.
std::size_t connective_depth(Term t);

// ---------------------------------------------------------------------------
// Prune correctness checks.

enum class Verdict { kPass, kFail, kVacuous };

std::string_view to_string(Verdict verdict);

struct PruneCheck {
  Verdict verdict = Verdict::kVacuous;
  std::string reason;  // empty on pass
  std::optional<Assignment> counterexample;
  Term pruned;
  Term pruned_simple;
};

// Vacuous unless p1 is UNSAT. Otherwise checks that prune preserves
// unsatisfiability of p2 and that the simple pruning function satisfies
// both pointwise invariants on every assignment.
PruneCheck check_prune_correct(Session& session, Term p1, Term p2,
                               const Universe& universe = {},
                               const PruneOptions& options = {});

// Pointwise invariants of prune_simple only; p1 need not be UNSAT.
PruneCheck check_prune_simple_pointwise(Session& session, Term p1, Term p2,
                                        const Universe& universe = {});

struct FuzzCase {
  std::uint64_t seed;
  PruneCheck check;
};

// `count` cases with seeds seed, seed+1, ...; each case draws its own pair in
// a fresh session.
std::vector<FuzzCase> run_fuzz(std::uint64_t seed, std::size_t count,
                               const GeneratorParams& params, const Universe& universe,
                               const PruneOptions& options = {});

// `seed=<n> verdict=<v>[ counterexample=<assignment>]`
std::string format_report_line(const FuzzCase& c);

}  // namespace prunevc

#endif  // PRUNEVC_ORACLE_HPP_
