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

// Pruning a new verification condition against an old one known UNSAT.
//
// The result is equisatisfiable with the new formula whenever the old one
// is UNSAT. Parts of the new formula that the old formula already rules out
// are replaced by `false`.

#ifndef PRUNEVC_PRUNER_HPP_
#define PRUNEVC_PRUNER_HPP_

#include <optional>
#include <vector>

#include "prunevc/matcher.hpp"
#include "prunevc/term.hpp"

namespace prunevc {

// A disjunction of conjunctions. An empty conjunct list is `true`; an empty
// disjunct list is `false`.
struct DnfContext {
  std::vector<std::vector<Term>> disjuncts;

  friend bool operator==(const DnfContext&, const DnfContext&) = default;
};

// Inlines `and` elements and splits singleton `or` conjunct lists, to a
// fixpoint. Never distributes `and` over `or`.
DnfContext flatten(const DnfContext& ctx);

// The formula denoted by `ctx`, as an `or` of `and`s (unsimplified).
Term to_term(Session& session, const DnfContext& ctx);

// Sound structural implication: true only if every model of `a` satisfies `b`.
bool implies(Term a, Term b);

// Core recursion. `ctx` must be flattened and `t` normalized.
Term prune_rec(Session& session, const DnfContext& ctx, Term t);

struct PruneOptions {
  bool match_constants = true;
  // Splice nested and/or into their parents before pruning, so conjuncts
  // buried in sub-conjunctions can still be factored out.
  bool flatten_connectives = true;
  MatchOptions match;
};

struct PruneResult {
  Term pruned;
  Substitution substitution;  // applied to the old formula
};

// Normalizes both inputs, renames the old formula's constants towards the
// new one (unless disabled), prunes, then simplifies and renormalizes.
PruneResult prune_with_details(Session& session, Term old_vc, Term new_vc,
                               const PruneOptions& options = {});

Term prune(Session& session, Term old_vc, Term new_vc, const PruneOptions& options = {});

// Binary-connective pruning function with machine-checked invariants; kept
// as a differential oracle. No normalization, no matching.
Term prune_simple(Session& session, Term p1, Term p2);

}  // namespace prunevc

#endif  // PRUNEVC_PRUNER_HPP_
