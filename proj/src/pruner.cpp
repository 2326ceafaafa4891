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

#include "prunevc/pruner.hpp"

#include <algorithm>
#include <unordered_set>

namespace prunevc {

namespace {

void append_conjuncts(Term t, std::vector<Term>& out) {
  if (t.is("and")) {
    for (Term c : t.children()) append_conjuncts(c, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

DnfContext flatten(const DnfContext& ctx) {
  DnfContext out;
  // Worklist in original order so the result is deterministic.
  std::vector<std::vector<Term>> pending(ctx.disjuncts.rbegin(), ctx.disjuncts.rend());
  while (!pending.empty()) {
    std::vector<Term> conj = std::move(pending.back());
    pending.pop_back();

    std::vector<Term> inlined;
    inlined.reserve(conj.size());
    for (Term t : conj) append_conjuncts(t, inlined);

    if (inlined.size() == 1 && inlined.front().is("or")) {
      const auto alts = inlined.front().children();
      for (auto it = alts.rbegin(); it != alts.rend(); ++it) pending.push_back({*it});
      continue;
    }
    out.disjuncts.push_back(std::move(inlined));
  }
  return out;
}

Term to_term(Session& session, const DnfContext& ctx) {
  std::vector<Term> disjuncts;
  disjuncts.reserve(ctx.disjuncts.size());
  for (const auto& conj : ctx.disjuncts) disjuncts.push_back(session.make_and(conj));
  return session.make_or(disjuncts);
}

bool implies(Term a, Term b) {
  if (a == b) return true;
  if (a.is("false")) return true;
  if (b.is("true")) return true;
  if (b.is("and") && std::all_of(b.children().begin(), b.children().end(),
                                 [&](Term bi) { return implies(a, bi); })) {
    return true;
  }
  if (a.is("or") && std::all_of(a.children().begin(), a.children().end(),
                                [&](Term ai) { return implies(ai, b); })) {
    return true;
  }
  if (a.is("and") && std::any_of(a.children().begin(), a.children().end(),
                                 [&](Term ai) { return implies(ai, b); })) {
    return true;
  }
  if (b.is("or") && std::any_of(b.children().begin(), b.children().end(),
                                [&](Term bi) { return implies(a, bi); })) {
    return true;
  }
  return false;
}

Term prune_rec(Session& session, const DnfContext& ctx, Term t) {
  if (t.is("and")) {
    std::unordered_set<Term> context_literals;
    for (const auto& conj : ctx.disjuncts) context_literals.insert(conj.begin(), conj.end());

    std::vector<Term> common;
    std::vector<Term> rest;
    std::unordered_set<Term> common_set;
    for (Term c : t.children()) {
      if (context_literals.count(c) != 0) {
        common.push_back(c);
        common_set.insert(c);
      } else {
        rest.push_back(c);
      }
    }

    DnfContext filtered;
    filtered.disjuncts.reserve(ctx.disjuncts.size());
    for (const auto& conj : ctx.disjuncts) {
      std::vector<Term> kept;
      for (Term x : conj) {
        if (common_set.count(x) == 0) kept.push_back(x);
      }
      // Every model of `common` satisfies this disjunct, hence the context.
      if (kept.empty()) return session.false_term();
      filtered.disjuncts.push_back(std::move(kept));
    }

    const DnfContext next = common.empty() ? ctx : flatten(filtered);
    std::vector<Term> children = std::move(common);
    children.reserve(children.size() + rest.size());
    for (Term c : rest) children.push_back(prune_rec(session, next, c));
    return session.make_and(children);
  }

  if (t.is("or")) {
    std::vector<Term> children;
    children.reserve(t.arity());
    for (Term c : t.children()) children.push_back(prune_rec(session, ctx, c));
    return session.make_or(children);
  }

  for (const auto& conj : ctx.disjuncts) {
    if (implies(t, session.make_and(conj))) return session.false_term();
  }
  return t;
}

PruneResult prune_with_details(Session& session, Term old_vc, Term new_vc,
                               const PruneOptions& options) {
  const CommutativityRegistry& registry = options.match.registry;
  Term old_norm = normalize(session, old_vc, registry);
  Term new_norm = normalize(session, new_vc, registry);

  // Matching sees the formulas as written; their nesting carries position
  // information that flattening would erase.
  PruneResult result;
  if (options.match_constants) {
    result.substitution = build_substitution(old_norm, new_norm, options.match);
    old_norm = apply_substitution(session, old_norm, result.substitution);
  }
  if (options.flatten_connectives) {
    old_norm = flatten_connectives(session, old_norm);
    new_norm = flatten_connectives(session, new_norm);
  }
  old_norm = normalize(session, old_norm, registry);
  new_norm = normalize(session, new_norm, registry);

  const DnfContext ctx = flatten(DnfContext{{{old_norm}}});
  const Term pruned = prune_rec(session, ctx, new_norm);
  result.pruned = normalize(session, simplify(session, pruned), registry);
  return result;
}

Term prune(Session& session, Term old_vc, Term new_vc, const PruneOptions& options) {
  return prune_with_details(session, old_vc, new_vc, options).pruned;
}

namespace {

bool is_binary(Term t, std::string_view head) { return t.is(head) && t.arity() == 2; }

}  // namespace

Term prune_simple(Session& session, Term p1, Term p2) {
  if (is_binary(p1, "and") && is_binary(p2, "and")) {
    const Term a = p1.child(0);
    if (a == p2.child(0)) {
      return session.intern("and", {a, prune_simple(session, p1.child(1), p2.child(1))});
    }
    return p2;
  }
  if (is_binary(p2, "or")) {
    return session.intern("or", {prune_simple(session, p1, p2.child(0)),
                                 prune_simple(session, p1, p2.child(1))});
  }
  return p1 == p2 ? session.false_term() : p2;
}

}  // namespace prunevc
