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

// Constant matching between an old and a new formula.
//
// Each uninterpreted constant gets an environment: the multiset of stripped
// path strings leading to its occurrences. Old/new pairs are scored by
// environment overlap plus identifier LCS, and a maximum-weight bipartite
// matching over those scores yields the renaming applied to the old formula.

#ifndef PRUNEVC_MATCHER_HPP_
#define PRUNEVC_MATCHER_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prunevc/term.hpp"

namespace prunevc {

// Root-to-occurrence path: head symbols interleaved with 1-based positions.
// Positions under commutative heads are omitted in the stripped form.
struct PathString {
  std::vector<std::string> elements;

  // Dot-joined, e.g. "f.2.g.1"; the empty path renders as "".
  std::string to_string() const;

  friend auto operator<=>(const PathString&, const PathString&) = default;
  friend bool operator==(const PathString&, const PathString&) = default;
};

// Multiset of stripped path strings (path -> multiplicity).
class Environment {
 public:
  void add(PathString path, std::size_t count = 1);
  std::size_t size() const { return size_; }
  std::size_t count(const PathString& path) const;
  const std::map<PathString, std::size_t>& entries() const { return entries_; }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  std::map<PathString, std::size_t> entries_;
  std::size_t size_ = 0;
};

using EnvironmentMap = std::map<std::string, Environment, std::less<>>;

// Environments of all uninterpreted constants of `t`.
EnvironmentMap environments(Term t, const CommutativityRegistry& registry);

// Unstripped path strings of every occurrence of `constant` in `t`.
std::vector<PathString> path_strings(Term t, std::string_view constant);

// Size of the multiset intersection (per-element minimum multiplicity).
std::size_t intersection_size(const Environment& a, const Environment& b);

// 2·|a ⊓ b| − | |a| − |b| |
std::int64_t env_similarity(const Environment& a, const Environment& b);

std::size_t lcs_length(std::string_view a, std::string_view b);

struct SimilarityWeights {
  std::int64_t env = 10;
  std::int64_t lcs = 1;
};

std::int64_t similarity(std::string_view old_name, const Environment& old_env,
                        std::string_view new_name, const Environment& new_env,
                        const SimilarityWeights& weights = {});

// Dense row-major score matrix, rows = old constants, columns = new ones.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), weights_(rows * cols, 0) {}
  SimilarityMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> weights);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& at(std::size_t i, std::size_t j) { return weights_[i * cols_ + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return weights_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> weights_;
};

// (row, column) pairs, sorted by row.
using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

std::int64_t matching_weight(const SimilarityMatrix& m, const Matching& matching);

// Hungarian method. Returns a maximum-weight matching; pairs of weight <= 0
// are never part of the result.
Matching max_weight_matching(const SimilarityMatrix& m);

struct MatchOptions {
  SimilarityWeights weights;
  CommutativityRegistry registry;
  // Constants named in both formulas map to themselves; only the remaining
  // old and new constants enter the matching.
  bool keep_shared_names = true;
};

// Full scoring table for a pair of normalized formulas.
struct MatchProblem {
  std::vector<std::string> old_constants;  // sorted
  std::vector<std::string> new_constants;  // sorted
  SimilarityMatrix scores;
};

MatchProblem build_match_problem(Term old_formula, Term new_formula,
                                 const MatchOptions& options = {});

// Renaming for the old formula's constants. Only pairs with differing names
// are recorded; unmatched old constants keep their names. With
// keep_shared_names the renaming never merges two old constants.
Substitution build_substitution(Term old_formula, Term new_formula,
                                const MatchOptions& options = {});

}  // namespace prunevc

#endif  // PRUNEVC_MATCHER_HPP_
