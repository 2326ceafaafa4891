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

#include "prunevc/matcher.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace prunevc {

std::string PathString::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i != 0) out += '.';
    out += elements[i];
  }
  return out;
}

void Environment::add(PathString path, std::size_t count) {
  if (count == 0) return;
  entries_[std::move(path)] += count;
  size_ += count;
}

std::size_t Environment::count(const PathString& path) const {
  auto it = entries_.find(path);
  return it == entries_.end() ? 0 : it->second;
}

namespace {

// Walks the tree view of `t`, calling `visit(leaf, path)` for every
// uninterpreted-constant occurrence.
template <typename Visit>
void walk_paths(Term t, const CommutativityRegistry* registry, Visit&& visit) {
  PathString path;
  auto go = [&](auto& self, Term u) -> void {
    if (u.is_constant()) {
      visit(u, path);
      return;
    }
    const bool strip = registry != nullptr && registry->is_commutative(u.head());
    const auto children = u.children();
    for (std::size_t i = 0; i < children.size(); ++i) {
      path.elements.push_back(u.head());
      if (!strip) path.elements.push_back(std::to_string(i + 1));
      self(self, children[i]);
      path.elements.pop_back();
      if (!strip) path.elements.pop_back();
    }
  };
  go(go, t);
}

}  // namespace

EnvironmentMap environments(Term t, const CommutativityRegistry& registry) {
  EnvironmentMap out;
  walk_paths(t, &registry, [&](Term leaf, const PathString& path) {
    auto it = out.find(leaf.head());
    if (it == out.end()) it = out.emplace(leaf.head(), Environment{}).first;
    it->second.add(path);
  });
  return out;
}

std::vector<PathString> path_strings(Term t, std::string_view constant) {
  std::vector<PathString> out;
  walk_paths(t, nullptr, [&](Term leaf, const PathString& path) {
    if (leaf.head() == constant) out.push_back(path);
  });
  return out;
}

std::size_t intersection_size(const Environment& a, const Environment& b) {
  std::size_t n = 0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      n += std::min(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return n;
}

std::int64_t env_similarity(const Environment& a, const Environment& b) {
  const auto common = static_cast<std::int64_t>(intersection_size(a, b));
  const auto sa = static_cast<std::int64_t>(a.size());
  const auto sb = static_cast<std::int64_t>(b.size());
  return 2 * common - std::abs(sa - sb);
}

std::size_t lcs_length(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (char ca : a) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = ca == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::int64_t similarity(std::string_view old_name, const Environment& old_env,
                        std::string_view new_name, const Environment& new_env,
                        const SimilarityWeights& weights) {
  return weights.env * env_similarity(old_env, new_env) +
         weights.lcs * static_cast<std::int64_t>(lcs_length(old_name, new_name));
}

SimilarityMatrix::SimilarityMatrix(std::size_t rows, std::size_t cols,
                                   std::vector<std::int64_t> weights)
    : rows_(rows), cols_(cols), weights_(std::move(weights)) {
  if (weights_.size() != rows * cols) {
    throw std::invalid_argument("SimilarityMatrix: weight count does not match shape");
  }
}

std::int64_t matching_weight(const SimilarityMatrix& m, const Matching& matching) {
  std::int64_t total = 0;
  for (const auto& [i, j] : matching) total += m.at(i, j);
  return total;
}

Matching max_weight_matching(const SimilarityMatrix& m) {
  const std::size_t n = std::max(m.rows(), m.cols());
  if (n == 0) return {};

  // Square minimization problem over 1-based indices. Negative weights are
  // clamped to zero so that a perfect assignment on the padded matrix equals
  // a maximum partial matching on the original one.
  auto cost = [&](std::size_t i, std::size_t j) -> std::int64_t {
    if (i > m.rows() || j > m.cols()) return 0;
    return -std::max<std::int64_t>(m.at(i - 1, j - 1), 0);
  };

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t reduced = cost(i0, j) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Matching out;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = row_of[j];
    if (i == 0 || i > m.rows() || j > m.cols()) continue;
    if (m.at(i - 1, j - 1) > 0) out.emplace_back(i - 1, j - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MatchProblem build_match_problem(Term old_formula, Term new_formula,
                                 const MatchOptions& options) {
  const EnvironmentMap old_envs = environments(old_formula, options.registry);
  const EnvironmentMap new_envs = environments(new_formula, options.registry);

  MatchProblem problem;
  for (const auto& [name, env] : old_envs) problem.old_constants.push_back(name);
  for (const auto& [name, env] : new_envs) problem.new_constants.push_back(name);
  problem.scores = SimilarityMatrix(problem.old_constants.size(),
                                    problem.new_constants.size());
  std::size_t i = 0;
  for (const auto& [old_name, old_env] : old_envs) {
    std::size_t j = 0;
    for (const auto& [new_name, new_env] : new_envs) {
      problem.scores.at(i, j) =
          similarity(old_name, old_env, new_name, new_env, options.weights);
      ++j;
    }
    ++i;
  }
  return problem;
}

Substitution build_substitution(Term old_formula, Term new_formula,
                                const MatchOptions& options) {
  const MatchProblem problem = build_match_problem(old_formula, new_formula, options);
  const SimilarityMatrix& scores = problem.scores;

  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    if (!options.keep_shared_names ||
        !std::binary_search(problem.new_constants.begin(), problem.new_constants.end(),
                            problem.old_constants[i])) {
      rows.push_back(i);
    }
  }
  for (std::size_t j = 0; j < scores.cols(); ++j) {
    if (!options.keep_shared_names ||
        !std::binary_search(problem.old_constants.begin(), problem.old_constants.end(),
                            problem.new_constants[j])) {
      cols.push_back(j);
    }
  }

  // Break ties between optimal matchings towards identical names: scale the
  // scores so the bonus (at most one per pair) never outweighs a unit of
  // similarity.
  const auto scale = static_cast<std::int64_t>(std::min(rows.size(), cols.size())) + 1;
  SimilarityMatrix biased(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const bool same = problem.old_constants[rows[a]] == problem.new_constants[cols[b]];
      biased.at(a, b) = scores.at(rows[a], cols[b]) * scale + (same ? 1 : 0);
    }
  }

  Substitution subst;
  for (const auto& [a, b] : max_weight_matching(biased)) {
    const std::size_t i = rows[a];
    const std::size_t j = cols[b];
    if (scores.at(i, j) <= 0) continue;
    if (problem.old_constants[i] == problem.new_constants[j]) continue;
    subst.add(problem.old_constants[i], problem.new_constants[j]);
  }
  return subst;
}

}  // namespace prunevc
