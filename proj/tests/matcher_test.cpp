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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "prunevc/oracle.hpp"
#include "test_oracles.hpp"

namespace prunevc {
namespace {

PathString path(std::initializer_list<std::string> elements) { return PathString{elements}; }

Environment env_of(std::initializer_list<std::string> labels) {
  Environment e;
  for (const std::string& l : labels) e.add(path({l}));
  return e;
}

class MatcherTest : public ::testing::Test {
 protected:
  Term P(std::string_view text) { return normalize(s_, parse_term(s_, text), reg_); }

  Session s_;
  CommutativityRegistry reg_;
};

TEST_F(MatcherTest, UnstrippedPathStrings) {
  const Term t = parse_term(s_, "(f a (g b c))");
  const auto b_paths = path_strings(t, "b");
  ASSERT_EQ(b_paths.size(), 1U);
  EXPECT_EQ(b_paths[0].to_string(), "f.2.g.1");
  EXPECT_EQ(path_strings(t, "c")[0].to_string(), "f.2.g.2");
}

TEST_F(MatcherTest, StrippedPathStrings) {
  const Term t = parse_term(s_, "(and (or (f a (g b)) (g c)) (g d))");
  const EnvironmentMap envs = environments(t, reg_);
  const Environment& b = envs.at("b");
  ASSERT_EQ(b.size(), 1U);
  EXPECT_EQ(b.entries().begin()->first.to_string(), "and.or.f.2.g.1");
  EXPECT_EQ(envs.at("d").entries().begin()->first.to_string(), "and.g.1");
}

TEST_F(MatcherTest, RootOccurrenceHasEmptyPath) {
  const EnvironmentMap envs = environments(parse_term(s_, "x"), reg_);
  ASSERT_EQ(envs.size(), 1U);
  EXPECT_EQ(envs.at("x").size(), 1U);
  EXPECT_EQ(envs.at("x").count(PathString{}), 1U);
}

TEST_F(MatcherTest, EnvironmentSizeIsOccurrenceCount) {
  const EnvironmentMap envs = environments(parse_term(s_, "(and (> x 1) (or (> x y) (= x 3)))"), reg_);
  EXPECT_EQ(envs.at("x").size(), 3U);
  EXPECT_EQ(envs.at("y").size(), 1U);
  EXPECT_EQ(envs.count("3"), 0U);
}

TEST_F(MatcherTest, EnvSimilarityExamples) {
  const Environment e = env_of({"s1", "s2", "s3"});
  EXPECT_EQ(env_similarity(e, e), 6);

  const Environment e1 = env_of({"s1", "s1", "s2"});
  const Environment e2 = env_of({"s1", "s3"});
  const std::size_t common = testing::brute_intersection({"s1", "s1", "s2"}, {"s1", "s3"});
  ASSERT_EQ(common, 1U);
  EXPECT_EQ(env_similarity(e1, e2), 2 * static_cast<std::int64_t>(common) - 1);
  EXPECT_EQ(env_similarity(e1, e2), 1);

  EXPECT_EQ(env_similarity(env_of({"a", "b"}), env_of({"c", "d"})), 0);
}

TEST_F(MatcherTest, EnvSimilarityIsSymmetricAndMatchesMultisetOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> a(rng() % 6), b(rng() % 6);
    for (auto& x : a) x = std::string(1, static_cast<char>('a' + rng() % 3));
    for (auto& x : b) x = std::string(1, static_cast<char>('a' + rng() % 3));
    Environment ea, eb;
    for (const auto& x : a) ea.add(path({x}));
    for (const auto& x : b) eb.add(path({x}));
    const auto common = static_cast<std::int64_t>(testing::brute_intersection(a, b));
    const auto gap = std::abs(static_cast<std::int64_t>(a.size()) - static_cast<std::int64_t>(b.size()));
    EXPECT_EQ(env_similarity(ea, eb), 2 * common - gap);
    EXPECT_EQ(env_similarity(ea, eb), env_similarity(eb, ea));
  }
}

TEST_F(MatcherTest, LcsExamples) {
  EXPECT_EQ(lcs_length("abc", "abc"), 3U);
  EXPECT_EQ(lcs_length("x", "y"), 0U);
  EXPECT_EQ(testing::brute_lcs("month_3_7", "month_4_8"), 7U);
  EXPECT_EQ(lcs_length("month_3_7", "month_4_8"), 7U);
  EXPECT_EQ(lcs_length("", "abc"), 0U);
}

TEST_F(MatcherTest, LcsMatchesEnumerationOracle) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    std::string a(rng() % 9, 'a'), b(rng() % 9, 'a');
    for (char& c : a) c = static_cast<char>('a' + rng() % 3);
    for (char& c : b) c = static_cast<char>('a' + rng() % 3);
    EXPECT_EQ(lcs_length(a, b), testing::brute_lcs(a, b)) << a << " " << b;
  }
}

TEST_F(MatcherTest, SimilarityCombinesBothComponents) {
  const Environment e = env_of({"s1", "s2", "s3"});
  EXPECT_EQ(similarity("name", e, "name", e), 10 * 6 + 4);
  const SimilarityWeights w{3, 2};
  EXPECT_EQ(similarity("ab", e, "ab", e, w), 3 * 6 + 2 * 2);

  // A renamed constant with the same 4-slot environment beats any constant
  // whose environment is disjoint, whatever the names.
  const Environment four = env_of({"a", "b", "c", "d"});
  const Environment disjoint = env_of({"e", "f", "g", "h"});
  const auto renamed = similarity("offset_14_3", four, "qq", four);
  EXPECT_EQ(renamed, 80);
  EXPECT_GT(renamed, similarity("offset_14_3", four, "offset_14_3", disjoint));
  // A fresh constant can score negatively against an old one.
  EXPECT_LT(similarity("x", env_of({"a"}), "y", env_of({"b", "c", "d"})), 0);
}

TEST_F(MatcherTest, MatchingExamples) {
  SimilarityMatrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = 1;
  EXPECT_EQ(max_weight_matching(id), (Matching{{0, 0}, {1, 1}, {2, 2}}));

  const SimilarityMatrix cross(2, 2, {5, 9, 9, 5});
  ASSERT_EQ(testing::brute_max_matching(cross), 18);
  const Matching m = max_weight_matching(cross);
  EXPECT_EQ(m, (Matching{{0, 1}, {1, 0}}));
  EXPECT_EQ(matching_weight(cross, m), 18);

  EXPECT_TRUE(max_weight_matching(SimilarityMatrix{}).empty());
  EXPECT_TRUE(max_weight_matching(SimilarityMatrix(0, 3)).empty());
}

TEST_F(MatcherTest, MatchingDropsNonPositivePairs) {
  const SimilarityMatrix m(2, 3, {-1, -5, 0, 4, -2, -3});
  EXPECT_EQ(max_weight_matching(m), (Matching{{1, 0}}));
}

TEST_F(MatcherTest, MatchingIsOptimalOnRandomMatrices) {
  std::mt19937_64 rng(29);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t r = rng() % 8;
    const std::size_t c = rng() % 8;
    SimilarityMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<std::int64_t>(rng() % 41) - 15;
    }
    const Matching got = max_weight_matching(m);
    std::set<std::size_t> rows, cols;
    for (const auto& [i, j] : got) {
      EXPECT_TRUE(rows.insert(i).second);
      EXPECT_TRUE(cols.insert(j).second);
      EXPECT_GT(m.at(i, j), 0);
    }
    EXPECT_EQ(matching_weight(m, got), testing::brute_max_matching(m));
  }
}

TEST_F(MatcherTest, IdenticalFormulasNeedNoRenaming) {
  const Term t = P("(and (> x 2) (or (= y x) (f z)))");
  EXPECT_TRUE(build_substitution(t, t).empty());
}

TEST_F(MatcherTest, UniformRenamingIsRecovered) {
  const Term old_vc = P("(and (> x 2) (or (= y x) (f z)))");
  const Term new_vc = P("(and (> w 2) (or (= y w) (f z)))");
  const Substitution s = build_substitution(old_vc, new_vc);
  Substitution expected;
  expected.add("x", "w");
  EXPECT_EQ(s, expected);
  EXPECT_EQ(normalize(s_, apply_substitution(s_, old_vc, s), reg_), new_vc);
}

TEST_F(MatcherTest, RenamingMatchesExhaustiveSearch) {
  // Exhaustive oracle over all bijections {x,y,z} -> {a,b,c} on the score
  // table; the solver must agree with the unique best one.
  const Term old_vc = P("(and (> x 2) (< y x) (f z z))");
  const Term new_vc = P("(and (> b 2) (< c b) (f a a))");
  const MatchProblem problem = build_match_problem(old_vc, new_vc);
  std::vector<std::size_t> perm{0, 1, 2};
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<std::size_t> best_perm;
  int ties = 0;
  do {
    std::int64_t w = 0;
    for (std::size_t i = 0; i < 3; ++i) w += problem.scores.at(i, perm[i]);
    if (w > best) {
      best = w;
      best_perm = perm;
      ties = 0;
    } else if (w == best) {
      ++ties;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  ASSERT_EQ(ties, 0);

  Substitution expected;
  for (std::size_t i = 0; i < 3; ++i) {
    expected.add(problem.old_constants[i], problem.new_constants[best_perm[i]]);
  }
  EXPECT_EQ(build_substitution(old_vc, new_vc), expected);
  EXPECT_EQ(expected.to_text(), "x b\ny c\nz a\n");
}

TEST_F(MatcherTest, UnmatchedOldConstantsKeepTheirNames) {
  const Term old_vc = P("(and (> x 2) (> y 3))");
  const Term new_vc = P("(> x 2)");
  const Substitution s = build_substitution(old_vc, new_vc);
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(collect_constants(apply_substitution(s_, old_vc, s)),
            (std::set<std::string>{"x", "y"}));
}

TEST_F(MatcherTest, TiesPreferIdenticalNames) {
  // Both old constants look alike; keeping the names is one of the optima.
  const Term t = P("(and p q)");
  EXPECT_TRUE(build_substitution(t, t).empty());
}

TEST_F(MatcherTest, EnvironmentsIgnoreCommutativeShuffles) {
  GeneratorParams params;
  params.mode = GeneratorMode::kIntegerComparison;
  params.max_depth = 4;
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    params.seed = seed;
    const Term t = random_formula(s_, params);
    const Term shuffled = testing::shuffle_commutative(s_, t, reg_, rng);
    EXPECT_EQ(environments(normalize(s_, shuffled, reg_), reg_),
              environments(normalize(s_, t, reg_), reg_));
  }
}

TEST_F(MatcherTest, AnyInjectiveRenamingPreservesUnsat) {
  GeneratorParams params;
  params.max_atoms = 5;
  params.max_depth = 3;
  const std::vector<std::string> fresh{"r1", "r2", "r3", "r4", "r5"};
  std::mt19937_64 rng(37);
  int unsat_seen = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    params.seed = seed;
    FormulaGenerator gen(s_, params);
    const auto t = gen.unsat_formula(Universe{});
    const Term f = t ? *t : gen.formula();
    const std::set<std::string> constants = collect_constants(f);
    std::vector<std::string> names(constants.begin(), constants.end());
    std::vector<std::string> images = names;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (rng() % 2) images[i] = fresh[i];
    }
    std::shuffle(images.begin(), images.end(), rng);
    Substitution s;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] != images[i]) s.add(names[i], images[i]);
    }
    const Term renamed = apply_substitution(s_, f, s);
    EXPECT_EQ(testing::truth_table_unsat(f), testing::truth_table_unsat(renamed));
    unsat_seen += testing::truth_table_unsat(f) ? 1 : 0;
  }
  EXPECT_GT(unsat_seen, 100);
}

}  // namespace
}  // namespace prunevc
