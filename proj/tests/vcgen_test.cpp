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

#include "prunevc/vcgen.hpp"

#include <gtest/gtest.h>

#include "prunevc/errors.hpp"
#include "prunevc/oracle.hpp"
#include "test_oracles.hpp"

namespace prunevc {
namespace {

constexpr std::string_view kOldGraph = R"(
node 1 assume f1
node 2 assert f2
edge 1 2
)";

constexpr std::string_view kNewGraph = R"(
node 1 assume f1
node 2 assert f2
node 3 assert f3
edge 1 2
edge 2 3
)";

class VcgenTest : public ::testing::Test {
 protected:
  Term P(std::string_view text) { return normalize(s_, parse_term(s_, text)); }
  std::string str(Term t) { return print_term(t); }

  Session s_;
};

TEST_F(VcgenTest, ParsesAChain) {
  const DsaGraph g = parse_graph(s_, kNewGraph);
  ASSERT_EQ(g.nodes().size(), 3U);
  EXPECT_EQ(g.find(1)->color, NodeColor::kAssumption);
  EXPECT_EQ(g.find(3)->color, NodeColor::kAssertion);
  EXPECT_EQ(g.find(3)->formula, P("f3"));
  EXPECT_EQ(g.topological_order(), (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(g.predecessors(3), (std::vector<NodeId>{2}));
  EXPECT_EQ(g.successors(1), (std::vector<NodeId>{2}));
}

TEST_F(VcgenTest, ParsesFormulasWithSpacesAndComments) {
  const DsaGraph g = parse_graph(s_, "; header\nnode 7 assert (> x 2) ; trailing\n");
  ASSERT_EQ(g.nodes().size(), 1U);
  EXPECT_EQ(str(g.find(7)->formula), "(> x 2)");
}

TEST_F(VcgenTest, RoundTripsThroughText) {
  const DsaGraph g = parse_graph(s_, kNewGraph);
  const DsaGraph again = parse_graph(s_, g.to_text());
  EXPECT_EQ(again.to_text(), g.to_text());
}

TEST_F(VcgenTest, RejectsMalformedGraphs) {
  EXPECT_THROW(parse_graph(s_, "node 1 assert p\nedge 1 2\n"), GraphError);
  EXPECT_THROW(parse_graph(s_, "node 1 assert p\nnode 2 assert q\nedge 1 2\nedge 2 1\n"),
               GraphError);
  EXPECT_THROW(parse_graph(s_, "node 1 assert p\nnode 1 assume q\n"), GraphError);
  EXPECT_THROW(parse_graph(s_, "node 0 assert p\n"), ParseError);
  EXPECT_THROW(parse_graph(s_, "node 1 maybe p\n"), ParseError);
  EXPECT_THROW(parse_graph(s_, "vertex 1 assert p\n"), ParseError);
}

TEST_F(VcgenTest, FormulaErrorsCarryFileLines) {
  try {
    parse_graph(s_, "node 1 assume p\nnode 2 assert (and p #)\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 22U);
  }
}

TEST_F(VcgenTest, ChainBehaviors) {
  const DsaGraph g = parse_graph(s_, kNewGraph);
  const Behaviors b = behaviors(s_, g);
  EXPECT_EQ(str(b.at(1).alpha), "true");
  EXPECT_EQ(str(b.at(1).beta), "f1");
  EXPECT_EQ(str(b.at(1).gamma), "false");
  EXPECT_EQ(str(b.at(2).alpha), "f1");
  EXPECT_EQ(str(b.at(2).beta), "(and f1 f2)");
  EXPECT_EQ(str(b.at(2).gamma), "(and f1 (not f2))");
  EXPECT_EQ(str(b.at(3).alpha), "(and f1 f2)");
  EXPECT_EQ(str(b.at(3).beta), "(and f1 f2 f3)");
  EXPECT_EQ(str(b.at(3).gamma), "(and f1 f2 (not f3))");
}

TEST_F(VcgenTest, SingleNodeBehaviors) {
  EXPECT_TRUE(behaviors(s_, parse_graph(s_, "node 1 assume p")).at(1).gamma.is("false"));
  EXPECT_EQ(str(behaviors(s_, parse_graph(s_, "node 1 assert p")).at(1).gamma), "(not p)");
}

TEST_F(VcgenTest, JoinsDisjoinPredecessors) {
  const DsaGraph g = parse_graph(s_,
                                 "node 1 assume a\nnode 2 assume b\nnode 3 assert c\n"
                                 "edge 1 3\nedge 2 3\n");
  EXPECT_EQ(str(behaviors(s_, g).at(3).gamma), "(and (not c) (or a b))");
}

TEST_F(VcgenTest, AddedAssertionVcs) {
  EXPECT_EQ(str(vc(s_, parse_graph(s_, kOldGraph))), "(and f1 (not f2))");
  EXPECT_EQ(vc(s_, parse_graph(s_, kNewGraph)),
            P("(or (and f1 (not f2)) (and f1 f2 (not f3)))"));
  EXPECT_TRUE(vc(s_, parse_graph(s_, "node 1 assume p\nnode 2 assume q\nedge 1 2")).is("false"));
}

TEST_F(VcgenTest, AddedAssertionCorrespondenceAndDemotion) {
  const DsaGraph old_g = parse_graph(s_, kOldGraph);
  const DsaGraph new_g = parse_graph(s_, kNewGraph);
  const Correspondence c = graph_correspondence(s_, old_g, new_g, Substitution{});
  EXPECT_EQ(c, (Correspondence{{2, 2}}));
  const DsaGraph demoted = demote_shared_assertions(s_, old_g, new_g, c);
  EXPECT_EQ(demoted.find(2)->color, NodeColor::kAssumption);
  EXPECT_EQ(str(vc(s_, demoted)), "(and f1 f2 (not f3))");
}

TEST_F(VcgenTest, IdenticalGraphsDemoteEverything) {
  const DsaGraph g = parse_graph(s_, kNewGraph);
  const Correspondence c = graph_correspondence(s_, g, g, Substitution{});
  EXPECT_EQ(c, (Correspondence{{2, 2}, {3, 3}}));
  EXPECT_TRUE(vc(s_, demote_shared_assertions(s_, g, g, c)).is("false"));
}

TEST_F(VcgenTest, EmptyCorrespondenceChangesNothing) {
  const DsaGraph new_g = parse_graph(s_, kNewGraph);
  const DsaGraph out = demote_shared_assertions(s_, parse_graph(s_, kOldGraph), new_g, {});
  EXPECT_EQ(out.to_text(), new_g.to_text());
}

TEST_F(VcgenTest, DisjointFormulasDoNotCorrespond) {
  const DsaGraph a = parse_graph(s_, "node 1 assert p");
  const DsaGraph b = parse_graph(s_, "node 1 assert q");
  EXPECT_TRUE(graph_correspondence(s_, a, b, Substitution{}).empty());
}

TEST_F(VcgenTest, RenamingEnablesCorrespondence) {
  const DsaGraph a = parse_graph(s_, "node 1 assume (> x 0)\nnode 2 assert (> x 1)\nedge 1 2");
  const DsaGraph b = parse_graph(s_, "node 1 assume (> y 0)\nnode 2 assert (> y 1)\nedge 1 2");
  Substitution s;
  s.add("x", "y");
  EXPECT_EQ(graph_correspondence(s_, a, b, s), (Correspondence{{2, 2}}));
  EXPECT_TRUE(graph_correspondence(s_, a, b, Substitution{}).empty());
}

TEST_F(VcgenTest, DemotionRejectsNonMatchingPairs) {
  const DsaGraph old_g = parse_graph(s_, kOldGraph);
  const DsaGraph new_g = parse_graph(s_, kNewGraph);
  EXPECT_THROW(demote_shared_assertions(s_, old_g, new_g, {{2, 3}}), GraphError);
  EXPECT_THROW(demote_shared_assertions(s_, old_g, new_g, {{1, 1}}), GraphError);
  EXPECT_THROW(demote_shared_assertions(s_, old_g, new_g, {{2, 9}}), GraphError);
}

// Equal formulas alone are not enough: the new assertion must be reached
// under at least the old precondition, or demoting it hides a failure.
TEST_F(VcgenTest, EqualFormulaUnderWeakerPreconditionIsNotDemoted) {
  const DsaGraph old_g = parse_graph(s_, "node 1 assume p\nnode 2 assert p\nedge 1 2");
  const DsaGraph new_g = parse_graph(s_, "node 2 assert p");
  ASSERT_TRUE(is_unsat(vc(s_, old_g)));
  ASSERT_FALSE(is_unsat(vc(s_, new_g)));
  EXPECT_TRUE(graph_correspondence(s_, old_g, new_g, Substitution{}).empty());
  EXPECT_THROW(demote_shared_assertions(s_, old_g, new_g, {{2, 2}}), GraphError);
}

TEST_F(VcgenTest, VcIsUnsatIffEveryGammaIs) {
  GeneratorParams params;
  params.max_atoms = 5;
  params.max_depth = 2;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    params.seed = seed;
    FormulaGenerator gen(s_, params);
    const DsaGraph g = gen.graph(6);
    const Behaviors b = behaviors(s_, g);
    bool all_unsat = true;
    for (const auto& [id, nb] : b) all_unsat = all_unsat && testing::truth_table_unsat(nb.gamma);
    EXPECT_EQ(testing::truth_table_unsat(vc(s_, g)), all_unsat) << g.to_text();
  }
}

TEST_F(VcgenTest, BetaIsAlphaAndFormula) {
  GeneratorParams params;
  params.max_atoms = 5;
  params.max_depth = 2;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    params.seed = seed;
    FormulaGenerator gen(s_, params);
    const DsaGraph g = gen.graph(6);
    const Behaviors b = behaviors(s_, g);
    for (const DsaNode& n : g.nodes()) {
      const NodeBehavior& nb = b.at(n.id);
      testing::for_each_row({nb.alpha, nb.beta, n.formula}, [&](const auto& row) {
        ASSERT_EQ(testing::truth_value(nb.beta, row),
                  testing::truth_value(nb.alpha, row) && testing::truth_value(n.formula, row));
      });
    }
  }
}

TEST_F(VcgenTest, DemotionPreservesSatisfiabilityWhenOldIsProven) {
  GeneratorParams params;
  params.max_atoms = 5;
  params.max_depth = 2;
  int checked = 0;
  int demoted_any = 0;
  for (std::uint64_t seed = 0; checked < 300 && seed < 20000; ++seed) {
    params.seed = seed;
    FormulaGenerator gen(s_, params);
    const DsaGraph old_g = gen.graph(6);
    if (!testing::truth_table_unsat(vc(s_, old_g))) continue;
    const DsaGraph new_g = gen.mutate_graph(old_g);
    const Correspondence c = graph_correspondence(s_, old_g, new_g, Substitution{});
    const DsaGraph out = demote_shared_assertions(s_, old_g, new_g, c);
    ++checked;
    demoted_any += c.empty() ? 0 : 1;
    EXPECT_EQ(testing::truth_table_unsat(vc(s_, new_g)), testing::truth_table_unsat(vc(s_, out)))
        << old_g.to_text() << "---\n" << new_g.to_text();
  }
  EXPECT_EQ(checked, 300);
  EXPECT_GT(demoted_any, 50);
}

}  // namespace
}  // namespace prunevc
