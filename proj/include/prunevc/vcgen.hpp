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

// DSA graphs and naive verification-condition generation.
//
// A DSA graph is an acyclic control-flow graph whose nodes either assert
// (black) or assume (white) a formula. Each node i gets
//   alpha_i = true for initial nodes, else the `or` of predecessor betas,
//   beta_i  = alpha_i and phi_i,
//   gamma_i = alpha_i and not phi_i for assertions, false for assumptions,
// and the verification condition is the `or` of all gammas.

#ifndef PRUNEVC_VCGEN_HPP_
#define PRUNEVC_VCGEN_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prunevc/term.hpp"

namespace prunevc {

using NodeId = std::uint32_t;

enum class NodeColor {
  kAssertion,   // black
  kAssumption,  // white
};

struct DsaNode {
  NodeId id;
  NodeColor color;
  Term formula;
};

class DsaGraph {
 public:
  DsaGraph() = default;

  // Throws GraphError on a duplicate or zero id.
  void add_node(NodeId id, NodeColor color, Term formula);
  // Throws GraphError when either endpoint is unknown.
  void add_edge(NodeId from, NodeId to);
  // Throws GraphError if the graph has a cycle.
  void validate() const;

  const std::vector<DsaNode>& nodes() const { return nodes_; }
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
  const DsaNode* find(NodeId id) const;
  DsaNode* find(NodeId id);

  std::vector<NodeId> predecessors(NodeId id) const;
  std::vector<NodeId> successors(NodeId id) const;
  // Kahn's algorithm, smallest ready id first. Throws GraphError on a cycle.
  std::vector<NodeId> topological_order() const;

  // Line format accepted by parse_graph.
  std::string to_text() const;

 private:
  std::vector<DsaNode> nodes_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::map<NodeId, std::size_t> index_;
};

// `node <id> <assert|assume> <formula>` and `edge <from> <to>` lines, with
// `;` comments. Throws ParseError (bad syntax, bad formula) or GraphError
// (cycle, unknown id, duplicate id).
DsaGraph parse_graph(Session& session, std::string_view text);

struct NodeBehavior {
  Term alpha;  // precondition
  Term beta;   // postcondition
  Term gamma;  // wrong behavior
};

using Behaviors = std::map<NodeId, NodeBehavior>;

// All behaviors, simplified and normalized.
Behaviors behaviors(Session& session, const DsaGraph& graph,
                    const CommutativityRegistry& registry = {});

Term vc(Session& session, const DsaGraph& graph, const CommutativityRegistry& registry = {});

Term vc_from_behaviors(Session& session, const Behaviors& behaviors,
                       const CommutativityRegistry& registry = {});

using Correspondence = std::map<NodeId, NodeId>;  // old id -> new id

// Pairs assertion nodes of the two graphs that the old proof already covers:
// the (renamed, normalized) formulas are identical and the new node's
// precondition structurally implies the old node's. Each node is used once;
// new nodes are visited in topological order and take the first old match.
Correspondence graph_correspondence(Session& session, const DsaGraph& old_graph,
                                    const DsaGraph& new_graph, const Substitution& subst,
                                    const CommutativityRegistry& registry = {});

// Copy of `new_graph` with every corresponded assertion turned into an
// assumption. Throws GraphError for a pair graph_correspondence would not
// produce.
DsaGraph demote_shared_assertions(Session& session, const DsaGraph& old_graph,
                                  const DsaGraph& new_graph,
                                  const Correspondence& correspondence,
                                  const Substitution& subst = {},
                                  const CommutativityRegistry& registry = {});

}  // namespace prunevc

#endif  // PRUNEVC_VCGEN_HPP_
