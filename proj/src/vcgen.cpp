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

#include <algorithm>
#include <charconv>
#include <queue>
#include <set>

#include "prunevc/pruner.hpp"

namespace prunevc {

// ---------------------------------------------------------------------------
// Graph structure.

void DsaGraph::add_node(NodeId id, NodeColor color, Term formula) {
  if (id == 0) throw GraphError("node ids must be positive");
  if (index_.count(id) != 0) throw GraphError("duplicate node id " + std::to_string(id));
  index_.emplace(id, nodes_.size());
  nodes_.push_back(DsaNode{id, color, formula});
}

void DsaGraph::add_edge(NodeId from, NodeId to) {
  for (NodeId id : {from, to}) {
    if (index_.count(id) == 0) {
      throw GraphError("edge references unknown node " + std::to_string(id));
    }
  }
  const std::pair<NodeId, NodeId> edge{from, to};
  if (std::find(edges_.begin(), edges_.end(), edge) == edges_.end()) edges_.push_back(edge);
}

const DsaNode* DsaGraph::find(NodeId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

DsaNode* DsaGraph::find(NodeId id) {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

std::vector<NodeId> DsaGraph::predecessors(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& [from, to] : edges_) {
    if (to == id) out.push_back(from);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> DsaGraph::successors(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& [from, to] : edges_) {
    if (from == id) out.push_back(to);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> DsaGraph::topological_order() const {
  std::map<NodeId, std::size_t> in_degree;
  std::map<NodeId, std::vector<NodeId>> out_edges;
  for (const DsaNode& n : nodes_) in_degree[n.id] = 0;
  for (const auto& [from, to] : edges_) {
    ++in_degree[to];
    out_edges[from].push_back(to);
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [id, degree] : in_degree) {
    if (degree == 0) ready.push(id);
  }
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    const NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId next : out_edges[id]) {
      if (--in_degree[next] == 0) ready.push(next);
    }
  }
  if (order.size() != nodes_.size()) {
    for (const auto& [id, degree] : in_degree) {
      if (degree != 0) throw GraphError("cycle through node " + std::to_string(id));
    }
  }
  return order;
}

void DsaGraph::validate() const { (void)topological_order(); }

std::string DsaGraph::to_text() const {
  std::string out;
  for (const DsaNode& n : nodes_) {
    out += "node " + std::to_string(n.id) +
           (n.color == NodeColor::kAssertion ? " assert " : " assume ") +
           print_term(n.formula) + "\n";
  }
  for (const auto& [from, to] : edges_) {
    out += "edge " + std::to_string(from) + " " + std::to_string(to) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format.

namespace {

struct Word {
  std::string_view text;
  std::size_t column;  // 1-based
};

// Next whitespace-delimited word of `line` at or after `pos`.
std::optional<Word> next_word(std::string_view line, std::size_t& pos) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
    ++pos;
  }
  if (pos >= line.size()) return std::nullopt;
  const std::size_t start = pos;
  while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
    ++pos;
  }
  return Word{line.substr(start, pos - start), start + 1};
}

NodeId parse_id(const std::optional<Word>& word, std::size_t line_no, std::string_view what) {
  if (!word) throw ParseError("missing " + std::string(what), line_no, 1);
  NodeId id = 0;
  const auto* end = word->text.data() + word->text.size();
  const auto [ptr, ec] = std::from_chars(word->text.data(), end, id);
  if (ec != std::errc() || ptr != end || id == 0) {
    throw ParseError("expected a positive integer " + std::string(what) + ", got '" +
                         std::string(word->text) + "'",
                     line_no, word->column);
  }
  return id;
}

}  // namespace

DsaGraph parse_graph(Session& session, std::string_view text) {
  struct PendingEdge {
    NodeId from;
    NodeId to;
    std::size_t line;
  };
  DsaGraph graph;
  std::vector<PendingEdge> edges;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (const auto semi = line.find(';'); semi != std::string_view::npos) {
      line = line.substr(0, semi);
    }

    std::size_t pos = 0;
    const auto keyword = next_word(line, pos);
    if (!keyword) continue;

    if (keyword->text == "node") {
      const NodeId id = parse_id(next_word(line, pos), line_no, "node id");
      const auto color_word = next_word(line, pos);
      if (!color_word || (color_word->text != "assert" && color_word->text != "assume")) {
        throw ParseError("expected 'assert' or 'assume'", line_no,
                         color_word ? color_word->column : line.size() + 1);
      }
      const std::string_view formula_text = line.substr(pos);
      Term formula;
      try {
        formula = parse_term(session, formula_text);
      } catch (const ParseError& e) {
        // Formula positions are relative to the rest of the line.
        throw ParseError(e.message(), line_no + e.line() - 1,
                         e.line() == 1 ? pos + e.column() : e.column());
      }
      try {
        graph.add_node(id, color_word->text == "assert" ? NodeColor::kAssertion
                                                        : NodeColor::kAssumption,
                       formula);
      } catch (const GraphError& e) {
        throw GraphError("line " + std::to_string(line_no) + ": " + e.what());
      }
    } else if (keyword->text == "edge") {
      const NodeId from = parse_id(next_word(line, pos), line_no, "source id");
      const NodeId to = parse_id(next_word(line, pos), line_no, "target id");
      if (const auto extra = next_word(line, pos)) {
        throw ParseError("unexpected '" + std::string(extra->text) + "'", line_no,
                         extra->column);
      }
      edges.push_back({from, to, line_no});
    } else {
      throw ParseError("expected 'node' or 'edge', got '" + std::string(keyword->text) + "'",
                       line_no, keyword->column);
    }
  }

  for (const PendingEdge& e : edges) {
    try {
      graph.add_edge(e.from, e.to);
    } catch (const GraphError& err) {
      throw GraphError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  graph.validate();
  return graph;
}

// ---------------------------------------------------------------------------
// Behaviors and VCs.

namespace {

// n-ary `head` over the operands, splicing operands that already have `head`.
Term associate(Session& session, std::string_view head, std::initializer_list<Term> operands) {
  std::vector<Term> children;
  for (Term t : operands) {
    if (t.is(head)) {
      children.insert(children.end(), t.children().begin(), t.children().end());
    } else {
      children.push_back(t);
    }
  }
  return session.intern(head, children);
}

Term tidy(Session& session, Term t, const CommutativityRegistry& registry) {
  return normalize(session, simplify(session, t), registry);
}

}  // namespace

Behaviors behaviors(Session& session, const DsaGraph& graph,
                    const CommutativityRegistry& registry) {
  Behaviors out;
  for (NodeId id : graph.topological_order()) {
    const DsaNode& node = *graph.find(id);
    const Term phi = normalize(session, node.formula, registry);

    Term alpha = session.true_term();
    const std::vector<NodeId> preds = graph.predecessors(id);
    if (!preds.empty()) {
      std::vector<Term> betas;
      for (NodeId p : preds) {
        const Term beta = out.at(p).beta;
        if (beta.is("or")) {
          betas.insert(betas.end(), beta.children().begin(), beta.children().end());
        } else {
          betas.push_back(beta);
        }
      }
      alpha = tidy(session, session.make_or(betas), registry);
    }

    NodeBehavior b;
    b.alpha = alpha;
    b.beta = tidy(session, associate(session, "and", {alpha, phi}), registry);
    b.gamma = node.color == NodeColor::kAssertion
                  ? tidy(session, associate(session, "and", {alpha, session.make_not(phi)}),
                         registry)
                  : session.false_term();
    out.emplace(id, b);
  }
  return out;
}

Term vc_from_behaviors(Session& session, const Behaviors& behaviors,
                       const CommutativityRegistry& registry) {
  std::vector<Term> gammas;
  for (const auto& [id, b] : behaviors) {
    if (b.gamma.is("or")) {
      gammas.insert(gammas.end(), b.gamma.children().begin(), b.gamma.children().end());
    } else {
      gammas.push_back(b.gamma);
    }
  }
  return tidy(session, session.make_or(gammas), registry);
}

Term vc(Session& session, const DsaGraph& graph, const CommutativityRegistry& registry) {
  return vc_from_behaviors(session, behaviors(session, graph, registry), registry);
}

// ---------------------------------------------------------------------------
// Graph-level incremental checking.

namespace {

class CoverageCheck {
 public:
  CoverageCheck(Session& session, const DsaGraph& old_graph, const DsaGraph& new_graph,
                const Substitution& subst, const CommutativityRegistry& registry)
      : session_(session),
        registry_(registry),
        subst_(subst),
        old_(behaviors(session, old_graph, registry)),
        new_(behaviors(session, new_graph, registry)),
        old_graph_(old_graph),
        new_graph_(new_graph) {}

  // Whether new node `n` is an assertion whose wrong behavior implies the
  // wrong behavior of old assertion `o`.
  bool covers(NodeId o, NodeId n) {
    const DsaNode* old_node = old_graph_.find(o);
    const DsaNode* new_node = new_graph_.find(n);
    if (old_node == nullptr || new_node == nullptr) return false;
    if (old_node->color != NodeColor::kAssertion || new_node->color != NodeColor::kAssertion) {
      return false;
    }
    const Term old_phi = renamed(old_node->formula);
    const Term new_phi = normalize(session_, new_node->formula, registry_);
    if (old_phi != new_phi) return false;
    return implies(new_.at(n).alpha, renamed(old_.at(o).alpha));
  }

 private:
  Term renamed(Term t) {
    return normalize(session_, simplify(session_, apply_substitution(session_, t, subst_)),
                     registry_);
  }

  Session& session_;
  const CommutativityRegistry& registry_;
  const Substitution& subst_;
  Behaviors old_;
  Behaviors new_;
  const DsaGraph& old_graph_;
  const DsaGraph& new_graph_;
};

}  // namespace

Correspondence graph_correspondence(Session& session, const DsaGraph& old_graph,
                                    const DsaGraph& new_graph, const Substitution& subst,
                                    const CommutativityRegistry& registry) {
  CoverageCheck check(session, old_graph, new_graph, subst, registry);
  const std::vector<NodeId> old_order = old_graph.topological_order();
  std::set<NodeId> used;
  Correspondence out;
  for (NodeId n : new_graph.topological_order()) {
    if (new_graph.find(n)->color != NodeColor::kAssertion) continue;
    for (NodeId o : old_order) {
      if (used.count(o) != 0) continue;
      if (check.covers(o, n)) {
        used.insert(o);
        out.emplace(o, n);
        break;
      }
    }
  }
  return out;
}

DsaGraph demote_shared_assertions(Session& session, const DsaGraph& old_graph,
                                  const DsaGraph& new_graph,
                                  const Correspondence& correspondence,
                                  const Substitution& subst,
                                  const CommutativityRegistry& registry) {
  CoverageCheck check(session, old_graph, new_graph, subst, registry);
  DsaGraph result = new_graph;
  std::set<NodeId> targets;
  for (const auto& [o, n] : correspondence) {
    if (!targets.insert(n).second) {
      throw GraphError("new node " + std::to_string(n) + " is corresponded twice");
    }
    if (!check.covers(o, n)) {
      throw GraphError("old node " + std::to_string(o) + " does not cover new node " +
                       std::to_string(n));
    }
    result.find(n)->color = NodeColor::kAssumption;
  }
  return result;
}

}  // namespace prunevc
