#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "bnc/common.hpp"

namespace bnc {

// Total order over node ids. Arcs always point from a lower rank to a
// higher rank, which keeps every graph acyclic by construction. For
// classifier-derived orderings the class node has rank 0.
struct NodeOrdering {
  std::vector<NodeId> order;  // rank -> node id
  std::vector<int> position;  // node id -> rank, -1 when absent

  static NodeOrdering of(std::vector<NodeId> order);
  int rank(NodeId n) const {
    return (n >= 0 && static_cast<std::size_t>(n) < position.size())
               ? position[n]
               : -1;
  }
  bool contains(NodeId n) const { return rank(n) >= 0; }
  std::size_t size() const { return order.size(); }
};

class Dag {
 public:
  Dag() = default;
  explicit Dag(NodeOrdering ordering);

  const NodeOrdering& ordering() const { return ordering_; }
  const std::vector<NodeId>& nodes() const { return ordering_.order; }

  // Inserts the arc oriented from the lower-rank endpoint to the higher-rank
  // endpoint, whatever the argument order. Self-loops, duplicates and
  // unknown ids are errors.
  void add_arc(NodeId a, NodeId b);
  void remove_arc(NodeId parent, NodeId child);
  bool has_arc(NodeId parent, NodeId child) const;
  bool adjacent(NodeId a, NodeId b) const;

  // Arcs in insertion order.
  const std::vector<std::pair<NodeId, NodeId>>& arcs() const { return arcs_; }
  std::size_t arc_count() const { return arcs_.size(); }

  // Sorted by rank (so the class node, when a parent, comes first).
  std::vector<NodeId> parents(NodeId n) const;
  std::vector<NodeId> children(NodeId n) const;

  // True iff a path exists between a and b in the undirected skeleton.
  bool adjacency_path_exists(NodeId a, NodeId b) const;

  // parents(n) + children(n) + parents of children, never containing n.
  std::vector<NodeId> markov_blanket(NodeId n) const;

  // Candidate d-separating set for the pair (a,b), the direct a-b edge
  // treated as absent: the neighbours of a that lie on some skeleton path
  // to b, or the b-side equivalent, whichever is smaller (ties pick a's
  // side). Empty iff no path survives.
  std::vector<NodeId> cut_set(NodeId a, NodeId b) const;

  // Debug export, one "parent -> child" line per arc.
  void write_arcs(std::ostream& out) const;

 private:
  void check_node(NodeId n) const;
  std::vector<NodeId> neighbours(NodeId n) const;
  // Nodes reachable from `from` in the skeleton, with `banned` removed and
  // the direct from-excl_a/excl_b edge skipped.
  std::vector<bool> reachable(NodeId from, NodeId banned, NodeId excl_a,
                              NodeId excl_b) const;

  NodeOrdering ordering_;
  std::vector<std::pair<NodeId, NodeId>> arcs_;
  std::vector<std::vector<NodeId>> parents_;   // by node id
  std::vector<std::vector<NodeId>> children_;  // by node id
};

}  // namespace bnc
