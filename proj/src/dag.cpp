#include "bnc/dag.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

namespace bnc {

NodeOrdering NodeOrdering::of(std::vector<NodeId> order) {
  NodeOrdering o;
  NodeId max_id = -1;
  for (NodeId n : order) {
    if (n < 0) throw Error("negative node id");
    max_id = std::max(max_id, n);
  }
  o.position.assign(static_cast<std::size_t>(max_id) + 1, -1);
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (o.position[order[r]] != -1) {
      throw Error("node " + std::to_string(order[r]) + " repeated in ordering");
    }
    o.position[order[r]] = static_cast<int>(r);
  }
  o.order = std::move(order);
  return o;
}

Dag::Dag(NodeOrdering ordering) : ordering_(std::move(ordering)) {
  parents_.resize(ordering_.position.size());
  children_.resize(ordering_.position.size());
}

void Dag::check_node(NodeId n) const {
  if (!ordering_.contains(n)) {
    throw Error("unknown node id " + std::to_string(n));
  }
}

void Dag::add_arc(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  if (a == b) throw Error("self loop on node " + std::to_string(a));
  if (ordering_.rank(a) > ordering_.rank(b)) std::swap(a, b);
  if (has_arc(a, b)) {
    throw Error("duplicate arc " + std::to_string(a) + " -> " + std::to_string(b));
  }
  arcs_.emplace_back(a, b);
  children_[a].push_back(b);
  parents_[b].push_back(a);
}

void Dag::remove_arc(NodeId parent, NodeId child) {
  auto it = std::find(arcs_.begin(), arcs_.end(), std::make_pair(parent, child));
  if (it == arcs_.end()) {
    throw Error("no arc " + std::to_string(parent) + " -> " + std::to_string(child));
  }
  arcs_.erase(it);
  auto& ch = children_[parent];
  ch.erase(std::find(ch.begin(), ch.end(), child));
  auto& pa = parents_[child];
  pa.erase(std::find(pa.begin(), pa.end(), parent));
}

bool Dag::has_arc(NodeId parent, NodeId child) const {
  if (!ordering_.contains(parent) || !ordering_.contains(child)) return false;
  const auto& ch = children_[parent];
  return std::find(ch.begin(), ch.end(), child) != ch.end();
}

bool Dag::adjacent(NodeId a, NodeId b) const {
  return has_arc(a, b) || has_arc(b, a);
}

std::vector<NodeId> Dag::parents(NodeId n) const {
  check_node(n);
  std::vector<NodeId> out = parents_[n];
  std::sort(out.begin(), out.end(), [this](NodeId x, NodeId y) {
    return ordering_.rank(x) < ordering_.rank(y);
  });
  return out;
}

std::vector<NodeId> Dag::children(NodeId n) const {
  check_node(n);
  std::vector<NodeId> out = children_[n];
  std::sort(out.begin(), out.end(), [this](NodeId x, NodeId y) {
    return ordering_.rank(x) < ordering_.rank(y);
  });
  return out;
}

std::vector<NodeId> Dag::neighbours(NodeId n) const {
  std::vector<NodeId> out = parents_[n];
  out.insert(out.end(), children_[n].begin(), children_[n].end());
  return out;
}

std::vector<bool> Dag::reachable(NodeId from, NodeId banned, NodeId excl_a,
                                 NodeId excl_b) const {
  std::vector<bool> seen(ordering_.position.size(), false);
  if (from == banned) return seen;
  seen[from] = true;
  std::deque<NodeId> queue{from};
  while (!queue.empty()) {
    NodeId cur = queue.front();
    queue.pop_front();
    for (NodeId next : neighbours(cur)) {
      if (next == banned || seen[next]) continue;
      if ((cur == excl_a && next == excl_b) || (cur == excl_b && next == excl_a)) {
        continue;
      }
      seen[next] = true;
      queue.push_back(next);
    }
  }
  return seen;
}

bool Dag::adjacency_path_exists(NodeId a, NodeId b) const {
  check_node(a);
  check_node(b);
  if (a == b) throw Error("path query requires distinct nodes");
  return reachable(a, /*banned=*/-1, -1, -1)[b];
}

std::vector<NodeId> Dag::markov_blanket(NodeId n) const {
  check_node(n);
  std::vector<NodeId> blanket = parents_[n];
  for (NodeId child : children_[n]) {
    blanket.push_back(child);
    for (NodeId spouse : parents_[child]) {
      if (spouse != n) blanket.push_back(spouse);
    }
  }
  std::sort(blanket.begin(), blanket.end());
  blanket.erase(std::unique(blanket.begin(), blanket.end()), blanket.end());
  return blanket;
}

std::vector<NodeId> Dag::cut_set(NodeId a, NodeId b) const {
  check_node(a);
  check_node(b);
  if (a == b) throw Error("cut set requires distinct nodes");

  // Neighbours of `side` that still reach `other` once `side` itself (and
  // the direct a-b edge) is out of the way.
  auto side_candidates = [&](NodeId side, NodeId other) {
    std::vector<bool> from_other = reachable(other, /*banned=*/side, a, b);
    std::vector<NodeId> cands;
    for (NodeId nb : neighbours(side)) {
      if (nb == other || nb == a || nb == b) continue;
      if (from_other[nb]) cands.push_back(nb);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
  };

  std::vector<NodeId> side_a = side_candidates(a, b);
  std::vector<NodeId> side_b = side_candidates(b, a);
  return side_a.size() <= side_b.size() ? side_a : side_b;
}

void Dag::write_arcs(std::ostream& out) const {
  for (const auto& [p, c] : arcs_) {
    out << p << " -> " << c << '\n';
  }
}

}  // namespace bnc
