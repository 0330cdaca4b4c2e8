#include "bnc/learners.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace bnc {

const char* kind_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::naive_bayes: return "naive-bayes";
    case ClassifierKind::tan: return "tan";
    case ClassifierKind::ban: return "ban";
    case ClassifierKind::gbn: return "gbn";
  }
  return "?";
}

std::optional<ClassifierKind> kind_from_name(const std::string& name) {
  if (name == "naive-bayes" || name == "nb") return ClassifierKind::naive_bayes;
  if (name == "tan") return ClassifierKind::tan;
  if (name == "ban") return ClassifierKind::ban;
  if (name == "gbn") return ClassifierKind::gbn;
  return std::nullopt;
}

namespace {

struct ScoredPair {
  double score;
  std::size_t a;  // indices into the feature/node list, a < b
  std::size_t b;
};

// Descending score; ties by lower pair index.
void sort_pairs(std::vector<ScoredPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& x, const ScoredPair& y) {
    if (x.score != y.score) return x.score > y.score;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[x] = y;
    return true;
  }
};

NodeOrdering class_first_ordering(const Dataset& ds,
                                  std::span<const NodeId> features) {
  std::vector<NodeId> order{static_cast<NodeId>(ds.class_index)};
  order.insert(order.end(), features.begin(), features.end());
  return NodeOrdering::of(std::move(order));
}

std::vector<NodeId> trainable_features(const Dataset& ds) {
  auto features = ds.feature_ids();
  if (features.empty()) throw Error("no features to learn from");
  if (ds.class_attr().arity() < 2) {
    throw Error("class column '" + ds.class_attr().name +
                "' has fewer than 2 values");
  }
  return features;
}

double cached_cmi(const Dataset& ds, MiCache* cache, NodeId i, NodeId j,
                  std::span<const NodeId> z) {
  return cache ? cache->cmi(i, j, z)
               : conditional_mutual_information(ds, i, j, z);
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> chow_liu_tree(
    std::span<const NodeId> features, const PairScoreFn& score,
    std::size_t* evaluations) {
  if (features.empty()) throw Error("chow_liu_tree needs at least one feature");
  const std::size_t n = features.size();
  std::vector<ScoredPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  std::size_t evals = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      pairs.push_back({score(features[a], features[b]), a, b});
      ++evals;
    }
  }
  if (evaluations) *evaluations += evals;
  sort_pairs(pairs);

  std::vector<std::pair<NodeId, NodeId>> edges;
  UnionFind uf(n);
  for (const auto& p : pairs) {
    if (p.score <= 0.0) break;  // zero-score edges never join components
    if (uf.unite(p.a, p.b)) {
      edges.emplace_back(features[p.a], features[p.b]);
      if (edges.size() == n - 1) break;
    }
  }
  return edges;
}

Dag cbl1(const Dataset& ds, std::span<const NodeId> nodes,
         const NodeOrdering& ordering, MiThreshold t,
         std::optional<NodeId> augment, MiCache* cache, LearnStats* stats) {
  if (nodes.size() < 1) throw Error("cbl1 needs at least one node");
  for (NodeId n : nodes) {
    if (augment && *augment == n) {
      throw Error("augment node must be excluded from the node set");
    }
    if (!ordering.contains(n)) {
      throw Error("node " + std::to_string(n) + " missing from the ordering");
    }
  }

  std::vector<NodeId> aug_only;
  if (augment) aug_only.push_back(*augment);
  auto test_score = [&](NodeId i, NodeId j, std::vector<NodeId> z) {
    if (augment) z.push_back(*augment);
    return cached_cmi(ds, cache, i, j, z);
  };

  // Phase 1: draft. All pairwise scores, then descending-score insertion
  // skipping pairs whose endpoints are already skeleton-connected.
  const std::size_t n = nodes.size();
  std::vector<ScoredPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double s = cached_cmi(ds, cache, nodes[a], nodes[b], aug_only);
      if (stats) stats->draft_pair_scores++;
      if (s > t.epsilon) pairs.push_back({s, a, b});
    }
  }
  sort_pairs(pairs);

  Dag g(ordering);
  std::vector<ScoredPair> skipped;
  for (const auto& p : pairs) {
    NodeId i = nodes[p.a], j = nodes[p.b];
    if (!g.adjacency_path_exists(i, j)) {
      g.add_arc(i, j);
    } else {
      skipped.push_back(p);
    }
  }

  // Phase 2: thicken. Re-test every skipped pair against its cut set.
  for (const auto& p : skipped) {
    NodeId i = nodes[p.a], j = nodes[p.b];
    if (stats) stats->thicken_tests++;
    if (test_score(i, j, g.cut_set(i, j)) > t.epsilon) {
      g.add_arc(i, j);
    }
  }

  // Phase 3: thin. One pass in insertion order; an arc is dropped when its
  // endpoints test independent given the cut set once the arc is removed.
  const auto snapshot = g.arcs();
  for (const auto& [p, c] : snapshot) {
    Dag trial = g;
    trial.remove_arc(p, c);
    if (!trial.adjacency_path_exists(p, c)) continue;
    if (stats) stats->thinning_tests++;
    if (!(test_score(p, c, trial.cut_set(p, c)) > t.epsilon)) {
      g = std::move(trial);
    }
  }
  return g;
}

LearnedStructure learn_naive_bayes(const Dataset& ds) {
  auto features = trainable_features(ds);
  LearnedStructure s;
  s.kind = ClassifierKind::naive_bayes;
  s.class_node = ds.class_index;
  s.dag = Dag(class_first_ordering(ds, features));
  for (NodeId f : features) s.dag.add_arc(s.class_node, f);
  s.retained_features = features;
  return s;
}

LearnedStructure learn_tan(const Dataset& ds, MiCache* cache,
                           LearnStats* stats) {
  auto features = trainable_features(ds);
  LearnedStructure s;
  s.kind = ClassifierKind::tan;
  s.class_node = ds.class_index;
  s.retained_features = features;
  if (features.size() == 1) {  // degenerates to Naive-Bayes
    s.dag = Dag(class_first_ordering(ds, features));
    s.dag.add_arc(s.class_node, features[0]);
    return s;
  }

  const NodeId cls = s.class_node;
  std::vector<NodeId> cond{cls};
  std::size_t evals = 0;
  auto tree = chow_liu_tree(
      features,
      [&](NodeId i, NodeId j) { return cached_cmi(ds, cache, i, j, cond); },
      &evals);
  if (stats) stats->draft_pair_scores += evals;

  // Direct tree edges away from the first feature of each component by a
  // breadth-first sweep; the visit order doubles as the node ordering, so
  // rank orientation reproduces exactly that edge direction.
  std::vector<std::vector<NodeId>> adj(ds.n_attrs());
  for (const auto& [a, b] : tree) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());

  std::vector<bool> seen(ds.n_attrs(), false);
  std::vector<NodeId> visit_order;
  for (NodeId root : features) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
      NodeId cur = queue.front();
      queue.pop_front();
      visit_order.push_back(cur);
      for (NodeId nb : adj[cur]) {
        if (!seen[nb]) {
          seen[nb] = true;
          queue.push_back(nb);
        }
      }
    }
  }

  std::vector<NodeId> order{cls};
  order.insert(order.end(), visit_order.begin(), visit_order.end());
  s.dag = Dag(NodeOrdering::of(std::move(order)));
  for (NodeId f : features) s.dag.add_arc(cls, f);
  for (const auto& [a, b] : tree) s.dag.add_arc(a, b);
  return s;
}

LearnedStructure learn_ban(const Dataset& ds, MiThreshold t, MiCache* cache,
                           LearnStats* stats) {
  auto features = trainable_features(ds);
  LearnedStructure s;
  s.kind = ClassifierKind::ban;
  s.class_node = ds.class_index;
  s.retained_features = features;

  Dag inner = cbl1(ds, features, NodeOrdering::of(features), t,
                   s.class_node, cache, stats);
  s.dag = Dag(class_first_ordering(ds, features));
  for (NodeId f : features) s.dag.add_arc(s.class_node, f);
  for (const auto& [p, c] : inner.arcs()) s.dag.add_arc(p, c);
  return s;
}

LearnedStructure learn_gbn(const Dataset& ds, MiThreshold t, MiCache* cache,
                           LearnStats* stats) {
  auto features = trainable_features(ds);
  LearnedStructure s;
  s.kind = ClassifierKind::gbn;
  s.class_node = ds.class_index;

  // The class is an ordinary node at rank 0 and no test conditions on it.
  std::vector<NodeId> all{s.class_node};
  all.insert(all.end(), features.begin(), features.end());
  NodeOrdering ordering = NodeOrdering::of(all);
  Dag full = cbl1(ds, all, ordering, t, std::nullopt, cache, stats);

  auto blanket = full.markov_blanket(s.class_node);
  std::vector<bool> keep(ds.n_attrs(), false);
  keep[s.class_node] = true;
  for (NodeId n : blanket) keep[n] = true;
  for (NodeId f : features) {
    if (keep[f]) s.retained_features.push_back(f);
  }

  // Nodes outside the blanket are deleted, their arcs dropped.
  std::vector<NodeId> kept_order;
  for (NodeId n : ordering.order) {
    if (keep[n]) kept_order.push_back(n);
  }
  s.dag = Dag(NodeOrdering::of(std::move(kept_order)));
  for (const auto& [p, c] : full.arcs()) {
    if (keep[p] && keep[c]) s.dag.add_arc(p, c);
  }
  return s;
}

LearnedStructure learn_structure(const Dataset& ds, const LearnerConfig& cfg,
                                 MiCache* cache, LearnStats* stats) {
  switch (cfg.kind) {
    case ClassifierKind::naive_bayes: return learn_naive_bayes(ds);
    case ClassifierKind::tan: return learn_tan(ds, cache, stats);
    case ClassifierKind::ban: return learn_ban(ds, cfg.threshold, cache, stats);
    case ClassifierKind::gbn: return learn_gbn(ds, cfg.threshold, cache, stats);
  }
  throw Error("unknown classifier kind");
}

}  // namespace bnc
