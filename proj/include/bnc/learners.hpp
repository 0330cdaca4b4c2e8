#pragma once

#include <functional>
#include <optional>
#include <span>

#include "bnc/dag.hpp"
#include "bnc/dataset.hpp"
#include "bnc/infotheory.hpp"

namespace bnc {

enum class ClassifierKind { naive_bayes, tan, ban, gbn };

const char* kind_name(ClassifierKind k);
std::optional<ClassifierKind> kind_from_name(const std::string& name);

struct LearnerConfig {
  ClassifierKind kind = ClassifierKind::naive_bayes;
  MiThreshold threshold;  // ban / gbn only
};

struct LearnedStructure {
  ClassifierKind kind = ClassifierKind::naive_bayes;
  NodeId class_node = -1;
  Dag dag;                             // over the class node + retained features
  std::vector<NodeId> retained_features;  // dataset column order
};

struct LearnStats {
  std::size_t draft_pair_scores = 0;  // exactly n(n-1)/2 per cbl1/chow-liu run
  std::size_t thicken_tests = 0;
  std::size_t thinning_tests = 0;
};

// Maximum-weight spanning tree (forest when zero scores leave components
// apart) by descending-score edge insertion, skipping edges whose endpoints
// are already connected. Evaluates the score of every unordered pair exactly
// once. Ties sort by lower pair index. Edges come back in insertion order.
using PairScoreFn = std::function<double(NodeId, NodeId)>;
std::vector<std::pair<NodeId, NodeId>> chow_liu_tree(
    std::span<const NodeId> features, const PairScoreFn& score,
    std::size_t* evaluations = nullptr);

// Three-phase CI learner over `nodes` under `ordering`: draft (Chow-Liu
// style thresholded insertion), thicken (re-test skipped pairs against their
// cut sets), thin (drop arcs whose endpoints test independent given the cut
// set once the arc is removed). When `augment` is given, every test
// conditions on it in addition to the cut set.
Dag cbl1(const Dataset& ds, std::span<const NodeId> nodes,
         const NodeOrdering& ordering, MiThreshold t,
         std::optional<NodeId> augment = std::nullopt,
         MiCache* cache = nullptr, LearnStats* stats = nullptr);

LearnedStructure learn_naive_bayes(const Dataset& ds);
LearnedStructure learn_tan(const Dataset& ds, MiCache* cache = nullptr,
                           LearnStats* stats = nullptr);
LearnedStructure learn_ban(const Dataset& ds, MiThreshold t,
                           MiCache* cache = nullptr, LearnStats* stats = nullptr);
LearnedStructure learn_gbn(const Dataset& ds, MiThreshold t,
                           MiCache* cache = nullptr, LearnStats* stats = nullptr);

LearnedStructure learn_structure(const Dataset& ds, const LearnerConfig& cfg,
                                 MiCache* cache = nullptr,
                                 LearnStats* stats = nullptr);

}  // namespace bnc
