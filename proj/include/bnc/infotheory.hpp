#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "bnc/dataset.hpp"

namespace bnc {

// Significance threshold for (conditional) mutual information, in bits.
struct MiThreshold {
  double epsilon = 0.01;
};

struct PairScore {
  NodeId i;
  NodeId j;
  double score;  // bits
};

// Empirical plug-in estimators over dataset counts, log base 2.
// Zero-count cells and strata contribute 0; no smoothing is applied here.
double entropy(const Dataset& ds, NodeId i);
double mutual_information(const Dataset& ds, NodeId i, NodeId j);
double conditional_mutual_information(const Dataset& ds, NodeId i, NodeId j,
                                      std::span<const NodeId> z);
bool is_dependent(const Dataset& ds, NodeId i, NodeId j,
                  std::span<const NodeId> z, MiThreshold t);

// Memo cache over (i, j, Z) queries for one dataset. Keys are canonical
// (i < j, Z sorted), so symmetric queries hit the same entry. Behaves as if
// absent: cached values are exactly what the plain estimator returns.
// Shareable across threads; insertion is serialized.
class MiCache {
 public:
  explicit MiCache(const Dataset& ds) : ds_(&ds) {}

  double cmi(NodeId i, NodeId j, std::span<const NodeId> z);

  std::size_t queries() const { return queries_; }
  // Number of cache misses == distinct (i, j, Z) signatures evaluated.
  std::size_t distinct_evaluations() const { return misses_; }
  void reset_counters() { queries_ = misses_ = 0; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<NodeId>& key) const;
  };
  const Dataset* ds_;
  std::unordered_map<std::vector<NodeId>, double, KeyHash> memo_;
  std::size_t queries_ = 0;
  std::size_t misses_ = 0;
  std::mutex mutex_;
};

}  // namespace bnc
