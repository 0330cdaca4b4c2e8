#include "bnc/infotheory.hpp"

#include <algorithm>
#include <cmath>

namespace bnc {

namespace {

void check_node(const Dataset& ds, NodeId i) {
  if (i < 0 || static_cast<std::size_t>(i) >= ds.n_attrs()) {
    throw Error("node id " + std::to_string(i) + " out of range");
  }
  if (ds.schema[i].kind != AttrKind::categorical) {
    throw Error("attribute '" + ds.schema[i].name + "' is not categorical");
  }
}

// I(i;j) over an ai x aj contingency table given row/column marginals.
double mi_of_table(const std::vector<std::size_t>& joint, std::size_t ai,
                   std::size_t aj, const std::vector<std::size_t>& mi_,
                   const std::vector<std::size_t>& mj_, std::size_t n,
                   double total_n) {
  double sum = 0.0;
  for (std::size_t a = 0; a < ai; ++a) {
    for (std::size_t b = 0; b < aj; ++b) {
      std::size_t c = joint[a * aj + b];
      if (c == 0) continue;
      double p = static_cast<double>(c) / total_n;
      double ratio = (static_cast<double>(c) * static_cast<double>(n)) /
                     (static_cast<double>(mi_[a]) * static_cast<double>(mj_[b]));
      sum += p * std::log2(ratio);
    }
  }
  return sum;
}

}  // namespace

double entropy(const Dataset& ds, NodeId i) {
  check_node(ds, i);
  if (ds.n_cases == 0) throw Error("empty dataset");
  std::vector<std::size_t> counts(ds.arity(i), 0);
  for (std::size_t r = 0; r < ds.n_cases; ++r) counts[ds.at(r, i)]++;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(ds.n_cases);
    h -= p * std::log2(p);
  }
  return h;
}

double mutual_information(const Dataset& ds, NodeId i, NodeId j) {
  return conditional_mutual_information(ds, i, j, {});
}

double conditional_mutual_information(const Dataset& ds, NodeId i, NodeId j,
                                      std::span<const NodeId> z) {
  check_node(ds, i);
  check_node(ds, j);
  if (i == j) throw Error("mutual information requires distinct nodes");
  for (NodeId s : z) {
    check_node(ds, s);
    if (s == i || s == j) {
      throw Error("conditioning set must exclude the tested pair");
    }
  }
  const std::size_t ai = ds.arity(i);
  const std::size_t aj = ds.arity(j);
  const double total_n = static_cast<double>(ds.n_cases);

  if (z.empty()) {
    std::vector<std::size_t> joint(ai * aj, 0);
    std::vector<std::size_t> mi_(ai, 0), mj_(aj, 0);
    for (std::size_t r = 0; r < ds.n_cases; ++r) {
      Cat a = ds.at(r, i), b = ds.at(r, j);
      joint[a * aj + b]++;
      mi_[a]++;
      mj_[b]++;
    }
    return mi_of_table(joint, ai, aj, mi_, mj_, ds.n_cases, total_n);
  }

  // Strata keyed by the packed z-configuration (mixed radix).
  std::uint64_t radix = 1;
  for (NodeId s : z) {
    if (radix > (std::uint64_t{1} << 62) / ds.arity(s)) {
      throw Error("conditioning set configuration space too large");
    }
    radix *= ds.arity(s);
  }
  (void)radix;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> strata;
  for (std::size_t r = 0; r < ds.n_cases; ++r) {
    std::uint64_t key = 0;
    for (NodeId s : z) key = key * ds.arity(s) + ds.at(r, s);
    auto& table = strata[key];
    if (table.empty()) table.assign(ai * aj, 0);
    table[ds.at(r, i) * aj + ds.at(r, j)]++;
  }

  // Accumulate strata in key order so the result is independent of row order.
  std::vector<std::uint64_t> keys;
  keys.reserve(strata.size());
  for (const auto& [key, table] : strata) keys.push_back(key);
  std::sort(keys.begin(), keys.end());

  double sum = 0.0;
  std::vector<std::size_t> joint(ai * aj), mi_(ai), mj_(aj);
  for (std::uint64_t k : keys) {
    const auto& table = strata[k];
    std::fill(mi_.begin(), mi_.end(), 0);
    std::fill(mj_.begin(), mj_.end(), 0);
    std::size_t nz = 0;
    for (std::size_t a = 0; a < ai; ++a) {
      for (std::size_t b = 0; b < aj; ++b) {
        std::size_t c = table[a * aj + b];
        joint[a * aj + b] = c;
        mi_[a] += c;
        mj_[b] += c;
        nz += c;
      }
    }
    sum += mi_of_table(joint, ai, aj, mi_, mj_, nz, total_n);
  }
  return sum;
}

bool is_dependent(const Dataset& ds, NodeId i, NodeId j,
                  std::span<const NodeId> z, MiThreshold t) {
  return conditional_mutual_information(ds, i, j, z) > t.epsilon;
}

std::size_t MiCache::KeyHash::operator()(const std::vector<NodeId>& key) const {
  std::size_t h = 1469598103934665603ULL;
  for (NodeId v : key) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b9;
    h *= 1099511628211ULL;
  }
  return h;
}

double MiCache::cmi(NodeId i, NodeId j, std::span<const NodeId> z) {
  std::vector<NodeId> key;
  key.reserve(z.size() + 2);
  key.push_back(std::min(i, j));
  key.push_back(std::max(i, j));
  key.insert(key.end(), z.begin(), z.end());
  std::sort(key.begin() + 2, key.end());

  std::lock_guard<std::mutex> lock(mutex_);
  ++queries_;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ++misses_;
  double value = conditional_mutual_information(*ds_, i, j, z);
  memo_.emplace(std::move(key), value);
  return value;
}

}  // namespace bnc
