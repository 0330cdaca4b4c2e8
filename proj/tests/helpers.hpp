#pragma once

// Shared test fixtures: dataset builders, forward samplers for known
// generating models, and the independent oracles (joint enumeration,
// brute-force spanning trees) the implementation is checked against.
// Everything here is deliberately brute-force and separate from the
// library code paths it verifies.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bnc/dataset.hpp"
#include "bnc/model.hpp"

namespace testutil {

inline bnc::Dataset ds_from_csv(const std::string& text,
                                const bnc::LoadOptions& opts = {}) {
  std::istringstream in(text);
  return bnc::load_csv(in, opts);
}

// Dataset from raw category indices; value labels are v0, v1, ...
inline bnc::Dataset ds_from_rows(const std::vector<std::vector<int>>& rows,
                                 int class_index,
                                 const std::vector<int>& arities) {
  bnc::Dataset ds;
  ds.class_index = class_index;
  for (std::size_t c = 0; c < arities.size(); ++c) {
    bnc::AttributeSchema attr;
    attr.name = "a" + std::to_string(c);
    for (int v = 0; v < arities[c]; ++v) attr.values.push_back("v" + std::to_string(v));
    ds.schema.push_back(attr);
  }
  ds.n_cases = rows.size();
  for (const auto& row : rows) {
    for (int v : row) ds.cells.push_back(static_cast<bnc::Cat>(v));
  }
  return ds;
}

// --- synthetic generating models ---------------------------------------

// Node of a small known Bayesian network: CPT rows indexed by the packed
// parent configuration, leftmost parent varying slowest.
struct SynthNode {
  std::vector<int> parents;
  int arity = 2;
  std::vector<double> table;  // n_configs x arity
};

inline std::size_t synth_config(const std::vector<SynthNode>& net,
                                const SynthNode& node,
                                const std::vector<int>& values) {
  std::size_t cfg = 0;
  for (int p : node.parents) cfg = cfg * net[p].arity + values[p];
  return cfg;
}

// Forward-sample n cases; nodes must be listed in topological order.
inline bnc::Dataset sample_net(const std::vector<SynthNode>& net, int class_index,
                               std::size_t n, std::uint64_t seed) {
  for (const auto& node : net) {
    std::size_t configs = 1;
    for (int p : node.parents) configs *= net[p].arity;
    if (node.table.size() != configs * static_cast<std::size_t>(node.arity)) {
      throw std::logic_error("synth node table size mismatch");
    }
  }
  bnc::Rng rng(seed);
  std::vector<std::vector<int>> rows;
  std::vector<int> values(net.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < net.size(); ++i) {
      std::size_t cfg = synth_config(net, net[i], values);
      double u = rng.unit();
      double acc = 0.0;
      int v = net[i].arity - 1;
      for (int cand = 0; cand < net[i].arity; ++cand) {
        acc += net[i].table[cfg * net[i].arity + cand];
        if (u < acc) {
          v = cand;
          break;
        }
      }
      values[i] = v;
    }
    rows.push_back(values);
  }
  std::vector<int> arities;
  for (const auto& node : net) arities.push_back(node.arity);
  return ds_from_rows(rows, class_index, arities);
}

// Exact joint distribution of the generating model over all configurations
// (mixed radix over node values, node 0 slowest).
inline std::vector<double> exact_joint(const std::vector<SynthNode>& net) {
  std::size_t total = 1;
  for (const auto& node : net) total *= node.arity;
  std::vector<double> joint(total, 0.0);
  std::vector<int> values(net.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t i = net.size(); i-- > 0;) {
      values[i] = static_cast<int>(rem % net[i].arity);
      rem /= net[i].arity;
    }
    double p = 1.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
      std::size_t cfg = synth_config(net, net[i], values);
      p *= net[i].table[cfg * net[i].arity + values[i]];
    }
    joint[idx] = p;
  }
  return joint;
}

// Analytic I(i;j|Z) of the generating model, in bits.
inline double exact_cmi(const std::vector<SynthNode>& net, int i, int j,
                        const std::vector<int>& z) {
  auto joint = exact_joint(net);
  std::size_t total = joint.size();
  std::vector<int> values(net.size());
  // Aggregate p(z), p(i,z), p(j,z), p(i,j,z) by string-keyed maps.
  auto key_of = [&](const std::vector<int>& which) {
    std::string key;
    for (int w : which) key += std::to_string(values[w]) + ",";
    return key;
  };
  std::vector<int> zi = z, zj = z, zij = z;
  zi.push_back(i);
  zj.push_back(j);
  zij.push_back(i);
  zij.push_back(j);
  std::map<std::string, double> pz, pzi, pzj, pzij;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = net.size(); k-- > 0;) {
      values[k] = static_cast<int>(rem % net[k].arity);
      rem /= net[k].arity;
    }
    pz[key_of(z)] += joint[idx];
    pzi[key_of(zi)] += joint[idx];
    pzj[key_of(zj)] += joint[idx];
    pzij[key_of(zij)] += joint[idx];
  }
  double sum = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = net.size(); k-- > 0;) {
      values[k] = static_cast<int>(rem % net[k].arity);
      rem /= net[k].arity;
    }
    // Count each (i,j,z) cell once: only when all other coordinates are 0.
    bool canonical = true;
    for (std::size_t k = 0; k < net.size(); ++k) {
      bool involved = static_cast<int>(k) == i || static_cast<int>(k) == j ||
                      std::find(z.begin(), z.end(), static_cast<int>(k)) != z.end();
      if (!involved && values[k] != 0) canonical = false;
    }
    if (!canonical) continue;
    double pijz = pzij[key_of(zij)];
    if (pijz <= 0.0) continue;
    double denom = pzi[key_of(zi)] * pzj[key_of(zj)];
    sum += pijz * std::log2(pijz * pz[key_of(z)] / denom);
  }
  return sum;
}

// --- brute-force oracles ------------------------------------------------

// Maximum spanning-tree (or forest over positive scores) total weight by
// exhaustive enumeration of edge subsets. Weights summed in fixed pair
// order so equal trees give identical doubles.
double brute_force_best_tree_weight(std::size_t n,
                                    const std::vector<std::vector<double>>& score);

// Class posterior by enumerating the full joint the net's CPTs define.
std::vector<double> enumerate_posterior(const bnc::BayesNet& bn,
                                        const std::vector<bnc::Cat>& instance);

// Minimum vertex set whose removal disconnects a from b in the skeleton
// (direct a-b edge excluded); exhaustive search over subsets.
std::vector<bnc::NodeId> brute_force_min_cut(const bnc::Dag& g, bnc::NodeId a,
                                             bnc::NodeId b);

}  // namespace testutil
