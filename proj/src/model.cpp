#include "bnc/model.hpp"

#include <algorithm>
#include <cmath>

namespace bnc {

namespace {
constexpr double kFactorFloor = 1e-300;
}

const Cpt& BayesNet::cpt_of(NodeId n) const {
  for (const Cpt& c : cpts) {
    if (c.node == n) return c;
  }
  throw Error("no CPT for node " + std::to_string(n));
}

BayesNet fit_cpts(const LearnedStructure& s, const Dataset& ds,
                  SmoothingSpec smoothing) {
  for (NodeId n : s.dag.nodes()) {
    if (n < 0 || static_cast<std::size_t>(n) >= ds.n_attrs()) {
      throw Error("structure references node " + std::to_string(n) +
                  " outside the dataset schema");
    }
  }
  BayesNet bn;
  bn.schema = ds.schema;
  bn.structure = s;

  std::vector<NodeId> fit_order{s.class_node};
  fit_order.insert(fit_order.end(), s.retained_features.begin(),
                   s.retained_features.end());

  for (NodeId node : fit_order) {
    Cpt cpt;
    cpt.node = node;
    cpt.parents = s.dag.parents(node);
    cpt.arity = ds.arity(node);
    std::size_t n_configs = 1;
    for (NodeId p : cpt.parents) {
      cpt.parent_arity.push_back(ds.arity(p));
      n_configs *= ds.arity(p);
    }

    std::vector<std::size_t> counts(n_configs * cpt.arity, 0);
    for (std::size_t r = 0; r < ds.n_cases; ++r) {
      auto row = ds.row(r);
      counts[cpt.config_of(row) * cpt.arity + row[node]]++;
    }

    cpt.table.resize(counts.size());
    for (std::size_t cfg = 0; cfg < n_configs; ++cfg) {
      std::size_t total = 0;
      for (std::size_t v = 0; v < cpt.arity; ++v) {
        total += counts[cfg * cpt.arity + v];
      }
      for (std::size_t v = 0; v < cpt.arity; ++v) {
        double c = static_cast<double>(counts[cfg * cpt.arity + v]);
        double p;
        if (smoothing.kind == SmoothingSpec::Kind::laplace) {
          p = (c + smoothing.alpha) /
              (static_cast<double>(total) +
               smoothing.alpha * static_cast<double>(cpt.arity));
        } else if (total == 0) {
          // Unseen parent configuration: uniform row.
          p = 1.0 / static_cast<double>(cpt.arity);
        } else {
          p = c / static_cast<double>(total);
        }
        cpt.table[cfg * cpt.arity + v] = p;
      }
    }
    bn.cpts.push_back(std::move(cpt));
  }
  return bn;
}

Posterior posterior(const BayesNet& bn, std::span<const Cat> instance) {
  const NodeId cls = bn.structure.class_node;
  const std::size_t k = bn.class_arity();
  for (const Cpt& cpt : bn.cpts) {
    if (cpt.node == cls) continue;
    if (instance[cpt.node] >= bn.schema[cpt.node].arity()) {
      throw Error("instance value out of range for attribute '" +
                  bn.schema[cpt.node].name + "'");
    }
    for (NodeId p : cpt.parents) {
      if (p != cls && instance[p] >= bn.schema[p].arity()) {
        throw Error("instance value out of range for attribute '" +
                    bn.schema[p].name + "'");
      }
    }
  }

  // Evidence vector with the class slot rewritten per candidate value.
  std::vector<Cat> evidence(instance.begin(), instance.end());
  std::vector<double> logp(k, 0.0);
  std::vector<bool> hard_zero(k, false);
  for (std::size_t c = 0; c < k; ++c) {
    evidence[cls] = static_cast<Cat>(c);
    double lp = 0.0;
    for (const Cpt& cpt : bn.cpts) {
      double f = cpt.probability(cpt.config_of(evidence), evidence[cpt.node]);
      if (f <= 0.0) {
        hard_zero[c] = true;
        f = kFactorFloor;
      }
      lp += std::log(std::max(f, kFactorFloor));
    }
    logp[c] = lp;
  }

  Posterior post;
  post.distribution.assign(k, 1.0 / static_cast<double>(k));
  if (std::all_of(hard_zero.begin(), hard_zero.end(), [](bool z) { return z; })) {
    return post;  // every class value vetoed: uniform
  }
  double m = *std::max_element(logp.begin(), logp.end());
  double sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    post.distribution[c] = std::exp(logp[c] - m);
    sum += post.distribution[c];
  }
  for (double& p : post.distribution) p /= sum;
  return post;
}

Cat predict(const BayesNet& bn, std::span<const Cat> instance) {
  auto post = posterior(bn, instance);
  std::size_t best = 0;
  for (std::size_t c = 1; c < post.distribution.size(); ++c) {
    if (post.distribution[c] > post.distribution[best]) best = c;
  }
  return static_cast<Cat>(best);
}

}  // namespace bnc
