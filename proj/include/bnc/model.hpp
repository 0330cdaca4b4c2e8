#pragma once

#include <span>
#include <string>
#include <vector>

#include "bnc/dataset.hpp"
#include "bnc/learners.hpp"

namespace bnc {

struct SmoothingSpec {
  enum class Kind { none, laplace } kind = Kind::laplace;
  double alpha = 1.0;

  static SmoothingSpec none() { return {Kind::none, 0.0}; }
  static SmoothingSpec laplace(double alpha = 1.0) { return {Kind::laplace, alpha}; }
};

// Conditional probability table. Rows are parent-value configurations in
// row-major order with the leftmost (lowest-rank) parent varying slowest;
// each row is a distribution over the node's values.
struct Cpt {
  NodeId node = -1;
  std::vector<NodeId> parents;            // rank order
  std::vector<std::size_t> parent_arity;  // same order
  std::size_t arity = 0;
  std::vector<double> table;              // n_configs x arity

  std::size_t n_configs() const {
    return parent_arity.empty() ? 1 : table.size() / arity;
  }
  std::size_t config_of(std::span<const Cat> instance) const {
    std::size_t cfg = 0;
    for (std::size_t p = 0; p < parents.size(); ++p) {
      cfg = cfg * parent_arity[p] + instance[parents[p]];
    }
    return cfg;
  }
  double probability(std::size_t config, Cat value) const {
    return table[config * arity + value];
  }
};

// The classifier object: learned structure plus one CPT per retained node
// and the class node. Carries its own schema copy so it can outlive the
// training data and round-trip through the interchange format. Immutable
// after fitting; classification is pure.
struct BayesNet {
  std::string name = "bnc";
  std::vector<AttributeSchema> schema;  // indexed by node id
  LearnedStructure structure;
  std::vector<Cpt> cpts;  // class node first, then retained features

  const Cpt& cpt_of(NodeId n) const;
  std::size_t class_arity() const {
    return schema[structure.class_node].arity();
  }
};

struct Posterior {
  std::vector<double> distribution;  // over class values, sums to 1
};

BayesNet fit_cpts(const LearnedStructure& s, const Dataset& ds,
                  SmoothingSpec smoothing = {});

// Exact class posterior under complete evidence over the retained features,
// computed in log space. "?" evidence is an ordinary category.
Posterior posterior(const BayesNet& bn, std::span<const Cat> instance);

// Highest-posterior class value; exact ties resolve to the lowest index.
Cat predict(const BayesNet& bn, std::span<const Cat> instance);

}  // namespace bnc
