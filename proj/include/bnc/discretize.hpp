#pragma once

#include <vector>

#include "bnc/dataset.hpp"

namespace bnc {

enum class DiscretizeMethod { entropy_mdl, equal_frequency };

struct DiscretizeOptions {
  DiscretizeMethod method = DiscretizeMethod::entropy_mdl;
  int bins = 10;  // equal_frequency only
};

// Replaces every continuous attribute by a categorical one whose values are
// interval labels. entropy_mdl picks cut points recursively by class-entropy
// gain with an MDL stop rule; an attribute where no cut is accepted becomes
// a single-category attribute flagged `ignored`. Idempotent on its own
// output (all-categorical input is returned unchanged).
Dataset discretize(const Dataset& ds, const DiscretizeOptions& opts = {});

// Accepted cut points for one numeric column against a class column,
// sorted ascending. Exposed for the CLI's describe output and for tests.
std::vector<double> entropy_mdl_cuts(std::span<const double> x,
                                     std::span<const Cat> y,
                                     std::size_t n_classes);

// Recover the cut points from an attribute whose values are this module's
// interval labels ("<=c1", "(c1,c2]", ..., ">cm", optionally a trailing
// "?"); empty when the attribute is not interval-labeled. Lets stored
// models bin raw numeric inputs with the cuts learned at training time.
std::vector<double> interval_label_cuts(const AttributeSchema& attr);

// Bin index of v under the attribute's interval labels; nullopt when the
// attribute is not interval-labeled.
std::optional<Cat> interval_bin(const AttributeSchema& attr, double v);

}  // namespace bnc
