#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bnc/dataset.hpp"

namespace bnc {

struct SplitSpec {
  enum class Mode { holdout, cv } mode = Mode::cv;
  double fraction = 2.0 / 3.0;  // holdout
  int k = 5;                    // cv
  std::uint64_t seed = 0;
};

// Deterministic shuffled partition; train gets ceil(fraction * n) cases.
std::pair<Dataset, Dataset> split_holdout(const Dataset& ds,
                                          double train_fraction,
                                          std::uint64_t seed);

// k disjoint near-equal test folds (sizes differ by at most 1); each train
// part is the complement of its fold.
std::vector<std::pair<Dataset, Dataset>> cv_folds(const Dataset& ds, int k,
                                                  std::uint64_t seed);

}  // namespace bnc
