#include "bnc/split.hpp"

#include <cmath>
#include <numeric>

namespace bnc {

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(idx);
  return idx;
}

// ceil(fraction * n) with a guard against the product landing an ulp above
// an exact integer.
std::size_t ceil_count(double fraction, std::size_t n) {
  double t = fraction * static_cast<double>(n);
  double r = std::round(t);
  if (std::abs(t - r) < 1e-7) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(t));
}

}  // namespace

std::pair<Dataset, Dataset> split_holdout(const Dataset& ds,
                                          double train_fraction,
                                          std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error("train fraction must be in (0,1)");
  }
  if (ds.n_cases < 2) throw Error("need at least 2 cases to split");
  auto idx = shuffled_indices(ds.n_cases, seed);
  std::size_t n_train = ceil_count(train_fraction, ds.n_cases);
  if (n_train == 0) n_train = 1;
  if (n_train >= ds.n_cases) n_train = ds.n_cases - 1;
  std::span<const std::size_t> all(idx);
  return {ds.select_rows(all.subspan(0, n_train)),
          ds.select_rows(all.subspan(n_train))};
}

std::vector<std::pair<Dataset, Dataset>> cv_folds(const Dataset& ds, int k,
                                                  std::uint64_t seed) {
  if (k < 2) throw Error("cross validation needs k >= 2");
  if (static_cast<std::size_t>(k) > ds.n_cases) {
    throw Error("more folds than cases");
  }
  auto idx = shuffled_indices(ds.n_cases, seed);

  // First n % k folds take one extra case.
  std::vector<std::pair<Dataset, Dataset>> folds;
  std::size_t base = ds.n_cases / static_cast<std::size_t>(k);
  std::size_t extra = ds.n_cases % static_cast<std::size_t>(k);
  std::size_t start = 0;
  for (int f = 0; f < k; ++f) {
    std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    std::vector<std::size_t> test(idx.begin() + start, idx.begin() + start + size);
    std::vector<std::size_t> train;
    train.reserve(ds.n_cases - size);
    train.insert(train.end(), idx.begin(), idx.begin() + start);
    train.insert(train.end(), idx.begin() + start + size, idx.end());
    folds.emplace_back(ds.select_rows(train), ds.select_rows(test));
    start += size;
  }
  return folds;
}

}  // namespace bnc
