#include <doctest.h>

#include <sstream>

#include "bnc/discretize.hpp"
#include "helpers.hpp"

using namespace bnc;
using testutil::ds_from_csv;

namespace {

Dataset continuous_ds(const std::vector<double>& x, const std::vector<int>& y,
                      int n_classes) {
  std::ostringstream csv;
  csv << "x,c\n";
  for (std::size_t i = 0; i < x.size(); ++i) csv << x[i] << ",k" << y[i] << "\n";
  LoadOptions opts;
  opts.continuous_columns = {"x"};
  auto ds = ds_from_csv(csv.str(), opts);
  REQUIRE(static_cast<int>(ds.class_attr().arity()) == n_classes);
  return ds;
}

// Oracle: the gain-maximizing single cut over all midpoints between
// adjacent distinct values.
double best_single_cut(std::vector<double> x, std::vector<int> y) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  auto entropy_below = [&](std::size_t lo, std::size_t hi) {
    std::map<int, int> counts;
    for (std::size_t i = lo; i < hi; ++i) counts[y[idx[i]]]++;
    double h = 0;
    for (auto [cls, c] : counts) {
      (void)cls;
      double p = double(c) / double(hi - lo);
      h -= p * std::log2(p);
    }
    return h;
  };
  double best_gain = -1, best_cut = 0;
  double h_all = entropy_below(0, x.size());
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (x[idx[i]] == x[idx[i + 1]]) continue;
    double n1 = double(i + 1), n2 = double(x.size() - i - 1);
    double gain = h_all - n1 / x.size() * entropy_below(0, i + 1) -
                  n2 / x.size() * entropy_below(i + 1, x.size());
    if (gain > best_gain) {
      best_gain = gain;
      best_cut = (x[idx[i]] + x[idx[i + 1]]) / 2;
    }
  }
  return best_cut;
}

}  // namespace

TEST_CASE("all-categorical input is returned unchanged") {
  auto ds = ds_from_csv("f,c\na,y\nb,n\n");
  auto out = discretize(ds);
  CHECK(out.cells == ds.cells);
  CHECK(out.schema[0].values == ds.schema[0].values);
}

TEST_CASE("perfect class separation yields one cut at the split point") {
  // class 0 for x < 5, class 1 for x >= 5
  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i < 10 ? 1.0 + 0.3 * i : 5.0 + 0.3 * (i - 10));
    y.push_back(i < 10 ? 0 : 1);
  }
  auto ds = continuous_ds(x, y, 2);
  auto cuts = entropy_mdl_cuts(ds.numeric[0], [&] {
    std::vector<Cat> cls(ds.n_cases);
    for (std::size_t r = 0; r < ds.n_cases; ++r) cls[r] = ds.at(r, 1);
    return cls;
  }(), 2);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0] == doctest::Approx(best_single_cut(x, y)));  // oracle agreement
  CHECK(cuts[0] > 3.7);
  CHECK(cuts[0] < 5.0);

  auto out = discretize(ds);
  CHECK(out.schema[0].arity() == 2);
  CHECK_FALSE(out.schema[0].ignored);
  CHECK_FALSE(out.has_continuous());
}

TEST_CASE("uninformative feature gets zero cuts and the ignored flag") {
  // value carries no class information: same spread in both classes
  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(static_cast<double>(i % 10));
    y.push_back(i % 2);
  }
  auto ds = continuous_ds(x, y, 2);
  auto out = discretize(ds);
  CHECK(out.schema[0].ignored);
  CHECK(out.schema[0].arity() == 1);
  // flagged attributes are dropped from the feature list
  CHECK(out.feature_ids().empty());
}

TEST_CASE("discretize is idempotent on its own output") {
  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 30; ++i) {
    x.push_back(i);
    y.push_back(i < 10 ? 0 : (i < 20 ? 1 : 2));
  }
  auto ds = continuous_ds(x, y, 3);
  auto once = discretize(ds);
  auto twice = discretize(once);
  CHECK(once.cells == twice.cells);
  CHECK(once.schema[0].values == twice.schema[0].values);
}

TEST_CASE("missing numeric cells map to the '?' category") {
  LoadOptions opts;
  opts.continuous_columns = {"x"};
  auto ds = ds_from_csv("x,c\n1.0,a\n?,b\n2.0,a\n9.0,b\n9.5,b\n10.0,b\n1.5,a\n2.5,a\n9.9,b\n1.1,a\n",
                        opts);
  auto out = discretize(ds);
  CHECK(out.schema[0].values.back() == "?");
  CHECK(out.at(1, 0) == out.schema[0].arity() - 1);
}

TEST_CASE("equal frequency splits near-quantile boundaries") {
  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 12; ++i) {
    x.push_back(i);
    y.push_back(0);
  }
  auto ds = continuous_ds(x, y, 1);
  DiscretizeOptions opts;
  opts.method = DiscretizeMethod::equal_frequency;
  opts.bins = 3;
  auto out = discretize(ds, opts);
  CHECK(out.schema[0].arity() == 3);
  std::vector<int> counts(3, 0);
  for (std::size_t r = 0; r < out.n_cases; ++r) counts[out.at(r, 0)]++;
  CHECK(counts == std::vector<int>{4, 4, 4});
}

TEST_CASE("non-numeric cell in a continuous column is an error") {
  LoadOptions opts;
  opts.continuous_columns = {"x"};
  CHECK_THROWS_AS(ds_from_csv("x,c\n1.0,a\noops,b\n", opts), Error);
}

TEST_CASE("stored interval labels bin raw numeric values") {
  AttributeSchema attr;
  attr.name = "x";
  attr.values = {"<=2.5", "(2.5,7]", ">7", "?"};
  CHECK(interval_label_cuts(attr) == std::vector<double>{2.5, 7.0});
  CHECK(*interval_bin(attr, 1.0) == 0);
  CHECK(*interval_bin(attr, 2.5) == 0);  // boundary goes left
  CHECK(*interval_bin(attr, 3.0) == 1);
  CHECK(*interval_bin(attr, 99.0) == 2);

  AttributeSchema plain;
  plain.name = "y";
  plain.values = {"red", "green"};
  CHECK_FALSE(interval_bin(plain, 1.0).has_value());

  // labels produced by the discretizer itself round-trip
  std::vector<double> x;
  std::vector<int> y;
  for (int i = 0; i < 24; ++i) {
    x.push_back(i);
    y.push_back(i < 8 ? 0 : (i < 16 ? 1 : 2));
  }
  auto out = discretize(continuous_ds(x, y, 3));
  auto cuts = interval_label_cuts(out.schema[0]);
  REQUIRE(cuts.size() == out.schema[0].arity() - 1);
  for (std::size_t r = 0; r < out.n_cases; ++r) {
    CHECK(*interval_bin(out.schema[0], x[r]) == out.at(r, 0));
  }
}
