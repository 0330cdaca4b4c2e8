#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bnc/model.hpp"
#include "bnc/split.hpp"

namespace bnc {

struct EvalReport {
  std::string dataset;
  ClassifierKind kind = ClassifierKind::naive_bayes;
  double accuracy = 0.0;  // fraction in [0,1]
  double stddev = 0.0;    // binomial (holdout) or across-fold (cv)
  std::size_t n_test = 0;
  std::vector<double> per_fold;
  std::size_t retained_features = 0;
  std::optional<double> threshold;
  double seconds = 0.0;
};

struct EvalConfig {
  MiThreshold threshold;
  SmoothingSpec smoothing = SmoothingSpec::laplace(1.0);
  std::string dataset_name;
};

// Binomial standard error sqrt(p(1-p)/n) of a holdout accuracy estimate.
double binomial_std(double accuracy, std::size_t n_test);

// Fraction of test cases whose predicted label matches the class cell.
double score_accuracy(const BayesNet& bn, const Dataset& test);

EvalReport evaluate_holdout(ClassifierKind kind, const Dataset& train,
                            const Dataset& test, const EvalConfig& cfg = {});
EvalReport evaluate_cv(ClassifierKind kind, const Dataset& ds, int k,
                       const EvalConfig& cfg = {}, std::uint64_t seed = 0);

struct WrapperConfig {
  std::vector<double> threshold_grid = {0.001, 0.0025, 0.005,
                                        0.01,  0.02,   0.05, 0.1};
  double internal_train_fraction = 2.0 / 3.0;
  std::uint64_t seed = 0;
  SmoothingSpec smoothing = SmoothingSpec::laplace(1.0);
  // Below this many training cases grid points are scored by internal
  // 3-fold cross validation instead of a single holdout.
  std::size_t small_data_limit = 500;
  std::string dataset_name;
};

struct GridPoint {
  double threshold = 0.0;
  double score = 0.0;  // internal holdout (or internal cv) accuracy
};

struct WrapperResult {
  BayesNet net;  // winning structure, parameters refit on the full train set
  EvalReport report;
  ClassifierKind winner = ClassifierKind::gbn;
  GridPoint best_gbn;
  GridPoint best_ban;
};

// Threshold-searching wrapper: tunes the CI threshold for GBN and BAN on an
// internal holdout, keeps the better of the two (ties go to GBN), then
// refits parameters on the whole training set. Mutual information results
// are cached and reused across all grid points.
WrapperResult wrapper_select(const Dataset& train, const WrapperConfig& wc = {});

void write_report_table(std::ostream& out, const EvalReport& r);
void write_report_json(std::ostream& out, const EvalReport& r);

}  // namespace bnc
