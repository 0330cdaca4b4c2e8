#include "bnc/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

namespace bnc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_same_schema(const Dataset& train, const Dataset& test) {
  if (train.n_attrs() != test.n_attrs() || train.class_index != test.class_index) {
    throw Error("train and test sets do not share a schema");
  }
  for (std::size_t i = 0; i < train.n_attrs(); ++i) {
    if (train.schema[i].name != test.schema[i].name ||
        train.schema[i].values != test.schema[i].values) {
      throw Error("train and test sets disagree on attribute '" +
                  train.schema[i].name + "'");
    }
  }
}

BayesNet train_classifier(ClassifierKind kind, const Dataset& train,
                          const EvalConfig& cfg) {
  LearnerConfig lc{kind, cfg.threshold};
  return fit_cpts(learn_structure(train, lc), train, cfg.smoothing);
}

}  // namespace

double binomial_std(double accuracy, std::size_t n_test) {
  if (n_test == 0) return 0.0;
  return std::sqrt(accuracy * (1.0 - accuracy) / static_cast<double>(n_test));
}

double score_accuracy(const BayesNet& bn, const Dataset& test) {
  if (test.n_cases == 0) throw Error("empty test set");
  std::size_t correct = 0;
  for (std::size_t r = 0; r < test.n_cases; ++r) {
    auto row = test.row(r);
    if (predict(bn, row) == row[bn.structure.class_node]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.n_cases);
}

EvalReport evaluate_holdout(ClassifierKind kind, const Dataset& train,
                            const Dataset& test, const EvalConfig& cfg) {
  require_same_schema(train, test);
  auto start = Clock::now();
  BayesNet bn = train_classifier(kind, train, cfg);

  EvalReport r;
  r.dataset = cfg.dataset_name;
  r.kind = kind;
  r.n_test = test.n_cases;
  r.accuracy = score_accuracy(bn, test);
  r.stddev = binomial_std(r.accuracy, r.n_test);
  r.retained_features = bn.structure.retained_features.size();
  if (kind == ClassifierKind::ban || kind == ClassifierKind::gbn) {
    r.threshold = cfg.threshold.epsilon;
  }
  r.seconds = seconds_since(start);
  return r;
}

EvalReport evaluate_cv(ClassifierKind kind, const Dataset& ds, int k,
                       const EvalConfig& cfg, std::uint64_t seed) {
  auto start = Clock::now();
  auto folds = cv_folds(ds, k, seed);

  EvalReport r;
  r.dataset = cfg.dataset_name;
  r.kind = kind;
  std::size_t retained_total = 0;
  for (const auto& [train, test] : folds) {
    BayesNet bn = train_classifier(kind, train, cfg);
    r.per_fold.push_back(score_accuracy(bn, test));
    r.n_test += test.n_cases;
    retained_total += bn.structure.retained_features.size();
  }
  double mean = 0.0;
  for (double a : r.per_fold) mean += a;
  mean /= static_cast<double>(k);
  double ss = 0.0;
  for (double a : r.per_fold) ss += (a - mean) * (a - mean);
  r.accuracy = mean;
  r.stddev = std::sqrt(ss / static_cast<double>(k - 1));  // across-fold sample std
  r.retained_features = retained_total / folds.size();
  if (kind == ClassifierKind::ban || kind == ClassifierKind::gbn) {
    r.threshold = cfg.threshold.epsilon;
  }
  r.seconds = seconds_since(start);
  return r;
}

WrapperResult wrapper_select(const Dataset& train, const WrapperConfig& wc) {
  if (wc.threshold_grid.empty()) throw Error("threshold grid is empty");
  if (std::adjacent_find(wc.threshold_grid.begin(), wc.threshold_grid.end(),
                         [](double a, double b) { return a >= b; }) !=
      wc.threshold_grid.end()) {
    throw Error("threshold grid must be strictly ascending");
  }
  auto start = Clock::now();

  const bool small_data = train.n_cases < wc.small_data_limit;
  Dataset internal_train, internal_holdout;
  if (!small_data) {
    std::tie(internal_train, internal_holdout) =
        split_holdout(train, wc.internal_train_fraction, wc.seed);
  }

  // One cache per scoring dataset, shared by every grid point of both
  // learners; distinct (i,j,Z) signatures are evaluated once.
  MiCache cache(small_data ? train : internal_train);

  auto score_point = [&](ClassifierKind kind, double eps) {
    MiThreshold t{eps};
    if (small_data) {
      // Internal 3-fold CV. Fold learners run uncached: the shared cache is
      // keyed to one dataset and fold subsets are different datasets.
      auto folds = cv_folds(train, 3, wc.seed);
      double acc = 0.0;
      for (const auto& [ftrain, ftest] : folds) {
        LearnerConfig lc{kind, t};
        BayesNet bn = fit_cpts(learn_structure(ftrain, lc), ftrain, wc.smoothing);
        acc += score_accuracy(bn, ftest);
      }
      return acc / static_cast<double>(folds.size());
    }
    LearnerConfig lc{kind, t};
    BayesNet bn = fit_cpts(learn_structure(internal_train, lc, &cache),
                           internal_train, wc.smoothing);
    return score_accuracy(bn, internal_holdout);
  };

  // Ascending sweep with >=: equal scores keep the larger threshold, i.e.
  // the sparser structure.
  auto search = [&](ClassifierKind kind) {
    GridPoint best{wc.threshold_grid.front(), -1.0};
    for (double eps : wc.threshold_grid) {
      double s = score_point(kind, eps);
      if (s >= best.score) best = {eps, s};
    }
    return best;
  };

  WrapperResult result;
  result.best_gbn = search(ClassifierKind::gbn);
  result.best_ban = search(ClassifierKind::ban);
  result.winner = result.best_gbn.score >= result.best_ban.score
                      ? ClassifierKind::gbn
                      : ClassifierKind::ban;
  const GridPoint& won = result.winner == ClassifierKind::gbn
                             ? result.best_gbn
                             : result.best_ban;

  // Keep the winning structure; re-learn the parameters on the whole
  // training set.
  LearnerConfig lc{result.winner, MiThreshold{won.threshold}};
  const Dataset& structure_source = small_data ? train : internal_train;
  LearnedStructure s = learn_structure(structure_source, lc, &cache);
  result.net = fit_cpts(s, train, wc.smoothing);

  result.report.dataset = wc.dataset_name;
  result.report.kind = result.winner;
  result.report.accuracy = won.score;
  result.report.stddev = small_data
                             ? 0.0
                             : binomial_std(won.score, internal_holdout.n_cases);
  result.report.n_test = small_data ? 0 : internal_holdout.n_cases;
  result.report.retained_features = result.net.structure.retained_features.size();
  result.report.threshold = won.threshold;
  result.report.seconds = seconds_since(start);
  return result;
}

void write_report_table(std::ostream& out, const EvalReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %-12s %6.2f±%.2f  n_test=%zu  features=%zu",
                r.dataset.empty() ? "-" : r.dataset.c_str(), kind_name(r.kind),
                100.0 * r.accuracy, 100.0 * r.stddev, r.n_test,
                r.retained_features);
  out << buf;
  if (r.threshold) {
    std::snprintf(buf, sizeof buf, "  threshold=%g", *r.threshold);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "  seconds=%.2f", r.seconds);
  out << buf << '\n';
  if (!r.per_fold.empty()) {
    out << "  folds:";
    for (double a : r.per_fold) {
      std::snprintf(buf, sizeof buf, " %.2f", 100.0 * a);
      out << buf;
    }
    out << '\n';
  }
}

void write_report_json(std::ostream& out, const EvalReport& r) {
  nlohmann::json j;
  j["dataset"] = r.dataset;
  j["kind"] = kind_name(r.kind);
  j["accuracy"] = r.accuracy;
  j["std"] = r.stddev;
  j["n_test"] = r.n_test;
  j["features_retained"] = r.retained_features;
  if (r.threshold) {
    j["threshold"] = *r.threshold;
  } else {
    j["threshold"] = nullptr;
  }
  j["seconds"] = r.seconds;
  out << j.dump(2) << '\n';
}

}  // namespace bnc
