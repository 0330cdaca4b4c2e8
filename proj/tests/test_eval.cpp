#include <doctest.h>

#include <sstream>

#include "bnc/eval.hpp"
#include "helpers.hpp"

using namespace bnc;
using testutil::ds_from_rows;
using testutil::SynthNode;

namespace {

std::vector<SynthNode> nb_model_with_noise(std::uint64_t seed) {
  bnc::Rng rng(seed);
  std::vector<SynthNode> net{{{}, 2, {0.5, 0.5}}};
  for (int f = 0; f < 4; ++f) {
    double p = 0.12 + 0.1 * rng.unit();
    net.push_back({{0}, 2, {1 - p, p, p, 1 - p}});
  }
  net.push_back({{}, 2, {0.5, 0.5}});  // pure noise feature
  return net;
}

}  // namespace

TEST_CASE("perfect classifier scores accuracy 1 with zero std") {
  auto train = ds_from_rows({{0, 0}, {1, 1}, {0, 0}, {1, 1}}, 1, {2, 2});
  auto report = evaluate_holdout(ClassifierKind::naive_bayes, train, train, {});
  CHECK(report.accuracy == 1.0);
  CHECK(report.stddev == 0.0);
  CHECK(report.n_test == 4);
}

TEST_CASE("binomial std matches the paper's holdout cells") {
  // back-calculated from the published accuracy +/- values
  CHECK(100 * binomial_std(0.8611, 16281) == doctest::Approx(0.27).epsilon(0.04));
  CHECK(100 * binomial_std(0.9579, 2708) == doctest::Approx(0.39).epsilon(0.03));
  struct Row {
    double acc;
    std::size_t n;
    double pm;
  };
  // one +/- cell per holdout row of the accuracy table
  std::vector<Row> rows{
      {0.8611, 16281, 0.27},  // adult gbn
      {0.8972, 4320, 0.46},   // nursery gbn
      {0.9930, 2708, 0.16},   // mushroom gbn
      {0.9465, 1066, 0.69},   // chess gbn
      {0.7909, 1186, 1.18},   // dna gbn
      {0.8418, 16281, 0.29},  // adult naive-bayes
      {0.9032, 4320, 0.45},   // nursery naive-bayes
      {0.9579, 2708, 0.39},   // mushroom naive-bayes
      {0.8734, 1066, 1.02},   // chess naive-bayes
      {0.9427, 1186, 0.68},   // dna naive-bayes
  };
  for (const auto& row : rows) {
    CHECK(std::abs(100 * binomial_std(row.acc, row.n) - row.pm) <= 0.01);
  }
}

TEST_CASE("holdout requires a shared schema") {
  auto train = testutil::ds_from_csv("f,c\na,y\nb,n\n");
  auto other = testutil::ds_from_csv("f,c\nz,y\nb,n\n");
  CHECK_THROWS_AS(
      evaluate_holdout(ClassifierKind::naive_bayes, train, other, {}), Error);
}

TEST_CASE("constant-majority behaviour on a 50/50 dataset") {
  // feature is pure noise, classes balanced: accuracy hovers at chance
  std::vector<SynthNode> coin{{{}, 2, {0.5, 0.5}}, {{}, 2, {0.5, 0.5}}};
  auto ds = testutil::sample_net(coin, 0, 2000, 31);
  auto report = evaluate_cv(ClassifierKind::naive_bayes, ds, 5, {}, 1);
  CHECK(report.accuracy > 0.40);
  CHECK(report.accuracy < 0.60);
  CHECK(report.per_fold.size() == 5);
}

TEST_CASE("identical folds give zero cv std") {
  // every row identical: each fold scores exactly 1.0
  auto ds = ds_from_rows(std::vector<std::vector<int>>(50, {0, 0}), 1, {2, 2});
  auto report = evaluate_cv(ClassifierKind::naive_bayes, ds, 5, {}, 9);
  CHECK(report.accuracy == 1.0);
  CHECK(report.stddev == 0.0);
}

TEST_CASE("cv accuracy equals the mean of per-fold accuracies") {
  auto ds = testutil::sample_net(nb_model_with_noise(1), 0, 600, 77);
  auto report = evaluate_cv(ClassifierKind::tan, ds, 4, {}, 3);
  double mean = 0;
  for (double a : report.per_fold) mean += a;
  CHECK(report.accuracy == doctest::Approx(mean / 4.0).epsilon(1e-12));
}

TEST_CASE("fixed seeds make reports deterministic") {
  auto ds = testutil::sample_net(nb_model_with_noise(2), 0, 900, 12);
  EvalConfig cfg;
  cfg.threshold = MiThreshold{0.01};
  auto r1 = evaluate_cv(ClassifierKind::gbn, ds, 3, cfg, 5);
  auto r2 = evaluate_cv(ClassifierKind::gbn, ds, 3, cfg, 5);
  CHECK(r1.accuracy == r2.accuracy);
  CHECK(r1.per_fold == r2.per_fold);
  CHECK(r1.stddev == r2.stddev);
}

TEST_CASE("wrapper with a single default grid point equals best-of gbn/ban") {
  auto ds = testutil::sample_net(nb_model_with_noise(3), 0, 1200, 40);
  WrapperConfig wc;
  wc.threshold_grid = {0.01};
  wc.seed = 8;
  auto result = wrapper_select(ds, wc);

  auto [itrain, ihold] = split_holdout(ds, wc.internal_train_fraction, wc.seed);
  EvalConfig cfg;
  cfg.threshold = MiThreshold{0.01};
  auto gbn = evaluate_holdout(ClassifierKind::gbn, itrain, ihold, cfg);
  auto ban = evaluate_holdout(ClassifierKind::ban, itrain, ihold, cfg);
  CHECK(result.best_gbn.score == doctest::Approx(gbn.accuracy));
  CHECK(result.best_ban.score == doctest::Approx(ban.accuracy));
  CHECK(result.report.accuracy ==
        doctest::Approx(std::max(gbn.accuracy, ban.accuracy)));
  // tie or gbn lead -> gbn, the smaller model
  if (gbn.accuracy >= ban.accuracy) CHECK(result.winner == ClassifierKind::gbn);
}

TEST_CASE("wrapper holdout score dominates both default-threshold learners") {
  auto ds = testutil::sample_net(nb_model_with_noise(4), 0, 1500, 41);
  WrapperConfig wc;  // default grid contains the default threshold
  wc.seed = 2;
  auto result = wrapper_select(ds, wc);

  auto [itrain, ihold] = split_holdout(ds, wc.internal_train_fraction, wc.seed);
  EvalConfig cfg;
  cfg.threshold = MiThreshold{0.01};
  auto gbn = evaluate_holdout(ClassifierKind::gbn, itrain, ihold, cfg);
  auto ban = evaluate_holdout(ClassifierKind::ban, itrain, ihold, cfg);
  double winner_score = std::max(result.best_gbn.score, result.best_ban.score);
  CHECK(winner_score >= gbn.accuracy);
  CHECK(winner_score >= ban.accuracy);
  CHECK(result.report.threshold.has_value());
}

TEST_CASE("wrapper refits parameters on the full training set") {
  auto ds = testutil::sample_net(nb_model_with_noise(5), 0, 1500, 42);
  WrapperConfig wc;
  wc.threshold_grid = {0.005, 0.01, 0.05};
  auto result = wrapper_select(ds, wc);
  // CPT counts must reflect all cases: compare against a direct refit
  auto refit = fit_cpts(result.net.structure, ds, wc.smoothing);
  REQUIRE(refit.cpts.size() == result.net.cpts.size());
  for (std::size_t i = 0; i < refit.cpts.size(); ++i) {
    CHECK(refit.cpts[i].table == result.net.cpts[i].table);
  }
}

TEST_CASE("wrapper caches make grid search cheap and change nothing") {
  auto ds = testutil::sample_net(nb_model_with_noise(6), 0, 1500, 43);
  auto [itrain, ihold] = split_holdout(ds, 2.0 / 3.0, 0);

  // same structures with and without a cache
  for (double eps : {0.001, 0.01, 0.1}) {
    MiCache cache(itrain);
    auto with_cache = learn_gbn(itrain, MiThreshold{eps}, &cache);
    auto without = learn_gbn(itrain, MiThreshold{eps});
    CHECK(with_cache.dag.arcs() == without.dag.arcs());
    CHECK(with_cache.retained_features == without.retained_features);
  }

  // the grid reuses the shared cache: far fewer distinct evaluations than
  // seven independent runs would make, and never more than 2x one run even
  // on this wobbly model where structures shift with the threshold
  MiCache single(itrain);
  learn_gbn(itrain, MiThreshold{0.01}, &single);
  std::size_t one_run = single.distinct_evaluations();

  MiCache grid(itrain);
  WrapperConfig wc;
  for (double eps : wc.threshold_grid) {
    learn_gbn(itrain, MiThreshold{eps}, &grid);
  }
  CHECK(grid.distinct_evaluations() < wc.threshold_grid.size() * one_run / 2);
  CHECK(grid.distinct_evaluations() <= 3 * one_run);
}

TEST_CASE("small training sets score grid points by internal cv") {
  auto ds = testutil::sample_net(nb_model_with_noise(7), 0, 300, 44);
  WrapperConfig wc;
  wc.threshold_grid = {0.01, 0.05};
  auto result = wrapper_select(ds, wc);  // must not throw on 300 cases
  CHECK(result.report.threshold.has_value());
  CHECK(result.net.structure.retained_features.size() <= 5);
}

TEST_CASE("report serialization carries the fixed field names") {
  EvalReport r;
  r.dataset = "demo";
  r.kind = ClassifierKind::gbn;
  r.accuracy = 0.912;
  r.stddev = 0.004;
  r.n_test = 500;
  r.retained_features = 3;
  r.threshold = 0.01;
  r.seconds = 0.25;

  std::ostringstream json;
  write_report_json(json, r);
  for (const char* field : {"\"dataset\"", "\"kind\"", "\"accuracy\"", "\"std\"",
                            "\"n_test\"", "\"features_retained\"",
                            "\"threshold\"", "\"seconds\""}) {
    CHECK(json.str().find(field) != std::string::npos);
  }

  std::ostringstream table;
  write_report_table(table, r);
  CHECK(table.str().find("91.20") != std::string::npos);  // percent, 2 decimals
  CHECK(table.str().find("gbn") != std::string::npos);
}
