// Command-line surface: train/predict/eval/wrap/export over CSV datasets
// and BIF v0.15 model files.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bnc/bif.hpp"
#include "bnc/discretize.hpp"
#include "bnc/eval.hpp"

namespace {

using namespace bnc;

struct DataFlags {
  std::string class_column;
  std::string missing_token = "?";
  std::string delimiter = ",";
  std::string schema_sidecar;
  bool auto_continuous = false;
  std::string discretize_method;  // empty = off
  int bins = 10;
};

void add_data_flags(CLI::App* cmd, DataFlags& df) {
  cmd->add_option("--class-column", df.class_column,
                  "Class column name or index (default: last column)");
  cmd->add_option("--missing-token", df.missing_token,
                  "Token read as a missing value (default '?')");
  cmd->add_option("--delimiter", df.delimiter, "Field delimiter (default ',')");
  cmd->add_option("--schema", df.schema_sidecar,
                  "Sidecar file with '<name> <categorical|continuous>' lines");
  cmd->add_flag("--auto-continuous", df.auto_continuous,
                "Treat all-numeric columns as continuous");
  cmd->add_option("--discretize", df.discretize_method,
                  "Discretization for continuous columns: entropy-mdl or "
                  "equal-frequency");
  cmd->add_option("--bins", df.bins, "Bins for equal-frequency discretization");
}

// Columns whose every non-missing cell parses as a number.
std::vector<std::string> sniff_continuous(const std::string& path,
                                          const DataFlags& df) {
  LoadOptions probe;
  probe.class_column = df.class_column;
  probe.missing_token = df.missing_token;
  probe.delimiter = df.delimiter[0];
  probe.allow_missing_class = true;
  Dataset raw = load_csv_file(path, probe);
  std::vector<std::string> continuous;
  for (std::size_t c = 0; c < raw.n_attrs(); ++c) {
    if (static_cast<int>(c) == raw.class_index) continue;
    bool numeric = true;
    bool any = false;
    for (const auto& v : raw.schema[c].values) {
      if (v == "?") continue;
      any = true;
      char* end = nullptr;
      std::strtod(v.c_str(), &end);
      if (end != v.c_str() + v.size()) {
        numeric = false;
        break;
      }
    }
    if (any && numeric) continuous.push_back(raw.schema[c].name);
  }
  return continuous;
}

Dataset load_dataset(const std::string& path, const DataFlags& df,
                     const std::vector<AttributeSchema>* base = nullptr,
                     bool allow_missing_class = false) {
  if (df.delimiter.size() != 1) throw Error("delimiter must be one character");
  LoadOptions opts;
  opts.class_column = df.class_column;
  opts.missing_token = df.missing_token;
  opts.delimiter = df.delimiter[0];
  opts.base_schema = base;
  opts.allow_missing_class = allow_missing_class;
  if (!df.schema_sidecar.empty()) {
    opts.continuous_columns = read_schema_sidecar(df.schema_sidecar);
  } else if (df.auto_continuous || !df.discretize_method.empty()) {
    opts.continuous_columns = sniff_continuous(path, df);
  }
  Dataset ds = load_csv_file(path, opts);
  if (ds.has_continuous()) {
    DiscretizeOptions dopt;
    dopt.bins = df.bins;
    if (df.discretize_method.empty() || df.discretize_method == "entropy-mdl") {
      dopt.method = DiscretizeMethod::entropy_mdl;
    } else if (df.discretize_method == "equal-frequency") {
      dopt.method = DiscretizeMethod::equal_frequency;
    } else {
      throw Error("unknown discretization method '" + df.discretize_method + "'");
    }
    ds = discretize(ds, dopt);
  }
  return ds;
}

ClassifierKind parse_kind(const std::string& name) {
  if (auto k = kind_from_name(name)) return *k;
  throw Error("unknown classifier kind '" + name +
              "' (expected naive-bayes, tan, ban or gbn)");
}

SmoothingSpec parse_smoothing(const std::string& text) {
  if (text == "none") return SmoothingSpec::none();
  if (text == "laplace") return SmoothingSpec::laplace(1.0);
  if (text.rfind("laplace:", 0) == 0) {
    return SmoothingSpec::laplace(std::stod(text.substr(8)));
  }
  throw Error("unknown smoothing '" + text + "' (expected none, laplace or laplace:<alpha>)");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

// Evidence vector in the model's node-id space, mapped by attribute name
// and value label.
struct InstanceMapper {
  std::vector<int> column_of;  // node id -> test column

  InstanceMapper(const BayesNet& bn, const Dataset& test)
      : column_of(bn.schema.size(), -1) {
    for (const Cpt& cpt : bn.cpts) {
      if (cpt.node == bn.structure.class_node) continue;
      const std::string& name = bn.schema[cpt.node].name;
      int col = -1;
      for (std::size_t c = 0; c < test.n_attrs(); ++c) {
        if (test.schema[c].name == name) col = static_cast<int>(c);
      }
      if (col < 0) throw Error("test data lacks attribute '" + name + "'");
      column_of[cpt.node] = col;
    }
  }

  std::vector<Cat> evidence(const BayesNet& bn, const Dataset& test,
                            std::size_t row) const {
    std::vector<Cat> ev(bn.schema.size(), 0);
    for (std::size_t n = 0; n < column_of.size(); ++n) {
      if (column_of[n] < 0) continue;
      const std::string& label =
          test.schema[column_of[n]].values[test.at(row, column_of[n])];
      auto v = bn.schema[n].find(label);
      if (!v) {
        // Numeric input against a variable discretized at training time:
        // bin it with the stored interval cuts.
        char* end = nullptr;
        double numeric = std::strtod(label.c_str(), &end);
        if (!label.empty() && end == label.c_str() + label.size()) {
          v = interval_bin(bn.schema[n], numeric);
        }
      }
      if (!v) {
        throw Error("row " + std::to_string(row + 1) + ": value '" + label +
                    "' not declared for attribute '" + bn.schema[n].name + "'");
      }
      ev[n] = *v;
    }
    return ev;
  }
};

int cmd_train(const std::string& data_path, const DataFlags& df,
              const std::string& kind_name_, double threshold,
              const std::string& smoothing, const std::string& out_path,
              const std::string& model_name) {
  Dataset ds = load_dataset(data_path, df);
  LearnerConfig lc{parse_kind(kind_name_), MiThreshold{threshold}};
  BayesNet bn = fit_cpts(learn_structure(ds, lc), ds, parse_smoothing(smoothing));
  bn.name = model_name;
  write_output(out_path, export_bif(bn));
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const DataFlags& df, const std::string& out_path) {
  BayesNet bn = parse_bif_file(model_path);
  Dataset test = load_dataset(data_path, df, nullptr, /*allow_missing_class=*/true);
  InstanceMapper mapper(bn, test);
  std::ostringstream out;
  const auto& class_values = bn.schema[bn.structure.class_node].values;
  for (std::size_t r = 0; r < test.n_cases; ++r) {
    out << class_values[predict(bn, mapper.evidence(bn, test, r))] << '\n';
  }
  write_output(out_path, out.str());
  return 0;
}

int cmd_eval(const std::string& data_path, const DataFlags& df,
             const std::string& kind_name_, double threshold,
             const std::string& smoothing, int cv_k,
             const std::string& test_path, double holdout_fraction,
             std::vector<std::uint64_t> seeds, const std::string& format,
             const std::string& name) {
  if (seeds.empty()) seeds = {0};
  EvalConfig cfg;
  cfg.threshold = MiThreshold{threshold};
  cfg.smoothing = parse_smoothing(smoothing);
  cfg.dataset_name = name.empty() ? data_path : name;
  ClassifierKind kind = parse_kind(kind_name_);

  Dataset train = load_dataset(data_path, df);
  std::vector<EvalReport> reports;
  if (!test_path.empty()) {
    Dataset test = load_dataset(test_path, df, &train.schema);
    train.schema = test.schema;  // values appended by the test load, if any
    reports.push_back(evaluate_holdout(kind, train, test, cfg));
  } else if (cv_k > 0) {
    for (auto seed : seeds) {
      reports.push_back(evaluate_cv(kind, train, cv_k, cfg, seed));
    }
  } else if (holdout_fraction > 0.0) {
    for (auto seed : seeds) {
      auto [tr, te] = split_holdout(train, holdout_fraction, seed);
      reports.push_back(evaluate_holdout(kind, tr, te, cfg));
    }
  } else {
    throw Error("eval needs one of --test, --cv or --holdout");
  }

  if (format == "json") {
    for (const auto& r : reports) write_report_json(std::cout, r);
  } else {
    for (const auto& r : reports) write_report_table(std::cout, r);
  }
  if (reports.size() > 1) {
    double mean = 0.0;
    for (const auto& r : reports) mean += r.accuracy;
    mean /= static_cast<double>(reports.size());
    char buf[64];
    std::snprintf(buf, sizeof buf, "mean over %zu seeds: %.2f\n",
                  reports.size(), 100.0 * mean);
    std::cout << buf;
  }
  return 0;
}

int cmd_wrap(const std::string& data_path, const DataFlags& df,
             std::vector<double> grid, double internal_fraction,
             std::uint64_t seed, const std::string& smoothing,
             const std::string& test_path, const std::string& out_path,
             const std::string& format, const std::string& name) {
  WrapperConfig wc;
  if (!grid.empty()) wc.threshold_grid = std::move(grid);
  wc.internal_train_fraction = internal_fraction;
  wc.seed = seed;
  wc.smoothing = parse_smoothing(smoothing);
  wc.dataset_name = name.empty() ? data_path : name;

  Dataset train = load_dataset(data_path, df);
  std::optional<Dataset> test;
  if (!test_path.empty()) {
    test = load_dataset(test_path, df, &train.schema);
    train.schema = test->schema;
  }
  WrapperResult result = wrapper_select(train, wc);

  EvalReport report = result.report;
  if (test) {
    report.n_test = test->n_cases;
    report.accuracy = score_accuracy(result.net, *test);
    report.stddev = binomial_std(report.accuracy, report.n_test);
  }
  if (format == "json") {
    write_report_json(std::cout, report);
  } else {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "winner=%s grid best: gbn %.2f @ %g, ban %.2f @ %g\n",
                  kind_name(result.winner), 100.0 * result.best_gbn.score,
                  result.best_gbn.threshold, 100.0 * result.best_ban.score,
                  result.best_ban.threshold);
    std::cout << buf;
    write_report_table(std::cout, report);
  }
  if (!out_path.empty()) write_output(out_path, export_bif(result.net));
  return 0;
}

int cmd_export(const std::string& model_path) {
  BayesNet bn = parse_bif_file(model_path);
  std::cout << "network: " << bn.name << '\n';
  std::cout << "kind: " << kind_name(bn.structure.kind) << '\n';
  std::cout << "class: " << bn.schema[bn.structure.class_node].name << '\n';
  std::cout << "variables: " << bn.cpts.size() << '\n';
  std::cout << "retained features: " << bn.structure.retained_features.size()
            << '\n';
  std::cout << "arcs:\n";
  for (const auto& [p, c] : bn.structure.dag.arcs()) {
    std::cout << "  " << bn.schema[p].name << " -> " << bn.schema[c].name
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Bayesian-network classifiers (naive-bayes, tan, ban, gbn)"};
  app.require_subcommand(1);

  DataFlags df;
  std::string kind = "naive-bayes", smoothing = "laplace", format = "table";
  std::string data_path, test_path, model_path, out_path, name;
  double threshold = 0.01, holdout = 0.0, internal_fraction = 2.0 / 3.0;
  int cv_k = 0;
  std::vector<std::uint64_t> seeds;
  std::uint64_t seed = 0;
  std::vector<double> grid;

  auto* train = app.add_subcommand("train", "Learn a classifier, write BIF");
  train->add_option("data", data_path, "Training CSV")->required();
  train->add_option("--kind", kind, "naive-bayes|tan|ban|gbn")->required();
  train->add_option("--threshold", threshold, "CI threshold in bits (ban/gbn)");
  train->add_option("--smoothing", smoothing, "none|laplace|laplace:<alpha>");
  train->add_option("-o,--output", out_path, "Output BIF path (default stdout)");
  train->add_option("--name", name, "Network name in the BIF header");
  add_data_flags(train, df);

  auto* predict = app.add_subcommand("predict", "Classify cases with a BIF model");
  predict->add_option("model", model_path, "BIF model file")->required();
  predict->add_option("data", data_path, "Cases CSV")->required();
  predict->add_option("-o,--output", out_path, "Label output path (default stdout)");
  add_data_flags(predict, df);

  auto* eval = app.add_subcommand("eval", "Train/test or cross-validated accuracy");
  eval->add_option("data", data_path, "Training CSV")->required();
  eval->add_option("--kind", kind, "naive-bayes|tan|ban|gbn")->required();
  eval->add_option("--threshold", threshold, "CI threshold in bits (ban/gbn)");
  eval->add_option("--smoothing", smoothing, "none|laplace|laplace:<alpha>");
  eval->add_option("--test", test_path, "Held-out test CSV");
  eval->add_option("--cv", cv_k, "k-fold cross validation");
  eval->add_option("--holdout", holdout, "Split this training fraction off the CSV");
  eval->add_option("--seed", seed, "Seed for splits");
  eval->add_option("--seeds", seeds, "Comma-separated seeds (averaged)")->delimiter(',');
  eval->add_option("--report-format", format, "table|json");
  eval->add_option("--name", name, "Dataset label in reports");
  add_data_flags(eval, df);

  auto* wrap = app.add_subcommand("wrap", "Threshold-searching GBN/BAN wrapper");
  wrap->add_option("data", data_path, "Training CSV")->required();
  wrap->add_option("--grid", grid, "Ascending threshold grid")->delimiter(',');
  wrap->add_option("--internal-fraction", internal_fraction,
                   "Internal training fraction");
  wrap->add_option("--seed", seed, "Seed for the internal split");
  wrap->add_option("--smoothing", smoothing, "none|laplace|laplace:<alpha>");
  wrap->add_option("--test", test_path, "Held-out test CSV scored with the winner");
  wrap->add_option("-o,--output", out_path, "Write the winning model as BIF");
  wrap->add_option("--report-format", format, "table|json");
  wrap->add_option("--name", name, "Dataset label in reports");
  add_data_flags(wrap, df);

  auto* exp = app.add_subcommand("export", "Describe a BIF model");
  exp->add_option("model", model_path, "BIF model file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      return cmd_train(data_path, df, kind, threshold, smoothing, out_path,
                       name.empty() ? "bnc" : name);
    }
    if (predict->parsed()) return cmd_predict(model_path, data_path, df, out_path);
    if (eval->parsed()) {
      if (seeds.empty() && eval->count("--seed")) seeds = {seed};
      return cmd_eval(data_path, df, kind, threshold, smoothing, cv_k,
                      test_path, holdout, seeds, format, name);
    }
    if (wrap->parsed()) {
      return cmd_wrap(data_path, df, grid, internal_fraction, seed, smoothing,
                      test_path, out_path, format, name);
    }
    if (exp->parsed()) return cmd_export(model_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
