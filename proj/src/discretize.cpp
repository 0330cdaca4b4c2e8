#include "bnc/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

namespace bnc {

namespace {

double entropy_of_counts(const std::vector<std::size_t>& counts, std::size_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::size_t classes_present(const std::vector<std::size_t>& counts) {
  std::size_t k = 0;
  for (std::size_t c : counts) k += (c > 0);
  return k;
}

struct SortedColumn {
  std::vector<double> x;  // ascending, missing removed
  std::vector<Cat> y;     // class labels in the same order
};

// Recursive Fayyad-Irani split over y[lo,hi). Candidate cuts are midpoints
// between adjacent distinct values; a cut is kept when its information gain
// clears the MDL criterion.
void mdl_split(const SortedColumn& col, std::size_t lo, std::size_t hi,
               std::size_t n_classes, std::vector<double>& cuts) {
  const std::size_t n = hi - lo;
  if (n < 2) return;

  std::vector<std::size_t> total(n_classes, 0);
  for (std::size_t i = lo; i < hi; ++i) total[col.y[i]]++;
  const double h_all = entropy_of_counts(total, n);

  // One left-to-right sweep evaluating every boundary between distinct values.
  std::vector<std::size_t> left(n_classes, 0);
  double best_gain = -1.0;
  std::size_t best_pos = 0;  // split index: left = [lo,pos), right = [pos,hi)
  double best_h1 = 0, best_h2 = 0;
  std::size_t best_k1 = 0, best_k2 = 0;
  for (std::size_t i = lo; i + 1 < hi; ++i) {
    left[col.y[i]]++;
    if (col.x[i] == col.x[i + 1]) continue;
    const std::size_t n1 = i - lo + 1;
    const std::size_t n2 = n - n1;
    std::vector<std::size_t> right(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) right[c] = total[c] - left[c];
    const double h1 = entropy_of_counts(left, n1);
    const double h2 = entropy_of_counts(right, n2);
    const double gain = h_all - (static_cast<double>(n1) / n) * h1 -
                        (static_cast<double>(n2) / n) * h2;
    if (gain > best_gain) {
      best_gain = gain;
      best_pos = i + 1;
      best_h1 = h1;
      best_h2 = h2;
      best_k1 = classes_present(left);
      best_k2 = classes_present(right);
    }
  }
  if (best_gain <= 0.0) return;

  const double k = static_cast<double>(classes_present(total));
  const double delta = std::log2(std::pow(3.0, k) - 2.0) -
                       (k * h_all - best_k1 * best_h1 - best_k2 * best_h2);
  const double threshold =
      (std::log2(static_cast<double>(n) - 1.0) + delta) / static_cast<double>(n);
  if (best_gain <= threshold) return;

  cuts.push_back((col.x[best_pos - 1] + col.x[best_pos]) / 2.0);
  mdl_split(col, lo, best_pos, n_classes, cuts);
  mdl_split(col, best_pos, hi, n_classes, cuts);
}

std::string format_cut(double v, int precision) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

// Interval labels for ascending cuts c1..cm: "<=c1", "(c1,c2]", ..., ">cm".
std::vector<std::string> interval_labels(const std::vector<double>& cuts) {
  int precision = 6;
  while (precision <= 17) {
    std::vector<std::string> txt;
    for (double c : cuts) txt.push_back(format_cut(c, precision));
    if (std::adjacent_find(txt.begin(), txt.end()) == txt.end()) {
      std::vector<std::string> labels;
      labels.push_back("<=" + txt.front());
      for (std::size_t i = 0; i + 1 < txt.size(); ++i) {
        labels.push_back("(" + txt[i] + "," + txt[i + 1] + "]");
      }
      labels.push_back(">" + txt.back());
      return labels;
    }
    ++precision;  // adjacent cuts collided at this precision
  }
  throw Error("indistinguishable cut points");
}

Cat bin_of(double v, const std::vector<double>& cuts) {
  std::size_t b = 0;
  while (b < cuts.size() && v > cuts[b]) ++b;
  return static_cast<Cat>(b);
}

}  // namespace

std::vector<double> interval_label_cuts(const AttributeSchema& attr) {
  std::vector<std::string> labels = attr.values;
  if (!labels.empty() && labels.back() == "?") labels.pop_back();
  if (labels.size() < 2) return {};

  auto parse_exact = [](const std::string& text, double& out) {
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return !text.empty() && end == text.c_str() + text.size();
  };

  std::vector<double> cuts;
  double c = 0;
  if (labels.front().rfind("<=", 0) != 0 ||
      !parse_exact(labels.front().substr(2), c)) {
    return {};
  }
  cuts.push_back(c);
  for (std::size_t i = 1; i + 1 < labels.size(); ++i) {
    const std::string& l = labels[i];
    auto comma = l.find(',');
    if (l.size() < 5 || l.front() != '(' || l.back() != ']' ||
        comma == std::string::npos) {
      return {};
    }
    double lo = 0, hi = 0;
    if (!parse_exact(l.substr(1, comma - 1), lo) ||
        !parse_exact(l.substr(comma + 1, l.size() - comma - 2), hi) ||
        lo != cuts.back() || hi <= lo) {
      return {};
    }
    cuts.push_back(hi);
  }
  double last = 0;
  if (labels.back().rfind(">", 0) != 0 ||
      !parse_exact(labels.back().substr(1), last) || last != cuts.back()) {
    return {};
  }
  return cuts;
}

std::optional<Cat> interval_bin(const AttributeSchema& attr, double v) {
  auto cuts = interval_label_cuts(attr);
  if (cuts.empty()) return std::nullopt;
  return bin_of(v, cuts);
}

std::vector<double> entropy_mdl_cuts(std::span<const double> x,
                                     std::span<const Cat> y,
                                     std::size_t n_classes) {
  SortedColumn col;
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  col.x.reserve(x.size());
  col.y.reserve(x.size());
  for (std::size_t i : idx) {
    col.x.push_back(x[i]);
    col.y.push_back(y[i]);
  }
  std::vector<double> cuts;
  mdl_split(col, 0, col.x.size(), n_classes, cuts);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

Dataset discretize(const Dataset& ds, const DiscretizeOptions& opts) {
  if (!ds.has_continuous()) return ds;
  if (ds.schema[ds.class_index].kind != AttrKind::categorical) {
    throw Error("class column must be categorical");
  }

  Dataset out;
  out.schema = ds.schema;
  out.class_index = ds.class_index;
  out.n_cases = ds.n_cases;
  out.cells = ds.cells;

  for (std::size_t c = 0; c < ds.n_attrs(); ++c) {
    if (ds.schema[c].kind != AttrKind::continuous) continue;
    const auto& column = ds.numeric[c];

    std::vector<double> present;
    std::vector<Cat> labels;
    bool any_missing = false;
    for (std::size_t r = 0; r < ds.n_cases; ++r) {
      if (std::isnan(column[r])) {
        any_missing = true;
      } else {
        present.push_back(column[r]);
        labels.push_back(ds.at(r, ds.class_index));
      }
    }

    std::vector<double> cuts;
    if (present.empty()) {
      // all-missing column degenerates below
    } else if (opts.method == DiscretizeMethod::entropy_mdl) {
      cuts = entropy_mdl_cuts(present, labels, ds.arity(ds.class_index));
    } else {
      if (opts.bins < 1) throw Error("equal_frequency needs bins >= 1");
      std::vector<double> sorted = present;
      std::sort(sorted.begin(), sorted.end());
      for (int b = 1; b < opts.bins; ++b) {
        std::size_t pos = sorted.size() * static_cast<std::size_t>(b) /
                          static_cast<std::size_t>(opts.bins);
        if (pos == 0 || pos >= sorted.size()) continue;
        if (sorted[pos - 1] == sorted[pos]) continue;  // empty bin
        cuts.push_back((sorted[pos - 1] + sorted[pos]) / 2.0);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    }

    AttributeSchema& attr = out.schema[c];
    attr.kind = AttrKind::categorical;
    attr.values.clear();
    if (cuts.empty()) {
      attr.values.push_back("all");
      attr.ignored = true;
    } else {
      attr.values = interval_labels(cuts);
    }
    if (any_missing) attr.values.push_back("?");
    const Cat missing_cat = static_cast<Cat>(attr.values.size() - 1);
    for (std::size_t r = 0; r < ds.n_cases; ++r) {
      Cat v = std::isnan(column[r])
                  ? missing_cat
                  : (cuts.empty() ? Cat{0} : bin_of(column[r], cuts));
      out.cells[r * ds.n_attrs() + c] = v;
    }
  }
  return out;
}

}  // namespace bnc
