#include "bnc/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bnc {

std::optional<Cat> AttributeSchema::find(const std::string& label) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == label) return static_cast<Cat>(i);
  }
  return std::nullopt;
}

Cat AttributeSchema::intern(const std::string& label) {
  if (auto i = find(label)) return *i;
  if (values.size() >= 65535) {
    throw Error("attribute '" + name + "' exceeds the category limit");
  }
  values.push_back(label);
  return static_cast<Cat>(values.size() - 1);
}

bool Dataset::has_continuous() const {
  return std::any_of(schema.begin(), schema.end(), [](const AttributeSchema& a) {
    return a.kind == AttrKind::continuous;
  });
}

std::vector<NodeId> Dataset::feature_ids() const {
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (static_cast<int>(i) == class_index || schema[i].ignored) continue;
    ids.push_back(static_cast<NodeId>(i));
  }
  return ids;
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  Dataset out;
  out.schema = schema;
  out.class_index = class_index;
  out.n_cases = rows.size();
  out.cells.reserve(rows.size() * schema.size());
  for (std::size_t r : rows) {
    auto src = row(r);
    out.cells.insert(out.cells.end(), src.begin(), src.end());
  }
  if (!numeric.empty()) {
    out.numeric.resize(schema.size());
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (numeric[c].empty()) continue;
      out.numeric[c].reserve(rows.size());
      for (std::size_t r : rows) out.numeric[c].push_back(numeric[c][r]);
    }
  }
  return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  for (char ch : line) {
    if (ch == delim) {
      out.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  out.push_back(field);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int resolve_class_column(const std::vector<std::string>& names,
                         const std::string& spec) {
  if (spec.empty()) return static_cast<int>(names.size()) - 1;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == spec) return static_cast<int>(i);
  }
  // Fall back to a decimal index.
  bool numeric = !spec.empty() &&
                 std::all_of(spec.begin(), spec.end(),
                             [](unsigned char c) { return std::isdigit(c); });
  if (numeric) {
    int idx = std::stoi(spec);
    if (idx >= 0 && idx < static_cast<int>(names.size())) return idx;
  }
  throw Error("class column '" + spec + "' not found");
}

double parse_numeric_cell(const std::string& field, std::size_t row_no,
                          const std::string& col) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != field.size() || field.empty()) {
    throw Error("row " + std::to_string(row_no) + ": non-numeric value '" +
                field + "' in continuous column '" + col + "'");
  }
  return v;
}

}  // namespace

Dataset load_csv(std::istream& in, const LoadOptions& opts) {
  std::string line;
  std::vector<std::string> names;
  if (opts.header) {
    if (!std::getline(in, line)) throw Error("empty input");
    for (auto& f : split_line(line, opts.delimiter)) names.push_back(trim(f));
  } else {
    if (opts.names.empty()) throw Error("headerless input requires caller-supplied column names");
    names = opts.names;
  }
  if (names.empty()) throw Error("empty input");

  Dataset ds;
  ds.class_index = resolve_class_column(names, opts.class_column);
  ds.schema.resize(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    ds.schema[i].name = names[i];
    bool cont = std::find(opts.continuous_columns.begin(),
                          opts.continuous_columns.end(),
                          names[i]) != opts.continuous_columns.end();
    if (cont && static_cast<int>(i) == ds.class_index) {
      throw Error("class column cannot be continuous");
    }
    ds.schema[i].kind = cont ? AttrKind::continuous : AttrKind::categorical;
  }
  if (opts.base_schema) {
    if (opts.base_schema->size() != names.size()) {
      throw Error("input has " + std::to_string(names.size()) +
                  " columns but the reference schema has " +
                  std::to_string(opts.base_schema->size()));
    }
    ds.schema = *opts.base_schema;
  }
  bool any_cont = ds.has_continuous();
  if (any_cont) ds.numeric.resize(names.size());

  std::size_t row_no = opts.header ? 1 : 0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_line(line, opts.delimiter);
    if (fields.size() != names.size()) {
      throw Error("row " + std::to_string(row_no) + ": expected " +
                  std::to_string(names.size()) + " fields, got " +
                  std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      std::string field = trim(fields[c]);
      bool missing = (field == opts.missing_token);
      if (missing && static_cast<int>(c) == ds.class_index &&
          !opts.allow_missing_class) {
        throw Error("row " + std::to_string(row_no) +
                    ": missing value in class column");
      }
      if (ds.schema[c].kind == AttrKind::continuous) {
        ds.cells.push_back(0);
        ds.numeric[c].push_back(
            missing ? std::nan("")
                    : parse_numeric_cell(field, row_no, names[c]));
        continue;
      }
      const std::string& label = missing ? std::string("?") : field;
      if (opts.strict_schema) {
        auto idx = ds.schema[c].find(label);
        if (!idx) {
          throw Error("row " + std::to_string(row_no) + ": value '" + label +
                      "' not declared for attribute '" + names[c] + "'");
        }
        ds.cells.push_back(*idx);
      } else {
        ds.cells.push_back(ds.schema[c].intern(label));
      }
    }
    ++n;
  }
  if (n == 0) throw Error("no data rows");
  ds.n_cases = n;
  for (std::size_t i = 0; i < ds.schema.size(); ++i) {
    if (ds.schema[i].kind == AttrKind::categorical && ds.schema[i].values.empty()) {
      throw Error("attribute '" + ds.schema[i].name + "' has no values");
    }
  }
  return ds;
}

Dataset load_csv_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return load_csv(in, opts);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_csv(const Dataset& ds, std::ostream& out, char delimiter) {
  for (std::size_t c = 0; c < ds.n_attrs(); ++c) {
    if (c) out << delimiter;
    out << ds.schema[c].name;
  }
  out << '\n';
  for (std::size_t r = 0; r < ds.n_cases; ++r) {
    for (std::size_t c = 0; c < ds.n_attrs(); ++c) {
      if (c) out << delimiter;
      if (ds.schema[c].kind == AttrKind::continuous) {
        double v = ds.numeric[c][r];
        if (std::isnan(v)) {
          out << '?';
        } else {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", v);
          out << buf;
        }
      } else {
        out << ds.schema[c].values[ds.at(r, c)];
      }
    }
    out << '\n';
  }
}

std::vector<std::string> read_schema_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open schema sidecar '" + path + "'");
  std::vector<std::string> continuous;
  std::string name, kind;
  while (in >> name >> kind) {
    if (kind == "continuous") {
      continuous.push_back(name);
    } else if (kind != "categorical") {
      throw Error("schema sidecar '" + path + "': unknown kind '" + kind + "'");
    }
  }
  return continuous;
}

}  // namespace bnc
