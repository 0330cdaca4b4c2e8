#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnc/common.hpp"

namespace bnc {

enum class AttrKind { categorical, continuous };

struct AttributeSchema {
  std::string name;
  AttrKind kind = AttrKind::categorical;
  std::vector<std::string> values;  // categorical only; "?" is an ordinary category
  bool ignored = false;             // set by the discretizer when no cut survives

  std::optional<Cat> find(const std::string& label) const;
  // Lookup-or-append; keeps first-appearance order stable.
  Cat intern(const std::string& label);
  std::size_t arity() const { return values.size(); }
};

// Columnar store of categorical cases. Continuous columns live in `numeric`
// until discretized; every other module consumes categorical cells only.
// Immutable after construction: all operations return new values.
struct Dataset {
  std::vector<AttributeSchema> schema;
  int class_index = -1;
  std::size_t n_cases = 0;
  std::vector<Cat> cells;                    // row-major, n_cases x schema.size()
  std::vector<std::vector<double>> numeric;  // per attribute; empty unless continuous

  std::size_t n_attrs() const { return schema.size(); }
  Cat at(std::size_t row, std::size_t col) const {
    return cells[row * schema.size() + col];
  }
  std::span<const Cat> row(std::size_t r) const {
    return {cells.data() + r * schema.size(), schema.size()};
  }
  std::size_t arity(NodeId i) const { return schema[i].arity(); }
  const AttributeSchema& class_attr() const { return schema[class_index]; }
  bool has_continuous() const;
  // Non-class attributes, skipping ignored ones; dataset column order.
  std::vector<NodeId> feature_ids() const;
  // New dataset with the given rows (indices into this one), same schema.
  Dataset select_rows(std::span<const std::size_t> rows) const;
};

struct LoadOptions {
  std::string class_column;        // name or decimal index; empty = last column
  std::string missing_token = "?";
  char delimiter = ',';
  bool header = true;
  std::vector<std::string> names;  // required when header == false
  std::vector<std::string> continuous_columns;
  bool allow_missing_class = false;  // training data must have labels
  // When set, categories extend this schema instead of starting fresh;
  // with strict_schema, labels outside it are an error (predict path).
  const std::vector<AttributeSchema>* base_schema = nullptr;
  bool strict_schema = false;
};

Dataset load_csv(std::istream& in, const LoadOptions& opts = {});
Dataset load_csv_file(const std::string& path, const LoadOptions& opts = {});

// Writes header + labeled cells; loading the output again round-trips
// cell values and row order.
void write_csv(const Dataset& ds, std::ostream& out, char delimiter = ',');

// Sidecar format: one "<name> <categorical|continuous>" pair per line.
std::vector<std::string> read_schema_sidecar(const std::string& path);

}  // namespace bnc
