#pragma once

#include <iosfwd>
#include <string>

#include "bnc/model.hpp"

namespace bnc {

// BIF v0.15 text, pinned to the discrete subset this toolkit uses:
// one `variable` block per node (`type discrete [ k ] { ... };`), one
// `probability` block per node with per-parent-configuration rows in
// row-major order (leftmost parent varying slowest) or a `table` row for
// parentless nodes. Classifier metadata travels in network properties.
// Output is deterministic and export(parse(export(x))) == export(x).
std::string export_bif(const BayesNet& bn);

BayesNet parse_bif(std::istream& in);
BayesNet parse_bif_string(const std::string& text);
BayesNet parse_bif_file(const std::string& path);

}  // namespace bnc
