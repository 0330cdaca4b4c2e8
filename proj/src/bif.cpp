#include "bnc/bif.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace bnc {

namespace {

bool is_bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         std::strchr("_.<>=?+-", c) != nullptr;
}

bool is_bare(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_bare_char);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string token_text(const std::string& s) {
  return is_bare(s) ? s : quoted(s);
}

std::string format_prob(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --- tokenizer ---------------------------------------------------------

struct Token {
  enum class Type { word, string, punct, end } type = Type::end;
  std::string text;
  int line = 0;
};

class Lexer {
 public:
  explicit Lexer(std::istream& in) : in_(in) {}

  const Token& peek() {
    if (!buffered_) {
      next_ = lex();
      buffered_ = true;
    }
    return next_;
  }
  Token take() {
    peek();
    buffered_ = false;
    return next_;
  }
  [[noreturn]] void fail(const std::string& msg, int line) const {
    throw Error("bif parse error, line " + std::to_string(line) + ": " + msg);
  }

 private:
  int get() {
    int c = in_.get();
    if (c == '\n') ++line_;
    return c;
  }

  Token lex() {
    int c;
    for (;;) {
      c = get();
      if (c == EOF) return {Token::Type::end, "", line_};
      if (std::isspace(c)) continue;
      if (c == '/' && in_.peek() == '/') {  // line comment
        while (c != EOF && c != '\n') c = get();
        continue;
      }
      break;
    }
    int line = line_;
    if (c == '"') {
      std::string s;
      for (;;) {
        c = get();
        if (c == EOF) fail("unterminated string", line);
        if (c == '\\') {
          int e = get();
          if (e == EOF) fail("unterminated string", line);
          s += static_cast<char>(e);
          continue;
        }
        if (c == '"') break;
        s += static_cast<char>(c);
      }
      return {Token::Type::string, s, line};
    }
    if (std::strchr("{}()[]|,;", c)) {
      return {Token::Type::punct, std::string(1, static_cast<char>(c)), line};
    }
    std::string s(1, static_cast<char>(c));
    while (in_.peek() != EOF && is_bare_char(static_cast<char>(in_.peek()))) {
      s += static_cast<char>(get());
    }
    if (!is_bare(s)) fail("unexpected character '" + s + "'", line);
    return {Token::Type::word, s, line};
  }

  std::istream& in_;
  Token next_;
  bool buffered_ = false;
  int line_ = 1;
};

// --- parser ------------------------------------------------------------

struct ParsedVariable {
  std::string name;
  std::vector<std::string> values;
  int line = 0;
};

struct ParsedProbability {
  std::string child;
  std::vector<std::string> parents;
  bool is_table = false;
  std::vector<double> flat;  // table form
  std::vector<std::pair<std::vector<std::string>, std::vector<double>>> rows;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::istream& in) : lex_(in) {}

  BayesNet parse();

 private:
  Token expect_punct(const std::string& p) {
    Token t = lex_.take();
    if (t.type != Token::Type::punct || t.text != p) {
      lex_.fail("expected '" + p + "'", t.line);
    }
    return t;
  }
  Token expect_word(const std::string& w) {
    Token t = lex_.take();
    if (t.type != Token::Type::word || t.text != w) {
      lex_.fail("expected '" + w + "'", t.line);
    }
    return t;
  }
  // Names and values may be bare words or quoted strings.
  std::string name_token() {
    Token t = lex_.take();
    if (t.type != Token::Type::word && t.type != Token::Type::string) {
      lex_.fail("expected a name", t.line);
    }
    return t.text;
  }
  double number_token() {
    Token t = lex_.take();
    if (t.type != Token::Type::word) lex_.fail("expected a number", t.line);
    char* end = nullptr;
    double v = std::strtod(t.text.c_str(), &end);
    if (end != t.text.c_str() + t.text.size()) {
      lex_.fail("expected a number, got '" + t.text + "'", t.line);
    }
    return v;
  }
  void skip_property() {  // property "..." ;
    Token t = lex_.take();
    if (t.type != Token::Type::string) lex_.fail("expected a property string", t.line);
    expect_punct(";");
  }

  void parse_network();
  ParsedVariable parse_variable();
  ParsedProbability parse_probability();
  BayesNet assemble();

  Lexer lex_;
  std::string network_name_;
  std::vector<std::string> properties_;
  std::vector<ParsedVariable> variables_;
  std::vector<ParsedProbability> probabilities_;
};

void Parser::parse_network() {
  expect_word("network");
  network_name_ = name_token();
  expect_punct("{");
  while (true) {
    const Token& t = lex_.peek();
    if (t.type == Token::Type::punct && t.text == "}") {
      lex_.take();
      break;
    }
    expect_word("property");
    Token s = lex_.take();
    if (s.type != Token::Type::string) lex_.fail("expected a property string", s.line);
    properties_.push_back(s.text);
    expect_punct(";");
  }
}

ParsedVariable Parser::parse_variable() {
  ParsedVariable var;
  var.line = lex_.peek().line;
  expect_word("variable");
  var.name = name_token();
  expect_punct("{");
  while (true) {
    Token t = lex_.take();
    if (t.type == Token::Type::punct && t.text == "}") break;
    if (t.type == Token::Type::word && t.text == "property") {
      skip_property();
      continue;
    }
    if (t.type != Token::Type::word || t.text != "type") {
      lex_.fail("expected 'type' in variable block", t.line);
    }
    expect_word("discrete");
    expect_punct("[");
    double k = number_token();
    expect_punct("]");
    expect_punct("{");
    while (true) {
      var.values.push_back(name_token());
      Token sep = lex_.take();
      if (sep.type == Token::Type::punct && sep.text == "}") break;
      if (sep.type != Token::Type::punct || sep.text != ",") {
        lex_.fail("expected ',' or '}' in value list", sep.line);
      }
    }
    expect_punct(";");
    if (static_cast<std::size_t>(k) != var.values.size()) {
      lex_.fail("variable '" + var.name + "' declares " +
                    std::to_string(static_cast<std::size_t>(k)) +
                    " values but lists " + std::to_string(var.values.size()),
                var.line);
    }
  }
  if (var.values.empty()) {
    lex_.fail("variable '" + var.name + "' has no type declaration", var.line);
  }
  return var;
}

ParsedProbability Parser::parse_probability() {
  ParsedProbability pb;
  pb.line = lex_.peek().line;
  expect_word("probability");
  expect_punct("(");
  pb.child = name_token();
  Token t = lex_.take();
  if (t.type == Token::Type::punct && t.text == "|") {
    while (true) {
      pb.parents.push_back(name_token());
      Token sep = lex_.take();
      if (sep.type == Token::Type::punct && sep.text == ")") break;
      if (sep.type != Token::Type::punct || sep.text != ",") {
        lex_.fail("expected ',' or ')' in parent list", sep.line);
      }
    }
  } else if (!(t.type == Token::Type::punct && t.text == ")")) {
    lex_.fail("expected '|' or ')'", t.line);
  }
  expect_punct("{");
  while (true) {
    const Token& head = lex_.peek();
    if (head.type == Token::Type::punct && head.text == "}") {
      lex_.take();
      break;
    }
    if (head.type == Token::Type::word && head.text == "property") {
      lex_.take();
      skip_property();
      continue;
    }
    if (head.type == Token::Type::word && head.text == "table") {
      int line = head.line;
      lex_.take();
      if (!pb.parents.empty()) {
        lex_.fail("'table' row in a block with parents", line);
      }
      pb.is_table = true;
      while (true) {
        pb.flat.push_back(number_token());
        Token sep = lex_.take();
        if (sep.type == Token::Type::punct && sep.text == ";") break;
        if (sep.type != Token::Type::punct || sep.text != ",") {
          lex_.fail("expected ',' or ';' in table row", sep.line);
        }
      }
      continue;
    }
    // ( v1, v2 ) p1, ..., pk;
    expect_punct("(");
    std::vector<std::string> config;
    while (true) {
      config.push_back(name_token());
      Token sep = lex_.take();
      if (sep.type == Token::Type::punct && sep.text == ")") break;
      if (sep.type != Token::Type::punct || sep.text != ",") {
        lex_.fail("expected ',' or ')' in configuration", sep.line);
      }
    }
    std::vector<double> row;
    while (true) {
      row.push_back(number_token());
      Token sep = lex_.take();
      if (sep.type == Token::Type::punct && sep.text == ";") break;
      if (sep.type != Token::Type::punct || sep.text != ",") {
        lex_.fail("expected ',' or ';' in probability row", sep.line);
      }
    }
    pb.rows.emplace_back(std::move(config), std::move(row));
  }
  return pb;
}

BayesNet Parser::assemble() {
  BayesNet bn;
  bn.name = network_name_;

  std::map<std::string, NodeId> id_of;
  for (const auto& var : variables_) {
    if (id_of.count(var.name)) {
      lex_.fail("variable '" + var.name + "' declared twice", var.line);
    }
    id_of[var.name] = static_cast<NodeId>(bn.schema.size());
    AttributeSchema attr;
    attr.name = var.name;
    for (const auto& v : var.values) {
      if (attr.find(v)) {
        lex_.fail("variable '" + var.name + "' repeats value '" + v + "'",
                  var.line);
      }
      attr.intern(v);
    }
    bn.schema.push_back(std::move(attr));
  }
  if (bn.schema.empty()) throw Error("bif document declares no variables");

  // Classifier metadata from network properties.
  std::string class_name = variables_.front().name;
  ClassifierKind kind = ClassifierKind::gbn;
  for (const auto& p : properties_) {
    std::istringstream ps(p);
    std::string key, value;
    ps >> key;
    std::getline(ps, value);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    if (key == "class") {
      if (!id_of.count(value)) {
        throw Error("bif class property names unknown variable '" + value + "'");
      }
      class_name = value;
    } else if (key == "kind") {
      if (auto k = kind_from_name(value)) kind = *k;
    }
  }

  std::vector<ParsedProbability*> prob_of(bn.schema.size(), nullptr);
  for (auto& pb : probabilities_) {
    auto it = id_of.find(pb.child);
    if (it == id_of.end()) {
      lex_.fail("probability block references undeclared variable '" +
                    pb.child + "'",
                pb.line);
    }
    if (prob_of[it->second]) {
      lex_.fail("duplicate probability block for '" + pb.child + "'", pb.line);
    }
    prob_of[it->second] = &pb;
    for (const auto& par : pb.parents) {
      if (!id_of.count(par)) {
        lex_.fail("probability block references undeclared variable '" + par +
                      "'",
                  pb.line);
      }
    }
  }
  for (std::size_t i = 0; i < bn.schema.size(); ++i) {
    if (!prob_of[i]) {
      throw Error("no probability block for variable '" + bn.schema[i].name + "'");
    }
  }

  // Arcs, then a declaration-order-preferring topological ordering.
  std::vector<std::vector<NodeId>> parents(bn.schema.size());
  std::vector<std::size_t> indegree(bn.schema.size(), 0);
  std::vector<std::vector<NodeId>> out(bn.schema.size());
  for (std::size_t c = 0; c < bn.schema.size(); ++c) {
    for (const auto& par : prob_of[c]->parents) {
      NodeId p = id_of[par];
      parents[c].push_back(p);
      out[p].push_back(static_cast<NodeId>(c));
      indegree[c]++;
    }
  }
  std::vector<NodeId> order;
  std::vector<bool> placed(bn.schema.size(), false);
  while (order.size() < bn.schema.size()) {
    bool advanced = false;
    for (std::size_t i = 0; i < bn.schema.size(); ++i) {
      if (!placed[i] && indegree[i] == 0) {
        placed[i] = true;
        order.push_back(static_cast<NodeId>(i));
        for (NodeId c : out[i]) indegree[c]--;
        advanced = true;
        break;
      }
    }
    if (!advanced) throw Error("bif parent lists contain a cycle");
  }

  bn.structure.kind = kind;
  bn.structure.class_node = id_of[class_name];
  bn.structure.dag = Dag(NodeOrdering::of(order));
  for (std::size_t c = 0; c < bn.schema.size(); ++c) {
    for (NodeId p : parents[c]) {
      bn.structure.dag.add_arc(p, static_cast<NodeId>(c));
    }
  }
  for (std::size_t i = 0; i < bn.schema.size(); ++i) {
    if (static_cast<NodeId>(i) != bn.structure.class_node) {
      bn.structure.retained_features.push_back(static_cast<NodeId>(i));
    }
  }

  // CPTs in probability-block declaration order, class block first if the
  // document was artifact-produced; kept as declared otherwise.
  for (auto& pb : probabilities_) {
    NodeId node = id_of[pb.child];
    Cpt cpt;
    cpt.node = node;
    cpt.arity = bn.schema[node].arity();
    std::size_t n_configs = 1;
    for (const auto& par : pb.parents) {
      NodeId p = id_of[par];
      cpt.parents.push_back(p);
      cpt.parent_arity.push_back(bn.schema[p].arity());
      n_configs *= bn.schema[p].arity();
    }
    cpt.table.assign(n_configs * cpt.arity, -1.0);

    auto check_row = [&](const std::vector<double>& row, int line) {
      if (row.size() != cpt.arity) {
        lex_.fail("row for '" + pb.child + "' has " +
                      std::to_string(row.size()) + " entries, expected " +
                      std::to_string(cpt.arity),
                  line);
      }
      double sum = 0.0;
      for (double v : row) {
        if (v < 0.0) lex_.fail("negative probability in '" + pb.child + "'", line);
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-6) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", sum);
        lex_.fail("probability row for '" + pb.child + "' sums to " +
                      std::string(buf),
                  line);
      }
    };

    if (pb.is_table || pb.parents.empty()) {
      if (!pb.is_table) {
        lex_.fail("parentless variable '" + pb.child + "' needs a table row",
                  pb.line);
      }
      check_row(pb.flat, pb.line);
      cpt.table = pb.flat;
    } else {
      for (const auto& [config, row] : pb.rows) {
        if (config.size() != pb.parents.size()) {
          lex_.fail("configuration arity mismatch in '" + pb.child + "'", pb.line);
        }
        std::size_t cfg = 0;
        for (std::size_t p = 0; p < config.size(); ++p) {
          auto v = bn.schema[cpt.parents[p]].find(config[p]);
          if (!v) {
            lex_.fail("value '" + config[p] + "' not declared for '" +
                          pb.parents[p] + "'",
                      pb.line);
          }
          cfg = cfg * cpt.parent_arity[p] + *v;
        }
        if (cpt.table[cfg * cpt.arity] >= 0.0) {
          lex_.fail("duplicate configuration in '" + pb.child + "'", pb.line);
        }
        check_row(row, pb.line);
        std::copy(row.begin(), row.end(), cpt.table.begin() + cfg * cpt.arity);
      }
      for (std::size_t cfg = 0; cfg < n_configs; ++cfg) {
        if (cpt.table[cfg * cpt.arity] < 0.0) {
          lex_.fail("probability block for '" + pb.child +
                        "' does not cover every parent configuration",
                    pb.line);
        }
      }
    }
    bn.cpts.push_back(std::move(cpt));
  }
  return bn;
}

BayesNet Parser::parse() {
  parse_network();
  while (true) {
    const Token& t = lex_.peek();
    if (t.type == Token::Type::end) break;
    if (t.type == Token::Type::word && t.text == "variable") {
      variables_.push_back(parse_variable());
    } else if (t.type == Token::Type::word && t.text == "probability") {
      probabilities_.push_back(parse_probability());
    } else {
      lex_.fail("expected 'variable' or 'probability'", t.line);
    }
  }
  return assemble();
}

}  // namespace

std::string export_bif(const BayesNet& bn) {
  std::ostringstream out;
  out << "network " << token_text(bn.name) << " {\n";
  out << "  property " << quoted("kind " + std::string(kind_name(bn.structure.kind)))
      << ";\n";
  out << "  property "
      << quoted("class " + bn.schema[bn.structure.class_node].name) << ";\n";
  out << "}\n";

  std::vector<const Cpt*> cpts;
  for (const Cpt& c : bn.cpts) cpts.push_back(&c);

  for (const Cpt* cpt : cpts) {
    const AttributeSchema& attr = bn.schema[cpt->node];
    out << "variable " << token_text(attr.name) << " {\n";
    out << "  type discrete [ " << attr.arity() << " ] { ";
    for (std::size_t v = 0; v < attr.arity(); ++v) {
      if (v) out << ", ";
      out << token_text(attr.values[v]);
    }
    out << " };\n}\n";
  }

  for (const Cpt* cpt : cpts) {
    out << "probability ( " << token_text(bn.schema[cpt->node].name);
    if (!cpt->parents.empty()) {
      out << " |";
      for (std::size_t p = 0; p < cpt->parents.size(); ++p) {
        out << (p ? ", " : " ") << token_text(bn.schema[cpt->parents[p]].name);
      }
    }
    out << " ) {\n";
    const std::size_t n_configs = cpt->n_configs();
    if (cpt->parents.empty()) {
      out << "  table ";
      for (std::size_t v = 0; v < cpt->arity; ++v) {
        if (v) out << ", ";
        out << format_prob(cpt->table[v]);
      }
      out << ";\n";
    } else {
      // Rows in row-major configuration order, leftmost parent slowest.
      std::vector<std::size_t> digits(cpt->parents.size(), 0);
      for (std::size_t cfg = 0; cfg < n_configs; ++cfg) {
        out << "  ( ";
        std::size_t rem = cfg;
        for (std::size_t p = cpt->parents.size(); p-- > 0;) {
          digits[p] = rem % cpt->parent_arity[p];
          rem /= cpt->parent_arity[p];
        }
        for (std::size_t p = 0; p < cpt->parents.size(); ++p) {
          if (p) out << ", ";
          out << token_text(bn.schema[cpt->parents[p]].values[digits[p]]);
        }
        out << " ) ";
        for (std::size_t v = 0; v < cpt->arity; ++v) {
          if (v) out << ", ";
          out << format_prob(cpt->table[cfg * cpt->arity + v]);
        }
        out << ";\n";
      }
    }
    out << "}\n";
  }
  return out.str();
}

BayesNet parse_bif(std::istream& in) { return Parser(in).parse(); }

BayesNet parse_bif_string(const std::string& text) {
  std::istringstream in(text);
  return parse_bif(in);
}

BayesNet parse_bif_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_bif(in);
}

}  // namespace bnc
