#include "tabgen/parse.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tabgen/errors.hpp"

namespace tabgen {

namespace {

bool is_ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

// Recursive-descent formula reader shared by formulas, sequents and
// separator patterns.
class FormulaReader {
 public:
  FormulaReader(const std::string& text, const LogicSpec& spec, bool allow_placeholder)
      : text_(text), spec_(spec), allow_placeholder_(allow_placeholder) {}

  FormulaPtr read_toplevel() {
    FormulaPtr f = read_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return f;
  }

  FormulaPtr read_expr() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of formula", pos_);
    char c = text_[pos_];
    if (c == '#') {
      if (!allow_placeholder_)
        throw ParseError("placeholder '#' is only valid in separator patterns", pos_);
      ++pos_;
      return Formula::atom(kPlaceholder);
    }
    if (!is_ident_start(c))
      throw ParseError(std::string("expected an atom or connective, got '") + c + "'",
                       pos_);
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const Connective* conn = spec_.find_connective(name);
      if (!conn) throw ParseError("unknown connective '" + name + "'", start);
      ++pos_;  // consume '('
      std::vector<FormulaPtr> args;
      args.push_back(read_expr());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        args.push_back(read_expr());
        skip_ws();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      if (static_cast<int>(args.size()) != conn->arity)
        throw ParseError("connective '" + name + "' expects " +
                             std::to_string(conn->arity) + " arguments, got " +
                             std::to_string(args.size()),
                         start);
      return Formula::app(name, std::move(args));
    }
    if (spec_.find_connective(name))
      throw ParseError("connective '" + name + "' used as an atom", start);
    return Formula::atom(name);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  const std::string& text_;
  const LogicSpec& spec_;
  bool allow_placeholder_;
  std::size_t pos_ = 0;
};

using nlohmann::json;

const json& require_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw SpecError(std::string("missing field '") + name + "'");
  return *it;
}

std::string require_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw SpecError(what + " must be a string");
  return j.get<std::string>();
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

// Flattens a nested table row-major (first argument outermost) while
// checking shape: depth == arity, every level has one entry per value.
void flatten_table(const json& node, const LogicSpec& spec, int depth, int arity,
                   const std::string& cname, std::vector<int>& out) {
  if (depth == arity) {
    std::string label = require_string(node, "table entry of '" + cname + "'");
    int idx = spec.value_index(label);
    if (idx < 0)
      throw SpecError("connective '" + cname + "' table uses unknown value '" +
                      label + "'");
    out.push_back(idx);
    return;
  }
  if (!node.is_array() ||
      node.size() != static_cast<std::size_t>(spec.num_values()))
    throw SpecError("connective '" + cname +
                    "' table nesting does not match arity/value count");
  for (const auto& sub : node) flatten_table(sub, spec, depth + 1, arity, cname, out);
}

}  // namespace

LogicSpec parse_logic_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(),
                     e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw SpecError("spec document must be a JSON object");

  LogicSpec spec;
  spec.name = require_string(require_field(j, "name"), "'name'");

  const json& jvalues = require_field(j, "values");
  if (!jvalues.is_array() || jvalues.empty())
    throw SpecError("'values' must be a non-empty array");
  for (const auto& v : jvalues) {
    TruthValue tv;
    tv.index = static_cast<int>(spec.values.size());
    tv.label = require_string(v, "value label");
    spec.values.push_back(std::move(tv));
  }

  const json& jdes = require_field(j, "designated");
  if (!jdes.is_array()) throw SpecError("'designated' must be an array");
  for (const auto& d : jdes) {
    std::string label = require_string(d, "designated entry");
    int idx = spec.value_index(label);
    if (idx < 0) throw SpecError("designated value '" + label + "' is not declared");
    spec.designated.push_back(idx);
  }
  std::sort(spec.designated.begin(), spec.designated.end());

  const json& jconn = require_field(j, "connectives");
  if (!jconn.is_array()) throw SpecError("'connectives' must be an array");
  for (const auto& c : jconn) {
    if (!c.is_object()) throw SpecError("connective entries must be objects");
    Connective conn;
    conn.name = require_string(require_field(c, "name"), "connective name");
    if (!valid_identifier(conn.name))
      throw SpecError("connective name '" + conn.name +
                      "' is not a lowercase identifier");
    const json& jar = require_field(c, "arity");
    if (!jar.is_number_integer())
      throw SpecError("arity of '" + conn.name + "' must be an integer");
    conn.arity = jar.get<int>();
    if (conn.arity < 1)
      throw SpecError("connective '" + conn.name + "' has arity < 1");
    flatten_table(require_field(c, "table"), spec, 0, conn.arity, conn.name,
                  conn.table);
    spec.connectives.push_back(std::move(conn));
  }

  if (auto it = j.find("separators"); it != j.end()) {
    if (!it->is_array()) throw SpecError("'separators' must be an array");
    int index = 1;
    for (const auto& s : *it) {
      std::string text = require_string(s, "separator entry");
      spec.separators.push_back(parse_separator_pattern(text, index++, spec));
    }
  }

  if (auto it = j.find("notation"); it != j.end()) {
    if (!it->is_object()) throw SpecError("'notation' must be an object");
    for (const auto& [key, val] : it->items())
      spec.notation[key] = require_string(val, "notation glyph");
  }

  spec.validate();
  return spec;
}

LogicSpec load_logic_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_logic_spec(buf.str());
}

FormulaPtr parse_formula(const std::string& text, const LogicSpec& spec) {
  FormulaReader r(text, spec, /*allow_placeholder=*/false);
  return r.read_toplevel();
}

Sequent parse_sequent(const std::string& text, const LogicSpec& spec) {
  std::size_t turnstile = text.find("|-");
  if (turnstile == std::string::npos)
    throw ParseError("sequent needs '|-'", text.size());
  if (text.find("|-", turnstile + 2) != std::string::npos)
    throw ParseError("sequent has more than one '|-'", text.find("|-", turnstile + 2));

  Sequent seq;
  std::string left = text.substr(0, turnstile);
  // Split at top-level commas; commas inside argument lists don't count.
  std::vector<std::pair<std::string, std::size_t>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    char c = left[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == ',' && depth == 0) {
      parts.emplace_back(left.substr(start, i - start), start);
      start = i + 1;
    }
  }
  parts.emplace_back(left.substr(start), start);

  auto blank = [](const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
  };
  if (!(parts.size() == 1 && blank(parts[0].first))) {
    for (const auto& [part, off] : parts) {
      if (blank(part)) throw ParseError("empty premise", off);
      try {
        seq.premises.push_back(parse_formula(part, spec));
      } catch (const ParseError& e) {
        throw ParseError(e.raw, off + e.offset);
      }
    }
  }
  std::string right = text.substr(turnstile + 2);
  if (blank(right)) throw ParseError("sequent needs a conclusion", text.size());
  try {
    seq.conclusion = parse_formula(right, spec);
  } catch (const ParseError& e) {
    throw ParseError(e.raw, turnstile + 2 + e.offset);
  }
  return seq;
}

SeparatorPattern parse_separator_pattern(const std::string& text, int index,
                                         const LogicSpec& spec) {
  FormulaReader r(text, spec, /*allow_placeholder=*/true);
  SeparatorPattern p;
  p.index = index;
  p.body = r.read_toplevel();
  return p;
}

}  // namespace tabgen
