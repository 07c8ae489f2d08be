#include "tabgen/emit.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tabgen {

namespace {

std::string slot_name(int slot) { return "A" + std::to_string(slot); }

// Schematic node in t-wrapper notation: F:A0, T:t2(A1), ...
std::string schema_node_str(const SchemaNode& n) {
  std::string out(1, sign_char(n.sign));
  out += ':';
  if (n.position == 0) return out + slot_name(n.slot);
  return out + "t" + std::to_string(n.position) + "(" + slot_name(n.slot) + ")";
}

std::string schema_branch_str(const SchemaBranch& b) {
  std::string out = "{ ";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += schema_node_str(b[i]);
  }
  return out + " }";
}

std::string closure_node_str(int position, Sign sign) {
  std::string out(1, sign_char(sign));
  out += ':';
  if (position == 0) return out + "A";
  return out + "t" + std::to_string(position) + "(A)";
}

// ---- theory rendering ----------------------------------------------------

std::string glyph_of(const Calculus& calc, const std::string& conn) {
  auto it = calc.spec.notation.find(conn);
  return it == calc.spec.notation.end() ? conn : it->second;
}

bool has_glyph(const Calculus& calc, const std::string& conn) {
  return calc.spec.notation.count(conn) != 0;
}

// Compact schema rendering used in rewrite lines: unary glyphs bind
// tight (~A0, ~~(A0-->~A0)), binary glyphs are infix and get parenthesized
// as arguments.
std::string render_tight(const Calculus& calc, const FormulaPtr& f);

std::string render_tight_arg(const Calculus& calc, const FormulaPtr& f) {
  if (f->is_atom()) return render_tight(calc, f);
  const Connective* c = calc.spec.find_connective(f->head());
  bool unary_glyph = c && c->arity == 1 && has_glyph(calc, f->head());
  if (unary_glyph) return render_tight(calc, f);
  return "(" + render_tight(calc, f) + ")";
}

std::string render_tight(const Calculus& calc, const FormulaPtr& f) {
  if (f->is_atom()) return f->head();
  const Connective* c = calc.spec.find_connective(f->head());
  assert(c);
  if (has_glyph(calc, f->head())) {
    const std::string glyph = glyph_of(calc, f->head());
    if (c->arity == 1) return glyph + render_tight_arg(calc, f->args()[0]);
    if (c->arity == 2)
      return render_tight_arg(calc, f->args()[0]) + glyph +
             render_tight_arg(calc, f->args()[1]);
  }
  std::string out = f->head();
  out += '(';
  for (std::size_t i = 0; i < f->args().size(); ++i) {
    if (i) out += ',';
    out += render_tight(calc, f->args()[i]);
  }
  out += ')';
  return out;
}

// Head core over argument slots: ~(A0), A0 --> A1, imp(A0,A1), ...
// Binary glyphs are spaced; the position-0 head wraps them in parens.
std::string render_head_core(const Calculus& calc, const std::string& conn,
                             int arity, bool parenthesize_infix) {
  if (has_glyph(calc, conn)) {
    const std::string glyph = glyph_of(calc, conn);
    if (arity == 1) return glyph + "(" + slot_name(0) + ")";
    if (arity == 2) {
      std::string body = slot_name(0) + " " + glyph + " " + slot_name(1);
      return parenthesize_infix ? "(" + body + ")" : body;
    }
  }
  std::string out = conn;
  out += '(';
  for (int i = 0; i < arity; ++i) {
    if (i) out += ',';
    out += slot_name(i);
  }
  out += ')';
  return out;
}

std::string theory_head(const Calculus& calc, const TableauRule& rule) {
  std::string out(1, sign_char(rule.head.sign));
  out += ':';
  if (rule.head.position == 0)
    return out + render_head_core(calc, rule.head.connective, rule.arity, true);
  return out + "t" + std::to_string(rule.head.position) + "(" +
         render_head_core(calc, rule.head.connective, rule.arity, false) + ")";
}

std::string theory_subgoal(const SchemaBranch& branch) {
  std::string out = "[ $H, ";
  for (const auto& n : branch) {
    out += schema_node_str(n);
    out += ", ";
  }
  return out + "$G ]";
}

std::string pad_name(const std::string& name) {
  std::string out = name + ":";
  do out += ' ';
  while (out.size() < 9);
  return out;
}

}  // namespace

std::string emit_text(const Calculus& calc) {
  std::ostringstream out;
  const LogicSpec& spec = calc.spec;
  const int k = calc.print_width() - 1;

  out << "logic " << spec.name << ": " << spec.num_values() << " values, "
      << spec.connectives.size() << " connectives, " << k << " separators\n";
  out << "values:";
  for (const auto& v : spec.values) out << ' ' << v.label;
  out << "\ndesignated:";
  for (int d : spec.designated)
    out << ' ' << spec.values[static_cast<std::size_t>(d)].label;
  out << '\n';
  for (const auto& c : spec.connectives)
    out << "connective " << c.name << "/" << c.arity << '\n';
  for (const auto& s : calc.table.separators)
    out << "separator t" << s.index << "(#) = " << s.str() << '\n';

  out << "\nprint table (value : designation bit, then separators 1.." << k
      << "):\n";
  std::size_t label_width = 0;
  for (const auto& v : spec.values) label_width = std::max(label_width, v.label.size());
  for (const auto& v : spec.values) {
    out << "  " << v.label << std::string(label_width - v.label.size(), ' ')
        << " :";
    for (Sign s : calc.table.prints[static_cast<std::size_t>(v.index)])
      out << ' ' << sign_char(s);
    out << '\n';
  }

  out << "\nexpansion rules:\n";
  for (const auto& rule : calc.rules) {
    out << "  " << calc.rule_name(rule.head) << "  head "
        << sign_char(rule.head.sign) << ':';
    if (rule.head.position > 0) out << 't' << rule.head.position << '(';
    out << rule.head.connective << '(';
    for (int i = 0; i < rule.arity; ++i) {
      if (i) out << ',';
      out << slot_name(i);
    }
    out << ')';
    if (rule.head.position > 0) out << ')';
    if (rule.branches.empty()) {
      out << "  closes immediately\n";
      continue;
    }
    out << "  (" << rule.branches.size() << " branches, simplified "
        << rule.simplified.size() << ")\n";
    out << "    generated:\n";
    for (const auto& b : rule.branches)
      out << "      " << schema_branch_str(b) << '\n';
    out << "    simplified:\n";
    for (const auto& b : rule.simplified)
      out << "      " << schema_branch_str(b) << '\n';
  }

  out << "\nclosure rules:\n";
  out << "  base: { T:X, F:X }\n";
  out << "  generated (unrealizable prints):\n";
  for (const auto& print : calc.closure_prints) {
    out << "    {";
    for (std::size_t p = 0; p < print.size(); ++p)
      out << (p ? ", " : " ") << closure_node_str(static_cast<int>(p), print[p]);
    out << " }\n";
  }
  out << "  simplified:\n";
  for (const auto& rule : calc.closures) {
    out << "    {";
    bool first = true;
    for (std::size_t p = 0; p < rule.pattern.size(); ++p) {
      if (!rule.pattern[p]) continue;
      out << (first ? " " : ", ")
          << closure_node_str(static_cast<int>(p), *rule.pattern[p]);
      first = false;
    }
    out << " }\n";
  }
  return out.str();
}

std::string emit_theory(const Calculus& calc) {
  std::ostringstream out;
  const LogicSpec& spec = calc.spec;

  out << "(* 2-signed tableau theory for " << spec.name << " *)\n";
  out << "(* " << spec.num_values() << " truth values, "
      << calc.table.separators.size() << " separating formulas *)\n\n";

  if (!calc.table.separators.empty()) {
    out << "(* separator rewrites: recognize ti(...) forms outermost *)\n";
    std::vector<std::string> lhs;
    std::size_t lhs_width = 0;
    for (const auto& sep : calc.table.separators) {
      FormulaPtr inst = sep.instantiate(Formula::atom("A0"));
      lhs.push_back("S:" + render_tight(calc, inst));
      lhs_width = std::max(lhs_width, lhs.back().size());
    }
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      out << pad_name("t" + std::to_string(i + 1) + "_def") << '"' << lhs[i]
          << std::string(lhs_width + 1 - lhs[i].size(), ' ') << "== S:t"
          << (i + 1) << "(A0)\"\n";
    }
    out << '\n';
  }

  out << "(* expansion rules *)\n";
  for (const auto& rule : calc.rules) {
    const std::string name = pad_name(calc.rule_name(rule.head));
    const std::string head =
        "[ $H, " + theory_head(calc, rule) + ", $G ]";
    if (rule.branches.empty()) {
      // No satisfying tuple: the head alone closes, rendered as an axiom.
      out << name << '"' << head << "\"\n";
      continue;
    }
    out << name << "\"[| ";
    for (std::size_t i = 0; i < rule.branches.size(); ++i) {
      if (i) out << " ;\n" << std::string(13, ' ');
      out << theory_subgoal(rule.branches[i]);
    }
    out << " |]\n" << std::string(15, ' ') << "==> " << head << "\"\n";
  }

  out << "\n(* closure rules *)\n";
  out << pad_name("CR0") << "\"[ $C1, T:A, $C2, F:A, $C3 ]\"\n";
  int cr = 1;
  for (const auto& print : calc.closure_prints) {
    out << pad_name("CR" + std::to_string(cr++)) << "\"[ ";
    for (std::size_t p = 0; p < print.size(); ++p) {
      out << "$C" << (p + 1) << ", "
          << closure_node_str(static_cast<int>(p), print[p]) << ", ";
    }
    out << "$C" << (print.size() + 1) << " ]\"\n";
  }
  return out.str();
}

}  // namespace tabgen
