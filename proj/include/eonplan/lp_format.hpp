// Text export of the integer program: CPLEX-style LP and free-form MPS.
// A small LP parser lives here too so tests can check that what we write
// reads back as the same model.  Coefficients are printed with %.17g, which
// round-trips doubles exactly; the writer always emits an explicit sign and
// coefficient per term ("+ 1 x_d0_p0_c2"), which keeps the grammar trivial.

#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "eonplan/model.hpp"

namespace eonplan {

namespace detail {

inline std::string format_coeff(double c) {
  if (c == static_cast<long long>(c) && std::abs(c) < 1e15)
    return std::to_string(static_cast<long long>(c));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", c);
  return buf;
}

inline void append_terms(std::string& out, const std::vector<RowTerm>& terms,
                         const std::vector<VarInfo>& vars) {
  int width = 0;
  for (const RowTerm& t : terms) {
    std::string piece = (t.coeff < 0 ? "- " : "+ ") + format_coeff(std::abs(t.coeff)) + " " +
                        vars[t.var].name;
    if (width > 0 && width + static_cast<int>(piece.size()) > 76) {
      out += "\n   ";
      width = 3;
    }
    out += " " + piece;
    width += static_cast<int>(piece.size()) + 1;
  }
}

}  // namespace detail

inline std::string write_lp(const Model& m, const std::string& model_name = "eonplan") {
  std::string out = "\\ " + model_name + "\n";
  out += "Minimize\n obj:";
  std::vector<RowTerm> obj;
  for (std::size_t i = 0; i < m.vars.size(); ++i)
    if (m.vars[i].objective != 0.0)
      obj.push_back({static_cast<int>(i), m.vars[i].objective});
  detail::append_terms(out, obj, m.vars);
  out += "\nSubject To\n";
  for (const Row& row : m.rows) {
    out += " " + row.name + ":";
    detail::append_terms(out, row.terms, m.vars);
    switch (row.sense) {
      case RowSense::Eq: out += " = "; break;
      case RowSense::Le: out += " <= "; break;
      case RowSense::Ge: out += " >= "; break;
    }
    out += detail::format_coeff(row.rhs) + "\n";
  }
  out += "Binary\n";
  for (const VarInfo& v : m.vars) out += " " + v.name + "\n";
  out += "End\n";
  return out;
}

inline std::string write_mps(const Model& m, const std::string& model_name = "eonplan") {
  std::string out = "NAME " + model_name + "\nROWS\n N obj\n";
  for (const Row& row : m.rows) {
    const char* s = row.sense == RowSense::Eq ? "E" : row.sense == RowSense::Le ? "L" : "G";
    out += std::string(" ") + s + " " + row.name + "\n";
  }
  // Column-major entries; transpose the rows first.
  std::vector<std::vector<std::pair<const std::string*, double>>> cols(m.vars.size());
  for (std::size_t i = 0; i < m.vars.size(); ++i)
    if (m.vars[i].objective != 0.0) cols[i].push_back({nullptr, m.vars[i].objective});
  for (const Row& row : m.rows)
    for (const RowTerm& t : row.terms) cols[t.var].push_back({&row.name, t.coeff});
  out += "COLUMNS\n MARK0 'MARKER' 'INTORG'\n";
  static const std::string kObj = "obj";
  for (std::size_t i = 0; i < m.vars.size(); ++i)
    for (const auto& [row_name, coeff] : cols[i])
      out += " " + m.vars[i].name + " " + (row_name ? *row_name : kObj) + " " +
             detail::format_coeff(coeff) + "\n";
  out += " MARK1 'MARKER' 'INTEND'\nRHS\n";
  for (const Row& row : m.rows)
    if (row.rhs != 0.0) out += " RHS " + row.name + " " + detail::format_coeff(row.rhs) + "\n";
  out += "BOUNDS\n";
  for (const VarInfo& v : m.vars) out += " BV BND " + v.name + "\n";
  out += "ENDATA\n";
  return out;
}

// Reads back LP text in the dialect written above (sections Minimize /
// Subject To / Binary / End; '\' comment lines).  Variable order is taken
// from the Binary section, so a full write/parse cycle preserves indices.
inline Model parse_lp(const std::string& text) {
  enum Section { None, Objective, Rows, Binary, Ignored } section = None;
  bool saw_objective = false;
  std::vector<std::string> obj_tokens;
  std::vector<std::vector<std::string>> row_tokens;
  std::vector<std::string> binary_names;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    std::string lower;
    for (char ch : line) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto trimmed = [](const std::string& s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trimmed(lower);
    if (key == "minimize" || key == "min") { section = Objective; saw_objective = true; continue; }
    if (key == "subject to" || key == "st" || key == "s.t.") { section = Rows; continue; }
    if (key == "binary" || key == "binaries") { section = Binary; continue; }
    if (key == "end") break;
    if (key == "bounds" || key == "general" || key == "generals") { section = Ignored; continue; }

    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      switch (section) {
        case Objective:
          if (tok.back() == ':') break;  // objective label carries no content
          obj_tokens.push_back(tok);
          break;
        case Rows:
          if (tok.size() > 1 && tok.back() == ':')
            row_tokens.push_back({tok.substr(0, tok.size() - 1)});
          else if (row_tokens.empty())
            throw ParseError("lp: constraint term before any row label: " + tok);
          else
            row_tokens.back().push_back(tok);
          break;
        case Binary: binary_names.push_back(tok); break;
        case Ignored: break;
        case None: throw ParseError("lp: content before Minimize: " + tok);
      }
    }
  }
  if (!saw_objective) throw ParseError("lp: missing Minimize section");

  Model m;
  std::unordered_map<std::string, int> index;
  for (const std::string& name : binary_names) {
    if (!index.emplace(name, static_cast<int>(m.vars.size())).second)
      throw ParseError("lp: duplicate variable " + name);
    m.vars.push_back({name, 0.0});
  }
  auto var_of = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw ParseError("lp: variable not declared binary: " + name);
    return it->second;
  };
  // token stream -> terms; returns the index where a sense token appears (or n).
  auto parse_terms = [&](const std::vector<std::string>& toks, std::size_t from,
                         std::vector<RowTerm>& terms) {
    double sign = 1.0;
    bool have_coeff = false;
    double coeff = 1.0;
    std::size_t i = from;
    for (; i < toks.size(); ++i) {
      const std::string& t = toks[i];
      if (t == "=" || t == "<=" || t == ">=" || t == "<" || t == ">") break;
      if (t == "+") { sign = 1.0; continue; }
      if (t == "-") { sign = -1.0; continue; }
      char* end = nullptr;
      const double v = std::strtod(t.c_str(), &end);
      if (end && *end == '\0') {
        coeff = v;
        have_coeff = true;
        continue;
      }
      terms.push_back({var_of(t), sign * (have_coeff ? coeff : 1.0)});
      sign = 1.0;
      coeff = 1.0;
      have_coeff = false;
    }
    return i;
  };

  std::vector<RowTerm> obj;
  parse_terms(obj_tokens, 0, obj);
  for (const RowTerm& t : obj) m.vars[t.var].objective += t.coeff;

  for (const auto& toks : row_tokens) {
    Row row;
    row.name = toks[0];
    const std::size_t at = parse_terms(toks, 1, row.terms);
    if (at >= toks.size()) throw ParseError("lp: row " + row.name + " has no sense token");
    const std::string& s = toks[at];
    row.sense = s == "=" ? RowSense::Eq : (s[0] == '<' ? RowSense::Le : RowSense::Ge);
    if (at + 1 >= toks.size()) throw ParseError("lp: row " + row.name + " has no right-hand side");
    row.rhs = std::stod(toks[at + 1]);
    m.rows.push_back(std::move(row));
  }
  return m;
}

// Exact structural comparison (names, order, senses, coefficients).  On
// mismatch, *diff describes the first difference found.
inline bool models_structurally_equal(const Model& a, const Model& b, std::string* diff = nullptr) {
  auto fail = [&](const std::string& why) {
    if (diff) *diff = why;
    return false;
  };
  if (a.vars.size() != b.vars.size())
    return fail("variable counts differ: " + std::to_string(a.vars.size()) + " vs " +
                std::to_string(b.vars.size()));
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    if (a.vars[i].name != b.vars[i].name)
      return fail("variable " + std::to_string(i) + " name: " + a.vars[i].name + " vs " +
                  b.vars[i].name);
    if (a.vars[i].objective != b.vars[i].objective)
      return fail("objective coefficient differs on " + a.vars[i].name);
  }
  if (a.rows.size() != b.rows.size())
    return fail("row counts differ: " + std::to_string(a.rows.size()) + " vs " +
                std::to_string(b.rows.size()));
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const Row& ra = a.rows[i];
    const Row& rb = b.rows[i];
    if (ra.name != rb.name) return fail("row " + std::to_string(i) + " name: " + ra.name + " vs " + rb.name);
    if (ra.sense != rb.sense || ra.rhs != rb.rhs) return fail("row " + ra.name + " sense/rhs differ");
    if (ra.terms.size() != rb.terms.size()) return fail("row " + ra.name + " term counts differ");
    for (std::size_t j = 0; j < ra.terms.size(); ++j)
      if (ra.terms[j].var != rb.terms[j].var || ra.terms[j].coeff != rb.terms[j].coeff)
        return fail("row " + ra.name + " term " + std::to_string(j) + " differs");
  }
  return true;
}

}  // namespace eonplan
