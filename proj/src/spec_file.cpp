#include "lsa/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "lsa/error.hpp"

namespace lsa {
namespace {

struct Value {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Section {
  std::string kind;
  std::size_t line = 0;
  std::map<std::string, Value> keys;
};

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::size_t skip_blanks(std::string_view s, std::size_t i) {
  while (i < s.size() && blank(s[i])) ++i;
  return i;
}

std::size_t trim_end(std::string_view s, std::size_t end) {
  while (end > 0 && blank(s[end - 1])) --end;
  return end;
}

RealExpr expression(const Value& v) {
  try {
    return RealExpr::parse(v.text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), v.line, v.column + e.column() - 1);
  }
}

Rational rational(const Value& v) {
  const auto r = is_rational(expression(v));
  if (!r.rational) throw ParseError("expected a rational number", v.line, v.column);
  return *r.value;
}

const std::map<std::string, std::vector<std::string>> kAllowed = {
    {"", {"name", "base_ratio", "length"}},
    {"term", {"exponent", "multiplicity"}},
    {"ratio", {"value", "count"}},
    {"gap", {"value"}},
};

}  // namespace

PolynomialSpec parse_polynomial_spec(std::string_view text) {
  std::vector<Section> sections{{"", 1, {}}};
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t i = skip_blanks(line, 0);
    const std::size_t stop = trim_end(line, line.size());
    start = end + 1;
    if (i >= stop) continue;
    if (line[i] == '[') {
      if (line[stop - 1] != ']') throw ParseError("expected ']'", line_no, stop + 1);
      std::string kind(line.substr(i + 1, stop - i - 2));
      if (kind != "term" && kind != "ratio" && kind != "gap") {
        throw ParseError("unknown section '" + kind + "'", line_no, i + 2);
      }
      sections.push_back({kind, line_no, {}});
      continue;
    }
    const std::size_t eq = line.find('=', i);
    if (eq == std::string_view::npos || eq >= stop) throw ParseError("expected 'key = value'", line_no, i + 1);
    const std::string key(line.substr(i, trim_end(line, eq) - i));
    Section& s = sections.back();
    const auto& allowed = kAllowed.at(s.kind);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError("unknown key '" + key + "'" + (s.kind.empty() ? "" : " in [" + s.kind + "]"), line_no, i + 1);
    }
    if (s.keys.count(key)) throw ParseError("duplicate key '" + key + "'", line_no, i + 1);
    const std::size_t v = skip_blanks(line, eq + 1);
    if (v >= stop) throw ParseError("missing value", line_no, eq + 2);
    s.keys[key] = {std::string(line.substr(v, stop - v)), line_no, v + 1};
  }

  const Section& top = sections.front();
  std::string name = top.keys.count("name") ? top.keys.at("name").text : "";
  std::vector<RealExpr> exponents, multiplicities;
  std::vector<ScaledCopy> ratios;
  std::vector<Rational> gaps;
  for (std::size_t k = 1; k < sections.size(); ++k) {
    const Section& s = sections[k];
    auto require = [&](const std::string& key) -> const Value& {
      const auto it = s.keys.find(key);
      if (it == s.keys.end()) throw ParseError("[" + s.kind + "] needs '" + key + "'", s.line, 1);
      return it->second;
    };
    if (s.kind == "term") {
      exponents.push_back(expression(require("exponent")));
      multiplicities.push_back(s.keys.count("multiplicity") ? expression(s.keys.at("multiplicity"))
                                                            : RealExpr::rational(1));
    } else if (s.kind == "ratio") {
      ScaledCopy c{rational(require("value")), 1};
      if (s.keys.count("count")) {
        const Value& v = s.keys.at("count");
        const Rational count = rational(v);
        if (count.get_den() != 1 || count < 1) throw ParseError("count must be a positive integer", v.line, v.column);
        c.multiplicity = count.get_num();
      }
      ratios.push_back(c);
    } else {
      gaps.push_back(rational(require("value")));
    }
  }

  const bool terms = !exponents.empty();
  const bool string = !ratios.empty() || !gaps.empty();
  if (terms && string) {
    const bool first_is_term = std::find_if(sections.begin() + 1, sections.end(), [](const auto& s) {
                                 return !s.kind.empty();
                               })->kind == "term";
    for (const auto& s : sections) {
      if (!s.kind.empty() && (s.kind == "term") != first_is_term) {
        throw ParseError("mix of [term] and [ratio]/[gap] sections", s.line, 1);
      }
    }
  }
  if (!terms && !string) throw ParseError("no [term] or [ratio] sections", line_no, 1);
  if (terms) {
    if (!top.keys.count("base_ratio")) throw ParseError("missing 'base_ratio'", 1, 1);
    if (top.keys.count("length")) {
      const Value& v = top.keys.at("length");
      throw ParseError("'length' only applies to [ratio]/[gap] descriptions", v.line, v.column);
    }
    DirichletPolynomial f(expression(top.keys.at("base_ratio")), std::move(exponents), std::move(multiplicities));
    return {name, std::move(f), std::nullopt};
  }
  if (top.keys.count("base_ratio")) {
    const Value& v = top.keys.at("base_ratio");
    throw ParseError("'base_ratio' only applies to [term] descriptions", v.line, v.column);
  }
  const Rational length = top.keys.count("length") ? rational(top.keys.at("length")) : Rational(1);
  GeometricZeta zeta = from_self_similar_string(ratios, gaps, length);
  DirichletPolynomial f = zeta.denominator;
  return {name, std::move(f), std::move(zeta)};
}

PolynomialSpec load_polynomial_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_polynomial_spec(buffer.str());
}

}  // namespace lsa
