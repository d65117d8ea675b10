#pragma once

// Line-oriented rule files:
//
//   line  := ws? (comment | rule)? ws?
//   comment := '#' any*
//   rule  := attrs '->' attrs
//   attrs := (token ws)*          token := [A-Za-z0-9_]+
//
// Attributes get bit positions in order of first appearance.

#include "pentail/attr_set.hpp"
#include "pentail/errors.hpp"
#include "pentail/implication.hpp"
#include "pentail/rational.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

namespace pentail {

namespace detail {

inline bool is_token_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Whitespace-separated attribute tokens; repeated tokens collapse.
inline AttrSet parse_attrs(std::string_view text, AttributeUniverse& universe, std::size_t line = 1) {
  AttrSet out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (detail::is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && detail::is_token_char(text[j])) ++j;
    if (j == i) throw ParseError(line, std::string("unexpected character '") + text[i] + "'");
    if (j < text.size() && !detail::is_space(text[j]))
      throw ParseError(line, std::string("unexpected character '") + text[j] + "'");
    out |= AttrSet::singleton(universe.intern(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

inline PartialImplication parse_implication(std::string_view text, AttributeUniverse& universe,
                                            std::size_t line = 1) {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw ParseError(line, "missing '->'");
  if (text.find("->", arrow + 2) != std::string_view::npos) throw ParseError(line, "more than one '->'");
  PartialImplication imp;
  imp.antecedent = parse_attrs(text.substr(0, arrow), universe, line);
  imp.consequent = parse_attrs(text.substr(arrow + 2), universe, line);
  return imp;
}

/// Parses a rule file, extending `universe` with any new attributes.
inline ImplicationSet parse_rules(std::string_view text, AttributeUniverse universe = {}) {
  std::vector<PartialImplication> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = detail::trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') rules.push_back(parse_implication(line, universe, line_no));
    start = end + 1;
  }
  return ImplicationSet(std::move(universe), std::move(rules));
}

/// One rule per line, tokens separated by single spaces.
inline std::string format_rules(const ImplicationSet& set) {
  std::string out;
  for (const auto& r : set.rules) out += set.format(r) + "\n";
  return out;
}

/// "p/q" or a decimal literal, within [0,1].
inline Rational parse_gamma(std::string_view token) {
  auto q = parse_rational(token);
  if (!q) throw UsageError("cannot parse confidence '" + std::string(token) + "'");
  if (*q < 0 || *q > 1) throw UsageError("confidence '" + std::string(token) + "' is outside [0,1]");
  return *q;
}

}  // namespace pentail
