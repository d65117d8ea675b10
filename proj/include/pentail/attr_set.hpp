#pragma once

#include "pentail/errors.hpp"

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pentail {

/// Hard ceiling on the attribute universe; enumeration work is 2^n.
inline constexpr std::size_t kMaxAttributes = 24;
/// Default ceiling on attributes occurring in a single query.
inline constexpr std::size_t kDefaultAttributeCap = 20;

/// Subset of {0, ..., n-1} stored as a bitmask.
class AttrSet {
 public:
  using Bits = std::uint32_t;

  constexpr AttrSet() = default;
  constexpr explicit AttrSet(Bits bits) : bits_(bits) {}

  static constexpr AttrSet singleton(std::size_t index) { return AttrSet(Bits{1} << index); }
  /// {0, ..., n-1}
  static constexpr AttrSet full(std::size_t n) {
    return AttrSet(n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1);
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1U; }
  constexpr bool subset_of(AttrSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool superset_of(AttrSet other) const { return other.subset_of(*this); }

  constexpr AttrSet operator|(AttrSet o) const { return AttrSet(bits_ | o.bits_); }
  constexpr AttrSet operator&(AttrSet o) const { return AttrSet(bits_ & o.bits_); }
  constexpr AttrSet operator-(AttrSet o) const { return AttrSet(bits_ & ~o.bits_); }
  constexpr AttrSet& operator|=(AttrSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr AttrSet& operator&=(AttrSet o) {
    bits_ &= o.bits_;
    return *this;
  }

  /// Highest occupied position + 1 (0 for the empty set).
  constexpr std::size_t extent() const { return 32 - static_cast<std::size_t>(std::countl_zero(bits_)); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  constexpr auto operator<=>(const AttrSet&) const = default;

 private:
  Bits bits_ = 0;
};

/// Calls f(Z) for every subset Z of `mask`, starting from the empty set and
/// proceeding in increasing numeric order of the bitmask.
template <typename F>
void for_each_subset(AttrSet mask, F&& f) {
  const AttrSet::Bits m = mask.bits();
  AttrSet::Bits z = 0;
  while (true) {
    f(AttrSet(z));
    if (z == m) break;
    z = ((z | ~m) + 1) & m;
  }
}

/// Ordered list of attribute names; position i names bit i.
class AttributeUniverse {
 public:
  AttributeUniverse() = default;
  explicit AttributeUniverse(std::vector<std::string> names) {
    for (auto& n : names) add(n);
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> find(std::string_view token) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == token) return i;
    return std::nullopt;
  }

  /// Returns the index of `token`, appending it if new.
  std::size_t intern(std::string_view token) {
    if (auto i = find(token)) return *i;
    add(std::string(token));
    return names_.size() - 1;
  }

  AttrSet all() const { return AttrSet::full(names_.size()); }

  bool contains(AttrSet s) const { return s.subset_of(all()); }

  void require(AttrSet s) const {
    if (!contains(s)) throw ContractViolation("attribute set has bits outside the universe");
  }

  /// Attribute names of `s` joined by single spaces in universe order.
  std::string format(AttrSet s) const {
    std::string out;
    for (auto i : s.indices()) {
      if (!out.empty()) out.push_back(' ');
      out += names_.at(i);
    }
    return out;
  }

  bool operator==(const AttributeUniverse&) const = default;

 private:
  void add(std::string name) {
    if (name.empty()) throw ContractViolation("attribute names must be non-empty");
    for (char c : name)
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')
        throw ContractViolation("attribute names must not contain whitespace");
    if (find(name)) throw ContractViolation("duplicate attribute name '" + name + "'");
    if (names_.size() >= kMaxAttributes)
      throw ResourceError("more than " + std::to_string(kMaxAttributes) + " attributes");
    names_.push_back(std::move(name));
  }

  std::vector<std::string> names_;
};

}  // namespace pentail
