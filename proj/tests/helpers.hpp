#pragma once

#include "bcalc/index_algebra.hpp"

#include <initializer_list>
#include <string>
#include <utility>

namespace test {

inline bcalc::Rational q(const std::string& s) { return bcalc::parse_rational(s); }

/// Completed set from (re, p) pairs with rational real exponents given as strings.
inline bcalc::IndexSet set(std::initializer_list<std::pair<const char*, int>> entries) {
  bcalc::EntryList raw;
  for (const auto& [re, p] : entries) raw.emplace_back(bcalc::Exponent(q(re)), p);
  return bcalc::IndexSet::complete(raw);
}

inline bcalc::IndexEntry entry(const char* re, int p) { return {bcalc::Exponent(q(re)), p}; }

}  // namespace test
