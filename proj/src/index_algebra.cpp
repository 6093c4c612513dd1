#include "bcalc/index_algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bcalc {

IndexEntry::IndexEntry(Exponent z_, int p_) : z(std::move(z_)), p(p_) {
  if (p < 0) throw std::invalid_argument("log power must be non-negative");
}

bool IndexEntry::implied_by(const IndexEntry& other) const {
  return p <= other.p && shifts_to(other.z, z);
}

namespace {

EntryList reduce(EntryList raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  EntryList out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    bool implied = false;
    for (std::size_t j = 0; j < raw.size() && !implied; ++j) {
      implied = i != j && raw[i].implied_by(raw[j]);
    }
    if (!implied) out.push_back(raw[i]);
  }
  return out;
}

}  // namespace

IndexSet IndexSet::complete(const EntryList& raw) { return IndexSet(reduce(raw)); }

IndexSet IndexSet::smooth() { return single(Exponent(0), 0); }

IndexSet IndexSet::single(Exponent z, int p) { return IndexSet({IndexEntry(std::move(z), p)}); }

bool IndexSet::contains(const IndexEntry& e) const {
  return std::any_of(generators_.begin(), generators_.end(),
                     [&](const IndexEntry& g) { return e.implied_by(g); });
}

double IndexSet::inf_re() const {
  auto r = inf_re_exact();
  return r ? to_double(*r) : std::numeric_limits<double>::infinity();
}

std::optional<Rational> IndexSet::inf_re_exact() const {
  if (generators_.empty()) return std::nullopt;
  // Sorted by Re first.
  return generators_.front().z.re;
}

EntryList IndexSet::truncate(const Rational& bound) const {
  EntryList out;
  for (const auto& g : generators_) {
    for (Rational re = g.z.re; re <= bound; re += 1) {
      for (int p = 0; p <= g.p; ++p) out.emplace_back(Exponent(re, g.z.im), p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IndexSet IndexSet::divide_exponents(int e) const {
  if (e <= 0) throw std::invalid_argument("exponent divisor must be positive");
  EntryList raw;
  const Rational inv(1, e);
  for (const auto& g : generators_) {
    // (z0 + k)/e for k = 0..e-1 generate {(z0 + k)/e : k >= 0} under unit shifts.
    for (int k = 0; k < e; ++k) {
      raw.emplace_back(Exponent((g.z.re + k) * inv, g.z.im * inv), g.p);
    }
  }
  return complete(raw);
}

IndexSet IndexSet::shift(const Exponent& by) const {
  EntryList raw;
  raw.reserve(generators_.size());
  for (const auto& g : generators_) raw.emplace_back(g.z + by, g.p);
  return complete(raw);
}

IndexSet set_union(const IndexSet& e, const IndexSet& f) {
  EntryList raw = e.generators();
  raw.insert(raw.end(), f.generators().begin(), f.generators().end());
  return IndexSet::complete(raw);
}

IndexSet extended_union(const IndexSet& e, const IndexSet& f) {
  EntryList raw = e.generators();
  raw.insert(raw.end(), f.generators().begin(), f.generators().end());
  // Two generator chains meet iff their exponents differ by an integer; they
  // share every z from the larger starting point on.
  for (const auto& a : e.generators()) {
    for (const auto& b : f.generators()) {
      if (a.z.im != b.z.im || !is_integer(a.z.re - b.z.re)) continue;
      const Exponent& start = a.z.re >= b.z.re ? a.z : b.z;
      raw.emplace_back(start, a.p + b.p + 1);
    }
  }
  return IndexSet::complete(raw);
}

IndexSet set_sum(const IndexSet& e, const IndexSet& f) {
  EntryList raw;
  for (const auto& a : e.generators()) {
    for (const auto& b : f.generators()) raw.emplace_back(a.z + b.z, a.p + b.p);
  }
  return IndexSet::complete(raw);
}

EntryList negate(const IndexSet& e) {
  EntryList out;
  for (const auto& g : e.generators()) out.emplace_back(-g.z, g.p);
  std::sort(out.begin(), out.end());
  return out;
}

bool equal_by_truncation(const IndexSet& a, const IndexSet& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  Rational bound = a.generators().front().z.re;
  for (const auto* s : {&a, &b}) {
    for (const auto& g : s->generators()) bound = std::max(bound, g.z.re);
  }
  bound += 1;
  return a.truncate(bound) == b.truncate(bound);
}

IndexFamily shift_family(const IndexFamily& family, const Exponent& by) {
  IndexFamily out;
  for (const auto& [name, set] : family) out.emplace(name, set.shift(by));
  return out;
}

std::string to_string(const IndexEntry& e) {
  return "(" + format_complex(e.z) + "," + std::to_string(e.p) + ")";
}

std::string to_string(const IndexSet& e) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < e.generators().size(); ++i) {
    if (i) os << ",";
    os << to_string(e.generators()[i]);
  }
  os << "}";
  return os.str();
}

}  // namespace bcalc
