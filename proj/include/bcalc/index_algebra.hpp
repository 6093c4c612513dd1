#pragma once

#include "bcalc/exact.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bcalc {

/// A pair (z, p) standing for the term x^z log^p x.
struct IndexEntry {
  Exponent z;
  int p = 0;

  IndexEntry() = default;
  IndexEntry(Exponent z_, int p_);

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
  /// Output order: (Re z, Im z, p).
  friend std::strong_ordering operator<=>(const IndexEntry& a, const IndexEntry& b) {
    if (auto c = a.z <=> b.z; c != 0) return c;
    return a.p <=> b.p;
  }

  /// (z, p) implies this entry if z - other.z is a non-negative integer and p <= other.p.
  bool implied_by(const IndexEntry& other) const;
};

using EntryList = std::vector<IndexEntry>;

/// Closed, finitely generated index set. Membership: (z, p) belongs iff some
/// generator (z0, p0) has z - z0 in N_0 and p <= p0. Generators are kept
/// reduced and sorted, so the representation is canonical and operator==
/// is set equality.
class IndexSet {
 public:
  IndexSet() = default;

  /// Smallest closed set containing the given entries.
  static IndexSet complete(const EntryList& raw);
  /// The set 0 = {(n, 0) : n in N_0} of smooth functions.
  static IndexSet smooth();
  static IndexSet single(Exponent z, int p = 0);

  const EntryList& generators() const { return generators_; }
  bool empty() const { return generators_.empty(); }
  bool contains(const IndexEntry& e) const;

  /// inf Re z; +infinity for the empty set.
  double inf_re() const;
  std::optional<Rational> inf_re_exact() const;

  /// All members with Re z <= bound, sorted by (Re, Im, p).
  EntryList truncate(const Rational& bound) const;

  /// Generators with z scaled by 1/e, re-completed. Models f^* of a bdf that
  /// vanishes to order e.
  IndexSet divide_exponents(int e) const;
  IndexSet shift(const Exponent& by) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  explicit IndexSet(EntryList reduced) : generators_(std::move(reduced)) {}
  EntryList generators_;
};

IndexSet set_union(const IndexSet& e, const IndexSet& f);
/// E ∪ F together with (z, p' + p'' + 1) whenever (z, p') ∈ E and (z, p'') ∈ F.
IndexSet extended_union(const IndexSet& e, const IndexSet& f);
/// {(z + w, k + l)} over members of both sets.
IndexSet set_sum(const IndexSet& e, const IndexSet& f);
/// Negated generators; the result is not closed and is returned raw.
EntryList negate(const IndexSet& e);

/// Decides equality by comparing truncations at Re z <= max generator Re + 1.
bool equal_by_truncation(const IndexSet& a, const IndexSet& b);

/// Assignment of an index set to each boundary hypersurface, keyed by name.
using IndexFamily = std::map<std::string, IndexSet>;

IndexFamily shift_family(const IndexFamily& family, const Exponent& by);

std::string to_string(const IndexEntry& e);
std::string to_string(const IndexSet& e);

}  // namespace bcalc
