#include "bcalc/transport.hpp"

#include "bcalc/errors.hpp"

#include <stdexcept>

namespace bcalc {

namespace {

void require_family_on(const FaceLattice& z, const IndexFamily& family, const char* what) {
  if (family.size() != z.bhs_count()) {
    throw std::invalid_argument(std::string(what) + ": family must assign a set to every bhs");
  }
  for (const auto& name : z.bhs_names()) {
    if (!family.count(name)) {
      throw std::invalid_argument(std::string(what) + ": no index set for bhs '" + name + "'");
    }
  }
}

/// Half-line push-forward for one exponent column (source bhs order).
HalflineReport push_column(const FaceLattice& source, const std::vector<int>& column,
                           const IndexFamily& family) {
  HalflineReport report;
  for (const auto& face : source.proper_faces()) {
    FaceContribution row{face, {}, IndexSet{}};
    for (const auto& g : face) {
      const int e = column[source.bhs_index(g)];
      if (e == 0) continue;
      row.contributors.push_back(g);
      row.set = extended_union(row.set, family.at(g).divide_exponents(e));
    }
    report.result = set_union(report.result, row.set);
    report.face_contributions.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < source.bhs_count(); ++i) {
    const auto& g = source.bhs_names()[i];
    if (column[i] == 0 && family.at(g).inf_re() <= 0) report.violating_bhs.push_back(g);
  }
  report.integrability_ok = report.violating_bhs.empty();
  return report;
}

}  // namespace

IndexFamily pull_back_family(const BMapDescriptor& f, const IndexFamily& family) {
  require_family_on(f.target(), family, "pull_back_family");
  IndexFamily out;
  const auto& targets = f.target().bhs_names();
  for (std::size_t i = 0; i < f.source().bhs_count(); ++i) {
    // Running sum over the bhs H with e(G, H) != 0.
    IndexSet acc = IndexSet::smooth();
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const int e = f.exponents()[i][j];
      if (e == 0) continue;
      EntryList scaled;
      for (const auto& g : family.at(targets[j]).generators()) {
        scaled.emplace_back(Exponent(g.z.re * e, g.z.im * e), g.p);
      }
      acc = set_sum(acc, IndexSet::complete(scaled));
    }
    out.emplace(f.source().bhs_names()[i], std::move(acc));
  }
  return out;
}

HalflineReport push_forward_halfline(const BMapDescriptor& f, const IndexFamily& family,
                                     const PushForwardOptions& options) {
  if (f.target().bhs_count() != 1 || f.target().dimension() != 1) {
    throw std::invalid_argument("push_forward_halfline: target must be the half-line");
  }
  if (!f.fibration_on_faces()) {
    throw HypothesisViolated("push_forward_halfline: map is not asserted to fibre over the interior");
  }
  if (!options.proper_on_support) {
    throw HypothesisViolated("push_forward_halfline: map must be proper on the support");
  }
  require_family_on(f.source(), family, "push_forward_halfline");
  return push_column(f.source(), f.column(f.target().bhs_names().front()), family);
}

TransportReport push_forward_family(const BMapDescriptor& f, const IndexFamily& family,
                                    const PushForwardOptions& options) {
  const auto fib = check_b_fibration(f);
  if (!fib.is_b_fibration()) {
    std::string why = fib.codim_ok ? "fibration over open faces not asserted"
                                   : "codimension increases at";
    for (const auto& g : fib.violating_faces) why += " " + g;
    throw HypothesisViolated("push_forward_family: not a b-fibration (" + why + ")");
  }
  if (!options.proper_on_support) {
    throw HypothesisViolated("push_forward_family: map must be proper on the support");
  }
  require_family_on(f.source(), family, "push_forward_family");

  TransportReport report;
  for (const auto& h : f.target().bhs_names()) {
    auto column = push_column(f.source(), f.column(h), family);
    report.result.emplace(h, std::move(column.result));
    report.face_contributions.emplace(h, std::move(column.face_contributions));
  }
  // Only bhs mapped into the interior need integrable data.
  for (std::size_t i = 0; i < f.source().bhs_count(); ++i) {
    bool interior = true;
    for (int v : f.exponents()[i]) interior = interior && v == 0;
    const auto& g = f.source().bhs_names()[i];
    if (interior && family.at(g).inf_re() <= 0) report.violating_bhs.push_back(g);
  }
  report.integrability_ok = report.violating_bhs.empty();
  return report;
}

IndexFamily b_density_shift(const IndexFamily& family, DensityDirection direction) {
  return shift_family(family, Exponent(direction == DensityDirection::to_b ? 1 : -1));
}

}  // namespace bcalc
