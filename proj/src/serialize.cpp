#include "bcalc/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace bcalc {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "' in " + j.dump());
  }
  return j.at(key);
}

Json face_json(const Face& f) {
  Json out = Json::array();
  for (const auto& n : f) out.push_back(n);
  return out;
}

Face face_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("a face is a list of bhs names");
  Face f;
  for (const auto& n : j) f.insert(n.get<std::string>());
  return f;
}

Json complex_value(std::complex<double> v) { return {{"re", round12(v.real())}, {"im", round12(v.imag())}}; }

}  // namespace

double round12(double v) {
  if (!std::isfinite(v) || v == 0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json to_json(const ExactComplex& z) { return {{"re", format_rational(z.re)}, {"im", format_rational(z.im)}}; }

ExactComplex complex_from_json(const Json& j) {
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_number()) return ExactComplex(rational_from_json(j));
  if (j.is_object()) {
    return {rational_from_json(field(j, "re")), j.contains("im") ? rational_from_json(j.at("im")) : Rational(0)};
  }
  throw std::invalid_argument("expected a complex number, got " + j.dump());
}

Json to_json(const IndexEntry& e) {
  return {{"re", format_rational(e.z.re)}, {"im", format_rational(e.z.im)}, {"p", e.p}};
}

Json to_json(const EntryList& entries) {
  Json out = Json::array();
  for (const auto& e : entries) out.push_back(to_json(e));
  return out;
}

Json to_json(const IndexSet& e) { return {{"generators", to_json(e.generators())}}; }

IndexSet index_set_from_json(const Json& j) {
  const Json& gens = j.is_array() ? j : field(j, "generators");
  if (!gens.is_array()) throw std::invalid_argument("generators must be a list");
  EntryList raw;
  for (const auto& g : gens) {
    const Exponent z = g.contains("z") ? complex_from_json(g.at("z"))
                                       : ExactComplex(rational_from_json(field(g, "re")),
                                                      g.contains("im") ? rational_from_json(g.at("im")) : Rational(0));
    const Json& p = field(g, "p");
    if (!p.is_number_integer()) throw std::invalid_argument("log power must be an integer");
    raw.emplace_back(z, p.get<int>());
  }
  return IndexSet::complete(raw);
}

Json to_json(const IndexFamily& f) {
  Json out = Json::object();
  for (const auto& [name, set] : f) out[name] = to_json(set);
  return out;
}

IndexFamily family_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("an index family maps bhs names to index sets");
  IndexFamily out;
  for (const auto& [name, set] : j.items()) out.emplace(name, index_set_from_json(set));
  return out;
}

Json to_json(const FaceLattice& z) {
  Json faces = Json::array();
  for (const auto& f : z.sorted_faces()) faces.push_back(face_json(f));
  Json out{{"dim", z.dimension()}, {"bhs", z.bhs_names()}, {"faces", faces}};
  if (!z.annotations().empty()) {
    Json ann = Json::array();
    for (const auto& a : z.annotations()) ann.push_back({{"name", a.name}, {"meets", face_json(a.meets)}});
    out["annotations"] = ann;
  }
  return out;
}

FaceLattice lattice_from_json(const Json& j) {
  std::set<Face> faces;
  for (const auto& f : field(j, "faces")) faces.insert(face_from_json(f));
  std::vector<InteriorSubmanifold> ann;
  if (j.contains("annotations")) {
    for (const auto& a : j.at("annotations")) {
      ann.push_back({field(a, "name").get<std::string>(), face_from_json(field(a, "meets"))});
    }
  }
  return FaceLattice(field(j, "dim").get<int>(), field(j, "bhs").get<std::vector<std::string>>(), std::move(faces),
                     std::move(ann));
}

Json to_json(const BMapDescriptor& f) {
  return {{"source", to_json(f.source())},
          {"target", to_json(f.target())},
          {"e", f.exponents()},
          {"fibration_faces", f.fibration_on_faces()}};
}

BMapDescriptor bmap_from_json(const Json& j) {
  return BMapDescriptor(lattice_from_json(field(j, "source")), lattice_from_json(field(j, "target")),
                        field(j, "e").get<ExponentMatrix>(),
                        j.contains("fibration_faces") && j.at("fibration_faces").get<bool>());
}

Json to_json(const BlowupRecord& r) {
  return {{"center", face_json(r.center)},
          {"front_face", r.front_face_name},
          {"result", to_json(r.result)},
          {"blowdown_e", r.blowdown.exponents()}};
}

Json to_json(const BDiffOp& p) {
  Json coeffs = Json::array();
  for (const auto& s : p.coeffs()) {
    Json series = Json::array();
    for (const auto& c : s) series.push_back(c.is_real() ? Json(format_rational(c.re)) : to_json(c));
    coeffs.push_back(series);
  }
  return {{"coeffs", coeffs}, {"truncation", p.truncation_degree()}};
}

BDiffOp operator_from_json(const Json& j) {
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw std::invalid_argument("coeffs must be a list of series");
  std::vector<PowerSeries> series;
  std::size_t longest = 1;
  for (const auto& s : coeffs) {
    PowerSeries ps;
    if (s.is_array()) {
      for (const auto& c : s) ps.push_back(complex_from_json(c));
    } else {
      ps.push_back(complex_from_json(s));
    }
    longest = std::max(longest, ps.size());
    series.push_back(std::move(ps));
  }
  const int truncation = j.contains("truncation") ? j.at("truncation").get<int>() : static_cast<int>(longest) - 1;
  return BDiffOp(std::move(series), truncation);
}

Json to_json(const FullCalcDescriptor& d) {
  return {{"order", round12(d.order)}, {"E_lb", to_json(d.E_lb)}, {"E_rb", to_json(d.E_rb)}};
}

FullCalcDescriptor descriptor_from_json(const Json& j) {
  return {field(j, "order").get<double>(), index_set_from_json(field(j, "E_lb")),
          index_set_from_json(field(j, "E_rb"))};
}

Json to_json(const IndicialData& d) {
  Json poly = Json::array();
  for (const auto& c : d.polynomial.coeffs()) poly.push_back(to_json(c));
  Json roots = Json::array();
  for (const auto& r : d.roots) {
    Json jr{{"value", complex_value(r.value)}, {"order", r.order}, {"exact", r.exact.has_value()}};
    jr["z"] = to_json(r.exponent());
    roots.push_back(jr);
  }
  return {{"polynomial", poly}, {"roots", roots}, {"spec_b", to_json(d.spec_b)}};
}

Json to_json(const ModelKernel& k) {
  Json terms = Json::array();
  for (const auto& t : k.terms) {
    Json jt{{"z", to_json(t.z)}, {"p", t.p}, {"side", t.side == KernelSide::rb ? "rb" : "lb"}};
    jt["coeff"] = t.exact_coeff ? to_json(*t.exact_coeff) : complex_value(t.coeff);
    jt["exact"] = t.exact_coeff.has_value();
    terms.push_back(jt);
  }
  return {{"terms", terms}};
}

namespace {

Json contributions_json(const std::vector<FaceContribution>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back({{"face", face_json(row.face)}, {"contributors", row.contributors}, {"set", to_json(row.set)}});
  }
  return out;
}

}  // namespace

Json to_json(const HalflineReport& r) {
  return {{"result", to_json(r.result)},
          {"integrability_ok", r.integrability_ok},
          {"violating_bhs", r.violating_bhs},
          {"faces", contributions_json(r.face_contributions)}};
}

Json to_json(const TransportReport& r) {
  Json faces = Json::object();
  for (const auto& [h, rows] : r.face_contributions) faces[h] = contributions_json(rows);
  return {{"result", to_json(r.result)},
          {"integrability_ok", r.integrability_ok},
          {"violating_bhs", r.violating_bhs},
          {"faces", faces}};
}

Json to_json(const BFibrationReport& r) {
  return {{"b_fibration", r.is_b_fibration()},
          {"codim_ok", r.codim_ok},
          {"fibration_flag", r.fibration_flag},
          {"violators", r.violating_faces}};
}

Json to_json(const ParametrixReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back({{"step", s.label}, {"descriptor", to_json(s.descriptor)}});
  return {{"parametrix", to_json(r.parametrix)}, {"remainder", to_json(r.remainder)}, {"steps", steps}};
}

Json to_json(const HsReport& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.eps.size(); ++i) rows.push_back({{"eps", r.eps[i]}, {"norm", round12(r.norms[i])}});
  return {{"norms", rows},
          {"slope", round12(r.slope)},
          {"restriction_integral", round12(r.restriction_integral)},
          {"finite", r.finite}};
}

Json to_json(const ApplyCheckReport& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.x.size(); ++i) rows.push_back({{"x", r.x[i]}, {"residual", round12(r.residual[i])}});
  return {{"max_residual", round12(r.max_residual)}, {"worst_x", r.worst_x}, {"points", rows}};
}

Json to_json(const PhgExpansion& fit, const PredictionCheck* check) {
  Json terms = Json::array();
  for (const auto& t : fit.terms) {
    terms.push_back({{"z", format_rational(t.z)},
                     {"p", t.p},
                     {"coeff", round12(t.coeff)},
                     {"coeff_log_x", round12((t.p % 2 == 0 ? 1 : -1) * t.coeff)}});
  }
  Json out{{"terms", terms},
           {"basis", "x^z log^p(1/x); coeff_log_x is the coefficient for x^z log^p x"},
           {"residual", round12(fit.fit_residual)},
           {"subgrid_residual", round12(fit.subgrid_residual)},
           {"residual_order", std::isfinite(fit.residual_order) ? Json(round12(fit.residual_order)) : Json(nullptr)},
           {"grid", fit.grid_meta},
           {"warnings", fit.warnings}};
  if (check) {
    out["prediction"] = {{"contained", check->contained},
                         {"missing", to_json(check->missing)},
                         {"extra", to_json(check->extra)}};
  }
  return out;
}

}  // namespace bcalc
