#include "bcalc/verify.hpp"

#include "bcalc/b_calculus.hpp"
#include "bcalc/bmaps.hpp"
#include "bcalc/corner_geometry.hpp"
#include "bcalc/examples.hpp"
#include "bcalc/phg_numeric.hpp"
#include "bcalc/transport.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace bcalc {

namespace {

using Details = std::vector<std::string>;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool note(Details& d, bool ok, const std::string& what) {
  d.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  return ok;
}

IndexSet smooth_with_logs(int max_log) {
  EntryList gens;
  gens.emplace_back(Exponent(0), max_log);
  return IndexSet::complete(gens);
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num_d(-40, 40);
  std::uniform_int_distribution<int> den_d(1, 12);
  return Rational(num_d(rng), den_d(rng));
}

// 1. The extended union of the smooth set with itself.
bool extended_union_law(Details& d) {
  const EntryList got = extended_union(IndexSet::smooth(), IndexSet::smooth()).truncate(10);
  EntryList want;
  for (int n = 0; n <= 10; ++n) {
    for (int p = 0; p <= 1; ++p) want.emplace_back(Exponent(n), p);
  }
  return note(d, got == want,
              "extunion(0,0) truncated at Re z <= 10 has " + std::to_string(got.size()) + " members, expected 22");
}

// 2. Push-forward from the double space to the half-line.
bool pushforward_symbolic(Details& d) {
  bool ok = true;
  const auto f = x2b_halfline_projection(true);
  for (const char* erb : {"1", "1/2", "3/4"}) {
    IndexFamily family{{"lb", IndexSet::smooth()},
                       {"ff", IndexSet::smooth()},
                       {"rb", IndexSet::single(parse_complex(erb))}};
    const auto report = push_forward_halfline(f, family);
    ok &= note(d, report.integrability_ok, std::string("E_rb = {(") + erb + ",0)}: integrability holds");
    ok &= note(d, report.result == smooth_with_logs(1), "result is N_0 x {0,1}: " + to_string(report.result));
    std::vector<Face> log_sources;
    for (const auto& row : report.face_contributions) {
      for (const auto& g : row.set.generators()) {
        if (g.p > 0) {
          log_sources.push_back(row.face);
          break;
        }
      }
    }
    ok &= note(d, log_sources == std::vector<Face>{Face{"ff", "lb"}},
               "only corner lb n ff contributes log terms (" + std::to_string(log_sources.size()) + " source)");
  }
  return ok;
}

// 3. sqrt(x^2 + y^2) pushed forward.
bool pushforward_sqrt(Details& d) {
  bool ok = true;
  const QuadratureSpec spec{1e-14, 1e-12, 20};
  const auto grid = GeometricGrid{0.2, 0.8, 60}.points();
  const Samples s = numeric_pushforward(examples::sqrt_distance(), spec, grid);
  ok &= note(d, s.all_ok(), "all quadratures converged");
  double worst = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    worst = std::max(worst, std::abs(s.values[i] - examples::sqrt_distance_pushforward(s.x[i])));
  }
  ok &= note(d, worst <= 1e-10, "closed form agrees to " + num(worst) + " (tol 1e-10)");

  const IndexSet candidate = smooth_with_logs(1);
  const PhgExpansion fine = fit_expansion(s, candidate, 7);
  const double c21 = fine.coeff_log_x(2, 1);
  ok &= note(d, std::abs(c21 + 0.5) <= 1e-6, "coefficient of x^2 log x = " + num(c21) + " (want -0.5 +- 1e-6)");
  const PhgExpansion coarse = fit_expansion(s, candidate, 3);
  ok &= note(d, coarse.residual_order >= 3.5 && coarse.residual_order <= 4.5,
             "truncation Re z <= 3 leaves a residual decaying like x^" + num(coarse.residual_order) + " (want 4)");
  ok &= note(d, compare_to_prediction(fine, candidate, 1e-6).contained, "fitted terms lie in N_0 x {0,1}");
  return ok;
}

// 4. Push-forward of y^{-1} v(x/y, y).
bool pushforward_hyperbola(Details& d) {
  bool ok = true;
  const QuadratureSpec spec{1e-14, 1e-12, 20};
  const Samples s = numeric_pushforward(examples::hyperbola_kernel(), spec, GeometricGrid{0.2, 0.8, 60}.points());
  ok &= note(d, s.all_ok(), "all quadratures converged");
  const PhgExpansion fit = fit_expansion(s, smooth_with_logs(1), 5);
  const double c01 = fit.coeff(0, 1);
  const double oracle = examples::hyperbola_v(0, 0);
  ok &= note(d, std::abs(c01 - oracle) <= 1e-5,
             "coefficient of log(1/x) = " + num(c01) + ", v(0,0) = " + num(oracle) + " (tol 1e-5); log x coefficient " +
                 num(fit.coeff_log_x(0, 1)));
  ok &= note(d, compare_to_prediction(fit, smooth_with_logs(1), 1e-6).contained, "fitted terms lie in N_0 x {0,1}");
  return ok;
}

// 5. Pull-back through the blow-down of the double space.
bool pullback_formula(Details& d) {
  std::mt19937 rng(20240531);
  const auto rec = double_b_space();
  int good = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    const IndexFamily family{{"Hx", IndexSet::single(Exponent(a))}, {"Hy", IndexSet::single(Exponent(b))}};
    const IndexFamily pulled = pull_back_family(rec.blowdown, family);
    // Projective charts: x = xi, y = xi eta (eta defines rb) and y = eta', x = eta' xi' (xi' defines lb).
    const Rational chart1_ff = a + b;
    const Rational chart1_rb = b;
    const Rational chart2_ff = b + a;
    const Rational chart2_lb = a;
    const bool match = chart1_ff == chart2_ff && pulled.at("ff") == IndexSet::single(Exponent(chart1_ff)) &&
                       pulled.at("rb") == IndexSet::single(Exponent(chart1_rb)) &&
                       pulled.at("lb") == IndexSet::single(Exponent(chart2_lb));
    if (match) ++good;
  }
  return note(d, good == 20, std::to_string(good) + "/20 random (a,b) match the chart monomials exactly");
}

// 6. b-fibration checker.
bool bfibration_checks(Details& d) {
  bool ok = true;
  const auto blowdown = double_b_space().blowdown;
  const auto r1 = check_b_fibration(blowdown);
  ok &= note(d, !r1.is_b_fibration() && r1.violating_faces == std::vector<std::string>{"ff"},
             "X2b blow-down is not a b-fibration, violator ff");
  const auto pi3 = lifted_projection(3);
  ok &= note(d, check_b_fibration(pi3).is_b_fibration(), "lifted projection 3 is a b-fibration");
  const std::map<std::string, std::string> table{{"ff2", "lb"}, {"bf1", "lb"}, {"ff1", "rb"}, {"bf2", "rb"},
                                                 {"fff", "ff"}, {"ff3", "ff"}, {"bf3", ""}};
  bool table_ok = true;
  for (const auto& [g, h] : table) {
    const Face image = induced_face_map(pi3, Face{g});
    table_ok &= h.empty() ? image.empty() : image == Face{h};
    for (const auto& t : pi3.target().bhs_names()) table_ok &= pi3.e(g, t) == (t == h ? 1 : 0);
  }
  ok &= note(d, table_ok, "bhs table: ff2, bf1 -> lb; ff1, bf2 -> rb; fff, ff3 -> ff; bf3 -> interior");
  const auto x3b = triple_b_space().first;
  ok &= note(d, x3b.bhs_count() == 7, "X3b has " + std::to_string(x3b.bhs_count()) + " bhs");
  return ok;
}

using Monomial = std::map<std::string, int>;

/// f^*(prod rho_H^{m_H}) by substituting the pulled-back bdfs.
Monomial substitute(const BMapDescriptor& f, const Monomial& m) {
  Monomial out;
  for (const auto& [h, power] : m) {
    for (const auto& g : f.source().bhs_names()) {
      const int e = f.e(g, h);
      if (e != 0) out[g] += e * power;
    }
  }
  return out;
}

// 7. Functoriality of exponent matrices.
bool functoriality(Details& d) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_int_distribution<int> entry(0, 3);
  auto random_map = [&](int k, int l) {
    ExponentMatrix m(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(l)));
    for (auto& row : m) {
      for (auto& v : row) v = entry(rng);
    }
    return BMapDescriptor(model_quadrant(k, k), model_quadrant(l, l), m, false);
  };
  int good = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int k = dim(rng);
    const int l = dim(rng);
    const int n = dim(rng);
    const auto f = random_map(k, l);
    const auto g = random_map(l, n);
    const auto fg = compose(f, g);
    bool match = true;
    for (const auto& h : g.target().bhs_names()) {
      const Monomial pulled = substitute(f, substitute(g, Monomial{{h, 1}}));
      for (const auto& s : f.source().bhs_names()) {
        const auto it = pulled.find(s);
        match &= fg.e(s, h) == (it == pulled.end() ? 0 : it->second);
      }
    }
    if (match) ++good;
  }
  bool ok = note(d, good == 50, std::to_string(good) + "/50 random compositions match monomial substitution");
  const auto beta2 = double_b_space().blowdown;
  const auto beta3 = triple_blowdown();
  for (int i = 1; i <= 3; ++i) {
    const auto left = compose(lifted_projection(i), beta2);
    const auto right = compose(beta3, quadrant_projection(i));
    ok &= note(d, left.exponents() == right.exponents(),
               "commuting square for lifted projection " + std::to_string(i));
  }
  return ok;
}

// 8. Spec_b.
bool spec_b(Details& d) {
  bool ok = true;
  for (const char* c : {"1", "3/2", "-2/7"}) {
    const Rational cr = parse_rational(c);
    const auto data = indicial(examples::constant_operator({cr, 1}));
    const std::string op = cr < 0 ? "x d/dx - " + format_rational(-cr) : "x d/dx + " + format_rational(cr);
    ok &= note(d, data.spec_b == EntryList{IndexEntry(Exponent(-cr), 0)} && data.roots.front().exact,
               op + " -> {(" + format_rational(-cr) + ",0)} exactly");
  }
  const auto cubic = indicial(examples::constant_operator({0, 0, 1, 1}));
  const EntryList want{IndexEntry(Exponent(-1), 0), IndexEntry(Exponent(0), 0), IndexEntry(Exponent(0), 1)};
  ok &= note(d, cubic.spec_b == want, "(x d/dx)^2 (x d/dx + 1) -> {(-1,0),(0,0),(0,1)}");

  // (z - 1/3)^3 (z + 2)^2
  Polynomial p = Polynomial::linear_factor(Exponent(Rational(1, 3)));
  p = p * p * p * Polynomial::linear_factor(Exponent(-2)) * Polynomial::linear_factor(Exponent(-2));
  const auto roots = find_roots(p);
  ok &= note(d,
             roots.size() == 2 && roots[0].exact && *roots[0].exact == Exponent(-2) && roots[0].order == 2 &&
                 roots[1].exact && *roots[1].exact == Exponent(Rational(1, 3)) && roots[1].order == 3,
             "(z-1/3)^3 (z+2)^2: exact roots with orders 3 and 2");

  // (z - 1)^2 - 2e-20: roots 1 +- 1.41e-10 are merged.
  const Rational delta(BigInt(2), boost::multiprecision::pow(BigInt(10), 20));
  const Polynomial perturbed({ExactComplex(1 - delta), -2, 1});
  const auto near = find_roots(perturbed);
  ok &= note(d, near.size() == 1 && near[0].order == 2 && std::abs(near[0].value - 1.0) < 1e-9,
             "perturbed double root clusters into one root of order 2 at tolerance 1e-9");
  return ok;
}

// 9. Model inverse.
bool model_inverse_checks(Details& d) {
  bool ok = true;
  for (const char* c : {"1", "1/2", "2"}) {
    const Rational cr = parse_rational(c);
    const BDiffOp p = examples::constant_operator({cr, 1});
    const auto data = indicial(p);
    const WeightParameter gamma{Rational(0)};
    const ModelKernel k = model_inverse(data, gamma);
    const bool shape = k.terms.size() == 1 && k.terms[0].side == KernelSide::rb && k.terms[0].p == 0 &&
                       k.terms[0].z == Exponent(cr) && k.terms[0].exact_coeff &&
                       *k.terms[0].exact_coeff == ExactComplex(1);
    ok &= note(d, shape, std::string("p = z + ") + c + ", gamma = 0: k(s) = s^" + c + " H(1-s) exactly");
    const auto report = apply_check(p, k, examples::test_bump(0.5, 2.0), {0.3, 0.55, 0.8, 1.0, 1.3, 1.7, 2.5});
    ok &= note(d, report.max_residual < 1e-6, std::string("apply_check residual for c = ") + c + ": " +
                                                  num(report.max_residual) + " (tol 1e-6)");
  }
  const Samples u = solve_model_ode(ExactComplex(1), {[](double) { return 1.0; }, 0.0, INFINITY},
                                    {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0});
  double worst = 0;
  for (double v : u.values) worst = std::max(worst, std::abs(v - 1.0));
  ok &= note(d, worst <= 1e-14, "solve_model_ode(c=1, v=1) = 1 within " + num(worst) + " (tol 1e-14)");
  return ok;
}

// 10. Composition with log generation.
bool composition_logs(Details& d) {
  bool ok = true;
  const Rational c(1);
  const BDiffOp p = examples::constant_operator({c, 1});
  const ModelKernel k = model_inverse(indicial(p), {Rational(0)});
  std::vector<double> s;
  for (int i = 1; i <= 99; ++i) s.push_back(i / 100.0);
  const Samples conv = convolve_model_kernels(k, k, s, {1e-15, 1e-14, 20});
  double worst = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    worst = std::max(worst, std::abs(conv.values[i] - s[i] * std::log(1.0 / s[i])));
  }
  ok &= note(d, worst <= 1e-8, "convolution equals s log(1/s) on [0.01, 0.99] within " + num(worst));

  const FullCalcDescriptor q{-1, IndexSet{}, IndexSet::single(Exponent(c))};
  const FullCalcDescriptor qq = compose_descriptors(q, q);
  const IndexSet want = IndexSet::complete({IndexEntry(Exponent(c), 0), IndexEntry(Exponent(c), 1)});
  ok &= note(d, qq.E_lb.empty() && qq.E_rb == want && qq.order == -2,
             "compose_descriptors: (empty, {(1,0),(1,1)}), order -2");

  const IndexSet probes = IndexSet::complete({IndexEntry(Exponent(c), 2), IndexEntry(Exponent(c + Rational(1, 2)), 0)});
  const auto report = convolve_and_fit(k, k, {0.5, 0.8, 60}, qq.E_rb, probes, c + 2, 1e-6, {1e-15, 1e-14, 20});
  std::string extras;
  for (const auto& e : report.check.extra) extras += " " + to_string(e);
  ok &= note(d, report.check.contained, "fit contained in the prediction, extras:" + (extras.empty() ? " none" : extras));
  ok &= note(d, std::abs(report.fit.coeff(c, 1) - 1.0) <= 1e-6,
             "fitted coefficient of s log(1/s) = " + num(report.fit.coeff(c, 1)));
  return ok;
}

// 11. Action theorem boundary.
bool action_boundary(Details& d) {
  bool ok = true;
  const Rational c(1);
  const FullCalcDescriptor q{-1, IndexSet{}, IndexSet::single(Exponent(c))};
  const RealFunction cut = smooth_cutoff(1.0, 2.0);
  for (const char* w : {"-3/2", "-1", "-9/10", "-1/2", "0", "1"}) {
    const Rational wr = parse_rational(w);
    bool symbolic_error = false;
    try {
      (void)action_index(q, IndexSet::single(Exponent(wr)));
    } catch (const HypothesisViolated&) {
      symbolic_error = true;
    }
    const double wd = to_double(wr);
    const HalflineFunction v{[&](double t) { return std::pow(t, wd) * cut(t); }, 0.0, 2.0};
    bool numeric_divergent = false;
    try {
      (void)solve_model_ode(ExactComplex(c), v, {0.5});
    } catch (const DivergentIntegral&) {
      numeric_divergent = true;
    }
    const bool expected = c + wr <= 0;
    ok &= note(d, symbolic_error == expected && numeric_divergent == expected,
               std::string("w = ") + w + ": action " + (symbolic_error ? "rejected" : "defined") + ", quadrature " +
                   (numeric_divergent ? "divergent" : "convergent"));
  }
  return ok;
}

// 12. Front-face criterion.
bool front_face(Details& d) {
  bool ok = true;
  const RealFunction phi = smooth_cutoff(0.5, 1.0);
  const HsReport vanishing = hs_front_face_criterion(
      [](double x, double s) { return x * examples::log_bump(s); }, phi);
  ok &= note(d, vanishing.finite, "p = x bump(s): slope " + num(vanishing.slope));
  const HsReport restricted = hs_front_face_criterion([](double, double s) { return examples::log_bump(s); }, phi);
  // Trapezoid rule in log s: spectrally accurate for the compactly supported bump.
  const int n = 4000;
  const double a = -std::log(2.0);
  const double h = 2 * std::log(2.0) / n;
  double oracle = 0;
  for (int i = 1; i < n; ++i) {
    const double b = examples::log_bump(std::exp(a + i * h));
    oracle += b * b * h;
  }
  const double rel = std::abs(restricted.slope - oracle) / oracle;
  ok &= note(d, !restricted.finite && rel <= 0.05,
             "p = bump(s): slope " + num(restricted.slope) + " vs int |bump|^2 ds/s = " + num(oracle) +
                 " (relative " + num(rel) + ", tol 5%)");
  return ok;
}

// 13. Chart decomposition of the push-forward.
bool decomposition_identity(Details& d) {
  bool ok = true;
  const QuadratureSpec spec{1e-14, 1e-12, 20};
  const auto grid = GeometricGrid{0.5, 0.7, 20}.points();
  const std::vector<std::pair<std::string, SampledFunction2D>> cases{{"sqrt(x^2+y^2)", examples::sqrt_distance()},
                                                                     {"hyperbola kernel", examples::hyperbola_kernel()}};
  for (const auto& [name, u] : cases) {
    const Samples direct = numeric_pushforward(u, spec, grid);
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {0.5, 3.0}}) {
      const ChartSplit split = chart_split_pushforward(u, smooth_cutoff(a, b), b, spec, grid);
      double worst = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, std::abs(direct.values[i] - split.sum.values[i]));
      }
      ok &= note(d, worst <= 1e-8, name + ", cutoff (" + num(a) + "," + num(b) + "): |direct - (A+B)| = " + num(worst));
    }
  }
  return ok;
}

struct Criterion {
  const char* name;
  std::function<bool(Details&)> run;
};

const std::map<int, Criterion>& registry() {
  static const std::map<int, Criterion> r{
      {1, {"extended-union law", extended_union_law}},
      {2, {"push-forward, symbolic", pushforward_symbolic}},
      {3, {"push-forward, numeric sqrt(x^2+y^2)", pushforward_sqrt}},
      {4, {"hyperbola-kernel log coefficient", pushforward_hyperbola}},
      {5, {"pull-back formula", pullback_formula}},
      {6, {"b-fibration checker", bfibration_checks}},
      {7, {"exponent-matrix functoriality", functoriality}},
      {8, {"Spec_b", spec_b}},
      {9, {"model inverse", model_inverse_checks}},
      {10, {"composition with log generation", composition_logs}},
      {11, {"action theorem boundary", action_boundary}},
      {12, {"front-face criterion", front_face}},
      {13, {"decomposition identity", decomposition_identity}},
  };
  return r;
}

}  // namespace

bool VerifyReport::all_passed() const {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "combinatorics") return {1, 5, 6, 7};
  if (suite == "pushforward") return {2, 3, 4, 13};
  if (suite == "parametrix") return {8, 9, 10, 11, 12};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  throw std::invalid_argument("unknown suite '" + suite + "' (combinatorics, pushforward, parametrix, all)");
}

CriterionResult run_criterion(int id) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
  CriterionResult out;
  out.id = id;
  out.name = it->second.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    out.passed = it->second.run(out.details);
  } catch (const std::exception& e) {
    out.passed = false;
    out.details.push_back(std::string("FAIL exception: ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

VerifyReport run_suite(const std::string& suite) {
  VerifyReport report;
  for (int id : suite_criteria(suite)) report.results.push_back(run_criterion(id));
  return report;
}

}  // namespace bcalc
