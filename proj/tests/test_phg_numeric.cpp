#include "bcalc/examples.hpp"
#include "bcalc/phg_numeric.hpp"
#include "bcalc/quadrature.hpp"
#include "bcalc/stencil.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace bcalc;
using test::q;
using test::set;

namespace {

Samples synthesize(const std::function<double(double)>& f, const GeometricGrid& grid) {
  Samples s;
  s.x = grid.points();
  for (double x : s.x) {
    s.values.push_back(f(x));
    s.ok.push_back(true);
  }
  s.meta = grid.describe();
  return s;
}

}  // namespace

TEST_CASE("adaptive quadrature") {
  const QuadratureSpec spec;
  CHECK(integrate([](double x) { return std::exp(x); }, 0, 1, spec).value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
  const QuadResult kink = integrate([](double x) { return std::abs(x - 0.3); }, 0, 1, spec, {0.3});
  CHECK(kink.converged);
  CHECK(kink.value == doctest::Approx(0.29).epsilon(1e-14));

  const QuadResult sing = integrate_to_zero([](double y) { return 1 / std::sqrt(y); }, 1, spec);
  CHECK(sing.converged);
  CHECK(sing.value == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(integrate_to_zero([](double y) { return 1 / y; }, 1, spec).divergent);
  CHECK(integrate_to_infinity([](double y) { return 1 / (y * y); }, 1, spec).value == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS((QuadratureSpec{-1, 1e-12, 10}.validate()), std::invalid_argument);
}

TEST_CASE("finite-difference weights") {
  const auto w = fornberg_weights(0, {-1, 0, 1}, 2);
  CHECK(w[2][0] == doctest::Approx(1));
  CHECK(w[2][1] == doctest::Approx(-2));
  CHECK(w[2][2] == doctest::Approx(1));
  CHECK(w[1][0] == doctest::Approx(-0.5));
  CHECK(w[0][1] == doctest::Approx(1));
}

TEST_CASE("b-derivatives on log grids") {
  const BDiffOp xd = examples::constant_operator({0, 1});
  const std::vector<double> xs{0.1, 0.5, 2.0};
  const Samples pow = apply_bop_numeric(xd, [](double x) { return std::pow(x, 1.7); }, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(pow.values[i] == doctest::Approx(1.7 * std::pow(xs[i], 1.7)).epsilon(1e-9));
  const Samples lg = apply_bop_numeric(xd, [](double x) { return std::log(x); }, xs);
  for (double v : lg.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

  SUBCASE("error shrinks with the step") {
    const auto u = [](double x) { return std::pow(x, 2.5); };
    double previous = 1;
    for (double step : {0.2, 0.1, 0.05}) {
      const double err = std::abs(apply_bop_numeric(xd, u, {1.0}, {step, 2}).values[0] - 2.5);
      CHECK(err < previous);
      previous = err;
    }
  }
  SUBCASE("coarse sampled grids warn") {
    std::vector<std::string> warnings;
    const Samples s = synthesize([](double x) { return x; }, {1, 0.8, 30});
    const Samples out = apply_bop_numeric(xd, s, &warnings);
    CHECK_FALSE(warnings.empty());
    CHECK_FALSE(out.ok.front());
  }
}

TEST_CASE("model ODE") {
  const std::vector<double> xs{0.05, 0.3, 0.9};
  const HalflineFunction one{[](double) { return 1.0; }, 0, 1};
  const Samples u1 = solve_model_ode(ExactComplex(1), one, xs);
  for (double v : u1.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  const HalflineFunction lin{[](double x) { return x; }, 0, 1};
  const Samples u2 = solve_model_ode(ExactComplex(1), lin, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(u2.values[i] == doctest::Approx(xs[i] / 2).epsilon(1e-13));
  const HalflineFunction root{[](double x) { return std::sqrt(x); }, 0, 1};
  const Samples u3 = solve_model_ode(ExactComplex(q("1/2")), root, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(u3.values[i] == doctest::Approx(std::sqrt(xs[i])).epsilon(1e-12));

  const HalflineFunction inv{[](double x) { return 1 / x; }, 0, 1};
  CHECK_THROWS_AS(solve_model_ode(ExactComplex(1), inv, xs), DivergentIntegral);
  CHECK_NOTHROW(solve_model_ode(ExactComplex(1), HalflineFunction{[](double x) { return std::pow(x, -0.9); }, 0, 1}, xs));

  SUBCASE("the b-operator undoes the solve") {
    const GeometricGrid grid{0.5, std::exp(-0.01), 200};
    Samples u = solve_model_ode(ExactComplex(1), lin, grid.points());
    const Samples back = apply_bop_numeric(examples::constant_operator({1, 1}), u);
    for (std::size_t i = 0; i < back.x.size(); ++i) {
      if (back.ok[i]) CHECK(back.values[i] == doctest::Approx(back.x[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("expansion fit") {
  const GeometricGrid grid;
  SUBCASE("affine data") {
    const PhgExpansion fit = fit_expansion(synthesize([](double x) { return 3 + 2 * x; }, grid), IndexSet::smooth(), 3);
    CHECK(fit.coeff(0, 0) == doctest::Approx(3).epsilon(1e-12));
    CHECK(fit.coeff(1, 0) == doctest::Approx(2).epsilon(1e-12));
    CHECK(fit.fit_residual < 1e-13);
  }
  SUBCASE("recovers synthesized expansions") {
    const auto f = [](double x) {
      const double l = std::log(1 / x);
      return 0.7 - 1.3 * std::sqrt(x) * l + 2.1 * x + 0.4 * x * l - 0.9 * std::pow(x, 1.5) * l * l;
    };
    const IndexSet candidate = set({{"0", 0}, {"1/2", 2}, {"1", 1}});
    const PhgExpansion fit = fit_expansion(synthesize(f, grid), candidate, q("3/2"), {1e14, 1e-2, 10, 0.25, false});
    CHECK(fit.coeff(0, 0) == doctest::Approx(0.7).epsilon(1e-8));
    CHECK(fit.coeff(q("1/2"), 1) == doctest::Approx(-1.3).epsilon(1e-8));
    CHECK(fit.coeff(1, 0) == doctest::Approx(2.1).epsilon(1e-8));
    CHECK(fit.coeff(1, 1) == doctest::Approx(0.4).epsilon(1e-8));
    CHECK(fit.coeff(q("3/2"), 2) == doctest::Approx(-0.9).epsilon(1e-8));
    CHECK(std::abs(fit.coeff(q("1/2"), 0)) < 1e-8);
    CHECK(fit.coeff_log_x(1, 1) == doctest::Approx(-0.4).epsilon(1e-8));
  }
  SUBCASE("missing exponents fail the decay check") {
    const Samples s = synthesize([](double x) { return 1 + std::sqrt(x); }, grid);
    try {
      fit_expansion(s, IndexSet::smooth(), 2);
      FAIL("expected a fit rejection");
    } catch (const FitError& e) {
      CHECK(e.kind() == FitError::Kind::no_decay);
    }
  }
  SUBCASE("near-coincident exponents are merged") {
    const IndexSet candidate = set({{"0", 0}, {"1/1000", 0}});
    const PhgExpansion fit = fit_expansion(synthesize([](double) { return 1.0; }, grid), candidate, q("1/2"), {1e14, 1e-2, 10, 0.25, false});
    CHECK_FALSE(fit.warnings.empty());
  }
}

TEST_CASE("push-forward of a smooth function stays smooth") {
  const SampledFunction2D u{[](double x, double y) { return examples::flat_bump(x) * examples::flat_bump(y); }, 1.0, "smooth"};
  const GeometricGrid grid{0.2, 0.8, 40};
  const Samples s = numeric_pushforward(u, {1e-14, 1e-12, 20}, grid.points());
  CHECK(s.all_ok());
  const PhgExpansion fit = fit_expansion(s, set({{"0", 1}}), 6);
  // ~u(x) = I flat_bump(x) = I (1 - x^2 + x^4/2 - ...), I = ~u(0).
  const double i0 = s.values.back() / examples::flat_bump(s.x.back());
  CHECK(std::abs(fit.coeff(0, 1)) < 1e-9);
  CHECK(std::abs(fit.coeff(1, 1)) < 1e-7);
  CHECK(fit.coeff(0, 0) == doctest::Approx(i0).epsilon(1e-9));
  CHECK(fit.coeff(2, 0) == doctest::Approx(-i0).epsilon(1e-4));
}

TEST_CASE("push-forward matches the chart split") {
  const auto u = examples::sqrt_distance();
  const std::vector<double> xs{0.01, 0.1, 0.4};
  const QuadratureSpec spec{1e-14, 1e-12, 20};
  const Samples direct = numeric_pushforward(u, spec, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(direct.values[i] == doctest::Approx(examples::sqrt_distance_pushforward(xs[i])).epsilon(1e-12));
  const ChartSplit split = chart_split_pushforward(u, smooth_cutoff(1.5, 3), 3, spec, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(split.sum.values[i] - direct.values[i]) < 1e-8);
}

TEST_CASE("kernel convolution") {
  const ModelKernel k = model_inverse(indicial(examples::constant_operator({1, 1})), {0});
  const std::vector<double> s{0.05, 0.3, 0.8, 1.5};
  const Samples c = convolve_model_kernels(k, k, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expected = s[i] < 1 ? s[i] * std::log(1 / s[i]) : 0.0;
    CHECK(c.values[i] == doctest::Approx(expected).epsilon(1e-10));
  }
  const ModelKernel rb = model_inverse(indicial(examples::constant_operator({0, 1})), {1});
  const ModelKernel lb = model_inverse(indicial(examples::constant_operator({0, 1})), {-1});
  CHECK_THROWS_AS(convolve_model_kernels(rb, lb, s), DivergentIntegral);
}

TEST_CASE("prediction comparison") {
  PhgExpansion fit;
  fit.terms = {{0, 0, 1.0}, {1, 1, 1e-12}, {2, 0, 0.5}};
  const PredictionCheck inside = compare_to_prediction(fit, IndexSet::smooth(), 1e-8);
  CHECK(inside.contained);
  CHECK(inside.extra.empty());
  fit.terms[1].coeff = 0.3;
  CHECK_FALSE(compare_to_prediction(fit, IndexSet::smooth(), 1e-8).contained);
}
