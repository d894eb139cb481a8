#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sio/sio.hpp"

using sio::Complex;

TEST_CASE("conjugate exponent values and involution") {
  CHECK(sio::conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(sio::conjugate_exponent(3.0) == doctest::Approx(1.5));
  CHECK(sio::conjugate_exponent(1.25) == doctest::Approx(5.0));
  for (double p : {1.1, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 7.5, 10.0})
    CHECK(sio::conjugate_exponent(sio::conjugate_exponent(p)) ==
          doctest::Approx(p).epsilon(1e-12));
  CHECK_THROWS(sio::conjugate_exponent(1.0));
}

TEST_CASE("log-Hoelder validation") {
  sio::CurveSpec circle = sio::CurveSpec::unit_circle(1024);

  SUBCASE("constant exponent holds with zero estimate") {
    sio::LogHolderReport rep =
        sio::validate_exponent(sio::ExponentSpec::constant(2.0), circle);
    CHECK(rep.holds);
    CHECK(rep.min_A_estimate == doctest::Approx(0.0));
  }

  SUBCASE("smooth sinusoidal exponent holds") {
    std::vector<double> s, p;
    for (int i = 0; i < 1024; ++i) {
      double th = sio::kTwoPi * i / 1024.0;
      s.push_back(th);
      p.push_back(2.0 + 0.5 * std::sin(th));
    }
    sio::ExponentSpec exp_spec(s, p, sio::kTwoPi);
    sio::LogHolderReport rep = sio::validate_exponent(exp_spec, circle);
    CHECK(rep.holds);
    CHECK(!rep.diverging);
    CHECK(rep.min_A_estimate > 0.0);
  }

  SUBCASE("step exponent diverges") {
    const double pi = 3.141592653589793;
    sio::ExponentSpec exp_spec({0.0, pi - 1e-9, pi, sio::kTwoPi - 1e-9},
                               {2.0, 2.0, 3.0, 3.0}, sio::kTwoPi);
    sio::LogHolderReport rep = sio::validate_exponent(exp_spec, circle);
    CHECK(rep.diverging);
    CHECK(!rep.holds);
  }

  SUBCASE("exponent out of range rejected") {
    CHECK_THROWS(sio::ExponentSpec({0.0}, {1.0}, sio::kTwoPi));
    CHECK_THROWS(sio::ExponentSpec({0.0}, {0.5}, sio::kTwoPi));
  }
}

TEST_CASE("Carleson constant on the unit circle") {
  sio::CurveSpec circle = sio::CurveSpec::unit_circle(2048);

  SUBCASE("small-R limit approaches 2") {
    double R = 2.5 * circle.max_segment_length();
    std::vector<double> lens =
        sio::portion_lengths(circle, Complex(1.0, 0.0), {R});
    CHECK(lens[0] / R == doctest::Approx(2.0).epsilon(0.01));
  }

  SUBCASE("full sweep approaches pi, matching 4 asin(R/2)/R") {
    double est = sio::carleson_constant(circle, 64, 256);
    CHECK(est == doctest::Approx(3.141592653589793).epsilon(0.01));
    // closed form at a probe radius
    double R = 1.0;
    std::vector<double> lens =
        sio::portion_lengths(circle, Complex(1.0, 0.0), {R});
    CHECK(lens[0] / R ==
          doctest::Approx(4.0 * std::asin(R / 2.0) / R).epsilon(1e-3));
  }

  SUBCASE("whirl curve has a finite constant") {
    sio::CurveSpec spiral = fixtures::spiral_curve(1.0);
    double est = sio::carleson_constant(spiral, 64, 64);
    CHECK(est > 0.0);
    CHECK(est < 100.0);
  }

  SUBCASE("R below sample resolution is rejected") {
    CHECK_THROWS(sio::carleson_constant(circle, {Complex(1.0, 0.0)}, {1e-9}));
  }
}

TEST_CASE("spirality index estimation") {
  SUBCASE("unit circle is non-whirling") {
    sio::CurveSpec circle = sio::CurveSpec::unit_circle(8192);
    sio::SpiralityFitWindow win;
    win.r_min = 1e-3;
    win.min_decades = 2.5;  // only ~2.8 decades fit between r_min and 0.3 diam
    sio::SpiralityFit fit =
        sio::spirality_delta(circle, Complex(1.0, 0.0), win);
    CHECK(std::abs(fit.delta) < 1e-2);
  }

  SUBCASE("synthetic whirl curve recovers delta = 1") {
    sio::CurveSpec spiral = fixtures::spiral_curve(1.0);
    sio::SpiralityFit fit = sio::spirality_delta(spiral, Complex(0.0, 0.0));
    CHECK(fit.delta == doctest::Approx(1.0).epsilon(1e-2));
  }

  SUBCASE("point away from the whirl is smooth") {
    sio::CurveSpec spiral = fixtures::spiral_curve(1.0);
    // probe on the outer arc, far from the whirl point
    Complex t = spiral.points()[spiral.nearest_sample(Complex(-0.4, 0.2))];
    sio::SpiralityFitWindow win;
    win.r_min = 1e-4;
    win.min_decades = 2.0;  // the far side has fewer clean decades
    sio::SpiralityFit fit = sio::spirality_delta(spiral, t, win);
    CHECK(std::abs(fit.delta) < 0.1);
  }

  SUBCASE("insufficient window is an error") {
    sio::CurveSpec circle = sio::CurveSpec::unit_circle(64);
    CHECK_THROWS(sio::spirality_delta(circle, Complex(1.0, 0.0)));
  }
}

TEST_CASE("jump exponent gamma") {
  double s_of_t = 0.0;
  SUBCASE("no jump gives zero") {
    sio::PcSymbol a = sio::PcSymbol::constant(Complex(3.0, 1.0));
    Complex g = sio::jump_exponent(a, Complex(1.0, 0.0), s_of_t);
    CHECK(std::abs(g) < 1e-14);
  }
  SUBCASE("ratio e^{i pi}") {
    sio::PcSymbol a =
        sio::PcSymbol::scalar_jump(Complex(1.0, 0.0), Complex(-2.0, 0.0),
                                   Complex(2.0, 0.0));
    Complex g = sio::jump_exponent(a, Complex(1.0, 0.0), s_of_t);
    CHECK(g.real() == doctest::Approx(0.5));
    CHECK(g.imag() == doctest::Approx(0.0));
  }
  SUBCASE("ratio 2") {
    sio::PcSymbol a = sio::PcSymbol::scalar_jump(
        Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(1.0, 0.0));
    Complex g = sio::jump_exponent(a, Complex(1.0, 0.0), s_of_t);
    CHECK(g.real() == doctest::Approx(0.0));
    CHECK(g.imag() == doctest::Approx(-std::log(2.0) / sio::kTwoPi));
    CHECK(g.imag() == doctest::Approx(-0.11032).epsilon(1e-3));
  }
  SUBCASE("zero one-sided limit is an error") {
    sio::PcSymbol a = sio::PcSymbol::scalar_jump(
        Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0));
    CHECK_THROWS(sio::jump_exponent(a, Complex(1.0, 0.0), s_of_t));
  }
  SUBCASE("branch stability after mod-1 reduction") {
    sio::PcSymbol a = sio::PcSymbol::scalar_jump(
        Complex(1.0, 0.0), Complex(0.3, 0.7), Complex(-1.2, 0.4));
    Complex g = sio::jump_exponent(a, Complex(1.0, 0.0), s_of_t);
    Complex r = Complex(0.3, 0.7) / Complex(-1.2, 0.4);
    double shifted = sio::frac((std::arg(r) + 3.0 * sio::kTwoPi) / sio::kTwoPi);
    CHECK(g.real() == doctest::Approx(shifted).epsilon(1e-12));
  }
}

TEST_CASE("point indices mu, nu") {
  sio::RadialWeightSpec weight(
      {{Complex(1.0, 0.0), sio::WeightProfile::power(0.3)}});
  sio::ProblemInstance problem(sio::CurveSpec::unit_circle(512),
                               sio::ExponentSpec::constant(2.0), weight);

  SUBCASE("off-node points give (0,0) exactly") {
    sio::IndexPair mm = problem.point_indices(Complex(0.0, 1.0));
    CHECK(mm.lower == 0.0);
    CHECK(mm.upper == 0.0);
  }
  SUBCASE("power node gives (gamma, gamma)") {
    sio::IndexPair mm = problem.point_indices(Complex(1.0, 0.0));
    CHECK(mm.lower == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(mm.upper == doctest::Approx(0.3).epsilon(1e-6));
  }
  SUBCASE("oscillating node has lower < upper") {
    sio::ProblemInstance pr(fixtures::corner_curve(),
                            sio::ExponentSpec::constant(2.0),
                            sio::RadialWeightSpec({{Complex(0.0, 0.0),
                                                    fixtures::block_profile()}}));
    sio::MoReport mo =
        sio::mo_indices(fixtures::block_profile(), fixtures::block_phi_options());
    pr.cache_point_indices(Complex(0.0, 0.0), mo.indices);
    sio::IndexPair mm = pr.point_indices(Complex(0.0, 0.0));
    CHECK(mm.lower < mm.upper);
    CHECK(mm.lower <= mm.upper);
  }
}

TEST_CASE("jump limits validated against the background") {
  // linear background 2 + s on one side, 5 - s on the other of s = 1
  std::vector<sio::PcSymbol::BackgroundSample> bg;
  for (int i = 0; i < 40; ++i) {
    double s = 0.02 * i;  // [0, 0.78]
    sio::MatrixXc m(1, 1);
    m(0, 0) = Complex(2.0 + s, 0.0);
    bg.push_back({s, m});
  }
  for (int i = 0; i < 40; ++i) {
    double s = 1.02 + 0.02 * i;
    sio::MatrixXc m(1, 1);
    m(0, 0) = Complex(5.0 - s, 0.0);
    bg.push_back({s, m});
  }
  sio::MatrixXc left(1, 1), right(1, 1);
  left(0, 0) = Complex(3.0, 0.0);   // limit of 2 + s at s = 1
  right(0, 0) = Complex(4.0, 0.0);  // limit of 5 - s at s = 1
  sio::PcSymbol good(1, bg, {{Complex(1.0, 0.0), left, right}});
  CHECK(good.jump_background_deviation(good.jumps()[0], 1.0) < 1e-9);

  sio::MatrixXc bad(1, 1);
  bad(0, 0) = Complex(9.0, 0.0);
  sio::PcSymbol inconsistent(1, bg, {{Complex(1.0, 0.0), bad, right}});
  CHECK(inconsistent.jump_background_deviation(inconsistent.jumps()[0], 1.0) >
        1.0);
}

TEST_CASE("class W envelope check") {
  SUBCASE("power law") {
    sio::EnvelopeReport rep =
        sio::envelope_check(sio::WeightProfile::power(0.4));
    CHECK(rep.in_W);
    CHECK(rep.c_a == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.c_b == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("exp(1/x) is outside W") {
    sio::WeightProfile rho = fixtures::sampled_profile(
        [](double lx) { return std::exp(-lx); }, 5e-3, 1.0);
    CHECK(!sio::envelope_check(rho).in_W);
  }
  SUBCASE("oscillating block profile is inside W") {
    sio::EnvelopeReport rep = sio::envelope_check(fixtures::block_profile());
    CHECK(rep.in_W);
    CHECK(rep.a <= -0.3 + 1e-9);
    CHECK(rep.b >= 0.6 - 1e-9);
  }
}

TEST_CASE("curve spec invariants") {
  CHECK_THROWS(sio::CurveSpec({0.0, 1.0, 0.5, 2.0},
                              {Complex(0, 0), Complex(1, 0), Complex(1, 1),
                               Complex(0, 0)}));
  CHECK_THROWS(sio::CurveSpec({0.0, 1.0, 2.0, 3.0},
                              {Complex(0, 0), Complex(1, 0), Complex(1, 1),
                               Complex(5, 5)}));
  CHECK_THROWS(fixtures::make_curve(
      {Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1),
       Complex(0, 0)},
      {{Complex(7.0, 7.0), 1.0}}));
}
