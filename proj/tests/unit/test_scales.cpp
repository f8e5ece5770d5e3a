#include <doctest.h>

#include <cmath>

#include "simlaw/errors.hpp"
#include "simlaw/interval.hpp"
#include "simlaw/numeric.hpp"
#include "simlaw/scale.hpp"
#include "simlaw/table2d.hpp"

using namespace simlaw;

TEST_CASE("interval membership respects open and closed ends") {
  const Interval c = Interval::closed(0.0, 1.0);
  CHECK(c.contains(0.0));
  CHECK(c.contains(1.0));
  CHECK_FALSE(Interval::open(0.0, 1.0).contains(0.0));
  CHECK_FALSE(c.contains(std::nan("")));
  CHECK(Interval::positive().contains(1e300));
  CHECK_FALSE(Interval::positive().contains(0.0));
  CHECK(Interval::nonnegative().contains(0.0));
  CHECK(c.is_subset_of(Interval::real_line()));
  CHECK_FALSE(Interval::real_line().bounded());
}

TEST_CASE("parametric scales evaluate and invert") {
  const auto a = ScaleFunction::affine(2.0, 1.0);
  CHECK(a(3.0) == doctest::Approx(7.0));
  CHECK(a.invert(7.0) == doctest::Approx(3.0));
  const auto l = ScaleFunction::log(1.0, 0.0);
  CHECK(l(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK(l.invert(2.0) == doctest::Approx(std::exp(2.0)));
  const auto p = ScaleFunction::power(1.0, 2.0, 0.0);
  CHECK(p(3.0) == doctest::Approx(9.0));
  CHECK(p.invert(9.0) == doctest::Approx(3.0));
  const auto e = ScaleFunction::exp(1.0, 1.0, -1.0);
  CHECK(e(1.0) == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(e.invert(std::exp(1.0) - 1.0) == doctest::Approx(1.0));
  CHECK(ScaleFunction::power(1.0, -1.0, 0.0).monotonicity() == -1);
}

TEST_CASE("round trip invert(eval(x)) on many points") {
  const ScaleFunction fs[] = {ScaleFunction::affine(-3.0, 0.5), ScaleFunction::log(2.0, 1.0),
                              ScaleFunction::power(0.5, 3.0, 1.0),
                              ScaleFunction::exp(2.0, -0.5, 0.0),
                              ScaleFunction::table({0.0, 1.0, 3.0}, {0.0, 2.0, 2.5})};
  for (const auto& f : fs) {
    for (int i = 1; i <= 29; ++i) {
      const double x = 0.1 * i;
      if (!f.domain().contains(x)) continue;
      CHECK(f.invert(f(x)) == doctest::Approx(x).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate scale parameters are rejected") {
  CHECK_THROWS_AS(ScaleFunction::affine(0.0, 1.0), NonMonotoneError);
  CHECK_THROWS_AS(ScaleFunction::log(0.0, 1.0), NonMonotoneError);
  CHECK_THROWS_AS(ScaleFunction::power(1.0, 0.0, 0.0), NonMonotoneError);
  CHECK_THROWS_AS(ScaleFunction::exp(1.0, 0.0, 0.0), NonMonotoneError);
  CHECK_THROWS_AS(ScaleFunction::table({0.0}, {1.0}), ParamError);
  CHECK_THROWS_AS(ScaleFunction::table({0.0, 1.0, 2.0}, {0.0, 1.0, 1.0}), NonMonotoneError);
}

TEST_CASE("tables interpolate linearly and reject out-of-range values") {
  const auto t = ScaleFunction::table({0.0, 1.0, 2.0}, {0.0, 10.0, 40.0});
  CHECK(t(0.5) == doctest::Approx(5.0));
  CHECK(t(1.5) == doctest::Approx(25.0));
  CHECK(t.invert(25.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(t(2.5), DomainError);
  CHECK_THROWS_AS(t.invert(41.0), RangeError);
  const auto d = ScaleFunction::table({0.0, 1.0}, {1.0, 0.0});
  CHECK(d.monotonicity() == -1);
  CHECK(d.invert(0.25) == doctest::Approx(0.75));
}

TEST_CASE("constant scales evaluate but do not invert") {
  const auto c = ScaleFunction::constant(2.0);
  CHECK(c(123.0) == 2.0);
  CHECK_FALSE(c.invertible());
  CHECK_THROWS_AS(c.invert(2.0), NotInvertibleError);
}

TEST_CASE("logistic table is symmetric and close to the logistic") {
  const auto F = ScaleFunction::logistic_table(30.0, 100);
  for (double t = -5.0; t <= 5.0; t += 0.37) {
    CHECK(F(t) + F(-t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(F(t) - 1.0 / (1.0 + std::exp(-t))) < 1e-5);
  }
  CHECK(F.range().lo > 0.0);
  CHECK(F.range().hi < 1.0);
}

TEST_CASE("composition and inverse scales") {
  const auto f = ScaleFunction::affine(2.0, 0.0);
  const auto g = ScaleFunction::exp(1.0, 1.0, 0.0);
  const auto fg = ScaleFunction::compose(f, g);
  CHECK(fg(1.0) == doctest::Approx(2.0 * std::exp(1.0)));
  CHECK(fg.invert(2.0 * std::exp(1.0)) == doctest::Approx(1.0));
  const auto gi = ScaleFunction::inverse_of(g);
  CHECK(gi(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(ScaleFunction::inverse_of(ScaleFunction::constant(1.0)), NotInvertibleError);
}

TEST_CASE("custom scales without an inverse fall back to bisection") {
  const auto c = ScaleFunction::custom(
      "cube", [](double x) { return x * x * x; }, Interval::closed(-2.0, 2.0), 1);
  CHECK(c.invert(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.invert(-8.0) == doctest::Approx(-2.0));
}

TEST_CASE("interpolant accepts non-monotone values") {
  const auto f = ScaleFunction::interpolant({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(f(0.5) == doctest::Approx(0.5));
  CHECK(f(1.5) == doctest::Approx(0.5));
  CHECK_FALSE(f.invertible());
  CHECK_THROWS_AS(ScaleFunction::interpolant({1.0, 0.0}, {0.0, 1.0}), NonMonotoneError);
}

TEST_CASE("bisection solves monotone equations") {
  const double r = bisect_monotone([](double x) { return x * x; }, 0.0, 2.0, 2.0, 1e-14);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  const auto xs = linspace(0.0, 1.0, 5);
  REQUIRE(xs.size() == 5);
  CHECK(xs[2] == 0.5);
  CHECK(xs.back() == 1.0);
  CHECK(relative_residual(1.0, 1.5) == doctest::Approx(0.25));
}

TEST_CASE("bilinear tables") {
  const Table2D t({0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0, 2.0, 3.0});
  CHECK(t.eval(0.5, 0.5) == doctest::Approx(1.5));
  CHECK(t.eval(1.0, 0.0) == doctest::Approx(2.0));
  CHECK(t.contains(0.2, 0.9));
  CHECK_FALSE(t.contains(1.2, 0.0));
  const auto u = Table2D::from_rows({{{1.0, 1.0, 3.0}}, {{0.0, 0.0, 0.0}}, {{1.0, 0.0, 2.0}},
                                     {{0.0, 1.0, 1.0}}});
  CHECK(u.eval(0.5, 0.5) == doctest::Approx(1.5));
}
