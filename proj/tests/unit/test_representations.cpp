#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "simlaw/errors.hpp"
#include "simlaw/families.hpp"
#include "simlaw/representations.hpp"

using namespace simlaw;

TEST_CASE("representations generate their sensitivity functions") {
  const auto id = ScaleFunction::identity();
  CHECK(xi_from_representation(Representation::subtractive(id, id), 1.5, 0.25) ==
        doctest::Approx(oracle::rem3(1.5, 0.25)));
  CHECK(xi_from_representation(Representation::fechnerian(ScaleFunction::log(1.0, 0.0)), 1.5,
                               0.25) == doctest::Approx(oracle::fech_exp(1.5, 0.25, 1.0)));
  CHECK(xi_from_representation(Representation::gain_control(id, id), 1.5, 0.25) ==
        doctest::Approx(oracle::gain_id(1.5, 0.25)));
  CHECK(xi_from_representation(Representation::balanced_parallel(ScaleFunction::affine(1.0, -0.5)),
                               1.5, 0.25) == doctest::Approx(1.25));
  CHECK_THROWS_AS(xi_from_representation(
                      Representation::fechnerian(ScaleFunction::log(1.0, 0.0, Interval::closed(1.0, 2.0))),
                      1.5, 5.0),
                  RangeError);
}

TEST_CASE("representation residuals vanish on matching families") {
  const auto grid = oracle::standard_grid(16);
  const auto id = ScaleFunction::identity();
  CHECK(representation_residual(make_family("rem3", {}), Representation::subtractive(id, id), grid,
                                1e-10)
            .pass);
  CHECK(representation_residual(make_family("fechExp", {{"rho", 1.0}}),
                                Representation::fechnerian(ScaleFunction::log(1.0, 0.0)), grid,
                                1e-10)
            .pass);
  CHECK_FALSE(representation_residual(make_family("fechExp", {{"rho", 1.0}}),
                                      Representation::subtractive(id, id), grid, 1e-6)
                  .pass);
}

TEST_CASE("scales of representations must increase") {
  const auto dec = ScaleFunction::affine(-1.0, 0.0);
  CHECK_THROWS_AS(Representation::fechnerian(dec), ParamError);
  CHECK_THROWS_AS(Representation::subtractive(ScaleFunction::identity(), dec), ParamError);
}

TEST_CASE("psychometric inversion round trip") {
  const auto id = ScaleFunction::identity();
  const auto F = ScaleFunction::logistic_table(30.0, 100);
  const auto pf = make_psychometric(Representation::subtractive(id, id), F, Interval::real_line());
  for (double a = -1.0; a <= 1.0; a += 0.25) {
    for (double pi = 0.05; pi < 0.96; pi += 0.1) {
      const double x = sensitivity_from_psychometric(pf, a, pi);
      CHECK(std::abs(pf.p(a, x) - pi) <= 1e-9);
    }
  }
  CHECK(pf.p(0.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("psychometric links are validated") {
  const auto id = ScaleFunction::identity();
  const auto rep = Representation::subtractive(id, id);
  CHECK_THROWS_AS(make_psychometric(rep, ScaleFunction::affine(1.0, 0.0), Interval::real_line()),
                  LinkRangeError);
  CHECK_THROWS_AS(make_psychometric(rep, ScaleFunction::table({-1.0, 1.0}, {0.9, 0.1}),
                                    Interval::real_line()),
                  NonMonotoneError);
  const auto pf = make_psychometric(rep, ScaleFunction::logistic_table(), Interval::closed(0.0, 1.0));
  CHECK_THROWS_AS(sensitivity_from_psychometric(pf, 0.5, 0.999), RangeError);
}

TEST_CASE("balanced parallel families satisfy the three properties") {
  // With a link symmetric about 0, nu must be odd about 0.
  const auto nu = ScaleFunction::affine(1.5, 0.0);
  const auto pf = make_psychometric(Representation::balanced_parallel(nu),
                                    ScaleFunction::logistic_table(), Interval::real_line());
  const auto grid = oracle::grid(-1.0, 1.0, 9, 0.5, 2.0, 4, 0.1, 0.9, 9, Interval::real_line());
  const auto props = check_family_properties(pf, grid, 1e-8);
  CHECK(props.anchored.pass);
  CHECK(props.parallel.pass);
  CHECK(props.balanced.pass);
  const auto shifted = make_psychometric(
      Representation::balanced_parallel(ScaleFunction::affine(1.0, 0.5)),
      ScaleFunction::logistic_table(), Interval::real_line());
  CHECK_FALSE(check_family_properties(shifted, grid, 1e-8).balanced.pass);
}

TEST_CASE("balanced decomposition of x + nu(s)") {
  const auto grid = oracle::grid(0.5, 2.0, 8, 0.5, 2.0, 4, 0.05, 0.95, 19, Interval::positive(),
                                 Interval::positive(), Interval::open(0.0, 1.0));
  const auto odd = make_family("balancedParallel", {{"nu", ScaleFunction::affine(2.0, -1.0)}});
  const auto good = decompose_balanced_parallel(odd, grid, 1e-10);
  CHECK(good.report.pass);
  CHECK(good.nu(0.75) == doctest::Approx(0.5));
  const auto bad = decompose_balanced_parallel(make_family("rem3", {}), grid, 1e-10);
  CHECK_FALSE(bad.report.pass);
  CHECK(bad.report.component("x_independence")->pass);
  CHECK(bad.report.component("antisymmetry")->max_abs >= 0.5);
  const auto lop = oracle::grid(0.5, 2.0, 8, 0.5, 2.0, 4, 0.1, 0.7, 7);
  CHECK_THROWS_AS(decompose_balanced_parallel(odd, lop, 1e-10), GridSymmetryError);
}
