#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "simlaw/errors.hpp"
#include "simlaw/families.hpp"
#include "simlaw/laws.hpp"

using namespace simlaw;

TEST_CASE("catalog families match independent closed forms") {
  const auto rem3 = make_family("rem3", {});
  const auto fe = make_family("fechExp", {{"rho", 0.7}});
  const auto s1 = make_family("subCaseI", {{"a", 1.5}, {"b", 0.5}, {"rho", 0.8}, {"r", 0.3}});
  const auto s2 = make_family(
      "subCaseII", {{"a", 2.0}, {"c", 1.5}, {"rho", 2.0}, {"r", 1.0}, {"eps", 0.25}});
  const auto ab = make_family("affineB", {{"c", 2.0}, {"d", 0.5}});
  const auto pw = make_family("power", {{"kappa", 2.0}, {"rho", 1.5}});
  for (double x = 0.5; x <= 2.0; x += 0.25) {
    for (double s = 0.0; s <= 1.0; s += 0.2) {
      CHECK(rem3(x, s) == doctest::Approx(oracle::rem3(x, s)));
      CHECK(fe(x, s) == doctest::Approx(oracle::fech_exp(x, s, 0.7)));
      CHECK(s1(x, s) == doctest::Approx(oracle::sub_case_i(x, s, 1.5, 0.5, 0.8, 0.3)));
      CHECK(s2(x, s) == doctest::Approx(oracle::sub_case_ii(x, s, 2.0, 1.5, 2.0, 1.0, 0.25)));
      CHECK(ab(x, s) == doctest::Approx(oracle::affine_b(x, s, 2.0, 0.5)));
      CHECK(pw(x, s) == doctest::Approx(oracle::power(x, 2.0, 1.5)));
    }
  }
}

TEST_CASE("phi form reproduces x + s from its one-variable pieces") {
  // f(s) = 1/s, g(s) = 1/s, Phi(x) = x + 1.
  const auto inv = ScaleFunction::power(1.0, -1.0, 0.0);
  const auto fam = make_family(
      "phiForm", {{"Phi", ScaleFunction::affine(1.0, 1.0)}, {"f", inv}, {"g", inv}});
  CHECK(fam(2.0, 0.5) == doctest::Approx(2.5));
  CHECK(fam(0.7, 3.0) == doctest::Approx(3.7));
}

TEST_CASE("homogeneous family has the c x limit at s = 0") {
  const auto fam = make_family("homogeneous", {{"phi", ScaleFunction::affine(1.0, 1.0)}, {"c", 1.0}});
  CHECK(fam(2.0, 0.0) == doctest::Approx(2.0));
  CHECK(fam(2.0, 0.5) == doctest::Approx(2.5));
}

TEST_CASE("parameter constraints are enforced") {
  CHECK_THROWS_AS(make_family("affineA", {{"c", 0.0}, {"mu", 1.0}, {"d", 0.0}}), ParamError);
  CHECK_THROWS_AS(make_family("affineA", {{"c", 1.0}, {"mu", 0.0}, {"d", 0.0}}), ParamError);
  CHECK_THROWS_AS(make_family("affineB", {{"c", 0.0}, {"d", 0.0}}), ParamError);
  CHECK_THROWS_AS(make_family("subCaseII",
                              {{"a", 1.0}, {"c", 1.0}, {"rho", 0.0}, {"r", 1.0}, {"eps", 0.0}}),
                  ParamError);
  CHECK_THROWS_AS(make_family("shiftForm", {{"f", ScaleFunction::identity()},
                                            {"F", 1.0},
                                            {"theta", -1.0}}),
                  ParamError);
  CHECK_THROWS_AS(make_family("weber", {{"k", 1.0}, {"q", 2.0}}), ParamError);
  CHECK_THROWS_AS(make_family("weber", {}), ParamError);
  CHECK_THROWS_AS(make_family("nosuch", {}), ParamError);
}

TEST_CASE("with_domain rejects families that are undefined on the rectangle") {
  const auto s2 = make_family(
      "subCaseII", {{"a", 1.0}, {"c", 1.0}, {"rho", 0.5}, {"r", 1.0}, {"eps", 5.0}});
  CHECK_THROWS_AS(s2.with_domain(Interval::closed(0.5, 2.0), Interval::closed(0.0, 1.0)),
                  ParamError);
  const auto ok = make_family("rem3", {}).with_domain(Interval::closed(0.5, 2.0),
                                                      Interval::closed(0.0, 1.0));
  CHECK_THROWS_AS(ok(3.0, 0.5), DomainError);
  CHECK(ok(1.0, 0.5) == doctest::Approx(1.5));
}

TEST_CASE("every family with companions satisfies the similarity law") {
  const auto grid = oracle::grid(0.5, 2.0, 12, 0.5, 2.0, 12, 0.1, 1.0, 12);
  const std::vector<SensitivityFamily> fams = {
      make_family("weber", {{"k", 1.7}}),
      make_family("power", {{"kappa", 2.0}, {"rho", ScaleFunction::affine(0.5, 1.0)}}),
      make_family("affineA", {{"c", 2.0}, {"mu", 0.5}, {"d", 1.0}}),
      make_family("affineB", {{"c", 2.0}, {"d", 0.5}}),
      make_family("affineC", {}),
      make_family("fechExp", {{"rho", 1.2}}),
      make_family("subCaseI", {{"a", 1.5}, {"b", 0.5}, {"rho", 0.8}, {"r", 0.3}}),
      make_family("subCaseII", {{"a", 2.0}, {"c", 1.5}, {"rho", 2.0}, {"r", 1.0}, {"eps", 0.0}}),
      make_family("rem3", {}),
      make_family("powerF", {{"phi", 1.3},
                             {"F", ScaleFunction::affine(1.0, 2.0)},
                             {"H", ScaleFunction::power(1.0, 2.0, 0.0)}}),
      make_family("shiftForm", {{"f", ScaleFunction::identity()},
                                {"F", ScaleFunction::affine(1.0, 1.0)},
                                {"theta", 2.0}}),
      make_family("homogeneous", {{"phi", ScaleFunction::affine(1.0, 1.0)}, {"c", 1.0}}),
      make_family("parallelPower", {{"alpha", 1.0},
                                    {"rho", 2.0},
                                    {"gamma_c", 0.5},
                                    {"f", ScaleFunction::exp(1.0, 1.0, 0.0)}}),
  };
  for (const auto& fam : fams) {
    CAPTURE(fam.describe());
    const auto comp = canonical_companions(fam);
    REQUIRE(comp.has_value());
    const auto r = iverson_residual(fam, comp->first, comp->second, grid, 1e-10);
    CHECK(r.max_abs <= 1e-10);
    CHECK(r.evaluated > 0);
  }
}

TEST_CASE("families without known companions report none") {
  const auto bp = make_family("balancedParallel", {{"nu", ScaleFunction::affine(1.0, -0.5)}});
  CHECK_FALSE(canonical_companions(bp).has_value());
}

TEST_CASE("kind names and parameters") {
  const auto f = make_family("affineA", {{"c", 2.0}, {"mu", 0.5}, {"d", 1.0}});
  CHECK(f.kind() == "affineA");
  REQUIRE(f.params().size() == 3);
  CHECK(f.params()[1].first == "mu");
  CHECK(family_kinds().size() >= 16);
}
