#include "simlaw/eta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simlaw/errors.hpp"
#include "simlaw/numeric.hpp"

namespace simlaw {

ResidualReport check_mult_translational(const EtaMap& eta, const Grid& grid, double tol) {
  const auto& lams = grid.lambdas();
  const auto& ss = grid.ss();
  const Interval& J = grid.lambda().domain;
  const Interval& S = grid.s().domain;
  if (!S.contains(0.0)) throw ParamError("translational check needs 0 in the S domain");
  if (!J.contains(1.0)) throw ParamError("translational check needs 1 in the J domain");

  ResidualAccumulator cocycle("cocycle");
  std::size_t skipped = 0;
  for (double l : lams) {
    for (double s : ss) {
      const double first = eta.eval(l, s);
      if (!S.contains(first)) {
        throw DomainError("eta(" + std::to_string(l) + ", " + std::to_string(s) + ") = " +
                          std::to_string(first) + " leaves S = " + S.to_string());
      }
      for (double m : lams) {
        if (!J.contains(l * m)) {
          ++skipped;
          continue;
        }
        const double direct = eta.eval(l * m, s);
        const double composed = eta.eval(m, first);
        cocycle.add(relative_residual(direct, composed),
                    {{"lambda", l}, {"lambda2", m}, {"s", s}});
      }
    }
  }
  if (skipped > 0) {
    cocycle.note(std::to_string(skipped) + " (lambda, lambda2) pairs skipped: product outside J");
  }

  ResidualAccumulator zero("boundary_zero");
  for (double l : lams) zero.add(std::abs(eta.eval(l, 0.0)), {{"lambda", l}, {"s", 0.0}});
  ResidualAccumulator identity("boundary_identity");
  for (double s : ss) identity.add(std::abs(eta.eval(1.0, s) - s), {{"lambda", 1.0}, {"s", s}});

  return ResidualReport::combine(
      "mult_translational",
      {cocycle.finish(tol, false), zero.finish(tol), identity.finish(tol)}, tol);
}

ExtractedH extract_H(const EtaMap& eta, double s_star, const Grid& j_grid, double tol) {
  const auto& lams = j_grid.lambdas();
  if (lams.size() < 2) throw ParamError("extract_H needs at least two lambda samples");
  std::vector<double> values;
  values.reserve(lams.size());
  for (double l : lams) values.push_back(eta.eval(l, s_star));
  const bool up = values[1] > values[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
      throw NotInvertibleError("lambda -> eta(lambda, " + std::to_string(s_star) +
                               ") is not strictly monotone near lambda = " +
                               std::to_string(lams[i]));
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const auto& ss = j_grid.ss();
  if (ss.front() < *lo_it || ss.back() > *hi_it) {
    throw NotInvertibleError("eta(., " + std::to_string(s_star) + ") covers [" +
                             std::to_string(*lo_it) + ", " + std::to_string(*hi_it) +
                             "], not the sampled S hull");
  }

  ScaleFunction H = ScaleFunction::table(lams, values);
  const EtaMap rebuilt = EtaMap::conjugate(H);
  ResidualAccumulator acc("reconstruction");
  for (double l : linspace(lams.front(), lams.back(), std::min<std::size_t>(64, lams.size()))) {
    for (double s : ss) {
      try {
        acc.add(relative_residual(eta.eval(l, s), rebuilt.eval(l, s)), {{"lambda", l}, {"s", s}});
      } catch (const DomainError&) {
        acc.exclude();
      } catch (const RangeError&) {
        acc.exclude();
      }
    }
  }
  return {std::move(H), acc.finish(tol, false)};
}

EtaMap conjugate_eta(const ScaleFunction& H) { return EtaMap::conjugate(H); }

ResidualReport compare_eta(const EtaMap& expected, const EtaMap& actual, const Grid& grid,
                           double tol) {
  ResidualAccumulator acc("eta_agreement");
  for (double l : grid.lambdas()) {
    for (double s : grid.ss()) {
      try {
        acc.add(relative_residual(expected.eval(l, s), actual.eval(l, s)),
                {{"lambda", l}, {"s", s}});
      } catch (const DomainError&) {
        acc.exclude();
      } catch (const RangeError&) {
        acc.exclude();
      }
    }
  }
  return acc.finish(tol);
}

std::pair<GammaMap, ResidualReport> derive_gamma(const GammaMap& gamma, const ScaleFunction& H,
                                                 const Grid& grid, double tol) {
  const double base = H.invert(1.0);
  if (base == 0.0) throw DivisionError("derive_gamma: H^{-1}(1) = 0");
  const ScaleFunction kappa =
      ScaleFunction::custom("gamma(., 1)", [gamma](double l) { return gamma.eval(l, 1.0); });
  const ScaleFunction h = ScaleFunction::custom(
      "H^{-1}(s)/H^{-1}(1)", [H, base](double s) { return H.invert(s) / base; }, H.range());
  GammaMap derived = GammaMap::ratio_form(kappa, h);

  ResidualAccumulator acc("derive_gamma");
  std::size_t vanished = 0;
  for (double l : grid.lambdas()) {
    for (double s : grid.ss()) {
      try {
        acc.add(relative_residual(gamma.eval(l, s), derived.eval(l, s)),
                {{"lambda", l}, {"s", s}});
      } catch (const DivisionError&) {
        ++vanished;
        acc.exclude();
      } catch (const DomainError&) {
        acc.exclude();
      } catch (const RangeError&) {
        acc.exclude();
      }
    }
  }
  if (vanished > 0) {
    acc.note(std::to_string(vanished) + " points excluded where kappa(h(s)) = 0");
  }
  return {std::move(derived), acc.finish(tol)};
}

ResidualReport phi_consistency(const ScaleFunction& phi, const EtaMap& eta, const Grid& grid,
                               double tol) {
  ResidualAccumulator acc("phi_consistency");
  for (double l : grid.lambdas()) {
    for (double s : grid.ss()) {
      acc.add(relative_residual(phi.eval(s), phi.eval(eta.eval(l, s))),
              {{"lambda", l}, {"s", s}});
    }
  }
  return acc.finish(tol);
}

}  // namespace simlaw
