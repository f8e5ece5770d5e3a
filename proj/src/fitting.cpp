#include "simlaw/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "simlaw/numeric.hpp"

namespace simlaw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pool-adjacent-violators projection onto non-decreasing sequences.
std::vector<double> isotonic(const std::vector<double>& v) {
  std::vector<double> level;
  std::vector<std::size_t> width;
  for (double x : v) {
    level.push_back(x);
    width.push_back(1);
    while (level.size() > 1 && level[level.size() - 2] > level.back()) {
      const std::size_t w = width[width.size() - 2] + width.back();
      const double merged =
          (level[level.size() - 2] * static_cast<double>(width[width.size() - 2]) +
           level.back() * static_cast<double>(width.back())) /
          static_cast<double>(w);
      level.pop_back();
      width.pop_back();
      level.back() = merged;
      width.back() = w;
    }
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < level.size(); ++i) out.insert(out.end(), width[i], level[i]);
  return out;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

// Knot positions: distinct values when few enough, quantiles otherwise.
std::vector<double> choose_knots(std::vector<double> values, std::size_t count) {
  std::sort(values.begin(), values.end());
  std::vector<double> distinct;
  for (double v : values) {
    if (distinct.empty() || v - distinct.back() > 1e-12 * (1.0 + std::abs(v))) {
      distinct.push_back(v);
    }
  }
  if (distinct.size() <= count) return distinct;
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) {
    const double pos = static_cast<double>(k) * static_cast<double>(distinct.size() - 1) /
                       static_cast<double>(count - 1);
    const double v = distinct[static_cast<std::size_t>(std::lround(pos))];
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

struct Hat {
  std::size_t index;
  double weight_lo, weight_hi;
};

// Piecewise-linear basis weights of `v` on `knots`, clamped to the hull.
Hat hat(const std::vector<double>& knots, double v) {
  if (v <= knots.front()) return {0, 1.0, 0.0};
  if (v >= knots.back()) return {knots.size() - 2, 0.0, 1.0};
  const auto it = std::upper_bound(knots.begin(), knots.end(), v);
  const std::size_t j = static_cast<std::size_t>(it - knots.begin()) - 1;
  const double t = (v - knots[j]) / (knots[j + 1] - knots[j]);
  return {j, 1.0 - t, t};
}

double knot_value(const Hat& h, const std::vector<double>& values) {
  return h.weight_lo * values[h.index] + h.weight_hi * values[h.index + 1];
}

// Lifts ties left by the isotonic projection so the tables stay invertible.
bool make_strict(std::vector<double>& v) {
  bool nudged = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      v[i] = v[i - 1] + 1e-12 * (1.0 + std::abs(v[i - 1]));
      nudged = true;
    }
  }
  return nudged;
}

}  // namespace

SampleSet sample_family(const SensitivityFamily& xi, const Grid& grid) {
  SampleSet out;
  for (double s : grid.ss()) {
    for (double x : grid.xs()) {
      try {
        out.rows.push_back({x, s, xi.eval(x, s)});
      } catch (const DomainError&) {
      }
    }
  }
  return out;
}

PowerFit fit_power_per_s(const SampleSet& samples, double tol) {
  std::map<double, std::vector<std::pair<double, double>>> by_s;
  for (const auto& r : samples.rows) {
    if (!(r.x > 0.0) || !(r.xi > 0.0)) {
      throw NonPositiveError("log-log regression needs x > 0 and xi > 0, got (x=" +
                             std::to_string(r.x) + ", xi=" + std::to_string(r.xi) + ")");
    }
    by_s[r.s].push_back({r.x, r.xi});
  }
  if (by_s.empty()) throw InsufficientDataError("no samples");

  PowerFit out;
  ResidualAccumulator acc("power_fit");
  for (const auto& [s, rows] : by_s) {
    std::vector<double> xs;
    for (const auto& r : rows) xs.push_back(r.first);
    std::sort(xs.begin(), xs.end());
    if (std::unique(xs.begin(), xs.end()) - xs.begin() < 3) {
      throw InsufficientDataError("fewer than three distinct x at s = " + std::to_string(s));
    }
    double mean_u = 0.0, mean_v = 0.0;
    for (const auto& [x, xi] : rows) {
      mean_u += std::log(x);
      mean_v += std::log(xi);
    }
    const double n = static_cast<double>(rows.size());
    mean_u /= n;
    mean_v /= n;
    double suu = 0.0, suv = 0.0;
    for (const auto& [x, xi] : rows) {
      const double du = std::log(x) - mean_u;
      suu += du * du;
      suv += du * (std::log(xi) - mean_v);
    }
    const double rho = suv / suu;
    const double kappa = std::exp(mean_v - rho * mean_u);
    out.s.push_back(s);
    out.kappa.push_back(kappa);
    out.rho.push_back(rho);
    for (const auto& [x, xi] : rows) {
      acc.add(relative_residual(xi, kappa * std::pow(x, rho)), {{"x", x}, {"s", s}});
    }
  }
  out.fit.kind = "powerPerS";
  out.fit.scales = {{"kappa", ScaleFunction::interpolant(out.s, out.kappa)},
                    {"rho", ScaleFunction::interpolant(out.s, out.rho)}};
  out.fit.residual = acc.finish(tol);
  out.fit.iterations = 1;
  out.fit.converged = true;
  return out;
}

PhiFormFit extract_phi_form(const SensitivityFamily& xi, const EtaMap& eta, const GammaMap& gamma,
                            double s_star, const Grid& grid, double tol) {
  const auto& lams = grid.lambdas();
  if (lams.size() < 2) throw ParamError("extract_phi_form needs at least two lambda samples");
  std::vector<double> values;
  for (double l : lams) values.push_back(eta.eval(l, s_star));
  const int direction = values[1] > values[0] ? 1 : -1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (direction > 0 ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
      throw NotInvertibleError("lambda -> eta(lambda, " + std::to_string(s_star) +
                               ") is not strictly monotone near lambda = " +
                               std::to_string(lams[i]));
    }
  }
  const double lo = std::min(values.front(), values.back());
  const double hi = std::max(values.front(), values.back());
  const double l_lo = lams.front(), l_hi = lams.back();

  const auto forward = [eta, s_star](double l) { return eta.eval(l, s_star); };
  const ScaleFunction f = ScaleFunction::custom(
      "eta^{-1}(s, s*)",
      [forward, l_lo, l_hi](double s) { return bisect_monotone(forward, l_lo, l_hi, s, 0.0); },
      Interval::closed(lo, hi), direction, forward);
  const ScaleFunction g = ScaleFunction::custom(
      "gamma(f(s), s*)", [f, gamma, s_star](double s) { return gamma.eval(f.eval(s), s_star); },
      Interval::closed(lo, hi));
  const ScaleFunction Phi = ScaleFunction::custom(
      "xi_{s*}", [xi, s_star](double x) { return xi.eval(x, s_star); }, grid.x().domain);

  ResidualAccumulator acc("phi_form");
  std::size_t outside = 0;
  for (double s : grid.ss()) {
    if (s < lo || s > hi) {
      ++outside;
      continue;
    }
    const double fs = f.eval(s);
    const double gs = g.eval(s);
    for (double x : grid.xs()) {
      if (!grid.x().domain.contains(fs * x)) {
        acc.exclude();
        continue;
      }
      try {
        const double lhs = gs * xi.eval(x, s);
        acc.add(relative_residual(lhs, Phi.eval(fs * x)), {{"x", x}, {"s", s}});
      } catch (const DomainError&) {
        acc.exclude();
      }
    }
  }
  if (outside > 0) {
    acc.note(std::to_string(outside) + " s samples outside eta(J, s*) skipped");
  }
  return {Phi, f, g, acc.finish(tol, false)};
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& fit_kinds() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> kinds = {
      {"weber", {"k"}},
      {"power", {"kappa", "rho"}},
      {"affineA", {"c", "mu", "d"}},
      {"affineB", {"c", "d"}},
      {"affineC", {}},
      {"subCaseI", {"a", "b", "rho", "r"}},
      {"subCaseII", {"a", "c", "rho", "r", "eps"}},
      {"fechExp", {"rho"}},
  };
  return kinds;
}

namespace {

const std::vector<std::string>& param_names(const std::string& kind) {
  for (const auto& [name, params] : fit_kinds()) {
    if (name == kind) return params;
  }
  throw ParamError("fit_family: '" + kind + "' is not a parametric kind");
}

}  // namespace

SensitivityFamily family_from_params(const std::string& kind, const NamedValues& params) {
  const auto& names = param_names(kind);
  ParamMap map;
  for (const auto& [name, value] : params) map[name] = value;
  if (map.size() != names.size()) {
    throw ParamError(kind + " takes " + std::to_string(names.size()) + " parameters");
  }
  return make_family(kind, map);
}

FitResult fit_family(const SampleSet& samples, const std::string& kind, const NamedValues& init,
                     double tol) {
  const auto& names = param_names(kind);
  const std::size_t np = names.size();
  Eigen::VectorXd p(np);
  for (std::size_t j = 0; j < np; ++j) {
    const auto it = std::find_if(init.begin(), init.end(),
                                 [&](const auto& kv) { return kv.first == names[j]; });
    if (it == init.end()) throw ParamError(kind + ": missing initial value for '" + names[j] + "'");
    p[static_cast<Eigen::Index>(j)] = it->second;
  }
  if (init.size() != np) throw ParamError(kind + ": unexpected initial values");

  std::vector<Sample> train, held;
  for (std::size_t i = 0; i < samples.rows.size(); ++i) {
    (i % 5 == 4 ? held : train).push_back(samples.rows[i]);
  }
  if (train.size() < std::max<std::size_t>(np, 1) || held.empty()) {
    throw InsufficientDataError(kind + ": need at least " + std::to_string(std::max<std::size_t>(np, 5)) +
                                " samples");
  }

  const auto named = [&](const Eigen::VectorXd& v) {
    NamedValues out;
    for (std::size_t j = 0; j < np; ++j) out.push_back({names[j], v[static_cast<Eigen::Index>(j)]});
    return out;
  };
  const auto residuals = [&](const Eigen::VectorXd& v, Eigen::VectorXd& r) {
    try {
      const SensitivityFamily fam = family_from_params(kind, named(v));
      r.resize(static_cast<Eigen::Index>(train.size()));
      for (std::size_t i = 0; i < train.size(); ++i) {
        r[static_cast<Eigen::Index>(i)] = fam.eval(train[i].x, train[i].s) - train[i].xi;
      }
      return true;
    } catch (const ParamError&) {
      return false;
    } catch (const DomainError&) {
      return false;
    }
  };

  Eigen::VectorXd r;
  if (!residuals(p, r)) {
    throw ConstraintError(kind + ": initial parameters are infeasible or give non-finite values");
  }
  double scale = 0.0;
  for (const auto& row : train) scale += row.xi * row.xi;
  double cost = r.squaredNorm();
  double mu = 1e-3;
  int increases = 0;
  int iterations = 0;
  bool converged = np == 0;
  bool need_jacobian = true;
  Eigen::MatrixXd J(static_cast<Eigen::Index>(train.size()), static_cast<Eigen::Index>(np));
  Eigen::MatrixXd A;
  Eigen::VectorXd grad;

  while (!converged && iterations < 200) {
    if (cost <= 1e-30 * (1.0 + scale)) {
      converged = true;
      break;
    }
    if (need_jacobian) {
      for (std::size_t j = 0; j < np; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double h = 1e-7 * (1.0 + std::abs(p[jj]));
        Eigen::VectorXd plus = p, minus = p, r_plus, r_minus;
        plus[jj] += h;
        minus[jj] -= h;
        const bool ok_plus = residuals(plus, r_plus);
        const bool ok_minus = residuals(minus, r_minus);
        if (ok_plus && ok_minus) {
          J.col(jj) = (r_plus - r_minus) / (2.0 * h);
        } else if (ok_plus) {
          J.col(jj) = (r_plus - r) / h;
        } else if (ok_minus) {
          J.col(jj) = (r - r_minus) / h;
        } else {
          throw ConstraintError(kind + ": no feasible neighbourhood for '" + names[j] + "'");
        }
      }
      A = J.transpose() * J;
      grad = J.transpose() * r;
      need_jacobian = false;
    }
    ++iterations;
    Eigen::MatrixXd damped = A;
    const double floor = 1e-12 * std::max(A.diagonal().maxCoeff(), 1e-300);
    for (Eigen::Index j = 0; j < damped.rows(); ++j) {
      damped(j, j) += mu * std::max(A(j, j), floor);
    }
    const Eigen::VectorXd step = damped.ldlt().solve(-grad);
    const Eigen::VectorXd trial = p + step;
    Eigen::VectorXd r_trial;
    const bool feasible = step.allFinite() && residuals(trial, r_trial);
    const double trial_cost = feasible ? r_trial.squaredNorm() : kInf;
    if (trial_cost < cost) {
      p = trial;
      r = r_trial;
      cost = trial_cost;
      mu = std::max(mu / 2.0, 1e-15);
      increases = 0;
      need_jacobian = true;
      if (step.norm() < 1e-10 * (1.0 + p.norm())) converged = true;
      continue;
    }
    if (step.norm() < 1e-10 * (1.0 + p.norm()) || (feasible && trial_cost - cost <= 1e-14 * cost)) {
      converged = true;
      break;
    }
    mu *= 2.0;
    if (feasible && ++increases >= 20) {
      throw DivergenceError(kind + ": cost increased on 20 consecutive damped steps");
    }
  }

  FitResult out;
  out.kind = kind;
  out.params = named(p);
  out.iterations = iterations;
  out.converged = converged;
  if (!converged) out.notes.push_back("iteration limit reached before the step norm fell below 1e-10");
  const SensitivityFamily fam = family_from_params(kind, out.params);
  ResidualAccumulator acc("held_out");
  for (const auto& row : held) {
    try {
      acc.add(relative_residual(row.xi, fam.eval(row.x, row.s)), {{"x", row.x}, {"s", row.s}});
    } catch (const DomainError&) {
      acc.exclude();
    }
  }
  out.residual = acc.finish(tol);
  return out;
}

SubtractiveFit fit_scales_subtractive(const SampleSet& samples, std::size_t knot_count,
                                      double tol) {
  if (knot_count < 4) throw ParamError("fit_scales_subtractive: knot count must be at least 4");
  std::vector<double> xi_vals, x_vals;
  for (const auto& r : samples.rows) {
    if (!(r.xi > 0.0)) throw NonPositiveError("subtractive fit needs positive xi values");
    xi_vals.push_back(r.xi);
    x_vals.push_back(r.x);
  }
  const std::vector<double> u_knots = choose_knots(xi_vals, knot_count);
  const std::vector<double> w_knots = choose_knots(x_vals, knot_count);
  if (u_knots.size() < 2 || w_knots.size() < 2) {
    throw InsufficientDataError("subtractive fit needs at least two distinct x and xi values");
  }
  const std::size_t n = samples.rows.size();
  const std::size_t nu = u_knots.size(), nw = w_knots.size();
  std::vector<Hat> hu, hw;
  for (const auto& r : samples.rows) {
    hu.push_back(hat(u_knots, r.xi));
    hw.push_back(hat(w_knots, r.x));
  }
  const auto objective = [&](const std::vector<double>& U, const std::vector<double>& W) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = knot_value(hu[i], U) - knot_value(hw[i], W) - samples.rows[i].s;
      total += e * e;
    }
    return total;
  };
  const auto as_vector = [](const Eigen::VectorXd& v, std::size_t offset, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = v[static_cast<Eigen::Index>(offset + k)];
    return out;
  };

  // Joint linear least squares with u(first knot) = 0.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(nu - 1 + nw));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto put_u = [&](std::size_t k, double w) {
      if (k > 0) M(ii, static_cast<Eigen::Index>(k - 1)) += w;
    };
    put_u(hu[i].index, hu[i].weight_lo);
    put_u(hu[i].index + 1, hu[i].weight_hi);
    M(ii, static_cast<Eigen::Index>(nu - 1 + hw[i].index)) -= hw[i].weight_lo;
    M(ii, static_cast<Eigen::Index>(nu + hw[i].index)) -= hw[i].weight_hi;
    rhs[ii] = samples.rows[i].s;
  }
  const Eigen::VectorXd joint = M.colPivHouseholderQr().solve(rhs);
  std::vector<double> U(nu, 0.0);
  for (std::size_t k = 1; k < nu; ++k) U[k] = joint[static_cast<Eigen::Index>(k - 1)];
  std::vector<double> W = as_vector(joint, nu - 1, nw);

  int rounds = 0;
  bool converged = strictly_increasing(U) && strictly_increasing(W);
  std::vector<double> best_U = U, best_W = W;
  double best = kInf;
  if (!converged) {
    // Alternating monotone refinement starting from the projected joint fit.
    U = isotonic(U);
    W = isotonic(W);
    double previous = objective(U, W);
    best = previous;
    best_U = U;
    best_W = W;
    Eigen::MatrixXd Bu = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(nu));
    Eigen::MatrixXd Bw = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(nw));
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      Bu(ii, static_cast<Eigen::Index>(hu[i].index)) += hu[i].weight_lo;
      Bu(ii, static_cast<Eigen::Index>(hu[i].index + 1)) += hu[i].weight_hi;
      Bw(ii, static_cast<Eigen::Index>(hw[i].index)) += hw[i].weight_lo;
      Bw(ii, static_cast<Eigen::Index>(hw[i].index + 1)) += hw[i].weight_hi;
    }
    const auto qr_u = Bu.colPivHouseholderQr();
    const auto qr_w = Bw.colPivHouseholderQr();
    while (rounds < 100) {
      ++rounds;
      Eigen::VectorXd target(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        target[static_cast<Eigen::Index>(i)] = samples.rows[i].s + knot_value(hw[i], W);
      }
      U = isotonic(as_vector(qr_u.solve(target), 0, nu));
      for (std::size_t i = 0; i < n; ++i) {
        target[static_cast<Eigen::Index>(i)] = knot_value(hu[i], U) - samples.rows[i].s;
      }
      W = isotonic(as_vector(qr_w.solve(target), 0, nw));
      const double current = objective(U, W);
      if (current < best) {
        best = current;
        best_U = U;
        best_W = W;
      }
      if (previous - current < 1e-12) {
        converged = true;
        break;
      }
      previous = current;
    }
  }

  const auto finish = [&](std::vector<double> Uf, std::vector<double> Wf) {
    const double shift = Uf.front();
    for (double& v : Uf) v -= shift;
    for (double& v : Wf) v -= shift;
    SubtractiveFit fit{ScaleFunction::identity(), ScaleFunction::identity(), {}};
    fit.fit.kind = "subtractive";
    if (make_strict(Uf) || make_strict(Wf)) {
      fit.fit.notes.push_back("flat scale segments lifted to keep the tables strictly increasing");
    }
    fit.u = ScaleFunction::table(u_knots, Uf);
    fit.w = ScaleFunction::table(w_knots, Wf);
    fit.fit.scales = {{"u", fit.u}, {"w", fit.w}};
    fit.fit.params = {{"u_knots", static_cast<double>(nu)}, {"w_knots", static_cast<double>(nw)}};
    ResidualAccumulator acc("subtractive");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = samples.rows[i];
      acc.add(relative_residual(row.s, knot_value(hu[i], Uf) - knot_value(hw[i], Wf)),
              {{"x", row.x}, {"s", row.s}});
    }
    fit.fit.residual = acc.finish(tol);
    fit.fit.iterations = rounds == 0 ? 1 : rounds;
    if (!fit.fit.residual.pass) fit.fit.notes.push_back("no subtractive representation found");
    return fit;
  };

  if (!converged) {
    SubtractiveFit partial = finish(best_U, best_W);
    partial.fit.converged = false;
    throw NonConvergenceError("subtractive scale fit did not settle in 100 rounds", partial.fit);
  }
  SubtractiveFit out = finish(U, W);
  out.fit.converged = true;
  return out;
}

}  // namespace simlaw
