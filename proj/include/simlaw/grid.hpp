#pragma once

#include <cstddef>
#include <vector>

#include "simlaw/interval.hpp"

namespace simlaw {

/// Sample points inside a domain interval.
struct Axis {
  Interval domain;
  std::vector<double> samples;

  /// `n` evenly spaced samples on [lo, hi]; the domain defaults to [lo, hi].
  static Axis uniform(double lo, double hi, std::size_t n);
  static Axis uniform(double lo, double hi, std::size_t n, Interval domain);
};

/// Finite sampling of the stimulus interval I, the scale-factor interval J
/// and the discriminability interval S.
///
/// Product closure I*J within I is enforced per sample: every (x, lambda)
/// pair with lambda*x outside I is filtered out and counted.
class Grid {
 public:
  Grid(Axis x, Axis lambda, Axis s);

  const Axis& x() const { return x_; }
  const Axis& lambda() const { return lambda_; }
  const Axis& s() const { return s_; }
  const std::vector<double>& xs() const { return x_.samples; }
  const std::vector<double>& lambdas() const { return lambda_.samples; }
  const std::vector<double>& ss() const { return s_.samples; }

  /// True when lambdas()[il] * xs()[ix] lies in I.
  bool closed(std::size_t ix, std::size_t il) const { return closed_[ix * lambda_.samples.size() + il]; }
  std::size_t filtered_pairs() const { return filtered_; }

  Grid with_x(Axis x) const { return Grid(std::move(x), lambda_, s_); }
  Grid with_lambda(Axis lambda) const { return Grid(x_, std::move(lambda), s_); }
  Grid with_s(Axis s) const { return Grid(x_, lambda_, std::move(s)); }

 private:
  Axis x_, lambda_, s_;
  std::vector<bool> closed_;
  std::size_t filtered_ = 0;
};

}  // namespace simlaw
