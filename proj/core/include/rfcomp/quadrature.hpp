#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rfcomp::quad {

using Integrand = std::function<double(double)>;

/// Adaptive Simpson on [a, b] to absolute tolerance `abs_tol`, with
/// Richardson correction on each accepted panel.
double adaptive_simpson(const Integrand& f, double a, double b, double abs_tol = 1e-12,
                        int max_depth = 50);

/// Gauss-Legendre rule mapped onto an interval.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// `order` points per panel, `panels` equal panels over [a, b].
  static GaussRule make(double a, double b, int order, int panels = 1);

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Composite Simpson weights for `count` (odd, >= 3) uniform samples with spacing h.
std::vector<double> simpson_weights(std::size_t count, double h);

/// Simpson integral of uniformly spaced samples. Odd counts use the
/// composite 1/3 rule; even counts (>= 4) finish with a 3/8 panel.
/// Throws PreconditionError for fewer than 3 samples.
double simpson_samples(std::span<const double> samples, double h);

}  // namespace rfcomp::quad
