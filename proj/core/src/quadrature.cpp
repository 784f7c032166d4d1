#include "rfcomp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "rfcomp/error.hpp"

namespace rfcomp::quad {

namespace {

double simpson_step(const Integrand& f, double a, double fa, double b, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double fm = f(m);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  // Seed with a few panels so oscillatory integrands cannot fool the first
  // error estimate.
  constexpr int kSeedPanels = 8;
  const double h = (b - a) / kSeedPanels;
  double total = 0.0;
  double x0 = a;
  double f0 = f(a);
  for (int i = 0; i < kSeedPanels; ++i) {
    const double x1 = (i + 1 == kSeedPanels) ? b : a + (i + 1) * h;
    const double f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * f(0.5 * (x0 + x1)) + f1);
    total += simpson_step(f, x0, f0, x1, f1, whole, abs_tol / kSeedPanels, max_depth);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

GaussRule GaussRule::make(double a, double b, int order, int panels) {
  if (order < 1 || panels < 1) {
    throw PreconditionError("GaussRule: order and panels must be positive");
  }
  // Legendre roots by Newton iteration from the Chebyshev guess.
  std::vector<double> x(order), w(order);
  for (int i = 0; i < order; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  GaussRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(order) * panels);
  rule.weights.reserve(rule.nodes.capacity());
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    const double mid = lo + half;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + half * x[i]);
      rule.weights.push_back(half * w[i]);
    }
  }
  return rule;
}

std::vector<double> simpson_weights(std::size_t count, double h) {
  if (count < 3 || count % 2 == 0) {
    throw PreconditionError("simpson_weights: sample count must be odd and >= 3");
  }
  std::vector<double> w(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double c = (i == 0 || i + 1 == count) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] = c * h / 3.0;
  }
  return w;
}

double simpson_samples(std::span<const double> samples, double h) {
  const std::size_t n = samples.size();
  if (n < 3) {
    throw PreconditionError("simpson_samples: need at least 3 samples");
  }
  if (n % 2 == 1) {
    const auto w = simpson_weights(n, h);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * samples[i];
    return s;
  }
  // Even count: 1/3 rule on the first n-3 intervals, 3/8 rule on the last three.
  double s = 0.0;
  const std::size_t head = n - 3;
  if (head >= 3) {
    s += simpson_samples(samples.first(head), h);
  }
  const std::size_t k = n - 4;
  s += 3.0 * h / 8.0 *
       (samples[k] + 3.0 * samples[k + 1] + 3.0 * samples[k + 2] + samples[k + 3]);
  return s;
}

}  // namespace rfcomp::quad
