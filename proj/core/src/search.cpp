#include "rfcomp/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "rfcomp/error.hpp"

namespace rfcomp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, std::span<const double> x, long& evaluations) {
  ++evaluations;
  try {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  } catch (const IllConditionedError&) {
    return kInf;
  }
}

void normalize(std::vector<double>& x, double floor) {
  for (double& v : x) v = std::max(v, floor);
  std::sort(x.begin(), x.end());
}

double upper_frequency(int n) { return (2.0 * n + 2.0) * kPi / 2.0; }

ResidualModel make_model(Method method, double theta_deg, double delta) {
  return ResidualModel(method, delta, default_target(method, theta_deg * kDeg),
                       RhsQuadrature::gauss_legendre);
}

// Fills amplitudes, residual and state error for frequencies `gammas`.
SearchResult finish(Method method, double theta_deg, double delta, Selection selection,
                    std::uint64_t seed, std::vector<double> gammas) {
  std::sort(gammas.begin(), gammas.end());
  const BasisSpec basis{method, gammas, delta};
  const TargetProfile target = default_target(method, theta_deg * kDeg);
  SearchResult r;
  r.gammas = gammas;
  r.alphas = gram_solve(basis, target);
  r.residual = profile_residual(basis, r.alphas, target);
  const double theta = theta_deg * kDeg;
  r.state_error =
      hamiltonian_state_error(basis, r.alphas, Vec3(std::sin(theta), 0.0, std::cos(theta)));
  r.design.method = method;
  r.design.theta_deg = theta_deg;
  r.design.delta = delta;
  r.design.selection = selection;
  r.design.seed = seed;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    r.design.gammas_deg.push_back(gammas[k] / kDeg);
    r.design.alphas_deg.push_back(r.alphas[k] / kDeg);
  }
  return r;
}

void check_arguments(int n, double delta) {
  if (n < 1) throw PreconditionError("search: number of terms must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("search: delta must lie in (0, 1)");
}

}  // namespace

void validate(const SearchOptions& o) {
  if (!(o.fd_step > 0.0) || !(o.step_init > 0.0) || !(o.tol > 0.0) || !(o.min_gamma > 0.0) ||
      !(o.greedy_grid_step > 0.0)) {
    throw PreconditionError("search options: step sizes and tolerances must be positive");
  }
  if (!(o.backtrack_factor > 0.0 && o.backtrack_factor < 1.0)) {
    throw PreconditionError("search options: backtrack factor must lie in (0, 1)");
  }
  if (o.max_iters < 1 || o.starts < 1) {
    throw PreconditionError("search options: max_iters and starts must be >= 1");
  }
}

std::vector<double> heuristic_frequencies(Method method, int n) {
  if (n < 1) throw PreconditionError("heuristic_frequencies: n must be >= 1");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    if (method == Method::delta_mod) {
      g.push_back((2.0 * k + 1.0) * kPi / 2.0);
      continue;
    }
    // cos g - g sin g changes sign exactly once on (k pi, k pi + pi/2).
    auto h = [](double x) { return std::cos(x) - x * std::sin(x); };
    double lo = k * kPi;
    double hi = k * kPi + kPi / 2.0;
    double hlo = h(lo);
    while (hi - lo > 1e-14 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      const double hm = h(mid);
      if ((hm < 0.0) == (hlo < 0.0)) {
        lo = mid;
        hlo = hm;
      } else {
        hi = mid;
      }
    }
    g.push_back(0.5 * (lo + hi));
  }
  return g;
}

std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw PreconditionError("numerical_gradient: step must be positive");
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + h;
    const double up = f(probe);
    probe[k] = x[k] - h;
    const double down = f(probe);
    probe[k] = x[k];
    grad[k] = (up - down) / (2.0 * h);
  }
  return grad;
}

DescentResult descend(const Objective& f, std::vector<double> x0, const SearchOptions& options,
                      double floor) {
  validate(options);
  DescentResult out;
  normalize(x0, floor);
  out.x = std::move(x0);
  out.value = safe_eval(f, out.x, out.evaluations);
  out.history.push_back(out.value);
  if (!std::isfinite(out.value)) return out;

  const std::size_t n = out.x.size();
  auto gradient = [&](const std::vector<double>& x) {
    out.evaluations += 2 * static_cast<long>(n);
    return numerical_gradient(
        [&](std::span<const double> p) {
          try {
            return f(p);
          } catch (const IllConditionedError&) {
            return kInf;
          }
        },
        x, options.fd_step);
  };

  std::vector<double> g = gradient(out.x);
  std::vector<double> prev_x, prev_g;
  double step = 0.0;
  for (out.iterations = 0; out.iterations < options.max_iters; ++out.iterations) {
    const double gnorm2 = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    if (!std::isfinite(gnorm2)) break;
    if (gnorm2 == 0.0) {
      out.converged = true;
      break;
    }
    // Barzilai-Borwein trial step, falling back to a fixed trial length.
    if (!prev_x.empty()) {
      double ss = 0.0, sy = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double s = out.x[k] - prev_x[k];
        const double y = g[k] - prev_g[k];
        ss += s * s;
        sy += s * y;
      }
      step = sy > 0.0 ? ss / sy : 2.0 * step;
    } else {
      step = options.step_init / std::sqrt(gnorm2);
    }

    std::vector<double> trial(n);
    double trial_value = kInf;
    bool accepted = false;
    for (int bt = 0; bt < 200; ++bt) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = out.x[k] - step * g[k];
      normalize(trial, floor);
      double decrease = 0.0;
      for (std::size_t k = 0; k < n; ++k) decrease += g[k] * (out.x[k] - trial[k]);
      trial_value = safe_eval(f, trial, out.evaluations);
      if (trial_value <= out.value - 1e-4 * decrease && trial_value <= out.value) {
        accepted = trial != out.x;
        break;
      }
      step *= options.backtrack_factor;
    }
    if (!accepted) {
      out.converged = true;  // no descent left at the finite-difference resolution
      break;
    }
    const double rel = (out.value - trial_value) / std::max(std::abs(out.value), 1e-300);
    prev_x = std::move(out.x);
    prev_g = std::move(g);
    out.x = std::move(trial);
    out.value = trial_value;
    out.history.push_back(out.value);
    g = gradient(out.x);
    if (rel < options.tol) {
      out.converged = true;
      ++out.iterations;
      break;
    }
  }
  return out;
}

SearchResult heuristic_search(Method method, int n, double theta_deg, double delta) {
  check_arguments(n, delta);
  return finish(method, theta_deg, delta, Selection::heuristic, 0,
                heuristic_frequencies(method, n));
}

SearchResult greedy_search(Method method, int n, double theta_deg, double delta,
                           const SearchOptions& options) {
  check_arguments(n, delta);
  validate(options);
  const ResidualModel model = make_model(method, theta_deg, delta);
  std::vector<double> fixed;
  long evaluations = 0;
  bool all_converged = true;

  for (int k = 0; k < n; ++k) {
    const Objective f1 = [&](std::span<const double> x) {
      std::vector<double> g = fixed;
      g.push_back(x[0]);
      std::sort(g.begin(), g.end());
      for (std::size_t i = 1; i < g.size(); ++i) {
        if (!(g[i] > g[i - 1])) return kInf;
      }
      return model.fit(g).residual;
    };
    DescentResult best;
    best.value = kInf;
    const double hi = upper_frequency(n);
    for (double start = options.min_gamma; start <= hi + 1e-12; start += options.greedy_grid_step) {
      DescentResult r = descend(f1, {start}, options, options.min_gamma);
      evaluations += r.evaluations;
      if (r.value < best.value) best = std::move(r);
    }
    if (!std::isfinite(best.value)) {
      throw IllConditionedError("greedy_search: every candidate frequency was ill-conditioned");
    }
    all_converged = all_converged && best.converged;
    fixed.push_back(best.x[0]);
    if (!best.converged) {
      SearchResult partial = finish(method, theta_deg, delta, Selection::greedy, options.seed, fixed);
      partial.evaluations = evaluations;
      partial.converged = false;
      throw ConvergenceError("greedy_search: descent did not converge within max_iters",
                             std::move(partial));
    }
  }
  SearchResult r = finish(method, theta_deg, delta, Selection::greedy, options.seed, fixed);
  r.evaluations = evaluations;
  r.converged = all_converged;
  return r;
}

SearchResult gradient_search(Method method, int n, double theta_deg, double delta,
                             const SearchOptions& options) {
  check_arguments(n, delta);
  validate(options);
  const ResidualModel model = make_model(method, theta_deg, delta);
  const Objective f = [&](std::span<const double> x) {
    std::vector<double> g(x.begin(), x.end());
    std::sort(g.begin(), g.end());
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] > g[i - 1])) return kInf;
    }
    return model.fit(g).residual;
  };

  // Start 0 is the heuristic set, start 1 the greedy result; the rest are
  // drawn uniformly from the seed.
  std::vector<std::vector<double>> starts;
  starts.push_back(heuristic_frequencies(method, n));
  try {
    starts.push_back(greedy_search(method, n, theta_deg, delta, options).gammas);
  } catch (const ConvergenceError& e) {
    starts.push_back(e.best().gammas);
  } catch (const IllConditionedError&) {
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.2, upper_frequency(n));
  for (int s = 0; s < options.starts; ++s) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = uniform(rng);
    std::sort(x.begin(), x.end());
    starts.push_back(std::move(x));
  }

  DescentResult best;
  best.value = kInf;
  long evaluations = 0;
  for (auto& x0 : starts) {
    DescentResult r = descend(f, std::move(x0), options, options.min_gamma);
    evaluations += r.evaluations;
    // Strict comparison keeps the lowest start index on ties.
    if (r.value < best.value) best = std::move(r);
  }
  if (!std::isfinite(best.value)) {
    throw IllConditionedError("gradient_search: every start failed the conditioning guard");
  }
  SearchResult r = finish(method, theta_deg, delta, Selection::gradient, options.seed, best.x);
  r.evaluations = evaluations;
  r.converged = best.converged;
  return r;
}

SearchResult run_search(Method method, int n, double theta_deg, double delta,
                        Selection selection, const SearchOptions& options) {
  switch (selection) {
    case Selection::heuristic: {
      SearchResult r = heuristic_search(method, n, theta_deg, delta);
      r.design.seed = options.seed;
      return r;
    }
    case Selection::greedy:
      return greedy_search(method, n, theta_deg, delta, options);
    case Selection::gradient:
      return gradient_search(method, n, theta_deg, delta, options);
  }
  return heuristic_search(method, n, theta_deg, delta);
}

}  // namespace rfcomp
