#include "rfcomp/synthesis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "rfcomp/error.hpp"

namespace rfcomp {

namespace {

// Composite Gauss-Legendre rule for residual integrals. Integrands are
// trigonometric with frequencies up to ~2 max(gamma); 4 panels of 20 nodes
// resolve them to machine precision for gamma up to ~20 rad.
constexpr int kGaussOrder = 20;
constexpr int kGaussPanels = 4;

// Integral of cos(k eps) over [1 - delta, 1 + delta].
double cos_integral(double k, double delta) {
  const double x = k * delta;
  const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 + x * x * x * x / 120.0
                                         : std::sin(x) / x;
  return 2.0 * delta * std::cos(k) * sinc;
}

std::string describe_pair(const BasisSpec& basis) {
  std::size_t best = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < basis.gammas.size(); ++i) {
    const double d = basis.gammas[i] - basis.gammas[i - 1];
    if (d < gap) {
      gap = d;
      best = i;
    }
  }
  std::ostringstream os;
  os.precision(6);
  if (basis.gammas.size() < 2) {
    os << "frequency " << basis.gammas.front() << " rad";
  } else {
    os << "frequencies " << basis.gammas[best - 1] << " and " << basis.gammas[best] << " rad";
  }
  return os.str();
}

Eigen::VectorXd solve_checked(const BasisSpec& basis, const Eigen::MatrixXd& phi,
                              const Eigen::VectorXd& rhs, double max_condition) {
  // Phi is symmetric positive semidefinite, so its condition number is the
  // eigenvalue ratio.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(phi, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const double cond = ev(0) > 0.0 ? ev(ev.size() - 1) / ev(0)
                                  : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "Gram matrix is ill-conditioned (cond " << cond << ") near " << describe_pair(basis);
    throw IllConditionedError(os.str());
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(phi);
  Eigen::VectorXd alpha = ldlt.solve(rhs);
  // One step of iterative refinement tightens the normal-equation residual.
  alpha += ldlt.solve(rhs - phi * alpha);
  return alpha;
}

}  // namespace

void validate(const BasisSpec& basis) {
  if (basis.gammas.empty()) throw PreconditionError("basis has no frequencies");
  for (std::size_t i = 0; i < basis.gammas.size(); ++i) {
    if (!(basis.gammas[i] > 0.0)) throw PreconditionError("basis frequencies must be positive");
    if (i > 0 && !(basis.gammas[i] > basis.gammas[i - 1])) {
      throw PreconditionError("basis frequencies must be strictly ascending");
    }
  }
  if (!(basis.delta > 0.0 && basis.delta < 1.0)) {
    throw PreconditionError("basis delta must lie in (0, 1)");
  }
}

TargetProfile default_target(Method method, double theta_rad) {
  if (method == Method::fsm) {
    return {[theta_rad](double eps) { return theta_rad / eps; }};
  }
  return {[theta_rad](double) { return theta_rad; }};
}

double basis_function(Method method, double gamma, double eps) {
  return method == Method::fsm ? std::cos(gamma * eps) : std::sin(gamma * eps);
}

Eigen::MatrixXd gram_matrix(const BasisSpec& basis) {
  validate(basis);
  const auto n = static_cast<Eigen::Index>(basis.gammas.size());
  const double sign = basis.method == Method::fsm ? 1.0 : -1.0;
  Eigen::MatrixXd phi(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double a = basis.gammas[static_cast<std::size_t>(i)];
      const double b = basis.gammas[static_cast<std::size_t>(j)];
      // cos a cos b = (cos(a-b) + cos(a+b)) / 2; sin a sin b = (cos(a-b) - cos(a+b)) / 2
      const double v =
          0.5 * (cos_integral(a - b, basis.delta) + sign * cos_integral(a + b, basis.delta));
      phi(i, j) = v;
      phi(j, i) = v;
    }
  }
  return phi;
}

Eigen::VectorXd gram_rhs(const BasisSpec& basis, const TargetProfile& target,
                         RhsQuadrature quadrature) {
  validate(basis);
  const double lo = 1.0 - basis.delta;
  const double hi = 1.0 + basis.delta;
  const auto n = static_cast<Eigen::Index>(basis.gammas.size());
  Eigen::VectorXd v(n);
  if (quadrature == RhsQuadrature::adaptive_simpson) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = basis.gammas[static_cast<std::size_t>(i)];
      v(i) = quad::adaptive_simpson(
          [&](double eps) { return basis_function(basis.method, g, eps) * target(eps); }, lo, hi,
          1e-12);
    }
  } else {
    const auto rule = quad::GaussRule::make(lo, hi, kGaussOrder, kGaussPanels);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = basis.gammas[static_cast<std::size_t>(i)];
      v(i) = rule.integrate(
          [&](double eps) { return basis_function(basis.method, g, eps) * target(eps); });
    }
  }
  return v;
}

std::vector<double> gram_solve(const BasisSpec& basis, const TargetProfile& target,
                               const SolveOptions& options) {
  const Eigen::MatrixXd phi = gram_matrix(basis);
  const Eigen::VectorXd rhs = gram_rhs(basis, target, options.quadrature);
  const Eigen::VectorXd alpha = solve_checked(basis, phi, rhs, options.max_condition);
  return {alpha.data(), alpha.data() + alpha.size()};
}

std::function<double(double)> effective_profile(const BasisSpec& basis,
                                                std::span<const double> alphas) {
  if (alphas.size() != basis.gammas.size()) {
    throw PreconditionError("effective_profile: amplitude and frequency counts differ");
  }
  std::vector<double> a(alphas.begin(), alphas.end());
  return [method = basis.method, gammas = basis.gammas, a = std::move(a)](double eps) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * basis_function(method, gammas[k], eps);
    return method == Method::fsm ? eps * s : s;
  };
}

double profile_residual(const BasisSpec& basis, std::span<const double> alphas,
                        const TargetProfile& target) {
  if (alphas.size() != basis.gammas.size()) {
    throw PreconditionError("profile_residual: amplitude and frequency counts differ");
  }
  const auto rule =
      quad::GaussRule::make(1.0 - basis.delta, 1.0 + basis.delta, kGaussOrder, kGaussPanels);
  const double sq = rule.integrate([&](double eps) {
    double s = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      s += alphas[k] * basis_function(basis.method, basis.gammas[k], eps);
    }
    const double r = s - target(eps);
    return r * r;
  });
  return std::sqrt(std::max(0.0, sq));
}

double residual_functional(const BasisSpec& basis, const TargetProfile& target,
                           const SolveOptions& options) {
  const auto alphas = gram_solve(basis, target, options);
  return profile_residual(basis, alphas, target);
}

double hamiltonian_state_error(const BasisSpec& basis, std::span<const double> alphas,
                               const Vec3& target_state, int grid_points) {
  validate(basis);
  const auto f = effective_profile(basis, alphas);
  const EnsembleGrid grid = EnsembleGrid::centered(basis.delta, grid_points);
  StateProfile profile;
  profile.epsilons = grid.points();
  for (double eps : profile.epsilons) {
    const double angle = f(eps);
    profile.states.emplace_back(std::sin(angle), 0.0, std::cos(angle));
  }
  return l2_error(profile, target_state).l2_error;
}

ResidualModel::ResidualModel(Method method, double delta, TargetProfile target,
                             RhsQuadrature quadrature, double max_condition)
    : method_(method),
      delta_(delta),
      target_(std::move(target)),
      quadrature_(quadrature),
      max_condition_(max_condition),
      rule_(quad::GaussRule::make(1.0 - delta, 1.0 + delta, kGaussOrder, kGaussPanels)) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw PreconditionError("ResidualModel: delta must lie in (0, 1)");
  }
  target_at_nodes_.reserve(rule_.nodes.size());
  for (double eps : rule_.nodes) target_at_nodes_.push_back(target_(eps));
}

ResidualModel::Fit ResidualModel::fit(std::span<const double> gammas) const {
  BasisSpec basis{method_, {gammas.begin(), gammas.end()}, delta_};
  const Eigen::MatrixXd phi = gram_matrix(basis);
  const std::size_t m = rule_.nodes.size();
  const auto n = static_cast<Eigen::Index>(gammas.size());

  // Basis sampled at the quadrature nodes, shared by the right-hand side and
  // the residual.
  Eigen::MatrixXd b(static_cast<Eigen::Index>(m), n);
  for (std::size_t j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      b(static_cast<Eigen::Index>(j), k) =
          basis_function(method_, gammas[static_cast<std::size_t>(k)], rule_.nodes[j]);
    }
  }

  Eigen::VectorXd rhs;
  if (quadrature_ == RhsQuadrature::adaptive_simpson) {
    rhs = gram_rhs(basis, target_, RhsQuadrature::adaptive_simpson);
  } else {
    rhs = Eigen::VectorXd::Zero(n);
    for (std::size_t j = 0; j < m; ++j) {
      rhs += (rule_.weights[j] * target_at_nodes_[j]) * b.row(static_cast<Eigen::Index>(j)).transpose();
    }
  }
  const Eigen::VectorXd alpha = solve_checked(basis, phi, rhs, max_condition_);

  double sq = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double r = b.row(static_cast<Eigen::Index>(j)).dot(alpha) - target_at_nodes_[j];
    sq += rule_.weights[j] * r * r;
  }
  return {{alpha.data(), alpha.data() + alpha.size()}, std::sqrt(std::max(0.0, sq))};
}

}  // namespace rfcomp
