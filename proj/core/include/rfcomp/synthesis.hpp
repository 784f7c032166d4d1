#pragma once

// Trigonometric least-squares synthesis of rotation-angle profiles.
//
// FSM elements produce the effective angle eps * sum_k a_k cos(g_k eps), so
// the fitted basis is cos(g_k eps) against the target theta / eps.
// Delta-modulation elements produce sum_k a_k sin(g_k eps) directly, fitted
// against theta. Inner products run over [1 - delta, 1 + delta].

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rfcomp/bloch.hpp"
#include "rfcomp/pulse.hpp"
#include "rfcomp/quadrature.hpp"

namespace rfcomp {

struct BasisSpec {
  Method method = Method::delta_mod;
  std::vector<double> gammas;  // radians, positive, strictly ascending
  double delta = 0.5;
};

/// Throws PreconditionError on an empty basis, non-ascending or non-positive
/// frequencies, or delta outside (0, 1).
void validate(const BasisSpec& basis);

/// Angle profile in radians as a function of eps.
struct TargetProfile {
  std::function<double(double)> evaluator;

  double operator()(double eps) const { return evaluator(eps); }
};

/// theta / eps for FSM, constant theta for delta modulation.
TargetProfile default_target(Method method, double theta_rad);

/// cos(g eps) for FSM, sin(g eps) for delta modulation.
double basis_function(Method method, double gamma, double eps);

/// Gram matrix from closed-form trigonometric integrals.
Eigen::MatrixXd gram_matrix(const BasisSpec& basis);

enum class RhsQuadrature {
  adaptive_simpson,  // absolute tolerance 1e-12
  gauss_legendre,    // fixed composite rule, used inside optimizers
};

Eigen::VectorXd gram_rhs(const BasisSpec& basis, const TargetProfile& target,
                         RhsQuadrature quadrature = RhsQuadrature::adaptive_simpson);

struct SolveOptions {
  RhsQuadrature quadrature = RhsQuadrature::adaptive_simpson;
  double max_condition = 1e12;
};

/// Least-squares amplitudes (radians). Throws IllConditionedError naming the
/// closest frequency pair when cond(Gram) exceeds options.max_condition.
std::vector<double> gram_solve(const BasisSpec& basis, const TargetProfile& target,
                               const SolveOptions& options = {});

/// The rotation angle the elements synthesize: eps * sum a cos(g eps) for
/// FSM, sum a sin(g eps) for delta modulation. Throws on a length mismatch.
std::function<double(double)> effective_profile(const BasisSpec& basis,
                                                std::span<const double> alphas);

/// sqrt of the integral of (sum a_k basis_k - target)^2 for given amplitudes.
double profile_residual(const BasisSpec& basis, std::span<const double> alphas,
                        const TargetProfile& target);

/// profile_residual at the Gram-optimal amplitudes.
double residual_functional(const BasisSpec& basis, const TargetProfile& target,
                           const SolveOptions& options = {});

/// L2 error of the ideal states exp(f(eps) Wy) (0,0,1) against `target_state`,
/// by Simpson quadrature on `grid` (default: 201 points over the basis range).
double hamiltonian_state_error(const BasisSpec& basis, std::span<const double> alphas,
                               const Vec3& target_state = kDefaultTarget, int grid_points = 201);

/// Reusable evaluator for optimizers: fixed method, delta and target, with
/// the target sampled once on a Gauss-Legendre rule.
class ResidualModel {
 public:
  ResidualModel(Method method, double delta, TargetProfile target,
                RhsQuadrature quadrature = RhsQuadrature::gauss_legendre,
                double max_condition = 1e12);

  struct Fit {
    std::vector<double> alphas;  // radians
    double residual = 0.0;       // sqrt of the integrated squared error
  };

  /// Gram-optimal amplitudes and residual. `gammas` must be ascending and
  /// positive. Throws IllConditionedError.
  Fit fit(std::span<const double> gammas) const;

  Method method() const noexcept { return method_; }
  double delta() const noexcept { return delta_; }
  const TargetProfile& target() const noexcept { return target_; }

 private:
  Method method_;
  double delta_;
  TargetProfile target_;
  RhsQuadrature quadrature_;
  double max_condition_;
  quad::GaussRule rule_;
  std::vector<double> target_at_nodes_;
};

}  // namespace rfcomp
