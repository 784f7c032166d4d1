#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rfcomp/error.hpp"
#include "rfcomp/quadrature.hpp"
#include "rfcomp/reference_corpus.hpp"
#include "rfcomp/synthesis.hpp"

using namespace rfcomp;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

std::vector<double> rad(std::initializer_list<double> deg) {
  std::vector<double> r;
  for (double d : deg) r.push_back(d * kDeg);
  return r;
}
}  // namespace

TEST_CASE("Gram matrix agrees with direct quadrature") {
  for (const Method m : {Method::fsm, Method::delta_mod}) {
    const BasisSpec basis{m, {0.7, 2.9, 6.1, 9.4}, 0.35};
    const auto phi = gram_matrix(basis);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double ref = quad::adaptive_simpson(
            [&](double e) {
              return basis_function(m, basis.gammas[i], e) * basis_function(m, basis.gammas[j], e);
            },
            0.65, 1.35, 1e-13);
        CHECK(phi(i, j) == Approx(ref).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("right-hand side quadratures agree") {
  const BasisSpec basis{Method::fsm, {0.86, 3.43, 6.44}, 0.5};
  const auto t = default_target(Method::fsm, kPi / 2);
  const auto a = gram_rhs(basis, t, RhsQuadrature::adaptive_simpson);
  const auto b = gram_rhs(basis, t, RhsQuadrature::gauss_legendre);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("delta-modulation heuristic amplitudes") {
  const auto a = gram_solve({Method::delta_mod, rad({90, 270}), 0.5},
                            default_target(Method::delta_mod, kPi / 2));
  CHECK(a[0] / kDeg == Approx(105.5).epsilon(0.1 / 105.5));
  CHECK(std::abs(a[1] / kDeg - 16.7) < 0.1);
  // Single term: phi11 = d + sin(pi d)/pi, v1 = 2 theta sin(g) sin(g d)/g at g = pi/2.
  const auto one = gram_solve({Method::delta_mod, rad({90}), 0.5},
                              default_target(Method::delta_mod, kPi / 2));
  const double closed = 2 * std::sin(kPi / 4) / (0.5 + 1 / kPi);
  CHECK(one[0] == Approx(closed).epsilon(1e-12));
  CHECK(std::abs(one[0] / kDeg - 99.02) < 0.05);
}

TEST_CASE("Fourier-synthesis two-term amplitudes") {
  const auto a = gram_solve({Method::fsm, rad({49.3, 196.5}), 0.5},
                            default_target(Method::fsm, kPi / 2));
  CHECK(std::abs(a[0] / kDeg - 187.3) < 0.3);
  CHECK(std::abs(a[1] / kDeg - 33.8) < 0.3);
}

TEST_CASE("delta-modulation heuristic amplitudes for every listed size") {
  for (int n = 2; n <= 4; ++n) {
    const auto& ref = reference_design(Method::delta_mod, Selection::heuristic, n);
    std::vector<double> g;
    for (double d : ref.gammas_deg) g.push_back(d * kDeg);
    const auto a = gram_solve({Method::delta_mod, g, 0.5}, default_target(Method::delta_mod, kPi / 2));
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] / kDeg - ref.alphas_deg[k]) < 0.1);
  }
}

TEST_CASE("solver preconditions") {
  const auto t = default_target(Method::delta_mod, kPi / 2);
  CHECK_THROWS_AS(gram_solve({Method::delta_mod, {}, 0.5}, t), PreconditionError);
  CHECK_THROWS_AS(gram_solve({Method::delta_mod, {1.0, 1.0}, 0.5}, t), PreconditionError);
  CHECK_THROWS_AS(gram_solve({Method::delta_mod, {1.0}, 1.5}, t), PreconditionError);
  try {
    gram_solve({Method::delta_mod, {1.0, 1.0 + 1e-9}, 0.5}, t);
    FAIL("expected IllConditionedError");
  } catch (const IllConditionedError& e) {
    CHECK(std::string(e.what()).find("ill-conditioned") != std::string::npos);
  }
}

TEST_CASE("effective profile evaluation") {
  const BasisSpec dm{Method::delta_mod, rad({90}), 0.5};
  CHECK(effective_profile(dm, rad({90}))(1.0) == Approx(kPi / 2));
  const BasisSpec fs{Method::fsm, {0.8604}, 0.5};
  CHECK(effective_profile(fs, std::vector<double>{1.0})(1.0) == Approx(std::cos(0.8604)));
  const auto zero = effective_profile(fs, std::vector<double>{0.0});
  CHECK(zero(0.7) == 0.0);
  CHECK_THROWS_AS(effective_profile(fs, std::vector<double>{1.0, 2.0}), PreconditionError);
}

TEST_CASE("residual functional") {
  // A target inside the span is reproduced exactly.
  const BasisSpec basis{Method::delta_mod, {2.0, 5.0}, 0.5};
  const TargetProfile in_span{[](double e) { return 0.3 * std::sin(2.0 * e); }};
  CHECK(residual_functional(basis, in_span) < 1e-12);

  const double r2 = residual_functional({Method::delta_mod, rad({90, 270}), 0.5},
                                        default_target(Method::delta_mod, kPi / 2));
  CHECK(r2 == Approx(0.0201).epsilon(0.02));

  const auto t = default_target(Method::fsm, kPi / 2);
  const double one = residual_functional({Method::fsm, {0.860}, 0.5}, t);
  const double two = residual_functional({Method::fsm, {0.860, 3.426}, 0.5}, t);
  CHECK(two > 0.0);
  CHECK(two < one);
}

TEST_CASE("Gram amplitudes are optimal against random perturbations") {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> n(0.0, 0.02);
  for (const Method m : {Method::fsm, Method::delta_mod}) {
    const BasisSpec basis{m, {1.2, 4.1, 7.3}, 0.5};
    const auto t = default_target(m, kPi / 2);
    const auto a = gram_solve(basis, t);
    const double best = profile_residual(basis, a, t);
    for (int i = 0; i < 100; ++i) {
      auto b = a;
      for (double& v : b) v += n(rng);
      CHECK(profile_residual(basis, b, t) >= best - 1e-12);
    }
  }
}

TEST_CASE("state error of the ideal profile") {
  // Perfect profile: theta everywhere.
  const BasisSpec basis{Method::delta_mod, {kPi / 2}, 0.5};
  CHECK(hamiltonian_state_error(basis, std::vector<double>{0.0}, Vec3(0, 0, 1)) == 0.0);
  const double e3 = hamiltonian_state_error({Method::delta_mod, rad({90, 270, 450}), 0.5},
                                            std::vector<double>{105.0 * kDeg, 18.7 * kDeg, 4.2 * kDeg});
  CHECK(e3 > 0.0);
  const auto& h3 = reference_design(Method::delta_mod, Selection::heuristic, 3);
  std::vector<double> a3;
  for (double d : h3.alphas_deg) a3.push_back(d * kDeg);
  CHECK(hamiltonian_state_error({Method::delta_mod, rad({90, 270, 450}), 0.5}, a3) ==
        Approx(0.0029).epsilon(0.05));
  const auto& f2 = reference_design(Method::fsm, Selection::heuristic, 2);
  std::vector<double> g2, a2;
  for (double d : f2.gammas_deg) g2.push_back(d * kDeg);
  for (double d : f2.alphas_deg) a2.push_back(d * kDeg);
  CHECK(profile_residual({Method::fsm, g2, 0.5}, a2, default_target(Method::fsm, kPi / 2)) ==
        Approx(0.068).epsilon(0.02));
}

TEST_CASE("residual model matches the reference solve") {
  const ResidualModel model(Method::fsm, 0.5, default_target(Method::fsm, kPi / 2));
  const std::vector<double> g = {0.9, 3.3, 6.6};
  const auto fit = model.fit(g);
  const BasisSpec basis{Method::fsm, g, 0.5};
  const auto a = gram_solve(basis, model.target());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(fit.alphas[k] == Approx(a[k]).epsilon(1e-10));
  CHECK(fit.residual == Approx(profile_residual(basis, a, model.target())).epsilon(1e-10));
}
