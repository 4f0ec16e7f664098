#pragma once

// Inverse direction: choose (alpha, beta, kappa, lambda) so that the canonical
// field's associated PAM equals a target. Slopes depend on (alpha, beta) only,
// through ln a = A (alpha, beta)^T; offsets are then affine in (kappa, lambda).

#include "mmo/canonical.hpp"
#include "mmo/pam.hpp"

#include <Eigen/Dense>

#include <utility>

namespace mmo {

inline constexpr double kSingularThreshold = 1e-10;
inline constexpr double kSynthesisTolerance = 1e-8;

/// Rows: LAO path (xhat4 -> x1, xhat1 -> x4), SAO path (x2 -> x3, xhat3 -> x4).
/// Columns: coefficients of alpha and beta in the log-slope.
[[nodiscard]] Eigen::Matrix2d slope_matrix(const RhoSpec& rho, const ManifoldGeometry& geom);

[[nodiscard]] std::pair<double, double> solve_alpha_beta(double a11, double a21, const RhoSpec& rho,
                                                         const ManifoldGeometry& geom);

[[nodiscard]] std::pair<double, double> solve_kappa_lambda(double a12, double a22, double alpha, double beta,
                                                           const RhoSpec& rho, const ManifoldGeometry& geom);

/// Largest relative_gap between the associated PAM of `params` and `target`.
[[nodiscard]] double synthesis_residual(const CanonicalParams& params, const PamCoefficients& target,
                                        const ManifoldGeometry& geom);

/// Full pipeline; throws SynthesisVerificationFailure if the round trip misses 1e-8 relative.
[[nodiscard]] CanonicalParams synthesize(const PamCoefficients& target, const RhoSpec& rho = RhoSpec::fixed_rational());

}  // namespace mmo
