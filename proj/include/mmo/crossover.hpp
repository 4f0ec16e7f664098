#pragma once

// Scans between two synthesised PAMs that share (alpha, beta): (kappa, lambda)
// move linearly from one endpoint to the other while mu is held fixed, and the
// signature is recorded at every grid point.

#include "mmo/canonical.hpp"
#include "mmo/pam.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mmo {

struct CrossoverSpec {
    double alpha = 0.0;
    double beta = 0.0;
    RhoSpec rho = RhoSpec::fixed_rational();
    double kappa_from = 0.0, lambda_from = 0.0;
    double kappa_to = 0.0, lambda_to = 0.0;
    double mu = 0.0;
    std::size_t grid = 201;
};

/// Synthesises both endpoints; throws DomainError unless their slopes coincide.
[[nodiscard]] CrossoverSpec crossover_from_endpoints(const PamCoefficients& from, const PamCoefficients& to, double mu,
                                                     std::size_t grid, const RhoSpec& rho = RhoSpec::fixed_rational());

/// Associated PAM of `params` with its mu replaced: a12 = mu, a22 = mu + l.
[[nodiscard]] PamCoefficients pam_at_mu(const CanonicalParams& params, const ManifoldGeometry& geom, double mu);

struct CrossoverPoint {
    double t = 0.0;  ///< position on the segment, 0 at `from`
    double kappa = 0.0;
    double lambda = 0.0;
    PamCoefficients pam;
    std::string signature;           ///< from Z0 = -0.5; empty if no period was found
    std::string signature_positive;  ///< from Z0 = +0.5
};

struct SignatureWindow {
    std::string signature;
    double t_lo = 0.0, t_hi = 0.0;
    double kappa_lo = 0.0, kappa_hi = 0.0;
    double lambda_lo = 0.0, lambda_hi = 0.0;
    std::size_t points = 0;
};

struct CrossoverScan {
    std::vector<CrossoverPoint> points;
    /// Maximal runs of consecutive grid points sharing a signature, in scan order.
    std::vector<SignatureWindow> windows;
};

/// Signature at one (kappa, lambda); grid points are spread over worker threads.
[[nodiscard]] CrossoverPoint crossover_probe(const CrossoverSpec& spec, double kappa, double lambda,
                                             const ManifoldGeometry& geom);
[[nodiscard]] CrossoverScan crossover_scan(const CrossoverSpec& spec);

}  // namespace mmo
