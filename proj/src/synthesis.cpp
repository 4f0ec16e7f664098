#include "mmo/synthesis.hpp"

#include "mmo/associated_pam.hpp"
#include "mmo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmo {

namespace {

CanonicalParams with_rho(const RhoSpec& rho) {
    CanonicalParams p;
    p.rho = rho;
    return p;
}

Eigen::Vector2d solve_2x2(const Eigen::Matrix2d& m, const Eigen::Vector2d& rhs, const char* what) {
    const double det = m.determinant();
    if (!std::isfinite(det) || std::abs(det) < kSingularThreshold) {
        std::ostringstream os;
        os << what << " is singular (determinant " << det << ")";
        throw SingularSystem(os.str());
    }
    return m.partialPivLu().solve(rhs);
}

// Offsets (a12, a22) of the associated PAM at the given (kappa, lambda).
Eigen::Vector2d offsets(CanonicalParams params, double kappa, double lambda, const ManifoldGeometry& geom) {
    params.kappa = kappa;
    params.lambda = lambda;
    const auto pam = associated_pam(params, geom);
    return {pam.a12, pam.a22};
}

}  // namespace

Eigen::Matrix2d slope_matrix(const RhoSpec& rho, const ManifoldGeometry& g) {
    const auto params = with_rho(rho);
    auto Q = [&](double x) { return eval_Q(params, x); };
    // Contribution of one segment s -> e: (Q(e)^2 - Q(s)^2)/2 and Q(e) - Q(s).
    auto path = [&](double s1, double e1, double s2, double e2) {
        const double qs1 = Q(s1), qe1 = Q(e1), qs2 = Q(s2), qe2 = Q(e2);
        return Eigen::RowVector2d(0.5 * (qe1 * qe1 - qs1 * qs1 + qe2 * qe2 - qs2 * qs2), qe1 - qs1 + qe2 - qs2);
    };
    Eigen::Matrix2d a;
    a.row(0) = path(g.xhat4, g.x1, g.xhat1, g.x4);
    a.row(1) = path(g.x2, g.x3, g.xhat3, g.x4);
    return a;
}

std::pair<double, double> solve_alpha_beta(double a11, double a21, const RhoSpec& rho, const ManifoldGeometry& geom) {
    if (!(a11 > 0.0) || !(a21 > 0.0)) {
        throw DomainError("target slopes must be strictly positive");
    }
    const Eigen::Vector2d ab = solve_2x2(slope_matrix(rho, geom), {std::log(a11), std::log(a21)}, "slope system");
    return {ab(0), ab(1)};
}

std::pair<double, double> solve_kappa_lambda(double a12, double a22, double alpha, double beta, const RhoSpec& rho,
                                             const ManifoldGeometry& geom) {
    CanonicalParams params = with_rho(rho);
    params.alpha = alpha;
    params.beta = beta;
    const Eigen::Vector2d base = offsets(params, 0.0, 0.0, geom);
    Eigen::Matrix2d m;
    m.col(0) = offsets(params, 1.0, 0.0, geom) - base;
    m.col(1) = offsets(params, 0.0, 1.0, geom) - base;
    const Eigen::Vector2d kl = solve_2x2(m, Eigen::Vector2d(a12, a22) - base, "offset system");
    return {kl(0), kl(1)};
}

double synthesis_residual(const CanonicalParams& params, const PamCoefficients& target, const ManifoldGeometry& geom) {
    const auto got = associated_pam(params, geom);
    return std::max({relative_gap(got.a11, target.a11), relative_gap(got.a12, target.a12),
                     relative_gap(got.a21, target.a21), relative_gap(got.a22, target.a22)});
}

CanonicalParams synthesize(const PamCoefficients& target, const RhoSpec& rho) {
    target.validate();
    CanonicalParams out = with_rho(rho);
    const auto geom = compute_geometry(out);
    check_rho_regular(rho, geom.xhat4, geom.xhat1);
    std::tie(out.alpha, out.beta) = solve_alpha_beta(target.a11, target.a21, rho, geom);
    std::tie(out.kappa, out.lambda) = solve_kappa_lambda(target.a12, target.a22, out.alpha, out.beta, rho, geom);
    const double residual = synthesis_residual(out, target, geom);
    if (!(residual <= kSynthesisTolerance)) {
        std::ostringstream os;
        os << "round trip misses the target PAM by " << residual << " (relative)";
        throw SynthesisVerificationFailure(os.str());
    }
    return out;
}

}  // namespace mmo
