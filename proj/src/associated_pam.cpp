#include "mmo/associated_pam.hpp"

#include "mmo/errors.hpp"
#include "mmo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmo {

namespace {

constexpr double kSegmentRelTol = 1e-11;

double p_density(const CanonicalParams& params, double x) {
    const double q = eval_Q(params, x);
    return (params.alpha * q + params.beta) * eval_dQ(params, x);
}

double q_density(const CanonicalParams& params, double x) {
    const double q = eval_Q(params, x);
    const double P = 0.5 * params.alpha * q * q + params.beta * q;
    return (params.kappa + params.lambda * P) * (params.alpha * q + params.beta) * eval_dQ(params, x);
}

AffineMap quadrature_segment(const CanonicalParams& params, const SegmentSpec& seg) {
    const QuadratureOptions opts{1e-12, kSegmentRelTol};
    auto p = [&](double s) { return p_density(params, s); };
    const double log_slope = integrate(p, seg.x_start, seg.x_end, opts);
    auto integrand = [&](double u) { return q_density(params, u) * std::exp(integrate(p, u, seg.x_end, opts)); };
    return {std::exp(log_slope), integrate(integrand, seg.x_start, seg.x_end, opts)};
}

AffineMap closed_form_segment(const CanonicalParams& params, const SegmentSpec& seg) {
    const double va = eval_P(params, seg.x_start);
    const double vb = eval_P(params, seg.x_end);
    const double growth = std::exp(vb - va);
    const double k = params.kappa;
    const double l = params.lambda;
    return {growth, (k + l * (va + 1.0)) * growth - (k + l * (vb + 1.0))};
}

}  // namespace

AffineMap compose(const AffineMap& outer, const AffineMap& inner) noexcept {
    return {outer.slope * inner.slope, outer.slope * inner.offset + outer.offset};
}

double relative_gap(double a, double b) noexcept {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

AffineMap segment_affine(const CanonicalParams& params, const SegmentSpec& seg, SegmentMethod method,
                         bool self_check) {
    if (seg.x_start == seg.x_end) {
        return {};
    }
    if (method == SegmentMethod::Quadrature) {
        return quadrature_segment(params, seg);
    }
    const AffineMap closed = closed_form_segment(params, seg);
    if (self_check) {
        const AffineMap quad = quadrature_segment(params, seg);
        const double gap = std::max(relative_gap(closed.slope, quad.slope), relative_gap(closed.offset, quad.offset));
        if (!(gap <= 1e-8)) {
            std::ostringstream os;
            os << "closed form and quadrature disagree on [" << seg.x_start << ", " << seg.x_end
               << "]: relative gap " << gap;
            throw MethodMismatch(os.str());
        }
    }
    return closed;
}

BranchSegments branch_segments(const ManifoldGeometry& g) noexcept {
    return {
        {g.xhat4, g.x1, Sheet::Sa1},
        {g.xhat1, g.x4, Sheet::Sa3},
        {g.x2, g.x3, Sheet::Sa2},
        {g.xhat3, g.x4, Sheet::Sa3},
    };
}

PamCoefficients associated_pam(const CanonicalParams& params, const ManifoldGeometry& geom, SegmentMethod method) {
    params.validate();
    check_rho_regular(params.rho, geom.xhat4, geom.xhat1);
    const auto segs = branch_segments(geom);
    const AffineMap lao =
        compose(segment_affine(params, segs.lao_outer, method), segment_affine(params, segs.lao_inner, method));
    const AffineMap sao =
        compose(segment_affine(params, segs.sao_outer, method), segment_affine(params, segs.sao_inner, method));
    return {lao.slope, lao.offset, sao.slope, sao.offset};
}

}  // namespace mmo
