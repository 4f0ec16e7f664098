#pragma once

// The PAM associated to a canonical vector field. Along an attracting sheet the
// rescaled coordinate Z = (z - z0) / delta obeys, in the delta -> 0 limit,
//
//     dZ/dx = p(x) Z + q(x),
//
// so each sheet segment contributes an affine map. The LAO branch chains
// S_a1 (xhat4 -> x1) and S_a3 (xhat1 -> x4); the SAO branch chains
// S_a2 (x2 -> x3) and S_a3 (xhat3 -> x4).

#include "mmo/canonical.hpp"
#include "mmo/pam.hpp"

namespace mmo {

enum class Sheet { Sa1, Sa2, Sa3 };

struct SegmentSpec {
    double x_start = 0.0;
    double x_end = 0.0;
    Sheet sheet = Sheet::Sa1;
};

struct AffineMap {
    double slope = 1.0;
    double offset = 0.0;

    [[nodiscard]] double operator()(double z) const noexcept { return slope * z + offset; }
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

enum class SegmentMethod { Quadrature, ClosedForm };

/// outer after inner.
[[nodiscard]] AffineMap compose(const AffineMap& outer, const AffineMap& inner) noexcept;

/// |a - b| / max(1, |a|, |b|): relative for large values, absolute near zero.
[[nodiscard]] double relative_gap(double a, double b) noexcept;

/// Affine map of one sheet segment.
///   slope  = exp(int p),  offset = int q(u) exp(int_u^end p) du.
/// ClosedForm uses P = alpha Q^2/2 + beta Q: slope = exp(vb - va),
/// offset = (kappa + lambda (va + 1)) e^(vb - va) - (kappa + lambda (vb + 1)).
/// With self_check the closed form is compared against quadrature and
/// MethodMismatch is thrown beyond 1e-8 relative.
[[nodiscard]] AffineMap segment_affine(const CanonicalParams& params, const SegmentSpec& seg,
                                       SegmentMethod method = SegmentMethod::ClosedForm, bool self_check = false);

/// The four segments in branch order: LAO inner, LAO outer, SAO inner, SAO outer.
struct BranchSegments {
    SegmentSpec lao_inner, lao_outer, sao_inner, sao_outer;
};
[[nodiscard]] BranchSegments branch_segments(const ManifoldGeometry& geom) noexcept;

[[nodiscard]] PamCoefficients associated_pam(const CanonicalParams& params, const ManifoldGeometry& geom,
                                             SegmentMethod method = SegmentMethod::ClosedForm);

}  // namespace mmo
