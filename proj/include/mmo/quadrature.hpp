#pragma once

#include "mmo/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace mmo {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    /// Accept err <= max(abs_tol, rel_tol * L1), with L1 the integral of |f|; 0 means purely absolute.
    /// Measuring against L1 keeps cancelling integrals from demanding accuracy below roundoff.
    double rel_tol = 0.0;
    /// Bisection depth; 2^13 = 8192 panels keeps us under 10^4 subdivisions.
    unsigned max_depth = 13;
};

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b] (b < a allowed).
/// Throws QuadratureFailure when the embedded error estimate exceeds the tolerance.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
    using boost::math::quadrature::gauss_kronrod;
    if (a == b) {
        return 0.0;
    }
    double err = 0.0;
    double l1 = 0.0;
    // One 15-point panel first; most integrands here are smooth enough to stop there.
    double value = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err, &l1);
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * l1); };
    if (err > target() && l1 > 0.0) {
        // boost's tolerance is relative to the L1 norm; convert the absolute target.
        const double rel = std::max(0.5 * target() / l1, 1e-15);
        value = gauss_kronrod<double, 15>::integrate(f, a, b, opts.max_depth, rel, &err, &l1);
    }
    if (!std::isfinite(value) || err > target()) {
        throw QuadratureFailure("adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                                "] missed tolerance (error estimate " + std::to_string(err) + ", value " + std::to_string(value) + ")");
    }
    return value;
}

}  // namespace mmo
