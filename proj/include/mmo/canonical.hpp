#pragma once

// The canonical slow-fast family
//
//     x' = y - F(x, z)
//     y' = eps J(x)
//     z' = eps [delta G(x) + (z - z0) H(x)]
//
// with a degree-9 polynomial F whose critical manifold y = F(x, z0) has four
// folds, J(x) = 1/2 - x and G, H built from Q(x) = int_0^x rho(s) F_s(s, z0) ds.

#include <array>
#include <string>

namespace mmo {

/// Weight function rho in the definition of Q, G and H.
class RhoSpec {
public:
    enum class Kind { Quadratic, FixedRational };

    /// rho(x) = p + x + q x^2.
    static RhoSpec quadratic(double p = 1.0, double q = 1.0);
    /// rho(x) = 1 / (quartic with denominator 22580479), the choice that makes rho F_x polynomial.
    static RhoSpec fixed_rational();

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] double q() const noexcept { return q_; }

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] double derivative(double x) const noexcept;

    [[nodiscard]] std::string name() const;

    friend bool operator==(const RhoSpec&, const RhoSpec&) = default;

private:
    RhoSpec(Kind k, double p, double q) : kind_(k), p_(p), q_(q) {}
    Kind kind_ = Kind::FixedRational;
    double p_ = 0.0;
    double q_ = 0.0;
};

struct CanonicalParams {
    double alpha = 0.0;
    double beta = 0.0;
    double kappa = 0.0;
    double lambda = 0.0;
    RhoSpec rho = RhoSpec::fixed_rational();
    double z0 = 0.0;

    /// Only z0 = 0 is supported; the family is built around that plane.
    void validate() const;
};

/// Fold abscissas, their heights and the landing abscissas of the fast fibres.
struct ManifoldGeometry {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0, x4 = 0.0;
    double xhat1 = 0.0, xhat3 = 0.0, xhat4 = 0.0;
    double y1 = 0.0, y2 = 0.0, y3 = 0.0, y4 = 0.0;
    /// Left edge of the outer attracting sheet (an extra fold, or the working-interval edge).
    double left_edge = 0.0;
    double z = 0.0;
};

inline constexpr double kWorkingXMin = -3.0;
inline constexpr double kWorkingXMax = 2.0;

// ---------------------------------------------------------------------------
// The polynomial F and its derivatives. Coefficients are exact rationals,
// converted to double once.

[[nodiscard]] double eval_F(double x, double z) noexcept;
[[nodiscard]] double eval_Fx(double x, double z) noexcept;
[[nodiscard]] double eval_Fxx(double x, double z) noexcept;
[[nodiscard]] double eval_Fz(double x, double z) noexcept;
[[nodiscard]] double eval_Fxz(double x, double z) noexcept;

// ---------------------------------------------------------------------------
// Q, J, G, H and the reduced-flow coefficients p, q.

/// Q(x) = int_0^x rho(s) F_s(s, z0) ds. Closed form for quadratic rho,
/// adaptive quadrature (abs tol 1e-12) for the rational rho.
[[nodiscard]] double eval_Q(const CanonicalParams& params, double x);
/// Q'(x) = rho(x) F_x(x, z0).
[[nodiscard]] double eval_dQ(const CanonicalParams& params, double x);

[[nodiscard]] constexpr double eval_J(double x) noexcept { return 0.5 - x; }
[[nodiscard]] double eval_G(const CanonicalParams& params, double x);
[[nodiscard]] double eval_H(const CanonicalParams& params, double x);

/// P(x) = alpha Q^2 / 2 + beta Q; its derivative is the slope density p(x).
[[nodiscard]] double eval_P(const CanonicalParams& params, double x);

struct PQ {
    double p = 0.0;
    double q = 0.0;
};

/// p = H F_x / J and q = G F_x / J with J cancelled. Throws FoldPointEvaluation on a fold.
[[nodiscard]] PQ eval_pq(const CanonicalParams& params, double x);

/// Everything the vector field and its Jacobian need at one abscissa.
struct FieldTerms {
    double Q = 0.0, dQ = 0.0;
    double rho = 0.0, drho = 0.0;
    double J = 0.0;
    double G = 0.0, dG = 0.0;
    double H = 0.0, dH = 0.0;
};

[[nodiscard]] FieldTerms eval_terms(const CanonicalParams& params, double x);

/// Fast-time right-hand side (dx, dy, dz).
[[nodiscard]] std::array<double, 3> eval_vector_field(const CanonicalParams& params, double x, double y, double z,
                                                      double eps, double delta);

// ---------------------------------------------------------------------------
// Geometry

/// Folds of F(., z) on the working interval and the landing abscissas.
/// Throws GeometryFailure if fewer than four simple folds or a projection is missing.
[[nodiscard]] ManifoldGeometry compute_geometry_at(double z);
[[nodiscard]] ManifoldGeometry compute_geometry(const CanonicalParams& params);

/// Throws InvalidRho unless rho is finite and nonzero on [lo, hi].
void check_rho_regular(const RhoSpec& rho, double lo, double hi);

}  // namespace mmo
