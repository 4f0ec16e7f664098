#include "mmo/canonical.hpp"

#include "mmo/errors.hpp"
#include "mmo/quadrature.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace mmo {

namespace {

struct Rational {
    std::int64_t num;
    std::int64_t den;

    [[nodiscard]] constexpr Rational scaled(std::int64_t k) const { return {num * k, den}; }
    [[nodiscard]] double value() const { return static_cast<double>(static_cast<long double>(num) / den); }
};

// a_k(z) = base_k + slope_k z for k = 2..9, index = k.
constexpr std::int64_t kD = 22580479;
constexpr std::array<Rational, 10> kBase{{
    {0, 1},
    {0, 1},
    {-1, 1},
    {459587, 3 * kD},
    {64963913, 4 * kD},
    {-1224990, 5 * kD},
    {-23361467, 6 * kD},
    {212863, 7 * kD},
    {3558512, 8 * kD},
    {184180, 67741437},
}};
constexpr std::array<Rational, 10> kSlope{{
    {0, 1},
    {0, 1},
    {-1, 16},
    {45620545, 3LL * 361287664},
    {2417921, 4LL * 45160958},
    {-10284179, 5LL * 180643832},
    {-2793109, 6LL * 361287664},
    {751493, 7LL * 90321916},
    {138135, 8LL * 90321916},
    {0, 1},
}};

struct PolyTables {
    std::array<double, 10> base{}, slope{};
    std::array<double, 10> dbase{}, dslope{};    // coefficients of x^(k-1) in F_x
    std::array<double, 10> ddbase{}, ddslope{};  // coefficients of x^(k-2) in F_xx
};

const PolyTables& tables() {
    static const PolyTables t = [] {
        PolyTables p;
        for (std::size_t k = 0; k < 10; ++k) {
            const auto kk = static_cast<std::int64_t>(k);
            p.base[k] = kBase[k].value();
            p.slope[k] = kSlope[k].value();
            p.dbase[k] = kBase[k].scaled(kk).value();
            p.dslope[k] = kSlope[k].scaled(kk).value();
            p.ddbase[k] = kBase[k].scaled(kk * (kk - 1)).value();
            p.ddslope[k] = kSlope[k].scaled(kk * (kk - 1)).value();
        }
        return p;
    }();
    return t;
}

// sum_{k=lo}^{9} (b[k] + s[k] z) x^(k - shift), Horner.
double horner(const std::array<double, 10>& b, const std::array<double, 10>& s, double x, double z, std::size_t lo,
              std::size_t shift) noexcept {
    double acc = 0.0;
    for (std::size_t k = 9; k + 1 > lo; --k) {
        acc = acc * x + (b[k] + s[k] * z);
        if (k == lo) break;
    }
    for (std::size_t k = shift; k < lo; ++k) acc *= x;
    return acc;
}

// Denominator of the rational rho, normalised to 1 at x = 0.
constexpr std::array<double, 5> kRhoDen{552540.0, 2453432.0, -4141461.0, -11520033.0, 22580479.0};

double rho_den(double x) noexcept {
    return ((((kRhoDen[0] * x + kRhoDen[1]) * x + kRhoDen[2]) * x + kRhoDen[3]) * x + kRhoDen[4]) / kRhoDen[4];
}

double rho_den_prime(double x) noexcept {
    return (((4.0 * kRhoDen[0] * x + 3.0 * kRhoDen[1]) * x + 2.0 * kRhoDen[2]) * x + kRhoDen[3]) / kRhoDen[4];
}

// Q for the rational rho: anchors every 0.05 on the working interval, filled
// outward from 0 by adaptive quadrature; Q(x) adds one short integral.
constexpr double kAnchorStep = 0.05;
constexpr int kAnchorCount = 101;
constexpr int kAnchorZero = 60;

// F_x(x, 0) and the denominator share the root near -2.92; extended precision
// keeps the removable 0/0 from injecting noise into the quadrature.
double rational_dQ(double x) noexcept {
    static const std::array<long double, 10> c = [] {
        std::array<long double, 10> out{};
        for (std::size_t k = 2; k < 10; ++k) {
            out[k] = static_cast<long double>(kBase[k].num) * static_cast<long double>(k) / kBase[k].den;
        }
        return out;
    }();
    const long double xl = x;
    long double fx = 0.0L;
    for (std::size_t k = 9; k >= 2; --k) fx = fx * xl + c[k];
    fx *= xl;
    const long double den =
        (((static_cast<long double>(kRhoDen[0]) * xl + kRhoDen[1]) * xl + kRhoDen[2]) * xl + kRhoDen[3]) * xl +
        kRhoDen[4];
    return static_cast<double>(fx * kRhoDen[4] / den);
}

const std::array<double, kAnchorCount>& rational_anchors() {
    static const std::array<double, kAnchorCount> table = [] {
        std::array<double, kAnchorCount> t{};
        auto at = [](int k) { return kWorkingXMin + k * kAnchorStep; };
        t[kAnchorZero] = 0.0;
        for (int k = kAnchorZero + 1; k < kAnchorCount; ++k) {
            t[k] = t[k - 1] + integrate(rational_dQ, at(k - 1), at(k));
        }
        for (int k = kAnchorZero - 1; k >= 0; --k) {
            t[k] = t[k + 1] + integrate(rational_dQ, at(k + 1), at(k));
        }
        return t;
    }();
    return table;
}

double rational_Q(double x) {
    const auto& t = rational_anchors();
    int k = static_cast<int>(std::lround((x - kWorkingXMin) / kAnchorStep));
    k = std::clamp(k, 0, kAnchorCount - 1);
    const double anchor = k == kAnchorZero ? 0.0 : kWorkingXMin + k * kAnchorStep;
    return t[k] + integrate(rational_dQ, anchor, x);
}

// Closed-form Q for rho = p + x + q x^2: integrate the degree-10 product term by term.
double quadratic_Q(double p, double q, double x) noexcept {
    const auto& t = tables();
    std::array<double, 11> prod{};  // coefficients of rho F_x (z0 = 0)
    for (std::size_t k = 2; k < 10; ++k) {
        const double c = t.dbase[k];  // coefficient of x^(k-1)
        prod[k - 1] += p * c;
        prod[k] += c;
        if (k + 1 < prod.size()) prod[k + 1] += q * c;
    }
    double acc = 0.0;
    for (std::size_t j = prod.size(); j-- > 0;) {
        acc = acc * x + prod[j] / static_cast<double>(j + 1);
    }
    return acc * x;
}

void require_working_interval(double x) {
    if (!(x >= kWorkingXMin - 1e-9 && x <= kWorkingXMax + 1e-9)) {
        throw DomainError("x = " + std::to_string(x) + " lies outside the working interval [-3, 2]");
    }
}

template <class Fn>
double refine_root(Fn&& f, double a, double b) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw GeometryFailure("no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    std::uintmax_t iters = 200;
    auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-14; };
    const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace

// ---------------------------------------------------------------------------
// rho

RhoSpec RhoSpec::quadratic(double p, double q) { return {Kind::Quadratic, p, q}; }
RhoSpec RhoSpec::fixed_rational() { return {Kind::FixedRational, 0.0, 0.0}; }

double RhoSpec::operator()(double x) const noexcept {
    return kind_ == Kind::Quadratic ? p_ + x + q_ * x * x : 1.0 / rho_den(x);
}

double RhoSpec::derivative(double x) const noexcept {
    if (kind_ == Kind::Quadratic) return 1.0 + 2.0 * q_ * x;
    const double d = rho_den(x);
    return -rho_den_prime(x) / (d * d);
}

std::string RhoSpec::name() const {
    if (kind_ == Kind::FixedRational) return "fixed_rational";
    std::ostringstream os;
    os << "quadratic(p=" << p_ << ", q=" << q_ << ")";
    return os.str();
}

void CanonicalParams::validate() const {
    if (z0 != 0.0) {
        throw DomainError("only z0 = 0 is supported");
    }
    for (double v : {alpha, beta, kappa, lambda}) {
        if (!std::isfinite(v)) throw DomainError("canonical parameters must be finite");
    }
}

void check_rho_regular(const RhoSpec& rho, double lo, double hi) {
    constexpr int kSamples = 4000;
    // A zero of rho or of the rational denominator shows up as a sign change.
    auto probe = [&](double x) { return rho.kind() == RhoSpec::Kind::Quadratic ? rho(x) : rho_den(x); };
    double prev = probe(lo);
    for (int i = 1; i <= kSamples; ++i) {
        const double x = lo + (hi - lo) * i / kSamples;
        const double cur = probe(x);
        if (!std::isfinite(cur) || std::abs(cur) < 1e-12 || (cur > 0.0) != (prev > 0.0)) {
            std::ostringstream os;
            os << "rho (" << rho.name() << ") has a zero or pole near x = " << x << " inside [" << lo << ", " << hi
               << "]";
            throw InvalidRho(os.str());
        }
        prev = cur;
    }
}

// ---------------------------------------------------------------------------
// F

double eval_F(double x, double z) noexcept {
    const auto& t = tables();
    return horner(t.base, t.slope, x, z, 2, 0);
}

double eval_Fx(double x, double z) noexcept {
    const auto& t = tables();
    return horner(t.dbase, t.dslope, x, z, 2, 1);
}

double eval_Fxx(double x, double z) noexcept {
    const auto& t = tables();
    return horner(t.ddbase, t.ddslope, x, z, 2, 2);
}

double eval_Fz(double x, double /*z*/) noexcept {
    const auto& t = tables();
    static const std::array<double, 10> zeros{};
    return horner(t.slope, zeros, x, 0.0, 2, 0);
}

double eval_Fxz(double x, double /*z*/) noexcept {
    const auto& t = tables();
    static const std::array<double, 10> zeros{};
    return horner(t.dslope, zeros, x, 0.0, 2, 1);
}

// ---------------------------------------------------------------------------
// Q, G, H, p, q

double eval_Q(const CanonicalParams& params, double x) {
    require_working_interval(x);
    if (params.rho.kind() == RhoSpec::Kind::Quadratic) {
        return quadratic_Q(params.rho.p(), params.rho.q(), x);
    }
    return rational_Q(x);
}

double eval_dQ(const CanonicalParams& params, double x) {
    if (params.rho.kind() == RhoSpec::Kind::Quadratic) {
        return params.rho(x) * eval_Fx(x, params.z0);
    }
    return rational_dQ(x);
}

double eval_P(const CanonicalParams& params, double x) {
    const double q = eval_Q(params, x);
    return 0.5 * params.alpha * q * q + params.beta * q;
}

FieldTerms eval_terms(const CanonicalParams& params, double x) {
    FieldTerms t;
    t.Q = eval_Q(params, x);
    t.dQ = eval_dQ(params, x);
    t.rho = params.rho(x);
    t.drho = params.rho.derivative(x);
    t.J = eval_J(x);
    const double u = params.alpha * t.Q + params.beta;
    const double P = 0.5 * params.alpha * t.Q * t.Q + params.beta * t.Q;
    const double weight = params.kappa + params.lambda * P;
    t.H = t.rho * u * t.J;
    t.dH = t.drho * u * t.J + t.rho * params.alpha * t.dQ * t.J - t.rho * u;
    t.G = weight * t.H;
    t.dG = params.lambda * u * t.dQ * t.H + weight * t.dH;
    return t;
}

double eval_G(const CanonicalParams& params, double x) { return eval_terms(params, x).G; }
double eval_H(const CanonicalParams& params, double x) { return eval_terms(params, x).H; }

PQ eval_pq(const CanonicalParams& params, double x) {
    const double fx = eval_Fx(x, params.z0);
    if (std::abs(fx) < 1e-12) {
        throw FoldPointEvaluation("p and q are evaluated on a fold (x = " + std::to_string(x) + ")");
    }
    const double q = eval_Q(params, x);
    const double u = params.alpha * q + params.beta;
    const double P = 0.5 * params.alpha * q * q + params.beta * q;
    const double p = u * eval_dQ(params, x);
    return {p, (params.kappa + params.lambda * P) * p};
}

std::array<double, 3> eval_vector_field(const CanonicalParams& params, double x, double y, double z, double eps,
                                        double delta) {
    const auto t = eval_terms(params, x);
    return {y - eval_F(x, z), eps * t.J, eps * (delta * t.G + (z - params.z0) * t.H)};
}

// ---------------------------------------------------------------------------
// Geometry

ManifoldGeometry compute_geometry_at(double z) {
    constexpr double kStep = 1e-3;
    constexpr int kCells = 5000;
    auto fx = [z](double x) { return eval_Fx(x, z); };

    std::vector<double> roots;
    double prev_x = kWorkingXMin;
    double prev = fx(prev_x);
    if (prev == 0.0) roots.push_back(prev_x);
    for (int i = 1; i <= kCells; ++i) {
        const double x = kWorkingXMin + i * kStep;
        const double cur = fx(x);
        if (cur == 0.0) {
            roots.push_back(x);
        } else if (prev != 0.0 && (cur > 0.0) != (prev > 0.0)) {
            roots.push_back(refine_root(fx, prev_x, x));
        }
        prev_x = x;
        prev = cur;
    }
    if (roots.size() < 4) {
        throw GeometryFailure("found " + std::to_string(roots.size()) + " folds, need four");
    }

    ManifoldGeometry g;
    g.z = z;
    const auto n = roots.size();
    g.x1 = roots[n - 4];
    g.x2 = roots[n - 3];
    g.x3 = roots[n - 2];
    g.x4 = roots[n - 1];
    g.left_edge = n > 4 ? roots[n - 5] : kWorkingXMin;

    // x1, x3 are local maxima, x2, x4 local minima of F(., z).
    const std::array<double, 4> folds{g.x1, g.x2, g.x3, g.x4};
    for (std::size_t i = 0; i < 4; ++i) {
        const double curv = eval_Fxx(folds[i], z);
        const bool want_min = (i % 2) == 1;
        if (std::abs(curv) < 1e-10 || (curv > 0.0) != want_min) {
            throw GeometryFailure("fold " + std::to_string(i + 1) + " is degenerate or has the wrong type");
        }
    }

    g.y1 = eval_F(g.x1, z);
    g.y2 = eval_F(g.x2, z);
    g.y3 = eval_F(g.x3, z);
    g.y4 = eval_F(g.x4, z);

    try {
        g.xhat4 = refine_root([&](double x) { return eval_F(x, z) - g.y4; }, g.left_edge, g.x1);
        g.xhat3 = refine_root([&](double x) { return eval_F(x, z) - g.y3; }, g.x4, kWorkingXMax);
        g.xhat1 = refine_root([&](double x) { return eval_F(x, z) - g.y1; }, g.x4, kWorkingXMax);
    } catch (const GeometryFailure& e) {
        throw GeometryFailure(std::string("missing projection of a fold: ") + e.what());
    }
    return g;
}

ManifoldGeometry compute_geometry(const CanonicalParams& params) { return compute_geometry_at(params.z0); }

}  // namespace mmo
