#include "mmo/associated_pam.hpp"
#include "mmo/errors.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace mmo;
using Catch::Approx;

namespace {

const ManifoldGeometry& geometry() {
    static const auto g = compute_geometry(CanonicalParams{});
    return g;
}

}  // namespace

TEST_CASE("compose is affine composition", "[associated]") {
    const AffineMap m{3, 4};
    CHECK(compose(AffineMap{}, m) == m);
    CHECK(compose(m, AffineMap{}) == m);
    CHECK(compose({2, 1}, {3, 4}) == AffineMap{6, 9});

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    const AffineMap a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const auto left = compose(compose(a, b), c);
    const auto right = compose(a, compose(b, c));
    CHECK(left.slope == Approx(right.slope).epsilon(1e-15));
    CHECK(left.offset == Approx(right.offset).epsilon(1e-14));
}

TEST_CASE("trivial segments", "[associated]") {
    CanonicalParams zero;
    zero.lambda = 12.0;
    const SegmentSpec seg{-2.5, -2.0, Sheet::Sa1};
    for (auto method : {SegmentMethod::Quadrature, SegmentMethod::ClosedForm}) {
        const auto m = segment_affine(zero, seg, method);
        CHECK(m.slope == Approx(1.0).margin(1e-14));
        CHECK(m.offset == Approx(0.0).margin(1e-12));
    }
    const CanonicalParams params{0.8, 0.1, 3, -5};
    CHECK(segment_affine(params, {0.7, 0.7, Sheet::Sa3}) == AffineMap{});
    const auto pam = associated_pam(zero, geometry());
    CHECK(pam.a11 == Approx(1.0));
    CHECK(pam.a21 == Approx(1.0));
    CHECK(pam.a12 == Approx(0.0).margin(1e-14));
    CHECK(pam.a22 == Approx(0.0).margin(1e-14));
}

TEST_CASE("closed form agrees with nested quadrature", "[associated]") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ua(-1, 1), uk(-50, 50), ul(-300, 300);
    const auto segs = branch_segments(geometry());
    for (int i = 0; i < 10; ++i) {
        const CanonicalParams params{ua(rng), ua(rng), uk(rng), ul(rng)};
        for (const auto& seg : {segs.lao_inner, segs.lao_outer, segs.sao_inner, segs.sao_outer}) {
            const auto closed = segment_affine(params, seg, SegmentMethod::ClosedForm);
            const auto quad = segment_affine(params, seg, SegmentMethod::Quadrature);
            CHECK(relative_gap(closed.slope, quad.slope) <= 1e-8);
            CHECK(relative_gap(closed.offset, quad.offset) <= 1e-8);
            CHECK_NOTHROW(segment_affine(params, seg, SegmentMethod::ClosedForm, true));
        }
    }
}

TEST_CASE("rounded published parameters give the published PAM", "[associated]") {
    const auto pam = associated_pam({0.8743, 0.0240, 27.2674, -64.5764}, geometry());
    CHECK(pam.a11 == Approx(0.3).margin(1e-2));
    CHECK(pam.a12 == Approx(1.0).margin(1e-2));
    CHECK(pam.a21 == Approx(0.9).margin(1e-2));
    CHECK(pam.a22 == Approx(-2.0).margin(1e-2));

    const auto quad = associated_pam({0.8743, 0.0240, 27.2674, -64.5764}, geometry(), SegmentMethod::Quadrature);
    CHECK(quad.a11 == Approx(pam.a11).epsilon(1e-9));
    CHECK(quad.a22 == Approx(pam.a22).epsilon(1e-9));
}

TEST_CASE("slopes ignore kappa and lambda, offsets are affine in them", "[associated]") {
    const CanonicalParams base{0.4, -0.2, 0, 0};
    const auto m0 = associated_pam(base, geometry());
    auto at = [&](double k, double l) {
        auto p = base;
        p.kappa = k;
        p.lambda = l;
        return associated_pam(p, geometry());
    };
    const auto mk = at(1, 0), ml = at(0, 1), mkl = at(2.5, -4);
    CHECK(mkl.a11 == m0.a11);
    CHECK(mkl.a21 == m0.a21);
    CHECK(mkl.a12 == Approx(2.5 * (mk.a12 - m0.a12) - 4 * (ml.a12 - m0.a12) + m0.a12).epsilon(1e-12));
    CHECK(mkl.a22 == Approx(2.5 * (mk.a22 - m0.a22) - 4 * (ml.a22 - m0.a22) + m0.a22).epsilon(1e-12));
}

TEST_CASE("slopes are exponentials of P differences", "[associated]") {
    const CanonicalParams p{0.3, 0.2, 0, 0};
    const auto& g = geometry();
    const auto pam = associated_pam(p, g);
    auto P = [&](double x) { return eval_P(p, x); };
    CHECK(std::log(pam.a11) == Approx(P(g.x1) - P(g.xhat4) + P(g.x4) - P(g.xhat1)).epsilon(1e-12));
    auto doubled = p;
    doubled.alpha *= 2;
    doubled.beta *= 2;
    CHECK(std::log(associated_pam(doubled, g).a21) == Approx(2 * std::log(pam.a21)).epsilon(1e-12));
}
