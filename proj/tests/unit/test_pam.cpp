#include "mmo/errors.hpp"
#include "mmo/pam.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace mmo;
using Catch::Approx;

TEST_CASE("pam_eval picks the branch by the sign of Z", "[pam]") {
    const PamCoefficients m{0.3, 1, 0.9, -2};
    CHECK(pam_eval(m, -1.0) == Approx(0.7).margin(1e-15));
    CHECK(pam_eval(m, 1.0) == Approx(-1.1).margin(1e-15));
    CHECK_THROWS_AS(pam_eval(m, 0.0), DiscontinuityHit);
    CHECK_THROWS_AS(pam_eval(m, 5e-13), DiscontinuityHit);
}

TEST_CASE("validate rejects nonpositive slopes", "[pam]") {
    CHECK_THROWS_AS((PamCoefficients{0.0, 1, 0.9, -2}.validate()), DomainError);
    CHECK_THROWS_AS((PamCoefficients{0.3, 1, -0.9, -2}.validate()), DomainError);
    CHECK_NOTHROW((PamCoefficients{0.3, 1, 0.9, -2}.validate()));
}

TEST_CASE("transform and its inverse", "[pam]") {
    const auto t = transform({0.3, 3, 0.9, -2});
    CHECK(t.a == 0.3);
    CHECK(t.b == 0.9);
    CHECK(t.mu == 3);
    CHECK(t.l == -5);

    const auto id = transform({1, 0, 1, 0});
    CHECK(id.a == 1);
    CHECK(id.b == 1);
    CHECK(id.mu == 0);
    CHECK(id.l == 0);

    const auto t2 = transform({0.9, 2.2, 0.8, -5});
    CHECK(t2.l == Approx(-7.2));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int i = 0; i < 100; ++i) {
        const PamCoefficients m{std::abs(u(rng)) + 0.1, u(rng), std::abs(u(rng)) + 0.1, u(rng)};
        const auto back = inverse_transform(transform(m));
        CHECK(back.a11 == m.a11);
        CHECK(back.a21 == m.a21);
        CHECK(back.a12 == m.a12);
        CHECK(back.a22 == Approx(m.a22).margin(1e-14));
    }
}

TEST_CASE("iterate_orbit finds fixed points and cycles", "[pam]") {
    SECTION("pure LAO fixed point") {
        const auto orbit = iterate_orbit({0.5, -1, 0.9, -2}, -3.0);
        REQUIRE(orbit.converged);
        CHECK(*orbit.period == 1);
        CHECK(orbit.iterates.back() == Approx(-2.0).margin(1e-10));
        CHECK(detect_signature(orbit).str() == "1^0");
    }
    SECTION("period two") {
        const auto orbit = iterate_orbit({0.3, 1, 0.9, -2}, -0.5);
        REQUIRE(orbit.converged);
        CHECK(*orbit.period == 2);
        CHECK(detect_signature(orbit).str() == "1^1");
    }
    SECTION("period four") {
        const auto orbit = iterate_orbit({0.3, 7, 0.9, -2}, -0.5);
        REQUIRE(orbit.converged);
        CHECK(*orbit.period == 4);
        CHECK(detect_signature(orbit).str() == "1^3");
    }
    SECTION("recurrence holds past the transient") {
        const OrbitOptions opts;
        const auto orbit = iterate_orbit({0.3, 7, 0.9, -2}, 0.5, opts);
        REQUIRE(orbit.converged);
        const auto p = *orbit.period;
        for (std::size_t n = orbit.transient_length; n + p < orbit.iterates.size(); ++n) {
            CHECK(std::abs(orbit.iterates[n + p] - orbit.iterates[n]) <= opts.tol);
        }
    }
    SECTION("expanding map never converges") {
        const auto orbit = iterate_orbit({1.5, 1, 1.2, -2}, -0.5, {2000, 1e-10, 50});
        CHECK_FALSE(orbit.converged);
        CHECK_THROWS_AS(detect_signature(orbit), NotPeriodic);
    }
    SECTION("start on the jump") {
        CHECK_THROWS_AS(iterate_orbit({0.3, 1, 0.9, -2}, 0.0), DiscontinuityHit);
    }
}

TEST_CASE("signatures are canonical and round-trip through text", "[pam]") {
    CHECK(Signature::from_cycle({true, false, false, false}).str() == "1^3");
    CHECK(Signature::from_cycle({true, true, true, false}).str() == "3^1");
    CHECK(Signature::from_cycle({false, true, false}).str() == "1^2");
    CHECK(Signature::from_cycle({false, false}).str() == "0^2");

    const auto a = Signature::from_cycle({true, false, false, false, false, true, false, false, false, false, false});
    const auto b = Signature::from_cycle({false, false, true, false, false, false, false, false, true, false, false});
    CHECK(a == b);
    CHECK(a.str() == "1^4 1^5");
    CHECK(a.period() == 11);
    CHECK(Signature::parse(a.str()) == a);
    CHECK(Signature::parse("1^5 1^4") == a);
    CHECK_THROWS_AS(Signature::parse("1-3"), DomainError);
    CHECK_THROWS_AS(Signature::parse(""), DomainError);
    CHECK_THROWS_AS(Signature::parse("1^0 1^1"), DomainError);
}

TEST_CASE("stability factor", "[pam]") {
    CHECK(stability_factor({0.3, 7, 0.9, -2}, Signature::parse("1^3")) == Approx(0.2187));
    CHECK(stability_factor({1, 0, 1, 0}, Signature::parse("2^5")) == 1.0);
    CHECK(stability_factor({0.9, 3, 0.4, -3}, Signature::parse("1^1")) == Approx(0.36));
}

TEST_CASE("at-most/at-least windows", "[pam][bounds]") {
    const auto [lw, unused1] = atmost_atleast_bounds({0.9, 0.8, 2.2, -7.2}, 2, 1);
    CHECK(lw.lower == Approx(2.1520).margin(1e-4));
    CHECK(lw.upper == Approx(2.4732).margin(1e-4));
    CHECK_FALSE(lw.lower_closed);
    CHECK(lw.upper_closed);

    const auto s3 = sao_window({0.3, 0.9, 7, -9}, 3);
    CHECK(s3.lower == Approx(6.5313).margin(1e-4));
    CHECK(s3.upper == Approx(7.0921).margin(1e-4));

    const auto s25 = sao_window({0.5, 0.94, 15, -15.25}, 25);
    CHECK(s25.lower == Approx(14.9889).margin(1e-4));
    CHECK(s25.upper == Approx(15.0064).margin(1e-4));

    CHECK_THROWS_AS(lao_window({1.2, 0.5, 1, -2}, 2), DomainError);
    CHECK_THROWS_AS(sao_window({0.5, 0.5, 1, 2}, 2), DomainError);
}

TEST_CASE("mu intervals", "[pam]") {
    const MuInterval i{1.0, 2.0, false, true};
    CHECK_FALSE(i.contains(1.0));
    CHECK(i.contains(2.0));
    CHECK(i.str() == "(1.0000, 2.0000]");
    CHECK(MuInterval{1.0, 1.0, true, false}.empty());
    CHECK(MuInterval{2.0, 1.0, true, true}.empty());
}
