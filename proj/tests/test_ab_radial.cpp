// Pure Aharonov-Bohm radial channels: classification, continuum functions,
// bound states.  Reference values from mpmath (Bessel closed forms and
// quadrature of the normalization integrals).

#include <catch_amalgamated.hpp>

#include <cmath>

#include <msab/ab_radial.hpp>
#include <msab/verify.hpp>

using namespace msab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("region classification", "[ab]") {
    CHECK(ab::classify(0, 0.0).tag == Region::R3);
    CHECK(ab::classify(1, 0.0).tag == Region::R1);
    CHECK(ab::classify(0, 0.3).tag == Region::R2);
    CHECK(ab::classify(-1, 0.3).tag == Region::R2);
    CHECK(ab::classify(1, 0.3).tag == Region::R1);
    CHECK(ab::classify(-2, 0.3).tag == Region::R1);
    CHECK_THAT(ab::classify(-1, 0.3).kappa_l, WithinAbs(0.7, 1e-15));
    CHECK_THROWS_AS(ab::classify(0, 1.0), config_error);
}

TEST_CASE("extension parameter is required exactly in R2/R3", "[ab]") {
    auto c = FluxConfig::from_mantissa(0.3, 0.0);
    CHECK_THROWS_AS(ab::continuous_eigenfunction(0, c, std::nullopt, 1.0, 1.0), config_error);
    CHECK_THROWS_AS(ab::continuous_eigenfunction(2, c, Angle::zero(), 1.0, 1.0), config_error);
}

TEST_CASE("continuum eigenfunctions", "[ab]") {
    auto c = FluxConfig::from_mantissa(0.3, 0.0);
    CHECK_THAT(ab::continuous_eigenfunction(2, c, std::nullopt, 2.0, 1.3), WithinRel(0.1900647951052955843, 1e-13));
    CHECK_THAT(ab::continuous_eigenfunction(0, c, Angle::radians(-0.6), 1.7, 0.8),
               WithinRel(0.2107024868260389295, 1e-13));
    auto c2 = FluxConfig::from_mantissa(0.3, 0.0, 0, 1, 1, 1.7);
    CHECK_THAT(ab::continuous_eigenfunction(-1, c2, Angle::radians(0.5), 0.4, 2.2),
               WithinRel(0.69942409355494116643, 1e-13));
    auto c0 = FluxConfig::from_mantissa(0.0, 0.0);
    CHECK_THAT(ab::continuous_eigenfunction(0, c0, Angle::radians(0.3), 0.9, 2.1),
               WithinRel(0.56761922097266842238, 1e-13));
}

TEST_CASE("lambda = pi/2 is an ordinary evaluation", "[ab]") {
    auto c = FluxConfig::from_mantissa(0.3, 0.0);
    double at = ab::continuous_eigenfunction(0, c, Angle::half_pi(), 1.1, 0.9);
    double near = ab::continuous_eigenfunction(0, c, Angle::radians(pi / 2 - 1e-9), 1.1, 0.9);
    double far = ab::continuous_eigenfunction(0, c, Angle::radians(-pi / 2 + 1e-9), 1.1, 0.9);
    CHECK_THAT(near, WithinRel(at, 1e-7));
    // the circle identifies -pi/2 with pi/2 up to the overall sign
    CHECK_THAT(std::abs(far), WithinRel(std::abs(at), 1e-7));
}

TEST_CASE("bound states", "[ab]") {
    auto c = FluxConfig::from_mantissa(0.3, 0.0, 0, 1, 1, 1.7);
    auto b = ab::bound_state(0, c, Angle::radians(-0.6));
    REQUIRE(b);
    CHECK_THAT(b->energy, WithinRel(-11.97397135609875007, 1e-12));
    CHECK_THAT(b->weight, WithinRel(4.5339566544665734216, 1e-12));
    // no negative level for lambda >= 0 in R2 or at lambda = pi/2
    CHECK_FALSE(ab::bound_state(0, c, Angle::radians(0.6)));
    CHECK_FALSE(ab::bound_state(0, c, Angle::zero()));
    CHECK_FALSE(ab::bound_state(0, c, Angle::half_pi()));

    auto c0 = FluxConfig::from_mantissa(0.0, 0.0, 0, 1, 1, 0.8);
    auto b3 = ab::bound_state(0, c0, Angle::radians(0.2));
    REQUIRE(b3);
    CHECK_THAT(b3->energy, WithinRel(-1.2104546098969990289, 1e-12));
    CHECK_THAT(b3->weight, WithinRel(1.5559271254766394289, 1e-12));
}

TEST_CASE("closed-form bound levels", "[ab]") {
    const double C = 0.577215664901532860606512090082;
    auto b3 = ab::bound_state(0, FluxConfig::from_mantissa(0.0, 0.0), Angle::zero());
    REQUIRE(b3);
    CHECK_THAT(b3->energy, WithinAbs(-4 * std::exp(-2 * C), 1e-10));
    auto b2 = ab::bound_state(0, FluxConfig::from_mantissa(0.5, 0.0), Angle::parse("-pi/4"));
    REQUIRE(b2);
    CHECK_THAT(b2->energy, WithinAbs(-1.0, 1e-10));
}

TEST_CASE("bound state is normalized", "[ab]") {
    auto c = FluxConfig::from_mantissa(0.65, 0.0);
    auto b = ab::bound_state(-1, c, Angle::radians(-1.1));
    REQUIRE(b);
    verify::QuadratureConfig q;
    q.tail_decay_hint = verify::TailHint::exponential;
    auto r = verify::quad_semi_infinite([&](double x) { return std::pow(b->eigenfunction(x), 2); }, q);
    CHECK_THAT(r.value, WithinAbs(1.0, 1e-9));
}

TEST_CASE("spectrum summary", "[ab]") {
    auto c = FluxConfig::from_mantissa(0.3, 0.0);
    auto s1 = ab::spectrum(3, c, std::nullopt);
    CHECK(s1.region == Region::R1);
    CHECK(s1.levels.empty());
    CHECK(s1.has_continuum);
    auto s2 = ab::spectrum(0, c, Angle::radians(-0.4));
    REQUIRE(s2.levels.size() == 1);
    CHECK(s2.levels[0].energy < 0);
    CHECK(s2.levels[0].weight > 0);
}
