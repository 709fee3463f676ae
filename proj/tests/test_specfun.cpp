// Special-function kernel against high-precision reference values
// (computed with mpmath at 40 digits).

#include <catch_amalgamated.hpp>

#include <cmath>

#include <msab/roots.hpp>
#include <msab/specfun.hpp>

using namespace msab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gamma family", "[specfun]") {
    CHECK_THAT(specfun::gamma(0.3), WithinRel(2.9915689876875906283, 1e-14));
    CHECK_THAT(specfun::gamma(-1.7), WithinRel(2.5139235190652022087, 1e-14));
    CHECK_THAT(specfun::gamma_reciprocal(-2.5), WithinRel(-1.057855469152043038, 1e-14));
    CHECK(specfun::gamma_reciprocal(-3.0) == 0.0);
    CHECK(specfun::gamma_reciprocal(0.0) == 0.0);
    CHECK_THAT(specfun::digamma(0.37), WithinRel(-2.7953014108905639616, 1e-14));
    CHECK_THAT(specfun::digamma(-2.4), WithinRel(2.0903331670591905376, 1e-13));
    CHECK_THAT(specfun::trigamma(2.5), WithinRel(0.49035775610023486497, 1e-14));
}

TEST_CASE("gamma poles raise pole_error", "[specfun]") {
    CHECK_THROWS_AS(specfun::gamma(-2.0), pole_error);
    CHECK_THROWS_AS(specfun::gamma(0.0), pole_error);
    CHECK_THROWS_AS(specfun::digamma(-1.0), pole_error);
}

TEST_CASE("reciprocal gamma derivative at its zeros", "[specfun]") {
    // d/dx 1/Gamma(x) at x = -n equals (-1)^n n!
    for (int n = 0; n < 5; ++n) {
        auto s = specfun::gamma_reciprocal_scaled(-n);
        double d = s.derivative * std::exp(s.log_scale);
        CHECK_THAT(d, WithinRel(std::pow(-1.0, n) * std::tgamma(n + 1.0), 1e-13));
    }
}

TEST_CASE("Bessel functions", "[specfun]") {
    CHECK_THAT(specfun::bessel_j(0.3, 2.7), WithinRel(0.07484269582778452009, 1e-13));
    CHECK_THAT(specfun::bessel_j(-0.3, 2.7), WithinRel(-0.34228766052825579622, 1e-13));
    CHECK_THAT(specfun::bessel_k(0.3, 1.9), WithinRel(0.13137942527906502387, 1e-13));
    CHECK_THAT(specfun::bessel_k(0.0, 0.5), WithinRel(0.92441907122766586178, 1e-13));
    CHECK_THAT(specfun::bessel_k(0.7, 30.0), WithinRel(2.1496807317919460956e-14, 1e-12));
    CHECK_THAT(specfun::bessel_y0(3.2), WithinRel(0.30705325013240308355, 1e-13));
}

TEST_CASE("Kummer Phi", "[specfun]") {
    CHECK_THAT(specfun::kummer_m(-2.3, 1.6, 3.5), WithinRel(-0.12982347045462763858, 1e-12));
    CHECK_THAT(specfun::kummer_m(0.7, 1.3, 20.0), WithinRel(56119671.52529835755, 1e-12));
    // terminating case is a polynomial
    CHECK_THAT(specfun::kummer_m(-3.0, 1.5, 2.0), WithinRel(-0.40952380952380952381, 1e-14));
    CHECK(specfun::kummer_m(0.4, 1.2, 0.0) == 1.0);
}

TEST_CASE("Phi / Gamma(beta) is entire in beta", "[specfun]") {
    CHECK_THAT(specfun::kummer_m_over_gamma_beta(0.4, -2.0, 1.5), WithinRel(2.7756464990353431958, 1e-13));
    CHECK_THAT(specfun::kummer_m_over_gamma_beta(0.4, 0.6, 1.5), WithinRel(2.0860210253101708148, 1e-13));
    // continuity across the pole of Gamma(beta)
    double at = specfun::kummer_m_over_gamma_beta(0.4, -2.0, 1.5);
    double near = specfun::kummer_m_over_gamma_beta(0.4, -2.0 + 1e-7, 1.5);
    CHECK_THAT(near, WithinRel(at, 1e-5));
}

TEST_CASE("Tricomi Psi", "[specfun]") {
    CHECK_THAT(specfun::tricomi_u(0.3, 1.4, 2.0), WithinRel(0.82218157944726390173, 1e-12));
    CHECK_THAT(specfun::tricomi_u(-1.7, 0.6, 5.0), WithinRel(8.7489817396546168523, 1e-12));
    CHECK_THAT(specfun::tricomi_u(0.5, 1.0, 0.8), WithinRel(0.93806791543535281174, 1e-12));
    CHECK_THAT(specfun::tricomi_u(2.5, -1.3, 40.0), WithinRel(0.000075180588966798412708, 1e-11));
    auto big = specfun::tricomi_u_log(-30.5, 0.7, 900.0);
    CHECK_THAT(big.log_abs, WithinRel(206.4136485212284186, 1e-12));
    auto small = specfun::tricomi_u_log(0.25, 0.5, 800.0);
    CHECK_THAT(small.log_abs, WithinRel(-1.6713870147006384875, 1e-12));
    CHECK(small.sign == 1);
    CHECK_THROWS_AS(specfun::tricomi_u(0.3, 1.4, 0.0), domain_error);
}

TEST_CASE("mu-derivative of Phi(alpha0 + mu, 1 + 2 mu; z)", "[specfun]") {
    CHECK_THAT(specfun::kummer_m_dmu_at0(0.35, 1.7), WithinRel(0.7753074006684650929, 1e-12));
    CHECK_THAT(specfun::kummer_m_dmu_at0(-2.0, 0.9), WithinRel(2.7204554237557985986, 1e-12));
    CHECK_THAT(specfun::kummer_m_dmu_at0(-1.5, 4.0), WithinRel(-5.6034597353780176395, 1e-11));
    CHECK(specfun::kummer_m_dmu_at0(0.3, 0.0) == 0.0);
}

TEST_CASE("bracketed root solver", "[roots]") {
    double r = roots::solve_bracketed([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
    CHECK_THAT(r, WithinAbs(0.73908513321516064166, 1e-14));
    CHECK_THROWS_AS(roots::solve_bracketed([](double x) { return x * x + 1; }, -1.0, 1.0), numerical_error);
}

TEST_CASE("finite-difference derivatives", "[roots]") {
    auto f = [](double x) { return std::sin(x); };
    CHECK_THAT(roots::derivative5(f, 0.4, 1e-3), WithinAbs(std::cos(0.4), 1e-12));
    CHECK_THAT(roots::derivative7(f, 0.4, 1e-2), WithinAbs(std::cos(0.4), 1e-12));
    CHECK_THAT(roots::second_derivative7(f, 0.4, 1e-2), WithinAbs(-std::sin(0.4), 1e-9));
}
