// Radial Dirac doublets: regions, ladders, lambda-families, weights,
// Wronskian identities, eigenfunction checks and the eps flip.
// Reference Q^2 values and R3 roots from mpmath (independent root finding
// on the spectral function and quadrature of |f|^2 + |g|^2).

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include <msab/dirac_radial.hpp>
#include <msab/verify.hpp>

using namespace msab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
dirac::DiracParams base(int l) {
    dirac::DiracParams p;
    p.mu = 0.3;
    p.l = l;
    return p;
}

const dirac::DiracLevel& find(const std::vector<dirac::DiracLevel>& lv, int n, int sigma) {
    auto it = std::find_if(lv.begin(), lv.end(), [&](const auto& v) { return v.n == n && v.sigma == sigma; });
    REQUIRE(it != lv.end());
    return *it;
}

double q2(const dirac::DiracLevel& v) { return v.weight * v.weight; }

double norm2(const dirac::DoubletHandle& h) {
    verify::RadialRule rule(h.extent, std::abs(h.energy) + 1);
    return rule.integrate([&](double r) {
        auto d = h(r);
        return d.f * d.f + d.g * d.g;
    });
}
}  // namespace

TEST_CASE("Dirac regions", "[dirac]") {
    CHECK(dirac::region(base(-1)) == Region::R1);
    CHECK(dirac::region(base(0)) == Region::R3);
    CHECK(dirac::region(base(1)) == Region::R2);
    auto p = base(0);
    p.mu = 0.0;
    CHECK(dirac::region(p) == Region::R1);
}

TEST_CASE("region-1 ladder and weights", "[dirac]") {
    auto lv = dirac::spectrum_r1(base(-1), 3);
    for (const auto& v : lv) CHECK_THAT(std::abs(v.energy), WithinRel(std::sqrt(1 + 2.0 * std::abs(v.n)), 1e-14));
    CHECK_THAT(q2(find(lv, 0, 1)), WithinRel(0.6774663949658515517, 1e-11));
    CHECK_THAT(q2(find(lv, 1, 1)), WithinRel(0.9083115303963645829, 1e-11));
    CHECK_THAT(q2(find(lv, -2, -1)), WithinRel(0.4297321090075882992, 1e-11));
    CHECK_THAT(q2(find(lv, 3, 1)), WithinRel(1.321170724003601726, 1e-11));
    // E = -sM is excluded from the spectrum
    for (const auto& v : lv) CHECK(std::abs(v.energy + 1.0) > 1e-6);
}

TEST_CASE("region-2 ladder and weights", "[dirac]") {
    auto lv = dirac::spectrum_r2(base(2), 2);
    CHECK_THAT(q2(find(lv, 2, 1)), WithinRel(0.10049891278207686, 1e-11));
    CHECK_THAT(q2(find(lv, -3, -1)), WithinRel(0.54551616305741831, 1e-11));
    CHECK_THAT(q2(find(lv, 4, 1)), WithinRel(0.44733107067910510, 1e-11));
    // |n| starts at l: M_l = sqrt(1 + 2 gamma l)
    CHECK_THAT(find(lv, 2, 1).energy, WithinRel(std::sqrt(1 + 2.0 * 2.3), 1e-14));
}

TEST_CASE("region-3 at lambda = 0 and pi/2", "[dirac]") {
    auto p = base(0);
    auto z = dirac::spectrum_r3(p, Angle::zero(), -2, 2);
    CHECK_THAT(find(z, 0, 1).energy, WithinRel(std::sqrt(1 + 2 * 0.3), 1e-14));
    CHECK_THAT(q2(find(z, 0, 1)), WithinRel(0.05686330323735, 1e-9));
    CHECK_THAT(q2(find(z, 0, -1)), WithinRel(0.48616438537628, 1e-9));
    CHECK_THAT(q2(find(z, 2, 1)), WithinRel(0.030571769268308, 1e-9));
    auto h = dirac::spectrum_r3(p, Angle::half_pi(), -2, 2);
    CHECK_THAT(q2(find(h, 0, 1)), WithinRel(0.94845295295219217, 1e-11));
    CHECK_THAT(q2(find(h, -1, -1)), WithinRel(0.14030218483804200, 1e-11));
    CHECK_THAT(q2(find(h, 2, 1)), WithinRel(0.40835266744083711, 1e-11));
    for (const auto& v : h) CHECK(std::abs(v.energy + 1.0) > 1e-6);
}

TEST_CASE("region-3 generic lambda, including levels inside the gap", "[dirac]") {
    auto p = base(0);
    auto a = dirac::spectrum_r3(p, Angle::radians(-0.7), -2, 1);
    CHECK_THAT(find(a, -1, -1).energy, WithinRel(-0.765486389427079813953, 1e-12));
    CHECK_THAT(q2(find(a, -1, -1)), WithinRel(1.10976618374729, 1e-9));
    CHECK_THAT(find(a, -2, -1).energy, WithinRel(-1.82546155680253, 1e-12));
    CHECK_THAT(find(a, 0, 1).energy, WithinRel(1.31869908242353, 1e-12));
    CHECK_THAT(q2(find(a, 0, 1)), WithinRel(0.120720155173714, 1e-9));
    CHECK_THAT(find(a, 1, 1).energy, WithinRel(1.93412995746982, 1e-12));

    auto b = dirac::spectrum_r3(p, Angle::radians(-1.3), -2, 1);
    CHECK_THAT(find(b, -1, 1).energy, WithinRel(0.467333712290621418960, 1e-12));
    CHECK_THAT(q2(find(b, -1, 1)), WithinRel(2.92149427253890, 1e-9));
    CHECK_THAT(find(b, 0, 1).energy, WithinRel(1.52048668521857, 1e-12));
    CHECK_THAT(q2(find(b, 0, 1)), WithinRel(0.801583498291, 1e-9));

    p.m_e = 1.3;
    auto c = dirac::spectrum_r3(p, Angle::radians(0.7), -8, 1);
    CHECK_THAT(find(c, -8, -1).energy, WithinRel(-4.071295000305503, 1e-12));
    CHECK_THAT(q2(find(c, -8, -1)), WithinRel(0.08295314881219419, 1e-9));
}

TEST_CASE("spectral function vanishes at the R3 levels", "[dirac]") {
    auto p = base(0);
    Angle la = Angle::radians(0.4);
    for (const auto& v : dirac::spectrum_r3(p, la, -3, 3)) {
        double d = dirac::omega_capital_derivative(p, la, v.energy, 1e-5);
        CHECK(std::abs(dirac::omega_capital(p, la, v.energy)) < 1e-9 * std::max(1.0, std::abs(d)));
    }
}

TEST_CASE("mu = 1/2 has no region-3 boundary condition", "[dirac]") {
    auto p = base(0);
    p.mu = 0.5;
    CHECK_THROWS_AS(dirac::spectrum_r3(p, Angle::zero(), -1, 1), config_error);
}

TEST_CASE("Wronskian identities", "[dirac]") {
    for (int l : {-1, 0, 1}) {
        auto p = base(l);
        p.m_e = 1.4;
        p.p_z = 0.3;
        p.s = -1;
        for (double W : {-2.1, 0.37, 1.9}) {
            for (double rho : {0.01, 0.3, 1.2}) {
                auto F1 = dirac::solution_f1(p, W, rho), F2 = dirac::solution_f2(p, W, rho),
                     F3 = dirac::solution_f3(p, W, rho);
                CHECK_THAT(wronskian(F1, F2), WithinAbs(-1.0, 1e-10));
                CHECK_THAT(wronskian(F1, F3), WithinAbs(dirac::omega1(p, W), 1e-9));
                CHECK_THAT(wronskian(F2, F3), WithinAbs(dirac::omega2(p, W), 1e-9));
            }
        }
    }
}

TEST_CASE("eigenfunctions: norm, system residual, boundary condition", "[dirac]") {
    auto grid = verify::linear_grid(0.05, 12, 120);
    for (int l : {-1, 0, 2}) {
        auto p = base(l);
        std::optional<Angle> la;
        if (l == 0) la = Angle::radians(0.7);
        for (const auto& v : dirac::spectrum(p, la, 2)) {
            auto h = dirac::eigenfunction(p, la, v);
            CHECK_THAT(norm2(h), WithinAbs(1.0, 1e-9));
            CHECK(dirac::system_residual(p, v.energy, h, grid) < 1e-7);
            CHECK(dirac::system_residual(p, v.energy + 0.1, h, grid) > 1e-3);
            if (la) CHECK(dirac::boundary_condition_check_r3(h.eval, *la, p) < 1e-6);
        }
    }
}

TEST_CASE("eps = -1 equals eps = +1 with s -> -s", "[dirac]") {
    for (int l : {-1, 0, 1}) {
        auto m = base(l), q = base(l);
        m.eps = -1;
        m.s = 1;
        q.s = -1;
        std::optional<Angle> la;
        if (l == 0) la = Angle::radians(0.3);
        auto a = dirac::spectrum(m, la, 3), b = dirac::spectrum(q, la, 3);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].energy == b[i].energy);
        auto grid = verify::linear_grid(0.05, 10, 60);
        for (const auto& v : a) {
            auto h = dirac::eigenfunction(m, la, v);
            CHECK(dirac::system_residual(m, v.energy, h, grid) < 1e-7);
        }
    }
}
