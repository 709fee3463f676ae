// Assembly of 2D/3D spectra and eigenfunctions, spinor algebra, and the
// discrete / continuous expansion machinery.

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include <msab/assembly.hpp>

using namespace msab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("index map", "[assembly]") {
    CHECK(assembly::index_map(-3, 2) == 2);
    CHECK(assembly::index_map(2, 1) == 3);
    CHECK(assembly::index_unmap(3, 2) == 1);
    CHECK(assembly::index_unmap(2, -3) == 2);
    CHECK_THROWS_AS(assembly::index_unmap(1, 2), config_error);
}

TEST_CASE("2D MS spectrum", "[assembly]") {
    auto c = FluxConfig::from_mantissa(0.3, 1.0);
    assembly::ExtensionChoice ch;
    ch.lambda_a0 = Angle::radians(0.2);
    ch.lambda_am1 = Angle::radians(-0.4);
    auto t = assembly::spectrum_2d(c, ch, 10, -5, 5, 2.0);
    for (const auto& r : t) {
        if (r.lambda) continue;
        // E = gamma / M_s [1 + 2n + 2 theta(l) mu]
        double theta = r.l >= 1 ? 1.0 : 0.0;
        CHECK_THAT(r.energy, WithinRel(0.5 * (1 + 2 * r.n + 2 * theta * 0.3), 1e-13));
        CHECK(r.n <= 10);
    }
    auto it = std::find_if(t.begin(), t.end(), [](const auto& r) { return r.l == 1 && r.n == 2; });
    REQUIRE(it != t.end());
    CHECK_THAT(it->energy, WithinRel(5.6 / 2, 1e-13));
    CHECK(std::is_sorted(t.begin(), t.end(), assembly::level_order));
}

TEST_CASE("missing lambda_a names the channel", "[assembly]") {
    auto c = FluxConfig::from_mantissa(0.3, 1.0);
    assembly::ExtensionChoice ch;
    ch.lambda_a0 = Angle::zero();
    try {
        assembly::spectrum_2d(c, ch, 3, -2, 2);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("l_a = -1") != std::string::npos);
    }
}

TEST_CASE("3D spectra add p_z^2 / M_s", "[assembly]") {
    auto c = FluxConfig::from_mantissa(0.0, 1.0);
    assembly::ExtensionChoice ch;
    ch.lambda = Angle::half_pi();
    auto s = assembly::spectrum_3d(c, ch, {0.0, 0.5}, 2, -1, 2, 2.0);
    CHECK_THAT(s.continuum_onset, WithinRel(0.5, 1e-15));
    for (const auto& r : s.levels) CHECK_THAT(r.energy, WithinRel(0.5 * (1 + 2 * r.n) + r.p_z * r.p_z / 2, 1e-13));
    // per-p_z lambda table
    assembly::ExtensionChoice tab;
    auto f = assembly::interpolate_lambda({{0.0, 0.0}, {1.0, 1.0}});
    tab.per_pz = [f](double pz) {
        assembly::ExtensionChoice r;
        r.lambda = f(pz);
        return r;
    };
    CHECK_THAT(f(0.25).value(), WithinAbs(0.25, 1e-15));
    CHECK_THAT(f(3.0).value(), WithinAbs(1.0, 1e-15));
    auto s2 = assembly::spectrum_3d(c, tab, {0.0, 0.5}, 1, 0, 0);
    REQUIRE(s2.levels.size() == 4);
    CHECK(s2.levels[0].lambda->value() == 0.0);
    CHECK(s2.levels[2].lambda->value() == 0.5);
}

TEST_CASE("AB 2D bound levels", "[assembly]") {
    auto c = FluxConfig::from_mantissa(0.5, 0.0);
    assembly::ExtensionChoice ch;
    ch.lambda_a0 = Angle::parse("-pi/4");
    ch.lambda_am1 = Angle::radians(0.3);
    auto sp = assembly::spectrum_2d_ab(c, ch, 2.0);
    REQUIRE(sp.bound.size() == 1);
    CHECK_THAT(sp.bound[0].energy, WithinAbs(-0.5, 1e-12));
    CHECK(sp.bound[0].l == 0);
}

TEST_CASE("spinor algebra", "[assembly]") {
    for (double pz : {0.0, 0.7, -2.0}) {
        auto e1 = assembly::e_spinor(1, 1.3, pz), e2 = assembly::e_spinor(-1, 1.3, pz);
        CHECK_THAT(e1[0] * e1[0] + e1[1] * e1[1], WithinAbs(1.0, 1e-15));
        CHECK_THAT(e2[0] * e2[0] + e2[1] * e2[1], WithinAbs(1.0, 1e-15));
        CHECK_THAT(e1[0] * e2[0] + e1[1] * e2[1], WithinAbs(0.0, 1e-15));
    }
    auto S = assembly::s_matrix(1, 2, -1, 0.8);
    // unitary: S S^dagger = 1
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            assembly::cplx v = S[i][0] * std::conj(S[j][0]) + S[i][1] * std::conj(S[j][1]);
            CHECK(std::abs(v - assembly::cplx(i == j ? 1.0 : 0.0)) < 1e-15);
        }
}

TEST_CASE("assembled eigenfunctions carry the radial density", "[assembly]") {
    auto c = FluxConfig::from_mantissa(0.3, 1.0, 2);
    auto v = ms::discrete_spectrum(1, c, std::nullopt, 1)[1];
    auto h = ms::eigenfunction(c, std::nullopt, v);
    auto a = assembly::scalar_eigenfunction(c, 2, 1, v.energy, h.eval);
    for (double rho : {0.3, 1.7}) {
        auto x = a.eval(rho, 0.9, 0.0)[0];
        CHECK_THAT(2 * pi * rho * std::norm(x), WithinRel(h(rho) * h(rho), 1e-13));
        // phase e^{i eps (phi0 - l) phi}
        auto y = a.eval(rho, 0.0, 0.0)[0];
        CHECK_THAT(std::arg(x / y), WithinAbs(0.9, 1e-13));
    }
    dirac::DiracParams p;
    p.mu = 0.3;
    p.l = -1;
    p.p_z = 0.4;
    auto lv = dirac::spectrum(p, std::nullopt, 1);
    auto F = dirac::eigenfunction(p, std::nullopt, lv[0]);
    auto s = assembly::dirac_spinor(lv[0], p, 2, F);
    for (double rho : {0.4, 2.0}) {
        double dens = 0;
        for (auto z : s.eval(rho, 1.1, 0.3)) dens += std::norm(z);
        auto d = F(rho);
        CHECK_THAT(4 * pi * pi * rho * dens, WithinRel(d.f * d.f + d.g * d.g, 1e-13));
    }
}

TEST_CASE("full Dirac spectrum window", "[assembly]") {
    dirac::DiracParams p;
    p.mu = 0.0;
    assembly::ExtensionChoice ch;
    auto t = assembly::dirac_full_spectrum(p, ch, {0.0}, 0, 0, 8.0);
    std::vector<double> pos;
    for (const auto& r : t) {
        CHECK(std::abs(r.energy) <= 8.0);
        CHECK_THAT(std::abs(r.energy), WithinRel(std::sqrt(1 + 2.0 * std::abs(r.n)), 1e-14));
    }
    CHECK(t.size() > 60);
}

TEST_CASE("Parseval gap of a discrete MS sector decreases", "[assembly]") {
    auto c = FluxConfig::from_mantissa(0.3, 1.0);
    Angle la = Angle::radians(0.7);
    auto f = [](double r) { return r * std::exp(-(r - 1.5) * (r - 1.5)); };
    double prev = 1e300;
    for (int n : {4, 8, 16, 32}) {
        auto b = assembly::ms_channel_basis(c, 0, la, n);
        b.extent = std::max(b.extent, 12.0);
        auto ex = assembly::expand(f, b);
        double gap = assembly::parseval_gap(ex) / ex.norm2;
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("continuous expansion: Hankel pair", "[assembly]") {
    // f = rho^{1/2 + k} e^{-rho^2/2}  <->  Phi(E) = E^{k/2} e^{-E/2} / sqrt(2)
    auto c = FluxConfig::from_mantissa(0.3, 0.0);
    const int l = 1;
    const double k = 1.3;
    auto f = [k](double r) { return std::pow(r, 0.5 + k) * std::exp(-r * r / 2); };
    assembly::ExpansionBasis b;
    b.extent = 12.0;
    b.continuum = [&](double E, double r) { return ab::continuous_eigenfunction(l, c, std::nullopt, E, r); };
    double prev = 1e300;
    for (double cutoff : {10.0, 20.0, 40.0}) {
        auto ex = assembly::expand(f, b, cutoff, 2.0);
        double dev = 0;
        for (std::size_t i = 0; i < ex.e_nodes.size(); ++i) {
            double E = ex.e_nodes[i];
            dev = std::max(dev, std::abs(ex.continuous[i] - std::pow(E, k / 2) * std::exp(-E / 2) / std::sqrt(2.0)));
        }
        CHECK(dev < 1e-9);
        CHECK_THAT(ex.norm2, WithinRel(std::tgamma(1 + k) / 2, 1e-10));
        double gap = assembly::parseval_gap(ex);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("bound state plus continuum is complete", "[assembly]") {
    auto c = FluxConfig::from_mantissa(0.3, 0.0);
    Angle la = Angle::radians(-0.6);
    auto bs = ab::bound_state(0, c, la);
    REQUIRE(bs);
    auto f = [](double r) { return std::pow(r, 0.8) * std::exp(-r * r / 2); };
    assembly::ExpansionBasis b;
    b.extent = 12.0;
    b.discrete.push_back(bs->eigenfunction.eval);
    b.continuum = [&](double E, double r) { return ab::continuous_eigenfunction(0, c, la, E, r); };
    // f ~ rho^0.8 at the origin does not match the channel's boundary power,
    // so the continuum coefficients decay algebraically and the gap closes
    // like a power of the energy cutoff.
    double prev = 1e300;
    assembly::Expansion ex;
    for (double cutoff : {30.0, 60.0, 120.0}) {
        ex = assembly::expand(f, b, cutoff, 2.0);
        double gap = assembly::parseval_gap(ex) / ex.norm2;
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-3);
    auto g = assembly::reconstruct(ex, b);
    for (double r : {0.5, 1.0, 2.0}) CHECK_THAT(g(r), WithinAbs(f(r), 2e-2));
}
