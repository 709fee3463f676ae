#pragma once
// Named verification suites.  Each returns a VerificationReport whose
// `details` rows document every individual comparison.  Used by the CLI
// `verify` command and by the acceptance runner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ab_radial.hpp"
#include "assembly.hpp"
#include "core.hpp"
#include "dirac_radial.hpp"
#include "ms_radial.hpp"
#include "verify.hpp"

namespace msab::suites {

using verify::VerificationReport;

namespace detail {

/// Gram deviation of a set of scalar radial functions.
inline double gram_deviation(const std::vector<EigenfunctionHandle>& hs) {
    double ext = 0, k = 1;
    std::vector<verify::RealFn> fs;
    for (const auto& h : hs) {
        ext = std::max(ext, h.extent);
        k = std::max(k, std::sqrt(std::abs(h.energy) + 1));
        fs.push_back(h.eval);
    }
    verify::RadialRule rule(ext, k);
    return verify::identity_deviation(verify::gram_matrix(fs, rule));
}

inline double gram_deviation(const std::vector<dirac::DoubletHandle>& hs) {
    double ext = 0, k = 1;
    std::vector<verify::RealFn> up, lo;
    for (const auto& h : hs) {
        ext = std::max(ext, h.extent);
        k = std::max(k, std::abs(h.energy) + 1);
        up.push_back(h.upper());
        lo.push_back(h.lower());
    }
    verify::RadialRule rule(ext, k);
    return verify::identity_deviation(verify::gram_matrix_doublets(up, lo, rule));
}

/// A representative lambda-family or regular channel of each kind.
struct MsCase {
    std::string name;
    FluxConfig cfg;
    int l;
    std::optional<Angle> lambda;
};

inline std::vector<MsCase> ms_cases() {
    return {{"ms-R1 l=1 mu=0.3", FluxConfig::from_mantissa(0.3, 1.0), 1, std::nullopt},
            {"ms-R2 a=0 mu=0.3 lambda=0.7", FluxConfig::from_mantissa(0.3, 1.0), 0, Angle::radians(0.7)},
            {"ms-R2 a=-1 mu=0.6 lambda=-0.4", FluxConfig::from_mantissa(0.6, 1.5), -1, Angle::radians(-0.4)},
            {"ms-R3 lambda=0.4", FluxConfig::from_mantissa(0.0, 1.0), 0, Angle::radians(0.4)}};
}

struct DiracCase {
    std::string name;
    dirac::DiracParams p;
    std::optional<Angle> lambda;
};

inline std::vector<DiracCase> dirac_cases() {
    dirac::DiracParams a;
    a.mu = 0.3;
    a.l = -1;
    dirac::DiracParams b = a;
    b.l = 2;
    dirac::DiracParams c = a;
    c.l = 0;
    c.m_e = 1.3;
    dirac::DiracParams d = c;
    d.m_e = 1.0;
    d.s = -1;
    d.p_z = 0.6;
    d.mu = 0.65;
    return {{"dirac-R1 l=-1", a, std::nullopt},
            {"dirac-R2 l=2", b, std::nullopt},
            {"dirac-R3 lambda=0.7 m_e=1.3", c, Angle::radians(0.7)},
            {"dirac-R3 s=-1 p_z=0.6 mu=0.65 lambda=-0.5", d, Angle::radians(-0.5)}};
}

}  // namespace detail

/// Landau ladder: mu = 0, lambda = +-pi/2 gives E_n = gamma/M_s (1 + 2n) for
/// every channel l <= n, n <= 20.
inline VerificationReport landau(double tol = 1e-12) {
    VerificationReport r;
    double dev = 0;
    std::vector<std::vector<double>> rows;
    for (double gamma : {1.0, 2.5}) {
        for (double Ms : {1.0, 3.0}) {
            for (const Angle& la : {Angle::half_pi(), Angle::radians(-pi / 2)}) {
                auto cfg = FluxConfig::from_mantissa(0.0, gamma);
                assembly::ExtensionChoice ch;
                ch.lambda = la;
                auto t = assembly::spectrum_2d(cfg, ch, 20, -3, 20, Ms);
                for (const auto& v : t) {
                    double exact = gamma / Ms * (1 + 2 * v.n);
                    double d = std::abs(v.energy - exact) / exact;
                    dev = std::max(dev, d);
                    rows.push_back({gamma, Ms, double(v.l), double(v.n), v.energy, exact});
                }
            }
        }
    }
    return verify::make_report("landau", dev, tol, rows);
}

/// Root-found R2/R3 spectra at lambda within 1e-6 of +-pi/2 against the
/// region-1 closed forms (l -> l_a, kappa_l -> kappa_a), first 10 levels.
/// The one level that runs off to -infinity in this limit is excluded.
inline VerificationReport lambda_limit(double tol = 1e-5) {
    const double d = 1e-6;
    double dev = 0;
    std::vector<std::vector<double>> rows;
    const std::vector<std::pair<double, double>> grid{{0.1, 0.5}, {0.3, 1.0}, {0.5, 1.7}, {0.7, 2.5}, {0.9, 4.0}};
    auto compare = [&](const FluxConfig& cfg, int l, double k, double shift, double lam) {
        auto lv = ms::discrete_spectrum(l, cfg, Angle::radians(lam), 12);
        std::vector<double> E;
        for (const auto& v : lv)
            if (v.energy > cfg.gamma * (1 + k) + shift - cfg.gamma) E.push_back(v.energy);
        for (int m = 0; m < 10; ++m) {
            double exact = cfg.gamma * (1 + k + 2 * m) + shift;
            double got = m < static_cast<int>(E.size()) ? E[m] : std::numeric_limits<double>::quiet_NaN();
            double rel = std::abs(got - exact) / std::abs(exact);
            if (!std::isfinite(rel)) rel = 1e300;
            dev = std::max(dev, rel);
            rows.push_back({cfg.mu, cfg.gamma, double(l), lam, double(m), got, exact});
        }
    };
    for (auto [mu, gamma] : grid) {
        auto cfg = FluxConfig::from_mantissa(mu, gamma);
        for (int a : {0, -1}) {
            double k = std::abs(a + mu);
            for (double lam : {pi / 2 - d, -pi / 2 + d}) compare(cfg, a, k, gamma * (a + mu), lam);
        }
        auto c0 = FluxConfig::from_mantissa(0.0, gamma);
        for (double lam : {pi / 2 - d, -pi / 2 + d}) compare(c0, 0, 0.0, 0.0, lam);
    }
    return verify::make_report("lambda-limit", dev, tol, rows);
}

/// 8x8 Gram matrices of eigenfunctions for MS R1/R2/R3 and Dirac R1/R2/R3.
inline VerificationReport orthonormality(double tol = 1e-6) {
    double dev = 0;
    std::vector<std::vector<double>> rows;
    int idx = 0;
    for (const auto& c : detail::ms_cases()) {
        std::vector<EigenfunctionHandle> hs;
        for (const auto& v : ms::discrete_spectrum(c.l, c.cfg, c.lambda, 7)) hs.push_back(ms::eigenfunction(c.cfg, c.lambda, v));
        double g = detail::gram_deviation(hs);
        dev = std::max(dev, g);
        rows.push_back({double(idx++), g});
    }
    for (const auto& c : detail::dirac_cases()) {
        auto lv = dirac::spectrum(c.p, c.lambda, 4);
        std::sort(lv.begin(), lv.end(), [](auto& a, auto& b) { return std::abs(a.energy) < std::abs(b.energy); });
        lv.resize(8);
        std::vector<dirac::DoubletHandle> hs;
        for (const auto& v : lv) hs.push_back(dirac::eigenfunction(c.p, c.lambda, v));
        double g = detail::gram_deviation(hs);
        dev = std::max(dev, g);
        rows.push_back({double(idx++), g});
    }
    return verify::make_report("orthonormality", dev, tol, rows);
}

/// Radial-equation residuals of every produced eigenpair on rho in [0.05, 15].
inline VerificationReport residuals(double tol = 1e-6) {
    double dev = 0;
    std::vector<std::vector<double>> rows;
    auto grid = verify::linear_grid(0.05, 15, 240);
    for (const auto& c : detail::ms_cases()) {
        for (const auto& v : ms::discrete_spectrum(c.l, c.cfg, c.lambda, 7)) {
            auto h = ms::eigenfunction(c.cfg, c.lambda, v);
            auto V = [&](double r) { return ms::potential(c.l, c.cfg.mu, c.cfg.gamma, r); };
            double res = verify::ode_residual(V, v.energy, h.eval, grid);
            dev = std::max(dev, res);
            rows.push_back({0, double(c.l), double(v.m), v.energy, res});
        }
    }
    for (const auto& c : detail::dirac_cases()) {
        for (const auto& v : dirac::spectrum(c.p, c.lambda, 4)) {
            auto h = dirac::eigenfunction(c.p, c.lambda, v);
            double res = dirac::system_residual(c.p, v.energy, h, grid);
            dev = std::max(dev, res);
            rows.push_back({1, double(c.p.l), double(v.n), v.energy, res});
        }
    }
    // AB: bound states and continuum functions of every region.
    auto ab_case = [&](int l, double mu, std::optional<Angle> la) {
        auto cfg = FluxConfig::from_mantissa(mu, 0.0);
        auto t = ab::classify(l, mu);
        auto V = [t](double r) { return t.alpha / (r * r); };
        for (double E : {0.5, 3.0}) {
            auto U = [&](double r) { return ab::continuous_eigenfunction(l, cfg, la, E, r); };
            double res = verify::ode_residual(V, E, U, grid);
            dev = std::max(dev, res);
            rows.push_back({2, double(l), mu, E, res});
        }
        if (la && t.tag != Region::R1)
            if (auto b = ab::bound_state(l, cfg, *la)) {
                double res = verify::ode_residual(V, b->energy, b->eigenfunction.eval, grid);
                dev = std::max(dev, res);
                rows.push_back({2, double(l), mu, b->energy, res});
            }
    };
    ab_case(2, 0.3, std::nullopt);
    ab_case(0, 0.3, Angle::radians(-0.6));
    ab_case(-1, 0.3, Angle::radians(0.5));
    ab_case(0, 0.0, Angle::radians(0.2));
    return verify::make_report("residuals", dev, tol, rows);
}

/// Wronskian identities over random parameter draws:
/// |Wr(F1,F2) + 1| < tol12 and |Wr(F1,F3) - omega1| + |Wr(F2,F3) - omega2| < tol3.
inline VerificationReport wronskian(std::uint64_t seed = 20240601, int draws = 50, double tol12 = 1e-9,
                                    double tol3 = 1e-8) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double dev = 0;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < draws; ++i) {
        dirac::DiracParams p;
        p.m_e = 0.5 + 1.5 * U(rng);
        p.p_z = -1 + 2 * U(rng);
        p.s = U(rng) < 0.5 ? -1 : 1;
        p.l = static_cast<int>(std::floor(3 * U(rng))) - 1;
        p.mu = 0.05 + 0.9 * U(rng);
        p.gamma = 0.3 + 2.7 * U(rng);
        double W = -3 + 6 * U(rng);
        double w1 = dirac::omega1(p, W), w2 = dirac::omega2(p, W);
        double scale = std::max({1.0, std::abs(w1), std::abs(w2)});
        for (double u : {-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0}) {
            double rho = std::sqrt(2 / p.gamma) * std::pow(10.0, u);
            auto F1 = dirac::solution_f1(p, W, rho), F2 = dirac::solution_f2(p, W, rho),
                 F3 = dirac::solution_f3(p, W, rho);
            double e12 = std::abs(msab::wronskian(F1, F2) + 1) / tol12;
            double e3 = (std::abs(msab::wronskian(F1, F3) - w1) + std::abs(msab::wronskian(F2, F3) - w2)) /
                        (scale * tol3);
            dev = std::max({dev, e12, e3});
            rows.push_back({double(i), W, rho, e12 * tol12, e3 * scale * tol3});
        }
    }
    // deviation is reported in units of the respective tolerance
    return verify::make_report("wronskian", dev, 1.0, rows);
}

/// Dirac gap and exclusion over at least 200 levels across regions with
/// lambda(s, p_z) = s * 0.4 (no level enters the gap for s lambda >= 0) and the
/// explicit lambda = 0, pi/2 cases.
inline VerificationReport dirac_gap(double tol = 1e-10) {
    double dev = 0;
    std::vector<std::vector<double>> rows;
    std::size_t count = 0;
    for (const Angle& la : {Angle::radians(0.4), Angle::zero(), Angle::half_pi()}) {
        dirac::DiracParams base;
        base.m_e = 1.0;
        base.mu = 0.35;
        base.gamma = 1.0;
        assembly::ExtensionChoice ch;
        bool generic = !la.is_zero() && !la.is_half_pi();
        ch.dirac = [la, generic](int s, double) { return generic ? Angle::radians(s * la.value()) : la; };
        auto t = assembly::dirac_full_spectrum(base, ch, {0.0}, -3, 3, 5.0);
        double min_abs = 1e300, excl = 1e300;
        for (const auto& r : t) {
            min_abs = std::min(min_abs, std::abs(r.energy));
            bool check_excl = r.region == Region::R1 || (r.region == Region::R3 && la.is_half_pi());
            if (check_excl) excl = std::min(excl, std::abs(r.energy + r.s * base.M()));
        }
        count += t.size();
        double gap_dev = std::abs(min_abs - base.m_e);
        dev = std::max(dev, gap_dev);
        // an excluded point present would give excl = 0
        if (excl < 1e-10) dev = std::max(dev, 1.0);
        rows.push_back({la.value(), double(t.size()), min_abs, excl});
    }
    if (count < 200) dev = std::max(dev, 1.0);
    return verify::make_report("dirac-gap", dev, tol, rows);
}

/// AB bound-state closed forms.
inline VerificationReport ab_bound(double tol = 1e-10) {
    // -4 exp(-2C) with C to 30 digits
    const double C = 0.577215664901532860606512090082;
    const double exact3 = -4 * std::exp(-2 * C);
    auto b3 = ab::bound_state(0, FluxConfig::from_mantissa(0.0, 0.0), Angle::zero());
    auto b2 = ab::bound_state(0, FluxConfig::from_mantissa(0.5, 0.0), Angle::parse("-pi/4"));
    double d3 = b3 ? std::abs(b3->energy - exact3) : 1e300;
    double d2 = b2 ? std::abs(b2->energy + 1.0) : 1e300;
    return verify::make_report("ab-bound", std::max(d2, d3), tol,
                               {{0, b3 ? b3->energy : 0, exact3, d3}, {1, b2 ? b2->energy : 0, -1.0, d2}});
}

/// Boundary conditions at the origin for every lambda-family.
inline VerificationReport boundary(double tol = 1e-5) {
    double dev = 0;
    std::vector<std::vector<double>> rows;
    auto add = [&](double id, double lam, double res) {
        dev = std::max(dev, res);
        rows.push_back({id, lam, res});
    };
    using verify::power;
    using verify::power_log;
    for (double lam : {-0.9, -0.3, 0.4, 1.2}) {
        Angle la = Angle::radians(lam);
        // AB R2, a = 0 and a = -1: (k0 rho)^{1/2 + k} cos + (k0 rho)^{1/2 - k} sin
        for (int a : {0, -1}) {
            auto cfg = FluxConfig::from_mantissa(0.35, 0.0, 0, 1, 1, 1.7);
            double k = std::abs(a + cfg.mu), k0 = cfg.kappa0;
            verify::BcTarget t{power(0.5 + k, k0), power(0.5 - k, k0), la.cos(), la.sin(),
                               {power(2.5 + k), power(2.5 - k), power(4.5 + k), power(4.5 - k)}};
            add(1, lam, verify::bc_fit([&](double r) { return ab::continuous_eigenfunction(a, cfg, la, 2.0, r); }, t));
            if (auto b = ab::bound_state(a, cfg, la)) add(2, lam, verify::bc_fit(b->eigenfunction.eval, t));
        }
        // AB R3: rho^{1/2} ln(k0 rho) cos + rho^{1/2} sin
        {
            auto cfg = FluxConfig::from_mantissa(0.0, 0.0, 0, 1, 1, 0.8);
            verify::BcTarget t{power_log(0.5, cfg.kappa0), power(0.5), la.cos(), la.sin(),
                               {power_log(2.5), power(2.5), power_log(4.5), power(4.5)}};
            add(3, lam, verify::bc_fit([&](double r) { return ab::continuous_eigenfunction(0, cfg, la, 1.5, r); }, t));
            if (auto b = ab::bound_state(0, cfg, la)) add(4, lam, verify::bc_fit(b->eigenfunction.eval, t));
        }
        // MS R2: xi^{1/2 + k} sin + xi^{1/2 - k} cos, xi = sqrt(gamma/2) rho
        for (int a : {0, -1}) {
            auto cfg = FluxConfig::from_mantissa(0.35, 1.3);
            double k = std::abs(a + cfg.mu), xs = std::sqrt(cfg.gamma / 2);
            verify::BcTarget t{power(0.5 + k, xs), power(0.5 - k, xs), la.sin(), la.cos(),
                               {power(2.5 + k), power(2.5 - k), power(4.5 + k), power(4.5 - k)}};
            for (const auto& v : ms::discrete_spectrum(a, cfg, la, 2))
                add(5, lam, verify::bc_fit(ms::eigenfunction(cfg, la, v).eval, t));
        }
        // MS R3: rho^{1/2} ln(xi) cos + rho^{1/2} sin
        {
            auto cfg = FluxConfig::from_mantissa(0.0, 1.3);
            double xs = std::sqrt(cfg.gamma / 2);
            verify::BcTarget t{power_log(0.5, xs), power(0.5), la.cos(), la.sin(),
                               {power_log(2.5), power(2.5), power_log(4.5), power(4.5)}};
            for (const auto& v : ms::discrete_spectrum(0, cfg, la, 2))
                add(6, lam, verify::bc_fit(ms::eigenfunction(cfg, la, v).eval, t));
        }
        // Dirac R3: ((m rho)^{k0} cos, (m rho)^{-k0} sin), both signs of s and eps
        for (int s : {-1, 1}) {
            for (int eps : {-1, 1}) {
                dirac::DiracParams p;
                p.m_e = 1.2;
                p.mu = 0.3;
                p.s = s;
                p.eps = eps;
                for (const auto& v : dirac::spectrum_r3(p, la, -2, 1))
                    add(7, lam, dirac::boundary_condition_check_r3(dirac::eigenfunction(p, la, v).eval, la, p));
            }
        }
    }
    return verify::make_report("boundary", dev, tol, rows);
}

/// Parseval gap of a fixed test profile in one MS (l, lambda) sector for
/// n_max in {8, 16, 32, 64}: relative gap below `tol` at 64 and decreasing.
inline VerificationReport parseval(double tol = 0.02) {
    auto cfg = FluxConfig::from_mantissa(0.3, 1.0);
    Angle la = Angle::radians(0.7);
    auto f = [](double r) { return r * std::exp(-(r - 1.5) * (r - 1.5)); };
    std::vector<std::vector<double>> rows;
    double prev = 1e300, last = 0;
    bool monotone = true;
    for (int n : {8, 16, 32, 64}) {
        auto basis = assembly::ms_channel_basis(cfg, 0, la, n);
        basis.extent = std::max(basis.extent, 12.0);
        auto ex = assembly::expand(f, basis);
        double gap = assembly::parseval_gap(ex) / ex.norm2;
        if (!(gap < prev)) monotone = false;
        prev = gap;
        last = gap;
        rows.push_back({double(n), gap});
    }
    return verify::make_report("parseval", monotone ? last : 1.0, tol, rows);
}

/// eps = -1 spectra against eps = +1 with s -> -s, and residual/boundary
/// checks of the flipped doublets under the eps = -1 system.
inline VerificationReport eps_flip(double tol = 1e-12, double res_tol = 1e-6) {
    double dev = 0;
    std::vector<std::vector<double>> rows;
    auto grid = verify::linear_grid(0.05, 15, 200);
    for (const auto& c : detail::dirac_cases()) {
        for (int s : {-1, 1}) {
            dirac::DiracParams m = c.p, p = c.p;
            m.eps = -1;
            m.s = s;
            p.eps = 1;
            p.s = -s;
            auto a = dirac::spectrum(m, c.lambda, 3), b = dirac::spectrum(p, c.lambda, 3);
            double d = a.size() == b.size() ? 0.0 : 1.0;
            for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
                d = std::max(d, std::abs(a[i].energy - b[i].energy) / std::abs(b[i].energy));
            dev = std::max(dev, d / tol);
            for (const auto& v : a) {
                // flip the eps = +1 eigen-doublet explicitly and check it under eps = -1
                auto h = dirac::eigenfunction(p, c.lambda, v);
                auto [fh, fp] = dirac::epsilon_flip(h, p);
                double res = dirac::system_residual(fp, v.energy, fh, grid);
                dev = std::max(dev, res / res_tol);
                rows.push_back({double(s), v.energy, d, res});
            }
        }
    }
    // deviation in units of the respective tolerance
    return verify::make_report("eps-flip", dev, 1.0, rows);
}

/// Registry of suites by name (CLI `verify --suite`).
inline std::map<std::string, std::function<VerificationReport(std::uint64_t)>> registry() {
    return {{"landau", [](std::uint64_t) { return landau(); }},
            {"lambda-limit", [](std::uint64_t) { return lambda_limit(); }},
            {"orthonormality", [](std::uint64_t) { return orthonormality(); }},
            {"residuals", [](std::uint64_t) { return residuals(); }},
            {"wronskian", [](std::uint64_t seed) { return wronskian(seed); }},
            {"dirac-gap", [](std::uint64_t) { return dirac_gap(); }},
            {"ab-bound", [](std::uint64_t) { return ab_bound(); }},
            {"boundary", [](std::uint64_t) { return boundary(); }},
            {"parseval", [](std::uint64_t) { return parseval(); }},
            {"eps-flip", [](std::uint64_t) { return eps_flip(); }}};
}

}  // namespace msab::suites
