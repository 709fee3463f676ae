#pragma once
// Assembly of full 2D/3D Schroedinger and 3D Dirac spectra and eigenfunctions
// from radial data: index maps, angular and longitudinal phases, p_z families,
// spinor construction and expansion coefficients (inversion formulas).
//
// Units: radial Schroedinger operators work in the operator energy (curly E);
// physical energies are E = curly E / M_s with M_s = 2 m_e / hbar^2, and
// continuum functions are rescaled by sqrt(M_s) once, here.  hbar = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "ab_radial.hpp"
#include "core.hpp"
#include "dirac_radial.hpp"
#include "ms_radial.hpp"
#include "verify.hpp"

namespace msab::assembly {

using cplx = std::complex<double>;

// ---------------------------------------------------------------- index maps

/// n(l, m) = m for l <= -1, m + l for l >= 0.
inline int index_map(int l, int m) {
    if (m < 0) throw config_error("m must be >= 0");
    return l <= -1 ? m : m + l;
}

/// m(n, l) = n for l <= -1, n - l for 0 <= l <= n.
inline int index_unmap(int n, int l) {
    if (n < 0) throw config_error("n must be >= 0");
    if (l <= -1) return n;
    if (l > n) throw config_error("index_unmap: l = " + std::to_string(l) + " exceeds n = " + std::to_string(n));
    return n - l;
}

// ---------------------------------------------------------------- extension choice

/// Extension parameters of the whole family: lambda for the l = 0 channel when
/// mu = 0, lambda_a for the channels a = 0, -1 when mu > 0.  The optional
/// hooks make them p_z-dependent (3D) or (s, p_z)-dependent (Dirac).
struct ExtensionChoice {
    std::optional<Angle> lambda;
    std::optional<Angle> lambda_a0;
    std::optional<Angle> lambda_am1;
    std::function<ExtensionChoice(double)> per_pz;
    std::function<Angle(int, double)> dirac;

    /// Constant choice at longitudinal momentum p_z.
    ExtensionChoice at(double p_z) const {
        if (!per_pz) return *this;
        ExtensionChoice c = per_pz(p_z);
        c.dirac = dirac;
        return c;
    }

    /// Angle for channel l (empty outside the special channels); throws if a
    /// special channel has no angle.
    std::optional<Angle> for_channel(int l, double mu) const {
        if (mu == 0.0) {
            if (l != 0) return std::nullopt;
            if (!lambda) throw config_error("mu = 0: the channel l = 0 requires lambda");
            return lambda;
        }
        if (l == 0 || l == -1) {
            const auto& a = l == 0 ? lambda_a0 : lambda_am1;
            if (!a)
                throw config_error("mu > 0: channel l_a = " + std::to_string(l) +
                                   " (a in {0, -1}) requires lambda_a");
            return a;
        }
        return std::nullopt;
    }

    Angle for_dirac(int s, double p_z) const {
        if (dirac) return dirac(s, p_z);
        if (lambda) return *lambda;
        throw config_error("Dirac region R3 requires lambda");
    }
};

/// Piecewise-linear lambda(p_z) from a table of (p_z, lambda) pairs sorted in
/// p_z; constant beyond the ends.
inline std::function<Angle(double)> interpolate_lambda(std::vector<std::pair<double, double>> table) {
    if (table.empty()) throw config_error("empty lambda table");
    std::sort(table.begin(), table.end());
    return [table](double pz) {
        if (pz <= table.front().first) return Angle::radians(table.front().second);
        if (pz >= table.back().first) return Angle::radians(table.back().second);
        auto it = std::upper_bound(table.begin(), table.end(), std::make_pair(pz, -1e300));
        auto lo = *(it - 1), hi = *it;
        double t = (pz - lo.first) / (hi.first - lo.first);
        return Angle::radians(lo.second + t * (hi.second - lo.second));
    };
}

// ---------------------------------------------------------------- eigenfunctions

/// Assembled eigenfunction: evaluator at (rho, phi, z) returning one complex
/// component (scalar) or four (spinor).
struct AssembledEigenfunction {
    std::string kind;  ///< "scalar2D", "scalar3D" or "spinor4"
    int n = 0, l = 0, s = 0;
    double p_z = 0.0;
    double energy = 0.0;
    std::function<std::vector<cplx>(double, double, double)> eval;
};

/// Psi(rho, phi) = (2 pi rho)^{-1/2} e^{i eps (phi0 - l) phi} U(rho); for
/// `three_d` also (2 pi)^{-1/2} e^{i p_z z}.
inline AssembledEigenfunction scalar_eigenfunction(const FluxConfig& cfg, int n, int l, double energy,
                                                   std::function<double(double)> U, bool three_d = false,
                                                   double p_z = 0.0) {
    AssembledEigenfunction a;
    a.kind = three_d ? "scalar3D" : "scalar2D";
    a.n = n;
    a.l = l;
    a.p_z = p_z;
    a.energy = energy;
    const double j = cfg.eps * (cfg.phi0 - l);
    a.eval = [U, j, three_d, p_z](double rho, double phi, double z) {
        cplx v = std::polar(U(rho) / std::sqrt(2 * pi * rho), j * phi);
        if (three_d) v *= std::polar(1 / std::sqrt(2 * pi), p_z * z);
        return std::vector<cplx>{v};
    };
    return a;
}

/// Two-spinor e_s(p_z): e_1 = ((m+M)/2M)^{1/2} (1, p_z/(m+M)), e_{-1} = -i sigma^2 e_1.
inline std::array<double, 2> e_spinor(int s, double m_e, double p_z) {
    double M = std::sqrt(m_e * m_e + p_z * p_z);
    std::array<double, 2> e1{std::sqrt((m_e + M) / (2 * M)), p_z / std::sqrt(2 * M * (m_e + M))};
    if (s == 1) return e1;
    if (s == -1) return {-e1[1], e1[0]};
    throw config_error("s must be +1 or -1");
}

/// S_l(phi) = e^{i eps (phi0 - l + 1/2) phi} antidiag(i e^{i phi/2}, -e^{-i phi/2}).
inline std::array<std::array<cplx, 2>, 2> s_matrix(int eps, int phi0, int l, double phi) {
    cplx ph = std::polar(1.0, eps * (phi0 - l + 0.5) * phi);
    std::array<std::array<cplx, 2>, 2> S{};
    S[0][1] = ph * cplx(0, 1) * std::polar(1.0, phi / 2);
    S[1][0] = -ph * std::polar(1.0, -phi / 2);
    return S;
}

/// Four-spinor (2 pi sqrt(rho))^{-1} e^{i p_z z} S_l(phi) F(rho) (x) e_s(p_z),
/// components ordered (e_s[0] chi, e_s[1] chi).
inline AssembledEigenfunction dirac_spinor(const dirac::DiracLevel& level, const dirac::DiracParams& p, int phi0,
                                           const dirac::DoubletHandle& F) {
    p.validate();
    AssembledEigenfunction a;
    a.kind = "spinor4";
    a.n = level.n;
    a.l = p.l;
    a.s = p.s;
    a.p_z = p.p_z;
    a.energy = level.energy;
    auto e = e_spinor(p.s, p.m_e, p.p_z);
    const int eps = p.eps, l = p.l;
    const double pz = p.p_z;
    auto eval = F.eval;
    a.eval = [=](double rho, double phi, double z) {
        Doublet d = eval(rho);
        auto S = s_matrix(eps, phi0, l, phi);
        cplx pre = std::polar(1 / (2 * pi * std::sqrt(rho)), pz * z);
        cplx chi0 = pre * (S[0][0] * d.f + S[0][1] * d.g);
        cplx chi1 = pre * (S[1][0] * d.f + S[1][1] * d.g);
        return std::vector<cplx>{e[0] * chi0, e[0] * chi1, e[1] * chi0, e[1] * chi1};
    };
    return a;
}

// ---------------------------------------------------------------- Schroedinger spectra

/// One level of an assembled Schroedinger spectrum.
struct Level2D {
    int n = 0, l = 0, m = 0;
    double p_z = 0.0;
    double energy = 0.0;  ///< physical units (operator energy / M_s, plus p_z^2/M_s in 3D)
    double weight = 0.0;  ///< radial normalization Q
    Region region = Region::R1;
    std::optional<Angle> lambda;
};

inline bool level_order(const Level2D& a, const Level2D& b) {
    if (a.p_z != b.p_z) return a.p_z < b.p_z;
    if (a.l != b.l) return a.l < b.l;
    return a.n < b.n;
}

/// Magnetic-solenoid 2D spectrum for channels l in [l_min, l_max] and n <= n_max
/// (channels l >= 0 contribute n = l .. n_max).  Rows are ordered by (l, n).
inline std::vector<Level2D> spectrum_2d(const FluxConfig& cfg, const ExtensionChoice& choice, int n_max, int l_min,
                                        int l_max, double Ms = 1.0) {
    if (!(cfg.gamma > 0)) throw config_error("spectrum_2d requires gamma > 0 (use spectrum_2d_ab for B = 0)");
    if (!(Ms > 0)) throw config_error("M_s must be > 0");
    if (n_max < 0 || l_min > l_max) throw config_error("empty level window");
    std::vector<Level2D> out;
    for (int l = l_min; l <= std::min(l_max, n_max); ++l) {
        auto la = choice.for_channel(l, cfg.mu);
        int m_max = la ? n_max : n_max - (l >= 0 ? l : 0);
        for (const auto& v : ms::discrete_spectrum(l, cfg, la, m_max)) {
            Level2D r;
            r.l = l;
            r.m = v.m;
            r.n = la ? v.m : index_map(l, v.m);
            if (r.n > n_max) continue;
            r.energy = v.energy / Ms;
            r.weight = v.weight;
            r.region = v.region.tag;
            r.lambda = la;
            out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end(), level_order);
    return out;
}

/// Pure-AB 2D spectrum: the ray [0, inf) plus at most one negative level per
/// special channel.
struct AbSpectrum2D {
    double continuum_onset = 0.0;
    std::vector<Level2D> bound;
};

inline AbSpectrum2D spectrum_2d_ab(const FluxConfig& cfg, const ExtensionChoice& choice, double Ms = 1.0) {
    if (cfg.gamma != 0.0) throw config_error("spectrum_2d_ab requires gamma = 0");
    AbSpectrum2D sp;
    std::vector<int> special = cfg.mu == 0.0 ? std::vector<int>{0} : std::vector<int>{-1, 0};
    for (int l : special) {
        auto la = choice.for_channel(l, cfg.mu);
        if (auto b = ab::bound_state(l, cfg, *la)) {
            Level2D r;
            r.l = l;
            r.energy = b->energy / Ms;
            r.weight = b->weight;
            r.region = ab::classify(l, cfg.mu).tag;
            r.lambda = la;
            sp.bound.push_back(r);
        }
    }
    return sp;
}

/// AB continuum eigenfunction in physical energy E, normalized to delta(E - E'):
/// sqrt(M_s) U_{M_s E}(rho).
inline double ab_continuum_physical(int l, const FluxConfig& cfg, const std::optional<Angle>& lambda, double E,
                                    double rho, double Ms = 1.0) {
    return std::sqrt(Ms) * ab::continuous_eigenfunction(l, cfg, lambda, Ms * E, rho);
}

/// 3D family: for every sampled p_z the 2D levels shifted by p_z^2/M_s
/// (= p_z^2/2m_e), with lambda taken from the p_z hook.  For gamma = 0 only
/// the negative levels are listed.  continuum_onset is gamma/M_s (MS) or 0.
struct Spectrum3D {
    double continuum_onset = 0.0;
    std::vector<Level2D> levels;
};

inline Spectrum3D spectrum_3d(const FluxConfig& cfg, const ExtensionChoice& choice, const std::vector<double>& p_z,
                              int n_max, int l_min, int l_max, double Ms = 1.0) {
    Spectrum3D sp;
    sp.continuum_onset = cfg.gamma / Ms;
    for (double pz : p_z) {
        ExtensionChoice c = choice.at(pz);
        std::vector<Level2D> rows;
        if (cfg.gamma > 0) rows = spectrum_2d(cfg, c, n_max, l_min, l_max, Ms);
        else rows = spectrum_2d_ab(cfg, c, Ms).bound;
        for (auto& r : rows) {
            r.p_z = pz;
            r.energy += pz * pz / Ms;
            sp.levels.push_back(r);
        }
    }
    std::sort(sp.levels.begin(), sp.levels.end(), level_order);
    return sp;
}

// ---------------------------------------------------------------- Dirac

/// One level of the assembled Dirac spectrum.
struct DiracRow {
    int s = 1, l = 0, n = 0, sigma = 1;
    double p_z = 0.0, energy = 0.0, weight = 0.0;
    Region region = Region::R1;
    std::optional<Angle> lambda;
};

/// All Dirac levels with |E| <= window over s = +-1, the sampled p_z and
/// l in [l_min, l_max].  Rows ordered by (s, p_z, l, E).
inline std::vector<DiracRow> dirac_full_spectrum(const dirac::DiracParams& base, const ExtensionChoice& choice,
                                                 const std::vector<double>& p_z, int l_min, int l_max, double window) {
    if (!(window > 0) || l_min > l_max) throw config_error("empty Dirac window");
    std::vector<DiracRow> out;
    for (int s : {-1, 1}) {
        for (double pz : p_z) {
            for (int l = l_min; l <= l_max; ++l) {
                dirac::DiracParams p = base;
                p.s = s;
                p.p_z = pz;
                p.l = l;
                p.validate();
                double M = p.M();
                if (window < M) continue;
                int n_max = static_cast<int>(std::ceil((window * window - M * M) / (2 * p.gamma))) + 1;
                std::optional<Angle> la;
                auto q = dirac::detail::unflipped(p);
                if (dirac::region(q) == Region::R3) la = choice.for_dirac(s, pz);
                std::vector<dirac::DiracLevel> lv;
                if (dirac::region(q) == Region::R2) lv = dirac::spectrum(p, la, std::max(0, n_max - l));
                else lv = dirac::spectrum(p, la, n_max);
                for (const auto& v : lv) {
                    if (std::abs(v.energy) > window) continue;
                    DiracRow r;
                    r.s = s;
                    r.l = l;
                    r.n = v.n;
                    r.sigma = v.sigma;
                    r.p_z = pz;
                    r.energy = v.energy;
                    r.weight = v.weight;
                    r.region = dirac::region(q);
                    r.lambda = la;
                    out.push_back(r);
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const DiracRow& a, const DiracRow& b) {
        if (a.s != b.s) return a.s < b.s;
        if (a.p_z != b.p_z) return a.p_z < b.p_z;
        if (a.l != b.l) return a.l < b.l;
        return a.energy < b.energy;
    });
    return out;
}

// ---------------------------------------------------------------- expansion

/// Radial basis of one channel: normalized discrete eigenfunctions plus an
/// optional delta-normalized continuum U(E, rho) on [0, inf).
struct ExpansionBasis {
    std::vector<std::function<double(double)>> discrete;
    std::function<double(double, double)> continuum;  ///< (E, rho) -> U_E(rho), may be empty
    double extent = 0.0;      ///< radius beyond which the test function is negligible
    double wavenumber = 1.0;  ///< largest local oscillation rate of the basis
};

/// Coefficients of a test function: discrete overlaps and, if the basis has a
/// continuum, Phi(E) tabulated on a Gauss-Legendre E-grid over [0, cutoff].
struct Expansion {
    std::vector<double> discrete;
    std::vector<double> e_nodes, e_weights, continuous;
    double norm2 = 0.0;
};

/// Gauss-Legendre E-grid over [0, cutoff] with panels of width `panel`.
inline void energy_grid(double cutoff, double panel, std::vector<double>& nodes, std::vector<double>& weights) {
    const auto& xs = boost::math::quadrature::gauss<double, 20>::abscissa();
    const auto& ws = boost::math::quadrature::gauss<double, 20>::weights();
    int np = std::max(1, static_cast<int>(std::ceil(cutoff / panel)));
    double h = cutoff / np;
    for (int k = 0; k < np; ++k) {
        double c = (k + 0.5) * h, r = h / 2;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            nodes.push_back(c - r * xs[i]);
            weights.push_back(r * ws[i]);
            if (xs[i] != 0) {
                nodes.push_back(c + r * xs[i]);
                weights.push_back(r * ws[i]);
            }
        }
    }
}

inline Expansion expand(const std::function<double(double)>& f, const ExpansionBasis& basis,
                        double energy_cutoff = 0.0, double energy_panel = 1.0) {
    if (!(basis.extent > 0)) throw config_error("expansion basis needs a positive extent");
    double k = basis.wavenumber;
    if (basis.continuum) k = std::max(k, std::sqrt(energy_cutoff));
    verify::RadialRule rule(basis.extent, k);
    auto fs = rule.sample(f);
    Expansion ex;
    ex.norm2 = rule.integrate_samples(fs, &fs);
    for (const auto& u : basis.discrete) {
        auto us = rule.sample(u);
        ex.discrete.push_back(rule.integrate_samples(us, &fs));
    }
    if (basis.continuum && energy_cutoff > 0) {
        energy_grid(energy_cutoff, energy_panel, ex.e_nodes, ex.e_weights);
        for (double E : ex.e_nodes) {
            auto us = rule.sample([&](double r) { return basis.continuum(E, r); });
            ex.continuous.push_back(rule.integrate_samples(us, &fs));
        }
    }
    return ex;
}

/// Sum_n c_n u_n(rho) + int_0^cutoff Phi(E) U_E(rho) dE.
inline std::function<double(double)> reconstruct(const Expansion& ex, const ExpansionBasis& basis) {
    return [ex, basis](double rho) {
        double v = 0;
        for (std::size_t i = 0; i < ex.discrete.size(); ++i) v += ex.discrete[i] * basis.discrete[i](rho);
        for (std::size_t i = 0; i < ex.continuous.size(); ++i)
            v += ex.e_weights[i] * ex.continuous[i] * basis.continuum(ex.e_nodes[i], rho);
        return v;
    };
}

/// | ||f||^2 - sum |c_n|^2 - int |Phi(E)|^2 dE |.
inline double parseval_gap(const Expansion& ex) {
    double s = 0;
    for (double c : ex.discrete) s += c * c;
    for (std::size_t i = 0; i < ex.continuous.size(); ++i) s += ex.e_weights[i] * ex.continuous[i] * ex.continuous[i];
    return std::abs(ex.norm2 - s);
}

/// Basis of the first `count` normalized eigenfunctions of an MS channel.
inline ExpansionBasis ms_channel_basis(const FluxConfig& cfg, int l, const std::optional<Angle>& lambda, int count) {
    if (count < 1) throw config_error("basis size must be >= 1");
    ExpansionBasis b;
    double emax = 0;
    for (const auto& v : ms::discrete_spectrum(l, cfg, lambda, count - 1)) {
        auto h = ms::eigenfunction(cfg, lambda, v);
        b.discrete.push_back(h.eval);
        b.extent = std::max(b.extent, h.extent);
        emax = std::max(emax, std::abs(v.energy));
    }
    b.wavenumber = std::sqrt(emax + 1);
    return b;
}

}  // namespace msab::assembly
