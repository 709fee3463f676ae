#pragma once
// Radial Dirac operators in the magnetic-solenoid field.  A channel is fixed
// by the spin label s = +-1, the angular number l, the longitudinal momentum
// p_z (through M = sqrt(m_e^2 + p_z^2)) and eps = +-1.  Doublets F = (f, g)
// solve
//   f' - eps (gamma rho/2 + kappa_l/rho) f + (W - sM) g = 0,
//   g' + eps (gamma rho/2 + kappa_l/rho) g - (W + sM) f = 0,
// with kappa_l = l + mu - 1/2.  Everything is computed for eps = +1; the
// eps = -1 operators are reached by the map (f, g) -> (g, -f), s -> -s.
// Throughout z = gamma rho^2/2 and w = W^2 - M^2.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "ms_radial.hpp"
#include "roots.hpp"
#include "specfun.hpp"
#include "verify.hpp"

namespace msab::dirac {

/// Physical parameters of one radial Dirac channel.
struct DiracParams {
    double m_e = 1.0;   ///< mass (c = hbar = 1)
    double p_z = 0.0;   ///< longitudinal momentum
    int s = 1;          ///< spin label
    int l = 0;          ///< angular number
    double mu = 0.0;    ///< flux mantissa in [0, 1)
    double gamma = 1.0; ///< field strength e|B|/c hbar > 0
    int eps = 1;        ///< eps_q eps_B

    double M() const { return std::sqrt(m_e * m_e + p_z * p_z); }
    double kappa_l() const { return l + mu - 0.5; }
    /// Region-3 boundary exponent mu - 1/2 (meaningful for l = 0).
    double kappa0() const { return mu - 0.5; }
    double beta1() const { return 1 - l - mu; }
    double beta2() const { return l + mu; }

    void validate() const {
        if (!(m_e > 0)) throw config_error("m_e must be > 0");
        if (!std::isfinite(p_z)) throw config_error("p_z must be finite");
        if (std::abs(s) != 1) throw config_error("s must be +1 or -1");
        if (std::abs(eps) != 1) throw config_error("eps must be +1 or -1");
        if (!(mu >= 0 && mu < 1)) throw config_error("mu must lie in [0, 1)");
        if (!(gamma > 0)) throw config_error("gamma must be > 0");
    }
};

/// Region by exact integer logic: R1 for kappa_l <= -1/2, R2 for l >= 1,
/// R3 for l = 0 with mu > 0.
inline Region region(const DiracParams& p) {
    if (p.l >= 1) return Region::R2;
    if (p.l <= -1 || p.mu == 0.0) return Region::R1;
    return Region::R3;
}

/// M_k = sqrt(M^2 + 2 gamma k).
inline double ladder_energy(const DiracParams& p, double k) {
    double M = p.M();
    return std::sqrt(M * M + 2 * p.gamma * k);
}

/// One discrete level.  In R1/R2 and in R3 at lambda = 0, pi/2 `n` is the
/// signed label with sigma distinguishing +0 from -0; for generic lambda in R3
/// `n` is k in Z (k >= 0 above the gap, k < 0 below), inherited from the
/// lambda = 0 level the root continues.
struct DiracLevel {
    int n = 0;
    int sigma = 1;
    double energy = 0.0;
    double weight = 0.0;  ///< Q
};

/// Normalized doublet eigenfunction with metadata.
struct DoubletHandle {
    Region region = Region::R1;
    int l = 0;
    double energy = 0.0;
    std::optional<Angle> lambda;
    double extent = 0.0;
    std::function<Doublet(double)> eval;

    Doublet operator()(double rho) const { return eval(rho); }
    std::function<double(double)> upper() const {
        auto e = eval;
        return [e](double r) { return e(r).f; };
    }
    std::function<double(double)> lower() const {
        auto e = eval;
        return [e](double r) { return e(r).g; };
    }
};

namespace detail {

inline void check_rho(double rho) {
    if (!(rho > 0)) throw domain_error("rho must be > 0");
}

/// exp(log_pre) rho^{b - 1/2} e^{-z/2} (upper, lower) for F1 with explicit
/// parameters; wm = W - sM.
inline Doublet f1_raw(double a1, double b1, double wm, double gamma, double rho, double log_pre = 0.0) {
    double z = gamma * rho * rho / 2;
    double pre = std::exp(log_pre + (b1 - 0.5) * std::log(rho) - z / 2);
    double up = wm == 0.0 ? 0.0 : -wm * rho / (2 * b1) * specfun::kummer_m(a1 + 1, b1 + 1, z);
    return {pre * up, pre * specfun::kummer_m(a1, b1, z)};
}

/// F2 with explicit parameters; wp = W + sM.
inline Doublet f2_raw(double a2, double b2, double wp, double gamma, double rho, double log_pre = 0.0) {
    double z = gamma * rho * rho / 2;
    double pre = std::exp(log_pre + (b2 - 0.5) * std::log(rho) - z / 2);
    double low = wp == 0.0 ? 0.0 : wp * rho / (2 * b2) * specfun::kummer_m(a2, b2 + 1, z);
    return {pre * specfun::kummer_m(a2, b2, z), pre * low};
}

/// F3 with explicit parameters, times exp(log_pre), without intermediate overflow.
inline Doublet f3_raw(double a1, double b1, double wm, double gamma, double rho, double log_pre = 0.0) {
    double z = gamma * rho * rho / 2;
    double base = log_pre + (b1 - 0.5) * std::log(rho) - z / 2;
    Doublet F;
    if (wm != 0.0) {
        auto u = specfun::tricomi_u_log(a1 + 1, b1 + 1, z);
        double c = wm * rho / 2;
        if (u.sign != 0) F.f = u.sign * (c > 0 ? 1 : -1) * std::exp(base + std::log(std::abs(c)) + u.log_abs);
    }
    auto u = specfun::tricomi_u_log(a1, b1, z);
    if (u.sign != 0) F.g = u.sign * std::exp(base + u.log_abs);
    return F;
}

inline double alpha1(const DiracParams& p, double W) {
    double M = p.M();
    return -(W * W - M * M) / (2 * p.gamma);
}

/// Region-3 spectral coefficients c1 = m_e^{-2 kappa0} omega1 and
/// c2 = omega2, both multiplied by exp(-log_scale) so neither overflows.
struct R3Coefficients {
    double c1 = 0, c2 = 0, log_scale = 0;
};

inline R3Coefficients r3_coefficients(const DiracParams& p, double W) {
    const double a1 = alpha1(p, W), mu = p.mu, g = p.gamma;
    auto r1 = specfun::gamma_reciprocal_scaled(1 + a1);
    auto r2 = specfun::gamma_reciprocal_scaled(mu + a1);
    // omega1 = -(gamma/2)^mu Gamma(1-mu) (W - sM) / (gamma Gamma(1 + alpha1))
    double l1 = r1.log_scale + mu * std::log(g / 2) + std::lgamma(1 - mu) - std::log(g) +
                (1 - 2 * mu) * std::log(p.m_e);
    double v1 = -(W - p.s * p.M()) * r1.value;
    double l2 = r2.log_scale + std::lgamma(mu);
    double v2 = r2.value;
    double L = std::max(l1, l2);
    return {v1 * std::exp(l1 - L), v2 * std::exp(l2 - L), L};
}

/// Bounded spectral function omega_(lambda) / |(c1, c2)|; same zeros as Omega.
inline double r3_omega_normalized(const DiracParams& p, const Angle& lambda, double W) {
    auto c = r3_coefficients(p, W);
    return (c.c2 * lambda.cos() + c.c1 * lambda.sin()) / std::hypot(c.c1, c.c2);
}

inline double log_q_r1(const DiracParams& p, int n, double E) {
    const double b1 = p.beta1();
    double q2f = 1 + p.s * p.M() / E;
    return 0.5 * (b1 * std::log(p.gamma / 2) + std::lgamma(b1 + n) + std::log(q2f) - std::lgamma(n + 1.0) -
                  2 * std::lgamma(b1));
}

inline double log_q_r2(const DiracParams& p, int n, double E) {
    const double b2 = p.beta2();
    double q2f = 1 - p.s * p.M() / E;
    return 0.5 * (b2 * std::log(p.gamma / 2) + std::lgamma(n + p.mu) + std::log(q2f) -
                  std::lgamma(n - p.l + 1.0) - 2 * std::lgamma(b2));
}

/// Energy-ordered closed-form ladder E = sigma M_n with the index set
/// Z(s): the point -sM (sigma = -s, n = 0) is never generated.
inline std::vector<DiracLevel> f1_ladder(const DiracParams& p, int n_max) {
    std::vector<DiracLevel> out;
    for (int sigma : {-1, 1}) {
        int start = sigma == -p.s ? 1 : 0;
        for (int n = start; n <= n_max; ++n) {
            DiracLevel v;
            v.n = sigma * n;
            v.sigma = sigma;
            v.energy = sigma * ladder_energy(p, n);
            v.weight = std::exp(log_q_r1(p, n, v.energy));
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
    return out;
}

/// E = sigma M_{n + mu}, n = l .. l + k_max, both signs.
inline std::vector<DiracLevel> f2_ladder(const DiracParams& p, int k_max) {
    std::vector<DiracLevel> out;
    for (int sigma : {-1, 1}) {
        for (int k = 0; k <= k_max; ++k) {
            int n = k + p.l;
            DiracLevel v;
            v.n = sigma * n;
            v.sigma = sigma;
            v.energy = sigma * ladder_energy(p, n + p.mu);
            v.weight = std::exp(log_q_r2(p, n, v.energy));
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
    return out;
}

inline DiracParams unflipped(const DiracParams& p) {
    DiracParams q = p;
    if (p.eps == -1) {
        q.eps = 1;
        q.s = -p.s;
    }
    return q;
}

inline void require_region(const DiracParams& p, Region r) {
    if (region(p) != r)
        throw config_error("channel l = " + std::to_string(p.l) + " is in region " + to_string(region(p)) +
                           ", not " + to_string(r));
}

inline void require_r3_lambda(const DiracParams& p) {
    if (p.mu == 0.5)
        throw config_error("mu = 1/2 in region R3: the two boundary powers coincide and no boundary "
                           "condition is defined");
}

}  // namespace detail

// ---------------------------------------------------------------- solutions

/// F1(rho; s, W); requires beta1 = 1 - l - mu not a nonpositive integer.
inline Doublet solution_f1(const DiracParams& p, double W, double rho) {
    p.validate();
    detail::check_rho(rho);
    return detail::f1_raw(detail::alpha1(p, W), p.beta1(), W - p.s * p.M(), p.gamma, rho);
}

/// F2(rho; s, W); requires beta2 = l + mu not a nonpositive integer.
inline Doublet solution_f2(const DiracParams& p, double W, double rho) {
    p.validate();
    detail::check_rho(rho);
    double a2 = p.beta2() + detail::alpha1(p, W);
    return detail::f2_raw(a2, p.beta2(), W + p.s * p.M(), p.gamma, rho);
}

/// F3(rho; s, W), the solution decaying at infinity.
inline Doublet solution_f3(const DiracParams& p, double W, double rho) {
    p.validate();
    detail::check_rho(rho);
    return detail::f3_raw(detail::alpha1(p, W), p.beta1(), W - p.s * p.M(), p.gamma, rho);
}

/// omega1 = 2 (gamma/2)^{beta2} Gamma(beta1) / ((W + sM) Gamma(alpha1)),
/// evaluated in the entire form -(gamma/2)^{beta2} Gamma(beta1) (W - sM) / (gamma Gamma(1 + alpha1)).
inline double omega1(const DiracParams& p, double W) {
    p.validate();
    double a1 = detail::alpha1(p, W);
    return -std::pow(p.gamma / 2, p.beta2()) * specfun::gamma(p.beta1()) * (W - p.s * p.M()) / p.gamma *
           specfun::gamma_reciprocal(1 + a1);
}

/// omega2 = Gamma(beta2) / Gamma(alpha2).
inline double omega2(const DiracParams& p, double W) {
    p.validate();
    double a2 = p.beta2() + detail::alpha1(p, W);
    return specfun::gamma(p.beta2()) * specfun::gamma_reciprocal(a2);
}

// ---------------------------------------------------------------- spectra

/// Region R1: E = sigma M_n, n = 0 .. n_max over Z(s), ascending.
inline std::vector<DiracLevel> spectrum_r1(const DiracParams& p, int n_max) {
    p.validate();
    if (n_max < 0) throw config_error("n_max must be >= 0");
    auto q = detail::unflipped(p);
    detail::require_region(q, Region::R1);
    return detail::f1_ladder(q, n_max);
}

/// Region R2: E = sigma M_{n + mu}, |n| = l .. l + n_max, both signs, ascending.
inline std::vector<DiracLevel> spectrum_r2(const DiracParams& p, int n_max) {
    p.validate();
    if (n_max < 0) throw config_error("n_max must be >= 0");
    auto q = detail::unflipped(p);
    detail::require_region(q, Region::R2);
    return detail::f2_ladder(q, n_max);
}

/// Omega(W) = omega_(lambda) / omega~_(lambda) in region R3; +infinity
/// marks a pole (a zero of omega~).
inline double omega_capital(const DiracParams& p, const Angle& lambda, double W) {
    p.validate();
    auto q = detail::unflipped(p);
    detail::require_region(q, Region::R3);
    auto c = detail::r3_coefficients(q, W);
    double num = c.c2 * lambda.cos() + c.c1 * lambda.sin();
    double den = c.c2 * lambda.sin() - c.c1 * lambda.cos();
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

/// dOmega/dW by the five-point stencil with step h.
inline double omega_capital_derivative(const DiracParams& p, const Angle& lambda, double W, double h) {
    return roots::derivative5([&](double x) { return omega_capital(p, lambda, x); }, W, h);
}

namespace detail {

struct R3Root {
    int k = 0;
    double energy = 0, bracket_lo = 0, bracket_hi = 0;
};

/// The lambda = 0 level with label k: k >= 0 -> M_{k+mu}, k < 0 -> -M_{-k-1+mu}.
inline double r3_zero_level(const DiracParams& p, int k) {
    return k >= 0 ? ladder_energy(p, k + p.mu) : -ladder_energy(p, -k - 1 + p.mu);
}

/// Neighbouring pi/2 levels (below, above) of the lambda = 0 level k.  The
/// pi/2 ladder is {sigma M_n} over Z(s): -sM is absent.
inline std::pair<double, double> r3_half_pi_neighbours(const DiracParams& p, int k) {
    const double M = p.M();
    if (k >= 0) {
        double below = (k == 0 && p.s == -1) ? -M : ladder_energy(p, k);
        return {below, ladder_energy(p, k + 1)};
    }
    int n = -k - 1;
    double above = (n == 0 && p.s == 1) ? M : -ladder_energy(p, n);
    return {-ladder_energy(p, n + 1), above};
}

/// Root of omega_(lambda) continuing the lambda = 0 level k.  For lambda in
/// (0, pi/2) it lies between the lambda = 0 level and its pi/2 neighbour on
/// one side, for lambda < 0 on the other; the side is read off the sign
/// pattern so that no convention is assumed.
inline R3Root r3_root(const DiracParams& p, const Angle& lambda, int k) {
    const double e0 = r3_zero_level(p, k);
    auto [lo, hi] = r3_half_pi_neighbours(p, k);
    auto f = [&](double W) { return r3_omega_normalized(p, lambda, W); };
    double f0 = f(e0), flo = f(lo), fhi = f(hi);
    bool below = (flo > 0) != (f0 > 0);
    bool above = (fhi > 0) != (f0 > 0);
    if (below == above) throw numerical_error("region-3 root is not isolated next to the lambda = 0 level", lo, hi);
    R3Root r;
    r.k = k;
    r.bracket_lo = below ? lo : e0;
    r.bracket_hi = below ? e0 : hi;
    r.energy = roots::solve_bracketed(f, r.bracket_lo, r.bracket_hi);
    return r;
}

/// Q^2 = 1 / (-Omega'(E)), Omega' by the five-point stencil with a step of
/// 1e-4 of the bracket width.
inline double r3_weight(const DiracParams& p, const Angle& lambda, const R3Root& r) {
    double h = 1e-4 * (r.bracket_hi - r.bracket_lo);
    h = std::min({h, 0.25 * (r.energy - r.bracket_lo), 0.25 * (r.bracket_hi - r.energy)});
    double d = roots::derivative5(
        [&](double W) {
            auto c = r3_coefficients(p, W);
            return (c.c2 * lambda.cos() + c.c1 * lambda.sin()) / (c.c2 * lambda.sin() - c.c1 * lambda.cos());
        },
        r.energy, h);
    if (!(d < 0) || !std::isfinite(d))
        throw numerical_error("region-3 weight: Omega' is not negative at the root", r.bracket_lo, r.bracket_hi);
    return 1 / std::sqrt(-d);
}

}  // namespace detail

/// Region R3 (l = 0, mu > 0): levels k in [k_min, k_max].  lambda = 0 and
/// lambda = pi/2 use the closed forms; at lambda = 0 the window k >= 0 maps to
/// n = k and k < 0 to n = -(-k - 1) with sigma = -1 (R2 labels with l = 0), at
/// pi/2 E_k = sign(k) M_|k|, E_0 = sM.  Other lambda are roots of Omega
/// refined to a few ulps.
inline std::vector<DiracLevel> spectrum_r3(const DiracParams& p, const Angle& lambda, int k_min, int k_max) {
    p.validate();
    if (k_min > k_max) throw config_error("empty k window");
    auto q = detail::unflipped(p);
    detail::require_region(q, Region::R3);
    std::vector<DiracLevel> out;
    if (lambda.is_half_pi()) {
        for (int k = k_min; k <= k_max; ++k) {
            DiracLevel v;
            int n = std::abs(k);
            v.sigma = k == 0 ? q.s : (k > 0 ? 1 : -1);
            v.n = k == 0 ? 0 : k;
            v.energy = v.sigma * ladder_energy(q, n);
            v.weight = std::exp(detail::log_q_r1(q, n, v.energy));
            out.push_back(v);
        }
        return out;
    }
    detail::require_r3_lambda(q);
    for (int k = k_min; k <= k_max; ++k) {
        DiracLevel v;
        v.n = k;
        if (lambda.is_zero()) {
            int n = k >= 0 ? k : -k - 1;
            v.sigma = k >= 0 ? 1 : -1;
            v.n = v.sigma * n;
            v.energy = detail::r3_zero_level(q, k);
            v.weight = std::exp(detail::log_q_r2(q, n, v.energy));
        } else {
            auto r = detail::r3_root(q, lambda, k);
            v.energy = r.energy;
            v.sigma = r.energy > 0 ? 1 : -1;
            v.weight = detail::r3_weight(q, lambda, r);
        }
        out.push_back(v);
    }
    return out;
}

/// Any region: R1 levels with |n| <= n_max, R2 levels with |n| <= l + n_max,
/// R3 levels with k in [-n_max - 1, n_max].  lambda is required exactly in R3.
inline std::vector<DiracLevel> spectrum(const DiracParams& p, const std::optional<Angle>& lambda, int n_max) {
    p.validate();
    auto q = detail::unflipped(p);
    Region r = region(q);
    if (r != Region::R3 && lambda) throw config_error("channel is in region " + to_string(r) + ": no lambda admitted");
    if (r == Region::R3 && !lambda) throw config_error("channel l = 0 with mu > 0 requires lambda");
    if (r == Region::R1) return spectrum_r1(q, n_max);
    if (r == Region::R2) return spectrum_r2(q, n_max);
    auto v = spectrum_r3(q, *lambda, -n_max - 1, n_max);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
    return v;
}

// ---------------------------------------------------------------- eigenfunctions

/// (f, g) -> (g, -f) with s -> -s and eps -> -eps: maps solutions of one
/// sign of eps onto the other.  Applying it twice gives -identity.
inline std::pair<DoubletHandle, DiracParams> epsilon_flip(const DoubletHandle& F, const DiracParams& p) {
    DoubletHandle h = F;
    auto e = F.eval;
    h.eval = [e](double rho) {
        Doublet d = e(rho);
        return Doublet{d.g, -d.f};
    };
    DiracParams q = p;
    q.s = -p.s;
    q.eps = -p.eps;
    return {h, q};
}

namespace detail {

inline DoubletHandle eigenfunction_eps1(const DiracParams& p, const std::optional<Angle>& lambda,
                                        const DiracLevel& v) {
    DoubletHandle h;
    h.region = region(p);
    h.l = p.l;
    h.energy = v.energy;
    h.lambda = lambda;
    const double g = p.gamma, E = v.energy, sM = p.s * p.M();
    auto f1_ladder_handle = [&](int n) {
        double b1 = p.beta1(), lq = std::log(v.weight);
        h.extent = ms::detail::extent(-n, b1 + 1, g);
        h.eval = [n, b1, E, sM, g, lq](double rho) {
            check_rho(rho);
            return f1_raw(-n, b1, E - sM, g, rho, lq);
        };
    };
    auto f2_ladder_handle = [&](int k, double b2) {
        double lq = std::log(v.weight);
        h.extent = ms::detail::extent(-k, b2 + 1, g);
        h.eval = [k, b2, E, sM, g, lq](double rho) {
            check_rho(rho);
            return f2_raw(-k, b2, E + sM, g, rho, lq);
        };
    };
    if (h.region == Region::R1) {
        f1_ladder_handle(std::abs(v.n));
        return h;
    }
    if (h.region == Region::R2) {
        f2_ladder_handle(std::abs(v.n) - p.l, p.beta2());
        return h;
    }
    if (lambda->is_half_pi()) {
        f1_ladder_handle(std::abs(v.n));
        return h;
    }
    if (lambda->is_zero()) {
        f2_ladder_handle(std::abs(v.n), p.mu);
        return h;
    }
    // Generic lambda: Q (m^{-k0} sin F1 + m^{k0} cos F2) near the origin and the
    // equal decaying form Q m^{-k0} F3 / omega~ beyond z = z_switch.
    const double a1 = alpha1(p, E), b1 = p.beta1(), b2 = p.beta2(), a2 = b2 + a1;
    const double k0 = p.kappa0(), Q = v.weight;
    const double ws = Q * std::pow(p.m_e, -k0) * lambda->sin();
    const double wc = Q * std::pow(p.m_e, k0) * lambda->cos();
    auto c = r3_coefficients(p, E);
    double wt = c.c2 * lambda->sin() - c.c1 * lambda->cos();  // omega~ exp(-log_scale)
    double log_f3 = std::log(Q) - k0 * std::log(p.m_e) - c.log_scale - std::log(std::abs(wt));
    int sign_f3 = wt > 0 ? 1 : -1;
    h.extent = ms::detail::extent(std::min(a1, a2), std::max(b1, b2) + 1, g);
    h.eval = [=](double rho) {
        check_rho(rho);
        double z = g * rho * rho / 2;
        if (z <= ms::detail::z_switch) {
            Doublet A = f1_raw(a1, b1, E - sM, g, rho), B = f2_raw(a2, b2, E + sM, g, rho);
            return Doublet{ws * A.f + wc * B.f, ws * A.g + wc * B.g};
        }
        Doublet F = f3_raw(a1, b1, E - sM, g, rho, log_f3);
        return Doublet{sign_f3 * F.f, sign_f3 * F.g};
    };
    return h;
}

}  // namespace detail

/// Normalized eigen-doublet Q F of a level returned by `spectrum*` for the
/// same parameters and lambda.
inline DoubletHandle eigenfunction(const DiracParams& p, const std::optional<Angle>& lambda, const DiracLevel& v) {
    p.validate();
    auto q = detail::unflipped(p);
    Region r = region(q);
    if ((r == Region::R3) != lambda.has_value())
        throw config_error(r == Region::R3 ? "region R3 requires lambda" : "lambda is only admitted in region R3");
    if (r == Region::R3 && !lambda->is_half_pi() && !lambda->is_zero()) detail::require_r3_lambda(q);
    auto h = detail::eigenfunction_eps1(q, lambda, v);
    if (p.eps == 1) return h;
    auto flipped = epsilon_flip(h, q).first;
    return flipped;
}

/// Extent of the grid on which eigen-doublets are checked and integrated.
inline double extent(const DoubletHandle& h) { return h.extent; }

// ---------------------------------------------------------------- checks

/// Fits F on [a, b] to c ((m_e rho)^{k0} cos, (m_e rho)^{-k0} sin) plus the
/// subleading powers of each component and returns the direction mismatch
/// of the fitted leading pair against (cos lambda, sin lambda).
inline double boundary_condition_check_r3(const std::function<Doublet(double)>& F, const Angle& lambda,
                                          const DiracParams& p, double a = 1e-4, double b = 1e-2) {
    p.validate();
    auto q = detail::unflipped(p);
    detail::require_region(q, Region::R3);
    detail::require_r3_lambda(q);
    std::function<Doublet(double)> G = F;
    if (p.eps == -1) G = [F](double r) {  // undo (f, g) -> (g, -f)
        Doublet d = F(r);
        return Doublet{-d.g, d.f};
    };
    const double k0 = q.kappa0(), m = q.m_e;
    using verify::power;
    std::vector<verify::RealFn> fb{power(k0, m), power(1 - k0), power(2 + k0), power(3 - k0)};
    std::vector<verify::RealFn> gb{power(-k0, m), power(1 + k0), power(2 - k0), power(3 + k0)};
    auto cf = verify::fit_coefficients([&](double r) { return G(r).f; }, fb, a, b);
    auto cg = verify::fit_coefficients([&](double r) { return G(r).g; }, gb, a, b);
    return verify::direction_mismatch(cf[0], cg[0], lambda.cos(), lambda.sin());
}

/// Relative residual of the first-order radial system at energy W.
inline double system_residual(const DiracParams& p, double W, const DoubletHandle& F, const std::vector<double>& grid) {
    p.validate();
    return verify::dirac_system_residual(p.eps, p.gamma, p.kappa_l(), p.s * p.M(), W, F.upper(), F.lower(), grid);
}

}  // namespace msab::dirac
