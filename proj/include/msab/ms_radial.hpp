#pragma once
// Radial Schroedinger operators for the magnetic-solenoid field (AB flux plus
// a uniform field B, gamma = e|B|/c hbar > 0):
//   h = -d^2/drho^2 + (kappa_l^2 - 1/4)/rho^2 + gamma^2 rho^2/4 + gamma (l + mu).
// All spectra are discrete.  Energies are in operator units; the oscillator
// part W excludes the constant gamma (l + mu).  Throughout z = gamma rho^2/2.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "ab_radial.hpp"
#include "core.hpp"
#include "roots.hpp"
#include "specfun.hpp"

namespace msab::ms {

/// One discrete level of a radial magnetic-solenoid operator.
struct MsLevel {
    int l = 0;
    int m = 0;            ///< radial quantum number (bracket index for lambda-families)
    double energy = 0.0;  ///< operator energy, including gamma (l + mu)
    double weight = 0.0;  ///< normalization constant Q
    RegionTag region;
    double osc = 0.0;     ///< oscillator energy W (tau in R2): the root of the spectral function
};

using ab::classify;

/// Radial potential (everything except -d^2/drho^2).
inline double potential(int l, double mu, double gamma, double rho) {
    double k = l + mu;
    return (k * k - 0.25) / (rho * rho) + gamma * gamma * rho * rho / 4 + gamma * k;
}

namespace detail {

inline void check_gamma(double gamma) {
    if (!(gamma > 0)) throw config_error("the magnetic-solenoid problem requires gamma > 0");
}

/// Radius beyond which an eigenfunction with Kummer parameters (a, b) is
/// negligible: well past the turning point z_t = 2(b - 2a).
inline double extent(double a, double b, double gamma) {
    double zt = std::max(0.0, 2 * (b - 2 * a));
    return std::sqrt(2 * (1.3 * zt + 70.0) / gamma);
}

/// omega_+(W), omega_-(W) and their W-derivatives with a common positive
/// factor removed, so that ratios are exact and nothing overflows.
struct OmegaPM {
    double p = 0, m = 0, dp = 0, dm = 0;
};

inline OmegaPM omega_pm(double W, double kappa, double gamma) {
    double ap = 0.5 + kappa / 2 - W / (2 * gamma);
    double am = 0.5 - kappa / 2 - W / (2 * gamma);
    auto rp = specfun::gamma_reciprocal_scaled(ap);
    auto rm = specfun::gamma_reciprocal_scaled(am);
    double lp = rp.log_scale + std::lgamma(1 + kappa);
    double lm = rm.log_scale + std::lgamma(1 - kappa);
    double L = std::max(lp, lm);
    double fp = std::exp(lp - L), fm = std::exp(lm - L);
    return {fp * rp.value, fm * rm.value, -fp * rp.derivative / (2 * gamma),
            -fm * rm.derivative / (2 * gamma)};
}

/// Bounded, continuous version of omega_{lambda_a} used for root refinement.
inline double omega_a_normalized(double W, const Angle& la, double kappa, double gamma) {
    auto o = omega_pm(W, kappa, gamma);
    return (o.p * la.sin() + o.m * la.cos()) / std::hypot(o.p, o.m);
}

/// log Q for the closed-form ladder Q z^{1/4+k/2} e^{-z/2} Phi(-m, 1+k; z),
/// Q^2 = sqrt(2 gamma) Gamma(1+k+m) / (m! Gamma(1+k)^2), k > -1.
inline double ladder_log_q(double k, int m, double gamma) {
    return 0.5 * (0.5 * std::log(2 * gamma) + std::lgamma(1 + k + m) - std::lgamma(m + 1.0) -
                  2 * std::lgamma(1 + k));
}

inline double ladder_function(double k, int m, double gamma, double logq, double rho) {
    if (!(rho > 0)) throw domain_error("rho must be > 0");
    double z = gamma * rho * rho / 2;
    double p = specfun::kummer_m_terminating(m, 1 + k, z);
    return p * std::exp(logq + (0.25 + k / 2) * std::log(z) - z / 2);
}

/// Switch from the regular (Phi) representation to the decaying (Psi)
/// representation of lambda-family eigenfunctions.
inline constexpr double z_switch = 1.0;

/// Normalized R2 eigenfunction Q [u_+ sin + u_- cos] at a root tau.
struct U2 {
    double kappa = 0, gamma = 0, s = 0, c = 0;
    double ap = 0, am = 0, q = 0;
    double log_t = 0;  // log |Q t| of the decaying form Q t z^{1/4+k/2} e^{-z/2} Psi(a_+, 1+k; z)
    int sign_t = 1;

    U2(double kappa_, double gamma_, const Angle& la, double tau)
        : kappa(kappa_), gamma(gamma_), s(la.sin()), c(la.cos()) {
        ap = 0.5 + kappa / 2 - tau / (2 * gamma);
        am = 0.5 - kappa / 2 - tau / (2 * gamma);
        auto o = omega_pm(tau, kappa, gamma);
        double wt = o.p * c - o.m * s;
        double wd = o.dp * s + o.dm * c;
        double q2 = -wt / (std::sqrt(2 * gamma) * kappa * wd);
        if (!(q2 > 0) || !std::isfinite(q2))
            throw numerical_error("R2 normalization is not positive at the supplied root", tau, tau);
        q = std::sqrt(q2);
        // s u_+ + c u_- = t z^{1/4+k/2} e^{-z/2} Psi(a_+, 1+k; z), with
        // t = s / (Gamma(-k) rgamma(a_-)) = c / (Gamma(k) rgamma(a_+)).
        double num = std::abs(s) >= std::abs(c) ? s : c;
        double kk = std::abs(s) >= std::abs(c) ? -kappa : kappa;
        auto rg = specfun::gamma_reciprocal_scaled(std::abs(s) >= std::abs(c) ? am : ap);
        double g = boost::math::tgamma(kk);
        log_t = std::log(q) + std::log(std::abs(num)) - rg.log_scale - std::log(std::abs(rg.value)) -
                std::log(std::abs(g));
        sign_t = ((num > 0) == (rg.value > 0)) == (g > 0) ? 1 : -1;
    }

    double operator()(double rho) const {
        if (!(rho > 0)) throw domain_error("rho must be > 0");
        double z = gamma * rho * rho / 2;
        double lz = std::log(z);
        if (z <= z_switch) {
            double up = std::exp((0.25 + kappa / 2) * lz - z / 2) * specfun::kummer_m(ap, 1 + kappa, z);
            double um = std::exp((0.25 - kappa / 2) * lz - z / 2) * specfun::kummer_m(am, 1 - kappa, z);
            return q * (s * up + c * um);
        }
        auto u = specfun::tricomi_u_log(ap, 1 + kappa, z);
        if (u.sign == 0) return 0.0;
        return sign_t * u.sign * std::exp(log_t + (0.25 + kappa / 2) * lz - z / 2 + u.log_abs);
    }
};

/// Normalized R3 eigenfunction Q [u_1 sin + u_3 cos] at a root W.
struct U3 {
    double gamma = 0, s = 0, c = 0, a0 = 0;
    double qs = 0, qc = 0;  // Q sin, Q cos
    double log_amp = 0;     // log |A| of the decaying form A z^{1/4} e^{-z/2} Psi(a0, 1; z)
    int sign_amp = 1;

    U3(double gamma_, const Angle& lambda, double W) : gamma(gamma_), s(lambda.sin()), c(lambda.cos()) {
        a0 = 0.5 - W / (2 * gamma);
        double tg = specfun::trigamma(a0);
        double root = std::sqrt(tg);
        double g4 = std::pow(2 * gamma, 0.25);
        // Q = 2 (2 gamma)^{1/4} / (|cos| sqrt(psi'(a0))).
        qc = (c > 0 ? 2.0 : -2.0) * g4 / root;
        qs = 2 * g4 * s / (std::abs(c) * root);
        // A = -sgn(cos) (2 gamma)^{1/4} Gamma(a0) / sqrt(psi'(a0)).
        auto rg = specfun::gamma_reciprocal_scaled(a0);
        double den = rg.value * root;
        log_amp = std::log(g4) - rg.log_scale - std::log(std::abs(den));
        sign_amp = ((c > 0) ? -1 : 1) * (den > 0 ? 1 : -1);
    }

    double operator()(double rho) const {
        if (!(rho > 0)) throw domain_error("rho must be > 0");
        double z = gamma * rho * rho / 2;
        double lz = std::log(z);
        if (z <= z_switch) {
            double pre = std::exp(0.25 * lz - z / 2);
            double u1 = pre * specfun::kummer_m(a0, 1.0, z);
            double u3 = 0.5 * lz * u1 + 0.5 * pre * specfun::kummer_m_dmu_at0(a0, z);
            return qs * u1 + qc * u3;
        }
        auto u = specfun::tricomi_u_log(a0, 1.0, z);
        if (u.sign == 0) return 0.0;
        return sign_amp * u.sign * std::exp(log_amp + 0.25 * lz - z / 2 + u.log_abs);
    }
};

/// R2 roots.  Zeros of omega_- (a_- = -m) and omega_+ (a_+ = -m) form two
/// interleaved ladders; for lambda_a in (0, pi/2) root m lies between
/// gamma(1-k+2m) and gamma(1+k+2m); for lambda_a < 0 between gamma(-1+k+2m)
/// and gamma(1-k+2m), the lowest root lying below gamma(1-k).
inline std::vector<double> r2_roots(double kappa, double gamma, const Angle& la, int count,
                                    std::vector<int>* labels) {
    std::vector<double> out;
    const double s = la.sin(), c = la.cos();
    auto f = [&](double W) { return omega_a_normalized(W, la, kappa, gamma); };
    int m = 0;
    if (s < 0) {
        // Lowest root, solved in a = a_- in (0, inf):
        // Gamma(1+k) Gamma(a) / (Gamma(1-k) Gamma(a+k)) = |cot lambda|.
        const double target = std::log(std::abs(c / s)) + std::lgamma(1 - kappa) - std::lgamma(1 + kappa);
        auto g = [&](double a) { return std::log(boost::math::tgamma_delta_ratio(a, kappa)) - target; };
        double lo = 0.5, hi = 1.0;
        while (g(lo) <= 0 && lo > 1e-300) lo *= 1e-3;
        bool escaped = false;
        while (g(hi) >= 0) {
            hi *= 1e3;
            if (hi > 1e300) {
                escaped = true;
                break;
            }
        }
        if (!escaped) {
            double a = roots::solve_bracketed(g, lo, hi);
            out.push_back(gamma * (1 - kappa - 2 * a));
            if (labels) labels->push_back(0);
        }
        m = 1;
    }
    for (; static_cast<int>(out.size()) < count; ++m) {
        double lo = s > 0 ? gamma * (1 - kappa + 2 * m) : gamma * (-1 + kappa + 2 * m);
        double hi = s > 0 ? gamma * (1 + kappa + 2 * m) : gamma * (1 - kappa + 2 * m);
        out.push_back(roots::solve_bracketed(f, lo, hi));
        if (labels) labels->push_back(m);
    }
    return out;
}

/// R3 roots of cos(lambda)[psi(a0) - 2 psi(1)] - 2 sin(lambda), a0 = 1/2 - W/2gamma:
/// psi(a0) = t with t = 2 psi(1) + 2 tan(lambda); one root per interval
/// a0 in (-m, -m+1), m >= 1, and one with a0 > 0.
inline std::vector<double> r3_roots(double gamma, const Angle& lambda, int count, std::vector<int>* labels) {
    std::vector<double> out;
    const double t = 2 * boost::math::digamma(1.0) + 2 * lambda.tan();
    // m = 0: a0 in (0, inf); psi is increasing there.
    {
        auto g = [&](double a) { return boost::math::digamma(a) - t; };
        double lo = 0.5;
        while (g(lo) >= 0) lo *= 0.25;
        bool escaped = t + 1 > 700;
        if (!escaped) {
            double hi = std::exp(t + 1) + 1;
            while (g(hi) <= 0) hi *= 2;
            double a = roots::solve_bracketed(g, lo, hi);
            out.push_back(gamma * (1 - 2 * a));
            if (labels) labels->push_back(0);
        }
    }
    // m >= 1: a0 = x - m, x in (0, 1); psi(x - m) = psi(1 + m - x) - pi cot(pi x).
    for (int m = 1; static_cast<int>(out.size()) < count; ++m) {
        auto g = [&](double x) { return boost::math::digamma(1.0 + m - x) - pi / std::tan(pi * x) - t; };
        double lo = 0.5, hi = 0.5;
        while (g(lo) >= 0) {
            lo *= 0.25;
            if (lo < 1e-300) throw numerical_error("R3 root bracket underflow", 0, 1);
        }
        while (g(hi) <= 0) {
            hi = 1 - (1 - hi) * 0.25;
            if (hi >= 1) throw numerical_error("R3 root bracket reached the pole", 0, 1);
        }
        double x = roots::solve_bracketed(g, lo, hi);
        out.push_back(gamma * (1 + 2 * m - 2 * x));
        if (labels) labels->push_back(m);
    }
    return out;
}

}  // namespace detail

/// omega_{lambda_a}(W) = omega_+ sin(lambda_a) + omega_- cos(lambda_a),
/// omega_pm = Gamma(1 +- k) / Gamma(1/2 +- k/2 - W/2gamma).  Finite for all W
/// (may overflow for W beyond ~340 gamma).
inline double omega_lambda_a(double W, const Angle& lambda_a, double kappa_a, double gamma) {
    detail::check_gamma(gamma);
    if (!(kappa_a > 0 && kappa_a < 1)) throw config_error("kappa_a must lie in (0, 1)");
    double wp = specfun::gamma(1 + kappa_a) * specfun::gamma_reciprocal(0.5 + kappa_a / 2 - W / (2 * gamma));
    double wm = specfun::gamma(1 - kappa_a) * specfun::gamma_reciprocal(0.5 - kappa_a / 2 - W / (2 * gamma));
    return wp * lambda_a.sin() + wm * lambda_a.cos();
}

/// omega~_{lambda_a} = omega_+ cos(lambda_a) - omega_- sin(lambda_a).
inline double omega_lambda_a_tilde(double W, const Angle& lambda_a, double kappa_a, double gamma) {
    double wp = specfun::gamma(1 + kappa_a) * specfun::gamma_reciprocal(0.5 + kappa_a / 2 - W / (2 * gamma));
    double wm = specfun::gamma(1 - kappa_a) * specfun::gamma_reciprocal(0.5 - kappa_a / 2 - W / (2 * gamma));
    return wp * lambda_a.cos() - wm * lambda_a.sin();
}

/// Spectral function of the logarithmic channel (mu = 0, l = 0):
/// cos(lambda)[psi(a0) - 2 psi(1)] - 2 sin(lambda), a0 = 1/2 - W/2gamma.
/// Returns +infinity (pole marker) at the digamma poles W = gamma(1 + 2k).
inline double omega_lambda(double W, const Angle& lambda, double gamma) {
    detail::check_gamma(gamma);
    double a0 = 0.5 - W / (2 * gamma);
    if (specfun::is_nonpositive_integer(a0)) return std::numeric_limits<double>::infinity();
    return lambda.cos() * (specfun::digamma(a0) - 2 * specfun::digamma(1.0)) - 2 * lambda.sin();
}

/// d/dW of omega_lambda: -cos(lambda) psi'(a0) / 2gamma.
inline double omega_lambda_derivative(double W, const Angle& lambda, double gamma) {
    double a0 = 0.5 - W / (2 * gamma);
    return -lambda.cos() * specfun::trigamma(a0) / (2 * gamma);
}

/// First m_max + 1 levels of channel l, ascending.
inline std::vector<MsLevel> discrete_spectrum(int l, const FluxConfig& cfg, const std::optional<Angle>& lambda,
                                              int m_max) {
    detail::check_gamma(cfg.gamma);
    if (m_max < 0) throw config_error("m_max must be >= 0");
    RegionTag t = classify(l, cfg.mu);
    if (t.tag == Region::R1 && lambda)
        throw config_error("channel l is in region R1: no extension parameter is admitted");
    if (t.tag != Region::R1 && !lambda) {
        if (t.tag == Region::R2)
            throw config_error("channel l = " + std::to_string(l) +
                               " is an l_a channel (a in {0, -1}): lambda_a is required");
        throw config_error("channel l = 0 with mu = 0 requires lambda");
    }
    const double g = cfg.gamma, shift = g * (l + cfg.mu);
    std::vector<MsLevel> out;
    auto ladder = [&](double k) {
        for (int m = 0; m <= m_max; ++m) {
            MsLevel v;
            v.l = l;
            v.m = m;
            v.region = t;
            v.osc = g * (1 + k + 2 * m);
            v.energy = v.osc + shift;
            v.weight = std::exp(detail::ladder_log_q(k, m, g));
            out.push_back(v);
        }
    };
    if (t.tag == Region::R1) {
        ladder(t.kappa_l);
        for (auto& v : out) v.energy = g * (1 + t.kappa_l + (l + cfg.mu) + 2 * v.m);
        return out;
    }
    if (t.tag == Region::R2) {
        const double k = t.kappa_l;
        if (lambda->is_half_pi()) ladder(k);
        else if (lambda->is_zero()) ladder(-k);
        else {
            std::vector<int> labels;
            auto W = detail::r2_roots(k, g, *lambda, m_max + 1, &labels);
            for (std::size_t i = 0; i < W.size(); ++i) {
                MsLevel v;
                v.l = l;
                v.m = labels[i];
                v.region = t;
                v.osc = W[i];
                v.energy = W[i] + shift;
                v.weight = detail::U2(k, g, *lambda, W[i]).q;
                out.push_back(v);
            }
        }
        return out;
    }
    // R3
    if (lambda->is_half_pi()) {
        ladder(0.0);
        return out;
    }
    std::vector<int> labels;
    auto W = detail::r3_roots(g, *lambda, m_max + 1, &labels);
    for (std::size_t i = 0; i < W.size(); ++i) {
        MsLevel v;
        v.l = l;
        v.m = labels[i];
        v.region = t;
        v.osc = W[i];
        v.energy = W[i];
        double a0 = 0.5 - W[i] / (2 * g);
        double c = lambda->cos();
        v.weight = 2 * std::pow(2 * g, 0.25) / (std::abs(c) * std::sqrt(specfun::trigamma(a0)));
        out.push_back(v);
    }
    return out;
}

/// Normalized eigenfunction Q_{l,m} z^{1/4+k/2} e^{-z/2} Phi(-m, 1+k; z) of an R1 channel.
inline double eigenfunction_u1(int l, double mu, double gamma, int m, double rho) {
    detail::check_gamma(gamma);
    double k = std::abs(l + mu);
    return detail::ladder_function(k, m, gamma, detail::ladder_log_q(k, m, gamma), rho);
}

/// Normalized eigenfunction of the R2 channel l = a at a root tau of omega_{lambda_a}.
inline double eigenfunction_u2(int a, double mu, double gamma, const Angle& lambda_a, double tau, double rho) {
    detail::check_gamma(gamma);
    double k = std::abs(a + mu);
    if (lambda_a.is_half_pi() || lambda_a.is_zero()) {
        double kk = lambda_a.is_half_pi() ? k : -k;
        int m = static_cast<int>(std::lround((tau / gamma - 1 - kk) / 2));
        return detail::ladder_function(kk, m, gamma, detail::ladder_log_q(kk, m, gamma), rho);
    }
    return detail::U2(k, gamma, lambda_a, tau)(rho);
}

/// Normalized eigenfunction of the logarithmic channel at a root W of omega_lambda.
inline double eigenfunction_u3(const Angle& lambda, double gamma, double energy, double rho) {
    detail::check_gamma(gamma);
    if (lambda.is_half_pi()) {
        int m = static_cast<int>(std::lround((energy / gamma - 1) / 2));
        return detail::ladder_function(0.0, m, gamma, detail::ladder_log_q(0.0, m, gamma), rho);
    }
    return detail::U3(gamma, lambda, energy)(rho);
}

/// Evaluatable handle for a level returned by discrete_spectrum.  The
/// representation coefficients are computed once.
inline EigenfunctionHandle eigenfunction(const FluxConfig& cfg, const std::optional<Angle>& lambda,
                                         const MsLevel& v) {
    detail::check_gamma(cfg.gamma);
    const double g = cfg.gamma;
    EigenfunctionHandle h;
    h.region = v.region.tag;
    h.l = v.l;
    h.energy = v.energy;
    h.lambda = lambda;
    h.kind = "discrete";
    auto ladder_handle = [&](double k, int m) {
        double lq = detail::ladder_log_q(k, m, g);
        h.extent = detail::extent(-m, 1 + k, g);
        h.eval = [k, m, g, lq](double rho) { return detail::ladder_function(k, m, g, lq, rho); };
    };
    const double k = v.region.kappa_l;
    if (v.region.tag == Region::R1) {
        ladder_handle(k, v.m);
    } else if (v.region.tag == Region::R2) {
        if (lambda->is_half_pi()) ladder_handle(k, v.m);
        else if (lambda->is_zero()) ladder_handle(-k, v.m);
        else {
            auto u = std::make_shared<detail::U2>(k, g, *lambda, v.osc);
            h.extent = detail::extent(u->ap, 1 + k, g);
            h.eval = [u](double rho) { return (*u)(rho); };
        }
    } else {
        if (lambda->is_half_pi()) ladder_handle(0.0, v.m);
        else {
            auto u = std::make_shared<detail::U3>(g, *lambda, v.osc);
            h.extent = detail::extent(u->a0, 1.0, g);
            h.eval = [u](double rho) { return (*u)(rho); };
        }
    }
    return h;
}

}  // namespace msab::ms
