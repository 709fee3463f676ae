#pragma once
// Radial Schroedinger operators for the pure Aharonov-Bohm field:
//   h = -d^2/drho^2 + (kappa_l^2 - 1/4)/rho^2,  kappa_l = |l + mu|.
// Three singularity regions; in R2/R3 a one-parameter family of self-adjoint
// extensions fixed by an angle lambda.  Continuum functions are normalized
// to delta(E - E') in the operator energy E (units of the operator h).

#include <cmath>
#include <optional>

#include "core.hpp"
#include "specfun.hpp"

namespace msab::ab {

/// Region of channel l for flux mantissa mu.
inline RegionTag classify(int l, double mu) {
    if (!(mu >= 0 && mu < 1)) throw config_error("mu must lie in [0, 1)");
    RegionTag t;
    t.kappa_l = std::abs(l + mu);
    t.alpha = t.kappa_l * t.kappa_l - 0.25;
    if (mu == 0.0 && l == 0) {
        t.tag = Region::R3;
        t.alpha = -0.25;
    } else if (mu > 0.0 && (l == 0 || l == -1)) {
        t.tag = Region::R2;
    } else {
        t.tag = Region::R1;
    }
    return t;
}

/// Gamma(1-kappa)/Gamma(1+kappa) tan(lambda); undefined at lambda = pi/2.
inline double lambda_tilde(double kappa, const Angle& lambda) {
    return specfun::gamma(1 - kappa) / specfun::gamma(1 + kappa) * lambda.tan();
}

struct BoundState {
    double energy = 0.0;
    double weight = 0.0;  ///< normalization constant Q of sqrt(rho) K_nu(q rho)
    EigenfunctionHandle eigenfunction;
};

namespace detail {
inline RegionTag checked_region(int l, const FluxConfig& cfg, const std::optional<Angle>& lambda) {
    RegionTag t = classify(l, cfg.mu);
    if (t.tag == Region::R1 && lambda)
        throw config_error("channel l is in region R1: no extension parameter is admitted");
    if (t.tag != Region::R1 && !lambda)
        throw config_error("channel l is in region " + to_string(t.tag) +
                           ": an extension parameter lambda is required");
    return t;
}
}  // namespace detail

/// Generalized eigenfunction U_E(rho) of the continuous spectrum.
/// Both R2 and R3 forms are written after multiplication by cos(lambda) so
/// that the identified point lambda = pi/2 is an ordinary evaluation.
inline double continuous_eigenfunction(int l, const FluxConfig& cfg, const std::optional<Angle>& lambda,
                                       double E, double rho) {
    RegionTag t = detail::checked_region(l, cfg, lambda);
    if (!(E >= 0)) throw config_error("continuous spectrum requires E >= 0");
    if (!(rho > 0)) throw domain_error("rho must be > 0");
    const double k = std::sqrt(E);
    const double kap = t.kappa_l;
    if (t.tag == Region::R1) {
        if (E == 0.0) return 0.0;
        return std::sqrt(rho / 2) * specfun::bessel_j(kap, k * rho);
    }
    const double s = lambda->sin(), c = lambda->cos();
    if (t.tag == Region::R2) {
        if (E == 0.0) {
            if (c != 0.0) return 0.0;
            throw numerical_error("U_E at E = 0 diverges for lambda = pi/2 in region R2");
        }
        double A = c;
        double B = specfun::gamma(1 - kap) / specfun::gamma(1 + kap) * s *
                   std::pow(E / (4 * cfg.kappa0 * cfg.kappa0), kap);
        double Q = A * A + 2 * A * B * std::cos(pi * kap) + B * B;
        double u = A * specfun::bessel_j(kap, k * rho) + B * specfun::bessel_j(-kap, k * rho);
        return std::sqrt(rho / (2 * Q)) * u;
    }
    // R3: lambda~ = tan(lambda) - C - ln(sqrt(E)/2 kappa0), multiplied by cos(lambda).
    if (E == 0.0) return c == 0.0 ? std::sqrt(rho / 2) : 0.0;
    double A = s - c * (euler_gamma + std::log(k / (2 * cfg.kappa0)));
    double B = c * pi / 2;
    double u = A * specfun::bessel_j(0, k * rho) + B * specfun::bessel_y0(k * rho);
    return std::sqrt(rho / (2 * (A * A + B * B))) * u;
}

/// Continuum eigenfunction as a handle (no decay: extent 0).
inline EigenfunctionHandle continuum_handle(int l, const FluxConfig& cfg, const std::optional<Angle>& lambda,
                                            double E) {
    RegionTag t = detail::checked_region(l, cfg, lambda);
    EigenfunctionHandle h;
    h.region = t.tag;
    h.l = l;
    h.energy = E;
    h.lambda = lambda;
    h.kind = "continuum";
    h.eval = [l, cfg, lambda, E](double rho) { return continuous_eigenfunction(l, cfg, lambda, E, rho); };
    return h;
}

/// Negative level of an R2/R3 channel, if the extension admits one.
inline std::optional<BoundState> bound_state(int l, const FluxConfig& cfg, const Angle& lambda) {
    RegionTag t = classify(l, cfg.mu);
    if (t.tag == Region::R1) throw config_error("bound_state: channel is in region R1");
    if (lambda.is_half_pi()) return std::nullopt;
    const double k0 = cfg.kappa0;
    BoundState b;
    double norm2 = 0.0, nu = 0.0;
    if (t.tag == Region::R2) {
        if (!(lambda.value() < 0)) return std::nullopt;
        const double kap = t.kappa_l;
        double lt = lambda_tilde(kap, lambda);
        b.energy = -4 * k0 * k0 * std::pow(std::abs(lt), -1.0 / kap);
        norm2 = 2 * std::abs(b.energy) * std::sin(pi * kap) / (pi * kap);
        nu = kap;
    } else {
        b.energy = -4 * k0 * k0 * std::exp(2 * (lambda.tan() - euler_gamma));
        norm2 = 2 * std::abs(b.energy);
    }
    const double q = std::sqrt(-b.energy);
    b.weight = std::sqrt(norm2);
    EigenfunctionHandle& h = b.eigenfunction;
    h.region = t.tag;
    h.l = l;
    h.energy = b.energy;
    h.lambda = lambda;
    h.kind = "bound";
    h.extent = 45.0 / q;
    h.eval = [norm2, nu, q](double rho) {
        if (!(rho > 0)) throw domain_error("rho must be > 0");
        return std::sqrt(norm2 * rho) * specfun::bessel_k(nu, q * rho);
    };
    return b;
}

/// Spectrum of the channel: the ray [0, inf) plus at most one negative level.
inline RadialSpectrum spectrum(int l, const FluxConfig& cfg, const std::optional<Angle>& lambda) {
    RegionTag t = detail::checked_region(l, cfg, lambda);
    RadialSpectrum sp;
    sp.region = t.tag;
    sp.l = l;
    sp.lambda = lambda;
    sp.has_continuum = true;
    sp.continuum_onset = 0.0;
    if (t.tag != Region::R1) {
        if (auto b = bound_state(l, cfg, *lambda)) sp.levels.push_back({0, b->energy, b->weight});
    }
    return sp;
}

}  // namespace msab::ab
