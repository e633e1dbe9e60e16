#include "hyperdelta/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "hyperdelta/specfun.hpp"
#include "hyperdelta/sturmian.hpp"

namespace hyperdelta::wavefunction {

namespace {

const double sqrt2 = std::sqrt(2.0);
const double sqrt6 = std::sqrt(6.0);

constexpr double psi_floor = 1e-10;
constexpr double min_nodes_per_period = 10.0;

// Exponent -KR cosh(sign beta + i phi) written through cosh(beta) = -pi c/(6K)
// and sinh(beta) = k/K.
cplx exponent(int sign, double phi, double R, const ChannelEnergy& energy,
              const ModelParams& params) {
    return cplx{params.inverse_a() * R * std::cos(phi), -sign * energy.k * R * std::sin(phi)};
}

cplx exponent_cosh(int sign, double phi, double R, const ChannelEnergy& energy, double beta) {
    return -energy.K * R * std::cosh(cplx{sign * beta, phi});
}

template <class E>
cplx six_terms(double theta_off, const ScatteringSolution& sol, E&& e) {
    const double phi_minus = theta_off + pi / 3.0;
    const double phi_plus = theta_off - pi / 3.0;
    const double phi_zero = theta_off;
    const cplx incoming = std::exp(e(+1, phi_minus)) + std::exp(e(-1, phi_plus));
    const cplx outgoing = std::exp(e(+1, phi_plus)) + std::exp(e(-1, phi_minus));
    const cplx bound = std::exp(e(-1, phi_zero)) + std::exp(e(+1, phi_zero));
    return (0.5 * pi * I) * (incoming + sol.S * outgoing + sol.S3 * bound);
}

// Samples per unit t, rounded up so windows hold a whole number of nodes.
int nodes_per_unit(const QuadratureSpec& q) {
    if (!(q.t_max > 0.0) || !(q.nodes_per_unit > 0.0) || !(q.rel_tol > 0.0)) {
        throw DomainError("QuadratureSpec: t_max, nodes_per_unit and rel_tol must be positive");
    }
    return static_cast<int>(std::ceil(q.nodes_per_unit - 1e-9));
}

// The K_{it}(x) phase advances like t ln(2t/x) - t; the extra frequency comes
// from the coefficient multiplying it.
void check_resolution(const QuadratureSpec& q, double x, double extra_frequency) {
    const double omega = extra_frequency + std::max(1.0, std::log(2.0 * q.t_max / x));
    const double needed = min_nodes_per_period * omega / (2.0 * pi);
    if (nodes_per_unit(q) < needed) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "QuadratureSpec: %d nodes per unit cannot resolve frequency %.3g at t_max "
                      "(need %.3g)",
                      nodes_per_unit(q), omega, needed);
        throw DomainError(msg);
    }
}

// int_0^T f dt by the trapezoid rule, T fixed or found adaptively. Below the
// cap the tail must be small against the running integral as well as the peak;
// at the cap the peak condition alone is required.
KlResult integrate_half_line(const std::function<cplx(double)>& f, const QuadratureSpec& q) {
    const int n = nodes_per_unit(q);
    const double h = 1.0 / n;
    KlResult out;
    cplx f0 = f(0.0);
    cplx sum = 0.5 * f0;
    cplx last = f0;
    out.peak = std::abs(f0);
    out.nodes = 1;
    const int windows = static_cast<int>(std::ceil(q.t_max - 1e-12));
    double window_max = 0.0;
    for (int w = 0; w < windows; ++w) {
        window_max = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double t = w + i * h;
            if (t > q.t_max + 1e-12) {
                break;
            }
            last = f(t);
            sum += last;
            ++out.nodes;
            out.t_end = t;
            const double m = std::abs(last);
            window_max = std::max(window_max, m);
            out.peak = std::max(out.peak, m);
        }
        const double partial = std::abs(h * (sum - 0.5 * last));
        if (q.adaptive && window_max < q.rel_tol * std::min(out.peak, partial)) {
            out.value = h * (sum - 0.5 * last);
            return out;
        }
    }
    if (q.adaptive && !(window_max < q.rel_tol * out.peak)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "KL quadrature: integrand still above rel_tol = %.3g of its peak at the "
                      "cap t_max = %.3g",
                      q.rel_tol, q.t_max);
        throw AccuracyError(msg);
    }
    out.value = h * (sum - 0.5 * last);
    return out;
}

struct KlSetup {
    double theta_off;
    double x;
};

KlSetup kl_setup(const HyperPoint& p, const ChannelEnergy& energy, const ScatteringSolution& sol,
                 const QuadratureSpec& q) {
    if (!(p.R > 0.0)) {
        throw DomainError("kl_integral: needs R > 0");
    }
    const double theta_off = geometry::sector_offset(p.theta, p.j);
    if (std::abs(theta_off) > pi / 6.0 + 1e-12) {
        throw DomainError("kl_integral: theta outside sector " + std::to_string(p.j));
    }
    if (std::abs(theta_off) >= pi / 6.0 - q.margin) {
        throw ConvergenceError("kl_integral: theta within the quadrature margin of a coalescence line");
    }
    const double x = energy.K * p.R;
    check_resolution(q, x, std::abs(sol.beta));
    return KlSetup{theta_off, x};
}

cplx kl_integrand(double t, const KlSetup& s, const ScatteringSolution& sol) {
    return scattering::coefficient_A(cplx{0.0, t}, sol) * std::cosh(s.theta_off * t) *
           specfun::bessel_k_imag_order(t, s.x);
}

}  // namespace

cplx psi_closed_form(const HyperPoint& p, const ChannelEnergy& energy, const ScatteringSolution& sol,
                     const ModelParams& params) {
    const double theta_off = geometry::sector_offset(p.theta, p.j);
    return six_terms(theta_off, sol,
                     [&](int sign, double phi) { return exponent(sign, phi, p.R, energy, params); });
}

cplx psi_closed_form_cosh(const HyperPoint& p, const ChannelEnergy& energy,
                          const ScatteringSolution& sol, const ModelParams&) {
    const double theta_off = geometry::sector_offset(p.theta, p.j);
    return six_terms(theta_off, sol, [&](int sign, double phi) {
        return exponent_cosh(sign, phi, p.R, energy, sol.beta);
    });
}

KlResult kl_integral(const HyperPoint& p, const ChannelEnergy& energy, const ScatteringSolution& sol,
                     const ModelParams&, const QuadratureSpec& q) {
    const KlSetup s = kl_setup(p, energy, sol, q);
    KlResult r = integrate_half_line(
        [&](double t) { return kl_integrand(t, s, sol) + kl_integrand(-t, s, sol); }, q);
    r.value *= I;
    r.nodes *= 2;
    return r;
}

KlResult kl_integral_unfolded(const HyperPoint& p, const ChannelEnergy& energy,
                              const ScatteringSolution& sol, const ModelParams& params,
                              const QuadratureSpec& q) {
    const KlResult folded = kl_integral(p, energy, sol, params, q);
    const KlSetup s = kl_setup(p, energy, sol, q);
    const int n = nodes_per_unit(q);
    const int steps = static_cast<int>(std::lround(folded.t_end * n));
    const double h = 1.0 / n;
    KlResult out;
    cplx sum = 0.5 * (kl_integrand(-steps * h, s, sol) + kl_integrand(steps * h, s, sol));
    for (int i = -steps + 1; i < steps; ++i) {
        const cplx v = kl_integrand(i * h, s, sol);
        out.peak = std::max(out.peak, std::abs(v));
        sum += v;
    }
    out.value = I * h * sum;
    out.t_end = steps * h;
    out.nodes = static_cast<std::size_t>(2 * steps + 1);
    return out;
}

KlResult kl_cosh_transform(cplx a, double z, const QuadratureSpec& q) {
    if (!(std::abs(a.imag()) < pi / 2.0)) {
        throw ConvergenceError("kl_cosh_transform: needs |Im a| < pi/2");
    }
    check_resolution(q, z, std::abs(a.real()));
    // cosh(a i t) = cos(a t) is even in t.
    KlResult r = integrate_half_line(
        [&](double t) { return 2.0 * std::cos(a * t) * specfun::bessel_k_imag_order(t, z); }, q);
    r.value *= I;
    return r;
}

cplx psi_asymptotic(const HyperPoint& p, const ChannelEnergy& energy, const ScatteringSolution& sol,
                    const ModelParams& params) {
    const double theta_prime = geometry::sector_offset(p.theta, p.j) + pi / 3.0;
    if (!(theta_prime > pi / 6.0 && theta_prime < pi / 2.0)) {
        throw DomainError("psi_asymptotic: theta' must lie in (pi/6, pi/2)");
    }
    const double envelope = std::exp(params.inverse_a() * p.R * std::cos(theta_prime));
    const cplx wave = std::exp(cplx{0.0, energy.k * p.R * std::sin(theta_prime)});
    return envelope * (1.0 / wave + sol.S * wave);
}

double boundary_condition_residual(double R, const ChannelEnergy& energy,
                                   const ScatteringSolution& sol, const ModelParams& params, int j) {
    if (!(R > 0.0)) {
        throw DomainError("boundary_condition_residual: needs R > 0");
    }
    if (j < 0 || j > 5) {
        throw DomainError("boundary_condition_residual: sector index must be in 0..5");
    }
    auto psi = [&](double theta) { return psi_closed_form(HyperPoint{R, theta, j}, energy, sol, params); };
    const double line = j * pi / 3.0 + pi / 6.0;
    const cplx on_line = psi(line);
    if (std::abs(on_line) < psi_floor) {
        throw DegenerateError("boundary_condition_residual: Psi vanishes on the line");
    }
    const sturmian::DerivativeEstimate d = sturmian::left_derivative(psi, line, sturmian::boundary_step);
    if (!(d.spread <= 1e-3 * std::abs(d.value) + 1e-12)) {
        throw AccuracyError("boundary_condition_residual: Richardson extrapolation did not settle");
    }
    return std::abs(d.value / (R * on_line) + params.inverse_a());
}

PlaneWaveMomenta plane_wave_momenta(const ChannelEnergy& energy, const ModelParams& params) {
    const double bound = params.inverse_a() / sqrt2;
    const double free = energy.k / sqrt6;
    return PlaneWaveMomenta{cplx{-free, bound}, cplx{-free, -bound}, cplx{2.0 * free, 0.0}};
}

cplx psi_plane_wave(const ParticleConfig& cfg, const ChannelEnergy& energy,
                    const ScatteringSolution& sol, const ModelParams& params) {
    if (cfg.x1 == cfg.x2 || cfg.x2 == cfg.x3 || cfg.x1 == cfg.x3) {
        throw DegenerateError("psi_plane_wave: configuration lies on a coalescence line");
    }
    const int j = geometry::to_hyperspherical(geometry::to_jacobi(cfg)).j;
    const auto order = geometry::particle_order(j);
    const double x[3] = {cfg.x1, cfg.x2, cfg.x3};
    const double y2 = x[order[0] - 1];
    const double y3 = x[order[1] - 1];
    const double y1 = x[order[2] - 1];
    const PlaneWaveMomenta m = plane_wave_momenta(energy, params);
    auto wave = [](cplx phase) { return std::exp(I * phase); };
    const cplx incoming = wave(-(m.k3 * y1 + m.k2 * y2 + m.k1 * y3)) + wave(m.k2 * y1 + m.k3 * y2 + m.k1 * y3);
    const cplx outgoing = wave(-(m.k1 * y1 + m.k3 * y2 + m.k2 * y3)) + wave(m.k3 * y1 + m.k1 * y2 + m.k2 * y3);
    const cplx bound = wave(-(m.k1 * y1 + m.k2 * y2 + m.k3 * y3)) + wave(m.k2 * y1 + m.k1 * y2 + m.k3 * y3);
    return incoming + sol.S * outgoing + sol.S3 * bound;
}

}  // namespace hyperdelta::wavefunction
