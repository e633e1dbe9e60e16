#include "hyperdelta/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperdelta/sturmian.hpp"

namespace hyperdelta::scattering {

namespace {

const double sqrt3 = std::sqrt(3.0);

double lambda_of(const ModelParams& params) {
    return 6.0 * sqrt3 / (pi * params.c());
}

void require_open(double k, const ModelParams& params) {
    if (!params.attractive()) {
        throw DomainError("no bound pair for repulsive coupling: the 2+1 channel needs c < 0");
    }
    const double threshold = pi * std::abs(params.c()) / 6.0;
    if (!(k >= 0.0) || !(k < threshold)) {
        throw DomainError("momentum k = " + std::to_string(k) + " outside the open channel [0, " +
                          std::to_string(threshold) + ")");
    }
}

// B-form is avoided within this distance of nu = 0, +-1.
constexpr double b_form_exclusion = 1e-3;

}  // namespace

ChannelEnergy channel_energy(double k, const ModelParams& params) {
    require_open(k, params);
    const double K2 = params.dimer_binding() - k * k;
    return ChannelEnergy{k, std::sqrt(K2), -K2};
}

double beta_of(const ChannelEnergy& energy, const ModelParams& params) {
    const double cosh_b = -params.inverse_a() / energy.K;
    const double sinh_b = energy.k / energy.K;
    return std::log(cosh_b + sinh_b);
}

cplx s_matrix(double k, const ModelParams& params) {
    require_open(k, params);
    const double u = k / (pi * params.c());
    const double re = 1.0 - 36.0 * u * u;
    const double im = (24.0 / sqrt3) * u;
    return cplx{re, im} / cplx{re, -im};
}

cplx s_matrix_factored(double k, const ModelParams& params) {
    require_open(k, params);
    const cplx lk = I * (lambda_of(params) * k);
    return ((-1.0 - lk) * (3.0 + lk)) / ((-1.0 + lk) * (3.0 - lk));
}

cplx s_matrix_from_beta(double beta) {
    const cplx b = I * beta;
    return std::tan(pi / 6.0 - b) / std::tan(pi / 6.0 + b);
}

cplx s3_coefficient(double k, const ModelParams& params) {
    require_open(k, params);
    const cplx lk = I * (lambda_of(params) * k);
    return (3.0 + lk) / (-1.0 + lk);
}

cplx s3_from_beta(double beta) {
    return -sqrt3 / std::tan(pi / 6.0 + I * beta);
}

double delta_of(cplx S) {
    return 0.5 * std::arg(S);
}

ScatteringSolution solve_channel(double k, const ModelParams& params) {
    const ChannelEnergy energy = channel_energy(k, params);
    ScatteringSolution sol;
    sol.beta = beta_of(energy, params);
    sol.S = s_matrix(k, params);
    sol.S3 = s3_coefficient(k, params);
    sol.delta = delta_of(sol.S);

    // alpha = -(1/2) cot(pi/6) sqrt(cot(pi/6 - i beta) cot(pi/6 + i beta)); principal
    // root, sign fixed so both forms of A agree at nu = 0.
    const cplx b = I * sol.beta;
    const cplx root = std::sqrt(1.0 / (std::tan(pi / 6.0 - b) * std::tan(pi / 6.0 + b)));
    sol.alpha = -0.5 * sqrt3 * root;
    const cplx target = 1.0 + sol.S + sol.S3;
    const cplx phase = std::polar(2.0, sol.delta);
    if (std::abs(phase * (std::cos(sol.delta) + sol.alpha) - target) >
        std::abs(phase * (std::cos(sol.delta) - sol.alpha) - target)) {
        sol.alpha = -sol.alpha;
    }
    return sol;
}

cplx coefficient_A(cplx nu, const ScatteringSolution& sol) {
    const cplx rot = std::exp(I * (pi / 3.0) * nu);
    return std::exp(-sol.beta * nu) * (1.0 / rot + sol.S * rot + sol.S3);
}

cplx coefficient_A_cosine(cplx nu, const ScatteringSolution& sol) {
    return std::polar(2.0, sol.delta) * std::exp(-sol.beta * nu) *
           (std::cos((pi / 3.0) * nu + sol.delta) + sol.alpha);
}

double recurrence_residual(const Coefficient& A, cplx nu, const ChannelEnergy& energy,
                           const ModelParams& params) {
    const cplx up = A(nu + 1.0) * std::sin((nu + 1.0) * (pi / 6.0));
    const cplx down = A(nu - 1.0) * std::sin((nu - 1.0) * (pi / 6.0));
    const cplx centre = (pi * params.c() / (3.0 * energy.K)) * A(nu) * std::cos(nu * (pi / 6.0));
    const double scale = std::max({std::abs(up), std::abs(down), std::abs(centre)});
    if (scale == 0.0) {
        return 0.0;
    }
    return std::abs(up - down + centre) / scale;
}

double recurrence_residual_b_form(const Coefficient& A, cplx nu, const ChannelEnergy& energy,
                                  const ModelParams& params) {
    for (const double bad : {-1.0, 0.0, 1.0}) {
        if (std::abs(nu - bad) < b_form_exclusion) {
            return recurrence_residual(A, nu, energy, params);
        }
    }
    const double line = pi / 6.0;
    auto term = [&](cplx v) {
        return (A(v) / v) * sturmian::rho(v, params) * sturmian::sturmian_fn(v, line, 0);
    };
    cplx lower, upper;
    try {
        lower = term(nu - 1.0);
        upper = term(nu + 1.0);
    } catch (const PoleError&) {
        return recurrence_residual(A, nu, energy, params);
    }
    const cplx centre = (2.0 * nu / energy.K) * (A(nu) / nu) * sturmian::sturmian_fn(nu, line, 0);
    const double scale = std::max({std::abs(lower), std::abs(upper), std::abs(centre)});
    if (scale == 0.0) {
        return 0.0;
    }
    return std::abs(lower - upper - centre) / scale;
}

SMatrixPole s_matrix_pole(const ModelParams& params) {
    if (!params.attractive()) {
        throw DomainError("s_matrix_pole: needs attractive coupling");
    }
    const double lambda = lambda_of(params);
    auto denom = [&](cplx k) { return (-1.0 + I * lambda * k) * (3.0 - I * lambda * k); };
    auto slope = [&](cplx k) {
        return I * lambda * (3.0 - I * lambda * k) - I * lambda * (-1.0 + I * lambda * k);
    };
    cplx k{0.0, pi * std::abs(params.c()) / 12.0};
    int it = 0;
    for (; it < 100; ++it) {
        const cplx step = denom(k) / slope(k);
        k -= step;
        if (std::abs(step) <= 1e-15 * std::abs(k)) {
            break;
        }
    }
    if (std::abs(-1.0 + I * lambda * k) > 1e-12) {
        throw AccuracyError("s_matrix_pole: Newton iteration left the (-1 + i lambda k) factor");
    }
    const double E = (k * k).real() - params.dimer_binding();
    return SMatrixPole{k, E, it + 1};
}

}  // namespace hyperdelta::scattering
