#pragma once

#include <functional>

#include "hyperdelta/params.hpp"

namespace hyperdelta::scattering {

/// Kinematics of the E < 0 dimer + particle channel.
///
/// k is the relative momentum of the free particle, K = sqrt((pi c)^2/36 - k^2)
/// the decay constant of the Bessel factor and E = k^2 - (pi c)^2/36 = -K^2.
struct ChannelEnergy {
    double k = 0.0;
    double K = 0.0;
    double E = 0.0;
};

/// Closed-form solution of the coefficient recurrence,
///   A(nu) = e^{-beta nu} (e^{-i pi nu/3} + S e^{i pi nu/3} + S3).
struct ScatteringSolution {
    double beta = 0.0;
    cplx S;
    cplx S3;
    double delta = 0.0;  ///< S = e^{2 i delta}, delta in (-pi/2, pi/2]
    cplx alpha;          ///< constant of the cosine form of A
};

using Coefficient = std::function<cplx(cplx)>;

/// Throws DomainError unless c < 0 and 0 <= k < pi |c| / 6.
ChannelEnergy channel_energy(double k, const ModelParams& params);

/// Rapidity with cosh(beta) = -pi c / (6K), sinh(beta) = k / K.
double beta_of(const ChannelEnergy& energy, const ModelParams& params);

/// S-matrix element in terms of k,
///   S = (1 - 36 u^2 + i (24/sqrt 3) u) / (1 - 36 u^2 - i (24/sqrt 3) u),  u = k / (pi c).
/// This is the orientation that solves the coefficient recurrence.
cplx s_matrix(double k, const ModelParams& params);

/// Same element in factored form with lambda = 6 sqrt(3) / (pi c):
///   S = [(-1 - i lambda k)(3 + i lambda k)] / [(-1 + i lambda k)(3 - i lambda k)].
cplx s_matrix_factored(double k, const ModelParams& params);

/// S = tan(pi/6 - i beta) cot(pi/6 + i beta).
cplx s_matrix_from_beta(double beta);

/// S3 = (3 + i lambda k) / (-1 + i lambda k).
cplx s3_coefficient(double k, const ModelParams& params);

/// S3 = -cot(pi/6) cot(pi/6 + i beta).
cplx s3_from_beta(double beta);

/// Phase shift arg(S)/2 in (-pi/2, pi/2].
double delta_of(cplx S);

/// Every coefficient of A(nu) at momentum k.
ScatteringSolution solve_channel(double k, const ModelParams& params);

/// A(nu) = e^{-beta nu} (e^{-i pi nu/3} + S e^{i pi nu/3} + S3).
cplx coefficient_A(cplx nu, const ScatteringSolution& sol);

/// The same function written as 2 e^{i delta} e^{-beta nu} [cos(pi nu/3 + delta) + alpha].
cplx coefficient_A_cosine(cplx nu, const ScatteringSolution& sol);

/// Normalised defect of
///   A(nu+1) sin((nu+1) pi/6) - A(nu-1) sin((nu-1) pi/6) = -(pi c / 3K) A(nu) cos(nu pi/6),
/// i.e. |lhs - rhs| / max term modulus. Zero when every term vanishes.
double recurrence_residual(const Coefficient& A, cplx nu, const ChannelEnergy& energy,
                           const ModelParams& params);

/// The same relation written with B(nu) = A(nu)/nu, rho(nu) and S(nu, theta_j):
///   B(nu-1) rho(nu-1) S(nu-1) - B(nu+1) rho(nu+1) S(nu+1) = (2 nu / K) B(nu) S(nu).
/// Near nu in {0, +-1} or a pole of rho it falls back to recurrence_residual.
double recurrence_residual_b_form(const Coefficient& A, cplx nu, const ChannelEnergy& energy,
                                  const ModelParams& params);

struct SMatrixPole {
    cplx k;      ///< pole momentum, upper half plane
    double E;    ///< k^2 - (pi c)^2 / 36
    int iterations;
};

/// Zero of the (-1 + i lambda k) denominator factor, found by Newton iteration
/// on the full denominator started on the positive imaginary axis.
SMatrixPole s_matrix_pole(const ModelParams& params);

}  // namespace hyperdelta::scattering
