#pragma once

#include <cstddef>

#include "hyperdelta/geometry.hpp"
#include "hyperdelta/params.hpp"
#include "hyperdelta/scattering.hpp"

namespace hyperdelta::wavefunction {

using geometry::HyperPoint;
using geometry::ParticleConfig;
using scattering::ChannelEnergy;
using scattering::ScatteringSolution;

/// Trapezoid quadrature along nu = it.
///
/// With adaptive set, integration stops at the end of the first unit window in
/// which every integrand modulus is below rel_tol times the smaller of the
/// running maximum and the running integral. Reaching t_max is accepted when
/// the last window is below rel_tol times the running maximum and raises
/// AccuracyError otherwise.
/// Without it the range is exactly [0, t_max].
struct QuadratureSpec {
    double t_max = 40.0;
    double nodes_per_unit = 16.0;
    double rel_tol = 1e-7;
    bool adaptive = true;
    /// Closest approach to a coalescence line, in radians.
    double margin = pi / 60.0;
};

struct KlResult {
    cplx value;
    double t_end = 0.0;      ///< upper end actually reached
    std::size_t nodes = 0;   ///< integrand evaluations
    double peak = 0.0;       ///< largest integrand modulus met
};

/// Closed six-exponential wavefunction on sector p.j,
///   Psi = (i pi/2) [ e^{-KR cosh(beta + i phi_-)} + e^{-KR cosh(-beta + i phi_+)}
///                    + S (e^{-KR cosh(beta + i phi_+)} + e^{-KR cosh(-beta + i phi_-)})
///                    + S3 (e^{-KR cosh(-beta + i phi_0)} + e^{-KR cosh(beta + i phi_0)}) ],
/// with theta' the offset from the sector centre, phi_+- = theta' -+ pi/3 and phi_0 = theta'.
/// Exponents are expanded with cosh(beta) = -pi c/(6K), sinh(beta) = k/K.
cplx psi_closed_form(const HyperPoint& p, const ChannelEnergy& energy, const ScatteringSolution& sol,
                     const ModelParams& params);

/// Same expression with the exponents left as -KR cosh(+-beta + i phi).
cplx psi_closed_form_cosh(const HyperPoint& p, const ChannelEnergy& energy,
                          const ScatteringSolution& sol, const ModelParams& params);

/// i int_{-inf}^{inf} A(it) cosh(theta' t) K_{it}(KR) dt folded onto t >= 0.
/// Throws ConvergenceError within q.margin of a coalescence line, DomainError at R = 0
/// or for a quadrature density that cannot resolve the oscillation at the cap, and
/// AccuracyError when the adaptive stop is not reached before the cap.
KlResult kl_integral(const HyperPoint& p, const ChannelEnergy& energy, const ScatteringSolution& sol,
                     const ModelParams& params, const QuadratureSpec& q = {});

/// The same integral taken over [-T, T] without folding, T the folded stop point.
KlResult kl_integral_unfolded(const HyperPoint& p, const ChannelEnergy& energy,
                              const ScatteringSolution& sol, const ModelParams& params,
                              const QuadratureSpec& q = {});

/// i int_{-inf}^{inf} cosh(a i t) K_{it}(z) dt; equals i pi e^{-z cosh a} for |Im a| < pi/2.
KlResult kl_cosh_transform(cplx a, double z, const QuadratureSpec& q = {});

/// Channel form e^{(pi c/6) R cos theta'} (e^{-ikR sin theta'} + S e^{ikR sin theta'}),
/// theta' = theta - (j-1) pi/3. DomainError unless pi/6 < theta' < pi/2.
cplx psi_asymptotic(const HyperPoint& p, const ChannelEnergy& energy, const ScatteringSolution& sol,
                    const ModelParams& params);

/// |(1/(R Psi)) dPsi/dtheta + pi c/6| at theta -> theta_j from inside sector j, with
/// the one-sided Richardson derivative of sturmian::left_derivative.
/// DegenerateError if |Psi| < 1e-10 on the line; AccuracyError if extrapolation stalls.
double boundary_condition_residual(double R, const ChannelEnergy& energy,
                                   const ScatteringSolution& sol, const ModelParams& params,
                                   int j = 0);

struct PlaneWaveMomenta {
    cplx k1;
    cplx k2;
    cplx k3;
};

/// k1 = i pi c/(6 sqrt 2) - k/sqrt 6, k2 = -i pi c/(6 sqrt 2) - k/sqrt 6, k3 = sqrt(2/3) k.
PlaneWaveMomenta plane_wave_momenta(const ChannelEnergy& energy, const ModelParams& params);

/// Six cartesian exponentials of the active sector. With the particles relabelled so
/// that y2 < y3 < y1,
///   e^{-i(k3 y1 + k2 y2 + k1 y3)} + e^{i(k2 y1 + k3 y2 + k1 y3)}
///   + S (e^{-i(k1 y1 + k3 y2 + k2 y3)} + e^{i(k3 y1 + k1 y2 + k2 y3)})
///   + S3 (e^{-i(k1 y1 + k2 y2 + k3 y3)} + e^{i(k2 y1 + k1 y2 + k3 y3)}).
/// Equals psi_closed_form / (i pi/2). DegenerateError if two particles coincide.
cplx psi_plane_wave(const ParticleConfig& cfg, const ChannelEnergy& energy,
                    const ScatteringSolution& sol, const ModelParams& params);

}  // namespace hyperdelta::wavefunction
