#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperdelta/params.hpp"

namespace hyperdelta::sturmian {

/// Point on the pseudo-Sturmian eigenvalue curve rho(nu).
struct SturmianValue {
    cplx nu;
    cplx rho;
};

/// Root q_kappa of q tan(pi q / 6) = pi R' c / 6 and the adiabatic potential
/// Lambda = (q^2 - 1/4) / R'^2.
struct AdiabaticRoot {
    int kappa = 0;
    cplx q;
    double R_prime = 0.0;
    double Lambda = 0.0;
};

/// Unnormalised pseudo-Sturmian function cos[(theta - j pi/3) nu] on sector j.
/// Throws DomainError when theta lies outside the closed sector.
cplx sturmian_fn(cplx nu, double theta, int j);

/// rho(nu) = (6 / (pi c)) nu tan(nu pi / 6). Throws PoleError at nu = 3 + 6n.
cplx rho(cplx nu, const ModelParams& params);

/// |lim_{theta -> theta_j^-} (1/rho) S'/S + pi c / 6| with the derivative taken by
/// one-sided differences (h, h/2, h/4, h = 1e-3 pi/6) and two Richardson levels.
double boundary_residual(cplx nu, const ModelParams& params);

struct DerivativeEstimate {
    cplx value;
    double spread;  ///< |difference of the two first-level extrapolants|, O(h^2)
};

/// One-sided derivative d/dtheta f at theta0 from the left: backward
/// differences with steps h, h/2, h/4 and two Richardson levels.
template <class F>
DerivativeEstimate left_derivative(F&& f, double theta0, double h) {
    const cplx f0 = f(theta0);
    auto diff = [&](double step) { return (f0 - f(theta0 - step)) / step; };
    const cplx d1 = diff(h);
    const cplx d2 = diff(h / 2);
    const cplx d4 = diff(h / 4);
    const cplx e1 = 2.0 * d2 - d1;
    const cplx e2 = 2.0 * d4 - d2;
    return DerivativeEstimate{(4.0 * e2 - e1) / 3.0, std::abs(e2 - e1)};
}

/// Step used by every boundary-limit evaluation.
inline constexpr double boundary_step = 1e-3 * pi / 6.0;

/// Channel label kappa = 0, 6, 12, ... up to kappa_max.
///
/// Attractive c: kappa = 0 gives q = i tau with tau tanh(pi tau / 6) = pi R' |c| / 6.
/// Repulsive c: kappa = 0 gives the real root in (0, 3).
/// kappa >= 6: real root bracketed in (kappa - 3, kappa + 3).
std::vector<AdiabaticRoot> adiabatic_roots(double R_prime, const ModelParams& params, int kappa_max,
                                           double tol = 1e-12);

/// Single channel of adiabatic_roots. Throws BracketError if no sign change is found.
AdiabaticRoot adiabatic_root(double R_prime, const ModelParams& params, int kappa, double tol = 1e-12);

enum class CurveFlag { ok, pole };

struct CurvePoint {
    SturmianValue value;
    CurveFlag flag = CurveFlag::ok;
    /// For real rho > 0: channel whose adiabatic root at R' = rho reproduces nu,
    /// Lambda from that root and |nu^2 - (Lambda rho^2 + 1/4)|.
    std::optional<int> kappa;
    std::optional<double> Lambda;
    std::optional<double> relation_residual;
};

/// Tabulate rho along a grid lying on the real or the imaginary nu axis.
std::vector<CurvePoint> rho_curve(const std::vector<cplx>& nu_grid, const ModelParams& params);

std::string to_string(CurveFlag flag);

}  // namespace hyperdelta::sturmian
