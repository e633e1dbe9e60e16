#include "hyperdelta/sturmian.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "hyperdelta/geometry.hpp"

namespace hyperdelta::sturmian {

namespace {

constexpr double sector_slack = 1e-12;
// |cos(nu pi/6)| below which rho is treated as sitting on its pole.
constexpr double pole_exact = 1e-12;
// ... and below which a tabulated point is flagged as pole-adjacent.
constexpr double pole_adjacent = 1e-8;
// Distance kept from the tangent poles at odd multiples of 3 when bracketing.
constexpr double pole_gap = 1e-9;
constexpr int scan_points = 64;

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    if (flo == 0.0) {
        return lo;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// First sign change of f on a uniform scan of [lo, hi], refined by bisection.
double scan_and_bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
                       int kappa) {
    double a = lo;
    double fa = f(a);
    for (int i = 1; i <= scan_points; ++i) {
        const double b = lo + (hi - lo) * i / scan_points;
        const double fb = f(b);
        if (fa == 0.0) {
            return a;
        }
        if ((fa < 0.0) != (fb < 0.0)) {
            return bisect(f, a, b, tol);
        }
        a = b;
        fa = fb;
    }
    throw BracketError("adiabatic_root: no sign change for kappa = " + std::to_string(kappa));
}

}  // namespace

cplx sturmian_fn(cplx nu, double theta, int j) {
    if (j < 0 || j > 5) {
        throw DomainError("sturmian_fn: sector index must be in 0..5");
    }
    const double offset = geometry::sector_offset(theta, j);
    if (std::abs(offset) > pi / 6.0 + sector_slack) {
        throw DomainError("sturmian_fn: theta = " + std::to_string(theta) + " outside sector " +
                          std::to_string(j));
    }
    return std::cos(offset * nu);
}

cplx rho(cplx nu, const ModelParams& params) {
    const cplx arg = nu * (pi / 6.0);
    const cplx cosine = std::cos(arg);
    if (std::abs(cosine) < pole_exact) {
        throw PoleError("rho: nu pi/6 is a pole of the tangent (nu = 3 + 6n)");
    }
    return params.a() * nu * std::sin(arg) / cosine;
}

double boundary_residual(cplx nu, const ModelParams& params) {
    const cplx r = rho(nu, params);
    const double line = pi / 6.0;  // theta_0, approached from sector 0
    auto s = [&](double theta) { return sturmian_fn(nu, theta, 0); };
    const cplx s0 = s(line);
    if (std::abs(s0) == 0.0 || std::abs(r) == 0.0) {
        throw DegenerateError("boundary_residual: S or rho vanishes on the line");
    }
    const DerivativeEstimate d = left_derivative(s, line, boundary_step);
    if (!(d.spread <= 1e-3 * std::abs(d.value) + 1e-12)) {
        throw AccuracyError("boundary_residual: Richardson extrapolation did not settle");
    }
    const cplx limit = d.value / (s0 * r);
    return std::abs(limit + params.inverse_a());
}

AdiabaticRoot adiabatic_root(double R_prime, const ModelParams& params, int kappa, double tol) {
    if (!(R_prime > 0.0)) {
        throw DomainError("adiabatic_root: R' must be positive");
    }
    if (kappa < 0 || kappa % 6 != 0) {
        throw DomainError("adiabatic_root: kappa must be 0, 6, 12, ...");
    }
    const double target = pi * R_prime * params.c() / 6.0;
    AdiabaticRoot root;
    root.kappa = kappa;
    root.R_prime = R_prime;

    if (kappa == 0 && params.attractive()) {
        // q = i tau:  q tan(pi q/6) = -tau tanh(pi tau/6)
        auto g = [&](double tau) { return tau * std::tanh(pi * tau / 6.0) + target; };
        const double tau = bisect(g, 0.0, -target + 10.0, tol);
        root.q = cplx{0.0, tau};
    } else {
        auto f = [&](double q) { return q * std::tan(pi * q / 6.0) - target; };
        const double lo = kappa == 0 ? pole_gap : kappa - 3.0 + pole_gap;
        const double hi = kappa + 3.0 - pole_gap;
        root.q = cplx{scan_and_bisect(f, lo, hi, tol, kappa), 0.0};
    }
    root.Lambda = ((root.q * root.q).real() - 0.25) / (R_prime * R_prime);
    return root;
}

std::vector<AdiabaticRoot> adiabatic_roots(double R_prime, const ModelParams& params, int kappa_max,
                                           double tol) {
    std::vector<AdiabaticRoot> roots;
    for (int kappa = 0; kappa <= kappa_max; kappa += 6) {
        roots.push_back(adiabatic_root(R_prime, params, kappa, tol));
    }
    return roots;
}

std::vector<CurvePoint> rho_curve(const std::vector<cplx>& nu_grid, const ModelParams& params) {
    std::vector<CurvePoint> out;
    out.reserve(nu_grid.size());
    for (const cplx nu : nu_grid) {
        const bool real_axis = nu.imag() == 0.0;
        const bool imag_axis = nu.real() == 0.0;
        if (!real_axis && !imag_axis) {
            throw DomainError("rho_curve: grid points must lie on the real or the imaginary axis");
        }
        CurvePoint p;
        p.value.nu = nu;
        if (std::abs(std::cos(nu * (pi / 6.0))) < pole_adjacent) {
            p.flag = CurveFlag::pole;
            p.value.rho = cplx{std::nan(""), std::nan("")};
            out.push_back(p);
            continue;
        }
        p.value.rho = rho(nu, params);
        const double r = p.value.rho.real();
        if (r > 0.0 && nu != cplx{}) {
            const int kappa = real_axis ? 6 * static_cast<int>(std::lround(std::abs(nu.real()) / 6.0)) : 0;
            const AdiabaticRoot root = adiabatic_root(r, params, kappa);
            p.kappa = kappa;
            p.Lambda = root.Lambda;
            p.relation_residual = std::abs((nu * nu).real() - (root.Lambda * r * r + 0.25));
        }
        out.push_back(p);
    }
    return out;
}

std::string to_string(CurveFlag flag) {
    return flag == CurveFlag::pole ? "pole" : "ok";
}

}  // namespace hyperdelta::sturmian
