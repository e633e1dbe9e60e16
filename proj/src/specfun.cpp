#include "hyperdelta/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hyperdelta::specfun {

namespace {

// Largest e-fold of cancellation accepted between the integrand on the lifted
// line and the result (e^5 ~ 150, i.e. about two digits).
constexpr double cancellation_budget = 5.0;
constexpr double roundoff_factor = 64.0 * std::numeric_limits<double>::epsilon();

struct Line {
    double x;
    double s;      // Re nu
    double t;      // Im nu
    double gamma;  // Im u on the path
    double cg, sg;

    // log|exp(-x cosh u + nu u)| along u = w + i gamma.
    double log_modulus(double w) const { return -x * cg * std::cosh(w) + s * w - t * gamma; }

    cplx operator()(double w) const {
        const double re = -x * cg * std::cosh(w) + s * w - t * gamma;
        const double im = -x * sg * std::sinh(w) + t * w + s * gamma;
        return std::polar(std::exp(re), im);
    }
};

// Walk away from the peak until the modulus has dropped by `drop` (a log).
double tail_distance(const Line& f, double centre, double peak, double drop, int dir) {
    double d = 0.25;
    while (f.log_modulus(centre + dir * d) - peak > drop) {
        d *= 1.25;
        if (d > 60.0) {
            throw AccuracyError("bessel_k: integrand tail does not decay within u = 60");
        }
    }
    return d;
}

void check_domain(cplx nu, double x) {
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: argument x must be positive, got " + std::to_string(x));
    }
    if (x < min_argument || x > max_argument) {
        throw AccuracyError("bessel_k: argument " + std::to_string(x) +
                            " outside validity domain [1e-3, 1e2]");
    }
    if (std::abs(nu.imag()) > max_imag_order || std::abs(nu.real()) > max_real_order) {
        throw AccuracyError("bessel_k: order outside validity domain |Im nu| <= 50, |Re nu| <= 10");
    }
}

}  // namespace

double contour_shift(double t, double x) {
    const double at = std::abs(t);
    if (at == 0.0) {
        return 0.0;
    }
    // Saddle of -x cosh u + i t u sits at u = i asin(t/x) for t < x and on
    // Im u = pi/2 beyond; stay cancellation_budget / |t| below that line.
    const double saddle = std::asin(std::min(at / x, 1.0));
    const double cap = std::max(0.0, pi / 2 - cancellation_budget / at);
    return std::copysign(std::min(saddle, cap), t);
}

BesselResult bessel_k(cplx nu, double x, const BesselEvalSpec& spec) {
    check_domain(nu, x);
    if (!(spec.rel_tol > 0.0) || spec.abs_floor < 0.0) {
        throw DomainError("bessel_k: rel_tol must be > 0 and abs_floor >= 0");
    }

    Line f{x, nu.real(), nu.imag(), contour_shift(nu.imag(), x), 0.0, 0.0};
    f.cg = std::cos(f.gamma);
    f.sg = std::sin(f.gamma);

    const double centre = std::asinh(f.s / (x * f.cg));
    const double peak = f.log_modulus(centre);
    const double floor = spec.abs_floor > 0.0 ? spec.abs_floor : std::numeric_limits<double>::min();
    double drop = std::log(floor);
    if (spec.u_max_policy == TruncationRule::absolute) {
        drop = std::min(drop, std::log(floor) - peak);
    }
    const double half_width = std::max(tail_distance(f, centre, peak, drop, +1),
                                       tail_distance(f, centre, peak, drop, -1));

    const double decay_width = 1.0 / std::sqrt(x * f.cg);
    const double period = 2.0 * pi / std::max(1.0, std::abs(f.t));
    double h = std::min({0.25, (pi / 2 - std::abs(f.gamma)) / 4.0, period / 10.0, decay_width});
    std::size_t n = static_cast<std::size_t>(std::ceil(half_width / h));
    h = half_width / static_cast<double>(n);

    if (2 * n + 1 > spec.node_budget) {
        throw AccuracyError("bessel_k: initial grid already exceeds the node budget");
    }

    // Nodes centre + k h, k = -n..n, summed in mirrored pairs so that the
    // purely imaginary order case (F(-w) = conj F(w)) stays exactly real.
    cplx sum = f(centre);
    double l1 = std::abs(sum);
    for (std::size_t k = 1; k <= n; ++k) {
        const double d = static_cast<double>(k) * h;
        const cplx a = f(centre + d);
        const cplx b = f(centre - d);
        sum += a + b;
        l1 += std::abs(a) + std::abs(b);
    }
    std::size_t nodes = 2 * n + 1;
    cplx estimate = 0.5 * h * sum;

    while (true) {
        if (nodes + 2 * n > spec.node_budget) {
            throw AccuracyError("bessel_k: node budget exhausted before the trapezoid estimates agreed");
        }
        cplx mid{};
        double mid_l1 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = (static_cast<double>(k) + 0.5) * h;
            const cplx a = f(centre + d);
            const cplx b = f(centre - d);
            mid += a + b;
            mid_l1 += std::abs(a) + std::abs(b);
        }
        nodes += 2 * n;
        sum += mid;
        l1 += mid_l1;
        h *= 0.5;
        n *= 2;
        const cplx refined = 0.5 * h * sum;
        const double scale = 0.5 * h * l1;
        const double change = std::abs(refined - estimate);
        estimate = refined;
        if (change <= spec.rel_tol * std::abs(refined) + roundoff_factor * scale) {
            return BesselResult{refined, f.gamma, centre - half_width, centre + half_width, nodes, scale};
        }
    }
}

double bessel_k_imag_order(double t, double x, const BesselEvalSpec& spec) {
    return bessel_k(cplx{0.0, t}, x, spec).value.real();
}

double bessel_k_real_order(double nu, double x, const BesselEvalSpec& spec) {
    return bessel_k(cplx{nu, 0.0}, x, spec).value.real();
}

cplx bessel_k_complex_order(cplx nu, double x, const BesselEvalSpec& spec) {
    return bessel_k(nu, x, spec).value;
}

double bessel_recurrence_residual(double t, double x, const BesselEvalSpec& spec) {
    const cplx nu{0.0, t};
    const cplx k_nu = bessel_k(nu, x, spec).value;
    const cplx k_up = bessel_k(nu + 1.0, x, spec).value;
    const cplx k_down = bessel_k(nu - 1.0, x, spec).value;
    const cplx defect = k_up - k_down - (2.0 * nu / x) * k_nu;
    return std::abs(defect) / std::max(std::abs(k_nu), spec.abs_floor);
}

}  // namespace hyperdelta::specfun
