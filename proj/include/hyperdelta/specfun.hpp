#pragma once

#include <cstddef>

#include "hyperdelta/params.hpp"

namespace hyperdelta::specfun {

/// How the integration range of the K_nu integral representation is cut off.
enum class TruncationRule {
    /// Stop where the integrand has dropped below abs_floor times its peak modulus.
    peak_relative,
    /// Stop where the integrand modulus itself is below abs_floor.
    absolute,
};

struct BesselEvalSpec {
    double rel_tol = 1e-12;
    double abs_floor = 1e-18;
    TruncationRule u_max_policy = TruncationRule::peak_relative;
    std::size_t node_budget = std::size_t{1} << 22;
};

/// Declared validity domain. Outside it the quadrature raises AccuracyError.
inline constexpr double max_imag_order = 50.0;
inline constexpr double max_real_order = 10.0;
inline constexpr double min_argument = 1e-3;
inline constexpr double max_argument = 1e2;

struct BesselResult {
    cplx value;            ///< K_nu(x); real for real x and nu real or purely imaginary
    double contour_shift;  ///< imaginary offset gamma of the integration line
    double u_lo, u_hi;     ///< truncated integration range along the shifted line
    std::size_t nodes;     ///< integrand evaluations spent
    double l1_norm;        ///< integral of |integrand|, the cancellation scale
};

/// K_nu(x) for complex order from K_nu(x) = 1/2 int_R exp(-x cosh u + nu u) du.
///
/// For Im(nu) = t the path u = w + i gamma is lifted towards Im u = pi/2 so the
/// e^{-pi |t| / 2} size of the result is carried by the path instead of
/// emerging from cancellation. Trapezoid rule, halved until two successive
/// estimates agree to rel_tol.
BesselResult bessel_k(cplx nu, double x, const BesselEvalSpec& spec = {});

/// K_{it}(x), real and even in t.
double bessel_k_imag_order(double t, double x, const BesselEvalSpec& spec = {});

/// K_nu(x) for real order.
double bessel_k_real_order(double nu, double x, const BesselEvalSpec& spec = {});

/// K_nu(x) for complex order (value only).
cplx bessel_k_complex_order(cplx nu, double x, const BesselEvalSpec& spec = {});

/// Relative residual of K_{nu+1} - K_{nu-1} = (2 nu / x) K_nu at nu = it,
/// normalised by max(|K_{it}(x)|, abs_floor).
double bessel_recurrence_residual(double t, double x, const BesselEvalSpec& spec = {});

/// Imaginary offset of the integration line used for order nu = s + it.
double contour_shift(double t, double x);

}  // namespace hyperdelta::specfun
