#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "hyperdelta/errors.hpp"

namespace hyperdelta {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Interaction strength of the pairwise delta potential, in units 2m = hbar = 1.
///
/// c = (3 / (pi sqrt 2)) (2m/hbar^2) g; negative for attraction. The boundary
/// condition on each coalescence line uses the derived length a = 6 / (pi c).
class ModelParams {
public:
    explicit ModelParams(double c) : c_(c) {
        if (!(c != 0.0) || !std::isfinite(c)) {
            throw DomainError("ModelParams: coupling c must be finite and non-zero");
        }
    }

    double c() const noexcept { return c_; }
    double a() const noexcept { return 6.0 / (pi * c_); }
    bool attractive() const noexcept { return c_ < 0.0; }

    /// pi c / 6, the right-hand side -1/a of the logarithmic-derivative condition up to sign.
    double inverse_a() const noexcept { return pi * c_ / 6.0; }

    /// Dimer binding energy (pi c)^2 / 36 (positive number; the energy is its negative).
    double dimer_binding() const noexcept { return (pi * c_) * (pi * c_) / 36.0; }

private:
    double c_;
};

}  // namespace hyperdelta
