#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperdelta/specfun.hpp"

using namespace hyperdelta;
using namespace hyperdelta::specfun;

namespace {

// K0 from its ascending series; adequate for x <= 2.
double k0_series(double x) {
    const double euler_gamma = 0.57721566490153286061;
    const double q = x * x / 4.0;
    double term = 1.0;
    double i0 = 1.0;
    double tail = 0.0;
    double harmonic = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (double(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
    }
    return -(std::log(x / 2.0) + euler_gamma) * i0 + tail;
}

// int_0^inf e^{-x cosh u} cos(t u) du on a dense trapezoid grid.
double k_imag_dense(double t, double x) {
    const double h = 1e-3;
    const double u_max = std::acosh(60.0 / x + 1.0);
    double sum = 0.5 * std::exp(-x);
    for (int i = 1; i * h <= u_max; ++i) {
        const double u = i * h;
        sum += std::exp(-x * std::cosh(u)) * std::cos(t * u);
    }
    return h * sum;
}

}  // namespace

TEST_SUITE("specfun") {
    TEST_CASE("K0 matches the ascending-series oracle") {
        for (const double x : {0.05, 0.3, 1.0, 2.0}) {
            CHECK(bessel_k_imag_order(0.0, x) == doctest::Approx(k0_series(x)).epsilon(1e-12));
        }
        CHECK(bessel_k_imag_order(0.0, 1.0) == doctest::Approx(0.4210244382).epsilon(1e-10));
    }

    TEST_CASE("series oracle agrees with the defining integral") {
        for (const double x : {0.3, 1.0, 2.0}) {
            CHECK(k0_series(x) == doctest::Approx(k_imag_dense(0.0, x)).epsilon(1e-11));
        }
    }

    TEST_CASE("imaginary order matches dense quadrature at moderate t") {
        for (const auto& [t, x] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {3.0, 2.0}, {0.5, 5.0}}) {
            CHECK(std::abs(bessel_k_imag_order(t, x) - k_imag_dense(t, x)) < 1e-10);
        }
    }

    TEST_CASE("frozen high-precision values, including deep cancellation") {
        struct Ref {
            double t, x, value;
        };
        const Ref refs[] = {
            {1.0, 1.0, 0.28942803702599212763},
            {2.0, 0.5, 0.016502018949481442656},
            {5.0, 1.0, 0.00038046182799756372805},
            {10.0, 2.0, 1.1735704221220611526e-7},
            {20.0, 5.0, -8.2646568034237979036e-15},
            {0.5, 10.0, 0.000017569107704141347831},
        };
        for (const auto& r : refs) {
            CAPTURE(r.t);
            CAPTURE(r.x);
            CHECK(bessel_k_imag_order(r.t, r.x) == doctest::Approx(r.value).epsilon(1e-10));
        }
        const cplx general = bessel_k_complex_order(cplx{1.0, 2.0}, 1.5);
        CHECK(general.real() == doctest::Approx(0.041752517583522927283).epsilon(1e-10));
        CHECK(general.imag() == doctest::Approx(0.092442476283492842571).epsilon(1e-10));
    }

    TEST_CASE("half-order closed form") {
        for (const double x : {0.01, 0.5, 1.0, 3.0, 20.0}) {
            const double exact = std::sqrt(pi / (2.0 * x)) * std::exp(-x);
            CHECK(std::abs(bessel_k_real_order(0.5, x) - exact) / exact < 1e-12);
        }
        CHECK(bessel_k_real_order(0.5, 1.0) == doctest::Approx(0.4610685).epsilon(1e-7));
    }

    TEST_CASE("evenness and realness in t") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> ut(0.0, 30.0), ux(0.05, 30.0);
        for (int i = 0; i < 40; ++i) {
            const double t = ut(rng);
            const double x = ux(rng);
            const BesselResult plus = bessel_k(cplx{0.0, t}, x);
            const BesselResult minus = bessel_k(cplx{0.0, -t}, x);
            CHECK(std::abs(plus.value - minus.value) <= 1e-12 * std::abs(plus.value));
            CHECK(plus.value.imag() == 0.0);
        }
        CHECK(bessel_k_imag_order(-2.0, 0.5) == bessel_k_imag_order(2.0, 0.5));
    }

    TEST_CASE("recurrence identity on the reference grid") {
        double worst = 0.0;
        for (int i = 1; i <= 100; ++i) {
            for (const double x : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
                worst = std::max(worst, bessel_recurrence_residual(0.1 * i, x));
            }
        }
        CHECK(worst < 1e-8);
    }

    TEST_CASE("contour shift is odd in t and zero for real order") {
        CHECK(contour_shift(0.0, 1.0) == 0.0);
        CHECK(contour_shift(3.0, 1.0) == doctest::Approx(-contour_shift(-3.0, 1.0)));
        CHECK(contour_shift(40.0, 0.5) > 0.0);
        CHECK(contour_shift(40.0, 0.5) < pi / 2.0);
    }

    TEST_CASE("domain and accuracy errors") {
        CHECK_THROWS_AS(bessel_k_imag_order(1.0, 0.0), DomainError);
        CHECK_THROWS_AS(bessel_k_imag_order(1.0, -1.0), DomainError);
        CHECK_THROWS_AS(bessel_k_imag_order(max_imag_order + 1.0, 1.0), AccuracyError);
        CHECK_THROWS_AS(bessel_k_imag_order(1.0, 1e-5), AccuracyError);
        BesselEvalSpec starved;
        starved.node_budget = 8;
        CHECK_THROWS_AS(bessel_k_imag_order(5.0, 1.0, starved), AccuracyError);
    }

    TEST_CASE("absolute truncation rule agrees where values are not tiny") {
        BesselEvalSpec absolute;
        absolute.u_max_policy = TruncationRule::absolute;
        absolute.abs_floor = 1e-30;
        CHECK(bessel_k_imag_order(2.0, 1.5, absolute) ==
              doctest::Approx(bessel_k_imag_order(2.0, 1.5)).epsilon(1e-11));
    }
}
