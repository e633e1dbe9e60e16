#include "hyperdelta/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hyperdelta::geometry {

namespace {

const double sqrt2 = std::sqrt(2.0);
const double sqrt_two_thirds = std::sqrt(2.0 / 3.0);

// Angles closer than this to a coalescence line are treated as on it.
constexpr double boundary_snap = 1e-12;

void check_sector(int j) {
    if (j < 0 || j > 5) {
        throw DomainError("sector index must be in 0..5, got " + std::to_string(j));
    }
}

}  // namespace

double wrap_angle(double theta) {
    double w = std::remainder(theta, 2.0 * pi);
    if (w <= -pi) {
        w += 2.0 * pi;
    }
    return w;
}

double sector_offset(double theta, int j) {
    return wrap_angle(theta - j * pi / 3.0);
}

double line_angle(int j) {
    return wrap_angle((2 * j + 1) * pi / 6.0);
}

JacobiCoords to_jacobi(const ParticleConfig& cfg) {
    return JacobiCoords{
        (cfg.x1 + cfg.x2 + cfg.x3) / 3.0,
        (cfg.x1 - cfg.x2) / sqrt2,
        sqrt_two_thirds * (0.5 * (cfg.x1 + cfg.x2) - cfg.x3),
    };
}

ParticleConfig from_jacobi(const JacobiCoords& jc) {
    const double diff = sqrt2 * jc.eta;           // x1 - x2
    const double lever = jc.xi / sqrt_two_thirds;  // (x1 + x2)/2 - x3
    return ParticleConfig{
        jc.r + 0.5 * diff + lever / 3.0,
        jc.r - 0.5 * diff + lever / 3.0,
        jc.r - 2.0 * lever / 3.0,
    };
}

int sector_of(double theta) {
    // Sector j is (theta_{j-1}, theta_j]; 3 theta / pi - 1/2 is an integer on the lines.
    const double y = 3.0 * wrap_angle(theta) / pi - 0.5;
    const double nearest = std::round(y);
    const double j = std::abs(y - nearest) < boundary_snap ? nearest : std::ceil(y);
    const int idx = static_cast<int>(j) % 6;
    return idx < 0 ? idx + 6 : idx;
}

HyperPoint to_hyperspherical(const JacobiCoords& jc) {
    const double R = std::hypot(jc.eta, jc.xi);
    if (R == 0.0) {
        throw DegenerateError("to_hyperspherical: hyperangle undefined at R = 0");
    }
    const double theta = wrap_angle(std::atan2(jc.xi, jc.eta));
    return HyperPoint{R, theta, sector_of(theta)};
}

HyperPoint make_point(double R, double theta) {
    if (R < 0.0) {
        throw DomainError("make_point: hyperradius must be non-negative");
    }
    const double w = wrap_angle(theta);
    return HyperPoint{R, w, sector_of(w)};
}

JacobiCoords to_jacobi(const HyperPoint& p, double r) {
    return JacobiCoords{r, p.R * std::cos(p.theta), p.R * std::sin(p.theta)};
}

std::array<int, 3> particle_order(int j) {
    check_sector(j);
    const ParticleConfig centre = from_jacobi(to_jacobi(HyperPoint{1.0, j * pi / 3.0, j}));
    const std::array<double, 3> x{centre.x1, centre.x2, centre.x3};
    std::array<int, 3> order{1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a - 1] < x[b - 1]; });
    return order;
}

}  // namespace hyperdelta::geometry
