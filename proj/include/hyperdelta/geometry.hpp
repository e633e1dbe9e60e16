#pragma once

#include <array>

#include "hyperdelta/params.hpp"

namespace hyperdelta::geometry {

/// Positions of the three particles on the line.
struct ParticleConfig {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

/// Centre of mass r and the mass-scaled Jacobi pair
///   eta = (x1 - x2) / sqrt(2),  xi = sqrt(2/3) ((x1 + x2)/2 - x3).
struct JacobiCoords {
    double r = 0.0;
    double eta = 0.0;
    double xi = 0.0;
};

/// Polar form of (eta, xi) plus the sector the angle belongs to.
///
/// Sector j covers theta_{j-1} < theta <= theta_j with theta_j = (2j+1) pi/6;
/// its centre is j pi/3.
struct HyperPoint {
    double R = 0.0;
    double theta = 0.0;
    int j = 0;
};

/// Wrap an angle into (-pi, pi].
double wrap_angle(double theta);

/// Angle measured from the centre of sector j, wrapped into (-pi, pi].
double sector_offset(double theta, int j);

/// Angle of the coalescence line theta_j = (2j+1) pi / 6, wrapped into (-pi, pi].
double line_angle(int j);

JacobiCoords to_jacobi(const ParticleConfig& cfg);
ParticleConfig from_jacobi(const JacobiCoords& jc);

/// Throws DegenerateError at R = 0 where the angle is undefined.
HyperPoint to_hyperspherical(const JacobiCoords& jc);

/// Point with the given polar coordinates, sector assigned by sector_of.
HyperPoint make_point(double R, double theta);

JacobiCoords to_jacobi(const HyperPoint& p, double r = 0.0);

/// Sector index in 0..5. Points on a line theta_j go to sector j (the theta < theta_j side).
int sector_of(double theta);

/// Particle labels (1, 2, 3) in increasing position order throughout sector j,
/// e.g. {2, 3, 1} for j = 0 meaning x2 < x3 < x1.
std::array<int, 3> particle_order(int j);

}  // namespace hyperdelta::geometry
