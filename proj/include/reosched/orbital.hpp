#ifndef REOSCHED_ORBITAL_HPP
#define REOSCHED_ORBITAL_HPP

#include <string>
#include <vector>

#include "reosched/geometry.hpp"
#include "reosched/time_grid.hpp"

namespace reosched {

// Circular-orbit element set. Angles in degrees, normalized to [0, 360).
// eccentricity is carried for completeness but must be 0 for this toolkit.
struct OrbitalElements {
    double semi_major_axis_km = 0.0;
    double eccentricity = 0.0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;         // right ascension of ascending node
    double arg_latitude_deg = 0.0; // phase u along the orbit

    double orbital_period_s() const;
    double circular_speed_kms() const;

    // Unit normal of the orbit plane in ECI.
    Vec3 plane_normal() const;

    bool same_orbit(const OrbitalElements& o, double tol_deg = 1e-9) const;
    bool same_plane(const OrbitalElements& o, double tol_deg = 1e-9) const;
};

enum class Perturbation {
    TwoBody,
    J2Secular, // secular drift of RAAN and argument of latitude only
};

// Inertial position series over a grid, one sample per step start.
struct Ephemeris {
    std::vector<Vec3> positions_km; // length = grid.total_steps
    std::string source_id;
};

// Secular J2 rates for a circular orbit: {raan_dot, u_dot_correction} rad/s.
// u_dot_correction is the J2 addition to the two-body mean motion.
struct J2Rates {
    double raan_dot = 0.0;
    double u_dot_extra = 0.0;
};
J2Rates j2_secular_rates(const OrbitalElements& el);

// Propagates the orbit over the grid. Positions at step start, ECI.
// Throws InvalidOrbitError for altitudes below 100 km.
Ephemeris propagate(const OrbitalElements& elements, const TimeGrid& grid,
                    Perturbation perturbation = Perturbation::TwoBody);

// Position at a single offset from epoch, seconds. Same contract as propagate.
Vec3 propagate_at(const OrbitalElements& elements, double seconds_from_epoch,
                  Perturbation perturbation = Perturbation::TwoBody);

// Inertial positions of a rotating-Earth surface point (spherical Earth).
// gmst0_deg is the Greenwich hour angle at the grid epoch.
Ephemeris ground_point_positions(double lat_deg, double lon_deg, const TimeGrid& grid,
                                 double gmst0_deg = 0.0);

// Low-precision analytic solar ephemeris (mean solar elements), ECI, km.
Ephemeris sun_positions(const TimeGrid& grid);
Vec3 sun_position_at(double julian_date);

// Canonical Walker-delta pattern i:total/planes/phasing at the given altitude.
// Plane RAANs spaced 360/planes, in-plane spacing 360/(total/planes), and an
// inter-plane phase offset of 360*phasing_factor/total.
std::vector<OrbitalElements> walker_delta(int total, int planes, int phasing_factor,
                                          double inclination_deg, double altitude_km);

} // namespace reosched

#endif // REOSCHED_ORBITAL_HPP
