#include "reosched/orbital.hpp"

#include <cmath>

#include "reosched/errors.hpp"

namespace reosched {

using namespace astro;

double OrbitalElements::orbital_period_s() const {
    const double a = semi_major_axis_km;
    return 2.0 * kPi * std::sqrt(a * a * a / kMuEarth);
}

double OrbitalElements::circular_speed_kms() const {
    return std::sqrt(kMuEarth / semi_major_axis_km);
}

Vec3 OrbitalElements::plane_normal() const {
    const double i = inclination_deg * kDegToRad;
    const double raan = raan_deg * kDegToRad;
    // h-direction of an orbit with these angles: R3(raan) R1(i) z-hat.
    return {std::sin(raan) * std::sin(i), -std::cos(raan) * std::sin(i), std::cos(i)};
}

bool OrbitalElements::same_orbit(const OrbitalElements& o, double tol_deg) const {
    return same_plane(o, tol_deg) &&
           std::fabs(wrap_deg(arg_latitude_deg) - wrap_deg(o.arg_latitude_deg)) < tol_deg;
}

bool OrbitalElements::same_plane(const OrbitalElements& o, double tol_deg) const {
    if (std::fabs(semi_major_axis_km - o.semi_major_axis_km) > 1e-9) return false;
    return angle_between(plane_normal(), o.plane_normal()) * kRadToDeg < tol_deg;
}

J2Rates j2_secular_rates(const OrbitalElements& el) {
    const double a = el.semi_major_axis_km;
    const double n = std::sqrt(kMuEarth / (a * a * a));
    const double cos_i = std::cos(el.inclination_deg * kDegToRad);
    const double p_ratio = kEarthRadiusKm / a; // e = 0, so p = a
    const double k = n * kJ2 * p_ratio * p_ratio;
    J2Rates r;
    r.raan_dot = -1.5 * k * cos_i;
    // For a circular orbit u = omega + M; secular rates of both combined.
    const double omega_dot = 0.75 * k * (5.0 * cos_i * cos_i - 1.0);
    const double m_dot_extra = 0.75 * k * (3.0 * cos_i * cos_i - 1.0);
    r.u_dot_extra = omega_dot + m_dot_extra;
    return r;
}

static void check_orbit(const OrbitalElements& el) {
    if (el.semi_major_axis_km - kEarthRadiusKm < 100.0) {
        throw InvalidOrbitError("orbit altitude below 100 km (a = " +
                                std::to_string(el.semi_major_axis_km) + " km)");
    }
    if (std::fabs(el.eccentricity) > 1e-12) {
        throw InvalidOrbitError("only circular orbits are supported (e = " +
                                std::to_string(el.eccentricity) + ")");
    }
}

Vec3 propagate_at(const OrbitalElements& el, double t_s, Perturbation pert) {
    check_orbit(el);
    const double a = el.semi_major_axis_km;
    const double n = std::sqrt(kMuEarth / (a * a * a));
    double raan = el.raan_deg * kDegToRad;
    double u = el.arg_latitude_deg * kDegToRad + n * t_s;
    if (pert == Perturbation::J2Secular) {
        const J2Rates rates = j2_secular_rates(el);
        raan += rates.raan_dot * t_s;
        u += rates.u_dot_extra * t_s;
    }
    const double inc = el.inclination_deg * kDegToRad;
    const Vec3 in_plane{a * std::cos(u), a * std::sin(u), 0.0};
    return rotate_z(rotate_x(in_plane, inc), raan);
}

Ephemeris propagate(const OrbitalElements& el, const TimeGrid& grid, Perturbation pert) {
    check_orbit(el);
    Ephemeris eph;
    eph.positions_km.resize(grid.total_steps);
    const double a = el.semi_major_axis_km;
    const double n = std::sqrt(kMuEarth / (a * a * a));
    const double inc = el.inclination_deg * kDegToRad;
    J2Rates rates;
    if (pert == Perturbation::J2Secular) rates = j2_secular_rates(el);
    for (int t = 1; t <= grid.total_steps; ++t) {
        const double ts = grid.step_offset_s(t);
        const double raan = el.raan_deg * kDegToRad + rates.raan_dot * ts;
        const double u = el.arg_latitude_deg * kDegToRad + (n + rates.u_dot_extra) * ts;
        const Vec3 in_plane{a * std::cos(u), a * std::sin(u), 0.0};
        eph.positions_km[t - 1] = rotate_z(rotate_x(in_plane, inc), raan);
    }
    return eph;
}

Ephemeris ground_point_positions(double lat_deg, double lon_deg, const TimeGrid& grid,
                                 double gmst0_deg) {
    if (lat_deg < -90.0 || lat_deg > 90.0) throw ConfigError("latitude out of [-90, 90]");
    if (lon_deg < -180.0 || lon_deg > 180.0) throw ConfigError("longitude out of [-180, 180]");
    Ephemeris eph;
    eph.positions_km.resize(grid.total_steps);
    const double lat = lat_deg * kDegToRad;
    const double clat = std::cos(lat), slat = std::sin(lat);
    const double lon0 = lon_deg * kDegToRad + gmst0_deg * kDegToRad;
    for (int t = 1; t <= grid.total_steps; ++t) {
        const double theta = lon0 + kEarthRotRate * grid.step_offset_s(t);
        eph.positions_km[t - 1] = {kEarthRadiusKm * clat * std::cos(theta),
                                   kEarthRadiusKm * clat * std::sin(theta),
                                   kEarthRadiusKm * slat};
    }
    return eph;
}

Vec3 sun_position_at(double jd) {
    // Mean solar elements (Astronomical Almanac low-precision model).
    const double d = jd - 2451545.0;
    const double mean_lon = wrap_deg(280.460 + 0.9856474 * d) * kDegToRad;
    const double mean_anom = wrap_deg(357.528 + 0.9856003 * d) * kDegToRad;
    const double ecl_lon = mean_lon + (1.915 * std::sin(mean_anom) + 0.020 * std::sin(2.0 * mean_anom)) * kDegToRad;
    const double dist_au = 1.00014 - 0.01671 * std::cos(mean_anom) - 0.00014 * std::cos(2.0 * mean_anom);
    const double obliquity = (23.439 - 0.0000004 * d) * kDegToRad;
    const double r = dist_au * kAstronomicalUnitKm;
    return {r * std::cos(ecl_lon),
            r * std::cos(obliquity) * std::sin(ecl_lon),
            r * std::sin(obliquity) * std::sin(ecl_lon)};
}

Ephemeris sun_positions(const TimeGrid& grid) {
    Ephemeris eph;
    eph.positions_km.resize(grid.total_steps);
    eph.source_id = "sun";
    const double jd0 = grid.epoch.julian_date();
    for (int t = 1; t <= grid.total_steps; ++t) {
        eph.positions_km[t - 1] = sun_position_at(jd0 + grid.step_offset_s(t) / 86400.0);
    }
    return eph;
}

std::vector<OrbitalElements> walker_delta(int total, int planes, int phasing_factor,
                                          double inclination_deg, double altitude_km) {
    if (total < 1 || planes < 1 || total % planes != 0) {
        throw ConfigError("walker pattern requires total divisible by planes");
    }
    const int per_plane = total / planes;
    std::vector<OrbitalElements> out;
    out.reserve(total);
    for (int p = 0; p < planes; ++p) {
        for (int q = 0; q < per_plane; ++q) {
            OrbitalElements el;
            el.semi_major_axis_km = kEarthRadiusKm + altitude_km;
            el.inclination_deg = inclination_deg;
            el.raan_deg = wrap_deg(360.0 * p / planes);
            el.arg_latitude_deg =
                wrap_deg(360.0 * q / per_plane + 360.0 * phasing_factor * p / total);
            out.push_back(el);
        }
    }
    return out;
}

} // namespace reosched
