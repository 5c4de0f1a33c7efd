#ifndef REOSCHED_GEOMETRY_HPP
#define REOSCHED_GEOMETRY_HPP

#include <cmath>

namespace reosched {

// Physical constants shared across the geometry stack. Distances in km,
// angles in radians unless a _deg suffix says otherwise.
namespace astro {
inline constexpr double kEarthRadiusKm   = 6378.14;          // spherical Earth
inline constexpr double kMuEarth         = 398600.4418;      // km^3/s^2
inline constexpr double kJ2              = 1.08262668e-3;
inline constexpr double kEarthRotRate    = 7.2921158553e-5;  // rad/s, sidereal
inline constexpr double kSunRadiusKm     = 696000.0;
inline constexpr double kAstronomicalUnitKm = 1.495978707e8;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;
} // namespace astro

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? (*this) / n : Vec3{};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Angle between two nonzero vectors, radians, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
    const double c = a.dot(b) / (a.norm() * b.norm());
    return std::acos(std::fmax(-1.0, std::fmin(1.0, c)));
}

// Rotation of v about the +Z axis by angle (right-handed).
inline Vec3 rotate_z(const Vec3& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

// Rotation of v about the +X axis by angle (right-handed).
inline Vec3 rotate_x(const Vec3& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {v.x, c * v.y - s * v.z, s * v.y + c * v.z};
}

// Normalizes an angle in degrees to [0, 360).
inline double wrap_deg(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}

} // namespace reosched

#endif // REOSCHED_GEOMETRY_HPP
