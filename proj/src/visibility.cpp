#include "reosched/visibility.hpp"

#include <bit>
#include <cmath>
#include <thread>

#include "reosched/errors.hpp"
#include "reosched/instance.hpp"

namespace reosched {

using namespace astro;

int BitSeries::count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

namespace {

// Cosine slack keeping the boundary comparison inclusive under roundoff.
constexpr double kConeBoundaryTol = 1e-12;

// True when the sat->object segment passes through the Earth interior.
// Surface endpoints (ground points) do not count as occlusion; a grazing
// horizon ray is treated as visible.
bool earth_blocks_segment(const Vec3& sat, const Vec3& object) {
    const Vec3 d = object - sat;
    const double len2 = d.dot(d);
    if (len2 <= 0.0) return false;
    const double tau = -sat.dot(d) / len2;
    if (tau <= 1e-12 || tau >= 1.0 - 1e-12) return false;
    const Vec3 closest = sat + d * tau;
    return closest.norm() < kEarthRadiusKm - 1e-6;
}

} // namespace

bool cone_visible(const Vec3& sat, const Vec3& object, double half_angle_rad) {
    const Vec3 nadir = -sat;
    const Vec3 to_obj = object - sat;
    const double denom = nadir.norm() * to_obj.norm();
    if (denom <= 0.0) return false;
    const double cos_off = nadir.dot(to_obj) / denom;
    if (cos_off < std::cos(half_angle_rad) - kConeBoundaryTol) return false;
    return !earth_blocks_segment(sat, object);
}

BitSeries cone_access(const Ephemeris& observer, const Ephemeris& object,
                      double cone_angle_deg, ConeInterpretation interpretation) {
    if (observer.positions_km.size() != object.positions_km.size()) {
        throw DimensionError("cone_access: ephemeris lengths differ");
    }
    if (cone_angle_deg <= 0.0 || cone_angle_deg >= 180.0) {
        throw ConfigError("cone angle must lie in (0, 180) degrees");
    }
    const double half = interpretation == ConeInterpretation::FullApex
                            ? cone_angle_deg / 2.0 * kDegToRad
                            : cone_angle_deg * kDegToRad;
    const int n = static_cast<int>(observer.positions_km.size());
    BitSeries out(n);
    for (int i = 0; i < n; ++i) {
        out.set(i, cone_visible(observer.positions_km[i], object.positions_km[i], half));
    }
    return out;
}

double sunlight_fraction(const Vec3& sat, const Vec3& sun) {
    // Apparent-disc overlap of Sun and Earth as seen from the satellite
    // (the dual-cone umbra/penumbra classification).
    const Vec3 to_sun = sun - sat;
    const Vec3 to_earth = -sat;
    const double d_sun = to_sun.norm();
    const double d_earth = to_earth.norm();
    if (d_earth <= kEarthRadiusKm) return 0.0; // inside the Earth; degenerate
    const double a = std::asin(std::fmin(1.0, kSunRadiusKm / d_sun));    // solar disc radius
    const double b = std::asin(std::fmin(1.0, kEarthRadiusKm / d_earth)); // Earth disc radius
    const double c = angle_between(to_sun, to_earth);                     // disc separation
    if (c >= a + b) return 1.0;       // discs disjoint: full sun
    if (c <= b - a) return 0.0;       // Sun fully behind Earth: umbra
    if (c <= a - b) {                 // Earth disc inside solar disc (annular)
        const double ratio = b / a;
        return 1.0 - ratio * ratio;
    }
    // Partial overlap: planar circle-circle intersection on the small angles.
    const double x = (c * c + a * a - b * b) / (2.0 * c);
    const double y = std::sqrt(std::fmax(0.0, a * a - x * x));
    const double area = a * a * std::acos(std::fmax(-1.0, std::fmin(1.0, x / a))) +
                        b * b * std::acos(std::fmax(-1.0, std::fmin(1.0, (c - x) / b))) -
                        c * y;
    const double frac = 1.0 - area / (kPi * a * a);
    return std::fmax(0.0, std::fmin(1.0, frac));
}

std::vector<double> eclipse_series(const Ephemeris& satellite, const Ephemeris& sun) {
    if (satellite.positions_km.size() != sun.positions_km.size()) {
        throw DimensionError("eclipse_series: ephemeris lengths differ");
    }
    std::vector<double> out(satellite.positions_km.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = sunlight_fraction(satellite.positions_km[i], sun.positions_km[i]);
    }
    return out;
}

BitSeries binarize_sun(const std::vector<double>& fractions, double threshold) {
    if (threshold <= 0.0 || threshold > 1.0) {
        throw ConfigError("sun binarization threshold must lie in (0, 1]");
    }
    BitSeries out(static_cast<int>(fractions.size()));
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        out.set(static_cast<int>(i), fractions[i] >= threshold);
    }
    return out;
}

void apply_target_masking(VisibilityTensors& tensors, const TimeGrid& grid) {
    const int p_count = tensors.targets;
    if (p_count == 0) {
        tensors.masked = true;
        return;
    }
    if (grid.total_steps % p_count != 0) {
        throw ConfigError("target masking requires T divisible by P (T = " +
                          std::to_string(grid.total_steps) + ", P = " + std::to_string(p_count) + ")");
    }
    const int window = grid.total_steps / p_count;
    // Target p (1-based) is visible only at global steps
    // [1 + (p-1) window, p window].
    for (int k = 0; k < tensors.satellites; ++k) {
        for (int p = 0; p < p_count; ++p) {
            const int lo = p * window + 1, hi = (p + 1) * window;
            BitSeries& flat = tensors.v_flat[k][p];
            for (int t = 1; t <= grid.total_steps; ++t) {
                if (t < lo || t > hi) flat.set(t - 1, false);
            }
        }
    }
    for (int s = 1; s <= tensors.stages; ++s) {
        for (int k = 0; k < tensors.satellites; ++k) {
            for (int j = 0; j < tensors.slot_counts[s - 1][k]; ++j) {
                for (int p = 0; p < p_count; ++p) {
                    const int lo = p * window + 1, hi = (p + 1) * window;
                    BitSeries& plane = tensors.v_plane[s - 1][k][j][p];
                    for (int t = 1; t <= tensors.steps_per_stage; ++t) {
                        const int global = grid.global_step(s, t);
                        if (global < lo || global > hi) plane.set(t - 1, false);
                    }
                }
            }
        }
    }
    tensors.masked = true;
}

namespace {

// Ephemeris restricted to one stage window, sampled at stage-local steps.
Ephemeris propagate_stage(const OrbitalElements& el, const TimeGrid& grid, int stage,
                          Perturbation pert) {
    Ephemeris eph;
    eph.positions_km.resize(grid.steps_per_stage);
    for (int t = 1; t <= grid.steps_per_stage; ++t) {
        const double ts = grid.step_offset_s(grid.global_step(stage, t));
        eph.positions_km[t - 1] = propagate_at(el, ts, pert);
    }
    return eph;
}

struct FixedBodies {
    std::vector<Ephemeris> targets;  // over the full grid
    std::vector<Ephemeris> stations; // over the full grid
    Ephemeris sun;                   // over the full grid
};

void build_planes_for(const ScenarioInstance& inst, const FixedBodies& fixed, int s, int k,
                      VisibilityTensors& out) {
    const TimeGrid& grid = inst.grid;
    const SlotGrid& slots = inst.slot_grid();
    const ViewGeometry& geo = inst.geometry;
    const double target_half = geo.half_angle_rad(geo.target_cone_deg);
    const double station_half = geo.half_angle_rad(geo.station_cone_deg);
    const int j_count = slots.count(s, k);
    const int ts_count = grid.steps_per_stage;
    for (int j = 0; j < j_count; ++j) {
        const Ephemeris eph = propagate_stage(slots.slot(s, k, j), grid, s, geo.perturbation);
        for (int p = 0; p < inst.num_targets(); ++p) {
            BitSeries& plane = out.v_plane[s - 1][k][j][p];
            for (int t = 1; t <= ts_count; ++t) {
                const int g = grid.global_step(s, t);
                plane.set(t - 1, cone_visible(eph.positions_km[t - 1],
                                              fixed.targets[p].positions_km[g - 1], target_half));
            }
        }
        for (int g_idx = 0; g_idx < inst.num_stations(); ++g_idx) {
            BitSeries& plane = out.w_plane[s - 1][k][j][g_idx];
            for (int t = 1; t <= ts_count; ++t) {
                const int g = grid.global_step(s, t);
                plane.set(t - 1, cone_visible(eph.positions_km[t - 1],
                                              fixed.stations[g_idx].positions_km[g - 1], station_half));
            }
        }
        BitSeries& sun_plane = out.h_plane[s - 1][k][j];
        for (int t = 1; t <= ts_count; ++t) {
            const int g = grid.global_step(s, t);
            const double frac =
                sunlight_fraction(eph.positions_km[t - 1], fixed.sun.positions_km[g - 1]);
            sun_plane.set(t - 1, frac >= geo.sun_threshold);
        }
    }
}

} // namespace

VisibilityTensors build_tensors(const ScenarioInstance& inst) {
    const TimeGrid& grid = inst.grid;
    const SlotGrid& slots = inst.slot_grid();
    VisibilityTensors out;
    out.stages = grid.stages;
    out.satellites = inst.num_satellites();
    out.steps_per_stage = grid.steps_per_stage;
    out.total_steps = grid.total_steps;
    out.targets = inst.num_targets();
    out.stations = inst.num_stations();

    FixedBodies fixed;
    fixed.targets.reserve(inst.num_targets());
    for (const GroundPoint& p : inst.targets) {
        fixed.targets.push_back(
            ground_point_positions(p.lat_deg, p.lon_deg, grid, inst.geometry.gmst0_deg));
    }
    fixed.stations.reserve(inst.num_stations());
    for (const GroundPoint& g : inst.stations) {
        fixed.stations.push_back(
            ground_point_positions(g.lat_deg, g.lon_deg, grid, inst.geometry.gmst0_deg));
    }
    fixed.sun = sun_positions(grid);

    // Preallocate every plane so stage workers write disjoint storage.
    out.slot_counts.assign(grid.stages, std::vector<int>(out.satellites, 0));
    out.v_plane.resize(grid.stages);
    out.w_plane.resize(grid.stages);
    out.h_plane.resize(grid.stages);
    for (int s = 1; s <= grid.stages; ++s) {
        out.v_plane[s - 1].resize(out.satellites);
        out.w_plane[s - 1].resize(out.satellites);
        out.h_plane[s - 1].resize(out.satellites);
        for (int k = 0; k < out.satellites; ++k) {
            const int j_count = slots.count(s, k);
            out.slot_counts[s - 1][k] = j_count;
            out.v_plane[s - 1][k].assign(j_count,
                                         std::vector<BitSeries>(out.targets, BitSeries(grid.steps_per_stage)));
            out.w_plane[s - 1][k].assign(j_count,
                                         std::vector<BitSeries>(out.stations, BitSeries(grid.steps_per_stage)));
            out.h_plane[s - 1][k].assign(j_count, BitSeries(grid.steps_per_stage));
        }
    }

    // Data-parallel over (stage, satellite) pairs; outputs are disjoint, so
    // the merge is deterministic regardless of scheduling.
    std::vector<std::pair<int, int>> work;
    for (int s = 1; s <= grid.stages; ++s) {
        for (int k = 0; k < out.satellites; ++k) work.emplace_back(s, k);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_threads = std::min<unsigned>(hw > 0 ? hw : 1, static_cast<unsigned>(work.size()));
    if (n_threads <= 1 || work.size() <= 1) {
        for (auto [s, k] : work) build_planes_for(inst, fixed, s, k, out);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t idx = w; idx < work.size(); idx += n_threads) {
                    build_planes_for(inst, fixed, work[idx].first, work[idx].second, out);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    // Flat view from the initial orbits over the whole horizon.
    out.v_flat.resize(out.satellites);
    out.w_flat.resize(out.satellites);
    out.h_flat.resize(out.satellites);
    const double target_half = inst.geometry.half_angle_rad(inst.geometry.target_cone_deg);
    const double station_half = inst.geometry.half_angle_rad(inst.geometry.station_cone_deg);
    for (int k = 0; k < out.satellites; ++k) {
        const Ephemeris eph = propagate(inst.satellites[k], grid, inst.geometry.perturbation);
        out.v_flat[k].assign(out.targets, BitSeries(grid.total_steps));
        out.w_flat[k].assign(out.stations, BitSeries(grid.total_steps));
        out.h_flat[k] = BitSeries(grid.total_steps);
        for (int t = 1; t <= grid.total_steps; ++t) {
            for (int p = 0; p < out.targets; ++p) {
                out.v_flat[k][p].set(t - 1, cone_visible(eph.positions_km[t - 1],
                                                         fixed.targets[p].positions_km[t - 1],
                                                         target_half));
            }
            for (int g = 0; g < out.stations; ++g) {
                out.w_flat[k][g].set(t - 1, cone_visible(eph.positions_km[t - 1],
                                                         fixed.stations[g].positions_km[t - 1],
                                                         station_half));
            }
            const double frac =
                sunlight_fraction(eph.positions_km[t - 1], fixed.sun.positions_km[t - 1]);
            out.h_flat[k].set(t - 1, frac >= inst.geometry.sun_threshold);
        }
    }

    apply_target_masking(out, grid);
    return out;
}

} // namespace reosched
