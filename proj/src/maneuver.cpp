#include "reosched/maneuver.hpp"

#include <cmath>
#include <string>

#include "reosched/errors.hpp"
#include "reosched/instance.hpp"

namespace reosched {

using namespace astro;

std::vector<OrbitalElements> build_phase_slots(const OrbitalElements& initial, int phase_count) {
    if (phase_count < 1) throw ConfigError("phase slot count must be at least 1");
    std::vector<OrbitalElements> out;
    out.reserve(phase_count);
    for (int j = 0; j < phase_count; ++j) {
        OrbitalElements el = initial;
        el.arg_latitude_deg = wrap_deg(initial.arg_latitude_deg + 360.0 * j / phase_count);
        out.push_back(el);
    }
    return out;
}

double plane_change_angle(double dv_mps, double speed_mps) {
    const double half_sine = dv_mps / (2.0 * speed_mps);
    if (half_sine < 0.0 || half_sine > 1.0) {
        throw ConfigError("plane-change delta-v exceeds the 2v geometric limit");
    }
    return 2.0 * std::asin(half_sine);
}

double raan_offset_for_angle(double plane_angle_rad, double inclination_deg) {
    // Angle between two orbit normals at equal inclination i with RAAN offset w:
    //   cos(theta) = sin^2(i) cos(w) + cos^2(i)
    const double si = std::sin(inclination_deg * kDegToRad);
    const double ci = std::cos(inclination_deg * kDegToRad);
    if (si * si < 1e-12) {
        throw ConfigError("RAAN offsets are undefined for equatorial orbits");
    }
    const double cw = (std::cos(plane_angle_rad) - ci * ci) / (si * si);
    return std::acos(std::fmax(-1.0, std::fmin(1.0, cw))) * kRadToDeg;
}

std::vector<OrbitalElements> build_plane_phase_slots(const OrbitalElements& initial, int phase_options,
                                                     int plane_options, double budget_mps,
                                                     double scale) {
    if (phase_options < 1 || plane_options < 1) {
        throw ConfigError("slot grid counts must be at least 1");
    }
    if (scale <= 0.0 || scale > 1.0) throw ConfigError("plane budget scale must lie in (0, 1]");
    if (plane_options > 1 && plane_options % 2 == 0) {
        throw ConfigError("plane option count must be odd (offsets are symmetric around the initial plane)");
    }
    if (plane_options > 1 && budget_mps <= 0.0) {
        throw ConfigError("plane offsets require a positive maneuver budget");
    }

    // Plane option list: the initial plane, then inclination offsets, then
    // RAAN offsets, each family symmetric and equally spaced out to the
    // largest single-impulse change affordable with scale * budget.
    struct PlaneOffset {
        double d_inc_deg = 0.0;
        double d_raan_deg = 0.0;
    };
    std::vector<PlaneOffset> planes;
    planes.push_back({});
    if (plane_options > 1) {
        const int half = (plane_options - 1) / 2;
        const double speed_mps = initial.circular_speed_kms() * 1000.0;
        const double max_angle = plane_change_angle(scale * budget_mps, speed_mps);
        const double inc_step = max_angle * kRadToDeg / half;
        const double raan_step = raan_offset_for_angle(max_angle, initial.inclination_deg) / half;
        for (int m = -half; m <= half; ++m) {
            if (m != 0) planes.push_back({m * inc_step, 0.0});
        }
        for (int m = -half; m <= half; ++m) {
            if (m != 0) planes.push_back({0.0, m * raan_step});
        }
    }

    std::vector<OrbitalElements> out;
    out.reserve(planes.size() * phase_options);
    for (const PlaneOffset& po : planes) {
        for (int f = 0; f < phase_options; ++f) {
            OrbitalElements el = initial;
            el.inclination_deg = initial.inclination_deg + po.d_inc_deg;
            el.raan_deg = wrap_deg(initial.raan_deg + po.d_raan_deg);
            el.arg_latitude_deg = wrap_deg(initial.arg_latitude_deg + 360.0 * f / phase_options);
            out.push_back(el);
        }
    }
    return out;
}

std::vector<PhasingOption> phasing_options(double du_deg, double a_km, int max_revs) {
    std::vector<PhasingOption> out;
    const double du = wrap_deg(du_deg) * kDegToRad; // lead angle of the goal slot, [0, 2pi)
    const double n = std::sqrt(kMuEarth / (a_km * a_km * a_km));
    const double v_c = std::sqrt(kMuEarth / a_km);
    for (int k = 1; k <= max_revs; ++k) {
        // Two drift directions: shrink the orbit and let the slot come around
        // (rendezvous count m = k), or raise it and fall behind (m = k + 1).
        for (int dir = 0; dir < 2; ++dir) {
            const int m = dir == 0 ? k : k + 1;
            const double tof = (2.0 * kPi * m - du) / n;
            if (tof <= 0.0) continue;
            const double t_phase = tof / k;
            const double a_phase = std::cbrt(kMuEarth * (t_phase / (2.0 * kPi)) * (t_phase / (2.0 * kPi)));
            const double r_other = 2.0 * a_phase - a_km; // second apsis of the phasing orbit
            if (r_other <= kEarthRadiusKm) continue;    // would intersect the Earth
            const double v_sq = 2.0 * kMuEarth / a_km - kMuEarth / a_phase;
            if (v_sq <= 0.0) continue;
            PhasingOption opt;
            opt.revs = k;
            opt.raise = dir == 1;
            opt.dv_mps = 2.0 * std::fabs(std::sqrt(v_sq) - v_c) * 1000.0;
            opt.duration_s = tof;
            out.push_back(opt);
        }
    }
    return out;
}

double phasing_cost(const OrbitalElements& from, const OrbitalElements& to, double max_duration_s) {
    if (std::fabs(from.semi_major_axis_km - to.semi_major_axis_km) > 1e-9) {
        throw UnsupportedTransferError("phasing requires equal orbit radii");
    }
    const double du = wrap_deg(to.arg_latitude_deg - from.arg_latitude_deg);
    if (du < 1e-9 || du > 360.0 - 1e-9) return 0.0;
    double best = kInfeasibleCost;
    for (const PhasingOption& opt : phasing_options(du, from.semi_major_axis_km, kMaxPhasingRevs)) {
        if (opt.duration_s <= max_duration_s && opt.dv_mps < best) best = opt.dv_mps;
    }
    return best;
}

double transfer_cost(const OrbitalElements& from, const OrbitalElements& to, double max_duration_s) {
    if (std::fabs(from.semi_major_axis_km - to.semi_major_axis_km) > 1e-9) {
        throw UnsupportedTransferError("altitude-change transfers are outside the slot grids");
    }
    double total = 0.0;
    const double plane_angle = angle_between(from.plane_normal(), to.plane_normal());
    if (plane_angle > 1e-12) {
        // Single impulse at the common node of the two planes, covering
        // inclination-only, RAAN-only, and simultaneous changes.
        total += 2.0 * from.circular_speed_kms() * 1000.0 * std::sin(plane_angle / 2.0);
    }
    const double du = wrap_deg(to.arg_latitude_deg - from.arg_latitude_deg);
    if (du >= 1e-9 && du <= 360.0 - 1e-9) {
        const double phase = phasing_cost(from, to, max_duration_s);
        if (phase == kInfeasibleCost) return kInfeasibleCost;
        total += phase;
    }
    return total;
}

CostTensor build_cost_tensor(const ScenarioInstance& inst) {
    const SlotGrid& grid = inst.slot_grid();
    const int stages = inst.grid.stages;
    const int sats = inst.num_satellites();
    const double max_duration = inst.grid.steps_per_stage * inst.grid.dt_s;

    CostTensor tensor;
    tensor.cost.resize(stages);
    tensor.budget_mps.assign(sats, inst.constants.dv_budget_mps);
    tensor.battery_per_maneuver_kj = inst.constants.b_recon_kj;
    for (int s = 1; s <= stages; ++s) {
        tensor.cost[s - 1].resize(sats);
        for (int k = 0; k < sats; ++k) {
            const int prev = grid.count(s - 1, k);
            const int cur = grid.count(s, k);
            std::vector<double>& mat = tensor.cost[s - 1][k];
            mat.resize(static_cast<std::size_t>(prev) * cur);
            for (int i = 0; i < prev; ++i) {
                const OrbitalElements& from = grid.slot(s - 1, k, i);
                for (int j = 0; j < cur; ++j) {
                    const OrbitalElements& to = grid.slot(s, k, j);
                    mat[static_cast<std::size_t>(i) * cur + j] =
                        from.same_orbit(to) ? 0.0 : transfer_cost(from, to, max_duration);
                }
            }
        }
    }

    // Every satellite must be able to thread all stages over finite arcs.
    for (int k = 0; k < sats; ++k) {
        std::vector<char> reach(1, 1); // stage-0 singleton
        for (int s = 1; s <= stages; ++s) {
            const int prev = grid.count(s - 1, k);
            const int cur = grid.count(s, k);
            std::vector<char> next(cur, 0);
            bool any = false;
            for (int i = 0; i < prev; ++i) {
                if (!reach[i]) continue;
                for (int j = 0; j < cur; ++j) {
                    if (tensor.cost[s - 1][k][static_cast<std::size_t>(i) * cur + j] < kInfeasibleCost) {
                        next[j] = 1;
                        any = true;
                    }
                }
            }
            if (!any) {
                throw InfeasibleModelError("no finite-cost arc at stage " + std::to_string(s) +
                                           " for satellite " + std::to_string(k + 1));
            }
            reach = std::move(next);
        }
    }
    return tensor;
}

} // namespace reosched
