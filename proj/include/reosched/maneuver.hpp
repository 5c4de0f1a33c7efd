#ifndef REOSCHED_MANEUVER_HPP
#define REOSCHED_MANEUVER_HPP

#include <limits>
#include <vector>

#include "reosched/orbital.hpp"

namespace reosched {

struct ScenarioInstance;

inline constexpr double kInfeasibleCost = std::numeric_limits<double>::infinity();

enum class SlotKind {
    PhaseOnly,     // slots differ from the initial orbit only in phase
    PlaneAndPhase, // inclination / RAAN offsets crossed with phases
};

// Candidate orbital slots per (stage, satellite). Stage 0 holds the singleton
// initial condition; stages 1..S share the same construction.
struct SlotGrid {
    SlotKind kind = SlotKind::PhaseOnly;
    // slots[s][k] for s in 0..S (s = 0 is the initial singleton).
    std::vector<std::vector<std::vector<OrbitalElements>>> slots;

    int count(int stage, int k) const { return static_cast<int>(slots[stage][k].size()); }
    const OrbitalElements& slot(int stage, int k, int j) const { return slots[stage][k][j]; }
};

// Maneuver delta-v tensor c[s][k][i][j] for s in 1..S, i indexing the
// previous-stage slots and j the current-stage slots. Infeasible transfers
// carry +infinity, never a finite guess.
struct CostTensor {
    // cost[s-1][k] is a (J^{s-1,k} x J^{sk}) row-major matrix.
    std::vector<std::vector<std::vector<double>>> cost;
    std::vector<double> budget_mps;     // c^k_max per satellite
    double battery_per_maneuver_kj = 0; // B_recon

    double at(int s, int k, int i, int j, int j_cur_count) const {
        return cost[s - 1][k][i * j_cur_count + j];
    }
};

// J phase slots equally spaced over [0, 360) starting at the initial phase;
// slot 1 is the initial orbit. Throws ConfigError for J < 1.
std::vector<OrbitalElements> build_phase_slots(const OrbitalElements& initial, int phase_count);

// Plane-and-phase grid: (2m-1) plane options (the initial plane plus m-1
// inclination offsets and m-1 RAAN offsets on each side) crossed with f
// phases, J = f(2m-1). The largest plane offset is the single-impulse plane
// change affordable with scale * budget.
std::vector<OrbitalElements> build_plane_phase_slots(const OrbitalElements& initial, int phase_options,
                                                     int plane_options, double budget_mps,
                                                     double scale);

// Plane-change angle (radians) affordable with delta-v at circular speed v:
// inverts dv = 2 v sin(theta/2).
double plane_change_angle(double dv_mps, double speed_mps);

// RAAN offset (degrees) whose plane rotation at inclination i equals the
// given plane-change angle.
double raan_offset_for_angle(double plane_angle_rad, double inclination_deg);

// One candidate two-impulse phasing option.
struct PhasingOption {
    int revs = 0;            // phasing-orbit revolutions
    bool raise = false;      // true = slow down via larger orbit
    double dv_mps = 0.0;
    double duration_s = 0.0;
};

// All feasible phasing options for a phase change of du_deg at radius a_km,
// for revolution counts 1..max_revs (both drift directions).
std::vector<PhasingOption> phasing_options(double du_deg, double a_km, int max_revs);

// Minimum two-impulse coplanar phasing delta-v whose transfer duration fits
// max_duration_s, searched over revolution counts; +inf when nothing fits.
// Preconditions: same radius, same plane.
double phasing_cost(const OrbitalElements& from, const OrbitalElements& to, double max_duration_s);

// Full transfer cost between equal-radius circular slots: plane-change
// impulse (inclination and/or RAAN) plus sequential phasing when the phase
// differs. Identical orbits cost exactly 0. Radius mismatch throws
// UnsupportedTransferError.
double transfer_cost(const OrbitalElements& from, const OrbitalElements& to, double max_duration_s);

// c[s][k][i][j] for every stage, with the transfer duration bounded by one
// stage span. Verifies that a finite-cost path through all stages exists for
// every satellite; throws InfeasibleModelError otherwise.
CostTensor build_cost_tensor(const ScenarioInstance& instance);

// Maximum revolutions searched by phasing_cost.
inline constexpr int kMaxPhasingRevs = 30;

} // namespace reosched

#endif // REOSCHED_MANEUVER_HPP
