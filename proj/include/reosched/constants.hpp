#ifndef REOSCHED_CONSTANTS_HPP
#define REOSCHED_CONSTANTS_HPP

namespace reosched {

// Per-step data/energy economics of the schedule. Internal units are MB for
// data, kJ for energy, m/s for delta-v. Capacities given in GB are converted
// with gb_to_mb at config load.
struct PhysicalConstants {
    double d_obs_mb = 102.50;   // data gained per observation step
    double d_comm_mb = 100.0;   // data sent per downlink step
    double d_min_mb = 0.0;      // per-satellite storage floor
    double d_max_mb = 128000.0; // per-satellite storage capacity (128 GB)
    double b_obs_kj = 16.26;    // battery drain per observation step
    double b_comm_kj = 1.20;    // battery drain per downlink step
    double b_charge_kj = 41.48; // battery gain per charging step
    double b_time_kj = 2.0;     // housekeeping drain every step
    double b_recon_kj = 0.50;   // battery cost per orbital maneuver
    double b_min_kj = 0.0;      // battery floor
    double b_max_kj = 1647.0;   // battery capacity
    double downlink_weight = 2.0; // objective weight C (> 1)
    double dv_budget_mps = 750.0; // c^k_max
    double gb_to_mb = 1000.0;     // GB <-> MB conversion in configs/reports

    void validate() const; // throws ConfigError on violated invariants
};

} // namespace reosched

#endif // REOSCHED_CONSTANTS_HPP
