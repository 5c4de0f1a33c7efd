#ifndef REOSCHED_TIME_GRID_HPP
#define REOSCHED_TIME_GRID_HPP

#include <string>

namespace reosched {

// Calendar instant, UTC. Kept as broken-down fields so configs round-trip
// exactly; convert to Julian date for any astronomy.
struct UtcTime {
    int year = 2025;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    double second = 0.0;

    double julian_date() const;

    // Strict "YYYY-MM-DDTHH:MM:SSZ" (fractional seconds allowed).
    static UtcTime parse_iso8601(const std::string& text);
    std::string to_iso8601() const;

    bool operator==(const UtcTime& o) const = default;
};

// Discrete schedule grid. Step t (1-based) samples epoch + (t-1)*dt.
struct TimeGrid {
    UtcTime epoch;
    double dt_s = 100.0;      // step size, seconds
    double horizon_s = 0.0;   // total duration T_r, seconds
    int total_steps = 0;      // T
    int stages = 1;           // S
    int steps_per_stage = 0;  // T^s

    // Validates the two divisibility invariants:
    //   total_steps = horizon / dt exactly, steps_per_stage * stages = total_steps.
    // Throws ConfigError on violation.
    static TimeGrid make(const UtcTime& epoch, double dt_s, double horizon_s, int stages);

    // Seconds since epoch of step t (1-based, step start).
    double step_offset_s(int t) const { return (t - 1) * dt_s; }

    // Global 1-based step for stage-local (s, t), s in 1..S, t in 1..T^s.
    int global_step(int stage, int t) const { return (stage - 1) * steps_per_stage + t; }
};

} // namespace reosched

#endif // REOSCHED_TIME_GRID_HPP
