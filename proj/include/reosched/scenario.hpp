#ifndef REOSCHED_SCENARIO_HPP
#define REOSCHED_SCENARIO_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "reosched/instance.hpp"

namespace reosched {

// Seedable, bit-portable random stream (mt19937_64 with explicit uniform
// mappings; the standard pins the engine's output sequence). Draw order is
// part of the instance contract: per satellite altitude, inclination, RAAN,
// phase; then per station lat/lon (resampled while on water); then per
// target lat/lon.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    // Uniform in [0, 1): 53-bit mantissa mapping.
    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

// Coarse 1-degree land/water grid for rejection-sampling station sites.
class LandMask {
public:
    static LandMask load(const std::string& path);
    // Resolves the bundled mask via REOSCHED_DATA_DIR, ./data, or the source
    // tree this build came from.
    static const LandMask& bundled();

    bool is_land(double lat_deg, double lon_deg) const;
    double land_fraction() const;

private:
    std::vector<std::uint8_t> cells_; // 180 rows x 360 cols, row 0 = lat 89.5N
};

struct RandomScenarioSpec {
    std::uint64_t seed = 0;
    int stages = 8;
    int satellites = 5;
    int slots = 20; // J per stage, phase-only grid
    UtcTime epoch{2025, 1, 1, 0, 0, 0.0};
    double horizon_days = 14.0;
    double dt_s = 100.0;
    int targets = 12;
    int stations = 2;
    double alt_min_km = 600.0, alt_max_km = 1200.0;
    double inc_min_deg = 40.0, inc_max_deg = 80.0;
    double lat_band_deg = 80.0; // stations and targets within +/- this latitude
    PhysicalConstants constants{};
    ViewGeometry geometry{};
};

// Deterministic random instance per the spec above (station sites rejected
// against the land mask, targets allowed on water). Throws ConfigError when
// the grid does not divide into stages or target windows.
ScenarioInstance generate_random(const RandomScenarioSpec& spec);
ScenarioInstance generate_random(std::uint64_t seed, int stages, int satellites, int slots);

struct CaseStudyConfig {
    double horizon_days = 7.25;
    double dt_s = 100.0;
    int stages = 8;
    int walker_total = 4, walker_planes = 4, walker_phasing = 0;
    double walker_inclination_deg = 98.18;
    double walker_altitude_km = 709.0;
    int phase_options = 15; // f
    int plane_options = 5;  // m
    double plane_scale = 0.75;
    std::vector<GroundPoint> stations{
        {78.23, 15.41, "Svalbard"},
        {41.54, -4.70, "Boecillo"},
    };
    PhysicalConstants constants{};
    ViewGeometry geometry{};
};

// Storm-track case study: each track row becomes one target, masked in
// chronological order; the epoch is the first fix time. The track must be
// strictly increasing at a fixed interval and yield a horizon divisible into
// stages and target windows.
ScenarioInstance load_case_study(const std::string& track_csv_path,
                                 const CaseStudyConfig& config = {});

struct TrackFix {
    UtcTime time;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};
std::vector<TrackFix> read_track_csv(const std::string& path);

// Resolves a file under the bundled data directory (env REOSCHED_DATA_DIR,
// ./data, or the build's source tree).
std::string bundled_data_path(const std::string& filename);

} // namespace reosched

#endif // REOSCHED_SCENARIO_HPP
