#include "reosched/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "reosched/errors.hpp"

namespace reosched {

LandMask LandMask::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IngestionError("cannot open land mask '" + path + "'");
    LandMask mask;
    mask.cells_.reserve(180 * 360);
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char c : line) {
            if (c == '0' || c == '1') mask.cells_.push_back(c == '1');
        }
    }
    if (mask.cells_.size() != 180u * 360u) {
        throw IngestionError("land mask is not a 180x360 grid (" +
                             std::to_string(mask.cells_.size()) + " cells)");
    }
    return mask;
}

std::string bundled_data_path(const std::string& filename) {
    namespace fs = std::filesystem;
    std::vector<std::string> candidates;
    if (const char* env = std::getenv("REOSCHED_DATA_DIR")) {
        candidates.push_back(std::string(env) + "/" + filename);
    }
    candidates.push_back("data/" + filename);
    candidates.push_back("../data/" + filename);
#ifdef REOSCHED_SOURCE_DIR
    candidates.push_back(std::string(REOSCHED_SOURCE_DIR) + "/data/" + filename);
#endif
    for (const std::string& c : candidates) {
        if (fs::exists(c)) return c;
    }
    throw IngestionError("bundled data file '" + filename +
                         "' not found (set REOSCHED_DATA_DIR or run from the repo root)");
}

const LandMask& LandMask::bundled() {
    static const LandMask mask = LandMask::load(bundled_data_path("land_mask_1deg.txt"));
    return mask;
}

bool LandMask::is_land(double lat_deg, double lon_deg) const {
    int row = static_cast<int>(std::floor(90.0 - lat_deg)); // band [89,90) -> row 0
    int col = static_cast<int>(std::floor(lon_deg + 180.0));
    row = std::min(179, std::max(0, row));
    col = ((col % 360) + 360) % 360;
    return cells_[static_cast<std::size_t>(row) * 360 + col] != 0;
}

double LandMask::land_fraction() const {
    double n = 0;
    for (std::uint8_t c : cells_) n += c;
    return n / cells_.size();
}

ScenarioInstance generate_random(const RandomScenarioSpec& spec) {
    spec.constants.validate();
    if (spec.satellites < 1 || spec.targets < 1 || spec.stations < 1) {
        throw ConfigError("scenario needs at least one satellite, target, and station");
    }
    ScenarioInstance inst;
    inst.seed = spec.seed;
    inst.grid = TimeGrid::make(spec.epoch, spec.dt_s, spec.horizon_days * 86400.0, spec.stages);
    if (inst.grid.total_steps % spec.targets != 0) {
        throw ConfigError("total steps (" + std::to_string(inst.grid.total_steps) +
                          ") not divisible by targets (" + std::to_string(spec.targets) + ")");
    }
    inst.constants = spec.constants;
    inst.geometry = spec.geometry;
    inst.slot_spec.kind = SlotKind::PhaseOnly;
    inst.slot_spec.phase_count = spec.slots;

    PortableRng rng(spec.seed);
    for (int k = 0; k < spec.satellites; ++k) {
        OrbitalElements el;
        el.semi_major_axis_km = astro::kEarthRadiusKm + rng.uniform(spec.alt_min_km, spec.alt_max_km);
        el.inclination_deg = rng.uniform(spec.inc_min_deg, spec.inc_max_deg);
        el.raan_deg = rng.uniform(0.0, 360.0);
        el.arg_latitude_deg = rng.uniform(0.0, 360.0);
        inst.satellites.push_back(el);
    }
    const LandMask& mask = LandMask::bundled();
    for (int g = 0; g < spec.stations; ++g) {
        GroundPoint p;
        do {
            p.lat_deg = rng.uniform(-spec.lat_band_deg, spec.lat_band_deg);
            p.lon_deg = rng.uniform(-180.0, 180.0);
        } while (!mask.is_land(p.lat_deg, p.lon_deg));
        p.name = "station-" + std::to_string(g + 1);
        inst.stations.push_back(p);
    }
    for (int t = 0; t < spec.targets; ++t) {
        GroundPoint p;
        p.lat_deg = rng.uniform(-spec.lat_band_deg, spec.lat_band_deg);
        p.lon_deg = rng.uniform(-180.0, 180.0);
        p.name = "target-" + std::to_string(t + 1);
        inst.targets.push_back(p);
    }
    return inst;
}

ScenarioInstance generate_random(std::uint64_t seed, int stages, int satellites, int slots) {
    RandomScenarioSpec spec;
    spec.seed = seed;
    spec.stages = stages;
    spec.satellites = satellites;
    spec.slots = slots;
    return generate_random(spec);
}

std::vector<TrackFix> read_track_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IngestionError("cannot open track file '" + path + "'");
    std::vector<TrackFix> fixes;
    std::string line;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "time_utc,lat_deg,lon_deg") {
                throw IngestionError("track header must be 'time_utc,lat_deg,lon_deg' (line " +
                                     std::to_string(line_no) + ")");
            }
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string time_s, lat_s, lon_s;
        if (!std::getline(ss, time_s, ',') || !std::getline(ss, lat_s, ',') ||
            !std::getline(ss, lon_s, ',')) {
            throw IngestionError("malformed track row at line " + std::to_string(line_no));
        }
        TrackFix fix;
        fix.time = UtcTime::parse_iso8601(time_s);
        try {
            fix.lat_deg = std::stod(lat_s);
            fix.lon_deg = std::stod(lon_s);
        } catch (const std::exception&) {
            throw IngestionError("bad coordinate at line " + std::to_string(line_no));
        }
        if (fix.lat_deg < -90 || fix.lat_deg > 90 || fix.lon_deg < -180 || fix.lon_deg > 180) {
            throw IngestionError("coordinate out of range at line " + std::to_string(line_no));
        }
        fixes.push_back(fix);
    }
    if (fixes.empty()) throw IngestionError("track file has no rows");
    return fixes;
}

ScenarioInstance load_case_study(const std::string& track_csv_path, const CaseStudyConfig& cfg) {
    cfg.constants.validate();
    const std::vector<TrackFix> fixes = read_track_csv(track_csv_path);

    // Rows must be strictly increasing at one fixed interval.
    if (fixes.size() >= 2) {
        const double interval = fixes[1].time.julian_date() - fixes[0].time.julian_date();
        if (interval <= 0) throw IngestionError("track rows are not strictly time-ordered");
        for (std::size_t i = 2; i < fixes.size(); ++i) {
            const double step = fixes[i].time.julian_date() - fixes[i - 1].time.julian_date();
            if (std::fabs(step - interval) > 1e-9) {
                throw IngestionError("track interval changes at row " + std::to_string(i + 1));
            }
        }
    }

    ScenarioInstance inst;
    inst.grid = TimeGrid::make(fixes.front().time, cfg.dt_s, cfg.horizon_days * 86400.0, cfg.stages);
    const int p_count = static_cast<int>(fixes.size());
    if (inst.grid.total_steps % p_count != 0) {
        throw IngestionError("track rows (" + std::to_string(p_count) +
                             ") do not divide the horizon of " +
                             std::to_string(inst.grid.total_steps) + " steps");
    }
    inst.constants = cfg.constants;
    inst.geometry = cfg.geometry;
    inst.satellites = walker_delta(cfg.walker_total, cfg.walker_planes, cfg.walker_phasing,
                                   cfg.walker_inclination_deg, cfg.walker_altitude_km);
    inst.stations = cfg.stations;
    for (int p = 0; p < p_count; ++p) {
        inst.targets.push_back({fixes[p].lat_deg, fixes[p].lon_deg,
                                "fix-" + std::to_string(p + 1) + "@" + fixes[p].time.to_iso8601()});
    }
    inst.slot_spec.kind = SlotKind::PlaneAndPhase;
    inst.slot_spec.phase_count = cfg.phase_options;
    inst.slot_spec.plane_options = cfg.plane_options;
    inst.slot_spec.plane_scale = cfg.plane_scale;
    return inst;
}

} // namespace reosched
