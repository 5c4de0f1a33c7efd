#include "reosched/cache_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "reosched/config_io.hpp"
#include "reosched/errors.hpp"

namespace reosched {

namespace {

constexpr std::uint32_t kVisMagic = 0x52535654;  // "RSVT"
constexpr std::uint32_t kCostMagic = 0x52534354; // "RSCT"
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& f, const T& v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& f) {
    T v{};
    f.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!f) throw IngestionError("cache file truncated");
    return v;
}

void put_bits(std::ofstream& f, const BitSeries& s) {
    f.write(reinterpret_cast<const char*>(s.words().data()),
            static_cast<std::streamsize>(s.words().size() * sizeof(std::uint64_t)));
}

BitSeries get_bits(std::ifstream& f, int length) {
    BitSeries s(length);
    f.read(reinterpret_cast<char*>(s.words().data()),
           static_cast<std::streamsize>(s.words().size() * sizeof(std::uint64_t)));
    if (!f) throw IngestionError("cache file truncated");
    return s;
}

} // namespace

void save_visibility_cache(const std::string& path, const ScenarioInstance& inst,
                           const VisibilityTensors& t) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IngestionError("cannot open '" + path + "' for writing");
    put(f, kVisMagic);
    put(f, kVersion);
    put(f, scenario_content_hash(inst));
    put(f, static_cast<std::int32_t>(t.stages));
    put(f, static_cast<std::int32_t>(t.satellites));
    put(f, static_cast<std::int32_t>(t.steps_per_stage));
    put(f, static_cast<std::int32_t>(t.total_steps));
    put(f, static_cast<std::int32_t>(t.targets));
    put(f, static_cast<std::int32_t>(t.stations));
    put(f, static_cast<std::uint8_t>(t.masked ? 1 : 0));
    for (int s = 0; s < t.stages; ++s) {
        for (int k = 0; k < t.satellites; ++k) put(f, static_cast<std::int32_t>(t.slot_counts[s][k]));
    }
    for (int s = 0; s < t.stages; ++s) {
        for (int k = 0; k < t.satellites; ++k) {
            for (int j = 0; j < t.slot_counts[s][k]; ++j) {
                for (int p = 0; p < t.targets; ++p) put_bits(f, t.v_plane[s][k][j][p]);
                for (int g = 0; g < t.stations; ++g) put_bits(f, t.w_plane[s][k][j][g]);
                put_bits(f, t.h_plane[s][k][j]);
            }
        }
    }
    for (int k = 0; k < t.satellites; ++k) {
        for (int p = 0; p < t.targets; ++p) put_bits(f, t.v_flat[k][p]);
        for (int g = 0; g < t.stations; ++g) put_bits(f, t.w_flat[k][g]);
        put_bits(f, t.h_flat[k]);
    }
}

std::optional<VisibilityTensors> load_visibility_cache(const std::string& path,
                                                       const ScenarioInstance& inst) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    if (get<std::uint32_t>(f) != kVisMagic) throw IngestionError("'" + path + "' is not a tensor cache");
    if (get<std::uint32_t>(f) != kVersion) return std::nullopt;
    if (get<std::uint64_t>(f) != scenario_content_hash(inst)) return std::nullopt;
    VisibilityTensors t;
    t.stages = get<std::int32_t>(f);
    t.satellites = get<std::int32_t>(f);
    t.steps_per_stage = get<std::int32_t>(f);
    t.total_steps = get<std::int32_t>(f);
    t.targets = get<std::int32_t>(f);
    t.stations = get<std::int32_t>(f);
    t.masked = get<std::uint8_t>(f) != 0;
    if (t.stages != inst.grid.stages || t.satellites != inst.num_satellites() ||
        t.steps_per_stage != inst.grid.steps_per_stage || t.total_steps != inst.grid.total_steps ||
        t.targets != inst.num_targets() || t.stations != inst.num_stations()) {
        return std::nullopt;
    }
    t.slot_counts.assign(t.stages, std::vector<int>(t.satellites, 0));
    for (int s = 0; s < t.stages; ++s) {
        for (int k = 0; k < t.satellites; ++k) t.slot_counts[s][k] = get<std::int32_t>(f);
    }
    t.v_plane.resize(t.stages);
    t.w_plane.resize(t.stages);
    t.h_plane.resize(t.stages);
    for (int s = 0; s < t.stages; ++s) {
        t.v_plane[s].resize(t.satellites);
        t.w_plane[s].resize(t.satellites);
        t.h_plane[s].resize(t.satellites);
        for (int k = 0; k < t.satellites; ++k) {
            const int j_count = t.slot_counts[s][k];
            t.v_plane[s][k].resize(j_count);
            t.w_plane[s][k].resize(j_count);
            t.h_plane[s][k].resize(j_count);
            for (int j = 0; j < j_count; ++j) {
                t.v_plane[s][k][j].resize(t.targets);
                for (int p = 0; p < t.targets; ++p) {
                    t.v_plane[s][k][j][p] = get_bits(f, t.steps_per_stage);
                }
                t.w_plane[s][k][j].resize(t.stations);
                for (int g = 0; g < t.stations; ++g) {
                    t.w_plane[s][k][j][g] = get_bits(f, t.steps_per_stage);
                }
                t.h_plane[s][k][j] = get_bits(f, t.steps_per_stage);
            }
        }
    }
    t.v_flat.resize(t.satellites);
    t.w_flat.resize(t.satellites);
    t.h_flat.resize(t.satellites);
    for (int k = 0; k < t.satellites; ++k) {
        t.v_flat[k].resize(t.targets);
        for (int p = 0; p < t.targets; ++p) t.v_flat[k][p] = get_bits(f, t.total_steps);
        t.w_flat[k].resize(t.stations);
        for (int g = 0; g < t.stations; ++g) t.w_flat[k][g] = get_bits(f, t.total_steps);
        t.h_flat[k] = get_bits(f, t.total_steps);
    }
    return t;
}

void save_cost_cache(const std::string& path, const ScenarioInstance& inst, const CostTensor& c) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IngestionError("cannot open '" + path + "' for writing");
    const SlotGrid& grid = inst.slot_grid();
    put(f, kCostMagic);
    put(f, kVersion);
    put(f, scenario_content_hash(inst));
    put(f, static_cast<std::int32_t>(inst.grid.stages));
    put(f, static_cast<std::int32_t>(inst.num_satellites()));
    for (int s = 0; s <= inst.grid.stages; ++s) {
        for (int k = 0; k < inst.num_satellites(); ++k) {
            put(f, static_cast<std::int32_t>(grid.count(s, k)));
        }
    }
    put(f, c.battery_per_maneuver_kj);
    for (double b : c.budget_mps) put(f, b);
    for (int s = 1; s <= inst.grid.stages; ++s) {
        for (int k = 0; k < inst.num_satellites(); ++k) {
            const auto& mat = c.cost[s - 1][k];
            f.write(reinterpret_cast<const char*>(mat.data()),
                    static_cast<std::streamsize>(mat.size() * sizeof(double)));
        }
    }
}

std::optional<CostTensor> load_cost_cache(const std::string& path, const ScenarioInstance& inst) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    if (get<std::uint32_t>(f) != kCostMagic) throw IngestionError("'" + path + "' is not a cost cache");
    if (get<std::uint32_t>(f) != kVersion) return std::nullopt;
    if (get<std::uint64_t>(f) != scenario_content_hash(inst)) return std::nullopt;
    const SlotGrid& grid = inst.slot_grid();
    if (get<std::int32_t>(f) != inst.grid.stages) return std::nullopt;
    if (get<std::int32_t>(f) != inst.num_satellites()) return std::nullopt;
    for (int s = 0; s <= inst.grid.stages; ++s) {
        for (int k = 0; k < inst.num_satellites(); ++k) {
            if (get<std::int32_t>(f) != grid.count(s, k)) return std::nullopt;
        }
    }
    CostTensor c;
    c.battery_per_maneuver_kj = get<double>(f);
    c.budget_mps.resize(inst.num_satellites());
    for (double& b : c.budget_mps) b = get<double>(f);
    c.cost.resize(inst.grid.stages);
    for (int s = 1; s <= inst.grid.stages; ++s) {
        c.cost[s - 1].resize(inst.num_satellites());
        for (int k = 0; k < inst.num_satellites(); ++k) {
            auto& mat = c.cost[s - 1][k];
            mat.resize(static_cast<std::size_t>(grid.count(s - 1, k)) * grid.count(s, k));
            f.read(reinterpret_cast<char*>(mat.data()),
                   static_cast<std::streamsize>(mat.size() * sizeof(double)));
            if (!f) throw IngestionError("cost cache truncated");
        }
    }
    return c;
}

void ensure_derived_data(const ScenarioInstance& inst, const std::string& cache_dir) {
    std::string dir = cache_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("REOSCHED_CACHE_DIR")) dir = env;
    }
    if (dir.empty()) {
        inst.visibility();
        inst.costs();
        return;
    }
    std::filesystem::create_directories(dir);
    char key[32];
    std::snprintf(key, sizeof(key), "%016llx",
                  static_cast<unsigned long long>(scenario_content_hash(inst)));
    const std::string vis_path = dir + "/vis_" + key + ".bin";
    const std::string cost_path = dir + "/cost_" + key + ".bin";
    if (auto t = load_visibility_cache(vis_path, inst)) {
        inst.adopt_visibility(std::move(*t));
    } else {
        save_visibility_cache(vis_path, inst, inst.visibility());
    }
    if (auto c = load_cost_cache(cost_path, inst)) {
        inst.adopt_costs(std::move(*c));
    } else {
        save_cost_cache(cost_path, inst, inst.costs());
    }
}

} // namespace reosched
