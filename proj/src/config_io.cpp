#include "reosched/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "reosched/errors.hpp"

namespace reosched {

namespace {

using Json = nlohmann::ordered_json;

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) {
            throw SchemaError("unknown field '" + key + "' in " + where);
        }
    }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

Json elements_to_json(const OrbitalElements& el) {
    return Json{{"a_km", el.semi_major_axis_km},
                {"e", el.eccentricity},
                {"inc_deg", el.inclination_deg},
                {"raan_deg", el.raan_deg},
                {"u_deg", el.arg_latitude_deg}};
}

OrbitalElements elements_from_json(const Json& j, const std::string& where) {
    reject_unknown(j, {"a_km", "e", "inc_deg", "raan_deg", "u_deg"}, where);
    OrbitalElements el;
    el.semi_major_axis_km = need(j, "a_km", where).get<double>();
    el.eccentricity = need(j, "e", where).get<double>();
    el.inclination_deg = need(j, "inc_deg", where).get<double>();
    el.raan_deg = need(j, "raan_deg", where).get<double>();
    el.arg_latitude_deg = need(j, "u_deg", where).get<double>();
    return el;
}

Json point_to_json(const GroundPoint& p) {
    return Json{{"lat_deg", p.lat_deg}, {"lon_deg", p.lon_deg}, {"name", p.name}};
}

GroundPoint point_from_json(const Json& j, const std::string& where) {
    reject_unknown(j, {"lat_deg", "lon_deg", "name"}, where);
    GroundPoint p;
    p.lat_deg = need(j, "lat_deg", where).get<double>();
    p.lon_deg = need(j, "lon_deg", where).get<double>();
    if (j.contains("name")) p.name = j["name"].get<std::string>();
    return p;
}

} // namespace

std::string scenario_to_json(const ScenarioInstance& inst) {
    Json j;
    j["schema_version"] = 1;
    j["seed"] = inst.seed;
    j["grid"] = Json{{"epoch", inst.grid.epoch.to_iso8601()},
                     {"dt_s", inst.grid.dt_s},
                     {"horizon_s", inst.grid.horizon_s},
                     {"stages", inst.grid.stages}};
    j["satellites"] = Json::array();
    for (const OrbitalElements& el : inst.satellites) j["satellites"].push_back(elements_to_json(el));
    j["slot_grid"] = Json{
        {"kind", inst.slot_spec.kind == SlotKind::PhaseOnly ? "phase_only" : "plane_and_phase"},
        {"phase_count", inst.slot_spec.phase_count},
        {"plane_options", inst.slot_spec.plane_options},
        {"plane_scale", inst.slot_spec.plane_scale}};
    j["targets"] = Json::array();
    for (const GroundPoint& p : inst.targets) j["targets"].push_back(point_to_json(p));
    j["stations"] = Json::array();
    for (const GroundPoint& p : inst.stations) j["stations"].push_back(point_to_json(p));
    const PhysicalConstants& c = inst.constants;
    j["constants"] = Json{{"d_obs_mb", c.d_obs_mb},       {"d_comm_mb", c.d_comm_mb},
                          {"d_min_mb", c.d_min_mb},       {"d_max_mb", c.d_max_mb},
                          {"b_obs_kj", c.b_obs_kj},       {"b_comm_kj", c.b_comm_kj},
                          {"b_charge_kj", c.b_charge_kj}, {"b_time_kj", c.b_time_kj},
                          {"b_recon_kj", c.b_recon_kj},   {"b_min_kj", c.b_min_kj},
                          {"b_max_kj", c.b_max_kj},       {"downlink_weight", c.downlink_weight},
                          {"dv_budget_mps", c.dv_budget_mps}, {"gb_to_mb", c.gb_to_mb}};
    const ViewGeometry& g = inst.geometry;
    j["geometry"] = Json{
        {"target_cone_deg", g.target_cone_deg},
        {"station_cone_deg", g.station_cone_deg},
        {"cone_interpretation",
         g.interpretation == ConeInterpretation::FullApex ? "full_apex" : "half_angle"},
        {"sun_threshold", g.sun_threshold},
        {"gmst0_deg", g.gmst0_deg},
        {"perturbation", g.perturbation == Perturbation::TwoBody ? "two_body" : "j2_secular"}};
    return j.dump(2) + "\n";
}

ScenarioInstance scenario_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"schema_version", "seed", "grid", "satellites", "slot_grid", "targets",
                    "stations", "constants", "geometry"},
                   "config root");
    const int version = need(j, "schema_version", "config root").get<int>();
    if (version != 1) {
        throw SchemaError("unsupported schema_version " + std::to_string(version) +
                          " (this build reads version 1)");
    }
    ScenarioInstance inst;
    inst.seed = need(j, "seed", "config root").get<std::uint64_t>();

    const Json& grid = need(j, "grid", "config root");
    reject_unknown(grid, {"epoch", "dt_s", "horizon_s", "stages"}, "grid");
    inst.grid = TimeGrid::make(UtcTime::parse_iso8601(need(grid, "epoch", "grid").get<std::string>()),
                               need(grid, "dt_s", "grid").get<double>(),
                               need(grid, "horizon_s", "grid").get<double>(),
                               need(grid, "stages", "grid").get<int>());

    int idx = 0;
    for (const Json& el : need(j, "satellites", "config root")) {
        inst.satellites.push_back(elements_from_json(el, "satellites[" + std::to_string(idx++) + "]"));
    }

    const Json& slot = need(j, "slot_grid", "config root");
    reject_unknown(slot, {"kind", "phase_count", "plane_options", "plane_scale"}, "slot_grid");
    const std::string kind = need(slot, "kind", "slot_grid").get<std::string>();
    if (kind == "phase_only") {
        inst.slot_spec.kind = SlotKind::PhaseOnly;
    } else if (kind == "plane_and_phase") {
        inst.slot_spec.kind = SlotKind::PlaneAndPhase;
    } else {
        throw SchemaError("slot_grid.kind must be phase_only or plane_and_phase");
    }
    inst.slot_spec.phase_count = need(slot, "phase_count", "slot_grid").get<int>();
    inst.slot_spec.plane_options = need(slot, "plane_options", "slot_grid").get<int>();
    inst.slot_spec.plane_scale = need(slot, "plane_scale", "slot_grid").get<double>();

    idx = 0;
    for (const Json& p : need(j, "targets", "config root")) {
        inst.targets.push_back(point_from_json(p, "targets[" + std::to_string(idx++) + "]"));
    }
    idx = 0;
    for (const Json& p : need(j, "stations", "config root")) {
        inst.stations.push_back(point_from_json(p, "stations[" + std::to_string(idx++) + "]"));
    }

    const Json& c = need(j, "constants", "config root");
    reject_unknown(c,
                   {"d_obs_mb", "d_comm_mb", "d_min_mb", "d_max_mb", "b_obs_kj", "b_comm_kj",
                    "b_charge_kj", "b_time_kj", "b_recon_kj", "b_min_kj", "b_max_kj",
                    "downlink_weight", "dv_budget_mps", "gb_to_mb"},
                   "constants");
    PhysicalConstants& pc = inst.constants;
    pc.d_obs_mb = need(c, "d_obs_mb", "constants").get<double>();
    pc.d_comm_mb = need(c, "d_comm_mb", "constants").get<double>();
    pc.d_min_mb = need(c, "d_min_mb", "constants").get<double>();
    pc.d_max_mb = need(c, "d_max_mb", "constants").get<double>();
    pc.b_obs_kj = need(c, "b_obs_kj", "constants").get<double>();
    pc.b_comm_kj = need(c, "b_comm_kj", "constants").get<double>();
    pc.b_charge_kj = need(c, "b_charge_kj", "constants").get<double>();
    pc.b_time_kj = need(c, "b_time_kj", "constants").get<double>();
    pc.b_recon_kj = need(c, "b_recon_kj", "constants").get<double>();
    pc.b_min_kj = need(c, "b_min_kj", "constants").get<double>();
    pc.b_max_kj = need(c, "b_max_kj", "constants").get<double>();
    pc.downlink_weight = need(c, "downlink_weight", "constants").get<double>();
    pc.dv_budget_mps = need(c, "dv_budget_mps", "constants").get<double>();
    pc.gb_to_mb = need(c, "gb_to_mb", "constants").get<double>();
    pc.validate();

    const Json& g = need(j, "geometry", "config root");
    reject_unknown(g,
                   {"target_cone_deg", "station_cone_deg", "cone_interpretation", "sun_threshold",
                    "gmst0_deg", "perturbation"},
                   "geometry");
    ViewGeometry& vg = inst.geometry;
    vg.target_cone_deg = need(g, "target_cone_deg", "geometry").get<double>();
    vg.station_cone_deg = need(g, "station_cone_deg", "geometry").get<double>();
    const std::string interp = need(g, "cone_interpretation", "geometry").get<std::string>();
    if (interp == "full_apex") {
        vg.interpretation = ConeInterpretation::FullApex;
    } else if (interp == "half_angle") {
        vg.interpretation = ConeInterpretation::HalfAngle;
    } else {
        throw SchemaError("geometry.cone_interpretation must be full_apex or half_angle");
    }
    vg.sun_threshold = need(g, "sun_threshold", "geometry").get<double>();
    vg.gmst0_deg = need(g, "gmst0_deg", "geometry").get<double>();
    const std::string pert = need(g, "perturbation", "geometry").get<std::string>();
    if (pert == "two_body") {
        vg.perturbation = Perturbation::TwoBody;
    } else if (pert == "j2_secular") {
        vg.perturbation = Perturbation::J2Secular;
    } else {
        throw SchemaError("geometry.perturbation must be two_body or j2_secular");
    }
    return inst;
}

void save_config(const std::string& path, const ScenarioInstance& inst) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IngestionError("cannot open '" + path + "' for writing");
    f << scenario_to_json(inst);
}

ScenarioInstance load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IngestionError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return scenario_from_json(ss.str());
}

std::uint64_t scenario_content_hash(const ScenarioInstance& inst) {
    // FNV-1a over the canonical config text minus fields that do not affect
    // the tensors/costs (seed only labels the instance).
    ScenarioInstance copy = inst;
    copy.seed = 0;
    const std::string text = scenario_to_json(copy);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace reosched
