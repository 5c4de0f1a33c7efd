#ifndef REOSCHED_CONFIG_IO_HPP
#define REOSCHED_CONFIG_IO_HPP

#include <string>

#include "reosched/instance.hpp"

namespace reosched {

// Scenario config JSON (schema v1, strict: unknown fields are rejected with
// their location). Lossless for all non-derived fields; tensors and costs
// are rebuilt or pulled from the cache.
std::string scenario_to_json(const ScenarioInstance& instance);
ScenarioInstance scenario_from_json(const std::string& text);

void save_config(const std::string& path, const ScenarioInstance& instance);
ScenarioInstance load_config(const std::string& path);

// Stable content hash over the geometry-determining fields (grid, orbits,
// slots, ground points, cones); keys the tensor/cost cache files.
std::uint64_t scenario_content_hash(const ScenarioInstance& instance);

} // namespace reosched

#endif // REOSCHED_CONFIG_IO_HPP
