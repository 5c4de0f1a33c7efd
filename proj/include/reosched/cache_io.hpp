#ifndef REOSCHED_CACHE_IO_HPP
#define REOSCHED_CACHE_IO_HPP

#include <optional>
#include <string>

#include "reosched/instance.hpp"

namespace reosched {

// Binary tensor / cost caches (layouts documented in docs/FORMATS.md).
// Headers carry the dimensions and the scenario content hash; loads verify
// both against the instance.

void save_visibility_cache(const std::string& path, const ScenarioInstance& instance,
                           const VisibilityTensors& tensors);
std::optional<VisibilityTensors> load_visibility_cache(const std::string& path,
                                                       const ScenarioInstance& instance);

void save_cost_cache(const std::string& path, const ScenarioInstance& instance,
                     const CostTensor& costs);
std::optional<CostTensor> load_cost_cache(const std::string& path,
                                          const ScenarioInstance& instance);

// Ensures tensors/costs on the instance, consulting REOSCHED_CACHE_DIR (or
// the explicit dir) keyed by content hash; builds and writes back on miss.
void ensure_derived_data(const ScenarioInstance& instance, const std::string& cache_dir);

} // namespace reosched

#endif // REOSCHED_CACHE_IO_HPP
