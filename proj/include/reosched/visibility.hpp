#ifndef REOSCHED_VISIBILITY_HPP
#define REOSCHED_VISIBILITY_HPP

#include <cstdint>
#include <vector>

#include "reosched/orbital.hpp"
#include "reosched/time_grid.hpp"

namespace reosched {

struct ScenarioInstance;

// Packed binary series; index is 0-based internally, callers pass 1-based
// step numbers through the tensor accessors below.
class BitSeries {
public:
    BitSeries() = default;
    explicit BitSeries(int length) : length_(length), words_((length + 63) / 64, 0) {}

    int size() const { return length_; }
    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    int count() const;
    bool operator==(const BitSeries& o) const = default;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

private:
    int length_ = 0;
    std::vector<std::uint64_t> words_;
};

enum class ConeInterpretation {
    FullApex,  // configured angle is the full apex, half-angle = angle / 2
    HalfAngle, // configured angle is already the half-angle
};

// Geometry configuration for tensor construction.
struct ViewGeometry {
    double target_cone_deg = 45.0;
    double station_cone_deg = 120.0;
    ConeInterpretation interpretation = ConeInterpretation::FullApex;
    double sun_threshold = 1.0; // H = 1 iff sunlight fraction >= threshold
    double gmst0_deg = 0.0;     // Greenwich hour angle at epoch
    Perturbation perturbation = Perturbation::TwoBody;

    double half_angle_rad(double cone_deg) const {
        const double h = interpretation == ConeInterpretation::FullApex ? cone_deg / 2.0 : cone_deg;
        return h * astro::kDegToRad;
    }
};

// Binary visibility tensors V (targets), W (stations), H (Sun) for the
// slot-resolved formulations, plus the flat projection onto the initial
// orbits used by the baseline problem.
struct VisibilityTensors {
    int stages = 0;         // S
    int satellites = 0;     // K
    int steps_per_stage = 0;
    int total_steps = 0;
    int targets = 0;        // P
    int stations = 0;       // G
    std::vector<std::vector<int>> slot_counts; // [s-1][k] = J^{sk}
    bool masked = false;

    // Stage-resolved planes, stage-local step index t in 1..T^s.
    // v_plane[s-1][k][j][p], w_plane[s-1][k][j][g], h_plane[s-1][k][j].
    std::vector<std::vector<std::vector<std::vector<BitSeries>>>> v_plane;
    std::vector<std::vector<std::vector<std::vector<BitSeries>>>> w_plane;
    std::vector<std::vector<std::vector<BitSeries>>> h_plane;

    // Flat view over global steps for the initial orbits.
    std::vector<std::vector<BitSeries>> v_flat; // [k][p]
    std::vector<std::vector<BitSeries>> w_flat; // [k][g]
    std::vector<BitSeries> h_flat;              // [k]

    bool v(int s, int t, int j, int k, int p) const { return v_plane[s - 1][k][j][p].get(t - 1); }
    bool w(int s, int t, int j, int k, int g) const { return w_plane[s - 1][k][j][g].get(t - 1); }
    bool h(int s, int t, int j, int k) const { return h_plane[s - 1][k][j].get(t - 1); }

    bool flat_v(int t, int k, int p) const { return v_flat[k][p].get(t - 1); }
    bool flat_w(int t, int k, int g) const { return w_flat[k][g].get(t - 1); }
    bool flat_h(int t, int k) const { return h_flat[k].get(t - 1); }

    bool operator==(const VisibilityTensors& o) const = default;
};

// 1 at step t iff the object is inside the nadir-pointed cone and the line of
// sight is not blocked by the (spherical) Earth. The off-nadir comparison is
// inclusive at the boundary. Throws DimensionError on length mismatch.
BitSeries cone_access(const Ephemeris& observer, const Ephemeris& object,
                      double cone_angle_deg, ConeInterpretation interpretation);

// Single-sample version of the cone + horizon test. half_angle in radians.
bool cone_visible(const Vec3& sat_km, const Vec3& object_km, double half_angle_rad);

// Sunlight fraction per step: 1 full sun, 0 umbra, in between for penumbra
// (dual-cone geometry with a spherical Earth).
std::vector<double> eclipse_series(const Ephemeris& satellite, const Ephemeris& sun);
double sunlight_fraction(const Vec3& sat_km, const Vec3& sun_km);

// H = 1 iff fraction >= threshold (inclusive). threshold in (0, 1].
BitSeries binarize_sun(const std::vector<double>& fractions, double threshold);

// Zeroes target p's visibility outside its window of T/P consecutive global
// steps; windows partition [1, T] in target order. Throws ConfigError when
// T is not divisible by the target count. Applies to both the stage-resolved
// planes and the flat view.
void apply_target_masking(VisibilityTensors& tensors, const TimeGrid& grid);

// Builds V/W/H for every (stage, slot, satellite) plus the flat view, then
// applies target masking.
VisibilityTensors build_tensors(const ScenarioInstance& instance);

} // namespace reosched

#endif // REOSCHED_VISIBILITY_HPP
