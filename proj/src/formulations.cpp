#include "reosched/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reosched/errors.hpp"

namespace reosched {

namespace {

using Terms = std::vector<std::pair<int, double>>;

// Shared builder for the slot-resolved formulations: the full problem is the
// stage range [1, S] with the stage-0 singleton as origin; an RHP(s, L)
// subproblem is the range [s, s+L] with carry-provided origin and budgets.
MilpModel build_slot_resolved(const ScenarioInstance& inst, int stage_begin, int stage_end,
                              const std::vector<int>& origin, const std::vector<double>& budget,
                              const std::vector<double>& d1, const std::vector<double>& b1,
                              Formulation kind) {
    const TimeGrid& grid = inst.grid;
    const SlotGrid& slots = inst.slot_grid();
    const VisibilityTensors& vis = inst.visibility();
    const CostTensor& costs = inst.costs();
    const PhysicalConstants& c = inst.constants;
    const int sats = inst.num_satellites();
    const int steps = grid.steps_per_stage;
    const int targets = inst.num_targets();
    const int stations = inst.num_stations();
    const int range = stage_end - stage_begin + 1;

    MilpModel m;
    m.meta.formulation = kind;
    m.meta.stage_begin = stage_begin;
    m.meta.stage_end = stage_end;
    m.meta.satellites = sats;
    m.meta.steps = steps;
    m.meta.targets = targets;
    m.meta.stations = stations;
    m.meta.d1_mb = d1;
    m.meta.b1_kj = b1;
    m.meta.budget_mps = budget;
    m.meta.origin_slot = origin;
    for (int s = stage_begin; s <= stage_end; ++s) {
        for (int k = 0; k < sats; ++k) m.meta.max_slots = std::max(m.meta.max_slots, slots.count(s, k));
    }

    ModelIndex& ix = m.index;
    ix.stage_begin = stage_begin;
    ix.targets = targets;
    ix.stations = stations;
    ix.x_col.resize(range);
    ix.x_prev_count.assign(range, std::vector<int>(sats, 0));
    ix.x_cur_count.assign(range, std::vector<int>(sats, 0));
    ix.y_base.assign(range, std::vector<int>(sats, 0));
    ix.q_base.assign(range, std::vector<int>(sats, 0));
    ix.h_base.assign(range, std::vector<int>(sats, 0));
    ix.d_base.assign(range, std::vector<int>(sats, 0));
    ix.b_base.assign(range, std::vector<int>(sats, 0));

    // Maneuver binaries over finite-cost arcs only. The first modeled stage
    // transfers out of the origin slot alone.
    for (int s = stage_begin; s <= stage_end; ++s) {
        const int l = s - stage_begin;
        ix.x_col[l].resize(sats);
        for (int k = 0; k < sats; ++k) {
            const int j_prev = slots.count(s - 1, k);
            const int j_cur = slots.count(s, k);
            ix.x_prev_count[l][k] = j_prev;
            ix.x_cur_count[l][k] = j_cur;
            ix.x_col[l][k].assign(static_cast<std::size_t>(j_prev) * j_cur, -1);
            for (int i = 0; i < j_prev; ++i) {
                if (s == stage_begin && i != origin[k]) continue;
                for (int j = 0; j < j_cur; ++j) {
                    if (costs.at(s, k, i, j, j_cur) >= kInfeasibleCost) continue;
                    ix.x_col[l][k][static_cast<std::size_t>(i) * j_cur + j] =
                        m.add_col({VarType::Maneuver, s, k, 0, i, j}, 0.0, 1.0, true, 0.0);
                }
            }
        }
    }

    // Task binaries; a variable whose goal no slot can see is pinned to 0.
    for (int s = stage_begin; s <= stage_end; ++s) {
        const int l = s - stage_begin;
        for (int k = 0; k < sats; ++k) {
            const int j_cur = slots.count(s, k);
            ix.y_base[l][k] = m.num_cols();
            for (int t = 1; t <= steps; ++t) {
                for (int p = 0; p < targets; ++p) {
                    bool any = false;
                    for (int j = 0; j < j_cur && !any; ++j) any = vis.v(s, t, j, k, p);
                    m.add_col({VarType::Observe, s, k, t, p, 0}, 0.0, any ? 1.0 : 0.0, true, 1.0);
                }
            }
        }
    }
    for (int s = stage_begin; s <= stage_end; ++s) {
        const int l = s - stage_begin;
        for (int k = 0; k < sats; ++k) {
            const int j_cur = slots.count(s, k);
            ix.q_base[l][k] = m.num_cols();
            for (int t = 1; t <= steps; ++t) {
                for (int g = 0; g < stations; ++g) {
                    bool any = false;
                    for (int j = 0; j < j_cur && !any; ++j) any = vis.w(s, t, j, k, g);
                    m.add_col({VarType::Downlink, s, k, t, g, 0}, 0.0, any ? 1.0 : 0.0, true,
                              c.downlink_weight);
                }
            }
        }
    }
    for (int s = stage_begin; s <= stage_end; ++s) {
        const int l = s - stage_begin;
        for (int k = 0; k < sats; ++k) {
            const int j_cur = slots.count(s, k);
            ix.h_base[l][k] = m.num_cols();
            for (int t = 1; t <= steps; ++t) {
                bool any = false;
                for (int j = 0; j < j_cur && !any; ++j) any = vis.h(s, t, j, k);
                m.add_col({VarType::Charge, s, k, t, 0, 0}, 0.0, any ? 1.0 : 0.0, true, 0.0);
            }
        }
    }

    // Storage indicators. The data level entering the first modeled stage is
    // a fixed bound; the battery level entering it is pinned by a row so the
    // first maneuver's battery cost is tracked, exactly as in the full model.
    for (int s = stage_begin; s <= stage_end; ++s) {
        const int l = s - stage_begin;
        for (int k = 0; k < sats; ++k) {
            ix.d_base[l][k] = m.num_cols();
            for (int t = 1; t <= steps; ++t) {
                const bool pinned = s == stage_begin && t == 1;
                m.add_col({VarType::Data, s, k, t, 0, 0}, pinned ? d1[k] : c.d_min_mb,
                          pinned ? d1[k] : c.d_max_mb, false, 0.0);
            }
        }
    }
    for (int s = stage_begin; s <= stage_end; ++s) {
        const int l = s - stage_begin;
        for (int k = 0; k < sats; ++k) {
            ix.b_base[l][k] = m.num_cols();
            for (int t = 1; t <= steps; ++t) {
                m.add_col({VarType::Battery, s, k, t, 0, 0}, c.b_min_kj, c.b_max_kj, false, 0.0);
            }
        }
    }

    const auto arcs_into = [&](int s, int k, Terms& terms, double coef) {
        const int l = s - stage_begin;
        const int j_prev = ix.x_prev_count[l][k];
        const int j_cur = ix.x_cur_count[l][k];
        for (int i = 0; i < j_prev; ++i) {
            for (int j = 0; j < j_cur; ++j) {
                const int col = ix.x_col[l][k][static_cast<std::size_t>(i) * j_cur + j];
                if (col >= 0) terms.emplace_back(col, coef);
            }
        }
    };

    // Flow: a single slot is chosen out of the origin, and transfers may only
    // leave a slot the satellite arrived in.
    for (int k = 0; k < sats; ++k) {
        Terms terms;
        const int l = 0;
        const int j_cur = ix.x_cur_count[l][k];
        for (int j = 0; j < j_cur; ++j) {
            const int col = ix.x_col[l][k][static_cast<std::size_t>(origin[k]) * j_cur + j];
            if (col >= 0) terms.emplace_back(col, 1.0);
        }
        m.add_row({RowType::FlowInit, stage_begin, k, 0, 0}, RowSense::EQ, 1.0, terms);
    }
    for (int s = stage_begin; s < stage_end; ++s) {
        const int l = s - stage_begin;
        for (int k = 0; k < sats; ++k) {
            const int j_here = ix.x_cur_count[l][k];
            for (int i = 0; i < j_here; ++i) {
                Terms terms;
                const int j_next = ix.x_cur_count[l + 1][k];
                for (int j = 0; j < j_next; ++j) {
                    const int col = ix.x_col[l + 1][k][static_cast<std::size_t>(i) * j_next + j];
                    if (col >= 0) terms.emplace_back(col, 1.0);
                }
                const int j_prev = ix.x_prev_count[l][k];
                for (int jp = 0; jp < j_prev; ++jp) {
                    const int col = ix.x_col[l][k][static_cast<std::size_t>(jp) * j_here + i];
                    if (col >= 0) terms.emplace_back(col, -1.0);
                }
                if (terms.empty()) continue;
                m.add_row({RowType::FlowCons, s, k, 0, i + 1}, RowSense::EQ, 0.0, terms);
            }
        }
    }
    for (int k = 0; k < sats; ++k) {
        Terms terms;
        for (int s = stage_begin; s <= stage_end; ++s) {
            const int l = s - stage_begin;
            const int j_cur = ix.x_cur_count[l][k];
            for (int i = 0; i < ix.x_prev_count[l][k]; ++i) {
                for (int j = 0; j < j_cur; ++j) {
                    const int col = ix.x_col[l][k][static_cast<std::size_t>(i) * j_cur + j];
                    if (col < 0) continue;
                    const double cost = costs.at(s, k, i, j, j_cur);
                    if (cost > 0.0) terms.emplace_back(col, cost);
                }
            }
        }
        m.add_row({RowType::Budget, stage_begin, k, 0, 0}, RowSense::LE, budget[k], terms);
    }

    // Slot-coupled visibility. Rows where every slot (or no slot) sees the
    // goal are dropped: the no-slot case pins the task variable's bound to 0
    // above, the all-slot case is implied by the unit flow through the stage.
    for (int s = stage_begin; s <= stage_end; ++s) {
        const int l = s - stage_begin;
        for (int k = 0; k < sats; ++k) {
            const int j_cur = ix.x_cur_count[l][k];
            const int j_prev = ix.x_prev_count[l][k];
            const auto coupled_row = [&](RowType type, int t, int idx, int task_col,
                                         auto&& visible) {
                int ones = 0;
                for (int j = 0; j < j_cur; ++j) ones += visible(j) ? 1 : 0;
                if (ones == 0 || ones == j_cur) return;
                Terms terms;
                for (int i = 0; i < j_prev; ++i) {
                    for (int j = 0; j < j_cur; ++j) {
                        if (!visible(j)) continue;
                        const int col = ix.x_col[l][k][static_cast<std::size_t>(i) * j_cur + j];
                        if (col >= 0) terms.emplace_back(col, 1.0);
                    }
                }
                terms.emplace_back(task_col, -1.0);
                m.add_row({type, s, k, t, idx + 1}, RowSense::GE, 0.0, terms);
            };
            for (int t = 1; t <= steps; ++t) {
                for (int p = 0; p < targets; ++p) {
                    coupled_row(RowType::VisTarget, t, p, ix.y(s, k, t, p),
                                [&](int j) { return vis.v(s, t, j, k, p); });
                }
                for (int g = 0; g < stations; ++g) {
                    coupled_row(RowType::VisStation, t, g, ix.q(s, k, t, g),
                                [&](int j) { return vis.w(s, t, j, k, g); });
                }
                coupled_row(RowType::VisSun, t, -1, ix.h(s, k, t),
                            [&](int j) { return vis.h(s, t, j, k); });
            }
        }
    }

    // One task per step.
    for (int s = stage_begin; s <= stage_end; ++s) {
        for (int k = 0; k < sats; ++k) {
            for (int t = 1; t <= steps; ++t) {
                Terms terms;
                for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(s, k, t, p), 1.0);
                for (int g = 0; g < stations; ++g) terms.emplace_back(ix.q(s, k, t, g), 1.0);
                terms.emplace_back(ix.h(s, k, t), 1.0);
                m.add_row({RowType::Exclusive, s, k, t, 0}, RowSense::LE, 1.0, terms);
            }
        }
    }

    // Data tracking: within each stage, across stage gaps, and headroom /
    // overdraw guards at every step.
    for (int s = stage_begin; s <= stage_end; ++s) {
        for (int k = 0; k < sats; ++k) {
            for (int t = 1; t < steps; ++t) {
                Terms terms{{ix.d(s, k, t + 1), 1.0}, {ix.d(s, k, t), -1.0}};
                for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(s, k, t, p), -c.d_obs_mb);
                for (int g = 0; g < stations; ++g) terms.emplace_back(ix.q(s, k, t, g), c.d_comm_mb);
                m.add_row({RowType::DataTrack, s, k, t, 0}, RowSense::EQ, 0.0, terms);
            }
            if (s < stage_end) {
                Terms terms{{ix.d(s + 1, k, 1), 1.0}, {ix.d(s, k, steps), -1.0}};
                for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(s, k, steps, p), -c.d_obs_mb);
                for (int g = 0; g < stations; ++g)
                    terms.emplace_back(ix.q(s, k, steps, g), c.d_comm_mb);
                m.add_row({RowType::DataGap, s, k, 0, 0}, RowSense::EQ, 0.0, terms);
            }
            for (int t = 1; t <= steps; ++t) {
                Terms cap{{ix.d(s, k, t), 1.0}};
                for (int p = 0; p < targets; ++p) cap.emplace_back(ix.y(s, k, t, p), c.d_obs_mb);
                m.add_row({RowType::DataCap, s, k, t, 0}, RowSense::LE, c.d_max_mb, cap);
                Terms floor{{ix.d(s, k, t), 1.0}};
                for (int g = 0; g < stations; ++g) floor.emplace_back(ix.q(s, k, t, g), -c.d_comm_mb);
                m.add_row({RowType::DataFloor, s, k, t, 0}, RowSense::GE, c.d_min_mb, floor);
            }
        }
    }

    // Battery: the entry level nets out the first maneuver's cost, tracking
    // mirrors the data rows plus charging and the housekeeping drain, and the
    // stage-gap rows post the next maneuver's cost.
    for (int k = 0; k < sats; ++k) {
        Terms terms{{ix.b(stage_begin, k, 1), 1.0}};
        if (c.b_recon_kj > 0.0) arcs_into(stage_begin, k, terms, c.b_recon_kj);
        m.add_row({RowType::BattInit, stage_begin, k, 0, 0}, RowSense::EQ, b1[k], terms);
        if (c.b_recon_kj > 0.0) {
            Terms fl;
            arcs_into(stage_begin, k, fl, c.b_recon_kj);
            m.add_row({RowType::BattInitFloor, stage_begin, k, 0, 0}, RowSense::LE,
                      b1[k] - c.b_min_kj, fl);
        }
    }
    for (int s = stage_begin; s <= stage_end; ++s) {
        for (int k = 0; k < sats; ++k) {
            for (int t = 1; t < steps; ++t) {
                Terms terms{{ix.b(s, k, t + 1), 1.0},
                            {ix.b(s, k, t), -1.0},
                            {ix.h(s, k, t), -c.b_charge_kj}};
                for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(s, k, t, p), c.b_obs_kj);
                for (int g = 0; g < stations; ++g) terms.emplace_back(ix.q(s, k, t, g), c.b_comm_kj);
                m.add_row({RowType::BattTrack, s, k, t, 0}, RowSense::EQ, -c.b_time_kj, terms);
            }
            if (s < stage_end) {
                Terms terms{{ix.b(s + 1, k, 1), 1.0},
                            {ix.b(s, k, steps), -1.0},
                            {ix.h(s, k, steps), -c.b_charge_kj}};
                for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(s, k, steps, p), c.b_obs_kj);
                for (int g = 0; g < stations; ++g)
                    terms.emplace_back(ix.q(s, k, steps, g), c.b_comm_kj);
                if (c.b_recon_kj > 0.0) arcs_into(s + 1, k, terms, c.b_recon_kj);
                m.add_row({RowType::BattGap, s, k, 0, 0}, RowSense::EQ, -c.b_time_kj, terms);
            }
            for (int t = 1; t <= steps; ++t) {
                Terms cap{{ix.b(s, k, t), 1.0}, {ix.h(s, k, t), c.b_charge_kj}};
                m.add_row({RowType::BattCap, s, k, t, 0}, RowSense::LE, c.b_max_kj, cap);
            }
            const int floor_last = s == stage_end ? steps : steps - 1;
            for (int t = 1; t <= floor_last; ++t) {
                Terms fl{{ix.b(s, k, t), 1.0}};
                for (int p = 0; p < targets; ++p) fl.emplace_back(ix.y(s, k, t, p), -c.b_obs_kj);
                for (int g = 0; g < stations; ++g) fl.emplace_back(ix.q(s, k, t, g), -c.b_comm_kj);
                m.add_row({RowType::BattFloor, s, k, t, 0}, RowSense::GE, c.b_min_kj + c.b_time_kj, fl);
            }
            if (s < stage_end) {
                Terms fl{{ix.b(s, k, steps), 1.0}};
                for (int p = 0; p < targets; ++p) fl.emplace_back(ix.y(s, k, steps, p), -c.b_obs_kj);
                for (int g = 0; g < stations; ++g)
                    fl.emplace_back(ix.q(s, k, steps, g), -c.b_comm_kj);
                if (c.b_recon_kj > 0.0) arcs_into(s + 1, k, fl, -c.b_recon_kj);
                m.add_row({RowType::BattGapFloor, s, k, 0, 0}, RowSense::GE,
                          c.b_min_kj + c.b_time_kj, fl);
            }
        }
    }

    return m;
}

} // namespace

CarryState initial_carry(const ScenarioInstance& inst) {
    CarryState carry;
    const int sats = inst.num_satellites();
    carry.residual_budget_mps.assign(sats, inst.constants.dv_budget_mps);
    carry.origin_slot.assign(sats, 0);
    carry.d1_mb.assign(sats, inst.constants.d_min_mb);
    carry.b1_kj.assign(sats, inst.constants.b_max_kj);
    carry.stage_cursor = 1;
    return carry;
}

MilpModel build_eossp(const ScenarioInstance& inst) {
    const TimeGrid& grid = inst.grid;
    const VisibilityTensors& vis = inst.visibility();
    const PhysicalConstants& c = inst.constants;
    const int sats = inst.num_satellites();
    const int steps = grid.total_steps;
    const int targets = inst.num_targets();
    const int stations = inst.num_stations();
    if (steps < 1) throw BuildError("empty time grid");

    MilpModel m;
    m.meta.formulation = Formulation::Eossp;
    m.meta.stage_begin = m.meta.stage_end = 1;
    m.meta.satellites = sats;
    m.meta.steps = steps;
    m.meta.targets = targets;
    m.meta.stations = stations;
    m.meta.d1_mb.assign(sats, c.d_min_mb);
    m.meta.b1_kj.assign(sats, c.b_max_kj);

    ModelIndex& ix = m.index;
    ix.stage_begin = 1;
    ix.targets = targets;
    ix.stations = stations;
    ix.y_base.assign(1, std::vector<int>(sats, 0));
    ix.q_base.assign(1, std::vector<int>(sats, 0));
    ix.h_base.assign(1, std::vector<int>(sats, 0));
    ix.d_base.assign(1, std::vector<int>(sats, 0));
    ix.b_base.assign(1, std::vector<int>(sats, 0));

    // Visibility enters as variable bounds: a task with no line of sight is
    // fixed to zero, everything else is a free binary.
    for (int k = 0; k < sats; ++k) {
        ix.y_base[0][k] = m.num_cols();
        for (int t = 1; t <= steps; ++t) {
            for (int p = 0; p < targets; ++p) {
                m.add_col({VarType::Observe, 1, k, t, p, 0}, 0.0,
                          vis.flat_v(t, k, p) ? 1.0 : 0.0, true, 1.0);
            }
        }
    }
    for (int k = 0; k < sats; ++k) {
        ix.q_base[0][k] = m.num_cols();
        for (int t = 1; t <= steps; ++t) {
            for (int g = 0; g < stations; ++g) {
                m.add_col({VarType::Downlink, 1, k, t, g, 0}, 0.0,
                          vis.flat_w(t, k, g) ? 1.0 : 0.0, true, c.downlink_weight);
            }
        }
    }
    for (int k = 0; k < sats; ++k) {
        ix.h_base[0][k] = m.num_cols();
        for (int t = 1; t <= steps; ++t) {
            m.add_col({VarType::Charge, 1, k, t, 0, 0}, 0.0, vis.flat_h(t, k) ? 1.0 : 0.0, true, 0.0);
        }
    }
    for (int k = 0; k < sats; ++k) {
        ix.d_base[0][k] = m.num_cols();
        for (int t = 1; t <= steps; ++t) {
            const bool pinned = t == 1; // begins at the minimum storage value
            m.add_col({VarType::Data, 1, k, t, 0, 0}, c.d_min_mb,
                      pinned ? c.d_min_mb : c.d_max_mb, false, 0.0);
        }
    }
    for (int k = 0; k < sats; ++k) {
        ix.b_base[0][k] = m.num_cols();
        for (int t = 1; t <= steps; ++t) {
            const bool pinned = t == 1;
            m.add_col({VarType::Battery, 1, k, t, 0, 0}, pinned ? c.b_max_kj : c.b_min_kj,
                      c.b_max_kj, false, 0.0);
        }
    }

    for (int k = 0; k < sats; ++k) {
        for (int t = 1; t <= steps; ++t) {
            Terms terms;
            for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(1, k, t, p), 1.0);
            for (int g = 0; g < stations; ++g) terms.emplace_back(ix.q(1, k, t, g), 1.0);
            terms.emplace_back(ix.h(1, k, t), 1.0);
            m.add_row({RowType::Exclusive, 1, k, t, 0}, RowSense::LE, 1.0, terms);
        }
    }
    for (int k = 0; k < sats; ++k) {
        for (int t = 1; t < steps; ++t) {
            Terms terms{{ix.d(1, k, t + 1), 1.0}, {ix.d(1, k, t), -1.0}};
            for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(1, k, t, p), -c.d_obs_mb);
            for (int g = 0; g < stations; ++g) terms.emplace_back(ix.q(1, k, t, g), c.d_comm_mb);
            m.add_row({RowType::DataTrack, 1, k, t, 0}, RowSense::EQ, 0.0, terms);
        }
        for (int t = 1; t <= steps; ++t) {
            Terms cap{{ix.d(1, k, t), 1.0}};
            for (int p = 0; p < targets; ++p) cap.emplace_back(ix.y(1, k, t, p), c.d_obs_mb);
            m.add_row({RowType::DataCap, 1, k, t, 0}, RowSense::LE, c.d_max_mb, cap);
            Terms floor{{ix.d(1, k, t), 1.0}};
            for (int g = 0; g < stations; ++g) floor.emplace_back(ix.q(1, k, t, g), -c.d_comm_mb);
            m.add_row({RowType::DataFloor, 1, k, t, 0}, RowSense::GE, c.d_min_mb, floor);
        }
    }
    for (int k = 0; k < sats; ++k) {
        for (int t = 1; t < steps; ++t) {
            Terms terms{{ix.b(1, k, t + 1), 1.0},
                        {ix.b(1, k, t), -1.0},
                        {ix.h(1, k, t), -c.b_charge_kj}};
            for (int p = 0; p < targets; ++p) terms.emplace_back(ix.y(1, k, t, p), c.b_obs_kj);
            for (int g = 0; g < stations; ++g) terms.emplace_back(ix.q(1, k, t, g), c.b_comm_kj);
            m.add_row({RowType::BattTrack, 1, k, t, 0}, RowSense::EQ, -c.b_time_kj, terms);
        }
        for (int t = 1; t <= steps; ++t) {
            Terms cap{{ix.b(1, k, t), 1.0}, {ix.h(1, k, t), c.b_charge_kj}};
            m.add_row({RowType::BattCap, 1, k, t, 0}, RowSense::LE, c.b_max_kj, cap);
            Terms fl{{ix.b(1, k, t), 1.0}};
            for (int p = 0; p < targets; ++p) fl.emplace_back(ix.y(1, k, t, p), -c.b_obs_kj);
            for (int g = 0; g < stations; ++g) fl.emplace_back(ix.q(1, k, t, g), -c.b_comm_kj);
            m.add_row({RowType::BattFloor, 1, k, t, 0}, RowSense::GE, c.b_min_kj + c.b_time_kj, fl);
        }
    }
    return m;
}

MilpModel build_reossp(const ScenarioInstance& inst) {
    const int sats = inst.num_satellites();
    CarryState carry = initial_carry(inst);
    MilpModel m = build_slot_resolved(inst, 1, inst.grid.stages, carry.origin_slot,
                                      carry.residual_budget_mps, carry.d1_mb, carry.b1_kj,
                                      Formulation::Reossp);
    if (sats == 0) throw BuildError("scenario has no satellites");
    return m;
}

MilpModel build_rhp_subproblem(const ScenarioInstance& inst, int control_stage, int lookahead,
                               const CarryState& carry) {
    const int stages = inst.grid.stages;
    const int sats = inst.num_satellites();
    if (lookahead < 0 || control_stage < 1 || control_stage + lookahead > stages) {
        throw BuildError("subproblem stage range [" + std::to_string(control_stage) + ", " +
                         std::to_string(control_stage + lookahead) + "] outside 1.." +
                         std::to_string(stages));
    }
    if (carry.stage_cursor != control_stage ||
        static_cast<int>(carry.origin_slot.size()) != sats ||
        static_cast<int>(carry.residual_budget_mps.size()) != sats ||
        static_cast<int>(carry.d1_mb.size()) != sats ||
        static_cast<int>(carry.b1_kj.size()) != sats) {
        throw BuildError("carry state inconsistent with the instance / control stage");
    }
    const SlotGrid& slots = inst.slot_grid();
    for (int k = 0; k < sats; ++k) {
        if (carry.origin_slot[k] < 0 || carry.origin_slot[k] >= slots.count(control_stage - 1, k)) {
            throw BuildError("carry origin slot out of range for satellite " + std::to_string(k + 1));
        }
        if (carry.residual_budget_mps[k] < 0.0) throw BuildError("carry budget negative");
    }
    return build_slot_resolved(inst, control_stage, control_stage + lookahead, carry.origin_slot,
                               carry.residual_budget_mps, carry.d1_mb, carry.b1_kj,
                               Formulation::Rhp);
}

CarryState update_carry_state(const ScenarioInstance& inst, const CarryState& carry,
                              const Schedule& schedule, int committed_stage) {
    const PhysicalConstants& c = inst.constants;
    const int sats = inst.num_satellites();
    if (committed_stage != carry.stage_cursor) {
        throw InternalError("carry update out of order: cursor " +
                            std::to_string(carry.stage_cursor) + ", committed " +
                            std::to_string(committed_stage));
    }
    if (committed_stage < schedule.stage_begin || committed_stage > schedule.stage_end) {
        throw InternalError("committed stage not covered by the schedule");
    }
    CarryState next = carry;
    for (int k = 0; k < sats; ++k) {
        const StageTasks& tasks = schedule.stage(k, committed_stage);
        const Maneuver* arc = nullptr;
        for (const Maneuver& mv : schedule.sats[k].maneuvers) {
            if (mv.stage == committed_stage) arc = &mv;
        }
        if (arc == nullptr) throw InternalError("committed stage has no maneuver record");
        next.residual_budget_mps[k] -= arc->dv_mps;
        if (next.residual_budget_mps[k] < -1e-9) {
            throw InternalError("residual budget negative after commit");
        }
        next.residual_budget_mps[k] = std::max(0.0, next.residual_budget_mps[k]);
        next.origin_slot[k] = arc->to_slot;

        const int obs = tasks.observations();
        const int down = tasks.downlinks();
        const int charges = tasks.charges();
        next.d1_mb[k] += c.d_obs_mb * obs - c.d_comm_mb * down;
        next.b1_kj[k] += c.b_charge_kj * charges - c.b_obs_kj * obs - c.b_comm_kj * down -
                         c.b_recon_kj - inst.grid.steps_per_stage * c.b_time_kj;
        const auto clamp = [](double v, double lo, double hi, const char* what) {
            if (v < lo - 1e-5 || v > hi + 1e-5) {
                throw InternalError(std::string("carry ") + what + " outside storage bounds");
            }
            return std::clamp(v, lo, hi);
        };
        next.d1_mb[k] = clamp(next.d1_mb[k], c.d_min_mb, c.d_max_mb, "data");
        next.b1_kj[k] = clamp(next.b1_kj[k], c.b_min_kj, c.b_max_kj, "battery");
    }
    next.stage_cursor = committed_stage + 1;
    return next;
}

std::vector<double> embed_schedule(const MilpModel& model, const Schedule& schedule) {
    std::vector<double> x(model.num_cols(), 0.0);
    const ModelIndex& ix = model.index;
    const ModelMeta& meta = model.meta;
    if (meta.formulation == Formulation::Eossp) {
        const int per_stage = schedule.steps_per_stage;
        for (int k = 0; k < meta.satellites; ++k) {
            for (int t = 1; t <= meta.steps; ++t) {
                const int s = (t - 1) / per_stage + 1;
                const int local = (t - 1) % per_stage + 1;
                const StageTasks& tasks = schedule.stage(k, s);
                const int p = tasks.observe_target[local - 1];
                if (p >= 0) x[ix.y(1, k, t, p)] = 1.0;
                const int g = tasks.downlink_station[local - 1];
                if (g >= 0) x[ix.q(1, k, t, g)] = 1.0;
                if (tasks.charging[local - 1]) x[ix.h(1, k, t)] = 1.0;
                x[ix.d(1, k, t)] = tasks.data_mb[local - 1];
                x[ix.b(1, k, t)] = tasks.battery_kj[local - 1];
            }
        }
        return x;
    }
    for (int k = 0; k < meta.satellites; ++k) {
        for (const Maneuver& mv : schedule.sats[k].maneuvers) {
            if (mv.stage < meta.stage_begin || mv.stage > meta.stage_end) continue;
            const int col = ix.x(mv.stage, k, mv.from_slot, mv.to_slot);
            if (col < 0) throw InternalError("schedule maneuver uses an arc absent from the model");
            x[col] = 1.0;
        }
        for (int s = meta.stage_begin; s <= meta.stage_end; ++s) {
            const StageTasks& tasks = schedule.stage(k, s);
            for (int t = 1; t <= meta.steps; ++t) {
                const int p = tasks.observe_target[t - 1];
                if (p >= 0) x[ix.y(s, k, t, p)] = 1.0;
                const int g = tasks.downlink_station[t - 1];
                if (g >= 0) x[ix.q(s, k, t, g)] = 1.0;
                if (tasks.charging[t - 1]) x[ix.h(s, k, t)] = 1.0;
                x[ix.d(s, k, t)] = tasks.data_mb[t - 1];
                x[ix.b(s, k, t)] = tasks.battery_kj[t - 1];
            }
        }
    }
    return x;
}

} // namespace reosched
