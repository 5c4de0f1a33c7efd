#include "reosched/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "reosched/errors.hpp"

namespace reosched {

namespace {

int digits_for(int max_value) {
    int d = 1, v = 9;
    while (max_value > v) {
        ++d;
        v = v * 10 + 9;
    }
    return d;
}

void append_field(std::string& out, char tag, int value_1based, int width) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "_%c%0*d", tag, width, value_1based);
    out += buf;
}

} // namespace

std::string var_type_prefix(VarType t) {
    switch (t) {
        case VarType::Maneuver: return "x";
        case VarType::Observe: return "y";
        case VarType::Downlink: return "q";
        case VarType::Charge: return "h";
        case VarType::Data: return "d";
        case VarType::Battery: return "b";
    }
    return "?";
}

int MilpModel::num_binaries() const {
    int n = 0;
    for (std::uint8_t b : binary) n += b;
    return n;
}

std::string MilpModel::col_name(int col) const {
    if (!parsed_names.empty()) return parsed_names[col];
    const VarKey& k = keys[col];
    const int sw = digits_for(meta.stage_end);
    const int kw = digits_for(meta.satellites);
    const int tw = digits_for(meta.steps);
    std::string name = var_type_prefix(k.type);
    append_field(name, 's', k.stage, sw);
    append_field(name, 'k', k.sat + 1, kw);
    switch (k.type) {
        case VarType::Maneuver:
            append_field(name, 'i', k.a + 1, digits_for(meta.max_slots));
            append_field(name, 'j', k.b + 1, digits_for(meta.max_slots));
            break;
        case VarType::Observe:
            append_field(name, 't', k.t, tw);
            append_field(name, 'p', k.a + 1, digits_for(meta.targets));
            break;
        case VarType::Downlink:
            append_field(name, 't', k.t, tw);
            append_field(name, 'g', k.a + 1, digits_for(meta.stations));
            break;
        default:
            append_field(name, 't', k.t, tw);
            break;
    }
    return name;
}

std::string MilpModel::row_name(int row) const {
    if (!parsed_names.empty()) return "r" + std::to_string(row);
    static const char* names[] = {
        "flow_init", "flow_cons", "budget", "vis_tgt", "vis_sta", "vis_sun", "excl",
        "d_track", "d_gap", "d_cap", "d_floor", "b_init", "b_track", "b_gap",
        "b_cap", "b_floor", "b_gapfloor", "b_initfloor"};
    const RowKey& k = row_keys[row];
    const int sw = digits_for(meta.stage_end);
    const int kw = digits_for(meta.satellites);
    const int tw = digits_for(meta.steps);
    std::string name = names[static_cast<int>(k.type)];
    append_field(name, 's', k.stage, sw);
    append_field(name, 'k', k.sat + 1, kw);
    if (k.t > 0) append_field(name, 't', k.t, tw);
    if (k.a > 0) append_field(name, 'a', k.a, digits_for(std::max(k.a, meta.max_slots)));
    return name;
}

int MilpModel::add_col(const VarKey& key, double lb, double ub, bool is_binary, double obj) {
    lower.push_back(lb);
    upper.push_back(ub);
    objective.push_back(obj);
    binary.push_back(is_binary ? 1 : 0);
    keys.push_back(key);
    return num_cols() - 1;
}

void MilpModel::add_row(const RowKey& key, RowSense s, double rhs_value,
                        const std::vector<std::pair<int, double>>& terms) {
    for (const auto& [col, coef] : terms) {
        if (col < 0 || col >= num_cols()) throw InternalError("row term references unknown column");
        col_index.push_back(col);
        value.push_back(coef);
    }
    row_start.push_back(static_cast<int>(col_index.size()));
    sense.push_back(s);
    rhs.push_back(rhs_value);
    row_keys.push_back(key);
}

double MilpModel::objective_value(const std::vector<double>& x) const {
    double z = 0.0;
    for (int c = 0; c < num_cols(); ++c) z += objective[c] * x[c];
    return z;
}

bool MilpModel::integral_objective() const {
    for (double c : objective) {
        if (std::fabs(c - std::round(c)) > 1e-12) return false;
    }
    return true;
}

} // namespace reosched
