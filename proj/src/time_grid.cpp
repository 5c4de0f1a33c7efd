#include "reosched/time_grid.hpp"

#include <cmath>
#include <cstdio>

#include "reosched/errors.hpp"

namespace reosched {

double UtcTime::julian_date() const {
    // Fliegel & Van Flandern day-number algorithm, valid for Gregorian dates.
    const int a = (14 - month) / 12;
    const int y = year + 4800 - a;
    const int m = month + 12 * a - 3;
    const long jdn = day + (153 * m + 2) / 5 + 365L * y + y / 4 - y / 100 + y / 400 - 32045;
    const double day_fraction = (hour - 12) / 24.0 + minute / 1440.0 + second / 86400.0;
    return static_cast<double>(jdn) + day_fraction;
}

UtcTime UtcTime::parse_iso8601(const std::string& text) {
    UtcTime t;
    char tail[8] = {0};
    const int n = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%lf%1s",
                              &t.year, &t.month, &t.day, &t.hour, &t.minute, &t.second, tail);
    if (n != 7 || tail[0] != 'Z') {
        throw IngestionError("invalid ISO-8601 UTC instant: '" + text + "' (expected YYYY-MM-DDTHH:MM:SSZ)");
    }
    if (t.month < 1 || t.month > 12 || t.day < 1 || t.day > 31 ||
        t.hour < 0 || t.hour > 23 || t.minute < 0 || t.minute > 59 ||
        t.second < 0.0 || t.second >= 61.0) {
        throw IngestionError("out-of-range calendar field in '" + text + "'");
    }
    return t;
}

std::string UtcTime::to_iso8601() const {
    char buf[40];
    const int whole = static_cast<int>(second);
    if (second == whole) {
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                      year, month, day, hour, minute, whole);
    } else {
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%09.6fZ",
                      year, month, day, hour, minute, second);
    }
    return buf;
}

TimeGrid TimeGrid::make(const UtcTime& epoch, double dt_s, double horizon_s, int stages) {
    if (dt_s <= 0.0) throw ConfigError("time step must be positive");
    if (stages < 1) throw ConfigError("stage count must be at least 1");
    const double steps = horizon_s / dt_s;
    const double rounded = std::round(steps);
    if (rounded < 1.0 || std::fabs(steps - rounded) > 1e-9 * std::fmax(1.0, rounded)) {
        throw ConfigError("horizon is not an integer number of time steps");
    }
    const int total = static_cast<int>(rounded);
    if (total % stages != 0) {
        throw ConfigError("total steps (" + std::to_string(total) + ") not divisible by stages (" +
                          std::to_string(stages) + ")");
    }
    TimeGrid g;
    g.epoch = epoch;
    g.dt_s = dt_s;
    g.horizon_s = horizon_s;
    g.total_steps = total;
    g.stages = stages;
    g.steps_per_stage = total / stages;
    return g;
}

} // namespace reosched
