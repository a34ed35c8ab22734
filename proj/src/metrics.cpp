#include "specpower/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace specpower {
namespace metrics {
namespace {

const LoadLevelMeasurement& require_level(const BenchmarkRun& run, double target_load) {
    const LoadLevelMeasurement* level = run.level_at(target_load);
    if (!level) {
        throw std::invalid_argument("run " + run.result_id + " has no level " +
                                    std::to_string(target_load));
    }
    return *level;
}

}  // namespace

double efficiency_at(const BenchmarkRun& run, double target_load) {
    const auto& level = require_level(run, target_load);
    return level.ssj_ops / level.avg_power_w;
}

double overall_efficiency(const BenchmarkRun& run) {
    double total_ops = 0.0;
    double total_power = run.idle_power_w;
    for (const auto& level : run.levels) {
        total_ops += level.ssj_ops;
        total_power += level.avg_power_w;
    }
    return total_ops / total_power;
}

double relative_efficiency(const BenchmarkRun& run, double target_load) {
    return efficiency_at(run, target_load) / efficiency_at(run, 1.0);
}

double idle_fraction(const BenchmarkRun& run) {
    return run.idle_power_w / require_level(run, 1.0).avg_power_w;
}

double extrapolated_idle(const BenchmarkRun& run) {
    double p10 = require_level(run, 0.1).avg_power_w;
    double p20 = require_level(run, 0.2).avg_power_w;
    return 2.0 * p10 - p20;
}

double eiq(const BenchmarkRun& run) {
    return extrapolated_idle(run) / run.idle_power_w;
}

double per_socket_power(const BenchmarkRun& run, double target_load) {
    if (run.sockets < 1) {
        throw std::invalid_argument("run " + run.result_id + " has no socket count");
    }
    double power = target_load == kIdleLevel ? run.idle_power_w
                                             : require_level(run, target_load).avg_power_w;
    return power / run.sockets;
}

RunMetrics compute(const BenchmarkRun& run) {
    RunMetrics m;
    m.result_id = run.result_id;
    for (const auto& level : run.levels) {
        m.efficiency_per_level[level.target_load] = efficiency_at(run, level.target_load);
        m.relative_efficiency[level.target_load] = relative_efficiency(run, level.target_load);
        m.per_socket_power[level.target_load] = per_socket_power(run, level.target_load);
    }
    m.overall_efficiency = overall_efficiency(run);
    m.idle_fraction = idle_fraction(run);
    m.idle_per_socket_power = per_socket_power(run, kIdleLevel);
    m.extrapolated_idle_w = extrapolated_idle(run);
    m.extrapolated_idle_nonpositive = m.extrapolated_idle_w <= 0.0;
    m.eiq = eiq(run);
    m.eiq_pathological = m.extrapolated_idle_nonpositive;
    return m;
}

}  // namespace metrics
}  // namespace specpower
