#pragma once

#include "specpower/types.hpp"

namespace specpower {
namespace metrics {

// Sentinel load level selecting the active-idle measurement.
inline constexpr double kIdleLevel = 0.0;

// ssj_ops / average power at one load level. Throws std::invalid_argument
// when the level is absent from the run.
double efficiency_at(const BenchmarkRun& run, double target_load);

// Sum of ssj_ops over the ten load levels divided by the total power across
// all eleven intervals (active idle contributes power but zero ops).
double overall_efficiency(const BenchmarkRun& run);

// Per-level efficiency scaled to the full-load efficiency.
double relative_efficiency(const BenchmarkRun& run, double target_load);

// Active idle power divided by full-load power.
double idle_fraction(const BenchmarkRun& run);

// Two-point line through (10, P10) and (20, P20) evaluated at load 0,
// i.e. 2*P10 - P20. May be <= 0 for steep slopes; callers flag that case.
double extrapolated_idle(const BenchmarkRun& run);

// Extrapolated idle divided by measured active idle power. 1 means no
// idle-specific power optimization.
double eiq(const BenchmarkRun& run);

// Average power at a level divided by the socket count; pass kIdleLevel for
// active idle.
double per_socket_power(const BenchmarkRun& run, double target_load);

// All derived quantities for one run.
RunMetrics compute(const BenchmarkRun& run);

}  // namespace metrics
}  // namespace specpower
