#ifndef PRODPLAN_REGIME_SIM_HPP
#define PRODPLAN_REGIME_SIM_HPP

#include "prodplan/model_types.hpp"
#include "prodplan/value_recovery.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace prodplan {

enum class RateInterpolation {
    kNearest,  ///< value at the closest node, ties to the lower index
    kLinear
};

struct SimConfig {
    double dt = 0.01;
    double t_max = 100.0;
    double x0 = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_paths = 1;
    RateInterpolation interpolation = RateInterpolation::kNearest;
    Regime initial_regime = Regime::kOne;

    bool operator==(const SimConfig&) const = default;
};

/// Throws ValidationError unless 0 < dt <= t_max, |x0| < R, a_i dt < 1 and
/// n_paths >= 1.
void validate_sim_config(const SimConfig& config, const RegimeParameters& params);

/// Switches 1 -> 2 iff draw < a1 dt and 2 -> 1 iff draw < a2 dt.
Regime step_regime(Regime current, double dt, double a1, double a2, double uniform_draw);

/// p1 or p2 at inventory y. Throws std::domain_error for |y| > R.
double interpolate_rate(const PolicyResult& policy, double y, Regime regime,
                        RateInterpolation method = RateInterpolation::kNearest);

enum class StopReason { kBoundary, kHorizon };

struct TrajectorySample {
    double t;
    double y;
    Regime regime;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  ///< first sample is (0, x0, initial regime)
    bool stopped = false;                   ///< true when the path reached |y| >= R
    std::optional<double> stop_time;
    StopReason stop_reason = StopReason::kHorizon;
};

/// Euler-Maruyama with regime switching. Each step draws one uniform for the
/// chain, then one standard normal for
///   y <- y + p(y, regime) dt + sigma_regime sqrt(dt) xi.
/// The generator is std::mt19937_64 seeded with config.seed.
Trajectory simulate_path(const PolicyResult& policy, const RegimeParameters& params, const SimConfig& config);

struct Histogram {
    std::vector<double> edges;  ///< bins + 1 edges spanning [-R, R]
    std::vector<std::size_t> counts;
};

struct EnsembleSummary {
    std::vector<StopReason> stop_reasons;
    std::vector<double> final_times;  ///< time of the last sample per path
    std::size_t boundary_exits = 0;
    double mean_exit_time = 0.0;      ///< NaN when no path exits
    double exit_time_variance = 0.0;  ///< unbiased; NaN with fewer than two exits
    double occupation1 = 0.0;         ///< share of post-step samples in regime 1
    double occupation2 = 0.0;
    double mean_abs_y = 0.0;          ///< mean |y| pooled over all samples
    Histogram final_state;
};

/// Runs config.n_paths paths; path k uses seed config.seed + k. Aggregates
/// are accumulated in path order.
EnsembleSummary ensemble_stats(const PolicyResult& policy, const RegimeParameters& params, const SimConfig& config,
                               std::size_t histogram_bins = 20);

struct ChainStats {
    std::size_t steps = 0;
    std::size_t steps_in_regime1 = 0;
    std::size_t switches_from_regime1 = 0;
    double occupation1 = 0.0;
};

/// The regime chain alone, with the same draw rule as simulate_path.
ChainStats simulate_chain(double a1, double a2, double dt, std::size_t n_steps, std::uint64_t seed,
                          Regime initial = Regime::kOne);

/// Policy with all-zero fields on `grid`, for uncontrolled runs.
PolicyResult zero_policy(const SolverGrid& grid);

} // namespace prodplan

#endif
