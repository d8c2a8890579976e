#include "prodplan/regime_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace prodplan {

void validate_sim_config(const SimConfig& config, const RegimeParameters& params)
{
    if (!(config.dt > 0.0)) {
        throw ValidationError("sim.dt must be > 0");
    }
    if (!(config.dt <= config.t_max)) {
        throw ValidationError("sim.t_max must be >= sim.dt");
    }
    if (!(std::abs(config.x0) < params.R)) {
        throw ValidationError("sim.x0 must satisfy |x0| < R");
    }
    if (!(params.a1 * config.dt < 1.0) || !(params.a2 * config.dt < 1.0)) {
        throw ValidationError("sim.dt too large: a_i * dt must be < 1");
    }
    if (config.n_paths < 1) {
        throw ValidationError("sim.n_paths must be >= 1");
    }
}

Regime step_regime(Regime current, double dt, double a1, double a2, double uniform_draw)
{
    const double rate = current == Regime::kOne ? a1 : a2;
    return uniform_draw < rate * dt ? other(current) : current;
}

double interpolate_rate(const PolicyResult& policy, double y, Regime regime, RateInterpolation method)
{
    const SolverGrid& grid = policy.grid;
    if (!(std::abs(y) <= grid.radius)) {
        throw std::domain_error("interpolate_rate requires |y| <= R");
    }
    const auto& p = regime == Regime::kOne ? policy.p1 : policy.p2;
    const std::size_t last = grid.size() - 1;
    const double pos = (y - grid[0]) / grid.dx;
    const auto lower = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(pos))), last);

    if (method == RateInterpolation::kNearest) {
        if (lower == last) {
            return p[last];
        }
        // Compare distances to the actual node coordinates so ties resolve
        // toward the lower index.
        const double d_lo = std::abs(y - grid[lower]);
        const double d_hi = std::abs(grid[lower + 1] - y);
        return d_hi < d_lo ? p[lower + 1] : p[lower];
    }
    if (lower == last) {
        return p[last];
    }
    const double w = (y - grid[lower]) / (grid[lower + 1] - grid[lower]);
    return (1.0 - w) * p[lower] + w * p[lower + 1];
}

namespace {

std::size_t step_count(const SimConfig& config)
{
    // Tolerate round-off in t_max / dt (e.g. 100 / 0.01).
    return static_cast<std::size_t>(std::ceil(config.t_max / config.dt - 1e-9));
}

} // namespace

Trajectory simulate_path(const PolicyResult& policy, const RegimeParameters& params, const SimConfig& config)
{
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    const std::size_t n_steps = step_count(config);
    const double sqrt_dt = std::sqrt(config.dt);
    Trajectory traj;
    traj.samples.reserve(std::min<std::size_t>(n_steps + 1, 1u << 16));

    Regime regime = config.initial_regime;
    double y = config.x0;
    traj.samples.push_back({0.0, y, regime});
    for (std::size_t k = 1; k <= n_steps; ++k) {
        regime = step_regime(regime, config.dt, params.a1, params.a2, uniform(rng));
        const double rate = interpolate_rate(policy, y, regime, config.interpolation);
        y += rate * config.dt + params.sigma(regime) * sqrt_dt * normal(rng);
        const double t = static_cast<double>(k) * config.dt;
        traj.samples.push_back({t, y, regime});
        if (std::abs(y) >= params.R) {
            traj.stopped = true;
            traj.stop_time = t;
            traj.stop_reason = StopReason::kBoundary;
            return traj;
        }
    }
    traj.stop_reason = StopReason::kHorizon;
    return traj;
}

EnsembleSummary ensemble_stats(const PolicyResult& policy, const RegimeParameters& params, const SimConfig& config,
                               std::size_t histogram_bins)
{
    EnsembleSummary s;
    const double R = params.R;
    s.final_state.counts.assign(histogram_bins, 0);
    for (std::size_t b = 0; b <= histogram_bins; ++b) {
        s.final_state.edges.push_back(-R + 2.0 * R * static_cast<double>(b) / static_cast<double>(histogram_bins));
    }

    double exit_sum = 0.0;
    double exit_sq = 0.0;
    std::size_t regime1 = 0;
    std::size_t stepped = 0;
    double abs_sum = 0.0;
    std::size_t sample_count = 0;

    SimConfig path_config = config;
    for (std::size_t k = 0; k < config.n_paths; ++k) {
        path_config.seed = config.seed + k;
        const Trajectory traj = simulate_path(policy, params, path_config);
        s.stop_reasons.push_back(traj.stop_reason);
        s.final_times.push_back(traj.samples.back().t);
        if (traj.stop_reason == StopReason::kBoundary) {
            ++s.boundary_exits;
            exit_sum += *traj.stop_time;
            exit_sq += *traj.stop_time * *traj.stop_time;
        }
        for (std::size_t i = 0; i < traj.samples.size(); ++i) {
            abs_sum += std::abs(traj.samples[i].y);
            ++sample_count;
            if (i > 0) {
                ++stepped;
                regime1 += traj.samples[i].regime == Regime::kOne ? 1 : 0;
            }
        }
        // Exits beyond +-R land in the outermost bins.
        const double yf = std::clamp(traj.samples.back().y, -R, R);
        auto bin = static_cast<std::size_t>((yf + R) / (2.0 * R) * static_cast<double>(histogram_bins));
        ++s.final_state.counts[std::min(bin, histogram_bins - 1)];
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto n_exit = static_cast<double>(s.boundary_exits);
    s.mean_exit_time = s.boundary_exits > 0 ? exit_sum / n_exit : nan;
    s.exit_time_variance =
        s.boundary_exits > 1 ? (exit_sq - exit_sum * exit_sum / n_exit) / (n_exit - 1.0) : nan;
    s.occupation1 = stepped > 0 ? static_cast<double>(regime1) / static_cast<double>(stepped) : nan;
    s.occupation2 = stepped > 0 ? 1.0 - s.occupation1 : nan;
    s.mean_abs_y = abs_sum / static_cast<double>(sample_count);
    return s;
}

ChainStats simulate_chain(double a1, double a2, double dt, std::size_t n_steps, std::uint64_t seed, Regime initial)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    ChainStats s;
    Regime regime = initial;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const Regime next = step_regime(regime, dt, a1, a2, uniform(rng));
        if (regime == Regime::kOne) {
            ++s.steps_in_regime1;
            s.switches_from_regime1 += next == Regime::kTwo ? 1 : 0;
        }
        regime = next;
    }
    s.steps = n_steps;
    s.occupation1 = n_steps > 0 ? static_cast<double>(s.steps_in_regime1) / static_cast<double>(n_steps) : 0.0;
    return s;
}

PolicyResult zero_policy(const SolverGrid& grid)
{
    PolicyResult p;
    p.grid = grid;
    const std::size_t n = grid.size();
    p.u1.assign(n, 1.0);
    p.u2.assign(n, 1.0);
    for (auto* v : {&p.z1, &p.z2, &p.p1, &p.p2, &p.B1, &p.B2}) {
        v->assign(n, 0.0);
    }
    return p;
}

} // namespace prodplan
