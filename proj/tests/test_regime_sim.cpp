#include "prodplan/regime_sim.hpp"

#include "prodplan/pipeline.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace prodplan;

namespace {

RegimeParameters brownian(double sigma, double R)
{
    return {0.0, 0.0, 0.3, 0.3, sigma, sigma, 1.0, 1.0, R};
}

PolicyResult ramp_policy(double R, std::size_t n)
{
    PolicyResult p = zero_policy(build_grid(R, n));
    for (std::size_t i = 0; i < n; ++i) {
        p.p1[i] = static_cast<double>(i);
        p.p2[i] = -static_cast<double>(i);
    }
    return p;
}

} // namespace

TEST_CASE("regime step rule")
{
    CHECK(step_regime(Regime::kOne, 0.01, 0.6, 0.5, 0.005) == Regime::kTwo);
    CHECK(step_regime(Regime::kOne, 0.01, 0.6, 0.5, 0.0061) == Regime::kOne);
    CHECK(step_regime(Regime::kTwo, 0.01, 0.6, 0.5, 0.0049) == Regime::kOne);
    CHECK(step_regime(Regime::kTwo, 0.01, 0.6, 0.5, 0.0051) == Regime::kTwo);
    for (double d : {0.0, 0.3, 0.999}) {
        CHECK(step_regime(Regime::kOne, 0.01, 0.0, 0.5, d) == Regime::kOne);
    }
}

TEST_CASE("nearest-node rate lookup")
{
    // Nodes at -2, -1, 0, 1, 2.
    const PolicyResult p = ramp_policy(2.0, 5);
    CHECK(interpolate_rate(p, -2.0, Regime::kOne) == 0.0);
    CHECK(interpolate_rate(p, 1.0, Regime::kOne) == 3.0);
    CHECK(interpolate_rate(p, 2.0, Regime::kTwo) == -4.0);
    CHECK(interpolate_rate(p, 0.4, Regime::kOne) == 2.0);
    CHECK(interpolate_rate(p, 0.6, Regime::kOne) == 3.0);
    CHECK(interpolate_rate(p, 0.5, Regime::kOne) == 2.0);   // tie -> lower index
    CHECK(interpolate_rate(p, -1.5, Regime::kTwo) == -0.0);  // tie -> node 0
    CHECK(interpolate_rate(p, 0.5, Regime::kOne, RateInterpolation::kLinear) == 2.5);
    CHECK_THROWS_AS(interpolate_rate(p, 2.0001, Regime::kOne), std::domain_error);
    const PolicyResult z = zero_policy(build_grid(5.0, 11));
    CHECK(interpolate_rate(z, 1.234, Regime::kTwo) == 0.0);
}

TEST_CASE("no noise and no drift keeps the path at zero")
{
    const RegimeParameters p = brownian(0.0, 10.0);
    SimConfig c;
    c.t_max = 5.0;
    const Trajectory t = simulate_path(zero_policy(build_grid(10.0, 21)), p, c);
    CHECK_FALSE(t.stopped);
    CHECK(t.stop_reason == StopReason::kHorizon);
    CHECK_FALSE(t.stop_time.has_value());
    CHECK(t.samples.size() == 501);
    for (const auto& s : t.samples) {
        CHECK(s.y == 0.0);
    }
    CHECK(t.samples.back().t == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("fixed seed gives identical trajectories; times advance by dt")
{
    const auto s = testing::scenario(ScenarioId::kS1);
    const PolicyResult pol = solve_policy(s.params, s.costs).policy;
    SimConfig c;
    c.seed = 42;
    const Trajectory a = simulate_path(pol, s.params, c);
    const Trajectory b = simulate_path(pol, s.params, c);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].t == b.samples[i].t);
        CHECK(a.samples[i].y == b.samples[i].y);
        CHECK(a.samples[i].regime == b.samples[i].regime);
        CHECK(a.samples[i].t == static_cast<double>(i) * c.dt);
    }
    c.seed = 43;
    const Trajectory d = simulate_path(pol, s.params, c);
    CHECK(d.samples[1].y != a.samples[1].y);
}

TEST_CASE("boundary stop is the first sample outside")
{
    const RegimeParameters p = brownian(1.0, 2.0);
    SimConfig c;
    c.t_max = 1000.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        c.seed = seed;
        const Trajectory t = simulate_path(zero_policy(build_grid(2.0, 21)), p, c);
        REQUIRE(t.stopped);
        CHECK(t.stop_reason == StopReason::kBoundary);
        CHECK(std::abs(t.samples.back().y) >= 2.0);
        CHECK(*t.stop_time == t.samples.back().t);
        for (std::size_t i = 0; i + 1 < t.samples.size(); ++i) {
            CHECK(std::abs(t.samples[i].y) < 2.0);
        }
    }
}

TEST_CASE("chain statistics")
{
    const ChainStats long_run = simulate_chain(0.6, 0.5, 0.01, 1000000, 7);
    CHECK(std::abs(long_run.occupation1 - 5.0 / 11.0) <= 0.02);

    // Switch frequency out of regime 1 is binomial with p = a1 dt. Each run
    // exceeds 3 standard errors with probability ~0.3%, so one outlier in
    // twenty is tolerated; the pooled estimate must sit inside 3 SE.
    std::size_t outliers = 0;
    double pooled_switches = 0, pooled_n = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ChainStats st = simulate_chain(0.6, 0.5, 0.01, 100000, seed);
        const double n = static_cast<double>(st.steps_in_regime1);
        const double freq = static_cast<double>(st.switches_from_regime1) / n;
        outliers += std::abs(freq - 0.006) > 3 * std::sqrt(0.006 * 0.994 / n) ? 1 : 0;
        pooled_switches += static_cast<double>(st.switches_from_regime1);
        pooled_n += n;
    }
    CHECK(outliers <= 1);
    CHECK(std::abs(pooled_switches / pooled_n - 0.006) <= 3 * std::sqrt(0.006 * 0.994 / pooled_n));

    const ChainStats absorbing = simulate_chain(0.0, 0.5, 0.01, 1000, 3);
    CHECK(absorbing.occupation1 == 1.0);
}

TEST_CASE("uncontrolled increments have the diffusion moments")
{
    const double sigma = 1.3, dt = 0.01;
    const RegimeParameters p = brownian(sigma, 1e9);
    SimConfig c;
    c.dt = dt;
    c.t_max = 1000.0;
    c.seed = 5;
    const Trajectory t = simulate_path(zero_policy(build_grid(1e9, 3)), p, c);
    REQUIRE(t.samples.size() == 100001);
    double sum = 0, sq = 0;
    const double n = 100000;
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
        const double inc = t.samples[i].y - t.samples[i - 1].y;
        sum += inc;
        sq += inc * inc;
    }
    const double mean = sum / n;
    const double var = (sq - n * mean * mean) / (n - 1);
    CHECK(std::abs(mean) <= 3 * sigma * std::sqrt(dt) / std::sqrt(n));
    CHECK(std::abs(var / (sigma * sigma * dt) - 1.0) <= 0.05);
}

TEST_CASE("Brownian exit time from [-10, 10]")
{
    // E[tau] = (R^2 - x0^2) / sigma^2 = 100.
    const RegimeParameters p = brownian(1.0, 10.0);
    SimConfig c;
    c.t_max = 2000.0;
    c.n_paths = 2000;
    c.seed = 2024;
    const EnsembleSummary s = ensemble_stats(zero_policy(build_grid(10.0, 21)), p, c);
    CHECK(s.boundary_exits == 2000);
    CHECK(std::abs(s.mean_exit_time - 100.0) <= 10.0);
    // Var[tau] = 2 R^4 / (3 sigma^4) for x0 = 0.
    CHECK(std::abs(s.exit_time_variance / (2.0 * 10000.0 / 3.0) - 1.0) <= 0.25);
}

TEST_CASE("ensemble edge cases")
{
    const auto s = testing::scenario(ScenarioId::kS1);
    const PolicyResult pol = zero_policy(build_grid(s.params.R, 11));
    SimConfig c;
    c.t_max = 0.05;
    c.n_paths = 30;
    const EnsembleSummary e = ensemble_stats(pol, s.params, c);
    CHECK(e.boundary_exits == 0);
    CHECK(std::isnan(e.mean_exit_time));
    for (auto r : e.stop_reasons) {
        CHECK(r == StopReason::kHorizon);
    }
    std::size_t total = 0;
    for (auto k : e.final_state.counts) {
        total += k;
    }
    CHECK(total == 30);
    CHECK(e.occupation1 + e.occupation2 == doctest::Approx(1.0));

    c.n_paths = 1;
    c.t_max = 100.0;
    c.seed = 9;
    const EnsembleSummary one = ensemble_stats(pol, s.params, c);
    const Trajectory t = simulate_path(pol, s.params, c);
    CHECK(one.final_times[0] == t.samples.back().t);
    CHECK(one.stop_reasons[0] == t.stop_reason);
}

TEST_CASE("optimal feedback pulls inventory toward zero")
{
    const auto s = testing::scenario(ScenarioId::kS1);
    const PolicyResult controlled = solve_policy(s.params, s.costs).policy;
    const PolicyResult uncontrolled = zero_policy(controlled.grid);
    SimConfig c;
    c.t_max = 50.0;
    c.n_paths = 100;
    c.seed = 100;
    const double with = ensemble_stats(controlled, s.params, c).mean_abs_y;
    const double without = ensemble_stats(uncontrolled, s.params, c).mean_abs_y;
    CHECK(with < without);
}

TEST_CASE("simulation settings are validated")
{
    const auto p = testing::scenario(ScenarioId::kS1).params;
    SimConfig c;
    CHECK_NOTHROW(validate_sim_config(c, p));
    c.x0 = 20.0;
    CHECK_THROWS_AS(validate_sim_config(c, p), ValidationError);
    c = {};
    c.dt = 2.0;
    CHECK_THROWS_WITH_AS(validate_sim_config(c, p), "sim.dt too large: a_i * dt must be < 1", ValidationError);
    c = {};
    c.dt = 0.0;
    CHECK_THROWS_AS(validate_sim_config(c, p), ValidationError);
    c = {};
    c.n_paths = 0;
    CHECK_THROWS_AS(validate_sim_config(c, p), ValidationError);
}
