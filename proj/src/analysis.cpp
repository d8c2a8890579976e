#include "prodplan/analysis.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace prodplan {

std::string to_string(ScenarioId id)
{
    switch (id) {
    case ScenarioId::kS1: return "s1";
    case ScenarioId::kS2: return "s2";
    case ScenarioId::kS3: return "s3";
    case ScenarioId::kS4: return "s4";
    }
    return "?";
}

ScenarioId parse_scenario(const std::string& name)
{
    for (auto id : {ScenarioId::kS1, ScenarioId::kS2, ScenarioId::kS3, ScenarioId::kS4}) {
        if (to_string(id) == name) {
            return id;
        }
    }
    throw ValidationError("unknown scenario: " + name);
}

ScenarioSpec paper_scenario(ScenarioId id)
{
    ScenarioSpec s;
    s.id = id;
    auto& p = s.params;
    switch (id) {
    case ScenarioId::kS1:
        p = {0.6, 0.5, 0.3, 0.3, 1.0, 0.7, 1.0, 1.0, 20.0};
        break;
    case ScenarioId::kS2:
        p = {0.6, 0.5, 0.3, 0.7, 1.0, 1.0, 1.0, 1.0, 20.0};
        break;
    case ScenarioId::kS3:
        p = {0.6, 0.9, 0.3, 0.3, 1.0, 1.0, 5.0, 1.0, 20.0};
        break;
    case ScenarioId::kS4:
        p = {0.6, 0.9, 0.3, 0.8, 1.0, 0.3, 5.0, 1.0, 10.0};
        break;
    }
    s.costs.c1 = p.M1;
    s.costs.c2 = p.M2;
    return s;
}

namespace {

void require(bool condition, ScenarioId id, const char* what)
{
    if (!condition) {
        throw ValidationError("scenario " + to_string(id) + " requires " + what);
    }
}

} // namespace

void validate_hypotheses(const ScenarioSpec& spec)
{
    const auto& p = spec.params;
    const auto& c = spec.costs;
    switch (spec.id) {
    case ScenarioId::kS1:
        require(p.alpha1 == p.alpha2, spec.id, "alpha1 == alpha2");
        require(c.c1 == c.c2, spec.id, "c1 == c2");
        require(p.sigma1 > p.sigma2, spec.id, "sigma1 > sigma2");
        break;
    case ScenarioId::kS2:
        require(p.sigma1 == p.sigma2, spec.id, "sigma1 == sigma2");
        require(c.c1 == c.c2, spec.id, "c1 == c2");
        require(p.alpha1 < p.alpha2, spec.id, "alpha1 < alpha2");
        break;
    case ScenarioId::kS3:
        require(p.alpha1 == p.alpha2, spec.id, "alpha1 == alpha2");
        require(p.sigma1 == p.sigma2, spec.id, "sigma1 == sigma2");
        require(c.c1 > c.c2, spec.id, "c1 > c2");
        break;
    case ScenarioId::kS4:
        require(p.sigma1 > p.sigma2, spec.id, "sigma1 > sigma2");
        require(p.alpha1 < p.alpha2, spec.id, "alpha1 < alpha2");
        require(c.c1 > c.c2, spec.id, "c1 > c2");
        break;
    }
}

DominanceReport pointwise_dominance(const std::vector<double>& upper, const std::vector<double>& lower,
                                    double tolerance)
{
    if (upper.size() != lower.size()) {
        throw std::invalid_argument("dominance check needs fields on the same grid");
    }
    DominanceReport r;
    r.tolerance = tolerance;
    r.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < upper.size(); ++i) {
        const double gap = lower[i] - upper[i];
        r.max_violation = std::max(r.max_violation, gap);
        r.violating_nodes += gap > tolerance ? 1 : 0;
    }
    r.pass = r.max_violation <= tolerance;
    return r;
}

SensitivityResult run_sensitivity_scenario(const ScenarioSpec& spec, const PipelineOptions& options,
                                           double tolerance)
{
    if (spec.id == ScenarioId::kS4) {
        throw ValidationError("sensitivity scenarios are s1, s2 and s3; use the comparison for s4");
    }
    validate_hypotheses(spec);
    SensitivityResult out;
    out.run = solve_policy(spec.params, spec.costs, options);
    out.dominance = pointwise_dominance(out.run.policy.z1, out.run.policy.z2, tolerance);
    return out;
}

RegimeSlice slice_of(const RegimeParameters& params, const HoldingCostSpec& costs, Regime regime)
{
    return {params.alpha(regime), params.sigma(regime), params.M(regime), costs.coefficient(regime), params.R};
}

SingleRegimeResult single_regime_solve(const RegimeSlice& slice, const PipelineOptions& options)
{
    RegimeParameters p;
    p.a1 = p.a2 = 0.0;
    p.alpha1 = p.alpha2 = slice.alpha;
    p.sigma1 = p.sigma2 = slice.sigma;
    p.M1 = p.M2 = slice.M;
    p.R = slice.R;
    HoldingCostSpec costs;
    costs.c1 = costs.c2 = slice.c;

    SingleRegimeResult out;
    out.run = solve_policy(p, costs, options);
    out.z = out.run.policy.z1;
    return out;
}

ComparisonReport regime_chain(const RegimeParameters& params, const HoldingCostSpec& costs,
                              const PipelineOptions& options, double tolerance)
{
    ComparisonReport r;
    r.coupled = solve_policy(params, costs, options);
    r.z1 = r.coupled.policy.z1;
    r.z2 = r.coupled.policy.z2;
    r.z_static1 = single_regime_solve(slice_of(params, costs, Regime::kOne), options).z;
    r.z_static2 = single_regime_solve(slice_of(params, costs, Regime::kTwo), options).z;
    r.static1_over_z1 = pointwise_dominance(r.z_static1, r.z1, tolerance);
    r.z1_over_z2 = pointwise_dominance(r.z1, r.z2, tolerance);
    r.z2_over_static2 = pointwise_dominance(r.z2, r.z_static2, tolerance);
    r.pass = r.static1_over_z1.pass && r.z1_over_z2.pass && r.z2_over_static2.pass;
    return r;
}

ComparisonReport regime_comparison(const ScenarioSpec& spec, const PipelineOptions& options, double tolerance)
{
    if (spec.id != ScenarioId::kS4) {
        throw ValidationError("the regime comparison runs on scenario s4");
    }
    validate_hypotheses(spec);
    return regime_chain(spec.params, spec.costs, options, tolerance);
}

} // namespace prodplan
