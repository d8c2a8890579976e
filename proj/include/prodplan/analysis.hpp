#ifndef PRODPLAN_ANALYSIS_HPP
#define PRODPLAN_ANALYSIS_HPP

#include "prodplan/model_types.hpp"
#include "prodplan/pipeline.hpp"

#include <string>
#include <vector>

namespace prodplan {

enum class ScenarioId { kS1, kS2, kS3, kS4 };

std::string to_string(ScenarioId id);
/// "s1".."s4"; throws ValidationError otherwise.
ScenarioId parse_scenario(const std::string& name);

struct ScenarioSpec {
    ScenarioId id = ScenarioId::kS1;
    RegimeParameters params;
    HoldingCostSpec costs;
};

/// The four published data sets, with f_i = M_i x^2.
ScenarioSpec paper_scenario(ScenarioId id);

/// Checks the parameter ordering each scenario is meant to illustrate:
///   s1: alpha1 == alpha2, c1 == c2, sigma1 > sigma2
///   s2: sigma1 == sigma2, c1 == c2, alpha1 < alpha2
///   s3: alpha1 == alpha2, sigma1 == sigma2, c1 > c2
///   s4: sigma1 > sigma2, alpha1 < alpha2, c1 > c2
/// Throws ValidationError naming the first failed condition.
void validate_hypotheses(const ScenarioSpec& spec);

struct DominanceReport {
    double max_violation = 0.0;  ///< max_i (lower[i] - upper[i])
    std::size_t violating_nodes = 0;
    double tolerance = 1e-7;
    bool pass = false;
};

/// Checks upper >= lower - tolerance node by node. Throws
/// std::invalid_argument when the lengths differ.
DominanceReport pointwise_dominance(const std::vector<double>& upper, const std::vector<double>& lower,
                                    double tolerance = 1e-7);

struct SensitivityResult {
    PipelineResult run;
    DominanceReport dominance;  ///< z1 over z2
};

/// s1, s2 or s3 only. Validates the hypotheses before solving.
SensitivityResult run_sensitivity_scenario(const ScenarioSpec& spec, const PipelineOptions& options = {},
                                           double tolerance = 1e-7);

/// One regime's data, solved as a model without switching.
struct RegimeSlice {
    double alpha = 0.0;
    double sigma = 0.0;
    double M = 0.0;
    double c = 0.0;
    double R = 0.0;
};

RegimeSlice slice_of(const RegimeParameters& params, const HoldingCostSpec& costs, Regime regime);

struct SingleRegimeResult {
    std::vector<double> z;
    PipelineResult run;
};

/// Runs the coupled machinery with a1 = a2 = 0 and both regimes cloned from
/// the slice; returns the regime-1 value function.
SingleRegimeResult single_regime_solve(const RegimeSlice& slice, const PipelineOptions& options = {});

struct ComparisonReport {
    std::vector<double> z_static1;  ///< regime-1 data without switching
    std::vector<double> z1;
    std::vector<double> z2;
    std::vector<double> z_static2;  ///< regime-2 data without switching
    DominanceReport static1_over_z1;
    DominanceReport z1_over_z2;
    DominanceReport z2_over_static2;
    bool pass = false;
    PipelineResult coupled;
};

/// The chain z_static1 >= z1 >= z2 >= z_static2 without hypothesis checks.
ComparisonReport regime_chain(const RegimeParameters& params, const HoldingCostSpec& costs,
                              const PipelineOptions& options = {}, double tolerance = 1e-7);

/// regime_chain for an s4 spec, after validating its hypotheses.
ComparisonReport regime_comparison(const ScenarioSpec& spec, const PipelineOptions& options = {},
                                   double tolerance = 1e-7);

} // namespace prodplan

#endif
