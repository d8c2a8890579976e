#ifndef PRODPLAN_PIPELINE_HPP
#define PRODPLAN_PIPELINE_HPP

#include "prodplan/coupling.hpp"
#include "prodplan/elliptic_solver.hpp"
#include "prodplan/k_solver.hpp"
#include "prodplan/model_types.hpp"
#include "prodplan/value_recovery.hpp"

#include <string>
#include <vector>

namespace prodplan {

struct PipelineOptions {
    std::size_t n_points = 100;
    SolveOptions solver;
    ScanResolution scan;
    ExponentPolicy exponents = ExponentPolicy::kRootOrFallback;
    double bound_tol = 1e-6;
};

/// Everything produced by one solve, from the exponents to the bound check.
struct PipelineResult {
    SolverGrid grid;
    KParameters kp;
    SubsolutionReport inequalities;
    LambdaPair lambdas;
    FieldPair fields;
    SolveReport report;
    PolicyResult policy;
    BoundReport bounds;
    std::vector<std::string> warnings;
};

/// exponents -> Lambda scan -> coupled solve -> value recovery -> bounds.
/// Inputs are not re-validated, so zero switching rates or costs are allowed.
/// Numerical shortfalls are listed in `warnings`; only KSolveError (with
/// ExponentPolicy::kRootOnly) escapes.
PipelineResult solve_policy(const RegimeParameters& params, const HoldingCostSpec& costs,
                            const PipelineOptions& options = {});

} // namespace prodplan

#endif
