#include "prodplan/pipeline.hpp"

#include <tuple>

namespace prodplan {

PipelineResult solve_policy(const RegimeParameters& params, const HoldingCostSpec& costs,
                            const PipelineOptions& options)
{
    PipelineResult r;
    r.grid = build_grid(params.R, options.n_points);
    r.kp = resolve_exponents(params, options.exponents);
    if (r.kp.source == KSource::kFeasibleFallback) {
        r.warnings.push_back("no negative root of the K system; using feasible sub-solution exponents");
    }
    r.inequalities = verify_subsolution_inequalities(r.kp, params);
    if (!r.inequalities.pass) {
        r.warnings.push_back("sub-solution inequalities fail for the chosen exponents");
    }
    r.lambdas = compute_lambdas(params, costs, r.kp, options.scan);
    if (r.lambdas.clamped) {
        r.warnings.push_back("Lambda scan maximum was not positive; shift clamped to -1e-8");
    }

    std::tie(r.fields, r.report) = solve_coupled(params, costs, r.grid, r.kp, r.lambdas, options.solver);
    if (!r.report.converged) {
        r.warnings.push_back("coupled solve did not converge within max_iter");
    }
    r.policy = assemble_policy(r.fields, r.grid, r.kp, params);
    r.bounds = verify_bounds(r.policy, options.bound_tol);
    if (!r.bounds.pass) {
        r.warnings.push_back("value function exceeds its upper bound");
    }
    return r;
}

} // namespace prodplan
