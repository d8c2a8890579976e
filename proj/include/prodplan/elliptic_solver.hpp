#ifndef PRODPLAN_ELLIPTIC_SOLVER_HPP
#define PRODPLAN_ELLIPTIC_SOLVER_HPP

#include "prodplan/coupling.hpp"
#include "prodplan/k_solver.hpp"
#include "prodplan/model_types.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace prodplan {

/// Grid samples of the transformed unknowns u_j = exp(-z_j / (2 sigma_j^2)).
/// Boundary nodes hold exactly 1.
struct FieldPair {
    std::vector<double> u1;
    std::vector<double> u2;
};

enum class StartMode {
    kSubSolution,   ///< u_j = exp(K_j (R^2 - x^2))
    kSuperSolution  ///< u_j = 1
};

/// How each outer iteration of solve_coupled advances the iterate.
enum class Scheme {
    /// Damped Newton on the discrete equations D2 u_j = g_j(x, u1, u2),
    /// carried out in the variables ln u_j.
    kNewton,
    /// One Gauss-Seidel relaxation sweep with the Lambda shifts per iteration.
    kSuccessiveApproximation
};

struct SolveOptions {
    double epsilon = 1e-6;
    int max_iter = 1000;
    StartMode mode = StartMode::kSubSolution;
    Scheme scheme = Scheme::kNewton;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double final_delta1 = 0.0;  ///< max |u1^k - u1^{k-1}| of the last iteration
    double final_delta2 = 0.0;
    double residual1 = 0.0;     ///< discrete_residual max-norms of the result
    double residual2 = 0.0;
    /// Node updates against the expected direction (a decrease when starting
    /// from the sub-solution, an increase from the super-solution), beyond
    /// 1e-12, summed over all iterations.
    std::size_t monotone_violations = 0;
    /// Node values outside [exp(K(R^2-x^2)) - 1e-12, 1 + 1e-12], summed over
    /// all iterates.
    std::size_t bracket_violations = 0;
    StartMode mode = StartMode::kSubSolution;
    Scheme scheme = Scheme::kNewton;
};

/// Sub-solution profile or the constant super-solution. Sub-solution values
/// are floored at the smallest normal double so logarithms stay finite.
FieldPair initial_iterate(const SolverGrid& grid, const KParameters& kp, StartMode mode);

/// One left-to-right pass over the interior nodes:
///
///   u_j[i] <- (g_j(x_i, u1_old[i], u2_old[i]) + Lambda_j u_j_old[i]
///              - (u_j[i-1] + u_j[i+1]) / dx^2) / (-2/dx^2 + Lambda_j)
///
/// where the *_old values are snapshotted at the start of the sweep and
/// u_j[i-1] already holds this sweep's value.
FieldPair sweep(FieldPair fields, const SolverGrid& grid, const LambdaPair& lambdas,
                const RegimeParameters& params, const HoldingCostSpec& costs);

/// Iterates until max |u_j^k - u_j^{k-1}| < epsilon for both fields or
/// max_iter is reached. The Newton scheme additionally requires an undamped
/// step with max |ln u^k - ln u^{k-1}| < epsilon, since u itself can be far
/// below epsilon in the interior. Non-convergence is reported, not thrown.
std::pair<FieldPair, SolveReport> solve_coupled(const RegimeParameters& params, const HoldingCostSpec& costs,
                                                const SolverGrid& grid, const KParameters& kp,
                                                const LambdaPair& lambdas, const SolveOptions& options = {});

/// Max-norms over interior nodes of D2 u_j - g_j(x, u1, u2).
std::pair<double, double> discrete_residual(const FieldPair& fields, const RegimeParameters& params,
                                            const HoldingCostSpec& costs, const SolverGrid& grid);

std::string to_string(StartMode mode);
std::string to_string(Scheme scheme);

} // namespace prodplan

#endif
