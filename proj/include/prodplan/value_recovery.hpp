#ifndef PRODPLAN_VALUE_RECOVERY_HPP
#define PRODPLAN_VALUE_RECOVERY_HPP

#include "prodplan/elliptic_solver.hpp"
#include "prodplan/k_solver.hpp"
#include "prodplan/model_types.hpp"

#include <vector>

namespace prodplan {

/// Value functions, feedback rates and upper bounds sampled on the grid.
struct PolicyResult {
    SolverGrid grid;
    std::vector<double> u1, u2;
    std::vector<double> z1, z2;
    std::vector<double> p1, p2;
    std::vector<double> B1, B2;
};

/// z = -2 sigma^2 ln u. Nodes with u == 1 get exactly +0.
/// Throws std::domain_error if any u <= 0.
std::vector<double> recover_value(const std::vector<double>& u, double sigma);

/// p = -z'/2; central differences inside, one-sided at the two ends.
std::vector<double> optimal_rate(const std::vector<double>& z, const SolverGrid& grid);

/// B = -2 sigma^2 K (R^2 - x^2).
std::vector<double> upper_bound(double K, double sigma, const SolverGrid& grid);

struct BoundReport {
    double max_violation1 = 0.0;  ///< max_i (z1 - B1)
    double max_violation2 = 0.0;
    double tolerance = 1e-6;
    bool pass = false;
};

BoundReport verify_bounds(const PolicyResult& policy, double bound_tol = 1e-6);

PolicyResult assemble_policy(const FieldPair& fields, const SolverGrid& grid, const KParameters& kp,
                             const RegimeParameters& params);

} // namespace prodplan

#endif
