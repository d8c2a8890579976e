#include "prodplan/value_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prodplan {

std::vector<double> recover_value(const std::vector<double>& u, double sigma)
{
    const double scale = -2.0 * sigma * sigma;
    std::vector<double> z(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0)) {
            throw std::domain_error("recover_value requires u > 0");
        }
        // -2 sigma^2 * ln(1) would be -0.
        z[i] = u[i] == 1.0 ? 0.0 : scale * std::log(u[i]);
    }
    return z;
}

std::vector<double> optimal_rate(const std::vector<double>& z, const SolverGrid& grid)
{
    const std::size_t n = grid.size();
    if (z.size() != n || n < 3) {
        throw std::invalid_argument("optimal_rate needs a field matching a grid of >= 3 nodes");
    }
    std::vector<double> p(n);
    p[0] = -0.5 * (z[1] - z[0]) / grid.dx;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        p[i] = -0.5 * (z[i + 1] - z[i - 1]) / (2.0 * grid.dx);
    }
    p[n - 1] = -0.5 * (z[n - 1] - z[n - 2]) / grid.dx;
    return p;
}

std::vector<double> upper_bound(double K, double sigma, const SolverGrid& grid)
{
    const double R2 = grid.radius * grid.radius;
    std::vector<double> B(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        B[i] = -2.0 * sigma * sigma * K * (R2 - grid[i] * grid[i]);
    }
    B.front() = 0.0;
    B.back() = 0.0;
    return B;
}

namespace {

double max_excess(const std::vector<double>& z, const std::vector<double>& B)
{
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i) {
        m = std::max(m, z[i] - B[i]);
    }
    return m;
}

} // namespace

BoundReport verify_bounds(const PolicyResult& policy, double bound_tol)
{
    BoundReport r;
    r.tolerance = bound_tol;
    r.max_violation1 = max_excess(policy.z1, policy.B1);
    r.max_violation2 = max_excess(policy.z2, policy.B2);
    r.pass = r.max_violation1 <= bound_tol && r.max_violation2 <= bound_tol;
    return r;
}

PolicyResult assemble_policy(const FieldPair& fields, const SolverGrid& grid, const KParameters& kp,
                             const RegimeParameters& params)
{
    PolicyResult out;
    out.grid = grid;
    out.u1 = fields.u1;
    out.u2 = fields.u2;
    out.z1 = recover_value(fields.u1, params.sigma1);
    out.z2 = recover_value(fields.u2, params.sigma2);
    out.p1 = optimal_rate(out.z1, grid);
    out.p2 = optimal_rate(out.z2, grid);
    out.B1 = upper_bound(kp.K1, params.sigma1, grid);
    out.B2 = upper_bound(kp.K2, params.sigma2, grid);
    return out;
}

} // namespace prodplan
