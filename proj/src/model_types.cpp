#include "prodplan/model_types.hpp"

#include <cmath>

namespace prodplan {

namespace {

void require_positive(double value, const char* name)
{
    // Written so that NaN also fails.
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string(name) + " must be > 0");
    }
}

} // namespace

RegimeParameters validate_params(const RegimeParameters& raw, const HoldingCostSpec& costs)
{
    require_positive(raw.a1, "a1");
    require_positive(raw.a2, "a2");
    require_positive(raw.alpha1, "alpha1");
    require_positive(raw.alpha2, "alpha2");
    require_positive(raw.sigma1, "sigma1");
    require_positive(raw.sigma2, "sigma2");
    require_positive(raw.M1, "M1");
    require_positive(raw.M2, "M2");
    require_positive(raw.R, "R");
    require_positive(costs.c1, "c1");
    require_positive(costs.c2, "c2");
    if (costs.c1 > raw.M1) {
        throw ValidationError("c1 exceeds M1");
    }
    if (costs.c2 > raw.M2) {
        throw ValidationError("c2 exceeds M2");
    }
    return raw;
}

SolverGrid build_grid(double R, std::size_t n_points)
{
    if (n_points < 3) {
        throw ValidationError("n_points must be >= 3");
    }
    if (!(R > 0.0)) {
        throw ValidationError("R must be > 0");
    }
    SolverGrid grid;
    grid.radius = R;
    grid.dx = 2.0 * R / static_cast<double>(n_points - 1);
    grid.nodes.resize(n_points);
    const std::size_t last = n_points - 1;
    // Fill the left half and mirror it so the grid is symmetric bit for bit.
    for (std::size_t i = 0; i <= last / 2; ++i) {
        double x = -R + 2.0 * R * static_cast<double>(i) / static_cast<double>(last);
        grid.nodes[i] = x;
        grid.nodes[last - i] = -x;
    }
    if (last % 2 == 0) {
        grid.nodes[last / 2] = 0.0;
    }
    grid.nodes.front() = -R;
    grid.nodes.back() = R;
    return grid;
}

double eval_holding_cost(const HoldingCostSpec& costs, Regime regime, double x)
{
    return costs.coefficient(regime) * x * x;
}

} // namespace prodplan
