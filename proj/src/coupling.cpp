#include "prodplan/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prodplan {

namespace {

struct RegimeTerms {
    double cost_scale;   // 1/sigma_i^4
    double own_log;      // 2(a_i+alpha_i)/sigma_i^2
    double cross_log;    // 2 a_i sigma_j^2/sigma_i^4
};

RegimeTerms terms(Regime r, const RegimeParameters& p)
{
    const double si = p.sigma(r) * p.sigma(r);
    const double sj = p.sigma(other(r)) * p.sigma(other(r));
    return {1.0 / (si * si), 2.0 * (p.a(r) + p.alpha(r)) / si, 2.0 * p.a(r) * sj / (si * si)};
}

void require_positive_arguments(double t, double s)
{
    if (!(t > 0.0) || !(s > 0.0)) {
        throw std::domain_error("coupling function requires t > 0 and s > 0");
    }
}

double partial_from_logs(Regime regime, double x, double log_t, double log_s, const RegimeParameters& params,
                         const HoldingCostSpec& costs)
{
    const RegimeTerms c = terms(regime, params);
    const double f = eval_holding_cost(costs, regime, x);
    const double log_own = regime == Regime::kOne ? log_t : log_s;
    const double log_cross = regime == Regime::kOne ? log_s : log_t;
    return f * c.cost_scale + c.own_log * (1.0 + log_own) - c.cross_log * log_cross;
}

double linspace_at(double lo, double hi, std::size_t i, std::size_t n)
{
    if (i + 1 == n) {
        return hi;
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

} // namespace

double eval_g(Regime regime, double x, double t, double s, const RegimeParameters& params,
              const HoldingCostSpec& costs)
{
    require_positive_arguments(t, s);
    const RegimeTerms c = terms(regime, params);
    const double f = eval_holding_cost(costs, regime, x);
    // The "own" field is t for regime 1 and s for regime 2.
    const double own = regime == Regime::kOne ? t : s;
    const double cross = regime == Regime::kOne ? s : t;
    return f * c.cost_scale * own + c.own_log * own * std::log(own) - c.cross_log * own * std::log(cross);
}

double eval_g_partial(Regime regime, double x, double t, double s, const RegimeParameters& params,
                      const HoldingCostSpec& costs)
{
    require_positive_arguments(t, s);
    return partial_from_logs(regime, x, std::log(t), std::log(s), params, costs);
}

LambdaPair compute_lambdas(const RegimeParameters& params, const HoldingCostSpec& costs,
                           const KParameters& kp, ScanResolution resolution)
{
    if (resolution.n_x < 2 || resolution.n_t < 2 || resolution.n_s < 2) {
        throw std::invalid_argument("scan resolution components must be >= 2");
    }
    const double R = params.R;
    double max1 = -std::numeric_limits<double>::infinity();
    double max2 = -std::numeric_limits<double>::infinity();

    for (std::size_t ix = 0; ix < resolution.n_x; ++ix) {
        const double x = linspace_at(-R, R, ix, resolution.n_x);
        const double span = R * R - x * x;
        const double t_lo = std::exp(kp.K1 * span);
        const double s_lo = std::exp(kp.K2 * span);
        // The lower ends can underflow to zero for large |K| R^2, so their
        // logarithms are taken from the exponent directly.
        for (std::size_t it = 0; it < resolution.n_t; ++it) {
            const double log_t =
                it == 0 ? kp.K1 * span : std::log(linspace_at(t_lo, 1.0, it, resolution.n_t));
            for (std::size_t is = 0; is < resolution.n_s; ++is) {
                const double log_s =
                    is == 0 ? kp.K2 * span : std::log(linspace_at(s_lo, 1.0, is, resolution.n_s));
                max1 = std::max(max1, partial_from_logs(Regime::kOne, x, log_t, log_s, params, costs));
                max2 = std::max(max2, partial_from_logs(Regime::kTwo, x, log_t, log_s, params, costs));
            }
        }
    }

    constexpr double kClamp = -1e-8;
    LambdaPair out;
    out.scan_resolution = resolution;
    out.max_partial1 = max1;
    out.max_partial2 = max2;
    out.lambda1 = -max1;
    out.lambda2 = -max2;
    if (!(out.lambda1 < 0.0)) {
        out.lambda1 = kClamp;
        out.clamped = true;
    }
    if (!(out.lambda2 < 0.0)) {
        out.lambda2 = kClamp;
        out.clamped = true;
    }
    return out;
}

} // namespace prodplan
