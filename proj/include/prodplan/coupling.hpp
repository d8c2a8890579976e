#ifndef PRODPLAN_COUPLING_HPP
#define PRODPLAN_COUPLING_HPP

#include "prodplan/k_solver.hpp"
#include "prodplan/model_types.hpp"

#include <cstddef>

namespace prodplan {

/// Right-hand side of the transformed system at node value t = u1, s = u2:
///
///   g1 = f1/sigma1^4 t + 2(a1+alpha1)/sigma1^2 t ln t - 2 a1 sigma2^2/sigma1^4 t ln s
///   g2 = f2/sigma2^4 s + 2(a2+alpha2)/sigma2^2 s ln s - 2 a2 sigma1^2/sigma2^4 s ln t
///
/// Throws std::domain_error for t <= 0 or s <= 0.
double eval_g(Regime regime, double x, double t, double s, const RegimeParameters& params,
              const HoldingCostSpec& costs);

/// dg1/dt for regime 1, dg2/ds for regime 2.
double eval_g_partial(Regime regime, double x, double t, double s, const RegimeParameters& params,
                      const HoldingCostSpec& costs);

struct ScanResolution {
    std::size_t n_x = 200;
    std::size_t n_t = 50;
    std::size_t n_s = 50;

    bool operator==(const ScanResolution&) const = default;
};

/// Monotonicity shifts of the successive-approximation scheme.
struct LambdaPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    ScanResolution scan_resolution;
    double max_partial1 = 0.0;
    double max_partial2 = 0.0;
    /// Set when a scanned maximum was <= 0 and the shift was clamped to -1e-8.
    bool clamped = false;
};

/// Scans x over [-R, R] and, for each x, t over [exp(K1(R^2-x^2)), 1] and
/// s over [exp(K2(R^2-x^2)), 1], recording the largest dg1/dt and dg2/ds.
/// Returns Lambda_i = -max_i.
LambdaPair compute_lambdas(const RegimeParameters& params, const HoldingCostSpec& costs,
                           const KParameters& kp, ScanResolution resolution = {});

} // namespace prodplan

#endif
