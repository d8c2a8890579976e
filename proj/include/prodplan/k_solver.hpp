#ifndef PRODPLAN_K_SOLVER_HPP
#define PRODPLAN_K_SOLVER_HPP

#include "prodplan/model_types.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace prodplan {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

class KSolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Where a pair of sub-solution exponents came from.
enum class KSource {
    kRoot,             ///< negative root of the two quadratic equations
    kFeasibleFallback  ///< feasible point of the sub-solution inequalities
};

/// Exponents of the sub-solution profile exp(K_i (R^2 - x^2)).
struct KParameters {
    double K1 = 0.0;
    double K2 = 0.0;
    double S1 = 0.0;  ///< exp(K1 R^2)
    double S2 = 0.0;  ///< exp(K2 R^2)
    double residual_norm = 0.0;
    KSource source = KSource::kRoot;
};

struct KSolveOptions {
    double residual_tol = 1e-10;
    double step_tol = 1e-12;
    int max_newton_iterations = 100;
    int max_halvings = 30;
    int max_retries = 50;
};

/// Residuals of the two equations
///   4K1^2 + 2(a1+alpha1)/sigma1^2 K1 - M1/sigma1^4 - 2 a1 sigma2^2/sigma1^4 K2
/// and its mirror with the regime indices swapped.
Vec2 k_residuals(double K1, double K2, const RegimeParameters& params);

/// Analytic Jacobian of k_residuals with respect to (K1, K2).
Mat2 k_jacobian(double K1, double K2, const RegimeParameters& params);

/// Damped Newton for the negative root. When a start lands on a root with a
/// non-negative component (or fails to converge) the guess is shifted by -1
/// per component and the solve restarted, up to options.max_retries times.
///
/// Throws KSolveError("no negative root found within retry budget") or
/// KSolveError("singular Jacobian").
KParameters solve_k(const RegimeParameters& params, Vec2 initial_guess = {-1.0, -1.0},
                    const KSolveOptions& options = {});

struct SubsolutionReport {
    double first = 0.0;
    double second = 0.0;
    bool pass = false;
};

/// Evaluates the two inequality expressions that make exp(K(R^2-|x|^2)) a
/// sub-solution:
///   -2(a1+alpha1)R^2/sigma1^2 K1 - 2 n K1 + 2 a1 sigma2^2 R^2/sigma1^4 K2 >= 0
/// and its mirror. Failure is a reported outcome, not an exception.
SubsolutionReport verify_subsolution_inequalities(const KParameters& kp,
                                                  const RegimeParameters& params,
                                                  int n_dims = 1);

/// (exp(K1 R^2), exp(K2 R^2)).
std::pair<double, double> boundary_scales(double K1, double K2, double R);

/// Negative exponents for which exp(K(R^2-|x|^2)) is a sub-solution even when
/// the quadratic system has no negative root: both residuals >= 0 and both
/// inequality expressions >= 0. Among such pairs the one minimizing
/// sigma1^2|K1| + sigma2^2|K2| (the tightest bound at the centre) is chosen
/// by a log-spaced scan over K1 followed by two uniform refinements.
KParameters feasible_subsolution_exponents(const RegimeParameters& params, int n_dims = 1);

enum class ExponentPolicy {
    kRootOnly,       ///< propagate solve_k failures
    kRootOrFallback  ///< use feasible_subsolution_exponents when no root exists
};

/// solve_k, or the feasible fallback when allowed and no negative root exists.
KParameters resolve_exponents(const RegimeParameters& params, ExponentPolicy policy);

std::string to_string(KSource source);

} // namespace prodplan

#endif
