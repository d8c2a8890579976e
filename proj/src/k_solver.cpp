#include "prodplan/k_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace prodplan {

namespace {

// Coefficients of the quadratic system written as
//   4 K_i^2 + b_i K_i - m_i - d_i K_j = 0.
struct Coefficients {
    double b1, m1, d1;
    double b2, m2, d2;
};

Coefficients coefficients(const RegimeParameters& p)
{
    const double s1sq = p.sigma1 * p.sigma1;
    const double s2sq = p.sigma2 * p.sigma2;
    Coefficients c{};
    c.b1 = 2.0 * (p.a1 + p.alpha1) * s1sq / (s1sq * s1sq);
    c.m1 = p.M1 / (s1sq * s1sq);
    c.d1 = 2.0 * p.a1 * s2sq / (s1sq * s1sq);
    c.b2 = 2.0 * (p.a2 + p.alpha2) * s2sq / (s2sq * s2sq);
    c.m2 = p.M2 / (s2sq * s2sq);
    c.d2 = 2.0 * p.a2 * s1sq / (s2sq * s2sq);
    return c;
}

double max_abs(const Vec2& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

enum class AttemptFailure { kNone, kSingular, kNoProgress, kIterationCap };

struct Attempt {
    Vec2 K{};
    double residual = 0.0;
    AttemptFailure failure = AttemptFailure::kNone;
};

Attempt newton_attempt(const RegimeParameters& params, Vec2 K, const KSolveOptions& options)
{
    Attempt out;
    Vec2 H = k_residuals(K[0], K[1], params);
    double norm = max_abs(H);
    for (int iter = 0; iter < options.max_newton_iterations; ++iter) {
        if (norm <= options.residual_tol) {
            out.K = K;
            out.residual = norm;
            return out;
        }
        const Mat2 J = k_jacobian(K[0], K[1], params);
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0 || !std::isfinite(det)) {
            out.failure = AttemptFailure::kSingular;
            return out;
        }
        const Vec2 step{-(J[1][1] * H[0] - J[0][1] * H[1]) / det,
                        -(-J[1][0] * H[0] + J[0][0] * H[1]) / det};

        double lambda = 1.0;
        bool accepted = false;
        Vec2 trial{};
        Vec2 trial_H{};
        for (int h = 0; h <= options.max_halvings; ++h) {
            trial = {K[0] + lambda * step[0], K[1] + lambda * step[1]};
            trial_H = k_residuals(trial[0], trial[1], params);
            if (max_abs(trial_H) < norm) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            out.failure = AttemptFailure::kNoProgress;
            return out;
        }
        const double step_size = lambda * max_abs(step);
        K = trial;
        H = trial_H;
        norm = max_abs(H);
        if (step_size <= options.step_tol) {
            break;
        }
    }
    out.K = K;
    out.residual = norm;
    if (norm > options.residual_tol) {
        out.failure = AttemptFailure::kIterationCap;
    }
    return out;
}

} // namespace

Vec2 k_residuals(double K1, double K2, const RegimeParameters& params)
{
    const Coefficients c = coefficients(params);
    return {4.0 * K1 * K1 + c.b1 * K1 - c.m1 - c.d1 * K2,
            4.0 * K2 * K2 + c.b2 * K2 - c.m2 - c.d2 * K1};
}

Mat2 k_jacobian(double K1, double K2, const RegimeParameters& params)
{
    const Coefficients c = coefficients(params);
    Mat2 J{};
    J[0][0] = 8.0 * K1 + c.b1;
    J[0][1] = -c.d1;
    J[1][0] = -c.d2;
    J[1][1] = 8.0 * K2 + c.b2;
    return J;
}

KParameters solve_k(const RegimeParameters& params, Vec2 initial_guess, const KSolveOptions& options)
{
    Vec2 guess = initial_guess;
    bool all_singular = true;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        const Attempt result = newton_attempt(params, guess, options);
        if (result.failure != AttemptFailure::kSingular) {
            all_singular = false;
        }
        if (result.failure == AttemptFailure::kNone && result.K[0] < 0.0 && result.K[1] < 0.0) {
            KParameters kp;
            kp.K1 = result.K[0];
            kp.K2 = result.K[1];
            std::tie(kp.S1, kp.S2) = boundary_scales(kp.K1, kp.K2, params.R);
            kp.residual_norm = result.residual;
            kp.source = KSource::kRoot;
            return kp;
        }
        guess = {guess[0] - 1.0, guess[1] - 1.0};
    }
    if (all_singular) {
        throw KSolveError("singular Jacobian");
    }
    throw KSolveError("no negative root found within retry budget");
}

SubsolutionReport verify_subsolution_inequalities(const KParameters& kp, const RegimeParameters& params,
                                                  int n_dims)
{
    const Coefficients c = coefficients(params);
    const double R2 = params.R * params.R;
    const double n = static_cast<double>(n_dims);
    SubsolutionReport report;
    report.first = -c.b1 * R2 * kp.K1 - 2.0 * kp.K1 * n + c.d1 * R2 * kp.K2;
    report.second = -c.b2 * R2 * kp.K2 - 2.0 * n * kp.K2 + c.d2 * R2 * kp.K1;
    report.pass = report.first >= 0.0 && report.second >= 0.0;
    return report;
}

std::pair<double, double> boundary_scales(double K1, double K2, double R)
{
    return {std::exp(K1 * R * R), std::exp(K2 * R * R)};
}

namespace {

// Largest admissible K2 for a given K1 < 0, or nullopt if none.
std::optional<double> best_partner(double K1, const Coefficients& c, double R2, double n)
{
    double upper = 0.0;
    const double q1 = 4.0 * K1 * K1 + c.b1 * K1 - c.m1;
    if (c.d1 > 0.0) {
        upper = std::min(upper, q1 / c.d1);
    } else if (q1 < 0.0) {
        return std::nullopt;
    }
    upper = std::min(upper, c.d2 * R2 * K1 / (c.b2 * R2 + 2.0 * n));

    // r2 >= 0 holds outside the open interval between the roots of
    // 4 K2^2 + b2 K2 - (m2 + d2 K1).
    const double disc = c.b2 * c.b2 + 16.0 * (c.m2 + c.d2 * K1);
    double K2 = upper;
    if (disc >= 0.0) {
        const double root_lo = (-c.b2 - std::sqrt(disc)) / 8.0;
        const double root_hi = (-c.b2 + std::sqrt(disc)) / 8.0;
        if (upper < root_hi) {
            K2 = std::min(upper, root_lo);
        }
    }
    if (!(K2 < 0.0)) {
        return std::nullopt;
    }
    if (c.d1 > 0.0) {
        const double lower = (c.b1 * R2 + 2.0 * n) * K1 / (c.d1 * R2);
        if (K2 < lower) {
            return std::nullopt;
        }
    }
    return K2;
}

} // namespace

KParameters feasible_subsolution_exponents(const RegimeParameters& params, int n_dims)
{
    const Coefficients c = coefficients(params);
    const double R2 = params.R * params.R;
    const double n = static_cast<double>(n_dims);
    const double w1 = params.sigma1 * params.sigma1;
    const double w2 = params.sigma2 * params.sigma2;

    auto objective = [&](double K1) {
        const auto K2 = best_partner(K1, c, R2, n);
        if (!K2) {
            return std::numeric_limits<double>::infinity();
        }
        return -w1 * K1 - w2 * *K2;
    };

    // Coarse log-spaced scan of |K1| over [1e-6, 1e6].
    constexpr int kCoarse = 4000;
    double best_K1 = 0.0;
    double best_value = std::numeric_limits<double>::infinity();
    double spacing = 0.0;
    for (int i = 0; i < kCoarse; ++i) {
        const double e = -6.0 + 12.0 * i / (kCoarse - 1);
        const double K1 = -std::pow(10.0, e);
        const double v = objective(K1);
        if (v < best_value) {
            best_value = v;
            best_K1 = K1;
            spacing = std::abs(K1) * (std::pow(10.0, 12.0 / (kCoarse - 1)) - 1.0);
        }
    }
    if (!std::isfinite(best_value)) {
        throw KSolveError("no feasible sub-solution exponents");
    }

    // Two levels of uniform refinement around the incumbent.
    for (int level = 0; level < 2; ++level) {
        const double lo = best_K1 - 2.0 * spacing;
        const double hi = std::min(best_K1 + 2.0 * spacing, -std::numeric_limits<double>::min());
        constexpr int kFine = 2001;
        for (int i = 0; i < kFine; ++i) {
            const double K1 = lo + (hi - lo) * i / (kFine - 1);
            if (!(K1 < 0.0)) {
                continue;
            }
            const double v = objective(K1);
            if (v < best_value) {
                best_value = v;
                best_K1 = K1;
            }
        }
        spacing = (hi - lo) / (kFine - 1);
    }

    KParameters kp;
    kp.K1 = best_K1;
    kp.K2 = *best_partner(best_K1, c, R2, n);
    std::tie(kp.S1, kp.S2) = boundary_scales(kp.K1, kp.K2, params.R);
    kp.residual_norm = max_abs(k_residuals(kp.K1, kp.K2, params));
    kp.source = KSource::kFeasibleFallback;
    return kp;
}

KParameters resolve_exponents(const RegimeParameters& params, ExponentPolicy policy)
{
    try {
        return solve_k(params);
    } catch (const KSolveError&) {
        if (policy == ExponentPolicy::kRootOnly) {
            throw;
        }
    }
    return feasible_subsolution_exponents(params);
}

std::string to_string(KSource source)
{
    return source == KSource::kRoot ? "root" : "feasible-fallback";
}

} // namespace prodplan
