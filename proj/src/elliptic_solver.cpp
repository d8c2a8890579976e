#include "prodplan/elliptic_solver.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <tuple>

namespace prodplan {

namespace {

constexpr double kAuditSlack = 1e-12;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

std::vector<double> subsolution_profile(const SolverGrid& grid, double K)
{
    const double R2 = grid.radius * grid.radius;
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = std::exp(K * (R2 - grid[i] * grid[i]));
    }
    out.front() = 1.0;
    out.back() = 1.0;
    return out;
}

// Tracks the monotonicity and bracketing audits across iterations.
class Audit {
public:
    Audit(const SolverGrid& grid, const KParameters& kp, StartMode mode)
        : lower1_(subsolution_profile(grid, kp.K1)), lower2_(subsolution_profile(grid, kp.K2)), mode_(mode)
    {}

    void record(const FieldPair& before, const FieldPair& after, SolveReport& report) const
    {
        report.monotone_violations += count_wrong_direction(before.u1, after.u1);
        report.monotone_violations += count_wrong_direction(before.u2, after.u2);
        report.bracket_violations += count_outside(after.u1, lower1_);
        report.bracket_violations += count_outside(after.u2, lower2_);
    }

private:
    std::size_t count_wrong_direction(const std::vector<double>& before, const std::vector<double>& after) const
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < before.size(); ++i) {
            const bool wrong = mode_ == StartMode::kSubSolution ? after[i] < before[i] - kAuditSlack
                                                                : after[i] > before[i] + kAuditSlack;
            n += wrong ? 1 : 0;
        }
        return n;
    }

    static std::size_t count_outside(const std::vector<double>& u, const std::vector<double>& lower)
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            n += (u[i] < lower[i] - kAuditSlack || u[i] > 1.0 + kAuditSlack) ? 1 : 0;
        }
        return n;
    }

    std::vector<double> lower1_;
    std::vector<double> lower2_;
    StartMode mode_;
};

// ---------------------------------------------------------------------------
// Newton in log variables
// ---------------------------------------------------------------------------

// Dividing D2 u - g(u) by u at each node gives, with w = ln u,
//   (e^{w[i+1]-w[i]} - 2 + e^{w[i-1]-w[i]}) / dx^2
//       - (f(x)/sigma^4 + b w_own[i] - d w_cross[i]) = 0,
// which is well scaled even where u is astronomically small.
struct LogSystem {
    const SolverGrid& grid;
    std::vector<double> forcing1;  // f1(x)/sigma1^4
    std::vector<double> forcing2;
    double b1, d1, b2, d2;
    double inv_dx2;

    LogSystem(const SolverGrid& g, const RegimeParameters& p, const HoldingCostSpec& costs)
        : grid(g), forcing1(g.size()), forcing2(g.size())
    {
        const double s1 = p.sigma1 * p.sigma1;
        const double s2 = p.sigma2 * p.sigma2;
        for (std::size_t i = 0; i < g.size(); ++i) {
            forcing1[i] = eval_holding_cost(costs, Regime::kOne, g[i]) / (s1 * s1);
            forcing2[i] = eval_holding_cost(costs, Regime::kTwo, g[i]) / (s2 * s2);
        }
        b1 = 2.0 * (p.a1 + p.alpha1) / s1;
        d1 = 2.0 * p.a1 * s2 / (s1 * s1);
        b2 = 2.0 * (p.a2 + p.alpha2) / s2;
        d2 = 2.0 * p.a2 * s1 / (s2 * s2);
        inv_dx2 = 1.0 / (g.dx * g.dx);
    }

    // Residuals at interior nodes (index i - 1 for node i); returns max-norm.
    double residual(const std::vector<double>& w1, const std::vector<double>& w2, std::vector<double>& r1,
                    std::vector<double>& r2) const
    {
        const std::size_t n = grid.size();
        double norm = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double lap1 = (std::exp(w1[i + 1] - w1[i]) - 2.0 + std::exp(w1[i - 1] - w1[i])) * inv_dx2;
            const double lap2 = (std::exp(w2[i + 1] - w2[i]) - 2.0 + std::exp(w2[i - 1] - w2[i])) * inv_dx2;
            r1[i - 1] = lap1 - (forcing1[i] + b1 * w1[i] - d1 * w2[i]);
            r2[i - 1] = lap2 - (forcing2[i] + b2 * w2[i] - d2 * w1[i]);
            norm = std::max({norm, std::abs(r1[i - 1]), std::abs(r2[i - 1])});
        }
        return norm;
    }
};

struct Block {
    double a00 = 0, a01 = 0, a10 = 0, a11 = 0;
};

Block operator*(const Block& x, const Block& y)
{
    return {x.a00 * y.a00 + x.a01 * y.a10, x.a00 * y.a01 + x.a01 * y.a11,
            x.a10 * y.a00 + x.a11 * y.a10, x.a10 * y.a01 + x.a11 * y.a11};
}

Block operator-(const Block& x, const Block& y)
{
    return {x.a00 - y.a00, x.a01 - y.a01, x.a10 - y.a10, x.a11 - y.a11};
}

Block inverse(const Block& x)
{
    const double det = x.a00 * x.a11 - x.a01 * x.a10;
    return {x.a11 / det, -x.a01 / det, -x.a10 / det, x.a00 / det};
}

std::array<double, 2> block_apply(const Block& x, std::array<double, 2> v)
{
    return {x.a00 * v[0] + x.a01 * v[1], x.a10 * v[0] + x.a11 * v[1]};
}

// Solves J step = -r for the block tridiagonal Jacobian of LogSystem, with
// 2x2 blocks coupling (w1[i], w2[i]). Block Thomas elimination; the
// neighbour blocks are diagonal.
void newton_step(const LogSystem& sys, const std::vector<double>& w1, const std::vector<double>& w2,
                 const std::vector<double>& r1, const std::vector<double>& r2, std::vector<double>& step1,
                 std::vector<double>& step2)
{
    const std::size_t m = sys.grid.size() - 2;
    std::vector<Block> upper_mod(m);
    std::vector<std::array<double, 2>> rhs_mod(m);

    Block prev_upper{};
    std::array<double, 2> prev_rhs{};
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = k + 1;
        const double ep1 = std::exp(w1[i + 1] - w1[i]) * sys.inv_dx2;
        const double em1 = std::exp(w1[i - 1] - w1[i]) * sys.inv_dx2;
        const double ep2 = std::exp(w2[i + 1] - w2[i]) * sys.inv_dx2;
        const double em2 = std::exp(w2[i - 1] - w2[i]) * sys.inv_dx2;

        Block diag{-ep1 - em1 - sys.b1, sys.d1, sys.d2, -ep2 - em2 - sys.b2};
        const Block lower{em1, 0.0, 0.0, em2};
        const Block upper{k + 1 < m ? ep1 : 0.0, 0.0, 0.0, k + 1 < m ? ep2 : 0.0};
        std::array<double, 2> rhs{-r1[k], -r2[k]};
        if (k > 0) {
            diag = diag - lower * prev_upper;
            const auto carried = block_apply(lower, prev_rhs);
            rhs = {rhs[0] - carried[0], rhs[1] - carried[1]};
        }
        const Block inv = inverse(diag);
        upper_mod[k] = inv * upper;
        rhs_mod[k] = block_apply(inv, rhs);
        prev_upper = upper_mod[k];
        prev_rhs = rhs_mod[k];
    }

    std::array<double, 2> next{0.0, 0.0};
    for (std::size_t k = m; k-- > 0;) {
        const auto carried = block_apply(upper_mod[k], next);
        next = {rhs_mod[k][0] - carried[0], rhs_mod[k][1] - carried[1]};
        step1[k + 1] = next[0];
        step2[k + 1] = next[1];
    }
}

FieldPair fields_from_logs(const std::vector<double>& w1, const std::vector<double>& w2)
{
    FieldPair f;
    f.u1.resize(w1.size());
    f.u2.resize(w2.size());
    for (std::size_t i = 0; i < w1.size(); ++i) {
        f.u1[i] = std::max(std::exp(w1[i]), std::numeric_limits<double>::min());
        f.u2[i] = std::max(std::exp(w2[i]), std::numeric_limits<double>::min());
    }
    f.u1.front() = f.u1.back() = 1.0;
    f.u2.front() = f.u2.back() = 1.0;
    return f;
}

std::vector<double> initial_logs(const SolverGrid& grid, double K, StartMode mode)
{
    std::vector<double> w(grid.size(), 0.0);
    if (mode == StartMode::kSubSolution) {
        const double R2 = grid.radius * grid.radius;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            w[i] = K * (R2 - grid[i] * grid[i]);
        }
    }
    return w;
}

void solve_newton(const RegimeParameters& params, const HoldingCostSpec& costs, const SolverGrid& grid,
                  const KParameters& kp, const SolveOptions& options, const Audit& audit, FieldPair& fields,
                  SolveReport& report)
{
    constexpr int kMaxHalvings = 40;
    const LogSystem sys(grid, params, costs);
    const std::size_t n = grid.size();

    std::vector<double> w1 = initial_logs(grid, kp.K1, options.mode);
    std::vector<double> w2 = initial_logs(grid, kp.K2, options.mode);
    std::vector<double> r1(n - 2), r2(n - 2), step1(n, 0.0), step2(n, 0.0);
    std::vector<double> t1(n), t2(n), tr1(n - 2), tr2(n - 2);
    fields = fields_from_logs(w1, w2);

    double norm = sys.residual(w1, w2, r1, r2);
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        report.iterations = iter;
        newton_step(sys, w1, w2, r1, r2, step1, step2);
        const double step_size = std::max(max_abs_diff(step1, std::vector<double>(n, 0.0)),
                                          max_abs_diff(step2, std::vector<double>(n, 0.0)));

        double lambda = 1.0;
        double trial_norm = 0.0;
        bool accepted = false;
        for (int h = 0; h <= kMaxHalvings; ++h) {
            for (std::size_t i = 0; i < n; ++i) {
                t1[i] = w1[i] + lambda * step1[i];
                t2[i] = w2[i] + lambda * step2[i];
            }
            trial_norm = sys.residual(t1, t2, tr1, tr2);
            if (trial_norm < norm || trial_norm == 0.0) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            // At round-off level the residual can no longer decrease; a full
            // step that is already below tolerance is taken as is.
            if (step_size >= options.epsilon) {
                break;
            }
            lambda = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                t1[i] = w1[i] + step1[i];
                t2[i] = w2[i] + step2[i];
            }
            trial_norm = sys.residual(t1, t2, tr1, tr2);
        }

        FieldPair next = fields_from_logs(t1, t2);
        audit.record(fields, next, report);
        report.final_delta1 = max_abs_diff(next.u1, fields.u1);
        report.final_delta2 = max_abs_diff(next.u2, fields.u2);
        fields = std::move(next);
        w1.swap(t1);
        w2.swap(t2);
        r1.swap(tr1);
        r2.swap(tr2);
        norm = trial_norm;

        const double log_change = lambda * step_size;
        if (report.final_delta1 < options.epsilon && report.final_delta2 < options.epsilon &&
            log_change < options.epsilon && lambda == 1.0) {
            report.converged = true;
            break;
        }
    }
}

void solve_sweeps(const RegimeParameters& params, const HoldingCostSpec& costs, const SolverGrid& grid,
                  const KParameters& kp, const LambdaPair& lambdas, const SolveOptions& options,
                  const Audit& audit, FieldPair& fields, SolveReport& report)
{
    fields = initial_iterate(grid, kp, options.mode);
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        report.iterations = iter;
        FieldPair next = sweep(fields, grid, lambdas, params, costs);
        audit.record(fields, next, report);
        report.final_delta1 = max_abs_diff(next.u1, fields.u1);
        report.final_delta2 = max_abs_diff(next.u2, fields.u2);
        fields = std::move(next);
        if (report.final_delta1 < options.epsilon && report.final_delta2 < options.epsilon) {
            report.converged = true;
            break;
        }
    }
}

} // namespace

FieldPair initial_iterate(const SolverGrid& grid, const KParameters& kp, StartMode mode)
{
    FieldPair f;
    if (mode == StartMode::kSuperSolution) {
        f.u1.assign(grid.size(), 1.0);
        f.u2.assign(grid.size(), 1.0);
        return f;
    }
    f.u1 = subsolution_profile(grid, kp.K1);
    f.u2 = subsolution_profile(grid, kp.K2);
    constexpr double kFloor = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f.u1[i] = std::max(f.u1[i], kFloor);
        f.u2[i] = std::max(f.u2[i], kFloor);
    }
    return f;
}

FieldPair sweep(FieldPair fields, const SolverGrid& grid, const LambdaPair& lambdas, const RegimeParameters& params,
                const HoldingCostSpec& costs)
{
    const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
    const double denom1 = -2.0 * inv_dx2 + lambdas.lambda1;
    const double denom2 = -2.0 * inv_dx2 + lambdas.lambda2;
    assert(denom1 < 0.0 && denom2 < 0.0);

    const std::vector<double> old1 = fields.u1;
    const std::vector<double> old2 = fields.u2;
    auto& u1 = fields.u1;
    auto& u2 = fields.u2;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double x = grid[i];
        u1[i] = (eval_g(Regime::kOne, x, old1[i], old2[i], params, costs) + lambdas.lambda1 * old1[i] -
                 (u1[i - 1] + u1[i + 1]) * inv_dx2) /
                denom1;
        u2[i] = (eval_g(Regime::kTwo, x, old1[i], old2[i], params, costs) + lambdas.lambda2 * old2[i] -
                 (u2[i - 1] + u2[i + 1]) * inv_dx2) /
                denom2;
    }
    return fields;
}

std::pair<FieldPair, SolveReport> solve_coupled(const RegimeParameters& params, const HoldingCostSpec& costs,
                                                const SolverGrid& grid, const KParameters& kp,
                                                const LambdaPair& lambdas, const SolveOptions& options)
{
    SolveReport report;
    report.mode = options.mode;
    report.scheme = options.scheme;
    const Audit audit(grid, kp, options.mode);

    FieldPair fields;
    if (options.scheme == Scheme::kNewton) {
        solve_newton(params, costs, grid, kp, options, audit, fields, report);
    } else {
        solve_sweeps(params, costs, grid, kp, lambdas, options, audit, fields, report);
    }
    std::tie(report.residual1, report.residual2) = discrete_residual(fields, params, costs, grid);
    return {std::move(fields), report};
}

std::pair<double, double> discrete_residual(const FieldPair& fields, const RegimeParameters& params,
                                            const HoldingCostSpec& costs, const SolverGrid& grid)
{
    const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
    double r1 = 0.0;
    double r2 = 0.0;
    const auto& u1 = fields.u1;
    const auto& u2 = fields.u2;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double x = grid[i];
        const double lap1 = (u1[i + 1] - 2.0 * u1[i] + u1[i - 1]) * inv_dx2;
        const double lap2 = (u2[i + 1] - 2.0 * u2[i] + u2[i - 1]) * inv_dx2;
        r1 = std::max(r1, std::abs(lap1 - eval_g(Regime::kOne, x, u1[i], u2[i], params, costs)));
        r2 = std::max(r2, std::abs(lap2 - eval_g(Regime::kTwo, x, u1[i], u2[i], params, costs)));
    }
    return {r1, r2};
}

std::string to_string(StartMode mode)
{
    return mode == StartMode::kSubSolution ? "sub" : "super";
}

std::string to_string(Scheme scheme)
{
    return scheme == Scheme::kNewton ? "newton" : "sweep";
}

} // namespace prodplan
