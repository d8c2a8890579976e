#ifndef PRODPLAN_MODEL_TYPES_HPP
#define PRODPLAN_MODEL_TYPES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace prodplan {

/// Economic regime label of the two-state Markov chain.
enum class Regime : int { kOne = 1, kTwo = 2 };

inline Regime other(Regime r) { return r == Regime::kOne ? Regime::kTwo : Regime::kOne; }

/// Raised when a parameter set or configuration violates a model constraint.
/// The message names the first violated constraint.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Regime-dependent scalars of the production planning problem.
///
/// a1, a2 are the switching intensities of the generator
/// [[-a1, a1], [a2, -a2]], alpha_i the discount rates, sigma_i the inventory
/// volatilities, M_i the quadratic caps on the holding costs and R the
/// inventory threshold at which production stops.
struct RegimeParameters {
    double a1 = 0.0;
    double a2 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double M1 = 0.0;
    double M2 = 0.0;
    double R = 0.0;

    double a(Regime r) const { return r == Regime::kOne ? a1 : a2; }
    double alpha(Regime r) const { return r == Regime::kOne ? alpha1 : alpha2; }
    double sigma(Regime r) const { return r == Regime::kOne ? sigma1 : sigma2; }
    double M(Regime r) const { return r == Regime::kOne ? M1 : M2; }

    bool operator==(const RegimeParameters&) const = default;
};

/// Holding cost f_i(x) = c_i x^2 per regime.
///
/// Only the scaled quadratic family is provided; evaluation goes through
/// eval_holding_cost so other convex shapes can be slotted in later.
struct HoldingCostSpec {
    enum class Kind { kQuadraticScaled };

    Kind kind = Kind::kQuadraticScaled;
    double c1 = 0.0;
    double c2 = 0.0;

    double coefficient(Regime r) const { return r == Regime::kOne ? c1 : c2; }

    bool operator==(const HoldingCostSpec&) const = default;
};

/// Uniform symmetric discretization of [-R, R].
struct SolverGrid {
    std::vector<double> nodes;
    double dx = 0.0;
    double radius = 0.0;

    std::size_t size() const { return nodes.size(); }
    double operator[](std::size_t i) const { return nodes[i]; }
};

/// Returns `raw` unchanged when every constraint holds, otherwise throws
/// ValidationError naming the first violation ("sigma2 must be > 0",
/// "c1 exceeds M1", ...).
RegimeParameters validate_params(const RegimeParameters& raw, const HoldingCostSpec& costs);

/// Builds n_points equally spaced nodes with x[0] = -R and x[n-1] = +R.
/// Nodes are mirrored exactly: x[i] == -x[n-1-i].
SolverGrid build_grid(double R, std::size_t n_points);

double eval_holding_cost(const HoldingCostSpec& costs, Regime regime, double x);

} // namespace prodplan

#endif
