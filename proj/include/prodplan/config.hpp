#ifndef PRODPLAN_CONFIG_HPP
#define PRODPLAN_CONFIG_HPP

#include "prodplan/coupling.hpp"
#include "prodplan/elliptic_solver.hpp"
#include "prodplan/model_types.hpp"
#include "prodplan/pipeline.hpp"
#include "prodplan/regime_sim.hpp"

#include <stdexcept>
#include <string>

namespace prodplan {

/// Malformed documents, missing or unknown keys, wrong value types.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    RegimeParameters params;
    HoldingCostSpec costs;
    std::size_t n_points = 100;
    SolveOptions solver;
    ScanResolution scan;
    SimConfig sim;
    std::string output_dir = "out";
    bool strict = false;

    PipelineOptions pipeline_options() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// JSON document with sections
///
///   problem: a1 a2 alpha1 alpha2 sigma1 sigma2 M1 M2 R (required), c1 c2
///            (default M1, M2)
///   grid:    n_points
///   solver:  epsilon max_iter mode("sub"|"super") scheme("newton"|"sweep")
///   scan:    n_x n_t n_s
///   sim:     dt t_max x0 seed n_paths interpolation("nearest"|"linear")
///   output:  dir strict
///
/// All sections except problem are optional. Throws ConfigError for
/// structural problems and ValidationError for values outside the model
/// constraints; messages carry the key path.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Inverse of parse_config; doubles are written so they read back exactly.
std::string serialize_config(const RunConfig& config);

} // namespace prodplan

#endif
