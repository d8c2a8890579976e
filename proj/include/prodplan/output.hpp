#ifndef PRODPLAN_OUTPUT_HPP
#define PRODPLAN_OUTPUT_HPP

#include "prodplan/pipeline.hpp"
#include "prodplan/regime_sim.hpp"
#include "prodplan/value_recovery.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prodplan {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest-round-trip-safe decimal form (17 significant digits).
std::string format_double(double v);

/// Header "x,u1,u2,z1,z2,B1,B2,p1,p2", one row per node.
std::string fields_csv(const PolicyResult& policy);
void write_fields_csv(const PolicyResult& policy, const std::string& path);

/// key=value lines: exponents, shifts, iteration count, residuals, audits.
std::string metadata_text(const PipelineResult& result);
void write_metadata(const PipelineResult& result, const std::string& path);

/// Header "t,y,regime".
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

/// Two-panel SVG (z with bounds; rates).
std::string policy_svg(const PolicyResult& policy);
/// Inventory path with guide lines at +-R.
std::string trajectory_svg(const Trajectory& trajectory, double R);

/// Writes policy.svg, plus trajectory.svg when a trajectory is given.
/// Returns the paths written.
std::vector<std::string> render_plots(const PolicyResult& policy, const std::optional<Trajectory>& trajectory,
                                      double R, const std::string& dir);

void write_text(const std::string& path, const std::string& text);

} // namespace prodplan

#endif
