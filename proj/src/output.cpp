#include "prodplan/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace prodplan {

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw OutputError("cannot open for writing: " + path);
    }
    out << text;
    if (!out) {
        throw OutputError("write failed: " + path);
    }
}

std::string fields_csv(const PolicyResult& policy)
{
    std::string s = "x,u1,u2,z1,z2,B1,B2,p1,p2\n";
    for (std::size_t i = 0; i < policy.grid.size(); ++i) {
        const double row[] = {policy.grid[i], policy.u1[i], policy.u2[i], policy.z1[i], policy.z2[i],
                              policy.B1[i],   policy.B2[i], policy.p1[i], policy.p2[i]};
        for (std::size_t k = 0; k < std::size(row); ++k) {
            s += (k ? "," : "") + format_double(row[k]);
        }
        s += '\n';
    }
    return s;
}

void write_fields_csv(const PolicyResult& policy, const std::string& path)
{
    write_text(path, fields_csv(policy));
}

std::string metadata_text(const PipelineResult& r)
{
    std::ostringstream s;
    auto num = [&](const char* key, double v) { s << key << '=' << format_double(v) << '\n'; };
    auto str = [&](const char* key, const std::string& v) { s << key << '=' << v << '\n'; };
    num("K1", r.kp.K1);
    num("K2", r.kp.K2);
    str("k_source", to_string(r.kp.source));
    num("k_residual", r.kp.residual_norm);
    num("inequality1", r.inequalities.first);
    num("inequality2", r.inequalities.second);
    num("Lambda1", r.lambdas.lambda1);
    num("Lambda2", r.lambdas.lambda2);
    str("lambda_clamped", r.lambdas.clamped ? "true" : "false");
    str("scan_resolution", std::to_string(r.lambdas.scan_resolution.n_x) + "x" +
                               std::to_string(r.lambdas.scan_resolution.n_t) + "x" +
                               std::to_string(r.lambdas.scan_resolution.n_s));
    str("n_points", std::to_string(r.grid.size()));
    str("scheme", to_string(r.report.scheme));
    str("mode", to_string(r.report.mode));
    str("converged", r.report.converged ? "true" : "false");
    str("iterations", std::to_string(r.report.iterations));
    num("final_delta1", r.report.final_delta1);
    num("final_delta2", r.report.final_delta2);
    num("residual1", r.report.residual1);
    num("residual2", r.report.residual2);
    str("monotone_violations", std::to_string(r.report.monotone_violations));
    str("bracket_violations", std::to_string(r.report.bracket_violations));
    num("bound_violation1", r.bounds.max_violation1);
    num("bound_violation2", r.bounds.max_violation2);
    str("bound_pass", r.bounds.pass ? "true" : "false");
    return s.str();
}

void write_metadata(const PipelineResult& result, const std::string& path)
{
    write_text(path, metadata_text(result));
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path)
{
    std::string s = "t,y,regime\n";
    for (const auto& sample : trajectory.samples) {
        s += format_double(sample.t) + "," + format_double(sample.y) + "," +
             std::to_string(static_cast<int>(sample.regime)) + "\n";
    }
    write_text(path, s);
}

namespace {

struct Series {
    std::string label;
    const std::vector<double>* x;
    const std::vector<double>* y;
    std::string color;
    bool dashed = false;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Draws one axes box at (ox, oy) of size w x h. Guides are horizontal lines.
void panel(std::ostringstream& svg, double ox, double oy, double w, double h, const std::string& title,
           const std::vector<Series>& series, const std::vector<double>& guides = {})
{
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        for (double v : *s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : *s.y) {
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    for (double g : guides) {
        ymin = std::min(ymin, g);
        ymax = std::max(ymax, g);
    }
    if (!(xmax > xmin)) {
        xmax = xmin + 1.0;
    }
    if (!(ymax > ymin)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return ox + (x - xmin) / (xmax - xmin) * w; };
    auto py = [&](double y) { return oy + h - (y - ymin) / (ymax - ymin) * h; };

    svg << "<rect x=\"" << fmt(ox) << "\" y=\"" << fmt(oy) << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(ox + w / 2) << "\" y=\"" << fmt(oy - 8)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    svg << "<text x=\"" << fmt(ox) << "\" y=\"" << fmt(oy + h + 16) << "\" font-size=\"11\">" << fmt(xmin)
        << "</text>\n";
    svg << "<text x=\"" << fmt(ox + w) << "\" y=\"" << fmt(oy + h + 16)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(xmax) << "</text>\n";
    svg << "<text x=\"" << fmt(ox - 4) << "\" y=\"" << fmt(oy + h) << "\" text-anchor=\"end\" font-size=\"11\">"
        << fmt(ymin) << "</text>\n";
    svg << "<text x=\"" << fmt(ox - 4) << "\" y=\"" << fmt(oy + 10) << "\" text-anchor=\"end\" font-size=\"11\">"
        << fmt(ymax) << "</text>\n";

    for (double g : guides) {
        svg << "<line x1=\"" << fmt(ox) << "\" y1=\"" << fmt(py(g)) << "\" x2=\"" << fmt(ox + w) << "\" y2=\""
            << fmt(py(g)) << "\" stroke=\"gray\" stroke-dasharray=\"2,3\"/>\n";
    }
    double legend_y = oy + 16;
    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\""
            << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
        for (std::size_t i = 0; i < s.x->size(); ++i) {
            svg << (i ? " " : "") << fmt(px((*s.x)[i])) << "," << fmt(py((*s.y)[i]));
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << fmt(ox + w - 6) << "\" y=\"" << fmt(legend_y)
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label << "</text>\n";
        legend_y += 14;
    }
}

std::string svg_open(double w, double h)
{
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

} // namespace

std::string policy_svg(const PolicyResult& policy)
{
    const std::vector<double>& x = policy.grid.nodes;
    std::ostringstream svg;
    svg << svg_open(1000, 420);
    panel(svg, 70, 40, 380, 330, "value functions and bounds",
          {{"z1", &x, &policy.z1, "#1f77b4"},
           {"z2", &x, &policy.z2, "#d62728"},
           {"B1", &x, &policy.B1, "#1f77b4", true},
           {"B2", &x, &policy.B2, "#d62728", true}});
    panel(svg, 580, 40, 380, 330, "optimal production rates",
          {{"p1", &x, &policy.p1, "#1f77b4"}, {"p2", &x, &policy.p2, "#d62728"}});
    svg << "</svg>\n";
    return svg.str();
}

std::string trajectory_svg(const Trajectory& trajectory, double R)
{
    std::vector<double> t, y;
    for (const auto& s : trajectory.samples) {
        t.push_back(s.t);
        y.push_back(s.y);
    }
    std::ostringstream svg;
    svg << svg_open(760, 420);
    panel(svg, 70, 40, 660, 330, "inventory path", {{"y(t)", &t, &y, "#2ca02c"}}, {-R, R});
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::string> render_plots(const PolicyResult& policy, const std::optional<Trajectory>& trajectory,
                                      double R, const std::string& dir)
{
    std::vector<std::string> written;
    const auto base = std::filesystem::path(dir);
    written.push_back((base / "policy.svg").string());
    write_text(written.back(), policy_svg(policy));
    if (trajectory) {
        written.push_back((base / "trajectory.svg").string());
        write_text(written.back(), trajectory_svg(*trajectory, R));
    }
    return written;
}

} // namespace prodplan
