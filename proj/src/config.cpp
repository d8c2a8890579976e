#include "prodplan/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace prodplan {

using nlohmann::json;

PipelineOptions RunConfig::pipeline_options() const
{
    PipelineOptions o;
    o.n_points = n_points;
    o.solver = solver;
    o.scan = scan;
    return o;
}

bool operator==(const RunConfig& a, const RunConfig& b)
{
    return a.params == b.params && a.costs == b.costs && a.n_points == b.n_points &&
           a.solver.epsilon == b.solver.epsilon && a.solver.max_iter == b.solver.max_iter &&
           a.solver.mode == b.solver.mode && a.solver.scheme == b.solver.scheme && a.scan == b.scan &&
           a.sim == b.sim && a.output_dir == b.output_dir && a.strict == b.strict;
}

namespace {

// Reads typed values out of one section and remembers which keys were seen.
class Section {
public:
    Section(const json& doc, std::string name) : name_(std::move(name))
    {
        if (doc.contains(name_)) {
            node_ = &doc.at(name_);
            if (!node_->is_object()) {
                throw ConfigError(name_ + ": expected an object");
            }
        }
    }

    template <typename T>
    T required(const std::string& key)
    {
        if (!has(key)) {
            throw ConfigError("missing required key: " + key + " (" + path(key) + ")");
        }
        return get<T>(key);
    }

    template <typename T>
    T optional(const std::string& key, T fallback)
    {
        return has(key) ? get<T>(key) : fallback;
    }

    bool has(const std::string& key) const { return node_ != nullptr && node_->contains(key); }

    void reject_unknown() const
    {
        if (node_ == nullptr) {
            return;
        }
        for (const auto& item : node_->items()) {
            if (seen_.count(item.key()) == 0) {
                throw ConfigError("unknown key: " + path(item.key()));
            }
        }
    }

private:
    std::string path(const std::string& key) const { return name_ + "." + key; }

    template <typename T>
    T get(const std::string& key)
    {
        seen_.insert(key);
        const json& v = node_->at(key);
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw ConfigError(path(key) + ": expected a boolean");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
        } else {
            if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
            if (v.is_number_unsigned()) {
                return static_cast<T>(v.get<std::uint64_t>());
            }
            if (v.get<std::int64_t>() < 0) throw ConfigError(path(key) + ": must be non-negative");
            return static_cast<T>(v.get<std::int64_t>());
        }
        return v.get<T>();
    }

    std::string name_;
    const json* node_ = nullptr;
    std::set<std::string> seen_;
};

template <typename Enum>
Enum parse_choice(const std::string& value, const std::string& key,
                  std::initializer_list<std::pair<const char*, Enum>> choices)
{
    std::string names;
    for (const auto& [name, e] : choices) {
        if (value == name) {
            return e;
        }
        names += names.empty() ? name : std::string("|") + name;
    }
    throw ConfigError(key + ": expected one of " + names + ", got \"" + value + "\"");
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    json doc;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        doc = json::object();
    } else {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    static const std::set<std::string> kSections{"problem", "grid", "solver", "scan", "sim", "output"};
    for (const auto& item : doc.items()) {
        if (kSections.count(item.key()) == 0) {
            throw ConfigError("unknown key: " + item.key());
        }
    }

    RunConfig c;
    Section problem(doc, "problem");
    auto& p = c.params;
    p.sigma1 = problem.required<double>("sigma1");
    p.sigma2 = problem.required<double>("sigma2");
    p.a1 = problem.required<double>("a1");
    p.a2 = problem.required<double>("a2");
    p.alpha1 = problem.required<double>("alpha1");
    p.alpha2 = problem.required<double>("alpha2");
    p.M1 = problem.required<double>("M1");
    p.M2 = problem.required<double>("M2");
    p.R = problem.required<double>("R");
    c.costs.c1 = problem.optional<double>("c1", p.M1);
    c.costs.c2 = problem.optional<double>("c2", p.M2);
    problem.reject_unknown();

    Section grid(doc, "grid");
    c.n_points = grid.optional<std::size_t>("n_points", c.n_points);
    grid.reject_unknown();

    Section solver(doc, "solver");
    c.solver.epsilon = solver.optional<double>("epsilon", c.solver.epsilon);
    c.solver.max_iter = solver.optional<int>("max_iter", c.solver.max_iter);
    c.solver.mode = parse_choice<StartMode>(solver.optional<std::string>("mode", "sub"), "solver.mode",
                                            {{"sub", StartMode::kSubSolution}, {"super", StartMode::kSuperSolution}});
    c.solver.scheme =
        parse_choice<Scheme>(solver.optional<std::string>("scheme", "newton"), "solver.scheme",
                             {{"newton", Scheme::kNewton}, {"sweep", Scheme::kSuccessiveApproximation}});
    solver.reject_unknown();

    Section scan(doc, "scan");
    c.scan.n_x = scan.optional<std::size_t>("n_x", c.scan.n_x);
    c.scan.n_t = scan.optional<std::size_t>("n_t", c.scan.n_t);
    c.scan.n_s = scan.optional<std::size_t>("n_s", c.scan.n_s);
    scan.reject_unknown();

    Section sim(doc, "sim");
    c.sim.dt = sim.optional<double>("dt", c.sim.dt);
    c.sim.t_max = sim.optional<double>("t_max", c.sim.t_max);
    c.sim.x0 = sim.optional<double>("x0", c.sim.x0);
    c.sim.seed = sim.optional<std::uint64_t>("seed", c.sim.seed);
    c.sim.n_paths = sim.optional<std::size_t>("n_paths", c.sim.n_paths);
    c.sim.interpolation = parse_choice<RateInterpolation>(
        sim.optional<std::string>("interpolation", "nearest"), "sim.interpolation",
        {{"nearest", RateInterpolation::kNearest}, {"linear", RateInterpolation::kLinear}});
    sim.reject_unknown();

    Section output(doc, "output");
    c.output_dir = output.optional<std::string>("dir", c.output_dir);
    c.strict = output.optional<bool>("strict", c.strict);
    output.reject_unknown();

    validate_params(c.params, c.costs);
    if (c.n_points < 3) {
        throw ValidationError("grid.n_points must be >= 3");
    }
    if (!(c.solver.epsilon > 0.0)) {
        throw ValidationError("solver.epsilon must be > 0");
    }
    if (c.solver.max_iter < 1) {
        throw ValidationError("solver.max_iter must be >= 1");
    }
    if (c.scan.n_x < 2 || c.scan.n_t < 2 || c.scan.n_s < 2) {
        throw ValidationError("scan resolution components must be >= 2");
    }
    validate_sim_config(c.sim, c.params);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& c)
{
    const auto& p = c.params;
    json doc;
    doc["problem"] = {{"a1", p.a1},         {"a2", p.a2},         {"alpha1", p.alpha1}, {"alpha2", p.alpha2},
                      {"sigma1", p.sigma1}, {"sigma2", p.sigma2}, {"M1", p.M1},         {"M2", p.M2},
                      {"R", p.R},           {"c1", c.costs.c1},   {"c2", c.costs.c2}};
    doc["grid"] = {{"n_points", c.n_points}};
    doc["solver"] = {{"epsilon", c.solver.epsilon},
                     {"max_iter", c.solver.max_iter},
                     {"mode", to_string(c.solver.mode)},
                     {"scheme", to_string(c.solver.scheme)}};
    doc["scan"] = {{"n_x", c.scan.n_x}, {"n_t", c.scan.n_t}, {"n_s", c.scan.n_s}};
    doc["sim"] = {{"dt", c.sim.dt},
                  {"t_max", c.sim.t_max},
                  {"x0", c.sim.x0},
                  {"seed", c.sim.seed},
                  {"n_paths", c.sim.n_paths},
                  {"interpolation", c.sim.interpolation == RateInterpolation::kNearest ? "nearest" : "linear"}};
    doc["output"] = {{"dir", c.output_dir}, {"strict", c.strict}};
    return doc.dump(2) + "\n";
}

} // namespace prodplan
