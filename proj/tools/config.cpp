#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dgbo/init.hpp"
#include "dgbo/io.hpp"
#include "dgbo/spectral.hpp"

namespace dgbo::cli {

using nlohmann::json;

json load_json(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config " + path);
    json doc = json::parse(is, nullptr, true, true);
    if (!doc.is_object()) throw std::invalid_argument("config root must be an object");
    return doc;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

template <class T>
T get(const json& doc, const std::string& key, T fallback) {
    json v = get_path(doc, key, nullptr);
    if (v.is_null()) return fallback;
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config key " + key + " has the wrong type");
    }
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw std::invalid_argument("config key " + key + ": " + what);
}

// Keys accepted in each section; mirrors docs/config.schema.json so typos are reported.
void check_known_keys(const json& doc) {
    static const std::map<std::string, std::set<std::string>> sections{
        {"grid", {"n", "L"}},
        {"eq", {"alpha", "k", "mu"}},
        {"init", {"type", "amplitude", "width", "s", "seed", "max_mode", "modes", "amplitudes", "path"}},
        {"time", {"dt", "t_end", "adapt", "cfl_safety", "dealias_degree", "diagnostics_every"}},
        {"evolve", {"checkpoint_every", "mass_tol"}},
        {"linear", {"samples", "tol"}},
        {"picard", {"T", "n_iter", "n_quad", "tol"}},
        {"waveop", {"T0", "T_max", "n_iter", "n_quad"}},
        {"smoothing", {"samples"}},
        {"imethod", {"N", "tol", "companion"}},
        {"frm", {"alphas", "s_offset", "include_cs", "include_level_band", "tol"}},
        {"strichartz", {"p", "q", "s"}},
        {"sweep", {"command", "values", "jobs"}},
    };
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "observers" || key == "output_dir") continue;
        const auto it = sections.find(key);
        require(it != sections.end(), key, "unknown section");
        require(value.is_object(), key, "must be an object");
        for (const auto& [sub, _] : value.items())
            require(it->second.count(sub) > 0, key + "." + sub, "unknown key");
    }
}

}  // namespace

void set_path(json& doc, const std::string& dotted, json value) {
    json* node = &doc;
    auto parts = split(dotted, '.');
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->contains(parts[i]) || !(*node)[parts[i]].is_object()) (*node)[parts[i]] = json::object();
        node = &(*node)[parts[i]];
    }
    (*node)[parts.back()] = std::move(value);
}

json get_path(const json& doc, const std::string& dotted, json fallback) {
    const json* node = &doc;
    for (const auto& p : split(dotted, '.')) {
        if (!node->is_object() || !node->contains(p)) return fallback;
        node = &(*node)[p];
    }
    return *node;
}

const std::vector<std::string>& known_observers() {
    static const std::vector<std::string> names{"mass", "energy", "l2", "hs_crit", "linf", "imag_residue"};
    return names;
}

ExperimentConfig parse_config(const json& doc) {
    check_known_keys(doc);
    ExperimentConfig c;
    c.raw = doc;
    const int n = get<int>(doc, "grid.n", 256);
    const double L = get<double>(doc, "grid.L", 50.0);
    require(n >= 8 && n % 2 == 0, "grid.n", "must be even and at least 8");
    require(L > 0.0, "grid.L", "must be positive");
    c.grid = Grid(n, L);

    c.eq.alpha = get<double>(doc, "eq.alpha", 2.0);
    c.eq.k = get<int>(doc, "eq.k", 4);
    c.eq.mu = get<double>(doc, "eq.mu", 1.0);
    require(c.eq.alpha >= 1.0 && c.eq.alpha <= 2.0, "eq.alpha", "must lie in [1, 2]");
    require(c.eq.mu == 1.0 || c.eq.mu == -1.0, "eq.mu", "must be +1 or -1");
    require(c.eq.k >= 1, "eq.k", "must be a positive integer");

    auto& in = c.init;
    in.type = get<std::string>(doc, "init.type", "gaussian");
    in.amplitude = get<double>(doc, "init.amplitude", 0.1);
    in.width = get<double>(doc, "init.width", 1.0);
    in.s = get<double>(doc, "init.s", 0.0);
    in.seed = get<std::uint64_t>(doc, "init.seed", 1);
    in.max_mode = get<int>(doc, "init.max_mode", 0);
    in.modes = get<std::vector<int>>(doc, "init.modes", {});
    in.amplitudes = get<std::vector<double>>(doc, "init.amplitudes", {});
    in.path = get<std::string>(doc, "init.path", "");
    const std::vector<std::string> types{"gaussian", "random_hs", "band_limited", "file", "zero"};
    require(std::find(types.begin(), types.end(), in.type) != types.end(), "init.type",
            "must be one of gaussian, random_hs, band_limited, file, zero");
    require(in.width > 0.0, "init.width", "must be positive");
    require(in.max_mode >= 0 && in.max_mode < n / 2, "init.max_mode", "must lie in [0, n/2)");
    if (in.type == "band_limited")
        require(!in.modes.empty() && in.modes.size() == in.amplitudes.size(), "init.modes",
                "needs matching init.amplitudes");
    if (in.type == "file") require(!in.path.empty(), "init.path", "required for file data");

    c.time.dt = get<double>(doc, "time.dt", 1e-3);
    c.time.t_end = get<double>(doc, "time.t_end", 1.0);
    c.time.adapt = get<bool>(doc, "time.adapt", false);
    c.time.cfl_safety = get<double>(doc, "time.cfl_safety", 0.5);
    c.time.diagnostics_every = get<int>(doc, "time.diagnostics_every", 1);
    c.time.dealias_degree = get<int>(doc, "time.dealias_degree", 0);
    require(c.time.dt > 0.0, "time.dt", "must be positive");
    require(c.time.t_end >= 0.0, "time.t_end", "must be nonnegative");

    c.observers = get<std::vector<std::string>>(doc, "observers", known_observers());
    for (const auto& o : c.observers)
        require(std::find(known_observers().begin(), known_observers().end(), o) != known_observers().end(),
                "observers", "unknown diagnostic " + o);
    c.output_dir = get<std::string>(doc, "output_dir", "");
    return c;
}

Field make_initial(const ExperimentConfig& cfg, double* t0) {
    if (t0) *t0 = 0.0;
    const auto& in = cfg.init;
    const Grid& g = cfg.grid;
    if (in.type == "gaussian") return gaussian(g, in.amplitude, in.width);
    if (in.type == "zero") return Field::zeros(g);
    if (in.type == "band_limited") return band_limited(g, in.modes, in.amplitudes, {});
    if (in.type == "random_hs") {
        const int K = in.max_mode > 0 ? in.max_mode : dealias_cutoff(g.n, cfg.eq.k + 1);
        return random_hs(g, in.s, in.amplitude, in.seed, K);
    }
    io::StoredField sf = io::read_field(in.path);
    if (t0) *t0 = sf.t;
    if (sf.field.grid() != g) throw std::invalid_argument("stored field grid differs from grid.n / grid.L");
    return sf.field;
}

std::string resolve_output_dir(const ExperimentConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("DGBO_OUTPUT_DIR"); env && *env) return env;
    return "dgbo_out";
}

double parse_real(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "Inf") return kInf;
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: " + s);
    return v;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& p : split(s, ',')) out.push_back(parse_real(p));
    return out;
}

}  // namespace dgbo::cli
