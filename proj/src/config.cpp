#include "cqed/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace cqed {

ConfigError::ConfigError(const std::string& message, int line, int column, std::string key)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column),
      key_(std::move(key)) {}

namespace {

struct Position {
    int line{0};
    int column{0};
};

Position position_of(const YAML::Mark& mark) {
    if (mark.is_null()) return {};
    return {mark.line + 1, mark.column + 1};
}

[[noreturn]] void fail(const std::string& message, const YAML::Mark& mark, const std::string& key) {
    const Position pos = position_of(mark);
    throw ConfigError(message, pos.line, pos.column, key);
}

// One section of the document: a mapping whose keys are checked against an
// allow-list and consumed one by one.
class Section {
public:
    Section(const YAML::Node& node, std::string name, std::initializer_list<const char*> allowed)
        : node_(node), name_(std::move(name)) {
        if (!node_) return;
        if (!node_.IsMap()) fail("section '" + name_ + "' must be a mapping", node_.Mark(), name_);
        for (const auto& kv : node_) {
            const std::string key = kv.first.as<std::string>();
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) fail("unknown key '" + name_ + "." + key + "'", kv.first.Mark(), key);
        }
    }

    bool has(const char* key) const { return node_ && node_[key]; }
    YAML::Mark mark(const char* key) const { return node_[key].Mark(); }

    template <typename T>
    void read(const char* key, T& out, const char* what) const {
        if (!has(key)) return;
        const YAML::Node v = node_[key];
        try {
            out = v.as<T>();
        } catch (const YAML::Exception&) {
            fail("key '" + std::string(key) + "' must be " + what, v.Mark(), key);
        }
    }

    void read_real(const char* key, double& out) const {
        read(key, out, "a number");
        if (has(key) && !std::isfinite(out)) {
            fail("key '" + std::string(key) + "' must be finite", mark(key), key);
        }
    }

    void read_count(const char* key, std::size_t& out) const {
        if (!has(key)) return;
        long long v = 0;
        read(key, v, "an integer");
        if (v < 0) fail("key '" + std::string(key) + "' must be >= 0", mark(key), key);
        out = static_cast<std::size_t>(v);
    }

    void require_positive(const char* key, double value) const {
        if (has(key) && !(value > 0.0)) {
            fail("key '" + std::string(key) + "' must be > 0", mark(key), key);
        }
    }

    const YAML::Node& node() const { return node_; }

private:
    YAML::Node node_;
    std::string name_;
};

// Maps a validate() message back to the key it names.
std::string leading_key(const std::string& message) {
    const auto end = message.find_first_of(" :");
    return message.substr(0, end);
}

void parse_model(const Section& s, RunConfig& cfg) {
    ModelParams& p = cfg.sweep.base;
    if (s.has("variant")) {
        std::string name;
        s.read("variant", name, "a string");
        try {
            p.variant = parse_variant(name);
        } catch (const std::exception& e) {
            fail(e.what(), s.mark("variant"), "variant");
        }
    }
    s.read_real("xi", p.xi);
    s.read_real("g", p.g);
    s.read_real("kappa", p.kappa);
    s.read_real("gamma", p.gamma);
    s.read_real("gamma_s", p.gamma_s);
    s.read_real("mu", p.mu);
    s.read_real("delta_c", p.delta_c);
    DetuningOffsets& o = cfg.sweep.offsets;
    s.read_real("source_offset", o.source);
    s.read_real("atom_offset_1", o.atom_1);
    s.read_real("atom_offset_2", o.atom_2);
    p = at_cavity_detuning(p, o, p.delta_c);
    try {
        ModelParams check = p;
        check.n_max = std::max<std::size_t>(check.n_max, 1);
        validate(check);
    } catch (const std::invalid_argument& e) {
        const std::string key = leading_key(e.what());
        fail(e.what(), s.has(key.c_str()) ? s.mark(key.c_str()) : YAML::Mark::null_mark(), key);
    }
}

void parse_numerics(const Section& s, RunConfig& cfg) {
    s.read_count("n_max", cfg.sweep.base.n_max);
    if (s.has("n_max") && cfg.sweep.base.n_max < 3) {
        fail("key 'n_max' must be >= 3", s.mark("n_max"), "n_max");
    }
    s.read("check_truncation", cfg.sweep.check_truncation, "true or false");
    s.read_real("rtol", cfg.integrator.rtol);
    s.read_real("atol", cfg.integrator.atol);
    s.require_positive("rtol", cfg.integrator.rtol);
    s.require_positive("atol", cfg.integrator.atol);
    s.read_count("failure_budget", cfg.failure_budget);
}

void parse_sweep(const Section& s, RunConfig& cfg) {
    SweepConfig& sw = cfg.sweep;
    if (s.has("axis")) {
        std::string name;
        s.read("axis", name, "a string");
        try {
            sw.axis = parse_axis(name);
        } catch (const std::exception& e) {
            fail(e.what(), s.mark("axis"), "axis");
        }
    }
    const bool ranged = s.has("start") || s.has("stop") || s.has("points");
    if (s.has("values")) {
        if (ranged) {
            fail("'values' cannot be combined with start/stop/points", s.mark("values"), "values");
        }
        s.read("values", sw.grid, "a list of numbers");
    } else {
        double start = sw.axis == SweepAxis::G ? 0.0 : -20.0;
        double stop = sw.axis == SweepAxis::G ? 3.0 : 20.0;
        std::size_t points = 161;
        s.read_real("start", start);
        s.read_real("stop", stop);
        s.read_count("points", points);
        sw.grid = linear_grid(start, stop, points);
    }
    if (s.has("observables")) {
        std::vector<std::string> names;
        s.read("observables", names, "a list of observable names");
        sw.observables.clear();
        for (const auto& n : names) {
            try {
                sw.observables.insert(parse_observable(n));
            } catch (const std::exception& e) {
                fail(e.what(), s.mark("observables"), "observables");
            }
        }
        if (sw.observables.empty()) fail("no observables selected", s.mark("observables"), "observables");
    }
}

void parse_threshold(const Section& s, RunConfig& cfg) {
    ThresholdSettings& t = cfg.threshold;
    s.read_real("g_lo", t.g_lo);
    s.read_real("g_hi", t.g_hi);
    s.read_real("tolerance", t.tolerance);
    if (s.has("g_lo") && t.g_lo < 0.0) fail("key 'g_lo' must be >= 0", s.mark("g_lo"), "g_lo");
    if (!(t.g_lo < t.g_hi)) {
        fail("key 'g_hi' must exceed g_lo", s.has("g_hi") ? s.mark("g_hi") : YAML::Mark::null_mark(),
             "g_hi");
    }
    s.require_positive("tolerance", t.tolerance);
}

void parse_evolve(const Section& s, RunConfig& cfg) {
    EvolveSettings& e = cfg.evolve;
    s.read_real("t_max", e.t_max);
    s.read_count("points", e.points);
    if (s.has("t_max") && e.t_max < 0.0) fail("key 't_max' must be >= 0", s.mark("t_max"), "t_max");
    if (e.t_max > 0.0 && e.points < 2) {
        fail("key 'points' must be >= 2", s.has("points") ? s.mark("points") : YAML::Mark::null_mark(),
             "points");
    }
}

}  // namespace

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.sweep.grid = linear_grid(-20.0, 20.0, 161);
    return cfg;
}

RunConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        const Position pos = position_of(e.mark);
        throw ConfigError(e.msg, pos.line, pos.column, "");
    }
    RunConfig cfg = default_run_config();
    if (root.IsNull()) return cfg;
    if (!root.IsMap()) fail("config must be a mapping of sections", root.Mark(), "");

    const Section top(root, "config", {"model", "numerics", "sweep", "threshold", "evolve"});
    // numerics first: the cutoff feeds the model check.
    parse_numerics(Section(root["numerics"], "numerics",
                           {"n_max", "check_truncation", "rtol", "atol", "failure_budget"}),
                   cfg);
    parse_model(Section(root["model"], "model",
                        {"variant", "xi", "g", "kappa", "gamma", "gamma_s", "mu", "delta_c",
                         "source_offset", "atom_offset_1", "atom_offset_2"}),
                cfg);
    parse_sweep(Section(root["sweep"], "sweep",
                        {"axis", "start", "stop", "points", "values", "observables"}),
                cfg);
    parse_threshold(Section(root["threshold"], "threshold", {"g_lo", "g_hi", "tolerance"}), cfg);
    parse_evolve(Section(root["evolve"], "evolve", {"t_max", "points"}), cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

void override_n_max(RunConfig& config, std::size_t n_max) {
    if (n_max < 3) throw ConfigError("--n-max must be >= 3", 0, 0, "n_max");
    config.sweep.base.n_max = n_max;
}

nlohmann::json to_json(const ModelParams& p) {
    return {{"variant", std::string(to_string(p.variant))},
            {"xi", p.xi},
            {"g", p.g},
            {"kappa", p.kappa},
            {"gamma", p.gamma},
            {"gamma_s", p.gamma_s},
            {"mu", p.mu},
            {"delta_c", p.delta_c},
            {"delta_s", p.delta_s},
            {"delta_1", p.delta_1},
            {"delta_2", p.delta_2},
            {"n_max", p.n_max}};
}

nlohmann::json to_json(const RunConfig& config) {
    const SweepConfig& sw = config.sweep;
    nlohmann::json observables = nlohmann::json::array();
    for (Observable o : sw.observables) observables.push_back(std::string(to_string(o)));
    return {
        {"model", to_json(sw.base)},
        {"offsets",
         {{"source_offset", sw.offsets.source},
          {"atom_offset_1", sw.offsets.atom_1},
          {"atom_offset_2", sw.offsets.atom_2}}},
        {"numerics",
         {{"n_max", sw.base.n_max},
          {"check_truncation", sw.check_truncation},
          {"residual_tolerance", sw.residual_tolerance},
          {"truncation_tolerance", sw.truncation_tolerance},
          {"gap_floor", sw.steady.gap_floor},
          {"clip_floor", sw.steady.clip_floor},
          {"rtol", config.integrator.rtol},
          {"atol", config.integrator.atol},
          {"failure_budget", config.failure_budget}}},
        {"sweep", {{"axis", std::string(to_string(sw.axis))}, {"values", sw.grid}, {"observables", observables}}},
        {"threshold",
         {{"g_lo", config.threshold.g_lo},
          {"g_hi", config.threshold.g_hi},
          {"tolerance", config.threshold.tolerance}}},
        {"evolve", {{"t_max", config.evolve.t_max}, {"points", config.evolve.points}}},
    };
}

}  // namespace cqed
