#include "cqed/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cqed {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

Table statistics_table(const SweepConfig& config, const std::vector<SweepRow>& rows) {
    const auto& obs = config.observables;
    const bool pn = obs.count(Observable::PN) > 0;
    const bool fk = obs.count(Observable::FK) > 0;
    const std::size_t n_max = config.base.n_max;

    Table t;
    t.header.emplace_back(to_string(config.axis));
    if (obs.count(Observable::NA)) t.header.emplace_back("n_a");
    if (obs.count(Observable::G2)) t.header.emplace_back("g2");
    if (obs.count(Observable::G3)) t.header.emplace_back("g3");
    if (pn) {
        for (std::size_t n = 0; n <= n_max; ++n) t.header.push_back("p" + std::to_string(n));
    }
    if (fk) {
        t.header.emplace_back("f1");
        t.header.emplace_back("f2");
    }
    if (obs.count(Observable::R21)) t.header.emplace_back("r21");
    t.header.emplace_back("residual");
    t.header.emplace_back("truncation_shift");
    t.header.emplace_back("flags");

    for (const SweepRow& row : rows) {
        const PhotonStatistics& s = row.statistics;
        const bool ok = !row.diagnostics.solver_failed;
        auto value = [ok](double v) { return ok ? format_number(v) : std::string(); };
        std::vector<std::string> r;
        r.push_back(format_number(row.axis_value));
        if (obs.count(Observable::NA)) r.push_back(value(s.n_a));
        if (obs.count(Observable::G2)) r.push_back(format_number(s.g2));
        if (obs.count(Observable::G3)) r.push_back(format_number(s.g3));
        if (pn) {
            for (std::size_t n = 0; n <= n_max; ++n) {
                r.push_back(n < s.p_n.size() ? format_number(s.p_n[n]) : std::string());
            }
        }
        if (fk) {
            for (std::size_t k : {1u, 2u}) {
                r.push_back(k < s.f_k.size() ? format_number(s.f_k[k]) : std::string());
            }
        }
        if (obs.count(Observable::R21)) r.push_back(format_number(s.r21));
        r.push_back(value(row.diagnostics.residual));
        r.push_back(format_number(row.diagnostics.truncation_shift));
        r.push_back(join(row.flags(config), '|'));
        t.rows.push_back(std::move(r));
    }
    return t;
}

Table evolution_table(const EvolutionComparison& comparison) {
    Table t;
    t.header = {"t", "n_master", "n_effective", "abs_deviation"};
    for (const EvolutionRow& row : comparison.rows) {
        t.rows.push_back({format_number(row.t), format_number(row.n_master),
                          format_number(row.n_effective),
                          format_number(std::abs(row.n_master - row.n_effective))});
    }
    return t;
}

Table threshold_table(const ThresholdResult& result) {
    Table t;
    t.header = {"g", "g2", "iterations"};
    t.rows.push_back({format_number(result.g), format_number(result.g2),
                      std::to_string(result.iterations)});
    return t;
}

std::string to_csv(const Table& table) {
    std::string out = join(table.header, ',') + '\n';
    for (const auto& row : table.rows) out += join(row, ',') + '\n';
    return out;
}

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            t.header = std::move(fields);
            first = false;
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    return t;
}

std::optional<double> parse_number(const std::string& field) {
    if (field.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) {
        throw std::invalid_argument("not a number: '" + field + "'");
    }
    return v;
}

nlohmann::json RunManifest::to_json() const {
    return {{"data_file", data_file},
            {"command", command},
            {"artifact_version", kArtifactVersion},
            {"config_echo", config_echo},
            {"timings_seconds", timings},
            {"diagnostics", diagnostics}};
}

std::filesystem::path manifest_path(const std::filesystem::path& data_file) {
    std::filesystem::path p = data_file;
    p.replace_extension(".manifest.json");
    return p;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

void write_outputs(const std::filesystem::path& data_file, const Table& table,
                   RunManifest manifest) {
    if (data_file.has_parent_path()) std::filesystem::create_directories(data_file.parent_path());
    manifest.data_file = data_file.filename().string();
    write_file(data_file, to_csv(table));
    write_file(manifest_path(data_file), manifest.to_json().dump(2) + '\n');
}

}  // namespace cqed
