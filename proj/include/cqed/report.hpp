// report.hpp: CSV tables and their JSON manifests.
//
// Numbers are printed with 12 significant digits; undefined values are empty
// fields. Every data file gets one manifest, <stem>.manifest.json, naming it.

#pragma once

#include "cqed/config.hpp"
#include "cqed/sweep.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cqed {

inline constexpr const char* kArtifactVersion = "1.0.0";

std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Columns: axis, n_a, g2, g3, p0..p_nmax, f1, f2, r21, residual,
// truncation_shift, flags; unselected observables are left out.
Table statistics_table(const SweepConfig& config, const std::vector<SweepRow>& rows);

Table evolution_table(const EvolutionComparison& comparison);

Table threshold_table(const ThresholdResult& result);

std::string to_csv(const Table& table);

// Splits CSV text without quoting support; fields never contain commas.
Table parse_csv(const std::string& text);

// Parses a numeric field; empty means undefined.
std::optional<double> parse_number(const std::string& field);

struct RunManifest {
    std::string data_file;
    std::string command;
    nlohmann::json config_echo;
    std::map<std::string, double> timings;  // seconds, per phase
    nlohmann::json diagnostics;

    nlohmann::json to_json() const;
};

std::filesystem::path manifest_path(const std::filesystem::path& data_file);

// Writes the CSV and its manifest. Throws std::runtime_error on IO failure.
void write_outputs(const std::filesystem::path& data_file, const Table& table,
                   RunManifest manifest);

}  // namespace cqed
