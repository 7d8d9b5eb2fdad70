#include "cqed/report.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace cqed;

namespace {

SweepConfig scan() {
    SweepConfig c;
    c.base.variant = Variant::CascadedEmptyCavity;
    c.base.n_max = 5;
    c.grid = linear_grid(-3.0, 3.0, 7);
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("numbers use 12 significant digits") {
    CHECK(format_number(0.1681074117491234) == "0.168107411749");
    CHECK(format_number(1234567.891234567) == "1234567.89123");
    CHECK(format_number(2.5e-17) == "2.5e-17");
    CHECK(format_number(std::optional<double>{}) == "");
}

TEST_CASE("statistics table header") {
    const SweepConfig c = scan();
    const Table t = statistics_table(c, {});
    const std::vector<std::string> expected{"delta_c", "n_a", "g2", "g3", "p0", "p1", "p2", "p3", "p4", "p5",
                                            "f1", "f2", "r21", "residual", "truncation_shift", "flags"};
    CHECK(t.header == expected);
    SweepConfig subset = c;
    subset.observables = {Observable::G2};
    CHECK(statistics_table(subset, {}).header ==
          std::vector<std::string>{"delta_c", "g2", "residual", "truncation_shift", "flags"});
}

TEST_CASE("CSV round-trip recovers values to the printed precision") {
    const SweepConfig c = scan();
    const auto rows = run_sweep(c);
    const std::string csv = to_csv(statistics_table(c, rows));
    const Table back = parse_csv(csv);
    REQUIRE(back.rows.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = back.rows[i];
        const PhotonStatistics& s = rows[i].statistics;
        CHECK(*parse_number(r[0]) == rows[i].axis_value);
        CHECK(std::abs(*parse_number(r[1]) - s.n_a) <= 1e-11 * s.n_a);
        CHECK(std::abs(*parse_number(r[2]) - *s.g2) <= 1e-11 * *s.g2);
        for (std::size_t n = 0; n <= 5; ++n) {
            CHECK(std::abs(*parse_number(r[4 + n]) - s.p_n[n]) <= 1e-11 * s.p_n[n]);
        }
        CHECK(std::abs(*parse_number(r[11]) - s.f_k[2]) <= 1e-11);
        CHECK(r.back() == "");
    }
    CHECK(to_csv(back) == csv);
    CHECK_FALSE(parse_number("").has_value());
    CHECK_THROWS_AS(parse_number("1.0x"), std::invalid_argument);
}

TEST_CASE("outputs come with one manifest naming the data file") {
    const auto dir = std::filesystem::temp_directory_path() / "cqed_report_test";
    std::filesystem::remove_all(dir);
    RunManifest m;
    m.command = "sweep";
    m.config_echo = {{"n_max", 5}};
    m.timings = {{"compute", 0.5}};
    m.diagnostics = {{"flagged_rows", 0}};
    Table t;
    t.header = {"x", "y"};
    t.rows = {{"1", "2"}};
    write_outputs(dir / "sweep.csv", t, m);
    CHECK(slurp(dir / "sweep.csv") == "x,y\n1,2\n");
    CHECK(manifest_path(dir / "sweep.csv") == dir / "sweep.manifest.json");
    const auto json = nlohmann::json::parse(slurp(dir / "sweep.manifest.json"));
    CHECK(json["data_file"] == "sweep.csv");
    CHECK(json["artifact_version"] == kArtifactVersion);
    CHECK(json["config_echo"]["n_max"] == 5);
    CHECK(json["timings_seconds"]["compute"] == 0.5);
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
    CHECK(files == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("evolution and threshold tables") {
    EvolutionComparison c;
    c.rows = {{0.0, 0.0, 0.0}, {1.0, 0.2, 0.19}};
    const Table e = evolution_table(c);
    CHECK(e.header == std::vector<std::string>{"t", "n_master", "n_effective", "abs_deviation"});
    CHECK(e.rows[1][3] == "0.01");
    const Table th = threshold_table({0.98, 1.0, 17});
    CHECK(th.rows[0] == std::vector<std::string>{"0.98", "1", "17"});
}
