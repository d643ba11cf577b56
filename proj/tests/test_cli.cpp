#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pamed/config.hpp"
#include "pamed/errors.hpp"
#include "pamed/runner.hpp"

using namespace pamed;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("pam_ed_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

void strip_time_fields(nlohmann::json& j) {
    if (j.is_object()) {
        j.erase("generated_at");
        j.erase("timing_seconds");
        for (auto& [key, value] : j.items()) strip_time_fields(value);
    } else if (j.is_array()) {
        for (auto& value : j) strip_time_fields(value);
    }
}

}  // namespace

TEST_CASE("config defaults form the smoke-test instance") {
    const RunConfig c = parse_config(nlohmann::json::object());
    CHECK(c.lattice.kind == "chain");
    CHECK(c.lattice.lx == 2);
    CHECK(c.lattice.boundary == Boundary::open);
    CHECK(c.model.t == 1.0);
    CHECK(c.model.v == 1.0);
    CHECK(c.model.u == 4.0);
    CHECK(c.model.eps_aux == 0.0);
    CHECK(c.model.eps_d_value() == -2.0);  // auto-filled symmetric point
    CHECK(c.filling.mode == "half");
    CHECK(c.tasks == std::vector<std::string>{"verify"});
    CHECK_FALSE(has_errors(validate(c)));
}

TEST_CASE("config validation diagnostics") {
    SUBCASE("eps_d omitted: auto-filled, no diagnostic") {
        RunConfig c = parse_config(nlohmann::json::object());
        CHECK(validate(c).empty());
        CHECK(c.model.eps_d_value() == -2.0);
    }
    SUBCASE("asymmetric point without the flag is an error") {
        RunConfig c = parse_config({{"model", {{"eps_d", 0.5}}}});
        CHECK(has_errors(validate(c)));
    }
    SUBCASE("asymmetric point with the flag is a warning") {
        RunConfig c = parse_config({{"model", {{"eps_d", 0.5}, {"asymmetric", true}}}});
        CHECK_FALSE(has_errors(validate(c)));
    }
    SUBCASE("capacity violation reports the computed dimension") {
        RunConfig c = parse_config(
            {{"lattice", {{"kind", "chain"}, {"lx", 4}}}, {"solver", {{"max_dim", 100}}}});
        const auto diags = validate(c);
        REQUIRE(has_errors(diags));
        bool mentions_dim = false;
        for (const auto& d : diags)
            mentions_dim |= d.message.find("4900") != std::string::npos;
        CHECK(mentions_dim);
    }
    SUBCASE("periodic odd chain is non-bipartite") {
        RunConfig c = parse_config(
            {{"lattice", {{"kind", "chain"}, {"lx", 3}, {"boundary", "periodic"}}}});
        CHECK(has_errors(validate(c)));
    }
    SUBCASE("unknown keys are rejected at parse time") {
        CHECK_THROWS_AS(parse_config({{"lattice", {{"size", 3}}}}), ConfigError);
        CHECK_THROWS_AS(parse_config({{"unknown_section", 1}}), ConfigError);
    }
}

TEST_CASE("config echo round-trips exactly") {
    RunConfig c = parse_config({{"model", {{"u", 2.5}, {"eps_aux", 0.05}}},
                                {"tasks", {"spectrum", "verify"}},
                                {"solver", {{"seed", 42}, {"method", "lanczos"}}}});
    const nlohmann::json echo = config_to_json(c);
    const RunConfig reparsed = parse_config(echo);
    CHECK(config_to_json(reparsed).dump() == echo.dump());
}

TEST_CASE("run: minimal config verifies the theorems end to end") {
    const fs::path dir = fresh_dir("minimal");
    RunConfig c = parse_config(nlohmann::json::object());
    c.output.directory = dir.string();
    CHECK(run(c) == kExitSuccess);

    const nlohmann::json report = read_json(dir / "report.json");
    CHECK(report["verify"]["verdict"] == "pass");
    CHECK(report["verify"]["checks"].size() == 4);
    CHECK(fs::exists(dir / "lattice.edges"));
    CHECK(fs::exists(dir / "summary.txt"));
    for (const char* name : {"verify_transverse.csv", "verify_zz.csv", "verify_pair.csv"})
        CHECK(fs::exists(dir / name));
    fs::remove_all(dir);
}

TEST_CASE("run: non-bipartite lattice exits with the config status") {
    const fs::path dir = fresh_dir("nonbipartite");
    RunConfig c = parse_config(
        {{"lattice", {{"kind", "chain"}, {"lx", 3}, {"boundary", "periodic"}}}});
    c.output.directory = dir.string();
    CHECK(run(c) == kExitConfigError);
    const nlohmann::json report = read_json(dir / "report.json");
    bool mentions = false;
    for (const auto& d : report["diagnostics"])
        mentions |= d["message"].get<std::string>().find("NonBipartite") != std::string::npos;
    CHECK(mentions);
    fs::remove_all(dir);
}

TEST_CASE("run: asymmetric flag disables theorem checks") {
    const fs::path dir = fresh_dir("asymmetric");
    RunConfig c = parse_config({{"model", {{"eps_d", 0.0}, {"asymmetric", true}}}});
    c.output.directory = dir.string();
    CHECK(run(c) == kExitSuccess);  // skipped checks do not fail the run
    const nlohmann::json report = read_json(dir / "report.json");
    for (const auto& check : report["verify"]["checks"]) {
        CHECK(check["status"] == "skipped");
        CHECK(check["pass"] == false);
    }
    fs::remove_all(dir);
}

TEST_CASE("run: spectrum task only emits the sector table and no checks") {
    const fs::path dir = fresh_dir("spectrum");
    RunConfig c = parse_config({{"tasks", {"spectrum"}}});
    c.output.directory = dir.string();
    CHECK(run(c) == kExitSuccess);
    const nlohmann::json report = read_json(dir / "report.json");
    CHECK(report.contains("spectrum"));
    CHECK_FALSE(report.contains("verify"));
    CHECK(fs::exists(dir / "sectors.csv"));

    std::ifstream csv(dir / "sectors.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n_up,n_down,e0");
    fs::remove_all(dir);
}

TEST_CASE("run: correlations task emits the per-kind CSV matrices") {
    const fs::path dir = fresh_dir("correlations");
    RunConfig c = parse_config({{"tasks", {"correlations"}}});
    c.output.directory = dir.string();
    CHECK(run(c) == kExitSuccess);
    for (const char* kind : {"transverse", "zz", "xx", "yy", "pair"})
        CHECK(fs::exists(dir / ("corr_" + std::string(kind) + ".csv")));
    const nlohmann::json report = read_json(dir / "report.json");
    CHECK(report["correlations"].contains("odlro"));
    CHECK(report["correlations"]["s_squared"].get<double>() <= 1e-9);
    fs::remove_all(dir);
}

TEST_CASE("run: hamiltonian export emits coordinate text") {
    const fs::path dir = fresh_dir("coo");
    RunConfig c = parse_config({{"lattice", {{"kind", "chain"}, {"lx", 1}}},
                                {"tasks", {"correlations"}},
                                {"output", {{"export_hamiltonian", true}}}});
    c.output.directory = dir.string();
    CHECK(run(c) == kExitSuccess);
    std::ifstream coo(dir / "hamiltonian.coo");
    REQUIRE(coo.good());
    std::string line;
    std::getline(coo, line);
    std::uint64_t row, col;
    double value;
    std::istringstream first(line);
    CHECK(static_cast<bool>(first >> row >> col >> value));
    fs::remove_all(dir);
}

TEST_CASE("run: sweep task") {
    const fs::path dir = fresh_dir("sweep");
    RunConfig c = parse_config(
        {{"lattice", {{"kind", "chain"}, {"lx", 1}}}, {"tasks", {"sweep"}},
         {"sweep", {{"eps_list", {0.1, 0.0}}}}});
    c.output.directory = dir.string();
    CHECK(run(c) == kExitSuccess);
    const nlohmann::json report = read_json(dir / "report.json");
    CHECK(report["sweep"]["pass"] == true);
    CHECK(report["sweep"]["steps"].size() == 2);
    fs::remove_all(dir);
}

TEST_CASE("determinism: identical config and seed give identical reports") {
    const fs::path dir1 = fresh_dir("det1");
    const fs::path dir2 = fresh_dir("det2");
    RunConfig c = parse_config({{"tasks", {"verify", "spectrum", "correlations"}}});
    c.output.directory = dir1.string();
    REQUIRE(run(c) == kExitSuccess);
    c.output.directory = dir2.string();
    REQUIRE(run(c) == kExitSuccess);

    nlohmann::json a = read_json(dir1 / "report.json");
    nlohmann::json b = read_json(dir2 / "report.json");
    strip_time_fields(a);
    strip_time_fields(b);
    a.erase("config");  // differs in output.directory by construction
    b.erase("config");
    CHECK(a.dump() == b.dump());
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("cli binary: exit codes and validate output") {
    const fs::path dir = fresh_dir("cli");
    const fs::path config_path = dir / "config.json";
    {
        std::ofstream out(config_path);
        out << R"({"lattice": {"kind": "chain", "lx": 1}, "tasks": ["verify"]})";
    }
    const std::string binary = PAM_ED_BINARY;

    const int validate_status = std::system(
        (binary + " validate " + config_path.string() + " > " + (dir / "v.log").string()).c_str());
    CHECK(WEXITSTATUS(validate_status) == kExitSuccess);

    const int run_status = std::system((binary + " run " + config_path.string() +
                                        " --output-dir " + (dir / "out").string() + " > " +
                                        (dir / "r.log").string())
                                           .c_str());
    CHECK(WEXITSTATUS(run_status) == kExitSuccess);
    CHECK(fs::exists(dir / "out" / "report.json"));

    {
        std::ofstream out(config_path);
        out << R"({"lattice": {"kind": "chain", "lx": 3, "boundary": "periodic"}})";
    }
    const int bad_status = std::system(
        (binary + " run " + config_path.string() + " --output-dir " + (dir / "out2").string() +
         " > " + (dir / "b.log").string())
            .c_str());
    CHECK(WEXITSTATUS(bad_status) == kExitConfigError);
    fs::remove_all(dir);
}
