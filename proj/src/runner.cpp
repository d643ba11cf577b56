#include "pamed/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pamed/dense_oracle.hpp"
#include "pamed/errors.hpp"
#include "pamed/observables.hpp"
#include "pamed/symmetry.hpp"
#include "pamed/verify.hpp"

namespace pamed {

namespace {

namespace fs = std::filesystem;

// Compact human-readable digest of the JSON report, mirrored to stdout.
std::string render_summary(const nlohmann::json& report) {
    std::ostringstream out;
    out << "pam-ed run summary\n";
    if (report.contains("lattice"))
        out << "  lattice: " << report["lattice"]["num_sites"].get<int>() << " sites, "
            << report["lattice"]["num_bonds"].get<std::size_t>() << " bonds\n";
    if (report.contains("filling"))
        out << "  sector: (" << report["filling"]["n_up"].get<int>() << ", "
            << report["filling"]["n_down"].get<int>() << ")\n";
    if (report.contains("spectrum")) {
        const auto& s = report["spectrum"];
        out << "  spectrum: minimizer (" << s["minimizer"][0].get<int>() << ", "
            << s["minimizer"][1].get<int>() << "), E0 = " << s["e0_min"].get<double>()
            << ", half-sector gap = " << s["half_sector_gap"].get<double>() << "\n";
    }
    if (report.contains("correlations")) {
        const auto& c = report["correlations"];
        out << "  correlations: E0 = " << c["e0"].get<double>()
            << ", <S^2> = " << c["s_squared"].get<double>()
            << ", pair lambda_max = " << c["odlro"]["lambda_max"].get<double>() << "\n";
    }
    if (report.contains("verify")) {
        out << "  verify: " << report["verify"]["verdict"].get<std::string>() << "\n";
        for (const auto& check : report["verify"]["checks"])
            out << "    " << check["status"].get<std::string>() << "  "
                << check["name"].get<std::string>() << "  (measured "
                << check["measured"].get<double>() << ", tol "
                << check["tolerance"].get<double>() << ")\n";
    }
    if (report.contains("sweep")) {
        const auto& s = report["sweep"];
        out << "  sweep: " << (s["pass"].get<bool>() ? "pass" : "fail");
        if (s.contains("zz_drift_max_norm"))
            out << ", zz drift " << s["zz_drift_max_norm"].get<double>();
        out << "\n";
        for (const auto& step : s["steps"])
            out << "    eps = " << step["eps"].get<double>() << ": "
                << step["report"]["verdict"].get<std::string>() << "\n";
    }
    if (report.contains("errors"))
        for (const auto& e : report["errors"]) out << "  error: " << e.get<std::string>() << "\n";
    return out.str();
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

bool wants(const RunConfig& c, const std::string& task) {
    for (const std::string& t : c.tasks)
        if (t == task) return true;
    return false;
}

bool wants_format(const RunConfig& c, const std::string& fmt) {
    for (const std::string& f : c.output.formats)
        if (f == fmt) return true;
    return false;
}

VerifyOptions verify_options(const RunConfig& c) {
    VerifyOptions opts;
    opts.tol_eig = c.solver.tol;
    opts.seed = c.solver.seed;
    opts.max_dim = c.solver.max_dim;
    opts.solve.method = c.solver.method;
    opts.solve.dense_cutoff = c.solver.dense_cutoff;
    return opts;
}

nlohmann::json sector_scan_json(const SectorScanResult& scan) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SectorScanRow& row : scan.rows) {
        nlohmann::json r = {{"n_up", row.n_up}, {"n_down", row.n_down}, {"failed", row.failed}};
        if (row.failed)
            r["error"] = row.error;
        else
            r["e0"] = row.e0;
        rows.push_back(std::move(r));
    }
    return {{"rows", rows},
            {"minimizer", {scan.min_n_up, scan.min_n_down}},
            {"e0_min", scan.e0_min},
            {"half_sector_gap", scan.half_sector_gap},
            {"cross_sector_margin", scan.cross_sector_margin}};
}

std::string sectors_csv(const SectorScanResult& scan) {
    std::string out = "n_up,n_down,e0\n";
    char buf[96];
    for (const SectorScanRow& row : scan.rows) {
        if (row.failed) continue;
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", row.n_up, row.n_down, row.e0);
        out += buf;
    }
    return out;
}

}  // namespace

int run(const RunConfig& config) {
    nlohmann::json report;
    report["config"] = config_to_json(config);
    report["generated_at"] = timestamp_utc();
    nlohmann::json errors = nlohmann::json::array();

    const std::vector<Diagnostic> diagnostics = validate(config);
    nlohmann::json diag_json = nlohmann::json::array();
    for (const Diagnostic& d : diagnostics)
        diag_json.push_back({{"level", level_name(d.level)}, {"message", d.message}});
    report["diagnostics"] = diag_json;

    const fs::path out_dir(config.output.directory);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << out_dir << ": " << ec.message() << "\n";
        return kExitConfigError;
    }
    auto flush_report = [&]() {
        report["errors"] = errors;
        write_text(out_dir / "report.json", report.dump(2) + "\n");
        const std::string summary = render_summary(report);
        write_text(out_dir / "summary.txt", summary);
        std::cout << summary;
    };

    if (has_errors(diagnostics)) {
        flush_report();
        return kExitConfigError;
    }

#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
    report["threads"] = config.threads > 0 ? config.threads : omp_get_max_threads();
#else
    report["threads"] = 1;
#endif
    report["seed"] = config.solver.seed;

    int exit_status = kExitSuccess;
    try {
        // Lattice (validated above, so failures here are internal)
        LatticeGraph layer1 = config.lattice.kind == "chain"
                                  ? build_chain(config.lattice.lx, config.lattice.boundary)
                                  : build_square(config.lattice.lx, config.lattice.ly,
                                                 config.lattice.boundary);
        LatticeGraph lattice = layer_double(layer1, config.model.t, config.model.v);
        report["lattice"] = {{"num_sites", lattice.num_sites},
                             {"num_layer1_sites", lattice.num_layer1_sites()},
                             {"num_bonds", lattice.bonds.size()}};
        {
            std::ostringstream edges;
            write_edge_list(lattice, edges);
            write_text(out_dir / "lattice.edges", edges.str());
        }

        int n_up = 0, n_down = 0;
        resolve_filling(config, lattice.num_sites, n_up, n_down);
        report["filling"] = {{"n_up", n_up}, {"n_down", n_down}};

        const VerifyOptions vopts = verify_options(config);
        SolveOptions sopts = vopts.solve;

        if (wants(config, "spectrum")) {
            SectorScanResult scan = sector_scan(config.model, lattice, n_up + n_down,
                                                config.solver.tol, config.solver.seed, sopts,
                                                config.solver.max_dim);
            report["spectrum"] = sector_scan_json(scan);
            if (wants_format(config, "csv"))
                write_text(out_dir / "sectors.csv", sectors_csv(scan));
            if (scan.any_failed) exit_status = std::max(exit_status, kExitNoConvergence);
        }

        if (wants(config, "correlations")) {
            BasisPtr basis =
                enumerate_sector(lattice.num_sites, n_up, n_down, config.solver.max_dim);
            SparseOperator h = build_hamiltonian(config.model, lattice, *basis);
            if (config.output.export_hamiltonian) {
                std::ostringstream coo;
                h.write_coo(coo);
                write_text(out_dir / "hamiltonian.coo", coo.str());
            }
            EigenResult res =
                solve_lowest(h, basis, 1, config.solver.tol, config.solver.seed, sopts);
            const StateVector& ground = res.eigenvectors[0];

            nlohmann::json corr_json;
            corr_json["e0"] = res.eigenvalues[0];
            corr_json["s_squared"] = total_spin_squared(ground);
            for (CorrelationKind kind :
                 {CorrelationKind::transverse, CorrelationKind::zz, CorrelationKind::xx,
                  CorrelationKind::yy, CorrelationKind::pair}) {
                const CorrelationMatrix matrix = correlation_matrix(ground, kind);
                if (wants_format(config, "csv")) {
                    std::ostringstream csv;
                    write_correlation_csv(matrix, csv);
                    write_text(out_dir / ("corr_" + kind_name(kind) + ".csv"), csv.str());
                }
                if (kind == CorrelationKind::pair) {
                    const OdlroSummary odlro =
                        odlro_summary(matrix, lattice.num_layer1_sites());
                    corr_json["odlro"] = {{"lambda_max", odlro.lambda_max},
                                          {"lambda_max_per_dsite", odlro.per_dsite}};
                }
            }
            report["correlations"] = corr_json;
        }

        if (wants(config, "verify")) {
            VerificationReport ver = run_all_checks(config.model, lattice, vopts);
            report["verify"] = ver.to_json();
            if (!ver.verdict()) exit_status = std::max(exit_status, kExitCheckFailed);

            // Per-matrix CSVs of the quantities the checks assess: the pair
            // matrix in the attractive frame and the spin matrices in the
            // repulsive one.
            bool any_ran = false;
            for (const CheckRecord& c : ver.checks) any_ran |= c.hypothesis_met;
            if (wants_format(config, "csv") && any_ran) {
                ModelParams repulsive = config.model;
                repulsive.form = ModelForm::hubbardized;
                const int half = lattice.num_sites / 2;
                BasisPtr basis =
                    enumerate_sector(lattice.num_sites, half, half, config.solver.max_dim);
                auto ground = [&](const ModelParams& mp) {
                    SparseOperator h = build_hubbardized(mp, lattice, *basis);
                    return solve_lowest(h, basis, 1, config.solver.tol, config.solver.seed,
                                        sopts)
                        .eigenvectors[0];
                };
                const StateVector psi_rep = ground(repulsive);
                const StateVector psi_att = ground(repulsive.flipped());
                const std::pair<const StateVector*, CorrelationKind> jobs[] = {
                    {&psi_rep, CorrelationKind::transverse},
                    {&psi_rep, CorrelationKind::zz},
                    {&psi_att, CorrelationKind::pair}};
                for (const auto& [state, kind] : jobs) {
                    std::ostringstream csv;
                    write_correlation_csv(correlation_matrix(*state, kind), csv);
                    write_text(out_dir / ("verify_" + kind_name(kind) + ".csv"), csv.str());
                }
            }
        }

        if (wants(config, "sweep")) {
            SweepResult sweep = epsilon_sweep(config.model, lattice, config.sweep_eps, vopts);
            report["sweep"] = sweep.to_json();
            if (!sweep.pass) exit_status = std::max(exit_status, kExitCheckFailed);
        }
    } catch (const NoConvergence& e) {
        errors.push_back(e.what());
        exit_status = kExitNoConvergence;
    } catch (const Error& e) {
        errors.push_back(e.what());
        exit_status = kExitConfigError;
    }

    flush_report();
    return exit_status;
}

}  // namespace pamed
