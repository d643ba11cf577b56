#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pamed/config.hpp"
#include "pamed/errors.hpp"
#include "pamed/runner.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string output_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = -1;
};

pamed::RunConfig load(const CommonFlags& flags) {
    pamed::RunConfig config = flags.config_path.empty()
                                  ? pamed::parse_config(nlohmann::json::object())
                                  : pamed::load_config_file(flags.config_path);
    if (!flags.output_dir.empty()) config.output.directory = flags.output_dir;
    if (flags.seed_set) config.solver.seed = flags.seed;
    if (flags.threads >= 0) config.threads = flags.threads;
    return config;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
    auto* pos = cmd->add_option("config", flags.config_path, "JSON run configuration");
    if (config_required) pos->required();
    cmd->add_option("--output-dir", flags.output_dir, "override output.directory");
    cmd->add_option("--seed", flags.seed, "override solver.seed")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--threads", flags.threads, "override worker thread count");
}

int run_validate(const CommonFlags& flags) {
    const pamed::RunConfig config = load(flags);
    const auto diagnostics = pamed::validate(config);
    for (const auto& d : diagnostics)
        std::cout << pamed::level_name(d.level) << ": " << d.message << "\n";
    if (pamed::has_errors(diagnostics)) return pamed::kExitConfigError;
    std::cout << "ok\n";
    return pamed::kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact diagonalization of the symmetric periodic Anderson model\n"
                 "with ground-state theorem verification"};
    app.require_subcommand(1);

    CommonFlags run_flags, validate_flags, sweep_flags;
    CLI::App* cmd_run = app.add_subcommand("run", "execute the configured tasks");
    add_common(cmd_run, run_flags, false);
    CLI::App* cmd_validate = app.add_subcommand("validate", "check a configuration and exit");
    add_common(cmd_validate, validate_flags, true);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the eps -> 0 verification sweep");
    add_common(cmd_sweep, sweep_flags, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) return run_validate(validate_flags);
        if (cmd_run->parsed()) return pamed::run(load(run_flags));
        pamed::RunConfig config = load(sweep_flags);
        config.tasks = {"sweep"};
        return pamed::run(config);
    } catch (const pamed::NoConvergence& e) {
        std::cerr << e.what() << "\n";
        return pamed::kExitNoConvergence;
    } catch (const pamed::Error& e) {
        std::cerr << e.what() << "\n";
        return pamed::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pamed::kExitConfigError;
    }
}
