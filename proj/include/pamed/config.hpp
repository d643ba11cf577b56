#ifndef PAMED_CONFIG_HPP
#define PAMED_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "pamed/hamiltonian.hpp"
#include "pamed/lattice.hpp"
#include "pamed/solver.hpp"

namespace pamed {

struct LatticeConfig {
    std::string kind = "chain";  // chain | square
    int lx = 2;
    int ly = 1;
    Boundary boundary = Boundary::open;
};

struct FillingConfig {
    std::string mode = "half";  // half | explicit
    int n_up = -1;
    int n_down = -1;
};

struct SolverConfig {
    SolveMethod method = SolveMethod::automatic;
    double tol = 1e-10;
    std::uint64_t seed = 1234;
    std::uint64_t max_dim = kDefaultMaxDim;
    std::uint64_t dense_cutoff = 512;
};

struct OutputConfig {
    std::string directory = "pam_ed_out";
    std::vector<std::string> formats = {"json", "csv"};
    bool export_hamiltonian = false;
};

struct RunConfig {
    LatticeConfig lattice;
    ModelParams model;
    bool asymmetric = false;  // explicit opt-out of the symmetric point
    FillingConfig filling;
    SolverConfig solver;
    std::vector<std::string> tasks = {"verify"};
    std::vector<double> sweep_eps = {0.5, 0.1, 0.01, 0.0};
    OutputConfig output;
    int threads = 0;  // 0: library default
};

/// Strict parse: unknown keys raise ConfigError. An empty object yields the
/// default smoke-test configuration (chain L=2, t=1, V=1, U=4, half filling).
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

/// Resolved-config echo (defaults and eps_d filled in).
nlohmann::json config_to_json(const RunConfig& config);

struct Diagnostic {
    enum class Level { info, warning, error };
    Level level;
    std::string message;
};

std::string level_name(Diagnostic::Level level);

/// All violations, without executing anything.
std::vector<Diagnostic> validate(const RunConfig& config);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Half filling resolves to (N_Lambda, N_Lambda) on the doubled lattice.
void resolve_filling(const RunConfig& config, int num_doubled_sites, int& n_up, int& n_down);

}  // namespace pamed

#endif  // PAMED_CONFIG_HPP
