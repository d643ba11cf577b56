#include "pamed/config.hpp"

#include <fstream>
#include <set>

#include "pamed/errors.hpp"
#include "pamed/fock.hpp"

namespace pamed {

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& section) {
    if (!j.is_object()) throw ConfigError("section '" + section + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.contains(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in section '" + section + "'");
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

Boundary parse_boundary(const std::string& s) {
    if (s == "open") return Boundary::open;
    if (s == "periodic") return Boundary::periodic;
    throw ConfigError("boundary must be 'open' or 'periodic', got '" + s + "'");
}

SolveMethod parse_method(const std::string& s) {
    if (s == "auto") return SolveMethod::automatic;
    if (s == "dense") return SolveMethod::dense;
    if (s == "lanczos") return SolveMethod::lanczos;
    throw ConfigError("solver method must be 'auto', 'dense' or 'lanczos', got '" + s + "'");
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
    require_keys(j, {"lattice", "model", "filling", "solver", "tasks", "sweep", "output",
                     "threads"},
                 "<top>");
    RunConfig c;

    if (j.contains("lattice")) {
        const auto& l = j.at("lattice");
        require_keys(l, {"kind", "lx", "ly", "boundary"}, "lattice");
        read(l, "kind", c.lattice.kind);
        read(l, "lx", c.lattice.lx);
        read(l, "ly", c.lattice.ly);
        if (l.contains("boundary")) c.lattice.boundary = parse_boundary(l.at("boundary"));
    }

    if (j.contains("model")) {
        const auto& m = j.at("model");
        require_keys(m, {"t", "v", "u", "eps_d", "eps_aux", "form", "asymmetric"}, "model");
        read(m, "t", c.model.t);
        read(m, "v", c.model.v);
        read(m, "u", c.model.u);
        read(m, "eps_aux", c.model.eps_aux);
        if (m.contains("eps_d")) c.model.eps_d = m.at("eps_d").get<double>();
        if (m.contains("form")) {
            const std::string f = m.at("form");
            if (f == "original") c.model.form = ModelForm::original;
            else if (f == "hubbardized") c.model.form = ModelForm::hubbardized;
            else throw ConfigError("model form must be 'original' or 'hubbardized'");
        }
        read(m, "asymmetric", c.asymmetric);
    }

    if (j.contains("filling")) {
        const auto& f = j.at("filling");
        require_keys(f, {"mode", "n_up", "n_down"}, "filling");
        read(f, "mode", c.filling.mode);
        read(f, "n_up", c.filling.n_up);
        read(f, "n_down", c.filling.n_down);
    }

    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        require_keys(s, {"method", "tol", "seed", "max_dim", "dense_cutoff"}, "solver");
        if (s.contains("method")) c.solver.method = parse_method(s.at("method"));
        read(s, "tol", c.solver.tol);
        read(s, "seed", c.solver.seed);
        read(s, "max_dim", c.solver.max_dim);
        read(s, "dense_cutoff", c.solver.dense_cutoff);
    }

    read(j, "tasks", c.tasks);
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        require_keys(s, {"eps_list"}, "sweep");
        read(s, "eps_list", c.sweep_eps);
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        require_keys(o, {"directory", "formats", "export_hamiltonian"}, "output");
        read(o, "directory", c.output.directory);
        read(o, "formats", c.output.formats);
        read(o, "export_hamiltonian", c.output.export_hamiltonian);
    }

    read(j, "threads", c.threads);
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse failure in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

nlohmann::json config_to_json(const RunConfig& c) {
    return {
        {"lattice",
         {{"kind", c.lattice.kind},
          {"lx", c.lattice.lx},
          {"ly", c.lattice.ly},
          {"boundary", c.lattice.boundary == Boundary::open ? "open" : "periodic"}}},
        {"model",
         {{"t", c.model.t},
          {"v", c.model.v},
          {"u", c.model.u},
          {"eps_d", c.model.eps_d_value()},
          {"eps_aux", c.model.eps_aux},
          {"form", c.model.form == ModelForm::original ? "original" : "hubbardized"},
          {"asymmetric", c.asymmetric}}},
        {"filling",
         {{"mode", c.filling.mode}, {"n_up", c.filling.n_up}, {"n_down", c.filling.n_down}}},
        {"solver",
         {{"method", c.solver.method == SolveMethod::automatic
                         ? "auto"
                         : c.solver.method == SolveMethod::dense ? "dense" : "lanczos"},
          {"tol", c.solver.tol},
          {"seed", c.solver.seed},
          {"max_dim", c.solver.max_dim},
          {"dense_cutoff", c.solver.dense_cutoff}}},
        {"tasks", c.tasks},
        {"sweep", {{"eps_list", c.sweep_eps}}},
        {"output",
         {{"directory", c.output.directory},
          {"formats", c.output.formats},
          {"export_hamiltonian", c.output.export_hamiltonian}}},
        {"threads", c.threads}};
}

std::string level_name(Diagnostic::Level level) {
    switch (level) {
        case Diagnostic::Level::info: return "info";
        case Diagnostic::Level::warning: return "warning";
        case Diagnostic::Level::error: return "error";
    }
    return "?";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const Diagnostic& d : diagnostics)
        if (d.level == Diagnostic::Level::error) return true;
    return false;
}

void resolve_filling(const RunConfig& config, int num_doubled_sites, int& n_up, int& n_down) {
    if (config.filling.mode == "half") {
        n_up = n_down = num_doubled_sites / 2;
    } else {
        n_up = config.filling.n_up;
        n_down = config.filling.n_down;
    }
}

std::vector<Diagnostic> validate(const RunConfig& c) {
    std::vector<Diagnostic> out;
    auto error = [&](const std::string& m) { out.push_back({Diagnostic::Level::error, m}); };
    auto warning = [&](const std::string& m) { out.push_back({Diagnostic::Level::warning, m}); };

    // Lattice
    int n_layer1 = 0;
    if (c.lattice.kind != "chain" && c.lattice.kind != "square") {
        error("lattice kind must be 'chain' or 'square', got '" + c.lattice.kind + "'");
    } else {
        try {
            LatticeGraph layer1 = c.lattice.kind == "chain"
                                      ? build_chain(c.lattice.lx, c.lattice.boundary)
                                      : build_square(c.lattice.lx, c.lattice.ly,
                                                     c.lattice.boundary);
            n_layer1 = layer1.num_sites;
        } catch (const Error& e) {
            error(std::string("lattice construction fails: ") + e.what());
        }
    }

    // Model
    if (c.model.t < 0.0) error("hopping t must be >= 0");
    if (c.model.v < 0.0) error("hybridization V must be >= 0");
    if (c.model.v == 0.0) warning("V = 0: theorem hypotheses not met, checks will be skipped");
    if (!c.model.symmetric_point()) {
        if (c.asymmetric)
            warning("asymmetric point (eps_d != -U/2): theorem checks disabled");
        else
            error("symmetric condition violated: eps_d != -U/2 (set asymmetric = true to "
                  "override)");
    }

    // Filling
    if (c.filling.mode != "half" && c.filling.mode != "explicit")
        error("filling mode must be 'half' or 'explicit'");
    if (n_layer1 > 0) {
        const int m = 2 * n_layer1;
        if (m > kMaxSites)
            error("doubled lattice has " + std::to_string(m) + " sites, limit is " +
                  std::to_string(kMaxSites));
        int n_up = 0, n_down = 0;
        if (c.filling.mode == "explicit" && (c.filling.n_up < 0 || c.filling.n_down < 0)) {
            error("explicit filling requires n_up and n_down");
        } else if (m <= kMaxSites) {
            resolve_filling(c, m, n_up, n_down);
            if (n_up < 0 || n_up > m || n_down < 0 || n_down > m) {
                error("filling (" + std::to_string(n_up) + ", " + std::to_string(n_down) +
                      ") outside [0, " + std::to_string(m) + "]");
            } else {
                const std::uint64_t dim = binomial(m, n_up) * binomial(m, n_down);
                if (dim > c.solver.max_dim)
                    error("sector dimension " + std::to_string(dim) + " exceeds max_dim " +
                          std::to_string(c.solver.max_dim));
                bool scans = false;
                for (const std::string& t : c.tasks) scans |= t == "spectrum";
                if (scans && (n_up + n_down) % 2 != 0)
                    error("spectrum task requires an even electron count, got " +
                          std::to_string(n_up + n_down));
            }
        }
    }

    // Solver
    if (c.solver.tol <= 0.0) error("solver tol must be positive");

    // Tasks
    const std::set<std::string> known = {"spectrum", "correlations", "verify", "sweep"};
    for (const std::string& t : c.tasks)
        if (!known.contains(t)) error("unknown task '" + t + "'");
    if (c.tasks.empty()) warning("no tasks requested");

    // Sweep list
    bool sweep_requested = false;
    for (const std::string& t : c.tasks) sweep_requested |= t == "sweep";
    if (sweep_requested) {
        if (c.sweep_eps.empty() || c.sweep_eps.back() != 0.0)
            error("sweep eps_list must end at 0");
        for (std::size_t i = 0; i + 1 < c.sweep_eps.size(); ++i)
            if (c.sweep_eps[i] <= c.sweep_eps[i + 1])
                error("sweep eps_list must be strictly decreasing");
        for (double e : c.sweep_eps)
            if (e < 0.0) error("sweep eps values must be >= 0");
    }

    if (c.threads < 0) error("threads must be >= 0");
    return out;
}

}  // namespace pamed
