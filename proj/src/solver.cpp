#include "pamed/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "pamed/errors.hpp"

namespace pamed {

namespace {

void fix_sign_gauge(std::vector<double>& v) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            arg = i;
        }
    }
    if (!v.empty() && v[arg] < 0.0)
        for (double& x : v) x = -x;
}

StateVector wrap(BasisPtr basis, std::vector<double> amps) {
    StateVector s;
    s.basis = std::move(basis);
    s.amps = std::move(amps);
    return s;
}

double residual_norm(const SparseOperator& op, const std::vector<double>& v, double lambda) {
    std::vector<double> hv(v.size());
    op.matvec(v.data(), hv.data());
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = hv[i] - lambda * v[i];
        s += r * r;
    }
    return std::sqrt(s);
}

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

EigenResult solve_dense(const SparseOperator& op, BasisPtr basis, int k) {
    const auto n = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    const auto& rp = op.row_ptr();
    const auto& cols = op.cols();
    const auto& vals = op.values();
    for (Eigen::Index i = 0; i < n; ++i)
        for (std::uint64_t p = rp[i]; p < rp[i + 1]; ++p)
            h(i, static_cast<Eigen::Index>(cols[p])) = vals[p];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw NoConvergence("dense eigensolver failed");

    EigenResult out;
    out.method = SolveMethod::dense;
    for (int i = 0; i < k; ++i) {
        std::vector<double> v(es.eigenvectors().col(i).data(),
                              es.eigenvectors().col(i).data() + n);
        fix_sign_gauge(v);
        const double lambda = es.eigenvalues()(i);
        out.eigenvalues.push_back(lambda);
        out.residual_norms.push_back(residual_norm(op, v, lambda));
        out.eigenvectors.push_back(wrap(basis, std::move(v)));
    }
    return out;
}

// Deterministic start vectors: one LCG stream per solve, shared across
// restarts so repeated calls replay the identical sequence.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed)
        : state_(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
    double next() {  // uniform in [-0.5, 0.5)
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state_ >> 11) / 9007199254740992.0 - 0.5;
    }

private:
    std::uint64_t state_;
};

class KrylovStore {
public:
    std::size_t size() const { return vecs_.size(); }
    const std::vector<double>& vec(std::size_t i) const { return vecs_[i]; }
    void push(std::vector<double> v) { vecs_.push_back(std::move(v)); }

    // Classical Gram-Schmidt against every stored vector, done twice.
    void reorthogonalize(std::vector<double>& w) const {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : vecs_) {
                double proj = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) proj += u[i] * w[i];
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= proj * u[i];
            }
        }
    }

private:
    std::vector<std::vector<double>> vecs_;
};

EigenResult solve_lanczos(const SparseOperator& op, BasisPtr basis, int k, double tol_eig,
                          std::uint64_t seed, const SolveOptions& opts) {
    const std::uint64_t dim = op.dim();
    const std::uint64_t max_basis = std::min<std::uint64_t>(opts.max_basis, dim);
    Lcg rng(seed);
    KrylovStore space;

    auto fresh_vector = [&]() -> std::vector<double> {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<double> v(dim);
            for (double& x : v) x = rng.next();
            space.reorthogonalize(v);
            const double n = vec_norm(v);
            if (n > 1e-8) {
                for (double& x : v) x /= n;
                return v;
            }
        }
        throw NoConvergence("could not generate a start vector orthogonal to the Krylov space");
    };

    std::vector<double> alphas, betas;  // betas[i] couples vectors i and i+1
    std::vector<double> ritz_history;
    space.push(fresh_vector());
    std::ptrdiff_t prev_index = -1;  // -1: no previous vector (start or restart)
    int steps = 0;
    int steps_since_restart = 0;
    double scale = 1.0;

    // A single Krylov branch cannot reveal eigenvalue multiplicities, so a
    // converged result is only accepted after a confirmation branch seeded
    // from a fresh orthogonal vector reproduces the same k lowest values.
    bool confirming = false;
    std::optional<EigenResult> candidate;

    auto stable = [&](const EigenResult& a, const EigenResult& b) {
        for (int i = 0; i < k; ++i) {
            const double tol = tol_eig * std::max(1.0, std::abs(b.eigenvalues[i]));
            if (std::abs(a.eigenvalues[i] - b.eigenvalues[i]) > tol) return false;
        }
        return true;
    };

    // Ritz extraction from the current tridiagonal. Returns the eigenpairs
    // whenever `final_attempt` forces it or the residual bounds look ready;
    // `converged` reports whether every explicit residual met the contract.
    // `current_beta` couples the last stored vector to the candidate next one,
    // giving the usual |beta * s_m| residual estimate.
    auto extract = [&](double current_beta, bool final_attempt,
                       bool& converged) -> std::optional<EigenResult> {
        converged = false;
        const auto m = static_cast<Eigen::Index>(alphas.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            t(i, i) = alphas[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = betas[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        ritz_history.push_back(es.eigenvalues()(0));

        if (m < k) return std::nullopt;
        if (!final_attempt) {
            for (int i = 0; i < k; ++i) {
                const double bound = current_beta * std::abs(es.eigenvectors()(m - 1, i));
                if (bound > tol_eig * std::max(1.0, std::abs(es.eigenvalues()(i))))
                    return std::nullopt;
            }
        }

        EigenResult out;
        out.method = SolveMethod::lanczos;
        converged = true;
        for (int i = 0; i < k; ++i) {
            std::vector<double> x(dim, 0.0);
            for (Eigen::Index j = 0; j < m; ++j) {
                const double c = es.eigenvectors()(j, i);
                const auto& vj = space.vec(static_cast<std::size_t>(j));
                for (std::uint64_t n = 0; n < dim; ++n) x[n] += c * vj[n];
            }
            const double nx = vec_norm(x);
            if (nx > 0.0)
                for (double& v : x) v /= nx;
            fix_sign_gauge(x);
            const double lambda = es.eigenvalues()(i);
            const double res = residual_norm(op, x, lambda);
            if (res > tol_eig * std::max(1.0, std::abs(lambda))) converged = false;
            out.eigenvalues.push_back(lambda);
            out.residual_norms.push_back(res);
            out.eigenvectors.push_back(wrap(basis, std::move(x)));
        }
        return out;
    };

    while (true) {
        const std::vector<double>& cur = space.vec(space.size() - 1);
        std::vector<double> w(dim);
        op.matvec(cur.data(), w.data());
        double alpha = 0.0;
        for (std::uint64_t i = 0; i < dim; ++i) alpha += cur[i] * w[i];
        for (std::uint64_t i = 0; i < dim; ++i) w[i] -= alpha * cur[i];
        if (prev_index >= 0 && !betas.empty() && betas.back() != 0.0) {
            const auto& prev = space.vec(static_cast<std::size_t>(prev_index));
            for (std::uint64_t i = 0; i < dim; ++i) w[i] -= betas.back() * prev[i];
        }
        space.reorthogonalize(w);

        alphas.push_back(alpha);
        scale = std::max(scale, std::abs(alpha));
        ++steps;

        const double beta = vec_norm(w);
        scale = std::max(scale, beta);
        ++steps_since_restart;
        const bool breakdown = beta <= 1e-13 * scale;
        const bool exhausted = space.size() >= max_basis;
        const bool out_of_steps = steps >= opts.max_lanczos_steps;
        const bool checkpoint = steps % opts.check_interval == 0;
        const bool final_attempt = exhausted || out_of_steps;
        bool force_restart = false;

        if (checkpoint || breakdown || final_attempt) {
            bool converged = false;
            auto result = extract(beta, final_attempt || breakdown, converged);
            if (result && converged) {
                auto accept = [&](EigenResult r) {
                    r.iterations = steps;
                    r.ritz_history = std::move(ritz_history);
                    return r;
                };
                if (final_attempt) return accept(*std::move(result));
                if (!confirming) {
                    candidate = std::move(result);
                    confirming = true;
                    force_restart = true;
                } else if (steps_since_restart >= opts.confirm_steps || breakdown) {
                    if (stable(*candidate, *result)) return accept(*std::move(result));
                    // a new eigenvalue copy surfaced: adopt it and hunt for more
                    candidate = std::move(result);
                    force_restart = true;
                }
            } else if (final_attempt) {
                LanczosNoConvergence err("Lanczos exhausted its budget after " +
                                             std::to_string(steps) + " steps (stored basis " +
                                             std::to_string(space.size()) + ")",
                                         steps);
                if (result) {
                    result->iterations = steps;
                    result->ritz_history = std::move(ritz_history);
                    err.partial = *std::move(result);
                }
                throw err;
            }
        }

        if (breakdown || force_restart) {
            // Invariant subspace hit or confirmation branch requested: start
            // from a fresh orthogonal vector and record a zero coupling so the
            // tridiagonal stays block-consistent.
            betas.push_back(0.0);
            space.push(fresh_vector());
            prev_index = -1;
            steps_since_restart = 0;
        } else {
            betas.push_back(beta);
            for (double& x : w) x /= beta;
            space.push(std::move(w));
            prev_index = static_cast<std::ptrdiff_t>(space.size()) - 2;
        }
    }
}

}  // namespace

EigenResult solve_lowest(const SparseOperator& op, BasisPtr basis, int k, double tol_eig,
                         std::uint64_t seed, const SolveOptions& opts) {
    if (k < 1 || static_cast<std::uint64_t>(k) > op.dim())
        throw ConfigError("k must satisfy 1 <= k <= dim");
    SolveMethod method = opts.method;
    if (method == SolveMethod::automatic)
        method = op.dim() <= opts.dense_cutoff ? SolveMethod::dense : SolveMethod::lanczos;
    return method == SolveMethod::dense
               ? solve_dense(op, std::move(basis), k)
               : solve_lanczos(op, std::move(basis), k, tol_eig, seed, opts);
}

SectorScanResult sector_scan(const ModelParams& params, const LatticeGraph& lattice,
                             int n_total, double tol_eig, std::uint64_t seed,
                             const SolveOptions& opts, std::uint64_t max_dim) {
    if (n_total % 2 != 0) throw ConfigError("sector_scan requires an even electron count");
    const int m = lattice.num_sites;
    if (n_total < 0 || n_total > 2 * m) throw ConfigError("electron count outside [0, 2M]");

    SectorScanResult scan;
    const int half = n_total / 2;
    bool have_min = false;
    bool have_half = false;

    for (int n_up = std::max(0, n_total - m); n_up <= std::min(m, n_total); ++n_up) {
        const int n_down = n_total - n_up;
        SectorScanRow row{n_up, n_down, 0.0};
        const bool is_half = n_up == half && n_down == half;
        try {
            BasisPtr basis = enumerate_sector(m, n_up, n_down, max_dim);
            SparseOperator h = build_hamiltonian(params, lattice, *basis);
            const int k = is_half ? static_cast<int>(std::min<std::uint64_t>(2, basis->dim)) : 1;
            EigenResult res = solve_lowest(h, basis, k, tol_eig, seed, opts);
            row.e0 = res.eigenvalues[0];
            if (is_half) {
                scan.half_sector_e0 = res.eigenvalues[0];
                scan.half_sector_e1 =
                    res.eigenvalues.size() > 1 ? res.eigenvalues[1] : res.eigenvalues[0];
                scan.half_sector_gap = scan.half_sector_e1 - scan.half_sector_e0;
                scan.half_sector_ground = res.eigenvectors[0];
                have_half = true;
            }
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
            scan.any_failed = true;
        }
        if (!row.failed && (!have_min || row.e0 < scan.e0_min)) {
            scan.e0_min = row.e0;
            scan.min_n_up = n_up;
            scan.min_n_down = n_down;
            have_min = true;
        }
        scan.rows.push_back(std::move(row));
    }

    double margin = std::numeric_limits<double>::infinity();
    if (have_half)
        for (const SectorScanRow& row : scan.rows) {
            if (row.failed || (row.n_up == half && row.n_down == half)) continue;
            margin = std::min(margin, row.e0 - scan.half_sector_e0);
        }
    scan.cross_sector_margin = margin;
    return scan;
}

}  // namespace pamed
