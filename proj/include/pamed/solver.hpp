#ifndef PAMED_SOLVER_HPP
#define PAMED_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pamed/errors.hpp"
#include "pamed/fock.hpp"
#include "pamed/hamiltonian.hpp"
#include "pamed/lattice.hpp"
#include "pamed/sparse.hpp"

namespace pamed {

enum class SolveMethod { automatic, dense, lanczos };

struct SolveOptions {
    SolveMethod method = SolveMethod::automatic;
    std::uint64_t dense_cutoff = 512;  // automatic picks dense at or below this
    int max_lanczos_steps = 2000;      // total Krylov steps across restarts
    std::uint64_t max_basis = 1024;    // stored Lanczos vectors (full reorthogonalization)
    int check_interval = 5;            // Ritz extraction cadence
    int confirm_steps = 20;            // branch length before accepting a confirmation
};

struct EigenResult {
    std::vector<double> eigenvalues;  // ascending, k lowest
    std::vector<StateVector> eigenvectors;
    std::vector<double> residual_norms;
    int iterations = 0;  // Krylov steps; 0 for the dense path
    SolveMethod method = SolveMethod::dense;
    std::vector<double> ritz_history;  // lowest Ritz value per extraction (lanczos)
};

/// Thrown by the Lanczos path; carries whatever Ritz pairs were reached.
struct LanczosNoConvergence : NoConvergence {
    using NoConvergence::NoConvergence;
    EigenResult partial;
};

/// k lowest eigenpairs. Dense (Eigen) at small dimension, Lanczos with full
/// reorthogonalization otherwise; deterministic seeded start vector; sign
/// gauge: the largest-magnitude amplitude of each eigenvector is positive.
/// Throws NoConvergence when the Lanczos budget is exhausted.
EigenResult solve_lowest(const SparseOperator& op, BasisPtr basis, int k, double tol_eig,
                         std::uint64_t seed, const SolveOptions& opts = {});

struct SectorScanRow {
    int n_up;
    int n_down;
    double e0;
    bool failed = false;
    std::string error;
};

struct SectorScanResult {
    std::vector<SectorScanRow> rows;
    int min_n_up = -1;
    int min_n_down = -1;
    double e0_min = 0.0;
    // Within the (N/2, N/2) sector:
    double half_sector_e0 = 0.0;
    double half_sector_e1 = 0.0;
    double half_sector_gap = 0.0;
    StateVector half_sector_ground;
    // Smallest E0(sector) - E0(N/2, N/2) over the other sectors.
    double cross_sector_margin = 0.0;
    bool any_failed = false;
};

/// Lowest eigenvalue of every (n_up, n_down) sector with n_up + n_down =
/// n_total; the (N/2, N/2) sector is solved with k = 2 to expose its gap.
SectorScanResult sector_scan(const ModelParams& params, const LatticeGraph& lattice,
                             int n_total, double tol_eig, std::uint64_t seed,
                             const SolveOptions& opts = {},
                             std::uint64_t max_dim = kDefaultMaxDim);

}  // namespace pamed

#endif  // PAMED_SOLVER_HPP
