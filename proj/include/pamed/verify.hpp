#ifndef PAMED_VERIFY_HPP
#define PAMED_VERIFY_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "pamed/fock.hpp"
#include "pamed/hamiltonian.hpp"
#include "pamed/lattice.hpp"
#include "pamed/observables.hpp"
#include "pamed/solver.hpp"

namespace pamed {

struct VerifyOptions {
    double tol_eig = 1e-10;       // eigensolver, two orders below the theorem slack
    double tol_expect = 1e-9;     // expectation values and theorem inequalities
    double gap_tol_scale = 1e-8;  // uniqueness gap: scale * max(1, |E0|)
    double w_min_eig_tol = 1e-10;
    double w_asym_rel_tol = 1e-8;
    std::uint64_t seed = 1234;
    std::uint64_t max_dim = kDefaultMaxDim;
    SolveOptions solve;
};

struct CheckRecord {
    std::string name;
    bool hypothesis_met = true;
    bool pass = false;
    std::string status;  // "pass", "fail" or "skipped"
    double measured = 0.0;
    std::string measured_desc;
    double tolerance = 0.0;
    nlohmann::json details = nlohmann::json::object();
    ModelParams params;
    int sector_n_up = -1;
    int sector_n_down = -1;
    double timing_seconds = 0.0;

    nlohmann::json to_json() const;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;

    bool verdict() const;  // every check whose hypotheses are met passes
    nlohmann::json to_json() const;
};

// --- state-level evaluators (also used by negative-control fixtures) ---

struct SignPatternResult {
    double min_same_sublattice = 0.0;  // most negative same-sublattice entry
    double max_opposite_sublattice = 0.0;
    double worst_margin = 0.0;  // >= -tol iff the pattern holds
    bool pass = false;
};

/// Antiferromagnetic sign pattern over all distinct site pairs: entries must
/// be >= -tol on the same sublattice and <= +tol across sublattices.
SignPatternResult check_sign_pattern(const CorrelationMatrix& corr, const LatticeGraph& lattice,
                                     double tol);

struct IdentityResult {
    double max_dev_transverse_2zz = 0.0;
    double max_dev_xx_yy = 0.0;
    double max_dev_xx_zz = 0.0;
    double s_squared = 0.0;
    bool pass = false;
};

/// SU(2) singlet identities over all distinct pairs: <S+S-> = 2<SzSz>,
/// <SxSx> = <SySy> = <SzSz>, plus <S^2> = 0.
IdentityResult check_singlet_identities(const StateVector& state, double tol);

// --- theorem checks (each solves its own ground state) ---

CheckRecord check_ground_sector(const ModelParams& params, const LatticeGraph& lattice,
                                const VerifyOptions& opts);
CheckRecord check_theorem1(const ModelParams& params, const LatticeGraph& lattice,
                           const VerifyOptions& opts);
CheckRecord check_theorem2(const ModelParams& params, const LatticeGraph& lattice,
                           const VerifyOptions& opts);
CheckRecord check_theorem3(const ModelParams& params, const LatticeGraph& lattice,
                           const VerifyOptions& opts);

VerificationReport run_all_checks(const ModelParams& params, const LatticeGraph& lattice,
                                  const VerifyOptions& opts);

struct SweepStep {
    double eps;
    VerificationReport report;
};

struct SweepResult {
    std::vector<SweepStep> steps;
    double zz_drift = -1.0;          // max-norm zz change, smallest eps > 0 vs eps = 0
    double transverse_drift = -1.0;  // same for the transverse matrix
    bool pass = false;               // conjunction of the per-eps verdicts

    nlohmann::json to_json() const;
};

/// Re-runs every check at each eps of a strictly decreasing list ending at 0
/// and records the correlation drift between the last positive eps and 0.
SweepResult epsilon_sweep(const ModelParams& params, const LatticeGraph& lattice,
                          const std::vector<double>& eps_list, const VerifyOptions& opts);

}  // namespace pamed

#endif  // PAMED_VERIFY_HPP
