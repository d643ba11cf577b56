#ifndef PAMED_OBSERVABLES_HPP
#define PAMED_OBSERVABLES_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "pamed/fock.hpp"
#include "pamed/lattice.hpp"

namespace pamed {

enum class CorrelationKind { transverse, zz, xx, yy, pair };

std::string kind_name(CorrelationKind kind);

/// Site-pair expectation values of one correlation kind, row-major M x M.
struct CorrelationMatrix {
    CorrelationKind kind;
    int num_sites = 0;
    std::vector<double> values;

    double at(int r, int h) const { return values[static_cast<std::size_t>(r) * num_sites + h]; }
    double& at(int r, int h) { return values[static_cast<std::size_t>(r) * num_sites + h]; }
};

// Spin operators in the standard SU(2) realization: S+ = f+up fdn,
// S- = f+dn fup, Sz = (n_up - n_dn)/2. The x and y kinds are evaluated
// through SxSx = (S+ + S-)(S+ + S-)/4 and SySy = -(S+ - S-)(S+ - S-)/4,
// which are real-valued on real states.
double spin_correlation(const StateVector& state, int r, int h, CorrelationKind kind);

/// <A_r+ A_h> with A_r = f_r_up f_r_dn; r == h gives the double occupancy.
double pair_correlation(const StateVector& state, int r, int h);

CorrelationMatrix correlation_matrix(const StateVector& state, CorrelationKind kind);

/// <S^2> of the total spin, via <Sz^2> + (|S- psi|^2 + |S+ psi|^2) / 2.
double total_spin_squared(const StateVector& state);

/// Ground-state coefficient matrix over up x down configurations, sign-gauged
/// so that trace(W) > 0. Frobenius norm is 1 for a normalized state.
struct WMatrix {
    std::uint64_t dim = 0;
    std::vector<double> values;  // row-major dim x dim

    double at(std::uint64_t a, std::uint64_t b) const { return values[a * dim + b]; }
    double trace() const;
};

WMatrix extract_w(const StateVector& state);

struct WAnalysis {
    double frobenius_norm = 0.0;
    double asymmetry_frobenius = 0.0;    // |W - W^T|_F
    double min_symmetric_eigenvalue = 0.0;  // of (W + W^T)/2
    double max_symmetric_eigenvalue = 0.0;
};

WAnalysis analyze_w(const WMatrix& w);

struct OdlroSummary {
    double lambda_max = 0.0;
    double per_dsite = 0.0;  // lambda_max / N_Lambda
};

/// Largest eigenvalue of the on-site pair matrix and its density per
/// localized site; n_dsites defaults to num_sites / 2 (doubled lattice).
OdlroSummary odlro_summary(const CorrelationMatrix& pairmat, int n_dsites = 0);

/// CSV with header `r,h,value`, one row per ordered site pair.
void write_correlation_csv(const CorrelationMatrix& matrix, std::ostream& out);

}  // namespace pamed

#endif  // PAMED_OBSERVABLES_HPP
