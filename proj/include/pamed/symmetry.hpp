#ifndef PAMED_SYMMETRY_HPP
#define PAMED_SYMMETRY_HPP

#include <cstdint>
#include <vector>

#include "pamed/fock.hpp"
#include "pamed/hamiltonian.hpp"
#include "pamed/lattice.hpp"
#include "pamed/solver.hpp"

namespace pamed {

/// Signed basis permutation realizing the particle-hole transformation
/// f_r_dn -> eps(r) f+_r_dn on a fixed sector: down occupations are
/// complemented, up occupations untouched, so (n_up, n_dn) maps to
/// (n_up, M - n_dn). The sign factorizes over the down configuration.
struct SectorMap {
    BasisPtr source;
    BasisPtr image;
    std::vector<std::uint64_t> down_image;  // per source down-config rank
    std::vector<int> down_sign;

    std::uint64_t image_index(std::uint64_t g) const {
        return (g / source->dim_down) * image->dim_down + down_image[g % source->dim_down];
    }
    int sign(std::uint64_t g) const { return down_sign[g % source->dim_down]; }

    StateVector apply(const StateVector& state) const;
};

SectorMap particle_hole_map(BasisPtr basis, const std::vector<Sublattice>& coloring);

struct SpectrumEquivalenceReport {
    std::vector<double> eigenvalues;          // of H(eps, U) in the source sector
    std::vector<double> mirrored_eigenvalues; // of H(-eps, -U) in the image sector
    double max_eigenvalue_mismatch = 0.0;
    double transported_residual = 0.0;        // |H(eps,U) phi - E0 phi| for the
                                              // transported mirrored ground state
    double max_correlation_transport_dev = 0.0;  // |<S+S->(r,h) - eps(r)eps(h) <A+A>(r,h)|
    bool correlation_transport_checked = false;
    bool pass = false;
};

/// Solves both frames, compares the k lowest eigenvalues, transports the
/// mirrored ground state back through the map, and (for n_up == n_down
/// sectors) checks the transverse/pair correlation transport identity.
SpectrumEquivalenceReport verify_spectrum_equivalence(
    const ModelParams& params, const LatticeGraph& lattice, int n_up, int n_down, int k,
    double tol_eigenvalue, double tol_residual, std::uint64_t seed,
    const SolveOptions& opts = {});

}  // namespace pamed

#endif  // PAMED_SYMMETRY_HPP
