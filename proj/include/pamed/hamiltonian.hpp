#ifndef PAMED_HAMILTONIAN_HPP
#define PAMED_HAMILTONIAN_HPP

#include <optional>

#include "pamed/fock.hpp"
#include "pamed/lattice.hpp"
#include "pamed/sparse.hpp"

namespace pamed {

enum class ModelForm { original, hubbardized };

/// Parameters of the Anderson lattice Hamiltonian and of its generalized-
/// Hubbard rewriting. eps_d defaults to -U/2 (the symmetric point) when unset.
struct ModelParams {
    double t = 1.0;        // intralayer hopping
    double v = 1.0;        // hybridization
    double u = 4.0;        // on-site repulsion, layer 2
    double eps_aux = 0.0;  // auxiliary interaction coefficient, layer 1
    std::optional<double> eps_d;
    ModelForm form = ModelForm::hubbardized;

    double eps_d_value() const { return eps_d ? *eps_d : -u / 2.0; }
    bool symmetric_point() const { return eps_d_value() == -u / 2.0; }

    ModelParams flipped() const {  // (eps, U) -> (-eps, -U)
        ModelParams p = *this;
        p.u = -u;
        p.eps_aux = -eps_aux;
        p.eps_d = std::nullopt;
        return p;
    }
};

/// H = -t sum_<ij>,s (c+ c + h.c.) + eps_d sum n^d + V sum_s (c+ d + d+ c)
///     + U sum n^d_up n^d_dn + eps_aux sum_{layer1} (n_up - 1/2)(n_dn - 1/2).
SparseOperator build_original(const ModelParams& params, const LatticeGraph& lattice,
                              const SectorBasis& basis);

/// H~ = -sum t_rh (f+ f + h.c.) + U sum_{layer2} (n_up - 1/2)(n_dn - 1/2)
///      + eps_aux sum_{layer1} (n_up - 1/2)(n_dn - 1/2); t_rh from the bonds.
SparseOperator build_hubbardized(const ModelParams& params, const LatticeGraph& lattice,
                                 const SectorBasis& basis);

SparseOperator build_hamiltonian(const ModelParams& params, const LatticeGraph& lattice,
                                 const SectorBasis& basis);

}  // namespace pamed

#endif  // PAMED_HAMILTONIAN_HPP
