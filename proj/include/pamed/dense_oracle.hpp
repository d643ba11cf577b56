#ifndef PAMED_DENSE_ORACLE_HPP
#define PAMED_DENSE_ORACLE_HPP

#include <Eigen/Dense>

#include "pamed/fock.hpp"
#include "pamed/hamiltonian.hpp"
#include "pamed/lattice.hpp"

namespace pamed {

// Slow second builder kept deliberately independent of the sparse assembly:
// terms are applied one second-quantized factor at a time to an explicit
// occupation array, signs come from literal crossing counts, and result kets
// are located by binary search in the stored configuration lists instead of
// combinatorial ranking.

Eigen::MatrixXd dense_original(const ModelParams& params, const LatticeGraph& lattice,
                               const SectorBasis& basis);

Eigen::MatrixXd dense_hubbardized(const ModelParams& params, const LatticeGraph& lattice,
                                  const SectorBasis& basis);

Eigen::MatrixXd dense_hamiltonian(const ModelParams& params, const LatticeGraph& lattice,
                                  const SectorBasis& basis);

}  // namespace pamed

#endif  // PAMED_DENSE_ORACLE_HPP
