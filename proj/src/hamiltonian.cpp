#include "pamed/hamiltonian.hpp"

#include <bit>
#include <string>

#include "pamed/errors.hpp"

namespace pamed {

namespace {

void check_sector(const LatticeGraph& lattice, const SectorBasis& basis) {
    if (basis.num_sites != lattice.num_sites)
        throw SectorMismatch("basis has " + std::to_string(basis.num_sites) +
                             " sites, lattice has " + std::to_string(lattice.num_sites));
}

inline int occ(ConfigWord word, int site) { return (word >> site) & 1; }

/// Shared kinetic part: both forms carry coefficient -t_rh on every bond
/// (the stored -V vertical amplitude reproduces the +V hybridization).
/// The diagonal is supplied per form.
template <typename DiagFn>
SparseOperator assemble(const LatticeGraph& lattice, const SectorBasis& basis, DiagFn diag) {
    const int m = basis.num_sites;
    SparseBuilder builder(basis.dim);

    for (std::uint64_t g = 0; g < basis.dim; ++g) {
        const KetPair ket = basis.ket_at(g);
        builder.add_to_current_row(g, diag(ket));

        for (const Bond& bond : lattice.bonds) {
            if (bond.amplitude == 0.0) continue;
            for (Spin spin : {Spin::up, Spin::down}) {
                for (auto [to, from] : {std::pair{bond.r, bond.h}, std::pair{bond.h, bond.r}}) {
                    const ElemOp hop[] = {{OpKind::create, spin, to},
                                          {OpKind::annihilate, spin, from}};
                    if (auto res = apply_product(hop, ket, m))
                        builder.add_to_current_row(basis.index_of(res->ket),
                                                   -bond.amplitude * res->sign);
                }
            }
        }
        builder.finish_row();
    }
    return builder.build();
}

}  // namespace

SparseOperator build_original(const ModelParams& params, const LatticeGraph& lattice,
                              const SectorBasis& basis) {
    check_sector(lattice, basis);
    const double eps_d = params.eps_d_value();
    const double u = params.u;
    const double eps = params.eps_aux;

    auto diag = [&](const KetPair& ket) {
        double e = 0.0;
        for (int r = 0; r < lattice.num_sites; ++r) {
            const int nu = occ(ket.up, r), nd = occ(ket.down, r);
            if (lattice.layer[r] == 2)
                e += eps_d * (nu + nd) + u * nu * nd;
            else
                e += eps * (nu - 0.5) * (nd - 0.5);
        }
        return e;
    };
    return assemble(lattice, basis, diag);
}

SparseOperator build_hubbardized(const ModelParams& params, const LatticeGraph& lattice,
                                 const SectorBasis& basis) {
    check_sector(lattice, basis);
    const double u = params.u;
    const double eps = params.eps_aux;

    auto diag = [&](const KetPair& ket) {
        double e = 0.0;
        for (int r = 0; r < lattice.num_sites; ++r) {
            const double coeff = lattice.layer[r] == 2 ? u : eps;
            e += coeff * (occ(ket.up, r) - 0.5) * (occ(ket.down, r) - 0.5);
        }
        return e;
    };
    return assemble(lattice, basis, diag);
}

SparseOperator build_hamiltonian(const ModelParams& params, const LatticeGraph& lattice,
                                 const SectorBasis& basis) {
    return params.form == ModelForm::original ? build_original(params, lattice, basis)
                                              : build_hubbardized(params, lattice, basis);
}

}  // namespace pamed
