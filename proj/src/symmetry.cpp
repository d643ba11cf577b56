#include "pamed/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pamed/errors.hpp"
#include "pamed/observables.hpp"

namespace pamed {

StateVector SectorMap::apply(const StateVector& state) const {
    if (state.amps.size() != source->dim)
        throw SectorMismatch("state does not live on the map's source basis");
    StateVector out = StateVector::zero(image);
    for (std::uint64_t g = 0; g < source->dim; ++g)
        out.amps[image_index(g)] = sign(g) * state.amps[g];
    return out;
}

SectorMap particle_hole_map(BasisPtr basis, const std::vector<Sublattice>& coloring) {
    const int m = basis->num_sites;
    if (static_cast<int>(coloring.size()) != m)
        throw SectorMismatch("coloring does not cover all sites");

    SectorMap map;
    map.image = enumerate_sector(m, basis->n_up, m - basis->n_down);
    map.source = std::move(basis);
    const auto& src = *map.source;
    map.down_image.resize(src.dim_down);
    map.down_sign.resize(src.dim_down);

    const ConfigWord full = m == 32 ? ~ConfigWord(0) : (ConfigWord(1) << m) - 1;
    for (std::uint64_t b = 0; b < src.dim_down; ++b) {
        const ConfigWord beta = src.down_configs[b];

        // T(f+_j1 ... f+_jn |0>) = prod eps(j) * f_j1 ... f_jn f+_0 ... f+_{M-1} |0>,
        // evaluated inside the down species alone (the up factor sits to the
        // left of every down operator and contributes no crossings).
        int sign = 1;
        ConfigWord occ = full;
        for (int site = m - 1; site >= 0; --site) {  // rightmost annihilator acts first
            if (((beta >> site) & 1) == 0) continue;
            if (coloring[site] == Sublattice::B) sign = -sign;
            const int crossings = std::popcount(occ & ((ConfigWord(1) << site) - 1));
            if (crossings % 2 == 1) sign = -sign;
            occ ^= ConfigWord(1) << site;
        }
        map.down_image[b] = config_rank(occ, m - src.n_down);
        map.down_sign[b] = sign;
    }
    return map;
}

SpectrumEquivalenceReport verify_spectrum_equivalence(const ModelParams& params,
                                                      const LatticeGraph& lattice, int n_up,
                                                      int n_down, int k, double tol_eigenvalue,
                                                      double tol_residual, std::uint64_t seed,
                                                      const SolveOptions& opts) {
    BasisPtr basis = enumerate_sector(lattice.num_sites, n_up, n_down);
    SectorMap map = particle_hole_map(basis, lattice.sublattice);

    ModelParams direct = params;
    direct.form = ModelForm::hubbardized;
    const ModelParams mirrored = direct.flipped();

    SparseOperator h_direct = build_hubbardized(direct, lattice, *basis);
    SparseOperator h_mirrored = build_hubbardized(mirrored, lattice, *map.image);

    const int k_direct = static_cast<int>(std::min<std::uint64_t>(k, basis->dim));
    EigenResult direct_result = solve_lowest(h_direct, basis, k_direct, 1e-10, seed, opts);
    EigenResult mirrored_result = solve_lowest(h_mirrored, map.image, k_direct, 1e-10, seed, opts);

    SpectrumEquivalenceReport report;
    report.eigenvalues = direct_result.eigenvalues;
    report.mirrored_eigenvalues = mirrored_result.eigenvalues;
    for (int i = 0; i < k_direct; ++i)
        report.max_eigenvalue_mismatch =
            std::max(report.max_eigenvalue_mismatch,
                     std::abs(direct_result.eigenvalues[i] - mirrored_result.eigenvalues[i]));

    // Transport the mirrored ground state back: the inverse map is the
    // particle-hole map built on the image basis (the composition is +-identity).
    SectorMap back = particle_hole_map(map.image, lattice.sublattice);
    StateVector transported = back.apply(mirrored_result.eigenvectors[0]);
    StateVector hx = h_direct.matvec(transported);
    const double e0 = mirrored_result.eigenvalues[0];
    double res_sq = 0.0;
    for (std::uint64_t i = 0; i < basis->dim; ++i) {
        const double r = hx.amps[i] - e0 * transported.amps[i];
        res_sq += r * r;
    }
    report.transported_residual = std::sqrt(res_sq);

    if (n_up == n_down) {
        report.correlation_transport_checked = true;
        const CorrelationMatrix transverse =
            correlation_matrix(direct_result.eigenvectors[0], CorrelationKind::transverse);
        const CorrelationMatrix pair =
            correlation_matrix(mirrored_result.eigenvectors[0], CorrelationKind::pair);
        for (int r = 0; r < lattice.num_sites; ++r)
            for (int h = 0; h < lattice.num_sites; ++h) {
                const double expected = lattice.eps(r) * lattice.eps(h) * pair.at(r, h);
                report.max_correlation_transport_dev =
                    std::max(report.max_correlation_transport_dev,
                             std::abs(transverse.at(r, h) - expected));
            }
    }

    report.pass = report.max_eigenvalue_mismatch <= tol_eigenvalue &&
                  report.transported_residual <= tol_residual &&
                  (!report.correlation_transport_checked ||
                   report.max_correlation_transport_dev <= tol_residual);
    return report;
}

}  // namespace pamed
