#ifndef PAMED_LATTICE_HPP
#define PAMED_LATTICE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pamed {

enum class Boundary { open, periodic };

enum class Sublattice : int { A = +1, B = -1 };

struct Bond {
    int r;
    int h;
    double amplitude;  // t_rh, dimensionless energy units
};

/// Immutable site/bond graph. Layer 1 holds the itinerant orbitals, layer 2
/// the localized ones; `partner` pairs site i with site i + num_layer1_sites.
/// `sublattice[r]` is the two-coloring eps(r): +1 on A, -1 on B, gauge site0 = A.
struct LatticeGraph {
    int num_sites = 0;
    std::vector<Bond> bonds;
    std::vector<int> layer;             // 1 or 2 per site
    std::vector<int> partner;           // -1 when the site has no vertical partner
    std::vector<Sublattice> sublattice;

    int num_layer1_sites() const;
    bool is_doubled() const;            // true after layer_double
    double eps(int site) const { return sublattice[site] == Sublattice::A ? 1.0 : -1.0; }
};

/// Path (open) or even cycle (periodic) of L sites, unit hopping amplitude t = 1
/// placeholder; amplitudes are assigned by layer_double.
LatticeGraph build_chain(int length, Boundary boundary);

/// Lx x Ly nearest-neighbor grid. Periodic wrap per direction requires even
/// extent >= 4; extent 1 never wraps.
LatticeGraph build_square(int lx, int ly, Boundary boundary);

/// Two copies of `layer1` joined by vertical bonds. Layer-1 bonds carry +t,
/// vertical bonds carry -V, layer-2 sites get no intralayer bonds. The
/// coloring is recomputed on the doubled graph.
LatticeGraph layer_double(const LatticeGraph& layer1, double t, double hybridization);

/// BFS two-coloring over the bond graph, site 0 = A. Throws NonBipartite with
/// the offending cycle when no coloring exists.
std::vector<Sublattice> two_color(const LatticeGraph& graph);

/// One bond per line: `r h t_rh`.
void write_edge_list(const LatticeGraph& graph, std::ostream& out);

}  // namespace pamed

#endif  // PAMED_LATTICE_HPP
