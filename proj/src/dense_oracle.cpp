#include "pamed/dense_oracle.hpp"

#include <algorithm>
#include <vector>

#include "pamed/errors.hpp"

namespace pamed {

namespace {

// A ket as an occupation array over the 2M global spin-orbitals
// (0..M-1 up, M..2M-1 down), plus an accumulated scalar weight.
struct OracleKet {
    std::vector<int> occ;
    double weight = 1.0;
};

struct Factor {
    bool create;
    int orbital;  // global spin-orbital index
};

int up_orbital(int site) { return site; }
int down_orbital(int site, int num_sites) { return num_sites + site; }

bool apply_factor(const Factor& f, OracleKet& ket) {
    const int occupied = ket.occ[f.orbital];
    if (f.create ? occupied : !occupied) return false;
    int crossings = 0;
    for (int k = 0; k < f.orbital; ++k) crossings += ket.occ[k];
    if (crossings % 2 == 1) ket.weight = -ket.weight;
    ket.occ[f.orbital] = f.create ? 1 : 0;
    return true;
}

OracleKet ket_from_index(const SectorBasis& basis, std::uint64_t g) {
    const KetPair pair = basis.ket_at(g);
    OracleKet ket;
    ket.occ.assign(2 * basis.num_sites, 0);
    for (int s = 0; s < basis.num_sites; ++s) {
        ket.occ[up_orbital(s)] = (pair.up >> s) & 1;
        ket.occ[down_orbital(s, basis.num_sites)] = (pair.down >> s) & 1;
    }
    return ket;
}

std::int64_t locate(const SectorBasis& basis, const OracleKet& ket) {
    ConfigWord up = 0, down = 0;
    for (int s = 0; s < basis.num_sites; ++s) {
        if (ket.occ[up_orbital(s)]) up |= ConfigWord(1) << s;
        if (ket.occ[down_orbital(s, basis.num_sites)]) down |= ConfigWord(1) << s;
    }
    auto find = [](const std::vector<ConfigWord>& configs, ConfigWord w) -> std::int64_t {
        auto it = std::lower_bound(configs.begin(), configs.end(), w);
        if (it == configs.end() || *it != w) return -1;
        return it - configs.begin();
    };
    const std::int64_t a = find(basis.up_configs, up);
    const std::int64_t b = find(basis.down_configs, down);
    if (a < 0 || b < 0) return -1;
    return a * static_cast<std::int64_t>(basis.dim_down) + b;
}

// One Hamiltonian term: coefficient times a product of factors applied
// right-to-left, i.e. term.factors.back() acts on the ket first.
struct Term {
    double coeff;
    std::vector<Factor> factors;
};

void accumulate(Eigen::MatrixXd& h, const SectorBasis& basis, const std::vector<Term>& terms) {
    for (std::uint64_t g = 0; g < basis.dim; ++g) {
        for (const Term& term : terms) {
            OracleKet ket = ket_from_index(basis, g);
            ket.weight = term.coeff;
            bool alive = true;
            for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
                if (!apply_factor(*it, ket)) {
                    alive = false;
                    break;
                }
            }
            if (!alive) continue;
            const std::int64_t target = locate(basis, ket);
            if (target < 0) continue;  // left the sector: no overlap
            h(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(g)) += ket.weight;
        }
    }
}

std::vector<Term> kinetic_terms(const ModelParams& params, const LatticeGraph& lattice) {
    std::vector<Term> terms;
    const int m = lattice.num_sites;
    for (const Bond& bond : lattice.bonds) {
        // Re-derive the amplitude from the raw parameters rather than trusting
        // the graph: +t within layer 1, -V across layers.
        double amplitude;
        if (lattice.layer[bond.r] == 1 && lattice.layer[bond.h] == 1)
            amplitude = params.t;
        else
            amplitude = -params.v;
        if (amplitude == 0.0) continue;
        for (int spin = 0; spin < 2; ++spin) {
            auto orb = [&](int site) {
                return spin == 0 ? up_orbital(site) : down_orbital(site, m);
            };
            terms.push_back({-amplitude, {{true, orb(bond.r)}, {false, orb(bond.h)}}});
            terms.push_back({-amplitude, {{true, orb(bond.h)}, {false, orb(bond.r)}}});
        }
    }
    return terms;
}

// (n_up - 1/2)(n_dn - 1/2) = n_up n_dn - n_up/2 - n_dn/2 + 1/4, with each
// number operator spelled out as create * annihilate.
void add_centered_interaction(std::vector<Term>& terms, double coeff, int site, int m) {
    const int uo = up_orbital(site), dn = down_orbital(site, m);
    terms.push_back({coeff, {{true, uo}, {false, uo}, {true, dn}, {false, dn}}});
    terms.push_back({-coeff / 2.0, {{true, uo}, {false, uo}}});
    terms.push_back({-coeff / 2.0, {{true, dn}, {false, dn}}});
    terms.push_back({coeff / 4.0, {}});
}

Eigen::MatrixXd run(const SectorBasis& basis, const std::vector<Term>& terms) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(basis.dim),
                                              static_cast<Eigen::Index>(basis.dim));
    accumulate(h, basis, terms);
    return h;
}

}  // namespace

Eigen::MatrixXd dense_original(const ModelParams& params, const LatticeGraph& lattice,
                               const SectorBasis& basis) {
    if (basis.num_sites != lattice.num_sites) throw SectorMismatch("dense_original");
    std::vector<Term> terms = kinetic_terms(params, lattice);
    const double eps_d = params.eps_d_value();
    const int m = lattice.num_sites;
    for (int r = 0; r < m; ++r) {
        if (lattice.layer[r] == 2) {
            const int uo = up_orbital(r), dn = down_orbital(r, m);
            terms.push_back({eps_d, {{true, uo}, {false, uo}}});
            terms.push_back({eps_d, {{true, dn}, {false, dn}}});
            terms.push_back({params.u, {{true, uo}, {false, uo}, {true, dn}, {false, dn}}});
        } else {
            add_centered_interaction(terms, params.eps_aux, r, m);
        }
    }
    return run(basis, terms);
}

Eigen::MatrixXd dense_hubbardized(const ModelParams& params, const LatticeGraph& lattice,
                                  const SectorBasis& basis) {
    if (basis.num_sites != lattice.num_sites) throw SectorMismatch("dense_hubbardized");
    std::vector<Term> terms = kinetic_terms(params, lattice);
    const int m = lattice.num_sites;
    for (int r = 0; r < m; ++r)
        add_centered_interaction(terms, lattice.layer[r] == 2 ? params.u : params.eps_aux, r, m);
    return run(basis, terms);
}

Eigen::MatrixXd dense_hamiltonian(const ModelParams& params, const LatticeGraph& lattice,
                                  const SectorBasis& basis) {
    return params.form == ModelForm::original ? dense_original(params, lattice, basis)
                                              : dense_hubbardized(params, lattice, basis);
}

}  // namespace pamed
