#ifndef PAMED_FOCK_HPP
#define PAMED_FOCK_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace pamed {

// Spin-orbital convention: global order (0 up, 1 up, ..., M-1 up, 0 down, ...,
// M-1 down). A basis ket is the creation operators applied in ascending global
// order to the vacuum, so an operator at global orbital k picks up
// (-1)^(occupied orbitals with index < k). Down operators cross all n_up
// up-orbitals.

using ConfigWord = std::uint32_t;

constexpr int kMaxSites = 32;
constexpr std::uint64_t kDefaultMaxDim = std::uint64_t(1) << 26;

enum class Spin { up, down };
enum class OpKind { create, annihilate };

struct ElemOp {
    OpKind kind;
    Spin spin;
    int site;
};

struct KetPair {
    ConfigWord up;
    ConfigWord down;
    friend bool operator==(const KetPair&, const KetPair&) = default;
};

struct SignedKet {
    KetPair ket;
    int sign;  // +1 or -1
};

/// C(n, k) for 0 <= n, k <= kMaxSites; 0 when k > n.
std::uint64_t binomial(int n, int k);

/// Position of `config` in the ascending enumeration of words with the same
/// popcount (combinatorial number system; no search). Throws BadPopcount if
/// popcount(config) != n_particles.
std::uint64_t config_rank(ConfigWord config, int n_particles);

/// Inverse of config_rank over M-site words with n_particles set bits.
ConfigWord config_unrank(std::uint64_t rank, int n_particles, int num_sites);

/// All Fock configurations of one (n_up, n_down) sector, each spin species
/// enumerated ascending by integer value. Global index of (alpha, beta) is
/// alpha * dim_down + beta.
struct SectorBasis {
    int num_sites;  // M, sites of the doubled lattice
    int n_up;
    int n_down;
    std::vector<ConfigWord> up_configs;
    std::vector<ConfigWord> down_configs;
    std::uint64_t dim_up;
    std::uint64_t dim_down;
    std::uint64_t dim;

    std::uint64_t index_of(const KetPair& ket) const {
        return config_rank(ket.up, n_up) * dim_down + config_rank(ket.down, n_down);
    }
    KetPair ket_at(std::uint64_t index) const {
        return {up_configs[index / dim_down], down_configs[index % dim_down]};
    }
    bool in_sector(const KetPair& ket) const;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

BasisPtr enumerate_sector(int num_sites, int n_up, int n_down,
                          std::uint64_t max_dim = kDefaultMaxDim);

/// One elementary creation/annihilation with the exact fermionic sign;
/// nullopt when Pauli-blocked.
std::optional<SignedKet> apply_op(OpKind kind, Spin spin, int site, const KetPair& ket,
                                  int num_sites);

/// Operator product applied right-to-left (ops.back() acts first on the ket).
std::optional<SignedKet> apply_product(std::span<const ElemOp> ops, const KetPair& ket,
                                       int num_sites);

struct StateVector {
    BasisPtr basis;
    std::vector<double> amps;

    static StateVector zero(BasisPtr b) {
        StateVector s;
        s.amps.assign(b->dim, 0.0);
        s.basis = std::move(b);
        return s;
    }
    double norm() const;
    void normalize();
};

double dot(const StateVector& a, const StateVector& b);

}  // namespace pamed

#endif  // PAMED_FOCK_HPP
