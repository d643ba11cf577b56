#include "pamed/fock.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "pamed/errors.hpp"

namespace pamed {

namespace {

struct BinomialTable {
    std::uint64_t c[kMaxSites + 1][kMaxSites + 1] = {};
    BinomialTable() {
        for (int n = 0; n <= kMaxSites; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

const BinomialTable& table() {
    static const BinomialTable t;
    return t;
}

inline int popcount_below(ConfigWord word, int site) {
    return std::popcount(word & ((ConfigWord(1) << site) - 1));
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    return table().c[n][k];
}

std::uint64_t config_rank(ConfigWord config, int n_particles) {
    if (std::popcount(config) != n_particles)
        throw BadPopcount("config " + std::to_string(config) + " does not have " +
                          std::to_string(n_particles) + " set bits");
    std::uint64_t rank = 0;
    int seen = 0;
    ConfigWord w = config;
    while (w != 0) {
        int p = std::countr_zero(w);
        ++seen;
        rank += binomial(p, seen);
        w &= w - 1;
    }
    return rank;
}

ConfigWord config_unrank(std::uint64_t rank, int n_particles, int num_sites) {
    ConfigWord word = 0;
    for (int k = n_particles; k >= 1; --k) {
        int p = k - 1;
        while (p + 1 <= num_sites - 1 && binomial(p + 1, k) <= rank) ++p;
        word |= ConfigWord(1) << p;
        rank -= binomial(p, k);
    }
    return word;
}

bool SectorBasis::in_sector(const KetPair& ket) const {
    return std::popcount(ket.up) == n_up && std::popcount(ket.down) == n_down;
}

BasisPtr enumerate_sector(int num_sites, int n_up, int n_down, std::uint64_t max_dim) {
    if (num_sites < 1 || num_sites > kMaxSites)
        throw ConfigError("site count " + std::to_string(num_sites) + " outside [1, " +
                          std::to_string(kMaxSites) + "]");
    if (n_up < 0 || n_up > num_sites || n_down < 0 || n_down > num_sites)
        throw ConfigError("particle counts outside [0, M]");

    auto basis = std::make_shared<SectorBasis>();
    basis->num_sites = num_sites;
    basis->n_up = n_up;
    basis->n_down = n_down;
    basis->dim_up = binomial(num_sites, n_up);
    basis->dim_down = binomial(num_sites, n_down);
    basis->dim = basis->dim_up * basis->dim_down;
    if (basis->dim > max_dim)
        throw CapacityExceeded("sector dimension " + std::to_string(basis->dim) +
                               " exceeds maximum " + std::to_string(max_dim));

    auto enumerate = [num_sites](int n, std::uint64_t count) {
        std::vector<ConfigWord> configs;
        configs.reserve(count);
        for (std::uint64_t r = 0; r < count; ++r)
            configs.push_back(config_unrank(r, n, num_sites));
        return configs;
    };
    basis->up_configs = enumerate(n_up, basis->dim_up);
    basis->down_configs = enumerate(n_down, basis->dim_down);
    return basis;
}

std::optional<SignedKet> apply_op(OpKind kind, Spin spin, int site, const KetPair& ket,
                                  int num_sites) {
    if (site < 0 || site >= num_sites)
        throw SiteOutOfRange("site " + std::to_string(site) + " outside lattice of " +
                             std::to_string(num_sites));
    const ConfigWord mask = ConfigWord(1) << site;
    ConfigWord word = spin == Spin::up ? ket.up : ket.down;

    const bool occupied = (word & mask) != 0;
    if (kind == OpKind::create ? occupied : !occupied) return std::nullopt;

    int crossings = popcount_below(word, site);
    if (spin == Spin::down) crossings += std::popcount(ket.up);
    const int sign = (crossings % 2 == 0) ? +1 : -1;

    word ^= mask;
    KetPair out = ket;
    (spin == Spin::up ? out.up : out.down) = word;
    return SignedKet{out, sign};
}

std::optional<SignedKet> apply_product(std::span<const ElemOp> ops, const KetPair& ket,
                                       int num_sites) {
    SignedKet acc{ket, +1};
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        auto next = apply_op(it->kind, it->spin, it->site, acc.ket, num_sites);
        if (!next) return std::nullopt;
        acc.ket = next->ket;
        acc.sign *= next->sign;
    }
    return acc;
}

double StateVector::norm() const {
    double s = 0.0;
    for (double a : amps) s += a * a;
    return std::sqrt(s);
}

void StateVector::normalize() {
    double n = norm();
    if (n == 0.0) return;
    for (double& a : amps) a /= n;
}

double dot(const StateVector& a, const StateVector& b) {
    if (a.amps.size() != b.amps.size()) throw DimensionMismatch("dot: state sizes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) s += a.amps[i] * b.amps[i];
    return s;
}

}  // namespace pamed
