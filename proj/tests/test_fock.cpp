#include <doctest.h>

#include <algorithm>
#include <bit>
#include <vector>

#include "pamed/errors.hpp"
#include "pamed/fock.hpp"

using namespace pamed;

namespace {

// Exhaustive enumeration oracle for ranking: every M-bit word with n set
// bits, ascending by integer value.
std::vector<ConfigWord> enumerate_words(int num_sites, int n) {
    std::vector<ConfigWord> words;
    for (ConfigWord w = 0; w < (ConfigWord(1) << num_sites); ++w)
        if (std::popcount(w) == n) words.push_back(w);
    return words;
}

}  // namespace

TEST_CASE("sector dimensions") {
    CHECK(enumerate_sector(2, 1, 1)->dim == 4);
    CHECK(enumerate_sector(4, 2, 2)->dim == 36);
    CHECK(enumerate_sector(8, 4, 4)->dim == 4900);
    const auto basis = enumerate_sector(4, 2, 2);
    CHECK(basis->dim_up == 6);
    CHECK(basis->dim_down == 6);
    CHECK_THROWS_AS(enumerate_sector(8, 4, 4, /*max_dim=*/100), CapacityExceeded);
}

TEST_CASE("rank examples against the enumeration oracle") {
    const auto words = enumerate_words(4, 2);
    REQUIRE(words.size() == 6);
    for (std::size_t i = 0; i < words.size(); ++i) CHECK(config_rank(words[i], 2) == i);
    // frozen values from the oracle above
    CHECK(config_rank(0b0011, 2) == 0);
    CHECK(config_rank(0b1100, 2) == 5);
    CHECK(config_rank(0b0101, 2) == 1);
    CHECK_THROWS_AS(config_rank(0b0111, 2), BadPopcount);
}

TEST_CASE("rank and unrank are mutually inverse") {
    for (int m = 1; m <= 6; ++m)
        for (int n = 0; n <= m; ++n) {
            const auto words = enumerate_words(m, n);
            for (std::size_t i = 0; i < words.size(); ++i) {
                CHECK(config_unrank(i, n, m) == words[i]);
                CHECK(config_rank(words[i], n) == i);
            }
        }
    // spot checks at full width
    for (std::uint64_t r : {std::uint64_t(0), std::uint64_t(313), binomial(32, 16) - 1})
        CHECK(config_rank(config_unrank(r, 16, 32), 16) == r);
}

TEST_CASE("basis enumeration is ascending and index_of inverts ket_at") {
    const auto basis = enumerate_sector(5, 2, 3);
    CHECK(std::is_sorted(basis->up_configs.begin(), basis->up_configs.end()));
    CHECK(std::is_sorted(basis->down_configs.begin(), basis->down_configs.end()));
    for (std::uint64_t g = 0; g < basis->dim; ++g) CHECK(basis->index_of(basis->ket_at(g)) == g);
}

TEST_CASE("apply_op basics") {
    const int m = 2;
    SUBCASE("vacuum action") {
        const auto res = apply_op(OpKind::create, Spin::up, 0, {0, 0}, m);
        REQUIRE(res.has_value());
        CHECK(res->ket.up == 0b01);
        CHECK(res->sign == +1);
    }
    SUBCASE("Pauli blocking") {
        CHECK_FALSE(apply_op(OpKind::create, Spin::up, 0, {0b01, 0}, m).has_value());
        CHECK_FALSE(apply_op(OpKind::annihilate, Spin::down, 1, {0, 0b01}, m).has_value());
    }
    SUBCASE("down operator crosses all up orbitals") {
        // two up electrons occupied: creating a down picks up (-1)^2 = +1
        const auto res = apply_op(OpKind::create, Spin::down, 0, {0b11, 0}, m);
        REQUIRE(res.has_value());
        CHECK(res->sign == +1);
        // one up electron: (-1)^1
        const auto res1 = apply_op(OpKind::create, Spin::down, 0, {0b01, 0}, m);
        REQUIRE(res1.has_value());
        CHECK(res1->sign == -1);
    }
    SUBCASE("site bounds") {
        CHECK_THROWS_AS(apply_op(OpKind::create, Spin::up, 2, {0, 0}, m), SiteOutOfRange);
    }
}

TEST_CASE("canonical anticommutation relations on states") {
    // Exhaustive over all kets and distinct global orbitals for M <= 3.
    const int m = 3;
    struct Orbital {
        Spin spin;
        int site;
    };
    std::vector<Orbital> orbitals;
    for (Spin s : {Spin::up, Spin::down})
        for (int site = 0; site < m; ++site) orbitals.push_back({s, site});

    auto apply2 = [m](OpKind k1, const Orbital& o1, OpKind k2, const Orbital& o2,
                      const KetPair& ket) -> std::optional<SignedKet> {
        const auto first = apply_op(k2, o2.spin, o2.site, ket, m);
        if (!first) return std::nullopt;
        auto second = apply_op(k1, o1.spin, o1.site, first->ket, m);
        if (!second) return std::nullopt;
        second->sign *= first->sign;
        return second;
    };

    for (ConfigWord up = 0; up < 8; ++up)
        for (ConfigWord down = 0; down < 8; ++down) {
            const KetPair ket{up, down};
            for (std::size_t a = 0; a < orbitals.size(); ++a) {
                for (std::size_t b = 0; b < orbitals.size(); ++b) {
                    for (OpKind ka : {OpKind::create, OpKind::annihilate})
                        for (OpKind kb : {OpKind::create, OpKind::annihilate}) {
                            const auto ab = apply2(ka, orbitals[a], kb, orbitals[b], ket);
                            const auto ba = apply2(kb, orbitals[b], ka, orbitals[a], ket);
                            if (a != b) {
                                // {op_a, op_b} = 0: both orders produce the same
                                // ket with opposite signs, or both vanish
                                CHECK(ab.has_value() == ba.has_value());
                                if (ab) {
                                    CHECK(ab->ket == ba->ket);
                                    CHECK(ab->sign == -ba->sign);
                                }
                            } else if (ka != kb) {
                                // {c_p, c+_p} = 1 acting on a basis ket: exactly
                                // one order survives and reproduces the ket
                                CHECK(ab.has_value() != ba.has_value());
                                const auto& alive = ab ? ab : ba;
                                CHECK(alive->ket == ket);
                                CHECK(alive->sign == +1);
                            } else {
                                // c_p c_p = c+_p c+_p = 0
                                CHECK_FALSE(ab.has_value());
                                CHECK_FALSE(ba.has_value());
                            }
                        }
                }
            }
        }
}

TEST_CASE("apply_product composes signs") {
    // Canonical string c+_{0dn} c+_{0up} c+_{1up} |0>: the final down creation
    // crosses both up orbitals, (-1)^2 = +1 overall.
    const ElemOp canonical[] = {{OpKind::create, Spin::down, 0},
                                {OpKind::create, Spin::up, 0},
                                {OpKind::create, Spin::up, 1}};
    const auto res = apply_product(canonical, {0, 0}, 2);
    REQUIRE(res.has_value());
    CHECK(res->ket.up == 0b11);
    CHECK(res->ket.down == 0b01);
    CHECK(res->sign == +1);

    // Swapping the two up creations in the string flips the sign.
    const ElemOp swapped[] = {{OpKind::create, Spin::down, 0},
                              {OpKind::create, Spin::up, 1},
                              {OpKind::create, Spin::up, 0}};
    const auto res2 = apply_product(swapped, {0, 0}, 2);
    REQUIRE(res2.has_value());
    CHECK(res2->ket == res->ket);
    CHECK(res2->sign == -1);
}
