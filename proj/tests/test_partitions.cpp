#include "doctest.h"

#include "qbailey/partitions.hpp"

using namespace qb;

TEST_CASE("stats") {
    auto s = stats(Partition{3, 1});
    CHECK(s.weight == 4);
    CHECK(s.n_of == 1);
    CHECK(s.n_conj == 3);
    CHECK(s.n2 == 10);

    auto z = stats(Partition{0, 0, 0});
    CHECK(z.weight == 0);
    CHECK(z.n_of == 0);
    CHECK(z.n_conj == 0);
    CHECK(z.n2 == 0);

    LatticePoint p{-2, 1};
    auto l = stats(std::span<const std::int64_t>(p));
    CHECK(l.weight == -1);
    CHECK(l.n_conj == 3);
    CHECK(l.n2 == 5);
}

TEST_CASE("n2 identity") {
    for (auto& mu : enumerate_box(3, Partition{4, 4, 4})) {
        auto s = stats(mu);
        CHECK(s.n2 == s.weight + 2 * s.n_conj);
    }
}

TEST_CASE("horizontal strip") {
    CHECK(is_horizontal_strip(Partition{3, 1}, Partition{2, 1}));
    CHECK_FALSE(is_horizontal_strip(Partition{3, 3}, Partition{1, 1}));
    CHECK(is_horizontal_strip(Partition{2, 2}, Partition{2, 2}));
}

TEST_CASE("representation padding") {
    CHECK(Partition{2, 1} == Partition{2, 1, 0});
    CHECK(Partition{}.is_empty());
}

TEST_CASE("enumerate_box") {
    CHECK(enumerate_box(1, Partition{2}).size() == 3);
    CHECK(enumerate_box(2, Partition{1, 1}).size() == 3);
    CHECK(enumerate_box(2, Partition{2, 2}).size() == 6);
    // gaussian binomial count C(m+n, n) for cap = m^n
    auto count = [](std::size_t n, std::int64_t m) {
        std::vector<std::int64_t> cap(n, m);
        return enumerate_box(n, Partition(cap)).size();
    };
    CHECK(count(2, 3) == 10);
    CHECK(count(3, 2) == 10);
    CHECK(count(3, 3) == 20);
}

TEST_CASE("enumerate_chains") {
    CHECK(enumerate_chains(Partition{1}, 2).size() == 2);
    CHECK(enumerate_chains(Partition{1}, 3).size() == 3);
    CHECK(enumerate_chains(Partition{2, 1}, 2).size() == 5);
    for (auto& chain : enumerate_chains(Partition{2, 1}, 3)) {
        REQUIRE(chain.size() == 2);
        CHECK(Partition{2, 1}.contains(chain[0]));
        CHECK(chain[0].contains(chain[1]));
    }
}

TEST_CASE("lattice_shells") {
    CHECK(lattice_shells(1, 0) == std::vector<LatticePoint>{{0}});
    auto s12 = lattice_shells(1, 2);
    CHECK(s12.size() == 2);
    CHECK(lattice_shells(2, 1).size() == 8);
    CHECK(lattice_shells(3, 2).size() == 125 - 27);
}

TEST_CASE("hyperoctahedral_orbit") {
    CHECK(hyperoctahedral_orbit(LatticePoint{0, 0}).size() == 1);
    CHECK(hyperoctahedral_orbit(LatticePoint{3}).size() == 2);
    CHECK(hyperoctahedral_orbit(LatticePoint{2, 1}).size() == 8);
    // strictly positive, strictly decreasing point: full 2^n n! orbit
    CHECK(hyperoctahedral_orbit(LatticePoint{5, 3, 1}).size() == 48);
}

TEST_CASE("strips_below") {
    auto strips = strips_below(Partition{2, 1});
    // nu_1 in [1,2], nu_2 in [0,1]
    CHECK(strips.size() == 4);
    for (auto& nu : strips) CHECK(is_horizontal_strip(Partition{2, 1}, nu));
}
