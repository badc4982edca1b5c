#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quadmap/symmetry.hpp"
#include "quadmap/verify.hpp"

#include <random>

using namespace quadmap;

TEST_CASE("generator action on points") {
    TorusPoint3 x{Rat(1, 5), Rat(3, 10), Rat(2, 5)};
    CHECK(apply_to_point(generator(1), x) ==
          TorusPoint3{Rat(4, 5), Rat(1, 2), Rat(2, 5)});
    CHECK(apply_to_point(generator(0), x) ==
          TorusPoint3{Rat(4, 5), Rat(7, 10), Rat(3, 5)});
    CHECK(apply_to_point(generator(6), x) ==
          TorusPoint3{Rat(1, 5), Rat(7, 10), Rat(3, 5)});
}

TEST_CASE("generators are involutions") {
    const AffineSymmetry id = identity_symmetry();
    for (const auto& s : generators()) CHECK(compose(s, s) == id);
}

TEST_CASE("conjugation relations") {
    auto conj = [](int a, int b) {
        return compose(generator(a), compose(generator(b), generator(a)));
    };
    CHECK(conj(2, 1) == generator(4));
    CHECK(conj(3, 1) == generator(5));
    CHECK(conj(3, 2) == generator(6));
}

TEST_CASE("group order and subgroups") {
    CHECK(full_group().elements.size() == 48);
    CHECK(generate_group({generator(3), generator(4)}).elements.size() == 4);
    CHECK(generate_group({}).elements.size() == 1);
}

TEST_CASE("the point reflection is central") {
    for (const auto& e : full_group().elements)
        CHECK(compose(generator(0), e) == compose(e, generator(0)));
}

TEST_CASE("inverses") {
    const AffineSymmetry id = identity_symmetry();
    for (const auto& e : full_group().elements) {
        CHECK(compose(inverse(e), e) == id);
        CHECK(compose(e, inverse(e)) == id);
    }
}

TEST_CASE("generators commute with the map on sampled points") {
    std::mt19937_64 rng(5);
    for (const auto& s : generators()) {
        auto rep = check_equivariance(s, Rat(41, 100), 200, rng);
        CHECK(rep.failed == 0);
        CHECK(rep.passed > 150);
    }
}

TEST_CASE("a shear is not a symmetry") {
    AffineSymmetry shear{"shear", {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}, {0, 0, 0}};
    std::mt19937_64 rng(6);
    auto rep = check_equivariance(shear, Rat(41, 100), 200, rng);
    CHECK(rep.failed > 0);
    REQUIRE(rep.counterexample.has_value());
}

TEST_CASE("images of the base pieces match their explicit descriptions") {
    const Rat eps(41, 100);
    const Rat ps = p_star(eps);
    auto ge = [](Point a, Rat b) {
        return HalfSpace{{-a[0], -a[1], -a[2]}, -b};
    };
    auto le = [](Point a, Rat b) { return HalfSpace{std::move(a), b}; };

    SUBCASE("point reflection of P1") {
        ConvexPolyhedron expect{3,
                                {le({0, 1, 0}, 1 - eps / 2),
                                 le({0, 0, 1}, 1),
                                 le({1, 1, 0}, 1 + ps),
                                 ge({0, 1, 1}, 2 - ps),
                                 ge({1, 1, 1}, 2 + eps / 2)}};
        Region got{"", {{"", apply_to_poly(generator(0), build_p1(eps))}}};
        CHECK(region_equal_mod_lattice(got, Region{"", {{"", expect}}}));
    }

    SUBCASE("first reflection family member of P2") {
        ConvexPolyhedron expect{3,
                                {ge({1, 0, 0}, ps),
                                 le({0, 0, 1}, 1 - ps),
                                 le({1, 1, 0}, 1),
                                 ge({0, 1, 1}, 1)}};
        Region got{"", {{"", apply_to_poly(generator(3), build_p2(eps))}}};
        CHECK(region_equal_mod_lattice(got, Region{"", {{"", expect}}}));
    }
}

TEST_CASE("orbit sizes of the invariant regions") {
    const Rat eps(41, 100);
    auto a_orbit = orbit_of_region(build_region(RegionName::A, eps),
                                   full_group());
    CHECK(a_orbit.distinct_images.size() == 6);
    CHECK(a_orbit.stabilizer_order == 8);

    auto s_orbit = orbit_of_region(build_region(RegionName::S, Rat(32, 100)),
                                   full_group());
    CHECK(s_orbit.distinct_images.size() == 1);
    CHECK(s_orbit.stabilizer_order == 48);
}
