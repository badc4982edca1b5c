#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "quadmap/dynamics.hpp"
#include "quadmap/geometry.hpp"
#include "quadmap/verify.hpp"

#include <algorithm>
#include <random>

using namespace quadmap;

namespace {

ConvexPolyhedron unit_cube() {
    ConvexPolyhedron p{3, {}};
    for (int i = 0; i < 3; ++i) {
        Point lo(3, Rat(0)), hi(3, Rat(0));
        lo[i] = -1;
        hi[i] = 1;
        p.halfspaces.push_back({lo, Rat(0)});
        p.halfspaces.push_back({hi, Rat(1)});
    }
    return p;
}

const Branch& branch(const std::string& label) {
    for (const auto& b : branch_table())
        if (b.label == label) return b;
    throw std::logic_error("no such branch");
}

}  // namespace

TEST_CASE("cube vertex enumeration") {
    auto verts = vertices(unit_cube());
    CHECK(verts.size() == 8);
    for (const auto& v : verts)
        for (const auto& c : v) CHECK((c == 0 || c == 1));
}

TEST_CASE("infeasible polyhedra are empty") {
    ConvexPolyhedron p{3,
                       {{{Rat(1), Rat(0), Rat(0)}, Rat(0)},
                        {{Rat(-1), Rat(0), Rat(0)}, Rat(-1)}}};
    CHECK(vertices(p).empty());
    CHECK(is_empty(p));

    ConvexPolyhedron q = unit_cube();
    q.halfspaces.push_back({{Rat(-1), Rat(0), Rat(0)}, Rat(-2)});  // x >= 2
    CHECK(is_empty(q));
}

TEST_CASE("unbounded polyhedra are reported") {
    // Positive octant: has a vertex at the origin but recedes to infinity.
    ConvexPolyhedron p{3,
                       {{{Rat(-1), Rat(0), Rat(0)}, Rat(0)},
                        {{Rat(0), Rat(-1), Rat(0)}, Rat(0)},
                        {{Rat(0), Rat(0), Rat(-1)}, Rat(0)}}};
    CHECK_THROWS_WITH_AS(vertices(p), "unbounded", std::runtime_error);
}

TEST_CASE("P1 cap 4a is a tetrahedron") {
    Rat eps(41, 100);
    auto piece = intersect(build_p1(eps), branch("4a").domain);
    CHECK(vertices(piece).size() == 4);
}

TEST_CASE("P1 meets 1b but not 1a") {
    Rat eps(41, 100);
    CHECK(!is_empty(intersect(build_p1(eps), branch("1b").domain)));
    CHECK(!is_full_dim(intersect(build_p1(eps), branch("1a").domain)));
}

TEST_CASE("optimize over the image of P1 cap 4a") {
    // The extremes of p+q and q+r on the image equal L(eps/2)+eps/2 and its
    // reflection, pinned here at eps = 41/100.
    Rat eps(41, 100);
    auto piece = intersect(build_p1(eps), branch("4a").domain);
    auto image = image_of_branch_piece(piece, branch("4a"), eps);
    CHECK(optimize(image, {Rat(1), Rat(1), Rat(0)}, Direction::Min) ==
          Rat(6519, 10000) + 1);  // lifted by the p-offset
    CHECK(optimize(image, {Rat(0), Rat(1), Rat(1)}, Direction::Max) ==
          Rat(3481, 10000));
    LorenzMap l(eps);
    CHECK(l(eps / 2) + eps / 2 == Rat(6519, 10000));

    CHECK(optimize(unit_cube(), {Rat(1), Rat(0), Rat(0)}, Direction::Max) == 1);
    CHECK_THROWS_AS(
        optimize(ConvexPolyhedron{3,
                                  {{{Rat(1), Rat(0), Rat(0)}, Rat(0)},
                                   {{Rat(-1), Rat(0), Rat(0)}, Rat(-1)}}},
                 {Rat(1), Rat(0), Rat(0)}, Direction::Max),
        std::runtime_error);
}

TEST_CASE("scalar_affine_image scales the cube") {
    Rat eps(2, 5);
    auto img = scalar_affine_image(unit_cube(), 2 * (1 - eps),
                                   {Rat(0), Rat(0), Rat(0)});
    CHECK(volume(img) == Rat(6, 5) * Rat(6, 5) * Rat(6, 5));
    auto verts = vertices(img);
    Rat top(6, 5);
    for (const auto& v : verts)
        for (const auto& c : v) CHECK((c == 0 || c == top));
}

TEST_CASE("image commutes with vertex enumeration") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        ConvexPolyhedron p = unit_cube();
        for (int extra = 0; extra < 3; ++extra) {
            Point a{Rat(coef(rng)), Rat(coef(rng)), Rat(coef(rng))};
            p.halfspaces.push_back({a, Rat(coef(rng) + 4)});
        }
        if (!is_full_dim(p)) continue;
        Rat scale(3, 2);
        Point t{Rat(1, 3), Rat(-2, 7), Rat(5)};
        auto img = scalar_affine_image(p, scale, t);
        auto expect = vertices(p);
        for (auto& v : expect)
            for (int i = 0; i < 3; ++i) v[i] = scale * v[i] + t[i];
        auto got = vertices(img);
        std::sort(expect.begin(), expect.end());
        std::sort(got.begin(), got.end());
        CHECK(expect == got);
    }
}

TEST_CASE("volume ignores constraint order and redundancy") {
    auto p = branch("1e").domain;
    Rat v = volume(p);
    CHECK(v > 0);

    ConvexPolyhedron shuffled = p;
    std::reverse(shuffled.halfspaces.begin(), shuffled.halfspaces.end());
    CHECK(volume(shuffled) == v);

    ConvexPolyhedron redundant = p;
    redundant.halfspaces.push_back({{Rat(1), Rat(1), Rat(1)}, Rat(10)});
    CHECK(volume(redundant) == v);
}

TEST_CASE("volume of degenerate polyhedra is zero") {
    ConvexPolyhedron slab = unit_cube();
    slab.halfspaces.push_back({{Rat(1), Rat(0), Rat(0)}, Rat(0)});  // x <= 0
    CHECK(volume(slab) == 0);
    CHECK(!is_full_dim(slab));
}

TEST_CASE("containment of branch images in the asymmetric region") {
    Rat eps(41, 100);
    Region a = build_region(RegionName::A, eps);
    auto piece = intersect(build_p1(eps), branch("1b").domain);
    auto image = image_of_branch_piece(piece, branch("1b"), eps);
    auto res = contains_in_region(image, a);
    CHECK(res.contained);
    CHECK(res.member == "P2");
    CHECK(res.shift == std::array<long, 3>{0, 0, 0});

    SUBCASE("duality: random interior points of the piece land in the member") {
        auto verts = vertices(image);
        const RegionMember* target = nullptr;
        for (const auto& m : a.members)
            if (m.label == res.member) target = &m;
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> w(0, 10);
        for (int trial = 0; trial < 100; ++trial) {
            Point x(3, Rat(0));
            Rat total = 0;
            for (const auto& v : verts) {
                Rat wt(w(rng) + 1);
                total += wt;
                for (int i = 0; i < 3; ++i) x[i] += wt * v[i];
            }
            for (int i = 0; i < 3; ++i)
                x[i] = x[i] / total + Rat(res.shift[i]);
            CHECK(satisfies(target->poly, x));
        }
    }
}

TEST_CASE("failed containment yields a witness avoiding every member") {
    Rat eps(39, 100);
    Region a = build_region(RegionName::A, eps);
    auto piece = intersect(build_p1(eps), branch("4a").domain);
    auto image = image_of_branch_piece(piece, branch("4a"), eps);
    auto res = contains_in_region(image, a);
    CHECK(!res.contained);
    REQUIRE(res.witness.has_value());
    const Point& w = *res.witness;
    CHECK(satisfies(image, w));
    for (const auto& m : a.members)
        for (const auto& v : shift_vectors(kDefaultShiftRange, 3)) {
            Point shifted{w[0] + v[0], w[1] + v[1], w[2] + v[2]};
            CHECK(!satisfies(m.poly, shifted));
        }
}

TEST_CASE("self containment at shift range zero") {
    auto p = branch("2b").domain;
    Region r{"self", {{"only", p}}};
    CHECK(contains_in_region(p, r, 0).contained);
}

TEST_CASE("region equality and disjointness") {
    Rat eps(41, 100);
    Region p2{"P2", {{"P2", build_p2(eps)}}};
    AffineSymmetry s34 = compose(generator(3), generator(4));
    CHECK(region_equal_mod_lattice(apply_to_region(s34, p2), p2));

    Region p1{"P1", {{"P1", build_p1(eps)}}};
    CHECK(!region_equal_mod_lattice(p1, p2));
    CHECK(region_equal_mod_lattice(p1, p1));
    CHECK(!regions_disjoint(p1, p1));

    Region a = build_region(RegionName::A, eps);
    CHECK(regions_disjoint(apply_to_region(generator(0), a), a));
    CHECK(!regions_disjoint(apply_to_region(generator(3), a), a));
}

TEST_CASE("empty intersection of asymmetric and symmetric members") {
    Rat eps(41, 100);
    CHECK(is_empty(intersect(build_p2(eps), build_p0(eps))));
}
