#pragma once

// The affine symmetry group of the reduced torus map: the seven involutive
// generators, composition, breadth-first group closure, and the action on
// points, polyhedra and regions.

#include "quadmap/dynamics.hpp"
#include "quadmap/geometry.hpp"
#include "quadmap/rational.hpp"

#include <array>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadmap {

using Mat3 = std::array<std::array<long, 3>, 3>;
using Vec3l = std::array<long, 3>;

inline long mat3_det(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// x -> matrix * x + translation mod 1. Unimodular, so the inverse is again
// an integer affine map.
struct AffineSymmetry {
    std::string name;
    Mat3 matrix;
    Vec3l translation{0, 0, 0};

    // Torus equality: integer translations all act as the identity shift,
    // so two elements agree on the torus iff their matrices agree.
    friend bool operator==(const AffineSymmetry& a, const AffineSymmetry& b) {
        return a.matrix == b.matrix;
    }
};

inline Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Mat3 mat3_inverse(const Mat3& m) {
    long det = mat3_det(m);
    if (det != 1 && det != -1)
        throw std::invalid_argument("matrix is not unimodular");
    Mat3 adj;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            long sub[2][2];
            int rr = 0;
            for (int r = 0; r < 3; ++r) {
                if (r == j) continue;
                int cc = 0;
                for (int c = 0; c < 3; ++c) {
                    if (c == i) continue;
                    sub[rr][cc++] = m[r][c];
                }
                ++rr;
            }
            long cof = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0];
            if ((i + j) % 2 == 1) cof = -cof;
            adj[i][j] = cof * det;  // det is +-1
        }
    return adj;
}

// compose(a, b) applies b first: x -> a(b(x)).
inline AffineSymmetry compose(const AffineSymmetry& a, const AffineSymmetry& b) {
    AffineSymmetry out;
    out.matrix = mat3_mul(a.matrix, b.matrix);
    for (int i = 0; i < 3; ++i) {
        long t = a.translation[i];
        for (int k = 0; k < 3; ++k) t += a.matrix[i][k] * b.translation[k];
        out.translation[i] = 0;  // canonical representative mod 1
        (void)t;
    }
    out.name = a.name.empty() || b.name.empty() ? a.name + b.name
                                                : a.name + " " + b.name;
    return out;
}

inline AffineSymmetry inverse(const AffineSymmetry& s) {
    AffineSymmetry out;
    out.matrix = mat3_inverse(s.matrix);
    out.translation = {0, 0, 0};
    out.name = s.name + "^-1";
    return out;
}

inline AffineSymmetry identity_symmetry() {
    return {"id", {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, {0, 0, 0}};
}

// The seven generators S0..S6. Each is an involution; S4 = S2 S1 S2,
// S5 = S3 S1 S3 and S6 = S3 S2 S3.
inline const std::vector<AffineSymmetry>& generators() {
    static const std::vector<AffineSymmetry> gens = {
        {"S0", {{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}, {1, 1, 1}},
        {"S1", {{{-1, 0, 0}, {1, 1, 0}, {0, 0, 1}}}, {0, 0, 0}},
        {"S2", {{{0, -1, 0}, {-1, 0, 0}, {1, 1, 1}}}, {0, 0, 0}},
        {"S3", {{{0, -1, -1}, {0, 1, 0}, {-1, -1, 0}}}, {0, 0, 0}},
        {"S4", {{{1, 1, 0}, {0, -1, 0}, {0, 1, 1}}}, {0, 0, 0}},
        {"S5", {{{1, 1, 1}, {0, 0, -1}, {0, -1, 0}}}, {0, 0, 0}},
        {"S6", {{{1, 0, 0}, {0, 1, 1}, {0, 0, -1}}}, {0, 0, 0}},
    };
    return gens;
}

inline const AffineSymmetry& generator(int i) { return generators().at(i); }

inline TorusPoint3 apply_to_point(const AffineSymmetry& s, const TorusPoint3& pt) {
    TorusPoint3 out;
    for (int i = 0; i < 3; ++i) {
        Rat v = Rat(s.translation[i]);
        for (int k = 0; k < 3; ++k) v += Rat(s.matrix[i][k]) * pt[k];
        out[i] = mod1(v);
    }
    return out;
}

// Exact image of a lifted polyhedron, then shifted by the integer vector
// bringing its centroid closest to the center of the unit cube (ties go to
// the lexicographically smaller shift).
inline ConvexPolyhedron apply_to_poly(const AffineSymmetry& s,
                                      const ConvexPolyhedron& p) {
    if (p.dim != 3) throw std::invalid_argument("symmetries act on dimension 3");
    Mat3 inv = mat3_inverse(s.matrix);
    ConvexPolyhedron out = p;
    for (auto& h : out.halfspaces) {
        Point a2(3);
        for (int j = 0; j < 3; ++j) {
            Rat v = 0;
            for (int i = 0; i < 3; ++i) v += h.a[i] * Rat(inv[i][j]);
            a2[j] = v;
        }
        Rat b2 = h.b;
        for (int j = 0; j < 3; ++j) b2 += a2[j] * Rat(s.translation[j]);
        h.a = std::move(a2);
        h.b = b2;
    }
    auto verts = vertices(out);
    if (verts.empty()) return out;
    Point c = centroid(verts);
    Point shift(3);
    for (int i = 0; i < 3; ++i) {
        Rat target = Rat(1, 2) - c[i];
        Int lo = rat_floor(target);
        Rat dl = abs(target - Rat(lo)), dh = abs(Rat(lo + 1) - target);
        shift[i] = dl <= dh ? Rat(lo) : Rat(lo + 1);
    }
    return translate(out, shift);
}

inline Region apply_to_region(const AffineSymmetry& s, const Region& r) {
    Region out;
    out.label = s.name + "(" + r.label + ")";
    for (const auto& m : r.members)
        out.members.push_back({s.name + "(" + m.label + ")",
                               apply_to_poly(s, m.poly)});
    return out;
}

struct SymmetryGroup {
    std::vector<AffineSymmetry> elements;  // element names are generator words
};

// Breadth-first closure under composition with the generators. Elements are
// identified by their torus action (matrix mod the integer lattice).
inline SymmetryGroup generate_group(const std::vector<AffineSymmetry>& gens,
                                    size_t cap = 10000) {
    SymmetryGroup g;
    g.elements.push_back(identity_symmetry());
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        for (const auto& s : gens) {
            AffineSymmetry next = compose(s, g.elements[i]);
            if (g.elements[i].name == "id") next.name = s.name;
            bool known = false;
            for (const auto& e : g.elements)
                if (e == next) { known = true; break; }
            if (known) continue;
            g.elements.push_back(next);
            if (g.elements.size() > cap)
                throw std::runtime_error("group closure exceeded safety cap");
            queue.push_back(g.elements.size() - 1);
        }
    }
    return g;
}

inline const SymmetryGroup& full_group() {
    static const SymmetryGroup g = generate_group(generators());
    return g;
}

struct EquivarianceReport {
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    std::optional<TorusPoint3> counterexample;
};

// Samples rational nonsingular points and checks S(G(x)) = G(S(x)) exactly.
template <typename Rng>
EquivarianceReport check_equivariance(const AffineSymmetry& s, const Rat& eps,
                                      int samples, Rng& rng) {
    EquivarianceReport rep;
    // Odd denominator: the singular functionals can then never hit k/2
    // with k odd, so nearly every sample is usable.
    const long den = 2521;
    std::uniform_int_distribution<long> dist(0, den - 1);
    for (int n = 0; n < samples; ++n) {
        TorusPoint3 pt{Rat(dist(rng), den), Rat(dist(rng), den),
                       Rat(dist(rng), den)};
        TorusPoint3 spt = apply_to_point(s, pt);
        if (!classify_or_null(pt) || !classify_or_null(spt)) {
            ++rep.skipped;
            continue;
        }
        TorusPoint3 lhs = g3_step_table(spt, eps);
        TorusPoint3 rhs = apply_to_point(s, g3_step_table(pt, eps));
        if (lhs == rhs) {
            ++rep.passed;
        } else {
            ++rep.failed;
            if (!rep.counterexample) rep.counterexample = pt;
        }
    }
    return rep;
}

struct RegionOrbit {
    std::vector<Region> distinct_images;
    std::vector<std::string> stabilizer_words;
    size_t stabilizer_order = 0;
};

inline RegionOrbit orbit_of_region(const Region& r, const SymmetryGroup& g) {
    RegionOrbit orbit;
    for (const auto& e : g.elements) {
        Region img = apply_to_region(e, r);
        if (orbit.distinct_images.empty()) {
            // First element is the identity: its image is R itself.
            orbit.stabilizer_words.push_back(e.name);
            orbit.distinct_images.push_back(std::move(img));
            continue;
        }
        bool fresh = true;
        for (size_t i = 0; i < orbit.distinct_images.size(); ++i) {
            if (region_equal_mod_lattice(img, orbit.distinct_images[i])) {
                fresh = false;
                if (i == 0) orbit.stabilizer_words.push_back(e.name);
                break;
            }
        }
        if (fresh) orbit.distinct_images.push_back(std::move(img));
    }
    // By orbit-stabilizer; the first distinct image is R itself.
    orbit.stabilizer_order = g.elements.size() / orbit.distinct_images.size();
    return orbit;
}

}  // namespace quadmap
