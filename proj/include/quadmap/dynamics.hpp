#pragma once

// The globally coupled doubling maps on N sites, the coordinate reduction
// for N = 4, and the reduced piecewise-affine torus map with its 26-branch
// table. Two evaluation paths are kept: the closed formula (oracle) and the
// branch table (used by verification and simulation).

#include "quadmap/geometry.hpp"
#include "quadmap/rational.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadmap {

struct SingularPoint : std::runtime_error {
    explicit SingularPoint(const std::string& what) : std::runtime_error(what) {}
};

using TorusPoint3 = std::array<Rat, 3>;

// Periodic sawtooth interaction: u - round(u), with value 0 at half-integers.
inline Rat g_exact(const Rat& u) {
    Rat f = mod1(u);
    if (2 * f == 1) return 0;
    return 2 * f < 1 ? f : f - 1;
}

inline double g_num(double u) {
    double f = u - std::floor(u);
    if (f == 0.5) return 0.0;
    return f < 0.5 ? f : f - 1.0;
}

// One step of the coupled system on N sites, coordinates reduced mod 1.
inline std::vector<Rat> full_step(const std::vector<Rat>& x, const Rat& eps) {
    const size_t n = x.size();
    std::vector<Rat> out(n);
    for (size_t i = 0; i < n; ++i) {
        Rat coupling = 0;
        for (size_t j = 0; j < n; ++j)
            if (j != i) coupling += g_exact(x[j] - x[i]);
        out[i] = mod1(2 * (x[i] + eps / Rat(n) * coupling));
    }
    return out;
}

inline std::vector<double> full_step(const std::vector<double>& x, double eps) {
    const size_t n = x.size();
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) {
        double coupling = 0;
        for (size_t j = 0; j < n; ++j)
            if (j != i) coupling += g_num(x[j] - x[i]);
        double v = 2 * (x[i] + eps / double(n) * coupling);
        out[i] = v - std::floor(v);
    }
    return out;
}

struct ReducedCoordinates {
    Rat s;
    TorusPoint3 point;  // (p, q, r)
};

inline ReducedCoordinates reduce_coordinates(const std::vector<Rat>& x) {
    if (x.size() != 4)
        throw std::invalid_argument("coordinate reduction requires N = 4");
    return {mod1(x[0] + x[1] + x[2] + x[3]),
            {mod1(x[0] - x[1]), mod1(x[1] - x[2]), mod1(x[2] - x[3])}};
}

// The three-line displayed formula, evaluated without the final mod 1.
// Used directly by the exact face machinery, which needs lifted images.
inline TorusPoint3 g3_formula_lifted(const TorusPoint3& pt, const Rat& eps) {
    const Rat &p = pt[0], &q = pt[1], &r = pt[2];
    Rat gp = g_exact(p), gq = g_exact(q), gr = g_exact(r);
    Rat gpq = g_exact(p + q), gqr = g_exact(q + r), gpqr = g_exact(p + q + r);
    Rat h = eps / 2;
    return {2 * p + h * (-2 * gp + gq + gqr - gpq - gpqr),
            2 * q + h * (-2 * gq + gp + gr - gqr - gpq),
            2 * r + h * (-2 * gr + gq + gpq - gqr - gpqr)};
}

inline TorusPoint3 g3_step_formula(const TorusPoint3& pt, const Rat& eps) {
    TorusPoint3 y = g3_formula_lifted(pt, eps);
    return {mod1(y[0]), mod1(y[1]), mod1(y[2])};
}

// One continuity domain: closed polyhedron plus the integer offset vector of
// the affine branch x -> 2(1-eps) x + offset * eps/2.
struct Branch {
    std::string label;
    ConvexPolyhedron domain;
    std::array<int, 3> offset;
};

namespace detail {

inline std::vector<Branch> build_branch_table() {
    const Rat h(1, 2);
    // Constraint rows: coefficients of p, q, r.
    const Point P{1, 0, 0}, Q{0, 1, 0}, R{0, 0, 1};
    const Point PQ{1, 1, 0}, QR{0, 1, 1}, PQR{1, 1, 1};
    auto le = [](const Point& a, const Rat& b) { return HalfSpace{a, b}; };
    auto ge = [](const Point& a, const Rat& b) {
        return HalfSpace{{-a[0], -a[1], -a[2]}, -b};
    };
    // Closed half-unit cube with the given lower corner (entries 0 or 1/2).
    auto cube = [&](Rat lp, Rat lq, Rat lr) {
        return std::vector<HalfSpace>{ge(P, lp), le(P, lp + h),
                                      ge(Q, lq), le(Q, lq + h),
                                      ge(R, lr), le(R, lr + h)};
    };
    auto make = [&](const std::string& label, std::vector<HalfSpace> hs,
                    std::initializer_list<HalfSpace> extra,
                    std::array<int, 3> c) {
        hs.insert(hs.end(), extra.begin(), extra.end());
        return Branch{label, ConvexPolyhedron{3, std::move(hs)}, c};
    };

    const Rat z = 0;
    std::vector<Branch> t;
    auto c1 = cube(z, z, z);
    t.push_back(make("1a", c1, {le(PQR, h)}, {0, 0, 0}));
    t.push_back(make("1b", c1, {ge(PQ, h), le(QR, h)}, {2, 1, 0}));
    t.push_back(make("1c", c1, {le(PQ, h), ge(QR, h)}, {0, 1, 2}));
    t.push_back(make("1d", c1, {le(PQ, h), le(QR, h), ge(PQR, h)}, {1, 0, 1}));
    t.push_back(make("1e", c1, {ge(PQ, h), ge(QR, h)}, {1, 2, 1}));
    auto c2 = cube(z, h, z);
    t.push_back(make("2a", c2, {le(PQR, Rat(3, 2))}, {0, 4, 0}));
    t.push_back(make("2b", c2, {ge(PQR, Rat(3, 2))}, {1, 4, 1}));
    // Offsets in groups 3 and 6 are derived from the displayed formula
    // (the labels follow the offset table; the inequality listing pairs
    // them differently).
    auto c3 = cube(h, h, z);
    t.push_back(make("3a", c3, {ge(PQ, Rat(3, 2))}, {4, 4, 0}));
    t.push_back(make("3b", c3, {le(PQ, Rat(3, 2)), ge(PQR, Rat(3, 2))}, {3, 3, 1}));
    t.push_back(make("3c", c3, {le(PQR, Rat(3, 2))}, {2, 3, 0}));
    auto c4 = cube(h, z, z);
    t.push_back(make("4a", c4, {le(QR, h)}, {4, 0, 0}));
    t.push_back(make("4b", c4, {ge(QR, h), le(PQR, Rat(3, 2))}, {3, 1, 1}));
    t.push_back(make("4c", c4, {ge(PQR, Rat(3, 2))}, {4, 1, 2}));
    auto c5 = cube(z, z, h);
    t.push_back(make("5a", c5, {le(PQ, h)}, {0, 0, 4}));
    t.push_back(make("5b", c5, {ge(PQ, h), le(PQR, Rat(3, 2))}, {1, 1, 3}));
    t.push_back(make("5c", c5, {ge(PQR, Rat(3, 2))}, {2, 1, 4}));
    auto c6 = cube(z, h, h);
    t.push_back(make("6a", c6, {ge(QR, Rat(3, 2))}, {0, 4, 4}));
    t.push_back(make("6b", c6, {le(QR, Rat(3, 2)), ge(PQR, Rat(3, 2))}, {1, 3, 3}));
    t.push_back(make("6c", c6, {le(PQR, Rat(3, 2))}, {0, 3, 2}));
    auto c7 = cube(h, h, h);
    t.push_back(make("7a", c7, {ge(PQR, Rat(5, 2))}, {4, 4, 4}));
    t.push_back(make("7b", c7, {le(PQ, Rat(3, 2)), ge(QR, Rat(3, 2))}, {2, 3, 4}));
    t.push_back(make("7c", c7, {ge(PQ, Rat(3, 2)), le(QR, Rat(3, 2))}, {4, 3, 2}));
    t.push_back(make("7d", c7, {ge(PQ, Rat(3, 2)), ge(QR, Rat(3, 2)),
                                le(PQR, Rat(5, 2))}, {3, 4, 3}));
    t.push_back(make("7e", c7, {le(PQ, Rat(3, 2)), le(QR, Rat(3, 2))}, {3, 2, 3}));
    auto c8 = cube(h, z, h);
    t.push_back(make("8a", c8, {ge(PQR, Rat(3, 2))}, {4, 0, 4}));
    t.push_back(make("8b", c8, {le(PQR, Rat(3, 2))}, {3, 0, 3}));
    return t;
}

}  // namespace detail

inline const std::vector<Branch>& branch_table() {
    static const std::vector<Branch> table = detail::build_branch_table();
    return table;
}

// Branch strictly containing the point, or null when the point lies on a
// domain boundary (the map's value there is not pinned down).
inline const Branch* classify_or_null(const TorusPoint3& pt) {
    Point x{pt[0], pt[1], pt[2]};
    for (const auto& b : branch_table()) {
        bool strict = true;
        for (const auto& h : b.domain.halfspaces) {
            if (dot(h.a, x) >= h.b) { strict = false; break; }
        }
        if (strict) return &b;
    }
    return nullptr;
}

inline const Branch& classify(const TorusPoint3& pt) {
    const Branch* b = classify_or_null(pt);
    if (!b) throw SingularPoint("point lies on a continuity-domain boundary");
    return *b;
}

inline TorusPoint3 g3_step_table(const TorusPoint3& pt, const Rat& eps) {
    const Branch& b = classify(pt);
    Rat s = 2 * (1 - eps);
    TorusPoint3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = mod1(s * pt[i] + Rat(b.offset[i]) * eps / 2);
    return out;
}

// Lifted exact image of a subset of a branch domain (no reduction mod 1).
inline ConvexPolyhedron image_of_branch_piece(const ConvexPolyhedron& piece,
                                              const Branch& b, const Rat& eps) {
    Rat h = eps / 2;
    return scalar_affine_image(piece, 2 * (1 - eps),
                               {Rat(b.offset[0]) * h, Rat(b.offset[1]) * h,
                                Rat(b.offset[2]) * h});
}

inline ConvexPolyhedron image_of_branch(const Branch& b, const Rat& eps) {
    return image_of_branch_piece(b.domain, b, eps);
}

// ---- double-precision path (simulation only) ----

// Distance of the six singular functionals from the odd half-integer grid
// (the sawtooth jumps at 1/2 mod 1; integer values are regular on the torus).
inline double singularity_distance(const std::array<double, 3>& pt) {
    const double f[6] = {pt[0], pt[1], pt[2], pt[0] + pt[1], pt[1] + pt[2],
                         pt[0] + pt[1] + pt[2]};
    double best = 1.0;
    for (double v : f) {
        double frac = v - std::floor(v);
        best = std::min(best, std::abs(frac - 0.5));
    }
    return best;
}

namespace detail {

struct NumericBranch {
    std::vector<std::array<double, 4>> rows;  // a0,a1,a2,b
    std::array<double, 3> offset;
};

inline const std::vector<NumericBranch>& numeric_branch_table() {
    static const std::vector<NumericBranch> table = [] {
        std::vector<NumericBranch> t;
        for (const auto& b : branch_table()) {
            NumericBranch nb;
            for (const auto& h : b.domain.halfspaces)
                nb.rows.push_back({to_double(h.a[0]), to_double(h.a[1]),
                                   to_double(h.a[2]), to_double(h.b)});
            for (int i = 0; i < 3; ++i) nb.offset[i] = b.offset[i];
            t.push_back(std::move(nb));
        }
        return t;
    }();
    return table;
}

}  // namespace detail

// Index into branch_table(), or -1 when within `margin` of a singularity.
// Domains are treated as closed: at an integer (non-singular) boundary any
// adjacent branch produces the same image mod 1.
inline int classify_index_num(const std::array<double, 3>& pt, double margin) {
    if (singularity_distance(pt) < margin) return -1;
    const auto& table = detail::numeric_branch_table();
    const double slack = 1e-12;
    for (size_t i = 0; i < table.size(); ++i) {
        bool inside = true;
        for (const auto& r : table[i].rows) {
            if (r[0] * pt[0] + r[1] * pt[1] + r[2] * pt[2] > r[3] + slack) {
                inside = false;
                break;
            }
        }
        if (inside) return static_cast<int>(i);
    }
    return -1;
}

// One table step in doubles; returns false when the point is too close to a
// singularity plane to classify reliably.
inline bool g3_step_table_num(std::array<double, 3>& pt, double eps,
                              double margin) {
    int idx = classify_index_num(pt, margin);
    if (idx < 0) return false;
    const auto& b = detail::numeric_branch_table()[idx];
    for (int i = 0; i < 3; ++i) {
        double v = 2 * (1 - eps) * pt[i] + b.offset[i] * eps / 2;
        pt[i] = v - std::floor(v);
    }
    return true;
}

}  // namespace quadmap
