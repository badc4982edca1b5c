#pragma once

// Exact rational polytope calculus in dimension 2 and 3: vertex enumeration
// by exhaustive hyperplane intersection, linear optimization over vertices,
// set difference by half-space complementation, and containment of lifted
// polyhedra in torus regions via bounded integer-shift search.

#include "quadmap/rational.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadmap {

// Constraint a.x <= b.
struct HalfSpace {
    Point a;
    Rat b;
};

struct ConvexPolyhedron {
    int dim = 3;
    std::vector<HalfSpace> halfspaces;
};

struct RegionMember {
    std::string label;
    ConvexPolyhedron poly;
};

// Finite union of lifted convex polyhedra; torus identification is handled
// by the integer-shift search in the containment queries below.
struct Region {
    std::string label;
    std::vector<RegionMember> members;
};

inline constexpr int kDefaultShiftRange = 3;

inline Rat dot(const Point& a, const Point& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat det2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    return a * d - b * c;
}

inline Rat det3(const Point& r0, const Point& r1, const Point& r2) {
    return r0[0] * det2(r1[1], r1[2], r2[1], r2[2])
         - r0[1] * det2(r1[0], r1[2], r2[0], r2[2])
         + r0[2] * det2(r1[0], r1[1], r2[0], r2[1]);
}

// Solves the d x d system rows.x = rhs by Cramer's rule; nullopt if singular.
inline std::optional<Point> solve_square(const std::vector<Point>& rows,
                                         const Point& rhs) {
    const size_t d = rows.size();
    if (d == 2) {
        Rat det = det2(rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
        if (det == 0) return std::nullopt;
        Rat x = det2(rhs[0], rows[0][1], rhs[1], rows[1][1]) / det;
        Rat y = det2(rows[0][0], rhs[0], rows[1][0], rhs[1]) / det;
        return Point{x, y};
    }
    Rat det = det3(rows[0], rows[1], rows[2]);
    if (det == 0) return std::nullopt;
    Point col(3);
    Point out(3);
    for (int k = 0; k < 3; ++k) {
        std::vector<Point> m = rows;
        for (int i = 0; i < 3; ++i) m[i][k] = rhs[i];
        out[k] = det3(m[0], m[1], m[2]) / det;
    }
    return out;
}

// Rank of the span of the given vectors (Gaussian elimination).
inline int linear_rank(std::vector<Point> vecs) {
    if (vecs.empty()) return 0;
    const size_t d = vecs[0].size();
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < d && row < vecs.size(); ++col) {
        size_t piv = row;
        while (piv < vecs.size() && vecs[piv][col] == 0) ++piv;
        if (piv == vecs.size()) continue;
        std::swap(vecs[row], vecs[piv]);
        for (size_t i = row + 1; i < vecs.size(); ++i) {
            if (vecs[i][col] == 0) continue;
            Rat f = vecs[i][col] / vecs[row][col];
            for (size_t j = col; j < d; ++j) vecs[i][j] -= f * vecs[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// Dimension of the affine hull of a point set.
inline int affine_rank(const std::vector<Point>& pts) {
    if (pts.size() < 2) return 0;
    std::vector<Point> diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        Point d(pts[i].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(d));
    }
    return linear_rank(std::move(diffs));
}

inline bool satisfies(const ConvexPolyhedron& p, const Point& x) {
    for (const auto& h : p.halfspaces)
        if (dot(h.a, x) > h.b) return false;
    return true;
}

namespace detail {

// The recession cone {d : A d <= 0} is nontrivial iff A is rank deficient
// (the cone contains a line) or some intersection of two constraint
// hyperplanes yields a feasible extreme ray.
inline bool has_recession_direction(const ConvexPolyhedron& p) {
    std::vector<Point> normals;
    for (const auto& h : p.halfspaces) normals.push_back(h.a);
    if (linear_rank(normals) < p.dim) return true;

    auto feasible_dir = [&](const Point& d) {
        bool nonzero = false;
        for (const auto& c : d)
            if (c != 0) nonzero = true;
        if (!nonzero) return false;
        for (const auto& h : p.halfspaces)
            if (dot(h.a, d) > 0) return false;
        return true;
    };

    const size_t m = p.halfspaces.size();
    if (p.dim == 2) {
        for (size_t i = 0; i < m; ++i) {
            const Point& a = p.halfspaces[i].a;
            Point d{-a[1], a[0]};
            Point dn{a[1], -a[0]};
            if (feasible_dir(d) || feasible_dir(dn)) return true;
        }
        return false;
    }
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            const Point& a = p.halfspaces[i].a;
            const Point& b = p.halfspaces[j].a;
            Point d{a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0]};
            Point dn{-d[0], -d[1], -d[2]};
            if (feasible_dir(d) || feasible_dir(dn)) return true;
        }
    }
    return false;
}

}  // namespace detail

// Exact extreme points of a bounded polyhedron. Throws "unbounded" when the
// feasible set is nonempty with a nontrivial recession cone.
inline std::vector<Point> vertices(const ConvexPolyhedron& p) {
    const int d = p.dim;
    const size_t m = p.halfspaces.size();
    std::vector<Point> out;
    auto try_candidate = [&](const std::vector<Point>& rows, const Point& rhs) {
        auto x = solve_square(rows, rhs);
        if (x && satisfies(p, *x)) out.push_back(std::move(*x));
    };
    if (d == 2) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                try_candidate({p.halfspaces[i].a, p.halfspaces[j].a},
                              {p.halfspaces[i].b, p.halfspaces[j].b});
    } else {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                for (size_t k = j + 1; k < m; ++k)
                    try_candidate({p.halfspaces[i].a, p.halfspaces[j].a,
                                   p.halfspaces[k].a},
                                  {p.halfspaces[i].b, p.halfspaces[j].b,
                                   p.halfspaces[k].b});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && detail::has_recession_direction(p))
        throw std::runtime_error("unbounded");
    return out;
}

inline bool is_empty(const ConvexPolyhedron& p) {
    return vertices(p).empty();
}

// True when the polyhedron has interior points (affine hull spans R^d).
inline bool is_full_dim(const ConvexPolyhedron& p) {
    return affine_rank(vertices(p)) == p.dim;
}

enum class Direction { Min, Max };

inline Rat optimize(const ConvexPolyhedron& p, const Point& objective,
                    Direction dir) {
    auto verts = vertices(p);
    if (verts.empty()) throw std::runtime_error("empty polyhedron");
    Rat best = dot(objective, verts[0]);
    for (size_t i = 1; i < verts.size(); ++i) {
        Rat v = dot(objective, verts[i]);
        if (dir == Direction::Max ? v > best : v < best) best = v;
    }
    return best;
}

inline ConvexPolyhedron intersect(const ConvexPolyhedron& p,
                                  const std::vector<HalfSpace>& constraints) {
    ConvexPolyhedron out = p;
    for (const auto& h : constraints) {
        if (static_cast<int>(h.a.size()) != p.dim)
            throw std::invalid_argument("dimension mismatch");
        out.halfspaces.push_back(h);
    }
    return out;
}

inline ConvexPolyhedron intersect(const ConvexPolyhedron& p,
                                  const ConvexPolyhedron& q) {
    return intersect(p, q.halfspaces);
}

// Image under x -> scale*x + translation in lifted coordinates (scale > 0).
inline ConvexPolyhedron scalar_affine_image(const ConvexPolyhedron& p,
                                            const Rat& scale,
                                            const Point& translation) {
    if (scale <= 0) throw std::invalid_argument("scale must be positive");
    ConvexPolyhedron out = p;
    for (auto& h : out.halfspaces) h.b = scale * h.b + dot(h.a, translation);
    return out;
}

inline ConvexPolyhedron translate(const ConvexPolyhedron& p, const Point& t) {
    ConvexPolyhedron out = p;
    for (auto& h : out.halfspaces) h.b += dot(h.a, t);
    return out;
}

inline Point centroid(const std::vector<Point>& pts) {
    Point c(pts[0].size(), Rat(0));
    for (const auto& p : pts)
        for (size_t i = 0; i < c.size(); ++i) c[i] += p[i];
    for (auto& x : c) x /= Rat(pts.size());
    return c;
}

namespace detail {

// Exact counterclockwise comparison around the origin for 2D offsets.
inline bool angular_less(const std::array<Rat, 2>& u,
                         const std::array<Rat, 2>& v) {
    auto half = [](const std::array<Rat, 2>& w) {
        return (w[1] < 0 || (w[1] == 0 && w[0] < 0)) ? 1 : 0;
    };
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return u[0] * v[1] - u[1] * v[0] > 0;
}

inline void sort_angularly(std::vector<size_t>& idx,
                           const std::vector<std::array<Rat, 2>>& rel) {
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
        return angular_less(rel[i], rel[j]);
    });
}

}  // namespace detail

// Boundary faces of a full-dimensional 3D polytope: for each supporting
// constraint, the incident vertex indices in boundary-cycle order.
// Duplicated supporting planes (redundant constraints) appear once.
inline std::vector<std::vector<size_t>> hull_faces(const ConvexPolyhedron& p,
                                                   const std::vector<Point>& verts) {
    std::vector<std::vector<size_t>> faces;
    std::vector<std::vector<size_t>> seen;
    for (const auto& h : p.halfspaces) {
        std::vector<size_t> on_face;
        for (size_t i = 0; i < verts.size(); ++i)
            if (dot(h.a, verts[i]) == h.b) on_face.push_back(i);
        if (on_face.size() < 3) continue;
        std::vector<Point> fpts;
        for (size_t i : on_face) fpts.push_back(verts[i]);
        if (affine_rank(fpts) != 2) continue;
        std::vector<size_t> key = on_face;
        std::sort(key.begin(), key.end());
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);

        // Order the face vertices by projecting out the dominant normal axis.
        size_t drop = 0;
        Rat best = abs(h.a[0]);
        for (size_t k = 1; k < 3; ++k)
            if (abs(h.a[k]) > best) { best = abs(h.a[k]); drop = k; }
        size_t u_ax = (drop + 1) % 3, v_ax = (drop + 2) % 3;
        Point c = centroid(fpts);
        std::vector<std::array<Rat, 2>> rel;
        for (const auto& fp : fpts)
            rel.push_back({fp[u_ax] - c[u_ax], fp[v_ax] - c[v_ax]});
        std::vector<size_t> idx(fpts.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        detail::sort_angularly(idx, rel);

        std::vector<size_t> ordered;
        for (size_t i : idx) ordered.push_back(on_face[i]);
        faces.push_back(std::move(ordered));
    }
    return faces;
}

// Exact volume (area for dim 2) via fan triangulation over the ordered
// boundary faces; 0 for empty or degenerate input.
inline Rat volume(const ConvexPolyhedron& p) {
    auto verts = vertices(p);
    if (static_cast<int>(verts.size()) < p.dim + 1) return 0;
    if (affine_rank(verts) < p.dim) return 0;

    if (p.dim == 2) {
        Point c = centroid(verts);
        std::vector<std::array<Rat, 2>> rel;
        for (const auto& v : verts) rel.push_back({v[0] - c[0], v[1] - c[1]});
        std::vector<size_t> idx(verts.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        detail::sort_angularly(idx, rel);
        Rat twice = 0;
        for (size_t i = 0; i < idx.size(); ++i) {
            const auto& u = verts[idx[i]];
            const auto& v = verts[idx[(i + 1) % idx.size()]];
            twice += u[0] * v[1] - u[1] * v[0];
        }
        return abs(twice) / 2;
    }

    const Point& apex = verts[0];
    Rat six_vol = 0;
    for (const auto& face : hull_faces(p, verts)) {
        Rat face_sum = 0;
        for (size_t i = 1; i + 1 < face.size(); ++i) {
            Point e1(3), e2(3), e3(3);
            for (int k = 0; k < 3; ++k) {
                e1[k] = verts[face[0]][k] - apex[k];
                e2[k] = verts[face[i]][k] - apex[k];
                e3[k] = verts[face[i + 1]][k] - apex[k];
            }
            face_sum += det3(e1, e2, e3);
        }
        six_vol += abs(face_sum);
    }
    return six_vol / 6;
}

// All integer shift vectors with entries in [-range, range], nearest first.
inline std::vector<std::array<long, 3>> shift_vectors(int range, int dim) {
    std::vector<std::array<long, 3>> out;
    if (dim == 2) {
        for (long i = -range; i <= range; ++i)
            for (long j = -range; j <= range; ++j) out.push_back({i, j, 0});
    } else {
        for (long i = -range; i <= range; ++i)
            for (long j = -range; j <= range; ++j)
                for (long k = -range; k <= range; ++k) out.push_back({i, j, k});
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        long na = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
        long nb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        if (na != nb) return na < nb;
        return a < b;
    });
    return out;
}

inline Point shift_to_point(const std::array<long, 3>& v, int dim) {
    Point t(dim);
    for (int i = 0; i < dim; ++i) t[i] = Rat(v[i]);
    return t;
}

struct BoundingBox {
    Point lo, hi;
};

inline BoundingBox bounding_box(const std::vector<Point>& verts) {
    BoundingBox bb{verts[0], verts[0]};
    for (const auto& v : verts)
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] < bb.lo[i]) bb.lo[i] = v[i];
            if (v[i] > bb.hi[i]) bb.hi[i] = v[i];
        }
    return bb;
}

inline bool boxes_overlap(const BoundingBox& a, const BoundingBox& b,
                          const Point& shift_b) {
    for (size_t i = 0; i < a.lo.size(); ++i) {
        if (b.hi[i] + shift_b[i] < a.lo[i]) return false;
        if (a.hi[i] < b.lo[i] + shift_b[i]) return false;
    }
    return true;
}

// P minus Q as a union of convex pieces: for face i of Q, the piece
// P cap {a_i.x >= b_i} cap {a_j.x <= b_j : j < i}. Lower-dimensional
// pieces are dropped (set difference up to measure zero).
inline std::vector<ConvexPolyhedron> subtract(const ConvexPolyhedron& p,
                                              const ConvexPolyhedron& q) {
    // Keeps only the constraints tight at some vertex; pieces otherwise
    // accumulate the whole ancestor constraint lists and vertex enumeration
    // degrades cubically.
    auto prune = [](ConvexPolyhedron piece,
                    const std::vector<Point>& verts) {
        std::vector<HalfSpace> kept;
        for (auto& h : piece.halfspaces) {
            bool tight = false;
            for (const auto& v : verts)
                if (dot(h.a, v) == h.b) { tight = true; break; }
            if (tight) kept.push_back(std::move(h));
        }
        piece.halfspaces = std::move(kept);
        return piece;
    };
    std::vector<ConvexPolyhedron> out;
    ConvexPolyhedron running = p;
    for (const auto& h : q.halfspaces) {
        ConvexPolyhedron piece = running;
        Point neg(h.a.size());
        for (size_t i = 0; i < neg.size(); ++i) neg[i] = -h.a[i];
        piece.halfspaces.push_back({neg, -h.b});
        auto verts = vertices(piece);
        if (affine_rank(verts) == piece.dim)
            out.push_back(prune(std::move(piece), verts));
        running.halfspaces.push_back(h);
        if (is_empty(running)) return out;
    }
    return out;
}

struct ContainmentResult {
    bool contained = false;
    std::array<long, 3> shift{0, 0, 0};
    std::string member;             // member label, or "union" for the fallback route
    std::optional<Point> witness;   // point of P not covered, when not contained
};

// Is P, as a torus set, contained in the region R? First tries to place
// P + v inside a single convex member; falls back to exact union
// containment by subtracting every member under every shift.
inline ContainmentResult contains_in_region(const ConvexPolyhedron& p,
                                            const Region& r,
                                            int shift_range = kDefaultShiftRange) {
    auto verts = vertices(p);
    if (verts.empty()) throw std::invalid_argument("empty polyhedron");
    auto shifts = shift_vectors(shift_range, p.dim);
    BoundingBox pbox = bounding_box(verts);

    struct MemberData {
        const RegionMember* m;
        BoundingBox box;
    };
    std::vector<MemberData> mdata;
    for (const auto& m : r.members) {
        auto mv = vertices(m.poly);
        if (!mv.empty()) mdata.push_back({&m, bounding_box(mv)});
    }

    for (const auto& v : shifts) {
        Point t = shift_to_point(v, p.dim);
        Point neg_t(t.size());
        for (size_t i = 0; i < t.size(); ++i) neg_t[i] = -t[i];
        for (const auto& md : mdata) {
            // P + v inside the member iff P inside member - v.
            if (!boxes_overlap(pbox, md.box, neg_t)) continue;
            bool inside = true;
            for (const auto& h : md.m->poly.halfspaces) {
                Rat slack = h.b - dot(h.a, t);
                for (const auto& x : verts) {
                    if (dot(h.a, x) > slack) { inside = false; break; }
                }
                if (!inside) break;
            }
            if (inside) return {true, v, md.m->label, std::nullopt};
        }
    }

    // Cheap non-containment witnesses: interior sample points of P that no
    // shifted member covers settle the question without exact subtraction.
    {
        Point c = centroid(verts);
        std::vector<Point> samples{c};
        for (const auto& x : verts) {
            samples.push_back(x);
            for (long den : {2L, 8L, 64L, 1024L}) {
                Rat w(den - 1, den);
                Point s(c.size());
                for (size_t i = 0; i < c.size(); ++i)
                    s[i] = w * x[i] + (1 - w) * c[i];
                samples.push_back(std::move(s));
            }
        }
        for (const auto& s : samples) {
            bool covered = false;
            for (const auto& v : shifts) {
                Point shifted = s;
                for (size_t i = 0; i < shifted.size(); ++i) shifted[i] += v[i];
                for (const auto& md : mdata)
                    if (satisfies(md.m->poly, shifted)) { covered = true; break; }
                if (covered) break;
            }
            if (!covered) return {false, {0, 0, 0}, "", s};
        }
    }

    // Union fallback: remove member - v for every member and shift. Pieces
    // that fit inside one shifted member are discarded on the spot.
    auto covered_by_one = [&](const ConvexPolyhedron& piece) {
        auto pv = vertices(piece);
        if (pv.empty()) return true;
        BoundingBox box = bounding_box(pv);
        for (const auto& v : shifts) {
            Point neg_t = shift_to_point(v, p.dim);
            for (auto& c : neg_t) c = -c;
            for (const auto& md : mdata) {
                if (!boxes_overlap(box, md.box, neg_t)) continue;
                bool inside = true;
                for (const auto& h : md.m->poly.halfspaces) {
                    Rat slack = h.b - dot(h.a, shift_to_point(v, p.dim));
                    for (const auto& x : pv)
                        if (dot(h.a, x) > slack) { inside = false; break; }
                    if (!inside) break;
                }
                if (inside) return true;
            }
        }
        return false;
    };
    std::vector<ConvexPolyhedron> pieces{p};
    bool any_overlap = false;
    for (const auto& md : mdata) {
        const auto& m = *md.m;
        BoundingBox mbox = md.box;
        for (const auto& v : shifts) {
            Point t = shift_to_point(v, p.dim);
            Point neg_t(t.size());
            for (size_t i = 0; i < t.size(); ++i) neg_t[i] = -t[i];
            if (!boxes_overlap(pbox, mbox, neg_t)) continue;
            ConvexPolyhedron shifted = translate(m.poly, neg_t);
            std::vector<ConvexPolyhedron> next;
            for (const auto& piece : pieces) {
                if (is_empty(intersect(piece, shifted))) {
                    next.push_back(piece);
                    continue;
                }
                any_overlap = true;
                for (auto& rest : subtract(piece, shifted))
                    if (!covered_by_one(rest)) next.push_back(std::move(rest));
            }
            pieces = std::move(next);
            if (pieces.empty()) return {true, {0, 0, 0}, "union", std::nullopt};
        }
    }
    if (!any_overlap) throw std::runtime_error("shift range exhausted");
    // Interior witness: centroid of a remaining piece strictly avoids every
    // member under every shift in range.
    return {false, {0, 0, 0}, "", centroid(vertices(pieces.front()))};
}

// Disjointness of torus regions up to measure zero: every pairwise member
// intersection under every shift in range is lower-dimensional.
inline bool regions_disjoint(const Region& r1, const Region& r2,
                             int shift_range = kDefaultShiftRange) {
    for (const auto& m1 : r1.members) {
        auto v1 = vertices(m1.poly);
        if (v1.empty()) continue;
        BoundingBox b1 = bounding_box(v1);
        int dim = m1.poly.dim;
        auto shifts = shift_vectors(shift_range, dim);
        for (const auto& m2 : r2.members) {
            auto v2 = vertices(m2.poly);
            if (v2.empty()) continue;
            BoundingBox b2 = bounding_box(v2);
            for (const auto& v : shifts) {
                Point t = shift_to_point(v, dim);
                if (!boxes_overlap(b1, b2, t)) continue;
                auto inter = intersect(m1.poly, translate(m2.poly, t));
                if (affine_rank(vertices(inter)) == dim) return false;
            }
        }
    }
    return true;
}

// Vertex set translated so the lexicographically smallest vertex lands in
// [0,1)^d: two polytopes are integer translates of each other iff their
// canonical forms coincide.
inline std::vector<Point> canonical_vertex_form(const ConvexPolyhedron& p) {
    auto verts = vertices(p);  // sorted, so verts[0] is the lex minimum
    if (verts.empty()) return verts;
    Point t(verts[0].size());
    for (size_t i = 0; i < t.size(); ++i) t[i] = Rat(rat_floor(verts[0][i]));
    for (auto& v : verts)
        for (size_t i = 0; i < t.size(); ++i) v[i] -= t[i];
    return verts;
}

inline bool point_in_region(const Point& x, const Region& r,
                            int shift_range = kDefaultShiftRange) {
    for (const auto& m : r.members) {
        auto shifts = shift_vectors(shift_range, m.poly.dim);
        for (const auto& v : shifts) {
            Point shifted = x;
            for (size_t i = 0; i < shifted.size(); ++i) shifted[i] += v[i];
            if (satisfies(m.poly, shifted)) return true;
        }
    }
    return false;
}

inline bool region_equal_mod_lattice(const Region& r1, const Region& r2,
                                     int shift_range = kDefaultShiftRange) {
    // Fast accept: member polytopes pair up as exact integer translates.
    if (r1.members.size() == r2.members.size()) {
        std::vector<std::vector<Point>> forms2;
        for (const auto& m : r2.members)
            forms2.push_back(canonical_vertex_form(m.poly));
        std::vector<bool> used(forms2.size(), false);
        bool matched = true;
        for (const auto& m : r1.members) {
            auto f = canonical_vertex_form(m.poly);
            bool found = false;
            for (size_t i = 0; i < forms2.size(); ++i) {
                if (used[i] || forms2[i] != f) continue;
                used[i] = true;
                found = true;
                break;
            }
            if (!found) { matched = false; break; }
        }
        if (matched) return true;
    }
    // Fast reject: every member centroid must be covered by the other region.
    for (const auto& m : r1.members) {
        auto verts = vertices(m.poly);
        if (!verts.empty() && !point_in_region(centroid(verts), r2, shift_range))
            return false;
    }
    for (const auto& m : r2.members) {
        auto verts = vertices(m.poly);
        if (!verts.empty() && !point_in_region(centroid(verts), r1, shift_range))
            return false;
    }
    auto one_way = [&](const Region& a, const Region& b) {
        for (const auto& m : a.members) {
            try {
                if (!contains_in_region(m.poly, b, shift_range).contained)
                    return false;
            } catch (const std::runtime_error&) {
                return false;  // no shift brings the member near b at all
            }
        }
        return true;
    };
    return one_way(r1, r2) && one_way(r2, r1);
}

}  // namespace quadmap
