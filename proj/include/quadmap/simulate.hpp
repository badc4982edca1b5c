#pragma once

// Floating-point orbit simulation: region-occupancy statistics, epsilon
// sweeps with CSV output, and the invariant 2D face dynamics (numeric orbits
// plus exact polygon invariance checks).

#include "quadmap/dynamics.hpp"
#include "quadmap/geometry.hpp"
#include "quadmap/rational.hpp"
#include "quadmap/symmetry.hpp"
#include "quadmap/verify.hpp"

#include <array>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadmap {

struct SimulationConfig {
    double eps = 0.41;
    long steps = 100000;
    long burn_in = 10000;
    int orbit_count = 100;
    std::uint64_t rng_seed = 42;
    double singularity_margin = 1e-12;
    double membership_tol = 1e-9;
    int resample_budget = 100;

    void validate() const {
        if (steps <= burn_in || burn_in < 0)
            throw std::invalid_argument("need steps > burn_in >= 0");
        if (singularity_margin <= 0 || membership_tol <= 0)
            throw std::invalid_argument("tolerances must be positive");
    }
};

// A region converted to doubles, with the integer shifts under which each
// member can meet the unit cube precomputed.
struct NumericRegion {
    struct Member {
        std::string label;
        std::vector<std::pair<std::array<double, 3>, double>> rows;  // a.x <= b
        std::vector<std::array<double, 3>> shifts;
    };
    std::string label;
    std::vector<Member> members;

    static NumericRegion from(const Region& r) {
        NumericRegion out;
        out.label = r.label;
        for (const auto& m : r.members) {
            Member nm;
            nm.label = m.label;
            for (const auto& h : m.poly.halfspaces)
                nm.rows.push_back({{to_double(h.a[0]), to_double(h.a[1]),
                                    to_double(h.a[2])},
                                   to_double(h.b)});
            auto verts = vertices(m.poly);
            if (verts.empty()) continue;
            BoundingBox bb = bounding_box(verts);
            for (const auto& v : shift_vectors(2, 3)) {
                bool overlap = true;
                for (int i = 0; i < 3; ++i) {
                    double lo = to_double(bb.lo[i]) + v[i];
                    double hi = to_double(bb.hi[i]) + v[i];
                    if (hi < -1e-9 || lo > 1 + 1e-9) overlap = false;
                }
                if (overlap)
                    nm.shifts.push_back({double(v[0]), double(v[1]),
                                         double(v[2])});
            }
            out.members.push_back(std::move(nm));
        }
        return out;
    }

    bool contains(const std::array<double, 3>& x, double tol) const {
        for (const auto& m : members)
            for (const auto& s : m.shifts) {
                bool inside = true;
                for (const auto& [a, b] : m.rows) {
                    double lhs = a[0] * (x[0] - s[0]) + a[1] * (x[1] - s[1]) +
                                 a[2] * (x[2] - s[2]);
                    if (lhs > b + tol) { inside = false; break; }
                }
                if (inside) return true;
            }
        return false;
    }
};

struct OccupancyRecord {
    std::array<double, 3> start{};
    std::map<std::string, double> fraction;  // tracked label -> tail fraction
    std::string home;                        // region containing the start
    std::string final_label;
    long escape_step = -1;  // first post-burn-in step outside `home`, -1 if none
};

// Index of the first tracked region containing x, preferring `hint` (orbits
// tend to stay where they were last seen).
inline int locate(const std::array<double, 3>& x,
                  const std::vector<NumericRegion>& regions, double tol,
                  int hint) {
    if (hint >= 0 && hint < static_cast<int>(regions.size()) &&
        regions[hint].contains(x, tol))
        return hint;
    for (size_t i = 0; i < regions.size(); ++i) {
        if (static_cast<int>(i) == hint) continue;
        if (regions[i].contains(x, tol)) return static_cast<int>(i);
    }
    return -1;
}

// Runs one orbit. Returns nullopt when an iterate lands within the
// singularity margin (the caller resamples the start).
inline std::optional<OccupancyRecord>
simulate_orbit(const std::array<double, 3>& start, const SimulationConfig& cfg,
               const std::vector<NumericRegion>& regions) {
    cfg.validate();
    std::array<double, 3> x = start;
    OccupancyRecord rec;
    rec.start = start;
    int home = locate(x, regions, cfg.membership_tol, -1);
    rec.home = home < 0 ? "other" : regions[home].label;

    std::map<std::string, long> counts;
    for (const auto& r : regions) counts[r.label] = 0;
    counts["other"] = 0;

    int hint = home;
    long tail = 0;
    int last = -1;
    for (long step = 0; step < cfg.steps; ++step) {
        if (!g3_step_table_num(x, cfg.eps, cfg.singularity_margin))
            return std::nullopt;
        if (step < cfg.burn_in) continue;
        int where = locate(x, regions, cfg.membership_tol, hint);
        hint = where;
        last = where;
        ++counts[where < 0 ? "other" : regions[where].label];
        ++tail;
        if (rec.escape_step < 0 && home >= 0 && where != home)
            rec.escape_step = step;
    }
    for (const auto& [label, n] : counts)
        rec.fraction[label] = tail > 0 ? double(n) / double(tail) : 0.0;
    rec.final_label = last < 0 ? "other" : regions[last].label;
    return rec;
}

// Deterministic per-orbit RNG stream: splitmix64 of seed and orbit index.
inline std::mt19937_64 orbit_rng(std::uint64_t seed, int orbit) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (std::uint64_t(orbit) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return std::mt19937_64(z ^ (z >> 31));
}

inline std::array<double, 3> random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {u(rng), u(rng), u(rng)};
}

// Rejection-sampled start inside a numeric region.
inline std::optional<std::array<double, 3>>
random_point_in(const NumericRegion& region, std::mt19937_64& rng, double tol,
                int attempts = 100000) {
    for (int i = 0; i < attempts; ++i) {
        auto x = random_point(rng);
        if (region.contains(x, tol)) return x;
    }
    return std::nullopt;
}

// The standard tracked regions: A, its five asymmetric images (as one
// pooled region), and S.
inline std::vector<NumericRegion> tracked_regions(const Rat& eps) {
    Region a = build_region(RegionName::A, eps);
    Region s = build_region(RegionName::S, eps);
    Region images{"A_images", {}};
    for (int k : {0, 1, 2, 5, 6}) {
        Region img = apply_to_region(generator(k), a);
        for (auto& m : img.members) images.members.push_back(std::move(m));
    }
    return {NumericRegion::from(a), NumericRegion::from(images),
            NumericRegion::from(s)};
}

struct SimulationRun {
    double eps;
    std::vector<OccupancyRecord> orbits;
};

// orbit_count orbits from random starts (optionally restricted to a start
// region), with singular orbits resampled.
inline SimulationRun run_simulation(const SimulationConfig& cfg,
                                    const std::vector<NumericRegion>& regions,
                                    const NumericRegion* start_in = nullptr) {
    cfg.validate();
    SimulationRun run;
    run.eps = cfg.eps;
    for (int orbit = 0; orbit < cfg.orbit_count; ++orbit) {
        auto rng = orbit_rng(cfg.rng_seed, orbit);
        std::optional<OccupancyRecord> rec;
        int tries = 0;
        while (!rec) {
            if (++tries > cfg.resample_budget)
                throw std::runtime_error("resample budget exceeded");
            std::array<double, 3> x;
            if (start_in) {
                auto inside = random_point_in(*start_in, rng, cfg.membership_tol);
                if (!inside)
                    throw std::runtime_error("start region rejection sampling failed");
                x = *inside;
            } else {
                x = random_point(rng);
            }
            rec = simulate_orbit(x, cfg, regions);
        }
        run.orbits.push_back(std::move(*rec));
    }
    return run;
}

inline std::string occupancy_csv_header() {
    return "eps,orbit_id,start_p,start_q,start_r,frac_A,frac_A_images,"
           "frac_S,frac_other,escape_step,final_label";
}

inline std::string occupancy_csv_rows(const SimulationRun& run) {
    std::ostringstream os;
    os << std::setprecision(17);
    for (size_t i = 0; i < run.orbits.size(); ++i) {
        const auto& o = run.orbits[i];
        auto frac = [&](const char* k) {
            auto it = o.fraction.find(k);
            return it == o.fraction.end() ? 0.0 : it->second;
        };
        os << run.eps << "," << i << "," << o.start[0] << "," << o.start[1]
           << "," << o.start[2] << "," << frac("A") << "," << frac("A_images")
           << "," << frac("S") << "," << frac("other") << "," << o.escape_step
           << "," << o.final_label << "\n";
    }
    return os.str();
}

// One CSV table over an epsilon grid; deterministic for a fixed seed.
inline std::string scan_eps(const std::vector<double>& grid,
                            SimulationConfig cfg) {
    std::string out = occupancy_csv_header() + "\n";
    for (double e : grid) {
        cfg.eps = e;
        // Track against the regions built at the nearest exact rational.
        Rat re(static_cast<long long>(e * 1000000.0 + 0.5), 1000000);
        auto regions = tracked_regions(re);
        out += occupancy_csv_rows(run_simulation(cfg, regions));
    }
    return out;
}

// ---- invariant faces ----

enum class Face { P0Face, Q0Face, R0Face };  // p = 0, q = 0, r = 0

inline int face_coordinate(Face f) {
    switch (f) {
        case Face::P0Face: return 0;
        case Face::Q0Face: return 1;
        case Face::R0Face: return 2;
    }
    throw std::invalid_argument("unknown face");
}

inline Face face_from_string(const std::string& s) {
    if (s == "p0") return Face::P0Face;
    if (s == "q0") return Face::Q0Face;
    if (s == "r0") return Face::R0Face;
    throw std::invalid_argument("face must be one of p0, q0, r0");
}

struct FaceOrbitStats {
    long accepted_steps = 0;
    int resamples = 0;
    bool fixed_coordinate_exact = true;  // pinned coordinate stayed 0.0
    std::vector<std::array<double, 2>> hull;  // hull of the orbit tail
    double hull_area = 0;
};

namespace detail {

inline double cross2(const std::array<double, 2>& o,
                     const std::array<double, 2>& a,
                     const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline std::vector<std::array<double, 2>>
convex_hull_2d(std::vector<std::array<double, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<std::array<double, 2>> hull(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace detail

// Numeric orbit restricted to an invariant face; the pinned coordinate is
// asserted to remain exactly 0.
inline FaceOrbitStats face_dynamics(Face face, const SimulationConfig& cfg) {
    cfg.validate();
    FaceOrbitStats stats;
    int fc = face_coordinate(face);
    int u = (fc + 1) % 3, v = (fc + 2) % 3;
    auto rng = orbit_rng(cfg.rng_seed, 0);
    std::vector<std::array<double, 2>> tail;
    std::array<double, 3> x{};
    auto resample = [&] {
        x = random_point(rng);
        x[fc] = 0.0;
        ++stats.resamples;
    };
    resample();
    --stats.resamples;
    for (long step = 0; step < cfg.steps; ++step) {
        if (!g3_step_table_num(x, cfg.eps, cfg.singularity_margin)) {
            if (stats.resamples >= cfg.resample_budget)
                throw std::runtime_error("resample budget exceeded");
            resample();
            continue;
        }
        if (x[fc] != 0.0) stats.fixed_coordinate_exact = false;
        ++stats.accepted_steps;
        if (step >= cfg.burn_in) tail.push_back({x[u], x[v]});
    }
    stats.hull = detail::convex_hull_2d(std::move(tail));
    double area2 = 0;
    for (size_t i = 0; i < stats.hull.size(); ++i) {
        const auto& a = stats.hull[i];
        const auto& b = stats.hull[(i + 1) % stats.hull.size()];
        area2 += a[0] * b[1] - a[1] * b[0];
    }
    stats.hull_area = std::abs(area2) / 2;
    return stats;
}

struct FaceInvarianceReport {
    bool holds = false;
    std::vector<std::string> violations;  // cell descriptions
    int cells = 0;
};

namespace detail {

// Splits 2D polygons along the restricted singular lines of the face.
inline std::vector<ConvexPolyhedron>
split_by_face_singularities(Face face, const ConvexPolyhedron& poly) {
    std::vector<std::pair<Point, Rat>> cuts;
    // Face coordinates (u, v); singular lines u = 1/2, v = 1/2 and
    // u + v = 1/2, 3/2 (the surviving functionals of the 3D map).
    cuts.push_back({{Rat(1), Rat(0)}, Rat(1, 2)});
    cuts.push_back({{Rat(0), Rat(1)}, Rat(1, 2)});
    cuts.push_back({{Rat(1), Rat(1)}, Rat(1, 2)});
    cuts.push_back({{Rat(1), Rat(1)}, Rat(3, 2)});
    (void)face;  // the cut pattern is the same for all three faces
    std::vector<ConvexPolyhedron> cells{poly};
    for (const auto& [a, b] : cuts) {
        std::vector<ConvexPolyhedron> next;
        for (const auto& c : cells) {
            ConvexPolyhedron below = c, above = c;
            below.halfspaces.push_back({a, b});
            above.halfspaces.push_back({{-a[0], -a[1]}, -b});
            if (is_full_dim(below)) next.push_back(std::move(below));
            if (is_full_dim(above)) next.push_back(std::move(above));
        }
        cells = std::move(next);
    }
    return cells;
}

}  // namespace detail

// Exact invariance of a 2D region on an invariant face: each singularity
// cell is mapped by the face-restricted affine branch (translation read off
// the closed formula at the cell centroid) and checked for containment.
inline FaceInvarianceReport face_region_invariant(Face face,
                                                  const Region& region2d,
                                                  const Rat& eps) {
    FaceInvarianceReport rep;
    rep.holds = true;
    int fc = face_coordinate(face);
    int u = (fc + 1) % 3, v = (fc + 2) % 3;
    Rat s = 2 * (1 - eps);
    for (const auto& m : region2d.members) {
        for (const auto& cell : detail::split_by_face_singularities(face, m.poly)) {
            ++rep.cells;
            Point c2 = centroid(vertices(cell));
            TorusPoint3 c3{};
            c3[fc] = 0;
            c3[u] = c2[0];
            c3[v] = c2[1];
            TorusPoint3 lifted = g3_formula_lifted(c3, eps);
            if (lifted[fc] != 0) {
                rep.holds = false;
                rep.violations.push_back(m.label + ": face not preserved");
                continue;
            }
            Point t{lifted[u] - s * c3[u], lifted[v] - s * c3[v]};
            ConvexPolyhedron image = scalar_affine_image(cell, s, t);
            auto res = contains_in_region(image, region2d);
            if (!res.contained) {
                rep.holds = false;
                rep.violations.push_back(m.label + ": cell image escapes");
            }
        }
    }
    return rep;
}

}  // namespace quadmap
