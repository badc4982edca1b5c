#pragma once

// Candidate invariant regions and the verification pipeline: exact builders
// for P0, P1, P2 and the unions A (asymmetric, 6 members) and S (symmetric,
// 12 members), branch-piece invariance checking with symmetry reduction,
// intersection patterns, symmetry profiles, separating-plane certificates,
// and the critical coupling values.

#include "quadmap/dynamics.hpp"
#include "quadmap/geometry.hpp"
#include "quadmap/lorenz.hpp"
#include "quadmap/rational.hpp"
#include "quadmap/symmetry.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadmap {

enum class RegionName { P0, P1, P2, A, S };

inline std::string region_name_string(RegionName n) {
    switch (n) {
        case RegionName::P0: return "P0";
        case RegionName::P1: return "P1";
        case RegionName::P2: return "P2";
        case RegionName::A: return "A";
        case RegionName::S: return "S";
    }
    throw std::invalid_argument("unknown region name");
}

inline RegionName region_name_from_string(const std::string& s) {
    if (s == "P0") return RegionName::P0;
    if (s == "P1") return RegionName::P1;
    if (s == "P2") return RegionName::P2;
    if (s == "A") return RegionName::A;
    if (s == "S") return RegionName::S;
    throw std::invalid_argument("unknown region name '" + s + "'");
}

namespace detail {

inline void check_eps_range(const Rat& eps) {
    if (eps <= 0 || 2 * eps >= 1)
        throw std::invalid_argument("coupling parameter must lie in (0, 1/2)");
}

inline HalfSpace row_le(Point a, Rat b) { return {std::move(a), std::move(b)}; }
inline HalfSpace row_ge(const Point& a, const Rat& b) {
    return {{-a[0], -a[1], -a[2]}, -b};
}

}  // namespace detail

// The closures of the strict defining inequalities are used throughout; the
// invariance statements are insensitive to the boundary.
inline ConvexPolyhedron build_p1(const Rat& eps) {
    detail::check_eps_range(eps);
    Rat ps = p_star(eps);
    using detail::row_ge;
    using detail::row_le;
    return {3,
            {row_ge({0, 1, 0}, eps / 2),
             row_ge({0, 0, 1}, 0),
             row_ge({1, 1, 0}, 1 - ps),
             row_le({0, 1, 1}, ps),
             row_le({1, 1, 1}, 1 - eps / 2)}};
}

inline ConvexPolyhedron build_p2(const Rat& eps) {
    detail::check_eps_range(eps);
    Rat ps = p_star(eps);
    using detail::row_ge;
    using detail::row_le;
    return {3,
            {row_le({1, 0, 0}, 1),
             row_ge({0, 0, 1}, 0),
             row_ge({1, 1, 0}, 1 + ps),
             row_le({0, 1, 1}, 1 - ps)}};
}

inline ConvexPolyhedron build_p0(const Rat& eps) {
    detail::check_eps_range(eps);
    LorenzMap l(eps);
    Rat a = l.domain_lo(), b = l.domain_hi();
    Rat la = l(a), lb = l(b), llb = l.iterate(b, 2);
    using detail::row_ge;
    using detail::row_le;
    return {3,
            {row_ge({1, 0, 0}, la), row_le({1, 0, 0}, lb),
             row_ge({0, 1, 0}, a), row_le({0, 1, 0}, llb),
             row_ge({0, 0, 1}, la), row_le({0, 0, 1}, lb),
             row_ge({1, 1, 1}, 1 + a), row_le({1, 1, 1}, 1 + llb)}};
}

namespace detail {

// Looks up a group element by generator word and applies it to a polyhedron;
// labels the result "word(base)".
inline RegionMember symmetric_member(const std::string& word,
                                     const ConvexPolyhedron& poly,
                                     const std::string& base) {
    AffineSymmetry s = identity_symmetry();
    for (size_t i = 0; i + 1 < word.size(); i += 2) {
        int k = word[i + 1] - '0';
        s = compose(s, generator(k));
    }
    return {word.empty() ? base : word + "(" + base + ")",
            apply_to_poly(s, poly)};
}

}  // namespace detail

struct RegionFamily {
    RegionName name;
    std::vector<std::string> generating_members;
    std::vector<int> stabilizer_generators;  // indices into generators()
};

inline RegionFamily region_family(RegionName name) {
    switch (name) {
        case RegionName::P1: return {name, {"P1"}, {}};
        case RegionName::P2: return {name, {"P2"}, {}};
        case RegionName::P0: return {name, {"P0"}, {}};
        case RegionName::A: return {name, {"P1", "P2"}, {3, 4}};
        case RegionName::S: return {name, {"P0"}, {0, 1, 2, 3, 4, 5, 6}};
    }
    throw std::invalid_argument("unknown region name");
}

inline Region build_region(RegionName name, const Rat& eps) {
    detail::check_eps_range(eps);
    switch (name) {
        case RegionName::P1:
            return {"P1", {{"P1", build_p1(eps)}}};
        case RegionName::P2:
            return {"P2", {{"P2", build_p2(eps)}}};
        case RegionName::P0:
            return {"P0", {{"P0", build_p0(eps)}}};
        case RegionName::A: {
            ConvexPolyhedron p1 = build_p1(eps), p2 = build_p2(eps);
            Region r{"A", {}};
            r.members.push_back({"P1", p1});
            r.members.push_back({"P2", p2});
            r.members.push_back(detail::symmetric_member("S3", p1, "P1"));
            r.members.push_back(detail::symmetric_member("S4", p1, "P1"));
            r.members.push_back(detail::symmetric_member("S3S4", p1, "P1"));
            r.members.push_back(detail::symmetric_member("S3", p2, "P2"));
            return r;
        }
        case RegionName::S: {
            ConvexPolyhedron p0 = build_p0(eps);
            Region r{"S", {}};
            r.members.push_back({"P0", p0});
            for (const char* w : {"S0", "S1", "S2", "S3", "S4", "S5", "S0S1",
                                  "S2S1", "S3S1", "S4S1", "S5S1"})
                r.members.push_back(detail::symmetric_member(w, p0, "P0"));
            return r;
        }
    }
    throw std::invalid_argument("unknown region name");
}

// The polyhedral presentation of S only matches its torus closure for
// eps >= 1 - sqrt(2)/2; below that the builder output is formal.
inline bool representation_faithful(RegionName name, const Rat& eps) {
    if (name == RegionName::S || name == RegionName::P0)
        return at_or_above_eps1(eps);
    return true;
}

// The six disjoint connected components of S, as pairs of member labels.
inline std::vector<std::array<std::string, 2>> s_component_pairs() {
    return {{"P0", "S0S1(P0)"}, {"S0(P0)", "S1(P0)"}, {"S2(P0)", "S5S1(P0)"},
            {"S3(P0)", "S4S1(P0)"}, {"S4(P0)", "S3S1(P0)"},
            {"S5(P0)", "S2S1(P0)"}};
}

struct PieceRecord {
    std::string member;
    std::string branch;
    std::string target;        // member of the region containing the image
    std::array<long, 3> shift;
};

struct ViolationRecord {
    std::string member;
    std::string branch;
    std::string failed_halfspace;  // nearest-miss constraint, pretty-printed
    Point witness;
};

struct InvarianceReport {
    Rat eps;
    std::string region;
    bool holds = false;
    bool reduction_used = false;
    bool reduction_valid = false;  // stabilizer maps member set onto itself
    bool faithful = true;          // polyhedral presentation valid on the torus
    std::vector<PieceRecord> pieces;
    std::vector<ViolationRecord> violations;
};

namespace detail {

inline std::string functional_string(const Point& a) {
    const char* names[3] = {"p", "q", "r"};
    std::string s;
    for (int i = 0; i < 3; ++i) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += a[i] > 0 ? "+" : "-";
        else if (a[i] < 0) s += "-";
        Rat c = abs(a[i]);
        if (c != 1) s += rat_to_string(c) + "*";
        s += names[i];
    }
    return s.empty() ? "0" : s;
}

inline std::string halfspace_string(const HalfSpace& h) {
    bool all_nonpos = true;
    for (const auto& c : h.a)
        if (c > 0) all_nonpos = false;
    if (all_nonpos) {
        HalfSpace flipped{{-h.a[0], -h.a[1], -h.a[2]}, -h.b};
        return functional_string(flipped.a) + " >= " + rat_to_string(flipped.b);
    }
    return functional_string(h.a) + " <= " + rat_to_string(h.b);
}

// For a failed containment, the constraint of the nearest-miss member that
// the witness point violates.
inline std::string nearest_miss_constraint(const Point& witness,
                                           const Region& region,
                                           int shift_range) {
    const HalfSpace* best = nullptr;
    int best_violations = -1;
    auto shifts = shift_vectors(shift_range, 3);
    for (const auto& m : region.members) {
        for (const auto& v : shifts) {
            int violations = 0;
            const HalfSpace* first = nullptr;
            for (const auto& h : m.poly.halfspaces) {
                Rat lhs = 0;
                for (int i = 0; i < 3; ++i) lhs += h.a[i] * (witness[i] + v[i]);
                if (lhs > h.b) {
                    ++violations;
                    if (!first) first = &h;
                }
            }
            if (violations > 0 &&
                (best_violations < 0 || violations < best_violations)) {
                best_violations = violations;
                best = first;
            }
        }
    }
    return best ? halfspace_string(*best) : "";
}

// All torus pieces of `member` inside branch domains, with the lattice shift
// normalized away: returns lifted pieces living in the branch's own chart.
struct BranchPiece {
    std::string branch;
    const Branch* def;
    ConvexPolyhedron piece;  // subset of def->domain
};

inline std::vector<BranchPiece> branch_pieces(const ConvexPolyhedron& member) {
    std::vector<BranchPiece> out;
    BoundingBox mb = bounding_box(vertices(member));
    for (const auto& b : branch_table()) {
        BoundingBox bb = bounding_box(vertices(b.domain));
        for (const auto& v : shift_vectors(1, 3)) {
            Point t = shift_to_point(v, 3);
            if (!boxes_overlap(mb, bb, t)) continue;
            ConvexPolyhedron cut = intersect(member, translate(b.domain, t));
            if (!is_full_dim(cut)) continue;
            Point back(3);
            for (int i = 0; i < 3; ++i) back[i] = -t[i];
            out.push_back({b.label, &b, translate(cut, back)});
        }
    }
    return out;
}

}  // namespace detail

// Verifies G(R) is contained in R piece by piece. With reduction, only the
// generating members are pushed forward; the reduction is sound when the
// stabilizer generators fix R and their group covers every member, which is
// checked and reported.
inline InvarianceReport check_invariance(RegionName name, const Rat& eps,
                                         bool use_reduction = true) {
    Region region = build_region(name, eps);
    RegionFamily family = region_family(name);
    InvarianceReport rep;
    rep.eps = eps;
    rep.region = region.label;
    rep.faithful = representation_faithful(name, eps);

    std::vector<std::string> to_check;
    if (use_reduction && !family.stabilizer_generators.empty()) {
        rep.reduction_used = true;
        rep.reduction_valid = true;
        // Each stabilizer generator must fix the region as a torus set.
        std::vector<AffineSymmetry> stab_gens;
        for (int k : family.stabilizer_generators) {
            stab_gens.push_back(generator(k));
            Region img = apply_to_region(generator(k), region);
            if (!region_equal_mod_lattice(img, region)) rep.reduction_valid = false;
        }
        // Every member must be a stabilizer image of a generating member.
        // Stabilizer orbits are computed once, as canonical vertex forms.
        if (rep.reduction_valid) {
            SymmetryGroup stab = generate_group(stab_gens);
            std::vector<std::vector<Point>> orbit_forms;
            for (const auto& gname : family.generating_members) {
                const RegionMember* gen = nullptr;
                for (const auto& g : region.members)
                    if (g.label == gname) gen = &g;
                for (const auto& e : stab.elements)
                    orbit_forms.push_back(
                        canonical_vertex_form(apply_to_poly(e, gen->poly)));
            }
            for (const auto& m : region.members) {
                auto form = canonical_vertex_form(m.poly);
                bool covered = false;
                for (const auto& f : orbit_forms)
                    if (f == form) { covered = true; break; }
                if (!covered) rep.reduction_valid = false;
            }
        }
        to_check = family.generating_members;
        if (!rep.reduction_valid)
            for (const auto& m : region.members) to_check.push_back(m.label);
    } else {
        for (const auto& m : region.members) to_check.push_back(m.label);
    }
    std::sort(to_check.begin(), to_check.end());
    to_check.erase(std::unique(to_check.begin(), to_check.end()),
                   to_check.end());

    for (const auto& label : to_check) {
        const RegionMember* m = nullptr;
        for (const auto& cand : region.members)
            if (cand.label == label) m = &cand;
        for (const auto& bp : detail::branch_pieces(m->poly)) {
            ConvexPolyhedron image = image_of_branch_piece(bp.piece, *bp.def, eps);
            ContainmentResult res = contains_in_region(image, region);
            if (res.contained) {
                rep.pieces.push_back({label, bp.branch, res.member, res.shift});
            } else {
                Point w = res.witness.value_or(Point(3, Rat(0)));
                rep.violations.push_back(
                    {label, bp.branch,
                     detail::nearest_miss_constraint(w, region,
                                                     kDefaultShiftRange),
                     w});
            }
        }
    }
    auto order = [](const auto& x, const auto& y) {
        return std::tie(x.member, x.branch) < std::tie(y.member, y.branch);
    };
    std::sort(rep.pieces.begin(), rep.pieces.end(), order);
    std::sort(rep.violations.begin(), rep.violations.end(), order);
    rep.holds = rep.violations.empty();
    return rep;
}

inline std::map<std::string, std::vector<std::string>>
check_intersection_pattern(RegionName name, const Rat& eps) {
    Region region = build_region(name, eps);
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& m : region.members) {
        std::vector<std::string> labels;
        for (const auto& bp : detail::branch_pieces(m.poly))
            labels.push_back(bp.branch);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        out[m.label] = std::move(labels);
    }
    return out;
}

enum class SymmetryVerdict { Equal, Disjoint, Neither };

inline std::string verdict_string(SymmetryVerdict v) {
    switch (v) {
        case SymmetryVerdict::Equal: return "equal";
        case SymmetryVerdict::Disjoint: return "disjoint";
        case SymmetryVerdict::Neither: return "neither";
    }
    throw std::invalid_argument("unknown verdict");
}

inline std::map<std::string, SymmetryVerdict>
check_symmetry_profile(const Region& region) {
    std::map<std::string, SymmetryVerdict> out;
    for (const auto& s : generators()) {
        Region img = apply_to_region(s, region);
        if (region_equal_mod_lattice(img, region))
            out[s.name] = SymmetryVerdict::Equal;
        else if (regions_disjoint(img, region))
            out[s.name] = SymmetryVerdict::Disjoint;
        else
            out[s.name] = SymmetryVerdict::Neither;
    }
    return out;
}

inline std::map<std::string, SymmetryVerdict>
check_symmetry_profile(RegionName name, const Rat& eps) {
    return check_symmetry_profile(build_region(name, eps));
}

struct SeparationCertificate {
    std::string description;
    Point functional;  // integer coefficients of p, q, r
    Rat threshold;
    Region lower;  // max of functional over lower <= threshold
    Region upper;  // threshold <= min over upper
};

struct CertificateResult {
    std::string description;
    bool holds = false;
    Rat lower_max;
    Rat upper_min;
};

inline CertificateResult verify_certificate(const SeparationCertificate& c) {
    CertificateResult res;
    res.description = c.description;
    bool first_lo = true, first_hi = true;
    for (const auto& m : c.lower.members) {
        Rat v = optimize(m.poly, c.functional, Direction::Max);
        if (first_lo || v > res.lower_max) res.lower_max = v;
        first_lo = false;
    }
    for (const auto& m : c.upper.members) {
        Rat v = optimize(m.poly, c.functional, Direction::Min);
        if (first_hi || v < res.upper_min) res.upper_min = v;
        first_hi = false;
    }
    res.holds = !first_lo && !first_hi && res.lower_max <= c.threshold &&
                c.threshold <= res.upper_min;
    return res;
}

// The six separating-plane certificates shielding A from its asymmetric
// images: r-p = 1-2p* against the central images, p+q+r = 1-p* and
// q+r = 1+p* against two S1-side images, and the pair p+r = 2p*,
// p+q+r = 1 against the four S1-images of P1.
inline std::vector<SeparationCertificate> asymmetry_certificates(const Rat& eps) {
    detail::check_eps_range(eps);
    Rat ps = p_star(eps);
    Region a = build_region(RegionName::A, eps);
    ConvexPolyhedron p1 = build_p1(eps), p2 = build_p2(eps);
    using detail::symmetric_member;

    Region a_without_p1{"A minus P1", {}};
    for (const auto& m : a.members)
        if (m.label != "P1") a_without_p1.members.push_back(m);
    Region p1_only{"P1", {{"P1", p1}}};
    Region s1_images_of_p1{"S1-images of P1",
                           {symmetric_member("S1", p1, "P1"),
                            symmetric_member("S1S3", p1, "P1"),
                            symmetric_member("S1S4", p1, "P1"),
                            symmetric_member("S1S3S4", p1, "P1")}};

    std::vector<SeparationCertificate> certs;
    certs.push_back({"r-p = 1-2p* separates A from S0(P1)",
                     {-1, 0, 1},
                     1 - 2 * ps,
                     a,
                     {"S0(P1)", {symmetric_member("S0", p1, "P1")}}});
    certs.push_back({"r-p = 1-2p* separates A from S0(P2)",
                     {-1, 0, 1},
                     1 - 2 * ps,
                     a,
                     {"S0(P2)", {symmetric_member("S0", p2, "P2")}}});
    certs.push_back({"p+q+r = 1-p* separates S1(P2) from A",
                     {1, 1, 1},
                     1 - ps,
                     {"S1(P2)", {symmetric_member("S1", p2, "P2")}},
                     a});
    certs.push_back({"q+r = 1+p* separates A from S1S3(P2)",
                     {0, 1, 1},
                     1 + ps,
                     a,
                     {"S1S3(P2)", {symmetric_member("S1S3", p2, "P2")}}});
    certs.push_back({"p+r = 2p* separates S1-images of P1 from A minus P1",
                     {1, 0, 1},
                     2 * ps,
                     s1_images_of_p1,
                     a_without_p1});
    certs.push_back({"p+q+r = 1 separates P1 from S1-images of P1",
                     {1, 1, 1},
                     Rat(1),
                     p1_only,
                     s1_images_of_p1});
    return certs;
}

struct CriticalValues {
    Rat eps_star_lo, eps_star_hi;  // exact sign bracket of the cubic root
    BigFloat eps_star;             // bracket midpoint
    BigFloat eps_star_radical;     // closed-form cross-check
    BigFloat eps_star2;            // (5 - sqrt(17)) / 2
    BigFloat eps_b;                // (7 - sqrt(17)) / 8
    std::vector<BigFloat> eps_n;   // 1 - 2^(1/2^n)/2, n = 1..
};

inline Rat invariance_threshold_cubic(const Rat& e) {
    return 4 * e * e * e - 14 * e * e + 15 * e - 4;
}

inline CriticalValues critical_values(const Rat& tol = Rat(1, Int("1000000000000")),
                                      int eps_n_count = 6) {
    CriticalValues cv;
    Rat lo(39, 100), hi(40, 100);
    if (!(invariance_threshold_cubic(lo) < 0 && invariance_threshold_cubic(hi) > 0))
        throw std::logic_error("cubic bracket lost");
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (invariance_threshold_cubic(mid) < 0) lo = mid;
        else hi = mid;
    }
    cv.eps_star_lo = lo;
    cv.eps_star_hi = hi;
    cv.eps_star = to_bigfloat((lo + hi) / 2);

    BigFloat s177 = sqrt(BigFloat(177));
    BigFloat w = (43 - 3 * s177) / 2;
    BigFloat third = BigFloat(1) / 3;
    cv.eps_star_radical = (7 - 4 * pow(1 / w, third) - pow(w, third)) / 6;

    BigFloat s17 = sqrt(BigFloat(17));
    cv.eps_star2 = (5 - s17) / 2;
    cv.eps_b = (7 - s17) / 8;
    for (int n = 1; n <= eps_n_count; ++n) cv.eps_n.push_back(critical_eps(n));
    return cv;
}

struct PropositionReport {
    int which = 0;
    Rat eps;
    bool verdict = false;
    bool faithful = true;
    InvarianceReport invariance;
    std::map<std::string, std::vector<std::string>> pattern;
    std::map<std::string, SymmetryVerdict> profile;
    std::vector<CertificateResult> certificates;
};

inline PropositionReport proposition_report(int which, const Rat& eps) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("proposition must be 1 or 2");
    RegionName name = which == 1 ? RegionName::A : RegionName::S;
    PropositionReport rep;
    rep.which = which;
    rep.eps = eps;
    rep.faithful = representation_faithful(name, eps);
    rep.invariance = check_invariance(name, eps);
    rep.pattern = check_intersection_pattern(name, eps);
    rep.profile = check_symmetry_profile(name, eps);

    bool profile_ok = true;
    for (const auto& [gen, verdict] : rep.profile) {
        SymmetryVerdict expected =
            which == 2 || gen == "S3" || gen == "S4" ? SymmetryVerdict::Equal
                                                     : SymmetryVerdict::Disjoint;
        if (verdict != expected) profile_ok = false;
    }

    bool certs_ok = true;
    if (which == 1) {
        for (const auto& c : asymmetry_certificates(eps)) {
            rep.certificates.push_back(verify_certificate(c));
            if (!rep.certificates.back().holds) certs_ok = false;
        }
    }
    rep.verdict = rep.invariance.holds && profile_ok && certs_ok && rep.faithful;
    return rep;
}

inline bool disjointness_A_S(const Rat& eps) {
    return regions_disjoint(build_region(RegionName::A, eps),
                            build_region(RegionName::S, eps));
}

}  // namespace quadmap
