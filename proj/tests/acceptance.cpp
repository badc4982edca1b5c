// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// pass. Tolerances and time limits are pinned in the criteria themselves.

#include "quadmap/lorenz.hpp"
#include "quadmap/simulate.hpp"
#include "quadmap/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace quadmap;

namespace {

struct Criterion {
    int id;
    std::string title;
    double time_limit_s;
    std::function<void(std::vector<std::string>&)> run;  // appends failures
};

void expect(std::vector<std::string>& fails, bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
}

using Route = std::map<std::pair<std::string, std::string>,
                       std::pair<std::string, std::array<long, 3>>>;

Route route_of(const InvarianceReport& rep) {
    Route r;
    for (const auto& p : rep.pieces) r[{p.member, p.branch}] = {p.target, p.shift};
    return r;
}

void criterion1(std::vector<std::string>& fails) {
    auto hi = proposition_report(1, Rat(41, 100));
    expect(fails, hi.verdict, "verdict at 41/100");
    expect(fails, hi.pattern["P1"] == std::vector<std::string>{"1b", "4a"},
           "P1 branch pattern");
    expect(fails,
           hi.pattern["P2"] ==
               std::vector<std::string>{"3a", "3b", "3c", "4a", "4b", "4c"},
           "P2 branch pattern");
    Route expected{
        {{"P1", "1b"}, {"P2", {0, 0, 0}}},
        {{"P1", "4a"}, {"P1", {-1, 0, 0}}},
        {{"P2", "3a"}, {"P2", {-1, -1, 0}}},
        {{"P2", "3b"}, {"S3(P1)", {-1, -1, 0}}},
        {{"P2", "3c"}, {"P1", {-1, -1, 0}}},
        {{"P2", "4a"}, {"P2", {-1, 0, 0}}},
        {{"P2", "4b"}, {"S4(P1)", {-1, 0, 0}}},
        {{"P2", "4c"}, {"S3S4(P1)", {-1, 0, 0}}},
    };
    expect(fails, route_of(hi.invariance) == expected, "piece routing");
    for (const auto& [gen, verdict] : hi.profile) {
        SymmetryVerdict want = gen == "S3" || gen == "S4"
                                   ? SymmetryVerdict::Equal
                                   : SymmetryVerdict::Disjoint;
        expect(fails, verdict == want, "symmetry profile for " + gen);
    }
    expect(fails, hi.certificates.size() == 6, "certificate count");
    for (const auto& c : hi.certificates)
        expect(fails, c.holds, "certificate: " + c.description);

    auto lo = proposition_report(1, Rat(39, 100));
    expect(fails, !lo.verdict, "verdict at 39/100 must fail");
    expect(fails, !lo.invariance.holds, "invariance at 39/100 must fail");
    expect(fails, lo.invariance.violations.size() == 1 &&
                      lo.invariance.violations[0].member == "P1" &&
                      lo.invariance.violations[0].branch == "4a",
           "violation is P1 over branch 4a");
}

void criterion2(std::vector<std::string>& fails) {
    auto cv = critical_values();
    expect(fails,
           cv.eps_star_lo >= Rat(397, 1000) && cv.eps_star_hi <= Rat(398, 1000),
           "eps* bracket in [0.397, 0.398]");
    expect(fails, abs(cv.eps_star - cv.eps_star_radical) < 1e-9,
           "bisection matches the radical to 1e-9");
    expect(fails, abs(cv.eps_star2 - BigFloat("0.43844718719116972")) < 1e-9,
           "eps** to 1e-9");
    expect(fails, abs(cv.eps_b - BigFloat("0.35961179679779241")) < 1e-9,
           "eps_B to 1e-9");
    expect(fails, abs(cv.eps_n.at(0) - BigFloat("0.29289321881345248")) < 1e-9,
           "eps_1 to 1e-9");
}

void criterion3(std::vector<std::string>& fails) {
    for (const char* label : {"3a", "4a"}) {
        const Branch* b = nullptr;
        for (const auto& cand : branch_table())
            if (cand.label == label) b = &cand;
        for (long n : {36L, 35L}) {
            Rat eps(n, 100);
            Region p2{"P2", {{"P2", build_p2(eps)}}};
            auto piece = intersect(build_p2(eps), b->domain);
            auto image = image_of_branch_piece(piece, *b, eps);
            bool in = contains_in_region(image, p2).contained;
            expect(fails, in == (n == 36),
                   std::string("piece ") + label + " at eps " +
                       std::to_string(n) + "/100");
        }
    }
}

void criterion4(std::vector<std::string>& fails) {
    auto hi = proposition_report(2, Rat(32, 100));
    expect(fails, hi.verdict, "verdict at 32/100");
    expect(fails,
           hi.pattern["P0"] == std::vector<std::string>{"1e", "4b", "5b", "8b"},
           "P0 branch pattern");
    Route expected{
        {{"P0", "1e"}, {"S3S1(P0)", {0, 0, 0}}},
        {{"P0", "4b"}, {"S5(P0)", {-1, 0, 0}}},
        {{"P0", "5b"}, {"S2(P0)", {0, 0, -1}}},
        {{"P0", "8b"}, {"S4S1(P0)", {-1, 0, -1}}},
    };
    expect(fails, route_of(hi.invariance) == expected, "piece routing");
    for (const auto& [gen, verdict] : hi.profile)
        expect(fails, verdict == SymmetryVerdict::Equal,
               "symmetry profile for " + gen);

    auto lo = proposition_report(2, Rat(28, 100));
    expect(fails, !lo.verdict, "verdict at 28/100 must fail");
}

void criterion5(std::vector<std::string>& fails) {
    expect(fails, disjointness_A_S(Rat(41, 100)), "disjoint at 41/100");
    expect(fails, disjointness_A_S(Rat(45, 100)), "disjoint at 45/100");
}

void criterion6(std::vector<std::string>& fails) {
    expect(fails, full_group().elements.size() == 48, "group order 48");
    const AffineSymmetry id = identity_symmetry();
    for (const auto& s : generators())
        expect(fails, compose(s, s) == id, s.name + " is an involution");
    auto conj = [](int a, int b) {
        return compose(generator(a), compose(generator(b), generator(a)));
    };
    expect(fails, conj(2, 1) == generator(4), "S4 = S2 S1 S2");
    expect(fails, conj(3, 1) == generator(5), "S5 = S3 S1 S3");
    expect(fails, conj(3, 2) == generator(6), "S6 = S3 S2 S3");
    for (const auto& e : full_group().elements)
        expect(fails, compose(generator(0), e) == compose(e, generator(0)),
               "S0 commutes with " + e.name);
    auto orbit = orbit_of_region(build_region(RegionName::A, Rat(41, 100)),
                                 full_group());
    expect(fails, orbit.distinct_images.size() == 6, "orbit of A has 6 images");
    expect(fails, orbit.stabilizer_order == 8, "stabilizer of A has order 8");
}

void criterion7(std::vector<std::string>& fails) {
    std::mt19937_64 rng(2026);
    // Odd denominator: the singular functionals never hit odd half-integers,
    // so every sample is nonsingular and the symmetry images stay rational.
    const long den = 2521;
    std::uniform_int_distribution<long> dist(0, den - 1);
    for (const Rat& eps : {Rat(1, 10), Rat(41, 100)}) {
        long bad_equivariance = 0, bad_paths = 0, sampled = 0;
        while (sampled < 10000) {
            TorusPoint3 x{Rat(dist(rng), den), Rat(dist(rng), den),
                          Rat(dist(rng), den)};
            // Points on integer chart boundaries are regular but have no
            // unique branch; resample those.
            if (!classify_or_null(x)) continue;
            ++sampled;
            TorusPoint3 gx = g3_step_formula(x, eps);
            if (g3_step_table(x, eps) != gx) ++bad_paths;
            for (const auto& s : generators()) {
                TorusPoint3 sx = apply_to_point(s, x);
                if (g3_step_formula(sx, eps) != apply_to_point(s, gx))
                    ++bad_equivariance;
            }
        }
        expect(fails, bad_equivariance == 0,
               "equivariance at eps " + rat_to_string(eps));
        expect(fails, bad_paths == 0,
               "formula/table agreement at eps " + rat_to_string(eps));
    }
    Rat total = 0;
    for (const auto& b : branch_table()) total += volume(b.domain);
    expect(fails, total == 1, "domain volumes sum to 1");
}

void criterion8(std::vector<std::string>& fails) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(1, 49);
    for (int trial = 0; trial < 20; ++trial) {
        Rat eps(num(rng), 100);
        LorenzMap l(eps);
        Rat ps = p_star(eps);
        expect(fails, l(ps) == 1 - ps,
               "L(p*) = 1 - p* at eps " + rat_to_string(eps));
    }
    auto mc = mixing_components(Rat(2, 5));
    expect(fails,
           mc.first.size() == 2 && mc.first[0].lo == Rat(1, 5) &&
               mc.first[0].hi == Rat(34, 125) && mc.first[1].lo == Rat(91, 125) &&
               mc.first[1].hi == Rat(4, 5),
           "first mixing component endpoints");
    expect(fails,
           mc.second.size() == 1 && mc.second[0].lo == Rat(11, 25) &&
               mc.second[0].hi == Rat(14, 25),
           "second mixing component endpoints");
    LorenzMap l(Rat(2, 5));
    const Interval& s = mc.second[0];
    for (const auto& i : mc.first) {
        Interval img = l.image(i);
        expect(fails, img.lo >= s.lo && img.hi <= s.hi,
               "L(C1) inside C2");
    }
    Interval lo_half = l.image({s.lo, Rat(1, 2)});
    Interval hi_half = l.image({Rat(1, 2), s.hi});
    expect(fails,
           lo_half.lo >= mc.first[1].lo && lo_half.hi <= mc.first[1].hi &&
               hi_half.lo >= mc.first[0].lo && hi_half.hi <= mc.first[0].hi,
           "L(C2) inside C1");
    for (long n : {32L, 28L}) {
        LorenzMap le(Rat(n, 100));
        bool holds = le.iterate(le.domain_hi(), 3) <= le(le.domain_hi());
        expect(fails, holds == (n == 32),
               "third-iterate condition at eps " + std::to_string(n) + "/100");
    }
}

void criterion9(std::vector<std::string>& fails) {
    SimulationConfig cfg;
    cfg.rng_seed = 42;
    cfg.orbit_count = 100;
    cfg.burn_in = 10000;
    cfg.steps = 110000;

    cfg.eps = 0.41;
    auto regions = tracked_regions(Rat(41, 100));
    auto run = run_simulation(cfg, regions, &regions[0]);
    for (const auto& o : run.orbits)
        expect(fails, o.fraction.at("A") == 1.0,
               "orbit started in A left A at eps 0.41");

    auto s_fraction = [&](double eps, const Rat& reps) {
        cfg.eps = eps;
        auto regs = tracked_regions(reps);
        auto r = run_simulation(cfg, regs);
        int inside = 0;
        for (const auto& o : r.orbits)
            if (o.fraction.at("S") == 1.0) ++inside;
        return double(inside) / double(r.orbits.size());
    };
    expect(fails, s_fraction(0.32, Rat(32, 100)) >= 0.99,
           "tail-in-S fraction at eps 0.32");
    expect(fails, s_fraction(0.25, Rat(25, 100)) < 0.99,
           "tail-in-S fraction at eps 0.25");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "invariant asymmetric union above/below threshold", 20.0, criterion1},
        {2, "critical-value bracket and radicals", 1.0, criterion2},
        {3, "sub-threshold routing boundary", 5.0, criterion3},
        {4, "invariant symmetric union above/below threshold", 10.0, criterion4},
        {5, "asymmetric and symmetric unions disjoint", 5.0, criterion5},
        {6, "symmetry group structure and orbit of A", 10.0, criterion6},
        {7, "equivariance and two-path agreement", 30.0, criterion7},
        {8, "interval map suite", 5.0, criterion8},
        {9, "simulation soft checks", 120.0, criterion9},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        std::vector<std::string> fails;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(fails);
        } catch (const std::exception& e) {
            fails.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (secs > c.time_limit_s)
            fails.push_back("time limit " + std::to_string(c.time_limit_s) +
                            " s exceeded");
        bool ok = fails.empty();
        all_ok = all_ok && ok;
        std::printf("criterion %d: %s (%.2f s) %s\n", c.id,
                    ok ? "PASS" : "FAIL", secs, c.title.c_str());
        for (const auto& f : fails) std::printf("  - %s\n", f.c_str());
    }
    return all_ok ? 0 : 1;
}
