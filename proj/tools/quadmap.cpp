// Command-line front end: verification verdicts, critical values, orbit
// simulation, face dynamics, and table/region export.
//
// Exit codes: 0 verdict true / success, 1 verdict false, 2 usage error.

#include "quadmap/io.hpp"
#include "quadmap/lorenz.hpp"
#include "quadmap/simulate.hpp"
#include "quadmap/symmetry.hpp"
#include "quadmap/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace quadmap;

json invariance_to_json(const InvarianceReport& r) {
    json pieces = json::array();
    for (const auto& p : r.pieces)
        pieces.push_back({{"member", p.member},
                          {"branch", p.branch},
                          {"target", p.target},
                          {"shift", {p.shift[0], p.shift[1], p.shift[2]}}});
    json violations = json::array();
    for (const auto& v : r.violations) {
        json w = json::array();
        for (const auto& c : v.witness) w.push_back(rat_to_string(c));
        violations.push_back({{"member", v.member},
                              {"branch", v.branch},
                              {"failed_halfspace", v.failed_halfspace},
                              {"witness", w}});
    }
    return {{"eps", rat_to_string(r.eps)},
            {"region", r.region},
            {"holds", r.holds},
            {"reduction_used", r.reduction_used},
            {"reduction_valid", r.reduction_valid},
            {"representation_faithful", r.faithful},
            {"pieces", pieces},
            {"violations", violations}};
}

json proposition_to_json(const PropositionReport& r) {
    json pattern = json::object();
    for (const auto& [m, labels] : r.pattern) pattern[m] = labels;
    json profile = json::object();
    for (const auto& [g, v] : r.profile) profile[g] = verdict_string(v);
    json certs = json::array();
    for (const auto& c : r.certificates)
        certs.push_back({{"description", c.description},
                         {"holds", c.holds},
                         {"lower_max", rat_to_string(c.lower_max)},
                         {"upper_min", rat_to_string(c.upper_min)}});
    return {{"proposition", r.which},
            {"eps", rat_to_string(r.eps)},
            {"verdict", r.verdict},
            {"representation_faithful", r.faithful},
            {"invariance", invariance_to_json(r.invariance)},
            {"intersection_pattern", pattern},
            {"symmetry_profile", profile},
            {"certificates", certs}};
}

void emit(const json& j, const std::string& out_path, bool quiet) {
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << j.dump(2) << "\n";
    }
    if (out_path.empty() && !quiet) std::cout << j.dump(2) << std::endl;
}

void write_text(const std::string& text, const std::string& out_path,
                bool quiet) {
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << text;
    } else if (!quiet) {
        std::cout << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant-set verification for four coupled doubling maps"};
    app.require_subcommand(1);
    bool json_out = false, quiet = false;
    int threads = 0;
    std::string out_path;
    app.add_flag("--json", json_out, "machine-readable output (default)");
    app.add_flag("--quiet", quiet, "suppress stdout");
    app.add_option("--threads", threads, "parallelism cap (advisory)");
    app.fallthrough();  // global flags may follow the subcommand

    // verify prop1|prop2
    auto* verify = app.add_subcommand("verify", "verify an invariance proposition");
    verify->require_subcommand(1);
    std::string eps1_str = "41/100", eps2_str = "32/100";
    auto* prop1 = verify->add_subcommand("prop1", "asymmetric region invariance");
    prop1->add_option("--eps", eps1_str, "rational coupling, e.g. 41/100");
    auto* prop2 = verify->add_subcommand("prop2", "symmetric region invariance");
    prop2->add_option("--eps", eps2_str, "rational coupling, e.g. 32/100");

    auto* crit = app.add_subcommand("critical-values", "critical couplings");
    double crit_tol = 1e-12;
    crit->add_option("--tol", crit_tol, "bracket width for the cubic root");

    auto* sim = app.add_subcommand("simulate", "orbit occupancy statistics");
    SimulationConfig sim_cfg;
    std::string sim_start_in;
    sim->add_option("--eps", sim_cfg.eps, "coupling (decimal)");
    sim->add_option("--steps", sim_cfg.steps, "iterations per orbit");
    sim->add_option("--burn-in", sim_cfg.burn_in, "discarded prefix");
    sim->add_option("--orbits", sim_cfg.orbit_count, "number of orbits");
    sim->add_option("--seed", sim_cfg.rng_seed, "master RNG seed");
    sim->add_option("--start-in", sim_start_in, "restrict starts to a region (A or S)");
    sim->add_option("--out", out_path, "output CSV path");

    auto* scan = app.add_subcommand("scan", "epsilon sweep");
    double eps_from = 0.25, eps_to = 0.499;
    int eps_points = 10;
    SimulationConfig scan_cfg;
    scan->add_option("--eps-from", eps_from, "grid start");
    scan->add_option("--eps-to", eps_to, "grid end");
    scan->add_option("--eps-points", eps_points, "grid size");
    scan->add_option("--steps", scan_cfg.steps, "iterations per orbit");
    scan->add_option("--burn-in", scan_cfg.burn_in, "discarded prefix");
    scan->add_option("--orbits", scan_cfg.orbit_count, "orbits per grid point");
    scan->add_option("--seed", scan_cfg.rng_seed, "master RNG seed");
    scan->add_option("--out", out_path, "output CSV path");

    auto* faces = app.add_subcommand("faces", "invariant face dynamics");
    std::string face_str = "p0";
    SimulationConfig face_cfg;
    faces->add_option("--face", face_str, "p0, q0 or r0");
    faces->add_option("--eps", face_cfg.eps, "coupling (decimal)");
    faces->add_option("--steps", face_cfg.steps, "iterations");
    faces->add_option("--burn-in", face_cfg.burn_in, "discarded prefix");
    faces->add_option("--seed", face_cfg.rng_seed, "RNG seed");

    auto* exp = app.add_subcommand("export", "region geometry export");
    std::string exp_region = "A", exp_eps = "41/100", exp_format = "json";
    exp->add_option("--region", exp_region, "P0, P1, P2, A or S");
    exp->add_option("--eps", exp_eps, "rational coupling");
    exp->add_option("--format", exp_format, "obj or json")
        ->check(CLI::IsMember({"obj", "json"}));
    exp->add_option("--out", out_path, "output path");

    auto* domains = app.add_subcommand("domain-table", "continuity domains");
    auto* symm = app.add_subcommand("symmetry-table", "symmetry group data");
    auto* lorenz = app.add_subcommand("lorenz", "interval map data");
    std::string lorenz_eps = "2/5";
    lorenz->add_option("--eps", lorenz_eps, "rational coupling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    (void)json_out;  // JSON is the only machine format

    try {
        if (prop1->parsed() || prop2->parsed()) {
            int which = prop1->parsed() ? 1 : 2;
            Rat eps = rat_from_string(which == 1 ? eps1_str : eps2_str);
            PropositionReport rep = proposition_report(which, eps);
            emit(proposition_to_json(rep), out_path, quiet);
            return rep.verdict ? 0 : 1;
        }
        if (crit->parsed()) {
            Rat tol(1, 1000000000000LL);
            if (crit_tol > 0 && crit_tol != 1e-12) {
                tol = Rat(1);
                while (to_double(tol) > crit_tol) tol /= 2;
            }
            CriticalValues cv = critical_values(tol);
            std::ostringstream star, rad, star2, epsb;
            star << std::setprecision(15) << cv.eps_star;
            rad << std::setprecision(15) << cv.eps_star_radical;
            star2 << std::setprecision(15) << cv.eps_star2;
            epsb << std::setprecision(15) << cv.eps_b;
            json eps_n = json::array();
            for (const auto& e : cv.eps_n) {
                std::ostringstream os;
                os << std::setprecision(15) << e;
                eps_n.push_back(os.str());
            }
            emit({{"eps_star_bracket",
                   {rat_to_string(cv.eps_star_lo), rat_to_string(cv.eps_star_hi)}},
                  {"eps_star", star.str()},
                  {"eps_star_radical", rad.str()},
                  {"eps_star2", star2.str()},
                  {"eps_b", epsb.str()},
                  {"eps_n", eps_n}},
                 out_path, quiet);
            return 0;
        }
        if (sim->parsed()) {
            Rat re(static_cast<long long>(sim_cfg.eps * 1000000.0 + 0.5), 1000000);
            auto regions = tracked_regions(re);
            const NumericRegion* start_in = nullptr;
            if (!sim_start_in.empty()) {
                for (const auto& r : regions)
                    if (r.label == sim_start_in) start_in = &r;
                if (!start_in) {
                    std::cerr << "unknown start region " << sim_start_in << "\n";
                    return 2;
                }
            }
            auto run = run_simulation(sim_cfg, regions, start_in);
            write_text(occupancy_csv_header() + "\n" + occupancy_csv_rows(run),
                       out_path, quiet);
            return 0;
        }
        if (scan->parsed()) {
            if (eps_points < 1) {
                std::cerr << "need at least one grid point\n";
                return 2;
            }
            std::vector<double> grid;
            for (int i = 0; i < eps_points; ++i)
                grid.push_back(eps_points == 1
                                   ? eps_from
                                   : eps_from + (eps_to - eps_from) * i /
                                         (eps_points - 1));
            write_text(scan_eps(grid, scan_cfg), out_path, quiet);
            return 0;
        }
        if (faces->parsed()) {
            auto stats = face_dynamics(face_from_string(face_str), face_cfg);
            json hull = json::array();
            for (const auto& p : stats.hull) hull.push_back({p[0], p[1]});
            emit({{"face", face_str},
                  {"eps", face_cfg.eps},
                  {"accepted_steps", stats.accepted_steps},
                  {"resamples", stats.resamples},
                  {"fixed_coordinate_exact", stats.fixed_coordinate_exact},
                  {"hull_area", stats.hull_area},
                  {"hull", hull}},
                 out_path, quiet);
            return stats.fixed_coordinate_exact ? 0 : 1;
        }
        if (exp->parsed()) {
            Region r = build_region(region_name_from_string(exp_region),
                                    rat_from_string(exp_eps));
            if (exp_format == "obj")
                write_text(region_to_obj(r), out_path, quiet);
            else
                emit(region_to_json(r), out_path, quiet);
            return 0;
        }
        if (domains->parsed()) {
            json table = json::array();
            for (const auto& b : branch_table()) {
                json hs = json::array();
                for (const auto& h : b.domain.halfspaces) {
                    json a = json::array();
                    for (const auto& c : h.a) a.push_back(rat_to_string(c));
                    hs.push_back({{"a", a}, {"b", rat_to_string(h.b)}});
                }
                table.push_back({{"label", b.label},
                                 {"offset", {b.offset[0], b.offset[1], b.offset[2]}},
                                 {"halfspaces", hs},
                                 {"volume", rat_to_string(volume(b.domain))}});
            }
            emit({{"domains", table}}, out_path, quiet);
            return 0;
        }
        if (symm->parsed()) {
            json gens = json::array();
            for (const auto& s : generators()) {
                json m = json::array();
                for (const auto& row : s.matrix) m.push_back({row[0], row[1], row[2]});
                gens.push_back({{"name", s.name},
                                {"matrix", m},
                                {"translation",
                                 {s.translation[0], s.translation[1],
                                  s.translation[2]}}});
            }
            json words = json::array();
            for (const auto& e : full_group().elements) words.push_back(e.name);
            emit({{"generators", gens},
                  {"group_order", full_group().elements.size()},
                  {"elements", words}},
                 out_path, quiet);
            return 0;
        }
        if (lorenz->parsed()) {
            Rat eps = rat_from_string(lorenz_eps);
            LorenzMap l(eps);
            json j = {{"eps", rat_to_string(eps)},
                      {"domain",
                       {rat_to_string(l.domain_lo()), rat_to_string(l.domain_hi())}},
                      {"slope", rat_to_string(l.slope())},
                      {"p_star", rat_to_string(p_star(eps))},
                      {"in_first_window",
                       at_or_above_eps1(eps) && below_eps2(eps)}};
            if (at_or_above_eps1(eps) && below_eps2(eps)) {
                auto mc = mixing_components(eps);
                json first = json::array(), second = json::array();
                for (const auto& i : mc.first)
                    first.push_back({rat_to_string(i.lo), rat_to_string(i.hi)});
                for (const auto& i : mc.second)
                    second.push_back({rat_to_string(i.lo), rat_to_string(i.hi)});
                j["mixing_components"] = {{"first", first}, {"second", second}};
            }
            emit(j, out_path, quiet);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
