// invlab: command-line surface over the library.
// Exit codes: 0 = all assertions passed, 1 = an assertion failed,
// 2 = invalid input (single-line diagnostic on stderr).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "invlab/existence.hpp"
#include "invlab/gaussian.hpp"
#include "invlab/kloosterman.hpp"
#include "invlab/modular.hpp"
#include "invlab/poisson.hpp"
#include "invlab/rng.hpp"

using json = nlohmann::ordered_json;
using namespace invlab;

namespace {

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

int default_jobs() {
    if (const char* env = std::getenv("INVLAB_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

Interval parse_interval(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos)
        throw std::domain_error("interval must be written lo:hi, got '" + s + "'");
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

void emit(const json& j, const std::string& output_path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        out << text;
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    return q + "\"";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit_report(const ExperimentReport& rep, const std::string& format,
                 const std::string& output_path) {
    if (format == "csv") {
        std::ostringstream os;
        os << "p,H,K,epsilon,kind,X,Y,threshold,empirical_min_J,c_emp,seed,runtime_s\n";
        os << rep.p << ',' << fmt(rep.H) << ',' << fmt(rep.K) << ',' << fmt(rep.epsilon)
           << ',' << csv_field(to_string(rep.kind)) << ',' << fmt(rep.spacing.X) << ','
           << rep.spacing.Y << ',' << fmt(rep.threshold_value) << ',' << rep.empirical_min_J
           << ',' << fmt(rep.c_emp) << ',' << rep.seed << ',' << fmt(rep.runtime_s) << '\n';
        if (output_path.empty())
            std::cout << os.str();
        else
            std::ofstream(output_path, std::ios::binary) << os.str();
        return;
    }
    json j;
    j["p"] = rep.p;
    j["H"] = rep.H;
    j["K"] = rep.K;
    j["epsilon"] = rep.epsilon;
    j["kind"] = to_string(rep.kind);
    j["X"] = rep.spacing.X;
    j["Y"] = rep.spacing.Y;
    j["trials"] = rep.trials;
    j["threshold"] = rep.threshold_value;
    j["empirical_min_J"] = rep.empirical_min_J;
    j["c_emp"] = rep.c_emp;
    j["saturated"] = rep.saturated;
    j["seed"] = rep.seed;
    j["runtime_s"] = rep.runtime_s;
    json ratios = json::array();
    for (const auto& r : rep.audit_ratios)
        ratios.push_back({{"actual", r.actual}, {"predicted", r.predicted}, {"ratio", r.ratio}});
    j["audit_ratios"] = ratios;
    emit(j, output_path);
}

IntervalFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open family file: " + path);
    json j = json::parse(in);
    IntervalFamily fam;
    fam.p = j.at("p").get<std::uint64_t>();
    fam.H = j.at("H").get<double>();
    fam.K = j.at("K").get<double>();
    fam.kind = FamilyKind::general;
    for (const auto& c : j.at("centers"))
        fam.centers.emplace_back(c.at(0).get<std::int64_t>(), c.at(1).get<std::int64_t>());
    return fam;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for modular inverses in short intervals"};
    app.require_subcommand(1);

    int jobs = default_jobs();
    std::string output_path;
    std::string format = "json";
    app.add_option("--jobs", jobs, "worker count (default from INVLAB_JOBS, else 1)");
    app.add_option("--output,-o", output_path, "write the report to this path");
    app.add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // kloosterman
    auto* c_kl = app.add_subcommand("kloosterman", "single complete Kloosterman sum");
    std::uint64_t kl_p = 0, kl_a = 0, kl_b = 0;
    c_kl->add_option("--p", kl_p, "prime modulus")->required();
    c_kl->add_option("--a", kl_a, "first frequency")->required();
    c_kl->add_option("--b", kl_b, "second frequency")->required();

    // weil-scan
    auto* c_ws = app.add_subcommand("weil-scan", "max Weil margin over a prime range");
    std::uint64_t ws_pmin = 3, ws_pmax = 101;
    c_ws->add_option("--pmin", ws_pmin, "first prime considered");
    c_ws->add_option("--pmax", ws_pmax, "last prime considered")->required();

    // meanvalue
    auto* c_mv = app.add_subcommand("meanvalue", "mean-value inequality for short sums");
    std::uint64_t mv_p = 0, mv_l = 1, mv_seed = kDefaultSeed;
    double mv_H = 0.0;
    std::size_t mv_J = 0;
    c_mv->add_option("--p", mv_p)->required();
    c_mv->add_option("--H", mv_H, "interval width")->required();
    c_mv->add_option("--J", mv_J, "number of disjoint intervals")->required();
    c_mv->add_option("--l", mv_l, "frequency, l ≢ 0 (mod p)");
    c_mv->add_option("--seed", mv_seed);

    // poisson-check
    auto* c_pc = app.add_subcommand("poisson-check", "direct vs spectral S residual");
    std::uint64_t pc_p = 0, pc_seed = kDefaultSeed;
    double pc_H = 0.0, pc_K = 0.0, pc_eps = 0.5, pc_tol = 1e-8;
    std::size_t pc_J = 0;
    std::string pc_family;
    c_pc->add_option("--p", pc_p);
    c_pc->add_option("--H", pc_H);
    c_pc->add_option("--K", pc_K);
    c_pc->add_option("--J", pc_J);
    c_pc->add_option("--seed", pc_seed);
    c_pc->add_option("--epsilon", pc_eps);
    c_pc->add_option("--tol", pc_tol, "residual tolerance (default 1e-8)");
    c_pc->add_option("--family", pc_family, "JSON family file {p,H,K,centers:[[M,N],...]}");

    // exists
    auto* c_ex = app.add_subcommand("exists", "brute-force oracle on one interval pair");
    std::uint64_t ex_p = 0;
    std::string ex_i1, ex_i2;
    c_ex->add_option("--p", ex_p)->required();
    c_ex->add_option("--i1", ex_i1, "first interval, lo:hi")->required();
    c_ex->add_option("--i2", ex_i2, "second interval, lo:hi")->required();

    // thresholds
    auto* c_th = app.add_subcommand("thresholds", "theorem threshold formulas");
    std::uint64_t th_p = 0;
    double th_H = 0.0, th_K = 0.0, th_X = 1.0, th_eps = 0.5;
    c_th->add_option("--p", th_p)->required();
    c_th->add_option("--H", th_H)->required();
    c_th->add_option("--K", th_K)->required();
    c_th->add_option("--X", th_X, "spacing for the X-spaced threshold");
    c_th->add_option("--epsilon", th_eps);

    // experiment
    auto* c_xp = app.add_subcommand("experiment", "empirical minimal-J search");
    std::uint64_t xp_p = 0, xp_seed = kDefaultSeed;
    double xp_H = 0.0, xp_K = 0.0, xp_X = 0.0, xp_eps = 0.5;
    std::int64_t xp_Y = 0;
    std::size_t xp_trials = 10;
    std::string xp_kind = "disjoint";
    c_xp->add_option("--kind", xp_kind, "general|disjoint|x_spaced|arithmetic");
    c_xp->add_option("--p", xp_p)->required();
    c_xp->add_option("--H", xp_H)->required();
    c_xp->add_option("--K", xp_K)->required();
    c_xp->add_option("--X", xp_X);
    c_xp->add_option("--Y", xp_Y);
    c_xp->add_option("--epsilon", xp_eps);
    c_xp->add_option("--trials", xp_trials);
    c_xp->add_option("--seed", xp_seed);

    // audit
    auto* c_au = app.add_subcommand("audit", "error-shape audit on a generated family");
    std::uint64_t au_p = 0, au_seed = kDefaultSeed;
    double au_H = 0.0, au_K = 0.0, au_X = 0.0, au_eps = 0.5;
    std::int64_t au_Y = 0;
    std::size_t au_J = 0;
    std::string au_kind = "x_spaced";
    c_au->add_option("--kind", au_kind, "x_spaced|arithmetic");
    c_au->add_option("--p", au_p)->required();
    c_au->add_option("--H", au_H)->required();
    c_au->add_option("--K", au_K)->required();
    c_au->add_option("--X", au_X)->required();
    c_au->add_option("--Y", au_Y);
    c_au->add_option("--J", au_J)->required();
    c_au->add_option("--epsilon", au_eps);
    c_au->add_option("--seed", au_seed);

    // let --jobs/--output/--format appear after the subcommand name
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_kl) {
            PrimeModulus pm(kl_p);
            auto kv = kloosterman(kl_a, kl_b, pm);
            std::printf("%.15g\n", kv.value.real());
            return 0;
        }
        if (*c_ws) {
            double max_margin = 0.0, max_imag = 0.0;
            std::uint64_t arg_p = 0, arg_a = 0, arg_b = 0;
            for (std::uint64_t p = std::max<std::uint64_t>(3, ws_pmin); p <= ws_pmax; ++p) {
                if (!is_prime(p)) continue;
                PrimeModulus pm(p);
                // b ranges over S(1,t;p); every S(a,b;p) with ab ≢ 0 reduces to one
                // of these, and |S(0,b;p)| = 1 never attains the maximum.
                for (std::uint64_t t = 1; t < p; ++t) {
                    auto kv = kloosterman(1, t, pm);
                    max_imag = std::max(max_imag, std::abs(kv.value.imag()));
                    double margin = std::abs(kv.value) /
                                    (2.0 * std::sqrt(static_cast<double>(p)));
                    if (margin > max_margin) {
                        max_margin = margin;
                        arg_p = p; arg_a = 1; arg_b = t;
                    }
                }
            }
            json j{{"pmin", ws_pmin}, {"pmax", ws_pmax}, {"max_margin", max_margin},
                   {"max_imag", max_imag}, {"p", arg_p}, {"a", arg_a}, {"b", arg_b}};
            emit(j, output_path);
            return max_margin <= 1.0 ? 0 : 1;
        }
        if (*c_mv) {
            PrimeModulus pm(mv_p);
            auto fam = generate_family(FamilyKind::disjoint, pm, mv_H, mv_H, mv_J, {}, mv_seed);
            std::vector<Interval> intervals;
            for (std::size_t j = 0; j < fam.J(); ++j) intervals.push_back(fam.i1(j));
            auto chk = mean_value_check(intervals, mv_H, mv_l, pm);
            json j{{"p", mv_p}, {"H", mv_H}, {"J", mv_J}, {"l", mv_l}, {"seed", mv_seed},
                   {"lhs", chk.lhs}, {"rhs", chk.rhs}, {"holds", chk.holds}};
            emit(j, output_path);
            return chk.holds ? 0 : 1;
        }
        if (*c_pc) {
            IntervalFamily fam;
            std::uint64_t p;
            if (!pc_family.empty()) {
                fam = load_family_file(pc_family);
                p = fam.p;
            } else {
                if (pc_p == 0 || pc_H <= 0 || pc_K <= 0) {
                    std::cerr << "poisson-check: --p, --H, --K required without --family\n";
                    return 2;
                }
                p = pc_p;
            }
            PrimeModulus pm(p);
            if (pc_family.empty())
                fam = generate_family(FamilyKind::general, pm, pc_H, pc_K, pc_J, {}, pc_seed);
            auto sc = scales(fam.H, fam.K, pm, pc_eps);
            double residual = poisson_residual(fam, sc, pm, jobs);
            json j{{"p", p}, {"H", fam.H}, {"K", fam.K}, {"J", fam.J()},
                   {"epsilon", pc_eps}, {"seed", pc_seed}, {"residual", residual},
                   {"tol", pc_tol}, {"holds", residual < pc_tol}};
            emit(j, output_path);
            return residual < pc_tol ? 0 : 1;
        }
        if (*c_ex) {
            PrimeModulus pm(ex_p);
            auto res = solution_exists(parse_interval(ex_i1), parse_interval(ex_i2), pm);
            json j{{"p", ex_p}, {"exists", res.exists}};
            if (res.witness)
                j["witness"] = {res.witness->first, res.witness->second};
            else
                j["witness"] = nullptr;
            emit(j, output_path);
            return 0;
        }
        if (*c_th) {
            PrimeModulus pm(th_p);  // validates primality
            auto pd = static_cast<double>(th_p);
            auto t4 = thm4_thresholds(pd, th_H, th_K, th_eps);
            json j{{"p", th_p}, {"H", th_H}, {"K", th_K}, {"X", th_X}, {"epsilon", th_eps},
                   {"thm1_J", thm1_threshold(pd, th_H, th_K)},
                   {"thm3_J", thm3_threshold(pd, th_H, th_K, th_X, th_eps)},
                   {"thm4_X_max", t4.X_max}, {"thm4_J_min", t4.J_min}};
            emit(j, output_path);
            return 0;
        }
        if (*c_xp) {
            PrimeModulus pm(xp_p);
            SpacingParams sp{xp_X, xp_Y};
            auto rep = minimal_J_search(family_kind_from_string(xp_kind), pm, xp_H, xp_K,
                                        sp, xp_eps, xp_trials, xp_seed, jobs);
            emit_report(rep, format, output_path);
            return rep.saturated ? 1 : 0;
        }
        if (*c_au) {
            PrimeModulus pm(au_p);
            SpacingParams sp{au_X, au_Y};
            auto kind = family_kind_from_string(au_kind);
            auto fam = generate_family(kind, pm, au_H, au_K, au_J, sp, au_seed);
            auto sc = scales(au_H, au_K, pm, au_eps);
            auto ratios = bound_audit(fam, sc, pm);
            json arr = json::array();
            bool ok = true;
            for (const auto& r : ratios) {
                arr.push_back({{"actual", r.actual}, {"predicted", r.predicted},
                               {"ratio", r.ratio}});
                if (!(r.ratio < 100.0)) ok = false;
            }
            json j{{"p", au_p}, {"H", au_H}, {"K", au_K}, {"kind", au_kind}, {"J", au_J},
                   {"X", au_X}, {"Y", au_Y}, {"seed", au_seed}, {"ratios", arr}};
            emit(j, output_path);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "invlab: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
