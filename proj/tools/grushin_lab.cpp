// Command-line front end: runs the identity suites, inequality fuzzing,
// sharpness sweeps, quotient minimization, remainder-constant estimation and
// polar-constant computation, writing CSV/JSON reports and SVG plots.
//
// Exit codes: 0 all checks passed, 1 violation or target miss, 2 numerical
// failure, 3 invalid configuration.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grushin/lab.hpp"
#include "grushin/quadrature.hpp"
#include "grushin/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitConfig = 3;

// versioned defaults table, printed by `report --defaults`
constexpr const char* kDefaultsVersion = "1";
const std::vector<std::pair<std::string, std::string>> kDefaults = {
    {"defaults_version", kDefaultsVersion},
    {"identities.points", "1000"},
    {"identities.tol", "1e-05"},
    {"fuzz.samples", "100"},
    {"sharpness.eps", "0.2,0.1,0.05,0.025"},
    {"sharpness.delta", "0.05"},
    {"sharpness.rtol", "0.01"},
    {"minimize.knots", "16"},
    {"minimize.rho_lo", "1e-12"},
    {"minimize.rho_hi", "1e+12"},
    {"optimizer.budget", "2000"},
    {"optimizer.restarts", "3"},
    {"kappa.tol", "1e-06"},
    {"seed", "42"},
};

grushin::CaseId parse_case(const std::string& name) {
    static const std::map<std::string, grushin::CaseId> aliases = {
        {"H", grushin::CaseId::H_BASE},
        {"H-improved", grushin::CaseId::H_IMPROVED_31},
        {"H-log", grushin::CaseId::H_LOG_32},
        {"H-LP", grushin::CaseId::H_LP_33},
        {"H-CKN", grushin::CaseId::H_CKN_34},
        {"R1", grushin::CaseId::R1_41},
        {"R1-ball", grushin::CaseId::R1_BALL_42},
        {"R1-log", grushin::CaseId::R1_LOG_43},
        {"R1-CKN", grushin::CaseId::R1_CKN_44},
        {"R2", grushin::CaseId::R2_45},
        {"R2-ball", grushin::CaseId::R2_BALL_46},
        {"R2-log", grushin::CaseId::R2_LOG_47},
    };
    if (auto it = aliases.find(name); it != aliases.end()) return it->second;
    if (auto id = grushin::case_from_name(name)) return *id;
    throw std::invalid_argument("unknown case id '" + name +
                                "' (expected one of H, H-improved, H-log, H-LP, H-CKN, R1, "
                                "R1-ball, R1-log, R1-CKN, R2, R2-ball, R2-log)");
}

struct Options {
    std::string config;
    int m = 2, k = 1;
    double gamma = 1.0;
    std::string case_id = "H-LP";
    double alpha = 0.0, t = 0.0, p = 2.0, q = 1.5;
    double radius = 1.0;
    std::uint64_t seed = 42;
    int points = 1000;
    long samples = 100;
    double tol = 1e-5;
    std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
    std::vector<double> delta = {0.05};
    double rtol = 0.01;
    int knots = 16;
    double rho_lo = 1e-12, rho_hi = 1e12;
    long budget = 2000;
    int restarts = 3;
    double exponent = 2.0;
    double kappa_tol = 1e-6;
    bool defaults = false;
    std::string out, json_out, plot;
};

// JSON config file: same keys as the long option names; command-line flags
// override file values.
void load_config(const std::string& path, Options& o) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
    }
    o.m = j.value("m", o.m);
    o.k = j.value("k", o.k);
    o.gamma = j.value("gamma", o.gamma);
    o.case_id = j.value("case", o.case_id);
    o.alpha = j.value("alpha", o.alpha);
    o.t = j.value("t", o.t);
    o.p = j.value("p", o.p);
    o.q = j.value("q", o.q);
    o.radius = j.value("radius", o.radius);
    o.seed = j.value("seed", o.seed);
    o.points = j.value("points", o.points);
    o.samples = j.value("samples", o.samples);
    o.tol = j.value("tol", o.tol);
    if (j.contains("eps")) o.eps = j["eps"].get<std::vector<double>>();
    if (j.contains("delta")) o.delta = j["delta"].get<std::vector<double>>();
    o.rtol = j.value("rtol", o.rtol);
    o.knots = j.value("knots", o.knots);
    o.rho_lo = j.value("rho_lo", o.rho_lo);
    o.rho_hi = j.value("rho_hi", o.rho_hi);
    o.budget = j.value("budget", o.budget);
    o.restarts = j.value("restarts", o.restarts);
    o.exponent = j.value("exponent", o.exponent);
    o.kappa_tol = j.value("kappa_tol", o.kappa_tol);
    o.out = j.value("out", o.out);
    o.json_out = j.value("json", o.json_out);
    o.plot = j.value("plot", o.plot);
}

grushin::InequalityCase build_case(const Options& o) {
    const grushin::GrushinParams params = grushin::GrushinParams::create(o.m, o.k, o.gamma);
    return grushin::make_case(parse_case(o.case_id), params, o.alpha, o.t, o.p, o.q,
                              grushin::Support::rho_ball(o.radius));
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON config file; flags override its values");
    cmd->add_option("-m,--m", o.m, "x-block dimension");
    cmd->add_option("-k,--k", o.k, "y-block dimension");
    cmd->add_option("--gamma", o.gamma, "degeneracy exponent");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--out", o.out, "CSV output path");
    cmd->add_option("--json", o.json_out, "JSON output path");
}

void add_case_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--case", o.case_id, "inequality case id");
    cmd->add_option("--alpha", o.alpha, "gauge weight exponent");
    cmd->add_option("--t", o.t, "gradient weight exponent (first-order cases)");
    cmd->add_option("--p", o.p, "integrability exponent (H-LP)");
    cmd->add_option("--q", o.q, "remainder gradient exponent (CKN cases)");
    cmd->add_option("--radius", o.radius, "gauge-ball radius for ball-domain cases");
}

int run_identities(const Options& o) {
    const auto params = grushin::GrushinParams::create(o.m, o.k, o.gamma);
    const auto rep = grushin::run_identity_suite(params, o.points, o.seed, o.tol);
    if (rep.vacuous)
        std::cerr << "warning: identity suite ran with 0 points; result is vacuous\n";
    for (const auto& ch : rep.checks)
        std::printf("%-32s max_residual=%.3e tol=%.0e %s\n", ch.residual.name.c_str(),
                    ch.residual.max_scaled_residual, ch.tol, ch.pass ? "pass" : "FAIL");
    if (!o.out.empty()) grushin::write_file(o.out, grushin::identities_csv(rep));
    if (!o.json_out.empty()) grushin::write_file(o.json_out, grushin::identities_json(rep));
    return rep.pass ? kExitPass : kExitViolation;
}

int run_fuzz(const Options& o) {
    const auto c = build_case(o);
    const auto rep = grushin::fuzz_inequality(c, o.samples, o.seed);
    std::printf("%s: samples=%ld min_normalized_gap=%.6e violations=%ld divergent_lhs=%ld "
                "inconclusive=%ld\n",
                grushin::case_name(rep.id).c_str(), rep.samples, rep.min_normalized_gap,
                rep.violations, rep.divergent_lhs, rep.inconclusive);
    if (!o.out.empty()) grushin::write_file(o.out, grushin::fuzz_csv(rep, c));
    if (!o.json_out.empty()) grushin::write_file(o.json_out, grushin::fuzz_json(rep, c));
    if (rep.samples > 0 && rep.inconclusive == rep.samples) return kExitNumerical;
    return rep.violations == 0 ? kExitPass : kExitViolation;
}

int run_sharpness(const Options& o) {
    const auto c = build_case(o);
    const auto rep = grushin::sharpness_sweep(c, o.eps, o.delta);
    std::printf("%s: extrapolated=%.8f target=%.8f rel_gap=%.3e\n",
                grushin::case_name(rep.id).c_str(), rep.extrapolated_limit, rep.target,
                rep.relative_gap);
    if (!o.out.empty()) grushin::write_file(o.out, grushin::sweep_csv(rep));
    if (!o.json_out.empty()) grushin::write_file(o.json_out, grushin::sweep_json(rep));
    if (!o.plot.empty()) grushin::write_file(o.plot, grushin::sweep_svg(rep));
    for (const auto& row : rep.rows)
        if (row.quotient < rep.target - 1e-6 * (1.0 + rep.target)) return kExitViolation;
    return rep.relative_gap <= o.rtol ? kExitPass : kExitViolation;
}

int run_minimize(const Options& o) {
    const auto c = build_case(o);
    const grushin::SplineFamilyConfig family{o.knots, o.rho_lo, o.rho_hi};
    const grushin::SimplexConfig optimizer{o.restarts, o.budget, 1e-10};
    const auto rep = grushin::minimize_quotient(c, family, optimizer, o.seed);
    const double sharp = grushin::sharp_constant(c);
    std::printf("%s: best=%.8f sharp=%.8f excess=%.3e evals=%ld converged=%d\n",
                grushin::case_name(rep.id).c_str(), rep.best_value, sharp,
                rep.best_value / sharp - 1.0, rep.evaluations, rep.converged ? 1 : 0);
    if (!o.out.empty()) grushin::write_file(o.out, grushin::estimate_csv(rep, c));
    if (!o.json_out.empty()) grushin::write_file(o.json_out, grushin::estimate_json(rep, c));
    if (rep.best_value < sharp - 1e-6 * (1.0 + sharp)) return kExitViolation;
    if (!rep.converged) return kExitNumerical;
    return kExitPass;
}

int run_remainder(const Options& o) {
    const auto c = build_case(o);
    const grushin::SplineFamilyConfig family{o.knots, o.rho_lo, o.rho_hi};
    const grushin::SimplexConfig optimizer{o.restarts, o.budget, 1e-10};
    const auto rep = grushin::estimate_remainder_constant(c, family, optimizer, o.seed);
    std::printf("%s: best_constant_estimate=%.8f evals=%ld converged=%d\n", rep.label.c_str(),
                rep.best_value, rep.evaluations, rep.converged ? 1 : 0);
    if (!o.out.empty()) grushin::write_file(o.out, grushin::estimate_csv(rep, c));
    if (!o.json_out.empty()) grushin::write_file(o.json_out, grushin::estimate_json(rep, c));
    if (!(rep.best_value > 0.0)) return kExitViolation;
    if (!rep.converged) return kExitNumerical;
    return kExitPass;
}

int run_kappa(const Options& o) {
    const auto params = grushin::GrushinParams::create(o.m, o.k, o.gamma);
    const double kap = grushin::kappa_weighted(params, o.exponent, o.kappa_tol);
    std::printf("kappa(m=%d,k=%d,gamma=%g,exponent=%g) = %.12g\n", o.m, o.k, o.gamma, o.exponent,
                kap);
    if (!o.out.empty()) {
        std::string csv = "m,k,gamma,exponent,kappa\r\n";
        csv += std::to_string(o.m) + ',' + std::to_string(o.k) + ',' +
               grushin::format_number(o.gamma) + ',' + grushin::format_number(o.exponent) + ',' +
               grushin::format_number(kap) + "\r\n";
        grushin::write_file(o.out, csv);
    }
    if (!o.json_out.empty()) {
        nlohmann::ordered_json j{{"m", o.m},
                                 {"k", o.k},
                                 {"gamma", o.gamma},
                                 {"exponent", o.exponent},
                                 {"kappa", kap}};
        grushin::write_file(o.json_out, j.dump(2) + "\n");
    }
    return kExitPass;
}

int run_report(const Options& o) {
    if (!o.defaults) {
        std::cerr << "report: nothing requested (try --defaults)\n";
        return kExitConfig;
    }
    std::string csv = "name,value\r\n";
    for (const auto& [name, value] : kDefaults) {
        std::printf("%-24s %s\n", name.c_str(), value.c_str());
        csv += grushin::csv_escape(name) + ',' + grushin::csv_escape(value) + "\r\n";
    }
    if (!o.out.empty()) grushin::write_file(o.out, csv);
    if (!o.json_out.empty()) {
        nlohmann::ordered_json j;
        for (const auto& [name, value] : kDefaults) j[name] = value;
        grushin::write_file(o.json_out, j.dump(2) + "\n");
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for degenerate-gradient Hardy/Rellich inequalities"};
    app.require_subcommand(1);
    Options o;

    // config file values load first so that explicit flags override them
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config(argv[i + 1], o);
            } catch (const std::exception& e) {
                std::cerr << "invalid configuration: " << e.what() << "\n";
                return kExitConfig;
            }
        }
    }

    CLI::App* identities = app.add_subcommand("identities", "differential identity suite");
    add_common(identities, o);
    identities->add_option("--points", o.points, "sample point count");
    identities->add_option("--tol", o.tol, "residual tolerance for finite-difference checks");

    CLI::App* fuzz = app.add_subcommand("fuzz", "random test-function inequality fuzzing");
    add_common(fuzz, o);
    add_case_options(fuzz, o);
    fuzz->add_option("--samples", o.samples, "number of random test functions");

    CLI::App* sharpness =
        app.add_subcommand("sharpness", "near-extremal sweep with extrapolation to epsilon=0");
    add_common(sharpness, o);
    add_case_options(sharpness, o);
    sharpness->add_option("--eps", o.eps, "decreasing epsilon list")->delimiter(',');
    sharpness->add_option("--delta", o.delta, "mollification width list")->delimiter(',');
    sharpness->add_option("--rtol", o.rtol, "pass threshold on |limit-target|/target");
    sharpness->add_option("--plot", o.plot, "SVG plot output path");

    CLI::App* minimize =
        app.add_subcommand("minimize", "spline-family Rayleigh quotient minimization");
    add_common(minimize, o);
    add_case_options(minimize, o);
    minimize->add_option("--knots", o.knots, "spline knot count (8-16)");
    minimize->add_option("--rho-lo", o.rho_lo, "support lower gauge radius");
    minimize->add_option("--rho-hi", o.rho_hi, "support upper gauge radius");
    minimize->add_option("--budget", o.budget, "objective evaluations per restart");
    minimize->add_option("--restarts", o.restarts, "optimizer restarts");

    CLI::App* remainder =
        app.add_subcommand("remainder", "empirical estimate of an unknown remainder coefficient");
    add_common(remainder, o);
    add_case_options(remainder, o);
    remainder->add_option("--knots", o.knots, "spline knot count (8-16)");
    remainder->add_option("--rho-lo", o.rho_lo, "support lower gauge radius");
    remainder->add_option("--rho-hi", o.rho_hi, "support upper gauge radius");
    remainder->add_option("--budget", o.budget, "objective evaluations per restart");
    remainder->add_option("--restarts", o.restarts, "optimizer restarts");

    CLI::App* kappa = app.add_subcommand("kappa", "polar constant of the gauge reduction");
    add_common(kappa, o);
    kappa->add_option("--exponent", o.exponent, "gradient weight exponent");
    kappa->add_option("--tol", o.kappa_tol, "quadrature tolerance");

    CLI::App* report = app.add_subcommand("report", "reporting utilities");
    add_common(report, o);
    report->add_flag("--defaults", o.defaults, "print the versioned defaults table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (identities->parsed()) return run_identities(o);
        if (fuzz->parsed()) return run_fuzz(o);
        if (sharpness->parsed()) return run_sharpness(o);
        if (minimize->parsed()) return run_minimize(o);
        if (remainder->parsed()) return run_remainder(o);
        if (kappa->parsed()) return run_kappa(o);
        if (report->parsed()) return run_report(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
