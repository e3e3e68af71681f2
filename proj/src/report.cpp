#include "grushin/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grushin {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string row_end() { return "\r\n"; }

}  // namespace

std::string sweep_csv(const SweepReport& rep) {
    std::string out =
        "case,m,k,gamma,alpha,epsilon,delta,quotient,target,extrapolated,rel_gap" + row_end();
    for (const SweepRow& r : rep.rows) {
        out += csv_escape(case_name(rep.id)) + ',' + std::to_string(rep.params.m) + ',' +
               std::to_string(rep.params.k) + ',' + format_number(rep.params.gamma) + ',' +
               format_number(rep.alpha) + ',' + format_number(r.epsilon) + ',' +
               format_number(r.delta) + ',' + format_number(r.quotient) + ',' +
               format_number(rep.target) + ',' + format_number(rep.extrapolated_limit) + ',' +
               format_number(rep.relative_gap) + row_end();
    }
    return out;
}

std::string fuzz_csv(const FuzzReport& rep, const InequalityCase& c) {
    std::string out =
        "case,m,k,gamma,alpha,t,p,q,samples,min_normalized_gap,violations,divergent_lhs,"
        "inconclusive,seed" +
        row_end();
    out += csv_escape(case_name(rep.id)) + ',' + std::to_string(c.params.m) + ',' +
           std::to_string(c.params.k) + ',' + format_number(c.params.gamma) + ',' +
           format_number(c.alpha) + ',' + format_number(c.t) + ',' + format_number(c.p) + ',' +
           format_number(c.q) + ',' + std::to_string(rep.samples) + ',' +
           format_number(rep.min_normalized_gap) + ',' + std::to_string(rep.violations) + ',' +
           std::to_string(rep.divergent_lhs) + ',' + std::to_string(rep.inconclusive) + ',' +
           std::to_string(rep.seed) + row_end();
    return out;
}

std::string identities_csv(const IdentitySuiteReport& rep) {
    std::string out = "identity,points,max_scaled_residual,tol,pass" + row_end();
    for (const IdentityCheck& ch : rep.checks) {
        out += csv_escape(ch.residual.name) + ',' + std::to_string(ch.residual.points) + ',' +
               format_number(ch.residual.max_scaled_residual) + ',' + format_number(ch.tol) +
               ',' + (ch.pass ? "true" : "false") + row_end();
    }
    return out;
}

std::string estimate_csv(const EstimateReport& rep, const InequalityCase& c) {
    std::string out =
        "case,label,m,k,gamma,alpha,best_value,seed_value,converged,evaluations,seed" + row_end();
    out += csv_escape(case_name(rep.id)) + ',' + csv_escape(rep.label) + ',' +
           std::to_string(c.params.m) + ',' + std::to_string(c.params.k) + ',' +
           format_number(c.params.gamma) + ',' + format_number(c.alpha) + ',' +
           format_number(rep.best_value) + ',' + format_number(rep.seed_value) + ',' +
           (rep.converged ? "true" : "false") + ',' + std::to_string(rep.evaluations) + ',' +
           std::to_string(rep.seed) + row_end();
    return out;
}

namespace {

nlohmann::ordered_json case_json(const InequalityCase& c) {
    return {{"m", c.params.m},   {"k", c.params.k}, {"gamma", c.params.gamma},
            {"alpha", c.alpha},  {"t", c.t},        {"p", c.p},
            {"q", c.q}};
}

}  // namespace

std::string sweep_json(const SweepReport& rep) {
    nlohmann::ordered_json j;
    j["case"] = case_name(rep.id);
    j["m"] = rep.params.m;
    j["k"] = rep.params.k;
    j["gamma"] = rep.params.gamma;
    j["alpha"] = rep.alpha;
    j["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& r : rep.rows)
        j["rows"].push_back({{"epsilon", r.epsilon}, {"delta", r.delta}, {"quotient", r.quotient}});
    j["target"] = rep.target;
    j["extrapolated"] = rep.extrapolated_limit;
    j["rel_gap"] = rep.relative_gap;
    return j.dump(2) + "\n";
}

std::string fuzz_json(const FuzzReport& rep, const InequalityCase& c) {
    nlohmann::ordered_json j = case_json(c);
    j["case"] = case_name(rep.id);
    j["samples"] = rep.samples;
    j["min_normalized_gap"] = rep.min_normalized_gap;
    j["violations"] = rep.violations;
    j["divergent_lhs"] = rep.divergent_lhs;
    j["inconclusive"] = rep.inconclusive;
    j["seed"] = rep.seed;
    return j.dump(2) + "\n";
}

std::string identities_json(const IdentitySuiteReport& rep) {
    nlohmann::ordered_json j;
    j["m"] = rep.params.m;
    j["k"] = rep.params.k;
    j["gamma"] = rep.params.gamma;
    j["points"] = rep.n_points;
    j["seed"] = rep.seed;
    j["vacuous"] = rep.vacuous;
    j["pass"] = rep.pass;
    j["checks"] = nlohmann::ordered_json::array();
    for (const IdentityCheck& ch : rep.checks)
        j["checks"].push_back({{"identity", ch.residual.name},
                               {"max_scaled_residual", ch.residual.max_scaled_residual},
                               {"tol", ch.tol},
                               {"pass", ch.pass}});
    return j.dump(2) + "\n";
}

std::string estimate_json(const EstimateReport& rep, const InequalityCase& c) {
    nlohmann::ordered_json j = case_json(c);
    j["case"] = case_name(rep.id);
    j["label"] = rep.label;
    j["best_value"] = rep.best_value;
    j["seed_value"] = rep.seed_value;
    j["converged"] = rep.converged;
    j["evaluations"] = rep.evaluations;
    j["seed"] = rep.seed;
    return j.dump(2) + "\n";
}

std::string sweep_svg(const SweepReport& rep) {
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    double x_lo = kInfinity, x_hi = -kInfinity, y_lo = rep.target, y_hi = rep.target;
    for (const SweepRow& r : rep.rows) {
        x_lo = std::min(x_lo, r.epsilon);
        x_hi = std::max(x_hi, r.epsilon);
        y_lo = std::min(y_lo, r.quotient);
        y_hi = std::max(y_hi, r.quotient);
    }
    if (rep.rows.empty()) {
        x_lo = 0.0;
        x_hi = 1.0;
    }
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
    const auto sx = [&](double e) { return ml + (e - x_lo) / (x_hi - x_lo) * (W - ml - mr); };
    const auto sy = [&](double q) { return H - mb - (q - y_lo) / (y_hi - y_lo) * (H - mt - mb); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // axes
    s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">epsilon</text>\n";
    s << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << (mt + H - mb) / 2 << ")\">quotient</text>\n";
    // axis extremes
    s << "<text x=\"" << ml << "\" y=\"" << H - mb + 16
      << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(x_lo) << "</text>\n";
    s << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 16
      << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(x_hi) << "</text>\n";
    s << "<text x=\"" << ml - 6 << "\" y=\"" << sy(y_lo) << "\" text-anchor=\"end\" font-size=\"11\">"
      << format_number(y_lo) << "</text>\n";
    s << "<text x=\"" << ml - 6 << "\" y=\"" << sy(y_hi) + 8
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(y_hi) << "</text>\n";
    // target line
    s << "<line x1=\"" << ml << "\" y1=\"" << sy(rep.target) << "\" x2=\"" << W - mr << "\" y2=\""
      << sy(rep.target) << "\" stroke=\"red\" stroke-dasharray=\"6 4\"/>\n";
    s << "<text x=\"" << W - mr << "\" y=\"" << sy(rep.target) - 4
      << "\" text-anchor=\"end\" font-size=\"11\" fill=\"red\">target "
      << format_number(rep.target) << "</text>\n";
    // one polyline per delta
    std::map<double, std::vector<const SweepRow*>> by_delta;
    for (const SweepRow& r : rep.rows) by_delta[r.delta].push_back(&r);
    const char* colors[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};
    int ci = 0;
    for (const auto& [delta, rows] : by_delta) {
        s << "<polyline fill=\"none\" stroke=\"" << colors[ci % 4] << "\" points=\"";
        std::vector<const SweepRow*> sorted = rows;
        std::sort(sorted.begin(), sorted.end(),
                  [](const SweepRow* a, const SweepRow* b) { return a->epsilon < b->epsilon; });
        for (const SweepRow* r : sorted) s << sx(r->epsilon) << ',' << sy(r->quotient) << ' ';
        s << "\"/>\n";
        s << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 14 + 14 * ci << "\" font-size=\"11\" fill=\""
          << colors[ci % 4] << "\">delta " << format_number(delta) << "</text>\n";
        ++ci;
    }
    s << "</svg>\n";
    return s.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << contents;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace grushin
