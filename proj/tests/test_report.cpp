#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "grushin/report.hpp"

using namespace grushin;

namespace {

SweepReport sample_sweep() {
    SweepReport rep;
    rep.id = CaseId::R1_41;
    rep.alpha = 3.0;
    rep.params = GrushinParams::create(2, 2, 1.0);
    rep.rows = {{0.2, 0.05, 15.9}, {0.1, 0.05, 15.1}, {0.05, 0.05, 14.6}};
    rep.target = 14.0625;
    rep.extrapolated_limit = 14.08;
    rep.relative_gap = 0.00124;
    return rep;
}

size_t count_substr(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("csv field quoting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
    CHECK(csv_escape("") == "");
}

TEST_CASE("number formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 14.0625, 1e-300, -2.5e17}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    // identical bits give identical text
    CHECK(format_number(0.1) == format_number(0.1));
}

TEST_CASE("sweep csv has the documented header, CRLF rows, and one row per point") {
    const auto rep = sample_sweep();
    const std::string csv = sweep_csv(rep);
    CHECK(csv.rfind("case,m,k,gamma,alpha,epsilon,delta,quotient,target,extrapolated,rel_gap\r\n",
                    0) == 0);
    CHECK(count_substr(csv, "\r\n") == 4);  // header + 3 rows
    CHECK(count_substr(csv, "R1_41") == 3);
}

TEST_CASE("sweep json mirrors the csv fields") {
    const auto rep = sample_sweep();
    const auto j = nlohmann::json::parse(sweep_json(rep));
    CHECK(j["case"] == "R1_41");
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][1]["epsilon"] == doctest::Approx(0.1));
    CHECK(j["target"] == doctest::Approx(14.0625));
    CHECK(j["extrapolated"] == doctest::Approx(14.08));
}

TEST_CASE("fuzz csv and json carry the case parameters") {
    FuzzReport rep;
    rep.id = CaseId::H_LP_33;
    rep.samples = 100;
    rep.min_normalized_gap = 3.5e-5;
    rep.seed = 42;
    const auto c = make_case(CaseId::H_LP_33, GrushinParams::create(1, 1, 1.0));
    const std::string csv = fuzz_csv(rep, c);
    CHECK(csv.rfind("case,m,k,gamma,alpha,t,p,q,samples,min_normalized_gap,violations,", 0) == 0);
    CHECK(count_substr(csv, "\r\n") == 2);
    const auto j = nlohmann::json::parse(fuzz_json(rep, c));
    CHECK(j["case"] == "H_LP_33");
    CHECK(j["samples"] == 100);
    CHECK(j["violations"] == 0);
}

TEST_CASE("identities csv lists one row per check") {
    IdentitySuiteReport rep;
    rep.params = GrushinParams::create(1, 1, 1.0);
    rep.n_points = 10;
    IdentityCheck ch;
    ch.residual.name = "orthogonality";
    ch.residual.max_scaled_residual = 1e-9;
    ch.residual.points = 10;
    ch.tol = 1e-5;
    ch.pass = true;
    rep.checks = {ch, ch};
    const std::string csv = identities_csv(rep);
    CHECK(count_substr(csv, "orthogonality") == 2);
    CHECK(count_substr(csv, "true") == 2);
}

TEST_CASE("svg plot contains axes, per-delta polylines, and the target line") {
    const auto rep = sample_sweep();
    const std::string svg = sweep_svg(rep);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count_substr(svg, "<polyline") == 1);  // single delta
    CHECK(count_substr(svg, "target") >= 1);
    CHECK(count_substr(svg, "stroke-dasharray") == 1);
    CHECK(svg.find("epsilon") != std::string::npos);
    CHECK(svg.find("quotient") != std::string::npos);

    auto two = rep;
    two.rows.push_back({0.2, 0.025, 16.4});
    two.rows.push_back({0.1, 0.025, 15.3});
    CHECK(count_substr(sweep_svg(two), "<polyline") == 2);
}

TEST_CASE("write_file writes bytes verbatim and reports failures") {
    const std::string path = "test_report_tmp.csv";
    write_file(path, "a,b\r\n1,2\r\n");
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "a,b\r\n1,2\r\n");
    in.close();
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_file("no_such_dir_xyz/file.csv", "x"), std::runtime_error);
}
