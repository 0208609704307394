#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "rho/io.hpp"

using namespace rho;

TEST_CASE("csv doubles round-trip at 17 significant digits") {
    CHECK(csv_double(0.5) == "0.5");
    CHECK(csv_double(1.0 / 3.0) == "0.33333333333333331");
    for (double x : {5.0 / 7.0, 3.0 * std::sqrt(3.0), 1e-300, 6.62607015e-34, -0.1}) {
        CHECK(std::stod(csv_double(x)) == x);
    }
}

TEST_CASE("spectra csv layout") {
    std::ostringstream os;
    const auto spec = EnsembleSpec::induced(2, 3);
    write_spectra_csv(os, spec, {{0.25, 0.75}, {0.4, 0.6}}, 99, "direct");
    const std::string text = os.str();
    CHECK(text.find("# rho-ensembles") != std::string::npos);
    CHECK(text.find("# ensemble: induced") != std::string::npos);
    CHECK(text.find("# n: 2") != std::string::npos);
    CHECK(text.find("# k: 3") != std::string::npos);
    CHECK(text.find("# seed: 99") != std::string::npos);
    CHECK(text.find("# count: 2") != std::string::npos);
    CHECK(text.find("# sampler: direct") != std::string::npos);
    CHECK(text.find("0.25,0.75\n") != std::string::npos);
    CHECK(text.find("interchanged") == std::string::npos);  // no swap here
}

TEST_CASE("swap note appears for k < n") {
    std::ostringstream os;
    write_spectra_csv(os, EnsembleSpec::induced(4, 2), {{0.0, 0.0, 0.3, 0.7}}, 1, "direct");
    CHECK(os.str().find("interchanged") != std::string::npos);
}

TEST_CASE("density csv layout") {
    std::ostringstream os;
    write_density_csv(os, {{"mode", "asymptotic-hs"}}, {{1.0, 0.25}, {2.0, 0.125}});
    const std::string text = os.str();
    CHECK(text.find("# mode: asymptotic-hs") != std::string::npos);
    CHECK(text.find("x,density\n") != std::string::npos);
    CHECK(text.find("1,0.25\n") != std::string::npos);
}

TEST_CASE("exact value record schema") {
    const json j = exact_value_json(EnsembleSpec::induced(2, 3), "trace_moment", 2,
                                    BigRational(5, 7));
    CHECK(j["ensemble"] == "induced");
    CHECK(j["n"] == 2);
    CHECK(j["k"] == 3);
    CHECK(j["quantity"] == "trace_moment");
    CHECK(j["q"] == 2);
    CHECK(j["exact"] == "5/7");
    CHECK(j["decimal"] == "0.7142857142857143");

    // q == 0 means "no moment order field"
    const json e = exact_value_json(EnsembleSpec::hs(2), "mean_entropy", 0, BigRational(1, 3));
    CHECK_FALSE(e.contains("q"));
    CHECK(e["exact"] == "1/3");
}

TEST_CASE("pi-square record schema") {
    const json j = pi_square_json(PiSquareValue{BigRational(17, 36), BigRational(-1, 30)});
    CHECK(j["a"] == "17/36");
    CHECK(j["b"] == "-1/30");
    const std::string dec = j["decimal"].get<std::string>();
    CHECK(dec.substr(0, 10) == "0.14323540");
}

TEST_CASE("estimate report record") {
    EstimateReport r;
    r.quantity = "hs n=2 Tr rho^2";
    r.count = 1000;
    r.estimate = 0.801;
    r.std_error = 0.002;
    r.has_target = true;
    r.target = 0.8;
    r.target_repr = "4/5";
    r.z = 0.5;
    r.pass = true;
    const json j = estimate_report_json(r);
    CHECK(j["quantity"] == "hs n=2 Tr rho^2");
    CHECK(j["target_repr"] == "4/5");
    CHECK(j["pass"] == true);
    CHECK(j["z_threshold"] == 4.0);

    r.abs_tol = 0.1;
    const json ja = estimate_report_json(r);
    CHECK(ja["abs_tol"] == 0.1);
    CHECK_FALSE(ja.contains("z_threshold"));
}

TEST_CASE("check result record") {
    CheckResult c;
    c.name = "sample check";
    c.criterion = 3;
    c.suite = "exact";
    c.pass = true;
    c.elapsed_s = 0.125;
    c.detail = "ok";
    const json j = check_result_json(c);
    CHECK(j["name"] == "sample check");
    CHECK(j["criterion"] == 3);
    CHECK(j["suite"] == "exact");
    CHECK(j["pass"] == true);

    const json arr = check_results_json({c, c});
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 2);
}

TEST_CASE("json serialization round-trips") {
    const json j = exact_value_json(EnsembleSpec::bures(2), "trace_moment", 2, BigRational(7, 8));
    const json back = json::parse(j.dump());
    CHECK(back == j);
    CHECK(back["exact"] == "7/8");
}
