#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pfchi/builtins.hpp"
#include "pfchi/cli.hpp"
#include "pfchi/errors.hpp"
#include "pfchi/geometry.hpp"
#include "pfchi/suites.hpp"

using namespace pfchi;
using nlohmann::json;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    f << body;
}

}  // namespace

TEST_CASE("builtin sets agree with their closed counts") {
    for (int64_t q : {5, 7, 9, 13}) {
        auto spec = builtins::make("legendre-surface", q);
        CHECK(geometry::count_points(spec, 1) == builtins::closed_count("legendre-surface", q, 1));
    }
    // one extension step, still cheap to enumerate
    CHECK(geometry::count_points(builtins::make("legendre-surface", 5), 2) ==
          builtins::closed_count("legendre-surface", 5, 2));
    for (const char* name : {"affine-line", "gm", "projective-line"})
        for (int n = 1; n <= 3; ++n)
            CHECK(geometry::count_points(builtins::make(name, 8), n) ==
                  builtins::closed_count(name, 8, n));

    CHECK(builtins::degree_bound("legendre-surface") == 4);
    CHECK(builtins::closed_series("gm", 4).counts.size() == 8);

    CHECK_THROWS_AS(builtins::make("legendre-surface", 8), PreconditionError);
    CHECK_THROWS_AS(builtins::make("no-such-set", 5), ParseError);
    CHECK_THROWS_AS(builtins::closed_count("gm", 6, 1), NotPrime);
}

TEST_CASE("curve parsing recovers weierstrass coefficients") {
    auto c = builtins::parse_curve("y^2 = x^3 + x", 5);
    CHECK(c.a1 == 0);
    CHECK(c.a3 == 0);
    CHECK(c.a4 == 1);
    CHECK(c.a6 == 0);
    CHECK(c.q == 5);

    auto d = builtins::parse_curve("y^2 + x*y = x^3 + x^2 + 1", 2);
    CHECK(d.a1 == 1);
    CHECK(d.a2 == 1);
    CHECK(d.a6 == 1);

    // sides swapped and terms scattered across the equation
    auto e = builtins::parse_curve("x^3 + 2*x = y^2", 7);
    CHECK(e.a1 == 0);
    CHECK(e.a4 == 2);
    auto f = builtins::parse_curve("y^2 - x^3 - 4 = 3*x", 13);
    CHECK(f.a4 == 3);
    CHECK(f.a6 == 4);

    CHECK_THROWS_AS(builtins::parse_curve("y^2 = x^4 + 1", 5), ParseError);
    CHECK_THROWS_AS(builtins::parse_curve("x = x", 5), ParseError);
    CHECK_THROWS_AS(builtins::parse_curve("y^2 != x^3", 5), ParseError);
    CHECK_THROWS_AS(builtins::parse_curve("y^2 = x^3", 6), NotPrime);
}

TEST_CASE("eval prints sentence values and counts") {
    std::string out;
    CHECK(run_cli({"eval", "--q", "7", "--formula", "mu[5,2] x:K1. x = x"}, &out) == 0);
    CHECK(out == "true\n");
    CHECK(run_cli({"eval", "--q", "7", "--formula", "x*x = 1", "--free", "x:K1", "--count-mod",
                   "2"},
                  &out) == 0);
    CHECK(out == "0\n");
    CHECK(run_cli({"eval", "--q", "4", "--formula", "exists x:K1. x+x = 1"}, &out) == 0);
    CHECK(out == "false\n");
    CHECK(run_cli({"eval", "--q", "7", "--formula", "x*x = 1", "--free", "x:K1"}, &out) == 0);
    CHECK(out == "2\n");
}

TEST_CASE("eval json mirrors the text results") {
    std::string out;
    CHECK(run_cli({"eval", "--q", "7", "--output", "json", "--formula", "mu[5,2] x:K1. x = x"},
                  &out) == 0);
    CHECK(json::parse(out)["result"] == true);
    CHECK(run_cli({"eval", "--q", "7", "--output", "json", "--formula", "x*x = 1", "--free",
                   "x:K1"},
                  &out) == 0);
    CHECK(json::parse(out)["count"] == 2);
    CHECK(run_cli({"eval", "--q", "7", "--output", "json", "--formula", "x*x = 1", "--free",
                   "x:K1", "--count-mod", "5"},
                  &out) == 0);
    auto doc = json::parse(out);
    CHECK(doc["residue"] == 2);
    CHECK(doc["modulus"] == 5);
}

TEST_CASE("eval reads formulas from files") {
    const std::string path = "cli_formula_tmp.txt";
    write_file(path, "mu[5,2] x:K1. x = x");
    std::string out;
    CHECK(run_cli({"eval", "--q", "7", "--file", path}, &out) == 0);
    CHECK(out == "true\n");
    std::remove(path.c_str());
    CHECK(run_cli({"eval", "--q", "7", "--file", path}, &out) == 1);
}

TEST_CASE("zeta fits curves builtins and variety files") {
    std::string out;
    CHECK(run_cli({"zeta", "--curve", "y^2 = x^3 + x", "--q", "5"}, &out) == 0);
    auto doc = json::parse(out);
    CHECK(doc["q"] == 5);
    CHECK(doc["A"] == json::array({1, -6, 5}));
    CHECK(doc["B"] == json::array({1, -2, 5}));

    CHECK(run_cli({"zeta", "--builtin", "projective-line", "--q", "7"}, &out) == 0);
    doc = json::parse(out);
    CHECK(doc["A"] == json::array({1, -8, 7}));
    CHECK(doc["B"] == json::array({1}));

    const std::string path = "cli_variety_tmp.txt";
    write_file(path, "ambient = affine 1\nvars = x\nbase = 7\n");
    CHECK(run_cli({"zeta", "--variety", path, "--genus", "1"}, &out) == 0);
    doc = json::parse(out);
    CHECK(doc["q"] == 7);
    CHECK(doc["A"] == json::array({1, -7}));
    CHECK(doc["B"] == json::array({1}));
    std::remove(path.c_str());
}

TEST_CASE("chi reports residues at prime power and composite moduli") {
    std::string out;
    CHECK(run_cli({"chi", "--curve", "y^2 = x^3 + x", "--q", "5", "--moduli", "9"}, &out) == 0);
    CHECK(out == "{\"9\":4}\n");

    // composite modulus is recombined from its prime power parts
    CHECK(run_cli({"chi", "--curve", "y^2 = x^3 + x", "--q", "5", "--moduli", "2,6"}, &out) == 0);
    auto doc = json::parse(out);
    CHECK(doc["2"] == 0);
    CHECK(doc["6"] == 4);

    // modulus sharing the base characteristic picks out the unit root part
    CHECK(run_cli({"chi", "--curve", "y^2 = x^3 + x", "--q", "5", "--ell", "5", "--k", "2"},
                  &out) == 0);
    CHECK(json::parse(out)["25"] == 14);

    CHECK(run_cli({"chi", "--curve", "y^2 = x^3 + x", "--q", "5", "--moduli", "3,9", "--output",
                   "csv"},
                  &out) == 0);
    CHECK(out == "modulus,value\n3,1\n9,4\n");
}

TEST_CASE("dualchi prints exact rationals") {
    std::string out;
    CHECK(run_cli({"dualchi", "--builtin", "legendre-surface", "--q", "13"}, &out) == 0);
    CHECK(out == "-12/169\n");
    CHECK(run_cli({"dualchi", "--builtin", "legendre-surface", "--q", "7"}, &out) == 0);
    CHECK(out == "-104/49\n");
    CHECK(run_cli({"dualchi", "--curve", "y^2 = x^3 + x", "--q", "5"}, &out) == 0);
    CHECK(out == "4/5\n");
    CHECK(run_cli({"dualchi", "--curve", "y^2 = x^3 + x", "--q", "5", "--output", "json"}, &out) ==
          0);
    CHECK(json::parse(out)["result"] == "4/5");
}

TEST_CASE("verify emits per-check records for a curve") {
    std::string out;
    CHECK(run_cli({"verify", "--curve", "y^2 = x^3 + 2", "--q", "7", "--ell", "2", "--k", "2"},
                  &out) == 0);
    CHECK(out.find("count_vs_trace") != std::string::npos);
    CHECK(out.find("pass") != std::string::npos);

    CHECK(run_cli({"verify", "--curve", "y^2 = x^3 + 2", "--q", "7", "--ell", "3", "--output",
                   "json"},
                  &out) == 0);
    auto recs = json::parse(out);
    REQUIRE(recs.is_array());
    CHECK(recs.size() == 3);
    for (const auto& r : recs) CHECK(r["pass"] == true);

    CHECK(run_cli({"verify", "--curve", "y^2 = x^3 + 2", "--q", "7", "--ell", "2", "--output",
                   "csv"},
                  &out) == 0);
    CHECK(out.rfind("modulus,check,lhs,rhs,pass\n", 0) == 0);

    // supersingular reduction really does miss the mod p^2 congruence
    CHECK(run_cli({"verify", "--curve", "y^2 = x^3 + 1", "--q", "25", "--ell", "5", "--k", "2"},
                  &out) == 4);
    CHECK(out.find("fail") != std::string::npos);
}

TEST_CASE("verify runs axiom checks on definable sources") {
    std::string out;
    CHECK(run_cli({"verify", "--builtin", "gm", "--q", "5", "--moduli", "2,3"}, &out) == 0);
    CHECK(out.find("pass") != std::string::npos);

    const std::string path = "cli_verify_variety_tmp.txt";
    write_file(path, "ambient = affine 2\nvars = x, y\nbase = 3\ny = x*x\n");
    CHECK(run_cli({"verify", "--variety", path, "--moduli", "2,4"}, &out) == 0);
    std::remove(path.c_str());
}

TEST_CASE("verify dispatches named suites") {
    std::string out;
    CHECK(run_cli({"verify", "--suite", "trace-count", "--q-max", "7"}, &out) == 0);
    CHECK(out.find("pass") != std::string::npos);

    CHECK(run_cli({"verify", "--suite", "dual-chi", "--output", "json"}, &out) == 0);
    auto doc = json::parse(out);
    CHECK(doc["suite"] == "dual-chi");
    CHECK(doc["pass"] == true);
    CHECK(doc["failures"] == 0);
    CHECK(doc["checks"].get<int64_t>() > 0);

    CHECK(run_cli({"verify", "--suite", "stabilization"}, &out) == 0);
    CHECK(run_cli({"verify", "--suite", "no-such-suite"}, &out) == 1);
}

TEST_CASE("exit codes separate the failure families") {
    std::string out, err;
    CHECK(run_cli({"eval", "--q", "7", "--formula", "x +"}, &out, &err) == 1);
    CHECK(!err.empty());
    CHECK(run_cli({"eval", "--q", "7"}, &out, &err) == 1);
    CHECK(run_cli({"eval", "--formula", "1 = 1"}, &out, &err) == 1);
    CHECK(run_cli({"chi", "--curve", "y^2 = x^3 + x", "--q", "5"}, &out, &err) == 1);
    CHECK(run_cli({"nonsense"}, &out, &err) == 1);
    CHECK(run_cli({}, &out, &err) == 1);

    CHECK(run_cli({"eval", "--q", "7", "--formula", "s(y) = y"}, &out, &err) == 2);
    CHECK(run_cli({"zeta", "--curve", "y^2 = x^3", "--q", "5"}, &out, &err) == 2);

    CHECK(run_cli({"eval", "--q", "5", "--bound", "100", "--formula",
                   "forall x:K3. exists y:K3. y = x"},
                  &out, &err) == 3);

    CHECK(run_cli({"--help"}, &out, &err) == 0);
    CHECK(out.find("pfchi") != std::string::npos);
    CHECK(run_cli({"eval", "--help"}, &out, &err) == 0);
}

TEST_CASE("environment bound is honored and overridden by the flag") {
    std::string out, err;
    ::setenv("PFCHI_BOUND", "100", 1);
    CHECK(run_cli({"eval", "--q", "5", "--formula", "forall x:K3. x = x"}, &out, &err) == 3);
    CHECK(run_cli({"eval", "--q", "5", "--formula", "forall x:K3. x = x", "--bound", "1000"},
                  &out, &err) == 0);
    CHECK(out == "true\n");
    ::setenv("PFCHI_BOUND", "junk", 1);
    CHECK(run_cli({"eval", "--q", "5", "--formula", "1 = 1"}, &out, &err) == 1);
    ::unsetenv("PFCHI_BOUND");
    CHECK(run_cli({"eval", "--q", "5", "--formula", "forall x:K3. x = x"}, &out) == 0);
    CHECK(out == "true\n");
}

TEST_CASE("suite registry names every battery and smoke runs a few") {
    auto names = suites::suite_names();
    CHECK(names.size() == 11);
    for (const char* expected : {"parity-elimination", "trace-count", "euler-axioms"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());

    auto parity = suites::parity_elimination(30);
    CHECK(parity.pass());
    CHECK(parity.checks > 0);
    auto traces = suites::trace_congruences({5});
    CHECK(traces.congruence.pass());
    CHECK(traces.determinant.pass());
    CHECK(!traces.fitted.empty());
    auto stab = suites::stabilization(suites::legendre_zetas({13}));
    CHECK(stab.pass());
}
