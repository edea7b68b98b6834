// End-to-end tests of the command-line tool, run as a subprocess. The binary
// path is injected by CMake as TWISTLAB_CLI_PATH.
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef TWISTLAB_CLI_PATH
#error "TWISTLAB_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(TWISTLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp_file(const std::string& name) {
    return std::string("/tmp/twistlab_clitest_") + name;
}

}  // namespace

TEST_CASE("example -> check round trip exits 0") {
    std::string f = tmp_file("sw.json");
    CHECK(run("example sweedler --lambda 2 --d 3 --s 2 -o " + f).exit_code == 0);
    CHECK(run("check " + f + " --mode bialgebra").exit_code == 0);
    CHECK(run("check " + f + " --mode quasitriangular").exit_code == 0);
    RunResult r = run("check " + f + " --mode triangular --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"command\": \"check\"") != std::string::npos);
    CHECK(r.out.find("\"pass\": false") == std::string::npos);
}

TEST_CASE("a mathematically broken document exits 1 with a residual") {
    std::string good = tmp_file("sw2.json"), bad = tmp_file("sw2_bad.json");
    REQUIRE(run("example sweedler --lambda 1 -o " + good).exit_code == 0);
    std::ifstream in(good);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    // Corrupt the R-matrix coefficient 1/2 -> 1/3 everywhere in elements.
    size_t pos = text.find("\"elements\"");
    REQUIRE(pos != std::string::npos);
    for (size_t i = text.find("1/2", pos); i != std::string::npos;
         i = text.find("1/2", i))
        text.replace(i, 3, "1/3");
    std::ofstream(bad) << text;
    RunResult r = run("check " + bad + " --mode quasitriangular --json");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("\"pass\": false") != std::string::npos);
    CHECK(r.out.find("\"residual\"") != std::string::npos);
}

TEST_CASE("unreadable input and bad usage exit 2") {
    CHECK(run("check /tmp/definitely_missing_xyz.json --mode bialgebra").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("check").exit_code == 2);
    std::string f = tmp_file("sw3.json");
    REQUIRE(run("example sweedler -o " + f).exit_code == 0);
    CHECK(run("check " + f + " --mode nosuch").exit_code == 2);
}

TEST_CASE("twist command rewrites the presentation and the R-matrix") {
    std::string f = tmp_file("sw4.json"), tw = tmp_file("sw4_tw.json");
    REQUIRE(run("example sweedler --lambda 0 --d 1 -o " + f).exit_code == 0);
    REQUIRE(run("twist " + f + " --element F -o " + tw).exit_code == 0);
    CHECK(run("check " + tw + " --mode triangular").exit_code == 0);
}

TEST_CASE("product emits a valid triangular product with projections") {
    std::string a = tmp_file("pa.json"), b = tmp_file("pb.json"), p = tmp_file("pp.json");
    REQUIRE(run("example sweedler --lambda 2 --d 3 --s 2 -o " + a).exit_code == 0);
    REQUIRE(run("example group_algebra --orders 2 -o " + b).exit_code == 0);
    REQUIRE(run("product " + a + " " + b + " --diag f,f -o " + p).exit_code == 0);
    CHECK(run("check " + p + " --mode triangular").exit_code == 0);
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("\"p1\"") != std::string::npos);
    CHECK(ss.str().find("\"p2\"") != std::string::npos);
}

TEST_CASE("decompose reports factors of a product R-matrix") {
    std::string a = tmp_file("da.json"), b = tmp_file("db.json"), p = tmp_file("dp.json");
    REQUIRE(run("example sweedler --lambda 1 -o " + a).exit_code == 0);
    REQUIRE(run("example group_algebra --orders 2 -o " + b).exit_code == 0);
    REQUIRE(run("product " + a + " " + b + " -o " + p).exit_code == 0);
    // Move the product R into document A under a fresh name.
    std::ifstream ina(a), inp(p);
    std::stringstream sa, sp;
    sa << ina.rdbuf();
    sp << inp.rdbuf();
    std::string atext = sa.str(), ptext = sp.str();
    size_t rs = ptext.find("\"R\": [");
    size_t re = ptext.find("]\n  }", rs);
    REQUIRE(rs != std::string::npos);
    REQUIRE(re != std::string::npos);
    std::string rbody = ptext.substr(rs + 5, re - rs - 5 + 1);
    size_t es = atext.find("\"elements\": {");
    REQUIRE(es != std::string::npos);
    atext.insert(es + 13, "\n    \"Rbig\": " + rbody + ",");
    std::string merged = tmp_file("da_merged.json");
    std::ofstream(merged) << atext;
    RunResult r = run("decompose " + merged + " " + b + " --element Rbig --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"kind\": \"rmatrix\"") != std::string::npos);
    CHECK(r.out.find("\"Q_central\": true") != std::string::npos);
}

TEST_CASE("weak mode validates an element over the factor pair") {
    std::string b = tmp_file("wz2.json"), w = tmp_file("weak.json");
    REQUIRE(run("example group_algebra --orders 2 -o " + b).exit_code == 0);
    std::ifstream in(b);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string z2 = ss.str();
    // Build a document carrying the nontrivial weak structure over (z2, z2).
    std::string doc = z2;
    size_t es = doc.find("\"elements\": {");
    REQUIRE(es != std::string::npos);
    doc.insert(es + 13,
               "\n    \"W\": [[0, 0, \"1/2\"], [0, 1, \"1/2\"], [1, 0, \"1/2\"], "
               "[1, 1, \"-1/2\"]],");
    size_t end = doc.rfind('}');
    std::string factors = z2;
    doc = doc.substr(0, end) + ",\n  \"factors\": [" + factors + ", " + factors +
          "]\n}\n";
    std::ofstream(w) << doc;
    CHECK(run("check " + w + " --mode weak:W:2").exit_code == 0);
    CHECK(run("check " + w + " --mode weak:W:3").exit_code == 2);
}
