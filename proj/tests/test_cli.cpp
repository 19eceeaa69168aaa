#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tmp_path() {
    static int counter = 0;
    return "/tmp/cdcurv_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
}

RunResult run(const std::string& args) {
    const char* bin = std::getenv("CDCURV_BIN");
    REQUIRE(bin != nullptr);
    const std::string cap = tmp_path();
    const int rc = std::system((std::string(bin) + " " + args + " >" + cap + " 2>&1").c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(cap);
    std::remove(cap.c_str());
    return r;
}

const std::string kP2 = "'{\"family\":\"power\",\"m\":1,\"k\":2.0}'";
const std::string kP4 = "'{\"family\":\"power\",\"m\":1,\"k\":4.0}'";

}  // namespace

TEST_CASE("kernel inspection emits coefficients and inverse") {
    auto r = run("kernel --kernel " + kP2);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["descriptor"]["family"] == "power");
    REQUIRE(j["a"].size() == 10);
    CHECK(j["a"][3].get<double>() == doctest::Approx(4.0));
    CHECK(j["b"] == json::array({1, -2, 1}));
    CHECK(j["config"]["command"] == "kernel");
    CHECK(j["config"]["seed"] == 1);
}

TEST_CASE("exit codes follow the error taxonomy") {
    // config errors -> 5
    CHECK(run("kernel --kernel '{\"family\":\"nope\",\"m\":1}'").code == 5);
    CHECK(run("kernel --kernel not-a-json-and-not-a-file").code == 5);
    CHECK(run("reproduce no-such-example").code == 5);
    CHECK(run("similarity --kernel " + kP2 +
              " --kernel2 '{\"family\":\"power\",\"m\":2,\"k\":1.0}'")
              .code == 5);
    // usage errors -> 5
    CHECK(run("curvature --kernel " + kP2).code == 5);
    CHECK(run("").code == 5);
    // domain errors -> 2
    CHECK(run("curvature --kernel " + kP2 +
              " --grid '{\"type\":\"ray\",\"direction\":[[1.0,0.0]],\"radii\":[1.0]}'")
              .code == 2);
}

TEST_CASE("curvature CSV carries the labelled header and grid values") {
    auto r = run("curvature --kernel " + kP2 + " --format csv --grid "
                 "'{\"type\":\"ray\",\"direction\":[[1.0,0.0]],\"radii\":[0.0,0.5]}'");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("w1_re,w1_im,K[1][1][1][1]_re,K[1][1][1][1]_im\n", 0) == 0);
    // first row is the origin: K = -k = -2
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    double wre, wim, kre, kim;
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &wre, &wim, &kre, &kim) == 4);
    CHECK(wre == 0.0);
    CHECK(kre == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(kim == doctest::Approx(0.0));
}

TEST_CASE("scan reports the constant Power(4)/Power(2) ratio") {
    auto r = run("scan --kernel " + kP4 + " --kernel2 " + kP2 + " --radii 0.0 0.4 0.8");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["values"].size() == 3);
    for (const auto& v : j["values"]) CHECK(v.get<double>() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("identical runs produce byte-identical output files") {
    const std::string f1 = tmp_path(), f2 = tmp_path();
    const std::string args = "similarity --kernel '{\"family\":\"logplus\",\"m\":1}' --kernel2 "
                             "'{\"family\":\"power\",\"m\":1,\"k\":1.0}' --low 0.5 --high 10 --out ";
    REQUIRE(run(args + f1).code == 0);
    REQUIRE(run(args + f2).code == 0);
    const std::string b1 = slurp(f1), b2 = slurp(f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    REQUIRE_FALSE(b1.empty());
    CHECK(b1 == b2);
    json j = json::parse(b1);
    CHECK(j["verdict"]["outcome"] == "divergent_ray");
    CHECK(j["verdict"]["direction"] == "down");
    CHECK(j["verdict"]["l_exit"] == 11);
}

TEST_CASE("reproduce runs a gallery item and reports per-check lines") {
    auto r = run("reproduce det-lemma");
    CHECK(r.code == 0);
    CHECK(r.out.find("det-lemma: det lemma relative residual:") != std::string::npos);
    CHECK(r.out.find("det-lemma: PASS") != std::string::npos);
}
