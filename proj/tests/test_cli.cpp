#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "twistor/cli.hpp"

using twistor::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"flow", "--mu"}).code == 2);
    CHECK(call({"portrait", "--mu-range", "1:2", "--rho-range", "1:2:3"}).code == 2);
    CHECK(call({"ricci", "--mu", "x"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    // Out of domain is a failure, not a usage error.
    CHECK(call({"ricci", "--family", "canonical", "--mu", "3"}).code == 1);
    CHECK(call({"flow", "--mu", "-1"}).code == 1);
}

TEST_CASE("verify with injected failure") {
    Result ok = call({"verify", "--suite", "kaehler", "--model", "formalw"});
    CHECK(ok.code == 0);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(j["summary"]["fail"] == 0);

    // An empty whitelist turns the documented errata into failures.
    const std::string path = "empty_errata.json";
    {
        std::ofstream f(path);
        f << R"({"errata": []})";
    }
    CHECK(call({"verify", "--suite", "ricci", "--model", "formalw"}).code == 0);
    CHECK(call({"verify", "--suite", "ricci", "--model", "formalw", "--errata", path}).code == 1);
    std::remove(path.c_str());
}

TEST_CASE("ricci and classify") {
    Result r = call({"ricci", "--family", "cy", "--mu", "1/2"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["ricci_metric"]["mu"] == "3/5");
    CHECK(j["ricci_metric"]["rho"] == "10");
    CHECK(j["einstein"] == false);
    auto can = nlohmann::json::parse(call({"ricci", "--family", "canonical", "--mu", "1/2"}).out);
    CHECK(can["einstein"] == true);
    CHECK(can["ricci_fiber"] == "10");

    Result c = call({"classify", "--family", "cy", "--mu", "0.25"});
    CHECK(c.code == 0);
    CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 1);
    auto k = nlohmann::json::parse(c.out);
    CHECK(k["backward"]["mu"] == "1");
    CHECK(k["forward"]["mu"] == "0");
    CHECK(k["ancient"] == true);
}

TEST_CASE("flow csv") {
    Result r = call({"flow", "--family", "cy", "--mu", "4", "--rho", "1", "--t0", "-5", "--t1", "end"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,mu,rho,rho_mu,invariant_C\n", 0) == 0);
    Result curv = call({"curvnorm", "--lambdas", "1,2"});
    CHECK(curv.out == "lambda,rm_norm_sq,nabla_rm_norm_sq,rm_norm_sq_decimal,nabla_rm_norm_sq_decimal\n"
                      "1,96,0,96,0\n2,66,0,66,0\n");
}
