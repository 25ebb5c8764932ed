#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "chainbf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = chainbf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bf on the reference table") {
    const Result r = invoke({"bf", "--table", "13,9,4,18", "--k", "1", "--prior", "uniform", "--beta", "4"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["bf0"]["value"].get<double>() == doctest::Approx(11.472).epsilon(1e-4));
    CHECK(j["results"][0]["numerator"]["method"] == "enumeration");
    CHECK(j["input"]["table"] == json::array({13, 9, 4, 18}));
}

TEST_CASE("zero table gives unit Bayes factors") {
    const Result r = invoke({"bf", "--table", "0,0,0,0", "--k", "1..2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["bf0"]["value"].get<double>() == doctest::Approx(1.0));
    for (const auto& row : j["results"]) CHECK(row["bf"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("fisher command") {
    Result r = invoke({"fisher", "--table", "13,9,4,18"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["fisher"]["p_two_sided"].get<double>() == doctest::Approx(0.012157).epsilon(1e-4));
    r = invoke({"fisher", "--table", "1,0,0,1"});
    j = json::parse(r.out);
    CHECK(j["fisher"]["p_two_sided"].get<double>() == doctest::Approx(1.0));
    CHECK(j["fisher"]["or_sample"] == "inf");
    r = invoke({"fisher", "--table", "1,0,0,1", "--format", "csv"});
    CHECK(r.out.rfind("p_two_sided,or_conditional_mle,or_sample,degenerate\n", 0) == 0);
}

TEST_CASE("bad input exits with code 2") {
    CHECK(invoke({"bf", "--table", "1,2,3"}).code == 2);
    CHECK(invoke({"bf", "--table", "1,2,3,-4"}).code == 2);
    CHECK(invoke({"bf", "--table", "a,b,c,d"}).code == 2);
    CHECK(invoke({"bf", "--table", "1,2,3,4", "--prior", "t=1.5"}).code == 2);
    CHECK(invoke({"bf", "--table", "1,2,3,4", "--k", "2", "--prior", "t=0.2"}).code == 2);
    CHECK(invoke({"bf", "--table", "1,2,3,4", "--method", "magic"}).code == 2);
    CHECK(invoke({"bf"}).code == 2);
    CHECK(invoke({"nonsense"}).code == 2);
    CHECK(invoke({"figures", "sideways"}).code == 2);
    const Result r = invoke({"bf", "--table", "1,2"});
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("feasibility refusal exits with code 3") {
    const Result r = invoke({"bf", "--table", "400,300,200,500", "--k", "2", "--method", "dp"});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("Monte Carlo output is byte-identical across runs and thread counts") {
    const std::vector<std::string> base{"bf", "--table", "5,2,1,4", "--k", "2", "--method", "monte_carlo",
                                        "--samples", "20000", "--seed", "9"};
    const Result a = invoke(base);
    const Result b = invoke(base);
    auto threaded = base;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const Result c = invoke(threaded);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const json j = json::parse(a.out);
    CHECK(j["results"][0]["numerator"]["seed"] == 9);
    CHECK(j["results"][0]["numerator"].contains("se"));
}

TEST_CASE("bound command") {
    const Result r = invoke({"bound", "--table", "13,9,4,18", "--k", "1..3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][1]["ratio"].get<double>() == doctest::Approx(0.4));
    CHECK(j["rows"][0]["bound"].get<double>() > j["rows"][1]["bound"].get<double>());
}

TEST_CASE("figures and crossings") {
    Result r = invoke({"figures", "betas"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,x,density\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 5 * 199);
    r = invoke({"figures", "scores", "--k", "1"});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 141);
    r = invoke({"crossings", "--k", "1..2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["rows"][0]["crossings"].empty());
    CHECK(j["rows"][1]["crossings"].size() == 2);
}

TEST_CASE("out flag writes a file") {
    const std::string path = "chainbf_cli_test_out.json";
    const Result r = invoke({"fisher", "--table", "2,1,1,2", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(json::parse(ss.str())["command"] == "fisher");
    std::remove(path.c_str());
}
