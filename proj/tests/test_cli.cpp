#include "doctest.h"

#include "e8/cli.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "e8forge");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = e8::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "e8forge_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("cli build writes a constants file") {
    auto path = scratch("sc.json");
    auto r = run({"build", "--model", "z5", "--scalars", "canonical", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["dimension"] == 248);
    CHECK(doc["basis"].size() == 248);

    auto again = run({"build", "--model", "z5"});
    CHECK(again.code == 0);
    CHECK(again.out == slurp(path));
}

TEST_CASE("cli verify") {
    auto r = run({"verify", "--model", "z3sq", "--jacobi", "exhaustive"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["jacobi"]["triples_checked"] == 2573000);
    CHECK(doc["grading"]["fullness"] == true);

    auto bad = run({"verify", "--model", "z3", "--set", "b_1=1", "--jacobi", "sampled", "--samples", "20000", "--seed", "4"});
    CHECK(bad.code == 1);
    auto bd = nlohmann::json::parse(bad.out);
    CHECK(bd["passed"] == false);
    CHECK(bd["jacobi"]["failure_count"].get<int>() > 0);
    CHECK_FALSE(bd["jacobi"]["failures"].empty());

    auto again = run({"verify", "--model", "z3", "--set", "b_1=1", "--jacobi", "sampled", "--samples", "20000", "--seed", "4"});
    CHECK(again.out == bad.out);

    auto threaded = run({"verify", "--model", "z3", "--set", "b_1=1", "--jacobi", "sampled", "--samples", "20000", "--seed",
                         "4", "--threads", "2"});
    CHECK(threaded.out == bad.out);

    auto focused = run({"verify", "--model", "z5", "--set", "a_24=3", "--jacobi", "sampled", "--focus", "a_24"});
    CHECK(focused.code == 1);
}

TEST_CASE("cli constraints") {
    auto r = run({"constraints", "--model", "z3", "--set", "a_11=1", "--set", "a_22=1", "--set", "b_1=1"});
    CHECK(r.code == 1);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["id"] == "a11*a22+b1=0");
    CHECK(doc[0]["lhs_value"] == "1/1");
    CHECK(doc[0]["rhs_value"] == "-1/1");

    auto ok = run({"constraints", "--model", "z2z4"});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out).empty());
    auto all = run({"constraints", "--model", "z2z4", "--all"});
    CHECK(nlohmann::json::parse(all.out).size() == 30);

    // A zero scalar is still a valid point to evaluate equations at.
    CHECK(run({"constraints", "--model", "z3", "--set", "b_1=0"}).code == 1);
}

TEST_CASE("cli scalar files") {
    auto path = scratch("z4.json");
    auto exp = run({"export", "--model", "z4", "--set", "a_12=2/3", "--out", path.string()});
    CHECK(exp.code == 0);
    auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["a_12"] == "2/3");
    CHECK(doc["b1_1"] == "-1/1");

    auto r = run({"constraints", "--model", "z4", "--scalars", path.string()});
    CHECK(r.code == 1);

    auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"a_11": 1.5})";
    CHECK(run({"constraints", "--model", "z4", "--scalars", bad.string()}).code == 2);
    std::ofstream(bad) << R"({"a_99": "1"})";
    CHECK(run({"constraints", "--model", "z4", "--scalars", bad.string()}).code == 2);
    std::ofstream(bad) << R"({"a_11": "1"})";
    CHECK(run({"constraints", "--model", "z4", "--scalars", bad.string()}).code == 2);
    std::ofstream(bad) << "not json";
    CHECK(run({"constraints", "--model", "z4", "--scalars", bad.string()}).code == 2);
    CHECK(run({"constraints", "--model", "z4", "--scalars", scratch("missing.json").string()}).code == 2);

    auto basis = run({"export", "--model", "z6", "--format", "basis"});
    CHECK(nlohmann::json::parse(basis.out).size() == 248);
    auto consts = run({"export", "--model", "z6", "--format", "constants"});
    CHECK(consts.out == run({"build", "--model", "z6"}).out);
}

TEST_CASE("cli killing, ideal and dims") {
    auto k = run({"killing", "--model", "z5", "--samples", "200"});
    CHECK(k.code == 0);
    auto kd = nlohmann::json::parse(k.out);
    CHECK(kd["rank"] == 248);
    CHECK(kd["triples_checked"] == 200);

    auto i = run({"ideal", "--model", "z4", "--index", "0", "--index", "100"});
    CHECK(i.code == 0);
    CHECK(nlohmann::json::parse(i.out)["min_closure"] == 248);

    auto d = run({"dims", "--model", "z2z4"});
    CHECK(d.code == 0);
    auto dd = nlohmann::json::parse(d.out);
    CHECK(dd["dimension"] == 248);
    std::vector<int> dims;
    for (const auto& c : dd["components"]) dims.push_back(c["dim"]);
    CHECK(dims == std::vector<int>{36, 32, 36, 32, 24, 32, 24, 32});
}

TEST_CASE("cli usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"verify", "--model", "z7"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--jacobi", "fast"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--samples", "10"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--jacobi", "exhaustive", "--seed", "3"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--set", "b_1=0"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--set", "b_1=0.5"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--set", "b_1"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--set", "c_9=1"}).code == 2);
    CHECK(run({"verify", "--model", "z3", "--threads", "0"}).code == 2);
    CHECK(run({"ideal", "--model", "z3", "--index", "248"}).code == 2);
    CHECK(run({"export", "--model", "z3", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
