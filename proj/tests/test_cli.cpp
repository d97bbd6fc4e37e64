#include "dgim/analyze.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace dgim;

namespace {

std::string data(const std::string& name) { return std::string(DGIM_TEST_DATA) + "/" + name; }

Json run_ok(std::vector<std::string> args) {
    std::string out;
    int code = run_cli(args, out);
    REQUIRE(code == 0);
    return Json::parse(out);
}

}  // namespace

TEST_CASE("analyze report for the full tent") {
    Json env = run_ok({"analyze", "--map", data("tent2.json")});
    const Json& r = env.at("report");
    CHECK(r.at("markov").at("s") == "2");
    CHECK(r.at("markov").at("incidence") == Json::parse("[[1,1],[1,1]]"));
    CHECK(r.at("decomposition").at("N") == 1);
    CHECK(r.at("transitivity").at("verdict") == "yes");
    CHECK(r.at("dimension_triple").at("kind") == "markov_limit");
    CHECK(r.at("dimension_triple").at("infinitesimals") == false);
    CHECK(r.at("state_range").at("backend") == "rational_denominator");
    CHECK(r.at("state_range").at("g") == "1");
    CHECK(r.at("state_range").at("N") == "2");
    CHECK(env.contains("timing"));
}

TEST_CASE("dimension report for the golden beta map") {
    Json env = run_ok({"dimension", "--map", data("beta_golden.json")});
    const Json& r = env.at("report");
    CHECK(r.at("beta_presentation").at("minimal_poly") == Json::parse("[-1,-1,1]"));
    CHECK(r.at("beta_presentation").at("B") == Json::parse("[[0,1],[1,1]]"));
    CHECK(r.at("beta_presentation").at("case") == 3);
    CHECK(r.at("beta_presentation").at("fallback") == false);
    CHECK(r.at("state_range").at("backend") == "unit_lattice");
}

TEST_CASE("compare detects the flipped pair by first-interval direction") {
    Json env = run_ok({"compare", "--map", data("ex198_a.json"), "--map2", data("ex198_b.json")});
    const Json& r = env.at("report");
    CHECK(r.at("increasing").at("verdict") == "not_conjugate");
    CHECK(r.at("increasing").at("reason") == "first-interval direction");
    CHECK(r.at("decreasing").at("verdict") == "not_conjugate");

    // a skew tent against its upside-down mirror: conjugate, but only by a
    // decreasing homeomorphism
    Json env2 =
        run_ok({"compare", "--map", data("skew_tent.json"), "--map2", data("valley_skew.json")});
    CHECK(env2.at("report").at("increasing").at("verdict") == "not_conjugate");
    CHECK(env2.at("report").at("decreasing").at("verdict") == "conjugate_increasing");

    // no decreasing self-conjugacy of the full tent: 0 is fixed but 1 is not
    Json env3 = run_ok({"compare", "--map", data("tent2.json"), "--map2", data("tent2.json")});
    CHECK(env3.at("report").at("increasing").at("verdict") == "conjugate_increasing");
    CHECK(env3.at("report").at("decreasing").at("verdict") == "not_conjugate");
}

TEST_CASE("reports are byte-identical across runs") {
    std::string out1, out2;
    std::vector<std::string> args{"analyze", "--map", data("beta_golden.json"), "--pf"};
    REQUIRE(run_cli(args, out1) == 0);
    REQUIRE(run_cli(args, out2) == 0);
    Json a = Json::parse(out1), b = Json::parse(out2);
    CHECK(a.at("report").dump() == b.at("report").dump());  // body deterministic
}

TEST_CASE("exit codes: parse errors and unsupported classes") {
    std::string out;
    CHECK(run_cli({"analyze", "--map", data("missing.json")}, out) == 2);
    CHECK(run_cli({"analyze"}, out) == 2);  // --map required
    // essentially injective input: decomposition is an unsupported request
    CHECK(run_cli({"decompose", "--map", data("identity.json")}, out) == 3);
    // tent parameter out of range
    CHECK(run_cli({"analyze", "--map", data("tent_bad.json")}, out) == 2);
}

TEST_CASE("entropy subcommand with explicit methods") {
    Json env = run_ok({"entropy", "--map", data("tent2.json"), "--method", "power_iteration",
                       "--method", "cylinder_count", "--depth", "10"});
    const Json& ent = env.at("report").at("entropy");
    REQUIRE(ent.size() == 2);
    CHECK(ent[0].at("method") == "power_iteration");
    CHECK(ent[0].at("bracket")[0] == "2");
    CHECK(ent[0].at("bracket")[1] == "2");
    CHECK(ent[1].at("count") == "1024");  // 2^10 cylinders for the full tent
}

TEST_CASE("oracle subcommands") {
    Json env = run_ok({"oracle", "pf-solve", "--map", data("beta_golden.json")});
    CHECK(env.at("report").at("residual_sup") == "0");

    // ga-equal brute force via a spec file
    std::string spec_path =
        (std::filesystem::temp_directory_path() / "dgim_ga_spec.json").string();
    {
        std::ofstream f(spec_path);
        f << R"({"A": [[1,1],[1,1]], "v1": [1,0], "v2": [0,1], "n1": 0, "n2": 0, "kmax": 12})";
    }
    Json g = run_ok({"oracle", "ga-equal", "--spec", spec_path});
    CHECK(g.at("report").at("equal") == true);

    Json c = run_ok({"oracle", "cylinders", "--map", data("beta_golden.json"), "--depth", "8"});
    CHECK(c.at("report").at("counts")[7] == "55");  // Fibonacci growth
}

TEST_CASE("pf subcommand reports the cycle verdict") {
    Json env = run_ok({"pf", "--map", data("tent_sqrt2.json")});
    const Json& pf = env.at("report").at("pf");
    CHECK(pf.at("N") == 2);
    CHECK(pf.at("cycle_verdict").at("pass") == true);
}

TEST_CASE("bounds are plumbed through") {
    // tent(sqrt 2) needs one closure round for the orbit of 0; bound 0 is too small
    Json env = run_ok({"markov", "--map", data("tent_sqrt2.json"), "--bound", "0"});
    CHECK(env.at("report").at("markov").at("status") == "NotMarkovWithinBound");
    Json env2 = run_ok({"markov", "--map", data("tent_sqrt2.json")});
    CHECK(env2.at("report").at("markov").contains("incidence"));
}

TEST_CASE("malformed inputs fail cleanly") {
    auto tmp = std::filesystem::temp_directory_path();
    auto write = [&](const char* name, const char* content) {
        std::ofstream f(tmp / name);
        f << content;
        return (tmp / name).string();
    };
    std::string out;
    CHECK(run_cli({"analyze", "--map", write("bad1.json", "{nope")}, out) == 2);
    CHECK(run_cli({"analyze", "--map", write("bad2.json", R"({"type":"wedge"})")}, out) == 2);
    CHECK(run_cli({"analyze", "--map", write("bad3.json", R"({"type":"tent"})")}, out) == 2);
    CHECK(run_cli({"analyze", "--map", write("bad4.json", R"({"type":"tent","s":"0/0"})")}, out) == 2);
    CHECK(run_cli({"analyze", "--map",
                   write("bad5.json",
                         R"({"type":"explicit","breakpoints":["0","1/2","1"],)"
                         R"("branches":[{"slope":"4","intercept":"0"},{"slope":"-2","intercept":"2"}]})")},
                  out) == 2);  // image escapes [0,1]
    // mixing unrelated algebraic numbers is rejected at ingestion
    CHECK(run_cli({"analyze", "--map",
                   write("bad6.json",
                         R"({"type":"explicit","breakpoints":["0",)"
                         R"({"minpoly":[-2,0,1],"interval":["1","2"],"value":["-1","1"]},"1"],)"
                         R"("branches":[{"slope":{"minpoly":[-1,-1,1],"interval":["1","2"],"value":["0","1"]},"intercept":"0"},)"
                         R"({"slope":"-2","intercept":"2"}]})")},
                  out) == 2);
}

TEST_CASE("generic-s switches the order and membership backends") {
    Json env = run_ok({"dimension", "--map", data("tent32.json"), "--generic-s"});
    const Json& r = env.at("report");
    CHECK(r.at("dimension_triple").at("kind") == "laurent_cyclic");
    CHECK(r.at("dimension_triple").at("generic_s") == true);
    CHECK(r.at("dimension_triple").at("infinitesimals") == false);
    CHECK(r.at("state_range").at("backend") == "generic_symbolic");
    // without the declaration the rational evaluation has a kernel
    Json env2 = run_ok({"dimension", "--map", data("tent32.json")});
    CHECK(env2.at("report").at("dimension_triple").at("infinitesimals") == true);
}

TEST_CASE("subcommand help is printed cleanly") {
    std::string out;
    CHECK(run_cli({"analyze", "--help"}, out) == 0);
    CHECK(out.find("--map") != std::string::npos);
}

TEST_CASE("text format renders without JSON wrapping") {
    std::string out;
    REQUIRE(run_cli({"markov", "--map", data("tent2.json"), "--format", "text"}, out) == 0);
    CHECK(out.find("incidence") != std::string::npos);
    CHECK(out.find("{") == std::string::npos);
}
