#include "cli.hpp"

#include <forbconf/error.hpp>
#include <forbconf/search.hpp>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace forbconf;

namespace {

struct Run {
    int rc = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Run r;
    r.rc = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

nlohmann::json run_json(std::vector<std::string> args)
{
    args.push_back("--json");
    const auto r = run(args);
    REQUIRE(r.rc == 0);
    return nlohmann::json::parse(r.out);
}

std::string temp_file(const std::string & name, const std::string & text)
{
    const auto path = std::filesystem::temp_directory_path() / ("forbconf_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("family literals")
{
    CHECK(cli::parse_family_literal("K:2") == build_standard(StandardKind::Complete, 2));
    CHECK(cli::parse_family_literal("I:3") == build_standard(StandardKind::Identity, 3));
    CHECK(cli::parse_family_literal("Ic:3") == build_standard(StandardKind::IdentityComplement, 3));
    CHECK(cli::parse_family_literal("T:3") == build_standard(StandardKind::Triangular, 3));
    CHECK(cli::parse_family_literal("F:0,2,2,0") == build_F({0, 2, 2, 0}));
    CHECK(cli::parse_family_literal("tF:2,0,1,1,0") == replicate(2, build_F({0, 1, 1, 0})));
    CHECK(cli::parse_family_literal("F:1,1,0,0").rows() == 2);
    CHECK_THROWS_AS(cli::parse_family_literal("K:"), Error);
    CHECK_THROWS_AS(cli::parse_family_literal("F:1,2"), Error);
    CHECK_THROWS_AS(cli::parse_family_literal("Q:2"), Error);
    CHECK_THROWS_AS(cli::parse_family_literal("K:x"), Error);
    CHECK_THROWS_AS(cli::parse_family_literal("@/nonexistent/file"), Error);
}

TEST_CASE("contains")
{
    auto r = run({"contains", "--a", "I:4", "--f", "F:0,2,2,0"});
    CHECK(r.rc == 0);
    CHECK(r.out == "not contained\n");

    r = run({"contains", "--a", "K:4", "--f", "F:0,2,2,0"});
    CHECK(r.rc == 0);
    CHECK(r.out.rfind("contained\nrows:", 0) == 0);

    const auto j = run_json({"contains", "--a", "I:2", "--f", "F:0,1,1,0"});
    CHECK(j["contained"] == true);
    REQUIRE(j["witness"].is_object());
    for (auto row : j["witness"]["rows"])
        CHECK(row.get<int>() >= 1);
    CHECK(j["witness"]["columns"].size() == 2);

    const auto n = run_json({"contains", "--a", "T:5", "--f", "F:0,1,1,0"});
    CHECK(n["contained"] == false);
    CHECK(n["witness"].is_null());
}

TEST_CASE("forb matches the library")
{
    const auto j = run_json({"forb", "--m", "4", "--family", "F:0,2,2,0", "--threads", "1"});
    SearchProblem p;
    p.m = 4;
    p.problem = ConfigProblem{{build_F({0, 2, 2, 0})}, 1};
    p.options.threads = 1;
    const auto r = forb_exact(p);
    CHECK(j["value"].get<std::size_t>() == r.value);
    CHECK(j["complete"] == true);
    CHECK(j["nodes"].get<std::uint64_t>() == r.nodes);
    CHECK(j["m"] == 4);
    CHECK(j["t"] == 1);

    const auto human = run({"forb", "--m", "3", "--family", "K:2", "--threads", "1"});
    CHECK(human.rc == 0);
    CHECK(human.out.rfind("forb(3, {K:2}, t=1) = 4\ncomplete: yes\n", 0) == 0);

    const auto multi = run_json({"forb", "--m", "2", "--family", "F:0,1,1,0", "--t", "2"});
    CHECK(multi["value"] == 6);

    const auto all = run_json({"forb", "--m", "3", "--family", "K:2", "--all-optima"});
    CHECK(all["value"] == 4);
    CHECK(all["witnesses"].size() > 1);
}

TEST_CASE("xvalue")
{
    const auto j = run_json({"xvalue", "--family", "F:0,1,1,0"});
    CHECK(j["decided"] == true);
    CHECK(j["x"] == 2);
    CHECK(j["avoiding"] == "T");
    CHECK(j["predicted_exponent"] == 1);

    const auto one = run({"xvalue", "--family", "@" + temp_file("one.txt", "1 1\n1\n")});
    CHECK(one.rc == 0);
    CHECK(one.out.rfind("x = 1", 0) == 0);
}

TEST_CASE("construct")
{
    auto r = run({"construct", "--table", "0,2,2,0", "--t", "2", "--block", "4"});
    CHECK(r.rc == 0);
    const auto j = run_json({"construct", "--table", "0,2,2,0", "--t", "2", "--block", "4"});
    CHECK(j["spec"] == "IxT@4");
    CHECK(j["avoids"] == true);
    CHECK(j["rows"] == 8);
    CHECK(j["cols"] == 16);

    // K_3 is inside I x I x I, so the check fails with status 1
    r = run({"construct", "--spec", "IxIxI@3", "--check", "K:3"});
    CHECK(r.rc == 1);
    r = run({"construct", "--spec", "I@5", "--check", "K:2"});
    CHECK(r.rc == 0);
}

TEST_CASE("decompose")
{
    const auto j = run_json({"decompose", "--a", "T:4", "--row", "1", "--t", "2"});
    CHECK(j["row"] == 1);
    CHECK(j["identity_holds"] == true);
    CHECK(j["cols_A"].get<std::size_t>() == j["cols_BCD"].get<std::size_t>() + j["cols_C"].get<std::size_t>());

    CHECK(run({"decompose", "--a", "T:4", "--row", "5", "--t", "2"}).rc == 2);
    CHECK(run({"decompose", "--a", "T:4", "--row", "0", "--t", "2"}).rc == 2);
}

TEST_CASE("analyze")
{
    const auto j = run_json({"analyze", "--a", "I:4"});
    CHECK(j["m"] == 4);
    REQUIRE(j["layers"].size() == 1);
    CHECK(j["layers"][0]["i"] == 1);
    CHECK(j["layers"][0]["size"] == 4);
    CHECK(j["layers"][0]["sunflower"].is_object());

    // repeated columns are rejected
    CHECK(run({"analyze", "--a", "tF:2,0,1,1,0"}).rc == 2);
}

TEST_CASE("check")
{
    const auto j = run_json({"check", "--suite", "sandwich", "--m", "2", "3", "--family", "I:2", "--threads", "1"});
    CHECK(j["verdict"] == "pass");
    CHECK(j["reports"].size() == 2);
    CHECK(j["t"] == 2);

    const auto ind = run({"check", "--suite", "induction", "--m", "3", "--family", "tF:2,0,1,1,0", "--threads", "1"});
    CHECK(ind.rc == 0);
    CHECK(ind.out.find("verdict: pass") != std::string::npos);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).rc == 2);
    CHECK(run({"frob"}).rc == 2);
    CHECK(run({"forb", "--m", "3", "--family", "K:2", "--bogus"}).rc == 2);
    CHECK(run({"forb", "--family", "K:2"}).rc == 2);
    CHECK(run({"forb", "--m", "21", "--family", "K:2"}).rc == 2);
    CHECK(run({"forb", "--m", "3", "--family", "K:"}).rc == 2);

    const auto bad = run({"contains", "--a", temp_file("bad.txt", "2 2\n10\n0a\n"), "--f", "I:2"});
    CHECK(bad.rc == 2);
    CHECK(bad.err.find("illegal character") != std::string::npos);

    CHECK(run({"--help"}).rc == 0);
}
