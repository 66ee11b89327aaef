#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bbring/cli.hpp"

using nlohmann::json;

namespace {

std::string ring_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(BBRING_TEST_SCRATCH) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

struct Run {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = bbring::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("element list splitting") {
    using bbring::cli::split_element_list;
    CHECK(split_element_list("4 6") == std::vector<std::string>{"4", "6"});
    CHECK(split_element_list("(1,2) | (0, 1)") == std::vector<std::string>{"(1,2)", "(0, 1)"});
    CHECK(split_element_list("[1, 1] [0,1]") == std::vector<std::string>{"[1, 1]", "[0,1]"});
    CHECK(split_element_list("1,0;0,0|0,1;1,0") == std::vector<std::string>{"1,0;0,0", "0,1;1,0"});
}

TEST_CASE("basis report") {
    const auto z12 = ring_file("z12.ring", "ring = modular 12\n");
    const auto r = run({"basis", "--ring", z12, "--ideal", "4", "--json", "--verify"});
    REQUIRE(r.code == 0);
    const json d = r.doc();
    CHECK(d["schema"] == "bbring.run/1");
    CHECK(d["command"] == "basis");
    CHECK(d["result"]["orders"] == json::array({3}));
    CHECK(d["result"]["order"] == 3);
    CHECK(d["result"]["tensor"] == json::parse("[[[1]]]"));
    CHECK(d["result"]["generators"] == json::array({"4"}));
    CHECK(d["verified"] == true);
    for (const char* key : {"command", "ring", "inputs", "result", "queries", "confidence", "seed"})
        CHECK(d.contains(key));
}

TEST_CASE("verdicts and exit codes") {
    const auto z12 = ring_file("z12.ring", "ring = modular 12\n");
    auto prime = run({"prime", "--ring", z12, "--ideal", "4", "--json"});
    REQUIRE(prime.code == 0);
    CHECK(prime.doc()["result"]["verdict"] == "not-prime");
    CHECK(run({"prime", "--ring", z12, "--ideal", "3", "--json"}).doc()["result"]["verdict"] == "prime");

    auto solve = run({"solve", "--ring", z12, "--element", "4", "--rhs", "2", "--json"});
    CHECK(solve.code == 0);
    CHECK(solve.doc()["result"]["solution"] == "no solution");

    CHECK(run({"frobnicate", "--ring", z12}).code == 2);
    CHECK(run({"order", "--ring", z12, "--ideal", "banana"}).code == 2);
    CHECK(run({"order", "--ring", ring_file("bad.ring", "ring = modular 1\n"), "--ideal", "0"}).code == 2);
    CHECK(run({"inverse", "--ring", z12, "--element", "4"}).code == 3);
    CHECK(run({"prime", "--ring", z12, "--ideal", "1"}).code == 3);
    const auto big = ring_file("big.ring", "ring = modular 4194304\n");
    CHECK(run({"order", "--ring", big, "--ideal", "2", "--verify"}).code == 3);
}

TEST_CASE("every command verifies on a desk ring") {
    const auto m = ring_file("m2.ring", "ring.kind = matrix\nring.k = 2\nring.base = modular 2\n");
    const std::vector<std::vector<std::string>> cmds = {
        {"basis", "--ideal", "1,0;0,0", "--side", "left"},
        {"order", "--ideal", "1,0;0,0", "--side", "right"},
        {"ring-order"},
        {"equal", "--ideal", "1,0;0,0", "--ideal2", "0,1;0,0"},
        {"member", "--ideal", "1,0;0,0", "--side", "left", "--element", "0,0;1,0"},
        {"witness", "--ideal", "1,0;0,0", "--side", "left", "--element", "0,0;1,0"},
        {"intersect", "--ideal", "1,0;0,0", "--ideal2", "0,1;0,0", "--side", "left"},
        {"colon", "--ideal", "1,0;0,0", "--ideal2", "0,1;0,0", "--side", "left"},
        {"annihilate", "--ideal", "1,0;0,0"},
        {"unit", "--element", "1,1;0,1"},
        {"inverse", "--element", "1,1;1,0"},
        {"one"},
        {"zero"},
        {"neg", "--element", "1,1;0,1"},
        {"solve", "--element", "1,0;0,0", "--rhs", "0,1;0,0"},
        {"prime", "--ideal", "0,0;0,0"},
        {"hom-kernel", "--codomain", m, "--map", "0,0;0,0 0,0;0,0 0,0;0,0 0,0;0,0"},
        {"hom-injective", "--codomain", m, "--map", "0,0;0,0 0,0;0,0 0,0;0,0 0,0;0,0"},
        {"hom-surjective", "--codomain", m, "--map", "0,0;0,0 0,0;0,0 0,0;0,0 0,0;0,0"},
    };
    for (auto args : cmds) {
        CAPTURE(args[0]);
        args.insert(args.end(), {"--ring", m, "--verify", "--json"});
        const auto r = run(args);
        CHECK(r.code == 0);
        CAPTURE(r.err);
        if (r.code == 0) CHECK(r.doc()["verified"] == true);
    }
}

TEST_CASE("literals in output are native") {
    const auto f4 = ring_file("f4.ring", "ring.kind = polyquot\nring.p = 2\nring.f = [1,1,1]\n");
    const auto r = run({"inverse", "--ring", f4, "--element", "[0,1]", "--json"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["result"]["inverse"] == "[1,1]");
    const auto d = run({"inverse", "--ring", f4, "--element", "[0,1]", "--json", "--debug-codes"});
    CHECK(d.doc()["result"]["inverse"].get<std::string>().find("[0x") != std::string::npos);
}

TEST_CASE("seeds") {
    const auto z36 = ring_file("z36.ring", "ring = modular 36\n");
    const std::vector<std::string> args = {"intersect", "--ring", z36, "--ideal", "4", "--ideal2", "6",
                                           "--backend", "sampled", "--json", "--seed", "5"};
    CHECK(run(args).out == run(args).out);
    auto other = args;
    other.back() = "6";
    CHECK(run(other).doc()["seed"] == 6);

    setenv("BBRING_SEED", "31", 1);
    CHECK(run({"ring-order", "--ring", z36, "--json"}).doc()["seed"] == 31);
    CHECK(run({"ring-order", "--ring", z36, "--json", "--seed", "2"}).doc()["seed"] == 2);
    unsetenv("BBRING_SEED");
}

TEST_CASE("human output and query counts") {
    const auto z12 = ring_file("z12.ring", "ring = modular 12\n");
    const auto plain = run({"order", "--ring", z12, "--ideal", "4"});
    CHECK(plain.out.find("result.order: 3") != std::string::npos);
    CHECK(plain.out.find("queries") == std::string::npos);
    const auto counted = run({"order", "--ring", z12, "--ideal", "4", "--count-queries"});
    CHECK(counted.out.find("queries.total") != std::string::npos);
}

TEST_CASE("bench-queries") {
    const auto one = run({"bench-queries", "--kmin", "6", "--kmax", "6", "--json"});
    REQUIRE(one.code == 0);
    CHECK(one.doc()["result"]["rows"].size() == 1);

    const auto rep = bbring::cli::bench_queries("modular", 4, 9, 1, "exact", 1e-6);
    REQUIRE(rep.rows.size() == 6);
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        CHECK(rep.rows[i].add_count + rep.rows[i].mul_count >= rep.rows[i - 1].add_count + rep.rows[i - 1].mul_count);
        CHECK(rep.rows[i].brute_force >= 2 * rep.rows[i - 1].brute_force);
    }
    CHECK(rep.exponent <= 3.5);
    CHECK(bbring::cli::bench_queries("matrix", 2, 3, 1, "exact", 1e-6).rows.size() == 2);
}
