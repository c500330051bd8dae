#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cnet/io.hpp"

namespace {

const std::string cli = CNET_CLI_PATH;
const std::string data = CNET_DATA_DIR;

struct RunResult {
    int exitCode;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string outFile = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                                "/cnet_cli_test_out.json";
    const std::string cmd = cli + " " + args + " > " + outFile + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(outFile);
    std::stringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    return r;
}

}  // namespace

TEST_CASE("finite subcommand on a valid network") {
    const RunResult r = run("finite --network " + data +
                            "/chorded4.json --source 1 --boundary 4 --s 0.9,0.4 --series");
    REQUIRE(r.exitCode == 0);
    const cnet::json doc = cnet::json::parse(r.out);
    CHECK(doc.contains("voltages"));
    CHECK(doc.contains("effectiveAdmittance"));
    CHECK(doc.contains("restrictedSpectralRadii"));
    CHECK(doc["effectiveAdmittance"]["maxResidual"].get<double>() < 1e-9);
}

TEST_CASE("reports are byte stable") {
    const std::string args = "finite --network " + data +
                             "/chorded4.json --source 1 --boundary 4 --s 0.9,0.4 --series";
    const RunResult a = run(args);
    const RunResult b = run(args);
    REQUIRE(a.exitCode == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("parse failures exit with 2") {
    CHECK(run("finite --network " + data +
              "/bad_syntax.json --source a --boundary b --s 1")
              .exitCode == 2);
    CHECK(run("finite --network " + data +
              "/unknown_field.json --source a --boundary b --s 1")
              .exitCode == 2);
    // unknown command-line flag is also a parse failure
    CHECK(run("finite --no-such-flag").exitCode == 2);
    // unknown vertex name
    CHECK(run("finite --network " + data +
              "/chorded4.json --source nope --boundary 4 --s 1")
              .exitCode == 2);
}

TEST_CASE("precondition failures exit with 3") {
    // frequency on the imaginary axis
    CHECK(run("finite --network " + data +
              "/chorded4.json --source 1 --boundary 4 --s 0,1")
              .exitCode == 3);
    // source inside the grounded set
    CHECK(run("finite --network " + data +
              "/chorded4.json --source 4 --boundary 4 --s 1")
              .exitCode == 3);
    // boundary theory of a recurrent network
    CHECK(run("tree --generator line --s 1 martin --x o --xi 0").exitCode == 3);
}

TEST_CASE("unresolved exhaustion exits with 4") {
    // a tolerance far below what radius 12 can certify leaves the trace
    // undecided, and the kernel request cannot be honored
    CHECK(run("infinite --generator tree:b=2 --s 1 --kernels --window 0 "
              "--n-max 12 --tol 1e-15")
              .exitCode == 4);
}

TEST_CASE("infinite subcommand classifies and reports traces") {
    const RunResult r =
        run("infinite --generator line --s 1 --s 2,1 --classify --n-max 40");
    REQUIRE(r.exitCode == 0);
    const cnet::json doc = cnet::json::parse(r.out);
    CHECK(doc["classification"].get<std::string>() == "recurrent");
    REQUIRE(doc["traces"].size() == 2);
    CHECK(doc["traces"][0]["status"].get<std::string>() == "recurrent-zero");
}

TEST_CASE("tree subcommands") {
    const RunResult m =
        run("tree --generator regtree:q=2 --s 1 martin --x 0 --xi 0.0.0");
    REQUIRE(m.exitCode == 0);
    const cnet::json mdoc = cnet::json::parse(m.out);
    CHECK(std::abs(mdoc["kernel"]["re"].get<double>() - 2.0) < 1e-6);

    const RunResult rep = run("tree --generator regtree:q=2 --s 1 --depth 1 represent --h " +
                              data + "/h_ones.json");
    REQUIRE(rep.exitCode == 0);
    const cnet::json rdoc = cnet::json::parse(rep.out);
    CHECK(std::abs(rdoc["totalMass"]["re"].get<double>() - 1.0) < 1e-6);
    CHECK(rdoc["roundTripResidual"].get<double>() < 1e-6);

    const RunResult ig = run("tree --generator regtree:q=2 --s 1 integrate --nu " + data +
                             "/nu_uniform.json --x 1");
    REQUIRE(ig.exitCode == 0);
    const cnet::json idoc = cnet::json::parse(ig.out);
    CHECK(std::abs(idoc["value"]["re"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("freegroup subcommand") {
    const RunResult r =
        run("freegroup --k 2 --assign s,1/s --alpha-grid 0:0.5:0.1");
    REQUIRE(r.exitCode == 0);
    const cnet::json doc = cnet::json::parse(r.out);
    REQUIRE(doc["rows"].size() == 6);
    CHECK(std::abs(doc["rows"][0]["norm"].get<double>() - std::sqrt(3.0) / 2.0) < 1e-10);
}

TEST_CASE("network files round trip") {
    const cnet::json doc = cnet::load_json_file(data + "/chorded4.json");
    const cnet::NamedNetwork net = cnet::read_network(doc);
    CHECK(net.names.size() == 4);
    CHECK(net.net.edges().size() == 5);
    const cnet::json out = cnet::write_network(net);
    const cnet::NamedNetwork again = cnet::read_network(out);
    CHECK(again.names == net.names);
    REQUIRE(again.net.edges().size() == net.net.edges().size());
    for (size_t i = 0; i < net.net.edges().size(); ++i) {
        CHECK(again.net.edges()[i].u == net.net.edges()[i].u);
        CHECK(again.net.edges()[i].v == net.net.edges()[i].v);
        CHECK(again.net.edges()[i].params == net.net.edges()[i].params);
    }
    CHECK(cnet::write_network(again) == out);
}

TEST_CASE("distribution and vertex-function files round trip") {
    const cnet::json doc = cnet::load_json_file(data + "/nu_uniform.json");
    const cnet::BoundaryDistribution nu = cnet::read_distribution(doc);
    CHECK(nu.depth == 1);
    CHECK(std::abs(nu.total() - 1.0) < 1e-12);
    const cnet::json out = cnet::write_distribution(nu);
    const cnet::BoundaryDistribution again = cnet::read_distribution(out);
    CHECK(again.arcs == nu.arcs);

    const cnet::json h = cnet::load_json_file(data + "/h_ones.json");
    const auto fn = cnet::read_vertex_function(h);
    CHECK(fn.size() == 4);
    CHECK(cnet::read_vertex_function(cnet::write_vertex_function(fn)) == fn);
}

TEST_CASE("malformed documents raise parse errors") {
    CHECK_THROWS_AS(cnet::read_network(cnet::json{{"vertices", {"a"}}}), cnet::ParseError);
    CHECK_THROWS_AS(cnet::load_json_file(data + "/bad_syntax.json"), cnet::ParseError);
    CHECK_THROWS_AS(cnet::read_complex(cnet::json{{"re", 1.0}, {"im", 0.0}, {"x", 2}}),
                    cnet::ParseError);
}
