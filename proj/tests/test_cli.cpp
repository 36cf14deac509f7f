#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ltlab/acceptance.hpp"
#include "ltlab/cli.hpp"

using namespace ltlab;

namespace {

std::string cfg(const std::string& name) { return default_root() + "/configs/" + name + ".json"; }

json run_ok(const std::vector<std::string>& args) {
    std::string out;
    int s = run_cli(args, out);
    CAPTURE(out);
    REQUIRE(s == 0);
    return json::parse(out);
}

json run_err(const std::vector<std::string>& args) {
    std::string out;
    CHECK(run_cli(args, out) != 0);
    json doc = json::parse(out);
    CHECK(doc.contains("detail"));
    return doc;
}

std::vector<std::string> ints_of(const json& series) {
    std::vector<std::string> r;
    for (const auto& c : series["coeffs"]) r.push_back(c["coords"][0].get<std::string>());
    return r;
}

}  // namespace

TEST_CASE("lt-mult on the multiplicative group") {
    json doc = run_ok({"lt-mult", "--config", cfg("gm3"), "--zwindow", "0:6", "--a", "2"});
    CHECK(doc["command"] == "lt-mult");
    CHECK(ints_of(doc["result"]["mult"]) == std::vector<std::string>{"0", "2", "1", "0", "0", "0"});
    // the named Frobenius gives the same group
    json named = run_ok({"lt-mult", "--config", cfg("gm5"), "--zwindow", "0:4", "--a", "3"});
    CHECK(ints_of(named["result"]["mult"]) == std::vector<std::string>{"0", "3", "3", "1"});
}

TEST_CASE("witt-ghost of (0, 1) over Z_3") {
    json doc = run_ok({"witt-ghost", "--config", cfg("z3"), "--precision", "2", "--components", "[[0],[1]]"});
    const json& g = doc["result"]["ghost"];
    REQUIRE(g.size() == 2);
    CHECK(g[0]["coords"][0] == "0");
    CHECK(g[1]["coords"][0] == "3");
    CHECK(doc["result"]["vector"]["len"] == 2);
}

TEST_CASE("coleman-psi inverts phi up to q / pi") {
    // q / pi = 1 over Z_3, pi over Q_2(sqrt 2), 3 over the F_9 ring
    for (const char* name : {"z3", "q2e2", "q9"}) {
        CAPTURE(name);
        std::string base;
        json doc = run_ok({"coleman-psi", "--config", cfg(name), "--zwindow", "0:10", "--f", "[1,2,0,1]", "--phi_first"});
        RingSpec s = ring_spec_from_json(json::parse(std::ifstream(cfg(name)))["ring"]);
        BaseRing R(s);
        LaurentSeries psi = series_from_json(R, doc["result"]["psi"], 1, 0, 1);
        LaurentSeries f = LaurentSeries::from_ints(&R, psi.prec(), 0, 10, {1, 2, 0, 1});
        BaseElem qp = R.from_int(R.q(), psi.prec() + 1).divide_by_pi(1);
        CHECK(psi.high() >= 3);
        CHECK(psi == f.scaled(qp));
    }
}

TEST_CASE("config merging: file, then flags") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ltlab_cli_test";
    fs::create_directories(dir);
    std::string path = (dir / "job.json").string();
    {
        std::ofstream f(path);
        f << R"({"ring": {"p": "5"}, "precision": {"pi_prec": 3, "z_low": 0, "z_high": 5}, "args": {"a": 2, "b": 7}})";
    }
    JobConfig c = merge_config(JobConfig{}, json::parse(std::ifstream(path)));
    CHECK(c.ring.p == 5);
    CHECK(c.prec.pi_prec == 3);
    CHECK(c.prec.witt_len == 2);
    CHECK(c.args["b"] == 7);

    json doc = run_ok({"lt-mult", "--config", path});
    CHECK(ints_of(doc["result"]["mult"]) == std::vector<std::string>{"0", "2", "0", "0", "0"});
    json over = run_ok({"lt-mult", "--config", path, "--a", "3", "--zwindow", "0:3"});
    CHECK(over["result"]["a"]["coords"][0] == "3");
    CHECK(over["result"]["mult"]["z_high"] == 3);

    // LTLAB_CONFIG is the fallback for --config
    setenv("LTLAB_CONFIG", path.c_str(), 1);
    json env = run_ok({"lt-mult"});
    unsetenv("LTLAB_CONFIG");
    CHECK(env == doc);

    // --out writes the same bytes
    std::string out_path = (dir / "out.json").string(), printed, written;
    run_cli({"lt-mult", "--config", path}, printed);
    std::string empty;
    REQUIRE(run_cli({"lt-mult", "--config", path, "--out", out_path}, empty) == 0);
    CHECK(empty.empty());
    std::ifstream in(out_path, std::ios::binary);
    written.assign(std::istreambuf_iterator<char>(in), {});
    CHECK(written == printed);
    fs::remove_all(dir);
}

TEST_CASE("errors are JSON documents with module codes") {
    CHECK(run_err({"frobnicate"})["error"] == "BadArgument");
    CHECK(run_err({"witt-ghost", "--config", cfg("z3"), "--components", "[[0],[1]]", "--domain", "k"})["error"] == "DomainMismatch");
    CHECK(run_err({"lt-mult", "--config", cfg("z3"), "--precision", "13", "--a", "1"})["error"] == "BadConfig");
    CHECK(run_err({"lt-mult", "--config", cfg("z3")})["error"] == "BadArgument");
    CHECK(run_err({"lt-mult", "--config", "/nonexistent.json", "--a", "1"})["error"] == "BadConfig");
    CHECK(run_err({"residue", "--config", cfg("z3"), "--zwindow", "0:5", "--f", "[3]", "--dlog"})["error"] == "NotAUnit");
    CHECK(run_err({"witt-arith", "--config", cfg("z3"), "--precision", "12", "--domain", "o_L", "--x", "[1,0]", "--y", "[1,0]"})["error"] == "PrecisionExhausted");
    CHECK(run_err({"coates-wiles", "--config", cfg("gm5"), "--g", "[1,1]", "--r", "9"})["error"] == "DenominatorBudgetExceeded");
    std::string out;
    CHECK(run_cli({"--help"}, out) == 0);
    CHECK(out.find("witt-ghost") != std::string::npos);
}

TEST_CASE("every command answers") {
    const std::string z3 = cfg("z3");
    std::vector<std::vector<std::string>> jobs = {
        {"lt-build", "--config", z3, "--zwindow", "0:5"},
        {"lt-log", "--config", z3, "--zwindow", "0:8", "--exp"},
        {"coleman-norm", "--config", z3, "--zwindow", "0:40", "--f", "[1,1]"},
        {"coleman-lift", "--config", z3, "--zwindow", "0:6", "--u", "[1,1]"},
        {"coleman-delta", "--config", z3, "--f", "[1,1]"},
        {"coates-wiles", "--config", z3, "--g", "[1,1]", "--r", "2"},
        {"nabla", "--config", z3, "--g", "[1,1]", "--a", "2"},
        {"residue", "--config", z3, "--zwindow=-2:4", "--f", "[5,0,1]"},
        {"pairing-bracket", "--config", z3, "--zwindow=-2:4", "--f", "[0,0,1]", "--w", "[1,0,0,1]", "--level", "2"},
        {"witt-arith", "--config", z3, "--x", "[1,0]", "--y", "[1,2]", "--op", "add"},
        {"witt-arith", "--config", z3, "--x", "[1,0]", "--op", "neg"},
        {"witt-smap", "--config", z3, "--b", "3"},
        {"witt-wmap", "--config", z3, "--x", "[0,1]"},
        {"witt-omega", "--config", z3, "--zwindow=-2:30", "--x", "[[1,0,1,1],[2]]"},
        {"sw-brace", "--config", z3, "--zwindow", "0:30", "--f", "[[1],[0,1]]", "--unit", "[0,1]"},
        {"sw-pair", "--config", z3, "--zwindow=-3:40", "--x", "[[0,0,1],[1]]", "--a", "[0,1,1]"},
    };
    for (const auto& j : jobs) {
        CAPTURE(j[0]);
        json doc = run_ok(j);
        CHECK(doc["command"] == j[0]);
        CHECK(doc.contains("result"));
    }
    // values through the CLI match known answers
    json r = run_ok({"residue", "--config", z3, "--zwindow=-2:4", "--f", "[1,5,0,1]"});
    CHECK(r["result"]["res"]["coords"][0] == "5");
    json s = run_ok({"witt-smap", "--config", z3, "--precision", "2", "--b", "3"});
    CHECK(s["result"]["alpha"]["components"][1]["coords"][0] == "1");
    json w = run_ok({"witt-wmap", "--config", z3, "--x", "[0,1]"});
    CHECK(w["result"]["w"]["coords"][0] == "3");
}
