#include <catch2/catch_amalgamated.hpp>

#include <planedim/gen.hpp>
#include <planedim/goodinst.hpp>
#include <planedim/json_io.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace planedim;

namespace {

struct RunResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& input = "") {
    std::string base = "/tmp/planedim_cli_test";
    {
        std::ofstream f(base + ".in");
        f << input;
    }
    std::string cmd = std::string(PLANEDIM_CLI_PATH) + " " + args + " < " + base + ".in > " +
                      base + ".out 2> " + base + ".err";
    int st = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = slurp(base + ".out");
    r.err = slurp(base + ".err");
    return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string write_tmp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/planedim_cli_" + name;
    std::ofstream f(path);
    f << text;
    return path;
}

// small instance whose pair set is already maximal good (one In-Out and the
// machinery around it); same shape as the auxgraph fixtures
MaximalGoodInstance fan_mgi() {
    Poset P = build_poset(11, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {3, 7},
                               {8, 4}, {8, 6}, {9, 1}, {9, 10}, {10, 7}});
    std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6},
                                              {3, 7}, {4, 8}, {6, 8}, {1, 9}, {9, 10}, {7, 10}};
    std::vector<std::vector<int>> rot(11);
    rot[0] = {2, 3, 1}; rot[1] = {4, 5, 0, 9}; rot[2] = {6, 0}; rot[3] = {7, 0};
    rot[4] = {8, 1}; rot[5] = {1}; rot[6] = {2, 8}; rot[7] = {10, 3}; rot[8] = {4, 6};
    rot[9] = {1, 10}; rot[10] = {9, 7};
    auto G = build_plane_graph(11, edges, rot, 0, 2);
    Instance inst(std::move(P), std::move(G), 0, PairSet{{8, 5}, {9, 6}});
    auto plus = MaximalGoodInstance::candidate_pairs(inst);
    return MaximalGoodInstance(
        GoodInstance(Instance(inst.P, inst.G, 0, std::move(plus))));
}

} // namespace

TEST_CASE("poset and embedding survive a JSON round-trip") {
    std::vector<Generated> pool;
    pool.push_back(generate(Family::Standard, 3));
    pool.push_back(generate(Family::Kelly, 4));
    pool.push_back(generate(Family::Wheel, 3));
    pool.push_back(generate(Family::Chain, 4));
    pool.push_back(generate(Family::Antichain, 3));
    pool.push_back(generate(Family::Forest, 9, 1));
    pool.push_back(generate(Family::RandomPlanar, 12, 2));
    for (auto& g : pool) {
        PairSet pairs = incomparable_pairs(g.P);
        json j = input_to_json(g.P, g.G ? &*g.G : nullptr, &pairs);
        auto back = input_from_json(j);
        CHECK(back.P.n == g.P.n);
        CHECK(back.P.cover == g.P.cover);
        REQUIRE(back.pairs.has_value());
        CHECK(*back.pairs == pairs);
        if (g.G) {
            REQUIRE(back.G.has_value());
            CHECK(back.G->edges() == g.G->edges());
            for (int v = 0; v < g.P.n; ++v) CHECK(back.G->neighbors(v) == g.G->neighbors(v));
            CHECK(back.G->x0 == g.G->x0);
            CHECK(input_to_json(back.P, &*back.G, &*back.pairs) == j);
        }
    }
}

TEST_CASE("realizer and covering round-trip") {
    auto g = generate(Family::Standard, 3);
    auto d = dim_exact(g.P, 64);
    auto R = realizer_from_covering(g.P, d.covering);
    CHECK(realizer_from_json(realizer_to_json(R)) == R);
    auto C2 = covering_from_json(covering_to_json(d.covering));
    CHECK(C2.classes == d.covering.classes);
    CHECK(C2.provenance == d.covering.provenance);
}

TEST_CASE("gen piped into dim prints the exact dimension") {
    auto gen4 = run_cli("gen standard 4");
    REQUIRE(gen4.code == 0);
    auto dim4 = run_cli("dim -", gen4.out);
    REQUIRE(dim4.code == 0);
    CHECK(first_line(dim4.out) == "4");

    auto chain = run_cli("gen chain 7");
    CHECK(first_line(run_cli("dim -", chain.out).out) == "1");
}

TEST_CASE("se reports the witness alongside the value") {
    auto g = run_cli("gen standard 5");
    auto se = run_cli("se -", g.out);
    REQUIRE(se.code == 0);
    CHECK(first_line(se.out) == "5");
    auto rest = se.out.substr(se.out.find('\n') + 1);
    CHECK(json::parse(rest).at("witness").size() == 5);
}

TEST_CASE("realize output verifies and stays within its own bound") {
    auto g = run_cli("gen kelly 5");
    auto re = run_cli("realize -", g.out);
    REQUIRE(re.code == 0);
    json j = json::parse(re.out);
    CHECK(j.at("report").at("cover_size").get<long long>() <=
          j.at("report").at("bound").get<long long>());
    auto ve = run_cli("verify -", re.out);
    CHECK(ve.code == 0);
    CHECK(json::parse(ve.out).at("ok") == true);
}

TEST_CASE("verify with separate poset and realizer files") {
    auto g = run_cli("gen standard 3");
    auto poset_file = write_tmp("s3.json", g.out);
    auto re = run_cli("realize " + poset_file);
    json j = json::parse(re.out);
    auto good = write_tmp("s3_r.json", json{{"extensions", j.at("extensions")}}.dump());
    CHECK(run_cli("verify " + poset_file + " " + good).code == 0);

    json bad = j.at("extensions");
    bad.erase(bad.begin() + 1, bad.end());
    auto bad_file = write_tmp("s3_bad.json", json{{"extensions", bad}}.dump());
    auto ve = run_cli("verify " + poset_file + " " + bad_file);
    CHECK(ve.code == 1);
    CHECK(json::parse(ve.out).at("ok") == false);
}

TEST_CASE("two realize runs are byte-identical") {
    auto g = run_cli("gen random-planar 24 --seed 11");
    auto r1 = run_cli("realize -", g.out);
    auto r2 = run_cli("realize -", g.out);
    CHECK(r1.out == r2.out);
    CHECK(!r1.out.empty());
}

TEST_CASE("export-dot emits cover and auxiliary graphs") {
    auto g = run_cli("gen kelly 4");
    auto dot = run_cli("export-dot - --graph cover", g.out);
    REQUIRE(dot.code == 0);
    CHECK(dot.out.rfind("digraph cover", 0) == 0);
    CHECK(dot.out.find("->") != std::string::npos);

    auto mgi = fan_mgi();
    auto& inst = mgi.good.inst;
    auto file = write_tmp("fan.json", input_to_json(inst.P, &inst.G, &inst.I).dump());
    auto hio = run_cli("export-dot " + file + " --graph HIO");
    REQUIRE(hio.code == 0);
    CHECK(hio.out.rfind("digraph HIO", 0) == 0);
    CHECK(hio.out.find("weight=1") != std::string::npos);
    for (const char* k : {"HOO", "HIIL", "HIIR", "HIILR", "HOI"})
        CHECK(run_cli("export-dot " + file + " --graph " + k).code == 0);
}

TEST_CASE("explain dumps the shadow decomposition") {
    auto g = run_cli("gen wheel 3");
    auto ex = run_cli("explain - --element 5", g.out);
    REQUIRE(ex.code == 0);
    json j = json::parse(ex.out);
    CHECK(j.at("element") == 5);
    CHECK(j.at("sd").get<int>() >= 0);
    CHECK(j.at("shadows").size() == (size_t)j.at("sd").get<int>() + 1);
}

TEST_CASE("check runs the invariant battery") {
    auto g = run_cli("gen random-planar 12 --seed 4");
    auto ch = run_cli("check -", g.out);
    CHECK(ch.code == 0);
    json j = json::parse(ch.out);
    CHECK(j.at("ok") == true);
    CHECK(j.at("checks").size() >= 4);
}

TEST_CASE("failures exit nonzero with machine-readable errors") {
    auto usage = run_cli("gen nosuchfamily 5");
    CHECK(usage.code == 2);
    CHECK(json::parse(usage.err).at("error").at("kind") == "usage");

    auto noseed = run_cli("gen forest 10");
    CHECK(noseed.code == 2);

    auto garbage = run_cli("dim -", "this is not json");
    CHECK(garbage.code == 1);
    CHECK(json::parse(garbage.err).at("error").at("kind") == "parse");

    auto cyclic = run_cli("dim -", R"({"n":2,"cover":[[0,1],[1,0]]})");
    CHECK(cyclic.code == 1);
    CHECK(json::parse(cyclic.err).at("error").at("kind") == "domain");

    auto nosub = run_cli("");
    CHECK(nosub.code == 2);
}
