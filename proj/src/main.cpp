#include <planedim/gen.hpp>
#include <planedim/json_io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace planedim;

namespace {

json read_json(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw BadParameter("cannot open " + path);
    return json::parse(in);
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

const PlaneGraph& need_graph(const ParsedInput& in) {
    if (!in.G) throw BadParameter("this command needs an embedding (rotation/anchor)");
    return *in.G;
}

int cmd_gen(const std::string& family, int n, std::optional<uint64_t> seed) {
    auto f = family_from_name(family);
    if (!f) throw BadParameter("unknown family: " + family);
    bool seeded = *f == Family::Forest || *f == Family::RandomPlanar;
    if (seeded && !seed) throw CLI::RequiredError("--seed (this family is randomized)");
    Generated g = generate(*f, n, seed.value_or(0));
    emit(input_to_json(g.P, g.G ? &*g.G : nullptr));
    return 0;
}

int cmd_dim(const std::string& file, bool use_pairs, size_t budget) {
    auto in = input_from_json(read_json(file));
    PairSet I;
    if (use_pairs) {
        if (!in.pairs) throw BadParameter("--pairs given but the file has none");
        I = *in.pairs;
    } else {
        I = incomparable_pairs(in.P);
    }
    auto r = dim_exact(in.P, I, budget);
    std::cout << r.d << "\n";
    emit(covering_to_json(r.covering));
    return 0;
}

int cmd_se(const std::string& file) {
    auto in = input_from_json(read_json(file));
    PairSet I = in.pairs ? *in.pairs : incomparable_pairs(in.P);
    auto r = se_exact(in.P, I, std::max<size_t>(512, I.size()));
    std::cout << r.s << "\n";
    emit(json{{"witness", pairs_to_json(r.witness)}});
    return 0;
}

int cmd_realize(const std::string& file) {
    auto in = input_from_json(read_json(file));
    auto res = realize_planar(in.P, need_graph(in), in.pairs);
    json out = realizer_to_json(res.realizer);
    out["poset"] = input_to_json(in.P, &*in.G, in.pairs ? &*in.pairs : nullptr);
    out["covering"] = covering_to_json(res.covering);
    out["report"] = report_to_json(res.report);
    out["report"].erase("timings"); // keep the output byte-stable across runs
    emit(out);
    return 0;
}

int cmd_verify(const std::string& file1, const std::string& file2) {
    json j1 = read_json(file1);
    Poset P;
    std::vector<LinExt> R;
    if (file2.empty()) {
        // a single `realize` output carries both halves
        P = input_from_json(j1.at("poset")).P;
        R = realizer_from_json(j1);
    } else {
        P = input_from_json(j1).P;
        R = realizer_from_json(read_json(file2));
    }
    auto v = verify_realizer(P, R);
    emit(json{{"ok", v.ok}, {"why", v.why}, {"size", R.size()}});
    return v.ok ? 0 : 1;
}

int cmd_explain(const std::string& file, int b) {
    auto in = input_from_json(read_json(file));
    PlaneGraph G = need_graph(in);
    if (in.P.down[G.x0].count() != 1) {
        // re-root at the lowest minimal element so shadows are defined
        int z0 = 0;
        while (in.P.down[z0].count() != 1) ++z0;
        std::vector<std::vector<int>> nbr(in.P.n);
        for (int u = 0; u < in.P.n; ++u) nbr[u] = G.neighbors(u);
        G = replant(in.P.n, G.edges(), nbr, z0);
    }
    Instance inst(in.P, G, G.x0, {});
    const auto& D = inst.shadows(b);
    json blocks = json::array();
    for (auto& blk : D.blocks)
        blocks.push_back({{"lo", blk.lo},
                          {"hi", blk.hi},
                          {"degenerate", blk.degenerate},
                          {"left", blk.left},
                          {"right", blk.right}});
    json shadows = json::array();
    for (auto& sh : D.shadows)
        shadows.push_back({{"first_block", sh.first_block},
                           {"last_block", sh.last_block},
                           {"initial", sh.initial},
                           {"terminal", sh.terminal}});
    emit(json{{"element", b},
              {"common", D.common},
              {"reversing", D.reversing},
              {"sd", D.sd},
              {"blocks", std::move(blocks)},
              {"shadows", std::move(shadows)}});
    return 0;
}

int cmd_export_dot(const std::string& file, const std::string& graph) {
    auto in = input_from_json(read_json(file));
    if (graph == "cover") {
        std::cout << dot_cover(in.P);
        return 0;
    }
    auto kind = aux_kind_from_name(graph);
    if (!kind) throw BadParameter("unknown graph: " + graph);
    const PlaneGraph& G = need_graph(in);
    if (!in.pairs) throw BadParameter("auxiliary graphs need a \"pairs\" field");
    std::optional<MaximalGoodInstance> mgi;
    try {
        mgi.emplace(maximalize(GoodInstance(Instance(in.P, G, G.x0, *in.pairs))));
    } catch (const InvariantViolation& e) {
        throw BadParameter(std::string("input is not a maximal good instance: ") + e.what());
    }
    Aux aux(*mgi);
    std::cout << dot_aux(mgi->good.inst.I, aux.build_aux_digraph(*kind));
    return 0;
}

int cmd_check(const std::string& file) {
    auto in = input_from_json(read_json(file));
    json checks = json::array();
    bool all = true;
    auto record = [&](const char* name, bool ok, json info) {
        checks.push_back({{"name", name}, {"ok", ok}, {"info", std::move(info)}});
        all = all && ok;
    };
    record("poset", true, {{"n", in.P.n}, {"covers", in.P.cover.size()}});
    if (in.G) {
        record("embedding", true, {{"faces", in.G->num_faces()}});
        auto r1 = realize_planar(in.P, *in.G, in.pairs);
        bool ok = verify_realizer(in.P, r1.realizer).ok &&
                  (long long)r1.report.cover_size <= r1.report.bound;
        record("realize", ok,
               {{"cover_size", r1.report.cover_size}, {"bound", r1.report.bound}});
        auto r2 = realize_planar(in.P, *in.G, in.pairs);
        record("determinism", r1.realizer == r2.realizer, json::object());
        if (in.P.n <= 12) {
            int d = dim_exact(in.P, 200).d;
            record("dim-sandwich", d <= (int)r1.realizer.size(),
                   {{"dim", d}, {"realizer", r1.realizer.size()}});
        }
    }
    emit(json{{"ok", all}, {"checks", std::move(checks)}});
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar poset dimension toolkit"};
    app.require_subcommand(1);

    std::string family, file, file2, graph;
    int n = 0, element = -1;
    std::optional<uint64_t> seed;
    bool use_pairs = false;
    size_t budget = 64;

    auto* gen = app.add_subcommand("gen", "generate a poset family as JSON");
    gen->add_option("family", family)->required()->check(CLI::IsMember(
        {"standard", "kelly", "wheel", "chain", "antichain", "forest", "random-planar"}));
    gen->add_option("n", n)->required();
    gen->add_option("--seed", seed, "seed for the randomized families");

    auto* dim = app.add_subcommand("dim", "exact dimension plus an optimal covering");
    dim->add_option("file", file)->required();
    dim->add_flag("--pairs", use_pairs, "restrict to the file's pair set");
    dim->add_option("--budget", budget, "largest pair set attempted");

    auto* se = app.add_subcommand("se", "largest standard example plus witness");
    se->add_option("file", file)->required();

    auto* realize = app.add_subcommand("realize", "run the planar pipeline");
    realize->add_option("file", file)->required();

    auto* verify = app.add_subcommand("verify", "check a realizer against its poset");
    verify->add_option("file", file)->required();
    verify->add_option("realizer", file2);

    auto* explain = app.add_subcommand("explain", "shadow decomposition of one element");
    explain->add_option("file", file)->required();
    explain->add_option("--element", element)->required();

    auto* exp_dot = app.add_subcommand("export-dot", "DOT export of cover or auxiliary graphs");
    exp_dot->add_option("file", file)->required();
    exp_dot->add_option("--graph", graph)->required()->check(
        CLI::IsMember({"cover", "HOO", "HIIL", "HIIR", "HIILR", "HIO", "HOI"}));

    auto* check = app.add_subcommand("check", "run the invariant suite on one input");
    check->add_option("file", file)->required();

    auto fail = [](const char* kind, const std::string& msg, int code) {
        std::cerr << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << "\n";
        return code;
    };

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(family, n, seed);
        if (dim->parsed()) return cmd_dim(file, use_pairs, budget);
        if (se->parsed()) return cmd_se(file);
        if (realize->parsed()) return cmd_realize(file);
        if (verify->parsed()) return cmd_verify(file, file2);
        if (explain->parsed()) return cmd_explain(file, element);
        if (exp_dot->parsed()) return cmd_export_dot(file, graph);
        if (check->parsed()) return cmd_check(file);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    } catch (const json::exception& e) {
        return fail("parse", e.what(), 1);
    } catch (const InvariantViolation& e) {
        return fail("invariant", e.what(), 3);
    } catch (const Error& e) {
        return fail("domain", e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 3);
    }
}
