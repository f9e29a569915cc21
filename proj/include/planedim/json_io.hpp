#pragma once

// JSON file formats and DOT export shared by the CLI and its tests.

#include <planedim/pipeline.hpp>

#include <json.hpp>

#include <sstream>

namespace planedim {

using json = nlohmann::json;

struct ParsedInput {
    Poset P;
    std::optional<PlaneGraph> G;
    std::optional<PairSet> pairs;
};

inline json pairs_to_json(const PairSet& I) {
    json a = json::array();
    for (auto [x, y] : I) a.push_back(json::array({x, y}));
    return a;
}

inline PairSet pairs_from_json(const json& a) {
    if (!a.is_array()) throw BadParameter("pair list must be an array");
    PairSet I;
    for (auto& e : a) I.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return I;
}

inline json input_to_json(const Poset& P, const PlaneGraph* G = nullptr,
                          const PairSet* pairs = nullptr) {
    json j;
    j["n"] = P.n;
    j["cover"] = pairs_to_json(P.cover);
    if (G) {
        json rot = json::object();
        for (int v = 0; v < G->n; ++v) rot[std::to_string(v)] = G->neighbors(v);
        j["rotation"] = std::move(rot);
        json anchor;
        anchor["vertex"] = G->x0;
        if (G->anchor_pos == 0) anchor["after"] = nullptr;
        else anchor["after"] = G->neighbors(G->x0)[G->anchor_pos - 1];
        j["anchor"] = std::move(anchor);
        std::vector<int> walk;
        for (int d : G->faces[G->outer_face])
            if (!G->touches_phantom(d)) walk.push_back(G->tail[d]);
        j["outer_face"] = walk;
    }
    if (pairs) j["pairs"] = pairs_to_json(*pairs);
    return j;
}

inline ParsedInput input_from_json(const json& j) {
    ParsedInput out;
    int n = j.at("n").get<int>();
    out.P = build_poset(n, pairs_from_json(j.at("cover")));
    if (j.contains("rotation")) {
        std::vector<std::vector<int>> rot(n);
        for (auto& [k, v] : j.at("rotation").items()) {
            int u = std::stoi(k);
            if (u < 0 || u >= n) throw BadParameter("rotation key out of range");
            rot[u] = v.get<std::vector<int>>();
        }
        auto& anch = j.at("anchor");
        int x0 = anch.at("vertex").get<int>();
        if (x0 < 0 || x0 >= n) throw BadParameter("anchor vertex out of range");
        int pos = anch.at("after").is_null()
                      ? 0
                      : anchor_pos_after(rot, x0, anch.at("after").get<int>());
        PairSet edges;
        for (auto [u, v] : out.P.cover) edges.push_back({std::min(u, v), std::max(u, v)});
        std::sort(edges.begin(), edges.end());
        std::vector<int> walk;
        if (j.contains("outer_face")) walk = j.at("outer_face").get<std::vector<int>>();
        out.G = build_plane_graph(n, edges, rot, x0, pos, walk);
    }
    if (j.contains("pairs")) out.pairs = pairs_from_json(j.at("pairs"));
    return out;
}

inline json realizer_to_json(const std::vector<LinExt>& R) {
    json j;
    j["extensions"] = R;
    return j;
}

inline std::vector<LinExt> realizer_from_json(const json& j) {
    return j.at("extensions").get<std::vector<LinExt>>();
}

inline json covering_to_json(const Covering& C) {
    json classes = json::array();
    for (size_t c = 0; c < C.classes.size(); ++c)
        classes.push_back({{"pairs", pairs_to_json(C.classes[c])}, {"why", C.provenance[c]}});
    return json{{"classes", std::move(classes)}};
}

inline Covering covering_from_json(const json& j) {
    Covering C;
    for (auto& cls : j.at("classes"))
        C.add(pairs_from_json(cls.at("pairs")), cls.at("why").get<std::string>());
    return C;
}

inline json report_to_json(const PipelineReport& r) {
    json timings = json::array();
    for (auto& t : r.timings) timings.push_back({{"stage", t.stage}, {"millis", t.millis}});
    return json{{"s", r.s},
                {"bound", r.bound},
                {"component_covers", r.component_covers},
                {"cover_size", r.cover_size},
                {"realizer_size", r.realizer_size},
                {"extra_extensions", r.extra_extensions},
                {"short_circuit", r.short_circuit},
                {"timings", std::move(timings)}};
}

// ----- DOT export -------------------------------------------------------------

inline std::string dot_cover(const Poset& P) {
    std::ostringstream out;
    out << "digraph cover {\n";
    for (int v = 0; v < P.n; ++v) out << "  v" << v << ";\n";
    for (auto [lo, hi] : P.cover) out << "  v" << lo << " -> v" << hi << ";\n";
    out << "}\n";
    return out.str();
}

inline const char* aux_kind_name(AuxKind k) {
    switch (k) {
        case AuxKind::OO: return "HOO";
        case AuxKind::IIL: return "HIIL";
        case AuxKind::IIR: return "HIIR";
        case AuxKind::IILR: return "HIILR";
        case AuxKind::IO: return "HIO";
        case AuxKind::OI: return "HOI";
    }
    return "?";
}

inline std::optional<AuxKind> aux_kind_from_name(const std::string& s) {
    for (AuxKind k : {AuxKind::OO, AuxKind::IIL, AuxKind::IIR, AuxKind::IILR, AuxKind::IO,
                      AuxKind::OI})
        if (s == aux_kind_name(k)) return k;
    return std::nullopt;
}

inline std::string dot_aux(const PairSet& I, const AuxDigraph& H) {
    std::ostringstream out;
    out << "digraph " << aux_kind_name(H.kind) << " {\n";
    for (size_t t = 0; t < I.size(); ++t)
        out << "  p" << t << " [label=\"(" << I[t].first << "," << I[t].second << ")\"];\n";
    for (size_t i = 0; i < H.adj.size(); ++i)
        for (auto& e : H.adj[i]) {
            out << "  p" << i << " -> p" << e.to << " [weight=" << e.weight;
            if (e.witness.first >= 0 || e.witness.second >= 0)
                out << ", witness=\"(" << e.witness.first << "," << e.witness.second << ")\"";
            out << "];\n";
        }
    out << "}\n";
    return out.str();
}

} // namespace planedim
