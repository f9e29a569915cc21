#pragma once

// End-to-end assembly: unfold, contract, good-reduce, maximalize, kappa-color,
// compose the coverings back up, and emit a verified realizer together with
// the size bound 64 s^6 (s+3)^2 + 12.

#include <planedim/auxgraph.hpp>

#include <chrono>

namespace planedim {

struct MergeUnsound : Error {
    PairSet witness;
    MergeUnsound(std::string msg, PairSet w) : Error(std::move(msg)), witness(std::move(w)) {}
};

struct BoundViolated : Error { using Error::Error; };

enum class ComposeMode { Sum, MaxMerge, AddSets };

// Sum: disjoint palettes concatenated. MaxMerge: classes aligned index-wise
// (caller asserts cross-part cycle-freeness; re-verified). AddSets: first part
// plus the remaining classes appended as fixed reversible sets.
inline Covering compose_coverings(const Poset& P, ComposeMode mode,
                                  const std::vector<Covering>& parts) {
    auto checked = [&](PairSet cls, std::string why, Covering& out) {
        if (cls.empty()) return;
        if (auto cyc = find_strict_alternating_cycle(P, cls)) {
            PairSet witness;
            for (int t : *cyc) witness.push_back(cls[t]);
            throw MergeUnsound("merged class contains a strict alternating cycle",
                               std::move(witness));
        }
        out.add(std::move(cls), std::move(why));
    };
    Covering out;
    switch (mode) {
    case ComposeMode::Sum:
    case ComposeMode::AddSets:
        for (size_t p = 0; p < parts.size(); ++p)
            for (size_t c = 0; c < parts[p].classes.size(); ++c)
                checked(parts[p].classes[c],
                        (mode == ComposeMode::AddSets && p > 0 ? "added set: " : "") +
                            parts[p].provenance[c],
                        out);
        break;
    case ComposeMode::MaxMerge: {
        size_t width = 0;
        for (auto& part : parts) width = std::max(width, part.classes.size());
        for (size_t c = 0; c < width; ++c) {
            PairSet merged;
            std::string why = "merge of";
            for (size_t p = 0; p < parts.size(); ++p) {
                if (c >= parts[p].classes.size()) continue;
                auto& cls = parts[p].classes[c];
                merged.insert(merged.end(), cls.begin(), cls.end());
                why += " [" + parts[p].provenance[c] + "]";
            }
            checked(std::move(merged), std::move(why), out);
        }
        break;
    }
    }
    return out;
}

struct StageTime {
    std::string stage;
    double millis = 0;
};

struct PipelineReport {
    int s = 1;
    long long bound = 0;
    std::vector<size_t> component_covers;
    size_t cover_size = 0;      // classes counted against the bound
    size_t realizer_size = 0;   // extensions emitted, including the extras
    size_t extra_extensions = 0; // appended so the intersection equals P
    bool short_circuit = false; // the top split was already reversible
    std::vector<StageTime> timings;
};

struct RealizeResult {
    std::vector<LinExt> realizer;
    Covering covering;
    PipelineReport report;
};

namespace pipe_detail {

// covering of one supported class, computed in the contracted instance and
// mapped back to component ids
inline Covering supported_cover(const Poset& Pc, const PlaneGraph& Gc, const Unfolding& U, int k,
                                const PairSet& cls) {
    if (is_reversible(Pc, cls)) {
        Covering out;
        out.add(cls, "layer " + std::to_string(k) + ": reversible outright");
        return out;
    }
    auto ci = contract_to_instance(Pc, cls, U, k, Gc);
    auto R = good_reduction(ci.inst);
    std::vector<Covering> covers;
    for (auto& ac : R.classes) {
        std::set<Pair> wanted(ac.good.inst.I.begin(), ac.good.inst.I.end());
        auto mgi = maximalize(ac.good);
        Aux aux(mgi);
        Covering full = aux.kappa_coloring();
        Covering trimmed;
        for (size_t c = 0; c < full.classes.size(); ++c) {
            PairSet keep;
            for (auto p : full.classes[c])
                if (wanted.count(p)) keep.push_back(p);
            if (!keep.empty()) trimmed.add(std::move(keep), full.provenance[c]);
        }
        covers.push_back(std::move(trimmed));
    }
    Covering cq = compose_good_reduction(ci.inst.P, R, covers);

    Covering out;
    for (size_t c = 0; c < cq.classes.size(); ++c) {
        PairSet mapped;
        for (auto [a, b] : cq.classes[c]) {
            int ao = ci.to_old[a], bo = ci.to_old[b];
            mapped.push_back(ci.dual_applied ? Pair{bo, ao} : Pair{ao, bo});
        }
        if (auto cyc = find_strict_alternating_cycle(Pc, mapped)) {
            PairSet witness;
            for (int t : *cyc) witness.push_back(mapped[t]);
            throw MergeUnsound("lifted class is not reversible in the component",
                               std::move(witness));
        }
        out.add(std::move(mapped), "layer " + std::to_string(k) + ": " + cq.provenance[c]);
    }
    return out;
}

// merge all classes of one half index-wise and absorb the loose remainder
inline Covering half_cover(const Poset& Pc, const PlaneGraph& Gc, const Unfolding& U,
                           const std::vector<std::pair<int, PairSet>>& groups,
                           const PairSet& loose, const char* name) {
    std::vector<Covering> parts;
    for (auto& [k, cls] : groups) parts.push_back(supported_cover(Pc, Gc, U, k, cls));
    Covering H = compose_coverings(Pc, ComposeMode::MaxMerge, parts);
    if (loose.empty()) return H;
    if (H.classes.empty()) {
        Covering out;
        out.add(loose, std::string(name) + " loose remainder");
        return out;
    }
    PairSet merged = H.classes[0];
    merged.insert(merged.end(), loose.begin(), loose.end());
    if (auto cyc = find_strict_alternating_cycle(Pc, merged)) {
        PairSet witness;
        for (int t : *cyc) witness.push_back(merged[t]);
        throw MergeUnsound("loose remainder clashes with its half", std::move(witness));
    }
    H.classes[0] = std::move(merged);
    H.provenance[0] += std::string("; absorbed ") + name + " loose remainder";
    return H;
}

inline Covering component_cover(const Poset& Pc, const PlaneGraph& Gc, const PairSet& Ic,
                                bool& short_circuit) {
    Covering out;
    if (Ic.empty()) {
        short_circuit = true;
        return out;
    }
    if (is_reversible(Pc, Ic)) {
        short_circuit = true;
        out.add(Ic, "reversible outright");
        return out;
    }
    int z0 = -1;
    for (int v = 0; v < Pc.n && z0 < 0; ++v)
        if (Pc.down[v].count() == 1) z0 = v;
    Unfolding U = unfold(Pc, z0);
    SupportedSplit S = supported_split(Pc, Ic, U);

    PairSet I0 = S.loose_above, I1 = S.loose_below;
    for (auto& [k, cls] : S.above) I0.insert(I0.end(), cls.begin(), cls.end());
    for (auto& [k, cls] : S.below) I1.insert(I1.end(), cls.begin(), cls.end());
    if (is_reversible(Pc, I0) && is_reversible(Pc, I1)) {
        short_circuit = true;
        if (!I0.empty()) out.add(std::move(I0), "supported-from-above half, reversible");
        if (!I1.empty()) out.add(std::move(I1), "supported-from-below half, reversible");
        return out;
    }

    Covering above = half_cover(Pc, Gc, U, S.above, S.loose_above, "above");
    Covering below = half_cover(Pc, Gc, U, S.below, S.loose_below, "below");
    return compose_coverings(Pc, ComposeMode::Sum, {above, below});
}

} // namespace pipe_detail

inline RealizeResult realize_planar(const Poset& P, const PlaneGraph& G,
                                    std::optional<PairSet> I_opt = std::nullopt) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    RealizeResult res;
    auto stage = [&](const char* name) {
        auto t1 = clock::now();
        res.report.timings.push_back(
            {name, std::chrono::duration<double, std::milli>(t1 - t0).count()});
        t0 = t1;
    };

    PairSet inc = incomparable_pairs(P);
    PairSet I = I_opt ? std::move(*I_opt) : inc;
    for (auto [a, b] : I)
        if (!P.incomparable(a, b)) throw BadParameter("requested pair is comparable");

    Bits pi1(P.n), pi2(P.n);
    for (auto [a, b] : I) pi1.set(a), pi2.set(b);
    PairSet scope;
    for (auto [a, b] : inc)
        if (pi1.test(a) && pi2.test(b)) scope.push_back({a, b});
    res.report.s =
        scope.empty() ? 1 : se_exact(P, scope, std::max<size_t>(512, scope.size())).s;
    long long s = res.report.s;
    res.report.bound = 64 * s * s * s * s * s * s * (s + 3) * (s + 3) + 12;
    stage("se");

    std::vector<int> comp = cover_components(P);
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    // pairs spanning two components never close a strict alternating cycle
    // together with same-or-lower-component pairs, so two extra sets ordered
    // by component suffice for them
    PairSet cross_lo, cross_hi;
    for (auto [a, b] : I) {
        if (comp[a] < comp[b]) cross_lo.push_back({a, b});
        else if (comp[a] > comp[b]) cross_hi.push_back({a, b});
    }
    std::vector<Covering> parts;
    bool short_circuit = ncomp > 0;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> keep;
        for (int v = 0; v < P.n; ++v)
            if (comp[v] == c) keep.push_back(v);
        PairSet Ic;
        Covering cov;
        bool sc = false;
        if (ncomp == 1) {
            cov = pipe_detail::component_cover(P, G, I, sc);
            parts.push_back(std::move(cov));
        } else {
            Subposet sub = induced_subposet(P, keep);
            for (auto [a, b] : I)
                if (comp[a] == c && comp[b] == c)
                    Ic.push_back({sub.to_sub[a], sub.to_sub[b]});
            PairSet edges;
            std::vector<std::vector<int>> rot(keep.size());
            for (int v : keep)
                for (int w : G.neighbors(v))
                    if (comp[w] == c) rot[sub.to_sub[v]].push_back(sub.to_sub[w]);
            for (auto [u, v] : sub.P.cover) edges.push_back({std::min(u, v), std::max(u, v)});
            std::sort(edges.begin(), edges.end());
            auto Gc = replant((int)keep.size(), edges, rot, 0);
            cov = pipe_detail::component_cover(sub.P, Gc, Ic, sc);
            Covering mapped;
            for (size_t t = 0; t < cov.classes.size(); ++t) {
                PairSet cls;
                for (auto [a, b] : cov.classes[t])
                    cls.push_back({sub.to_full[a], sub.to_full[b]});
                mapped.add(std::move(cls), cov.provenance[t]);
            }
            parts.push_back(std::move(mapped));
        }
        short_circuit = short_circuit && sc;
        res.report.component_covers.push_back(parts.back().size());
    }
    res.report.short_circuit = short_circuit;
    res.covering = compose_coverings(P, ComposeMode::MaxMerge, parts);
    auto absorb = [&](size_t slot, PairSet& extra, const char* why) {
        if (extra.empty()) return;
        while (res.covering.classes.size() <= slot)
            res.covering.add({}, "cross-component slot");
        PairSet merged = res.covering.classes[slot];
        merged.insert(merged.end(), extra.begin(), extra.end());
        if (auto cyc = find_strict_alternating_cycle(P, merged)) {
            PairSet witness;
            for (int t : *cyc) witness.push_back(merged[t]);
            throw MergeUnsound("cross-component pairs clash with a class",
                               std::move(witness));
        }
        res.covering.classes[slot] = std::move(merged);
        res.covering.provenance[slot] += std::string("; ") + why;
    };
    absorb(0, cross_lo, "ascending cross-component pairs");
    absorb(cross_lo.empty() ? 0 : 1, cross_hi, "descending cross-component pairs");
    res.report.cover_size = res.covering.size();
    stage("covering");

    if ((long long)res.report.cover_size > res.report.bound)
        throw BoundViolated("covering exceeds the size bound: " +
                            std::to_string(res.report.cover_size) + " > " +
                            std::to_string(res.report.bound));

    res.realizer = realizer_from_covering(P, res.covering);
    auto v = verify_realizer(P, res.realizer, I);
    if (!v.ok) throw BoundViolated("emitted realizer failed verification: " + v.why);

    // top the realizer up until its intersection is P itself: every
    // incomparable (a, b) must see b before a somewhere
    auto missing_orders = [&]() {
        PairSet missing;
        std::vector<std::vector<int>> pos(res.realizer.size(), std::vector<int>(P.n));
        for (size_t r = 0; r < res.realizer.size(); ++r)
            for (int t = 0; t < P.n; ++t) pos[r][res.realizer[r][t]] = t;
        for (auto [a, b] : inc) {
            bool seen = false;
            for (size_t r = 0; r < res.realizer.size() && !seen; ++r)
                seen = pos[r][b] < pos[r][a];
            if (!seen) missing.push_back({a, b});
        }
        return missing;
    };
    for (PairSet missing = missing_orders(); !missing.empty(); missing = missing_orders()) {
        PairSet batch;
        for (auto p : missing) {
            batch.push_back(p);
            if (!is_reversible(P, batch)) batch.pop_back();
        }
        res.realizer.push_back(reverse_set(P, batch));
        ++res.report.extra_extensions;
    }
    res.report.realizer_size = res.realizer.size();
    stage("realize");
    return res;
}

} // namespace planedim
