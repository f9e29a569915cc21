#pragma once

// Instances (P, x0, G, e_-inf, I): the unfolding reduction, leftmost and
// rightmost witnessing paths, shadow blocks and shadows, and the left-of
// order on B = Up(x0).

#include <planedim/embed.hpp>

#include <map>

namespace planedim {

struct NotMinimal : Error { using Error::Error; };
struct NotConnected : Error { using Error::Error; };
struct NotAboveX0 : Error { using Error::Error; };
struct EmptyClass : Error { using Error::Error; };
struct ContractionBreaksSimplicity : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };

// ----- unfolding --------------------------------------------------------------

struct Unfolding {
    std::vector<std::vector<int>> layers; // Z_0, Z_1, ...
    std::vector<int> layer_of;
    int origin = -1;
};

// BFS-layering of the comparability graph: Z_0 = {z0}, odd layers grow
// upwards, even layers grow downwards
inline Unfolding unfold(const Poset& P, int z0) {
    if (z0 < 0 || z0 >= P.n) throw BadParameter("unfolding origin out of range");
    if (P.down[z0].count() != 1) throw NotMinimal("unfolding origin must be a minimal element");
    Unfolding U;
    U.origin = z0;
    U.layer_of.assign(P.n, -1);
    Bits seen(P.n);
    seen.set(z0);
    U.layer_of[z0] = 0;
    U.layers.push_back({z0});
    for (int k = 1;; ++k) {
        Bits next(P.n);
        for (int v : U.layers[k - 1]) next |= (k % 2 == 1) ? P.up[v] : P.down[v];
        next -= seen;
        if (next.none()) break;
        std::vector<int> layer;
        for (int v = (int)next.find_first(); v != -1 && v < P.n; v = (int)next.find_next(v)) {
            layer.push_back(v);
            U.layer_of[v] = k;
        }
        seen |= next;
        U.layers.push_back(std::move(layer));
    }
    if ((int)seen.count() != P.n) throw NotConnected("poset is not connected");
    return U;
}

// ----- supported classes ------------------------------------------------------

// The two halves of I and their per-layer classes. Every strict alternating
// cycle inside a half lives in a single class, so the loose remainders are
// reversible and each class is independently colorable with a shared palette.
struct SupportedSplit {
    std::vector<std::pair<int, PairSet>> above; // witnessed by even k >= 2, a's in Z_k
    std::vector<std::pair<int, PairSet>> below; // witnessed by odd k >= 1, b's in Z_k
    PairSet loose_above, loose_below;           // reversible leftovers of each half
};

inline SupportedSplit supported_split(const Poset& P, const PairSet& I, const Unfolding& U) {
    SupportedSplit S;
    std::map<int, PairSet> above, below;
    for (auto [a, b] : I) {
        int i = U.layer_of[a], j = U.layer_of[b];
        if (i < 0 || j < 0) throw BadParameter("pair outside the unfolded component");
        if (i < j || (i == j && i % 2 == 0)) {
            if (i >= 2 && i % 2 == 0)
                above[i].push_back({a, b});
            else
                S.loose_above.push_back({a, b});
        } else {
            if (j % 2 == 1)
                below[j].push_back({a, b});
            else
                S.loose_below.push_back({a, b});
        }
    }
    for (auto& [k, cls] : above) S.above.push_back({k, std::move(cls)});
    for (auto& [k, cls] : below) S.below.push_back({k, std::move(cls)});
    return S;
}

// ----- instance ---------------------------------------------------------------

struct ShadowBlock {
    int lo = -1, hi = -1;         // min and max of the block
    std::vector<int> left, right; // side paths, endpoints included
    bool degenerate = false;
    RegionSet region;
};

struct Shadow {
    int first_block = -1, last_block = -1; // inclusive 0-based block indices, -1 when empty
    int initial = -1, terminal = -1;
    RegionSet region;
};

struct ShadowDecomposition {
    std::vector<int> common; // z_0, ..., z_m
    std::vector<ShadowBlock> blocks;
    std::vector<int> reversing;
    int sd = 0;
    std::vector<Shadow> shadows; // sd + 1 entries
};

struct Instance {
    Poset P;
    PlaneGraph G;
    int x0 = -1;
    PairSet I;
    Bits B;             // up-set of x0, x0 included
    std::vector<int> A; // sorted distinct first components of I

    Instance(Poset p, PlaneGraph g, int x, PairSet pairs)
        : P(std::move(p)), G(std::move(g)), x0(x), I(std::move(pairs)) {
        if (G.n != P.n || x0 < 0 || x0 >= P.n)
            throw InvariantViolation("plane graph does not match the poset");
        if (G.x0 != x0) throw InvariantViolation("the anchor must sit at x0");
        if (P.down[x0].count() != 1) throw NotMinimal("x0 must be a minimal element");
        PairSet covers;
        for (auto [u, v] : P.cover) covers.push_back({std::min(u, v), std::max(u, v)});
        std::sort(covers.begin(), covers.end());
        if (G.edges() != covers)
            throw InvariantViolation("the plane graph must carry exactly the cover edges");
        B = P.up[x0];
        Bits as(P.n);
        for (auto [a, b] : I) {
            if (a == b || P.leq(a, b) || P.leq(b, a))
                throw InvariantViolation("I must consist of incomparable pairs");
            if (!B.test(b)) throw InvariantViolation("I must be singly constrained by x0");
            as.set(a);
        }
        for (int a = (int)as.find_first(); a != -1 && a < P.n; a = (int)as.find_next(a))
            A.push_back(a);
        wl_.resize(P.n);
        wr_.resize(P.n);
    }

    bool in_B(int v) const { return v >= 0 && v < P.n && B.test(v); }

    const std::vector<int>& wl(int b) const { return side_path(b, true); }
    const std::vector<int>& wr(int b) const { return side_path(b, false); }

    const ShadowDecomposition& shadows(int b) const {
        if (!in_B(b)) throw NotAboveX0("shadows are defined for elements above x0");
        auto it = shadow_cache_.find(b);
        if (it != shadow_cache_.end()) return it->second;
        return shadow_cache_.emplace(b, build_shadows(b)).first->second;
    }

  private:
    mutable std::vector<std::vector<int>> wl_, wr_;
    mutable std::map<int, ShadowDecomposition> shadow_cache_;

    // greedy walk from x0 to b: at each vertex take the first (leftmost) or
    // last (rightmost) admissible out-dart in the clockwise cut ordering at
    // the incoming dart; admissible heads cover the current element and stay
    // under b
    std::vector<int> walk(int b, bool leftmost) const {
        Bits R = P.down[b] & P.up[x0];
        std::vector<int> path{x0};
        int cur = x0, back = G.anchor;
        while (cur != b) {
            auto ord = cut_ordering(G, cur, back);
            int pick = -1;
            for (size_t i = 1; i < ord.size(); ++i) {
                int h = G.head[ord[i]];
                if (h == G.n || !R.test(h) || !P.lt(cur, h)) continue;
                pick = ord[i];
                if (leftmost) break;
            }
            if (pick < 0) throw InvariantViolation("witnessing walk is stuck"); // unreachable
            path.push_back(G.head[pick]);
            back = G.twin[pick];
            cur = G.head[pick];
        }
        return path;
    }

    const std::vector<int>& side_path(int b, bool leftmost) const {
        if (!in_B(b)) throw NotAboveX0("witnessing paths start above x0");
        auto& slot = (leftmost ? wl_ : wr_)[b];
        if (slot.empty()) slot = walk(b, leftmost);
        return slot;
    }

    ShadowDecomposition build_shadows(int b) const {
        const auto& L = wl(b);
        const auto& R = wr(b);
        ShadowDecomposition D;
        Bits onR(P.n);
        for (int v : R) onR.set(v);
        for (int v : L)
            if (onR.test(v)) D.common.push_back(v);
        std::vector<int> posL(P.n, -1), posR(P.n, -1);
        for (size_t i = 0; i < L.size(); ++i) posL[L[i]] = (int)i;
        for (size_t i = 0; i < R.size(); ++i) posR[R[i]] = (int)i;

        int m = (int)D.common.size() - 1;
        for (int i = 1; i <= m; ++i) {
            int lo = D.common[i - 1], hi = D.common[i];
            ShadowBlock blk;
            blk.lo = lo;
            blk.hi = hi;
            blk.left.assign(L.begin() + posL[lo], L.begin() + posL[hi] + 1);
            blk.right.assign(R.begin() + posR[lo], R.begin() + posR[hi] + 1);
            blk.degenerate = blk.left.size() == 2 && blk.right.size() == 2;
            std::vector<int> cyc(blk.left);
            for (size_t t = blk.right.size() - 1; t >= 1; --t) cyc.push_back(blk.right[t - 1]);
            cyc.pop_back(); // drop the repeated lo
            blk.region = region_of_cycle(G, cyc);
            D.blocks.push_back(std::move(blk));
        }

        // z_i is reversing iff b lands in the interior of block i; decided by
        // the clockwise pattern of the four incident path darts at z_i
        for (int i = 1; i < m; ++i) {
            int z = D.common[i];
            int eLp = G.dart(z, L[posL[z] + 1]);
            int eLm = G.dart(z, L[posL[z] - 1]);
            int eRp = G.dart(z, R[posR[z] + 1]);
            int eRm = G.dart(z, R[posR[z] - 1]);
            int pLm = dart_position(G, z, eLp, eLm);
            int pRm = dart_position(G, z, eLp, eRm);
            (void)eRp;
            if (pLm < pRm) D.reversing.push_back(z);
        }
        D.sd = (int)D.reversing.size();

        std::vector<int> cuts{0};
        for (int z : D.reversing) {
            int i = 0;
            while (D.common[i] != z) ++i;
            cuts.push_back(i);
        }
        cuts.push_back(m);
        for (int j = 0; j <= D.sd; ++j) {
            Shadow sh;
            sh.initial = D.common[cuts[j]];
            sh.terminal = D.common[cuts[j + 1]];
            sh.region.faces.resize(G.num_faces());
            sh.region.boundary_edges.resize(G.dart_count());
            sh.region.interior_edges.resize(G.dart_count());
            sh.region.boundary_vertices.resize(G.n + 1);
            sh.region.interior_vertices.resize(G.n + 1);
            if (cuts[j] < cuts[j + 1]) {
                sh.first_block = cuts[j];
                sh.last_block = cuts[j + 1] - 1;
                for (int t = sh.first_block; t <= sh.last_block; ++t) {
                    auto& R2 = D.blocks[t].region;
                    sh.region.faces |= R2.faces;
                    sh.region.boundary_edges |= R2.boundary_edges;
                    sh.region.interior_edges |= R2.interior_edges;
                    sh.region.boundary_vertices |= R2.boundary_vertices;
                    sh.region.interior_vertices |= R2.interior_vertices;
                }
            }
            D.shadows.push_back(std::move(sh));
        }
        return D;
    }
};

inline ShadowDecomposition shadow_decomposition(const Instance& inst, int b) {
    return inst.shadows(b);
}

inline Location locate_in_shadow(const Instance& inst, int v, int b, int j) {
    const auto& D = inst.shadows(b);
    if (j < 0) throw BadParameter("shadow index must be nonnegative");
    if (j > D.sd) return Location::Outside;
    return vertex_in_region(D.shadows[j].region, v);
}

// v in shad(b) = shad_0(b), boundary included
inline bool in_shad(const Instance& inst, int v, int b) {
    return locate_in_shadow(inst, v, b, 0) != Location::Outside;
}

// ----- the four pair types and left-of ----------------------------------------

enum class PairClass { InsidePair, OutsidePair, LeftPair, RightPair, SubpathLL, SubpathRR, Other };

inline PairClass compare_B(const Instance& inst, int b1, int b2) {
    auto cL = compare_paths(inst.G, inst.wl(b1), inst.wl(b2), inst.G.anchor).order;
    auto cR = compare_paths(inst.G, inst.wr(b1), inst.wr(b2), inst.G.anchor).order;
    auto directional = [](PathOrder o) { return o == PathOrder::LeftOf || o == PathOrder::RightOf; };
    if (!directional(cL)) return PairClass::SubpathLL;
    if (!directional(cR)) return PairClass::SubpathRR;
    if (cL == PathOrder::LeftOf)
        return cR == PathOrder::LeftOf ? PairClass::LeftPair : PairClass::OutsidePair;
    return cR == PathOrder::LeftOf ? PairClass::InsidePair : PairClass::RightPair;
}

inline bool left_of(const Instance& inst, int b1, int b2) {
    return compare_B(inst, b1, b2) == PairClass::LeftPair && !in_shad(inst, b1, b2) &&
           !in_shad(inst, b2, b1);
}

inline bool right_of(const Instance& inst, int b1, int b2) { return left_of(inst, b2, b1); }

// ----- contraction to an instance ----------------------------------------------

struct ContractedInstance {
    Instance inst;
    bool dual_applied = false;
    std::vector<int> to_new; // old id -> new id, -1 for contracted elements
    std::vector<int> to_old; // new id -> old id; x0 maps to -1 (fresh element)
};

// Collapse Z_{<k} into a fresh minimum x0 and keep Z_{>=k} as a convex
// subposet; for even k the whole picture is dualized (poset reversed,
// drawing mirrored) first so that the class ends up singly constrained from
// below. Contracted multi-edges are pruned and non-cover survivors dropped.
inline ContractedInstance contract_to_instance(const Poset& P0, const PairSet& I_class,
                                               const Unfolding& U, int k, const PlaneGraph& G0) {
    if (I_class.empty()) throw EmptyClass("cannot contract for an empty class");
    if (k < 1 || k >= (int)U.layers.size()) throw BadParameter("witness layer out of range");
    bool dual = k % 2 == 0;
    Poset P = dual ? dual_poset(P0) : P0;
    PlaneGraph G = dual ? mirror(G0) : G0;
    PairSet I;
    for (auto [a, b] : I_class) I.push_back(dual ? Pair{b, a} : Pair{a, b});
    for (auto [a, b] : I) {
        if (U.layer_of[b] != k || U.layer_of[a] < k)
            throw BadParameter("class is not supported with the given witness");
    }

    std::vector<int> Y;
    Bits inY(P.n);
    for (int i = 0; i < k; ++i)
        for (int v : U.layers[i]) Y.push_back(v), inY.set(v);
    std::sort(Y.begin(), Y.end());
    auto C = contract_connected_set(G, Y);
    int rep = C.rep;

    // x0's covers go to the minimal elements of the Z_k subposet; other
    // contracted stubs are comparabilities but not covers
    Bits zk(P.n);
    for (int v : U.layers[k]) zk.set(v);
    PairSet edges;
    for (auto [u, v] : C.edges) {
        int z = u == rep ? v : (v == rep ? u : -1);
        if (z >= 0 && (P.down[z] & zk).count() != 1) continue; // z not minimal in Z_k
        edges.push_back({u, v});
    }
    std::set<Pair> kept(edges.begin(), edges.end());
    std::vector<std::vector<int>> rotation(P.n);
    for (int u = 0; u < P.n; ++u)
        for (int v : C.rotation[u])
            if (kept.count({std::min(u, v), std::max(u, v)})) rotation[u].push_back(v);

    // relabel the survivors
    std::vector<int> survivors{rep};
    for (int v = 0; v < P.n; ++v)
        if (!inY.test(v)) survivors.push_back(v);
    std::sort(survivors.begin(), survivors.end());
    std::vector<int> to_new(P.n, -1), to_old(survivors.size(), -1);
    for (int i = 0; i < (int)survivors.size(); ++i) {
        to_new[survivors[i]] = i;
        if (survivors[i] != rep) to_old[i] = survivors[i];
    }
    int x0 = to_new[rep];

    PairSet qcover;
    for (auto [u, v] : P.cover)
        if (!inY.test(u) && !inY.test(v)) qcover.push_back({to_new[u], to_new[v]});
    for (int z = (int)zk.find_first(); z != -1 && z < P.n; z = (int)zk.find_next(z))
        if ((P.down[z] & zk).count() == 1) qcover.push_back({x0, to_new[z]});
    Poset Q = build_poset((int)survivors.size(), qcover);

    PairSet qedges;
    for (auto [u, v] : edges) {
        Pair e{to_new[u], to_new[v]};
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first == e.second) throw ContractionBreaksSimplicity("contraction left a loop");
        qedges.push_back(e);
    }
    std::sort(qedges.begin(), qedges.end());
    if (std::adjacent_find(qedges.begin(), qedges.end()) != qedges.end())
        throw ContractionBreaksSimplicity("contraction left a parallel edge");
    std::vector<std::vector<int>> qrot(survivors.size());
    for (int i = 0; i < (int)survivors.size(); ++i)
        for (int v : rotation[survivors[i]]) qrot[i].push_back(to_new[v]);
    PlaneGraph QG = replant((int)survivors.size(), qedges, qrot, x0);

    PairSet J;
    for (auto [a, b] : I) J.push_back({to_new[a], to_new[b]});
    ContractedInstance out{Instance(std::move(Q), std::move(QG), x0, std::move(J)), dual,
                           std::move(to_new), std::move(to_old)};
    return out;
}

} // namespace planedim
