#pragma once

// Good instances: risky and dangerous pairs, escape numbers and addresses,
// the address-class reduction with its palette-merge composer, and
// maximalization.

#include <planedim/instance.hpp>

#include <array>
#include <functional>

namespace planedim {

// R1: some b' >= a has its leftmost path strictly left of W_L(b)
inline bool satisfies_r1(const Instance& inst, int a, int b) {
    Bits cand = inst.P.up[a] & inst.B;
    for (int c = (int)cand.find_first(); c != -1 && c < inst.P.n; c = (int)cand.find_next(c))
        if (compare_paths(inst.G, inst.wl(c), inst.wl(b), inst.G.anchor).order == PathOrder::LeftOf)
            return true;
    return false;
}

// R2: some b'' >= a has W_R(b) strictly left of its rightmost path
inline bool satisfies_r2(const Instance& inst, int a, int b) {
    Bits cand = inst.P.up[a] & inst.B;
    for (int c = (int)cand.find_first(); c != -1 && c < inst.P.n; c = (int)cand.find_next(c))
        if (compare_paths(inst.G, inst.wr(b), inst.wr(c), inst.G.anchor).order == PathOrder::LeftOf)
            return true;
    return false;
}

inline bool is_risky(const Instance& inst, int a, int b) {
    return satisfies_r1(inst, a, b) && satisfies_r2(inst, a, b);
}

// D1/D2 strengthen R1/R2 to the left-of order on B
inline bool satisfies_d1(const Instance& inst, int a, int b) {
    Bits cand = inst.P.up[a] & inst.B;
    for (int c = (int)cand.find_first(); c != -1 && c < inst.P.n; c = (int)cand.find_next(c))
        if (left_of(inst, c, b)) return true;
    return false;
}

inline bool satisfies_d2(const Instance& inst, int a, int b) {
    Bits cand = inst.P.up[a] & inst.B;
    for (int c = (int)cand.find_first(); c != -1 && c < inst.P.n; c = (int)cand.find_next(c))
        if (left_of(inst, b, c)) return true;
    return false;
}

inline bool is_dangerous(const Instance& inst, int a, int b) {
    return satisfies_d1(inst, a, b) && satisfies_d2(inst, a, b);
}

struct Address {
    int j = 0;
    int x = -1;
    auto operator<=>(const Address&) const = default;
};

// least j with a outside shad_j(b), and the initial element of that shadow;
// past the deepest shadow the empty shadow "starts" at b itself
inline Address escape_address(const Instance& inst, int a, int b) {
    const auto& D = inst.shadows(b);
    for (int j = 0; j <= D.sd; ++j)
        if (locate_in_shadow(inst, a, b, j) == Location::Outside)
            return {j, D.shadows[j].initial};
    return {D.sd + 1, b};
}

// ----- strict-cycle enumeration (for spot checks) ------------------------------

// visits strict alternating cycles of size 2..maxk as index vectors into I;
// the search stops after `budget` extension steps, so on large inputs this is
// a deterministic sample rather than an exhaustive scan
template <typename F>
inline void for_each_strict_cycle(const Poset& P, const PairSet& I, int maxk, size_t budget,
                                  F&& cb) {
    int m = (int)I.size();
    auto adj = pair_digraph(P, I); // arc p -> q iff a_p <= b_q
    std::vector<int> path;
    auto strict = [&](const std::vector<int>& cyc) {
        int k = (int)cyc.size();
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (adj[cyc[i]].test(cyc[j]) != (j == (i + 1) % k)) return false;
        return true;
    };
    size_t steps = 0;
    std::function<void(int)> go = [&](int v) {
        if (steps >= budget) return;
        path.push_back(v);
        if ((int)path.size() >= 2 && adj[v].test(path[0]) && strict(path)) cb(path);
        if ((int)path.size() < maxk) {
            for (int w = (int)adj[v].find_first(); w != -1 && w < m; w = (int)adj[v].find_next(w)) {
                if (w <= path[0] || std::find(path.begin(), path.end(), w) != path.end()) continue;
                ++steps;
                go(w);
            }
        }
        path.pop_back();
    };
    for (int p = 0; p < m && steps < budget; ++p) go(p);
}

// ----- good instances -----------------------------------------------------------

// An instance known to satisfy, on top of I1-I5:
//   I6: a outside shad(b) for every pair,
//   I7: the b's of every strict alternating cycle are left/right-comparable,
//   I8: every pair is dangerous.
// I6 and I8 are checked exhaustively; I7 by enumerating strict cycles up to
// size 4 within a step budget (the construction guarantees it in general).
struct GoodInstance {
    Instance inst;

    explicit GoodInstance(Instance in, size_t cycle_budget = 200000) : inst(std::move(in)) {
        for (auto [a, b] : inst.I) {
            if (in_shad(inst, a, b)) throw InvariantViolation("I6 fails: a inside shad(b)");
            if (!is_dangerous(inst, a, b)) throw InvariantViolation("I8 fails: pair not dangerous");
        }
        bool ok = true;
        for_each_strict_cycle(inst.P, inst.I, 4, cycle_budget, [&](const std::vector<int>& cyc) {
            for (size_t s = 0; s < cyc.size() && ok; ++s)
                for (size_t t = s + 1; t < cyc.size() && ok; ++t) {
                    int bs = inst.I[cyc[s]].second, bt = inst.I[cyc[t]].second;
                    ok = left_of(inst, bs, bt) || left_of(inst, bt, bs);
                }
        });
        if (!ok) throw InvariantViolation("I7 fails: cycle with unordered b's");
    }
};

// I9 on top: I is exactly the set of dangerous shadow-avoiding incomparable
// pairs inside pi_1(I) x pi_2(I)
struct MaximalGoodInstance {
    GoodInstance good;

    explicit MaximalGoodInstance(GoodInstance g) : good(std::move(g)) {
        auto& inst = good.inst;
        if (inst.I != candidate_pairs(inst))
            throw InvariantViolation("I9 fails: an addable pair exists");
    }

    static PairSet candidate_pairs(const Instance& inst) {
        Bits p1(inst.P.n), p2(inst.P.n);
        for (auto [a, b] : inst.I) {
            p1.set(a);
            p2.set(b);
        }
        PairSet out;
        for (int a = (int)p1.find_first(); a != -1 && a < inst.P.n; a = (int)p1.find_next(a))
            for (int b = (int)p2.find_first(); b != -1 && b < inst.P.n; b = (int)p2.find_next(b))
                if (inst.P.incomparable(a, b) && !in_shad(inst, a, b) && is_dangerous(inst, a, b))
                    out.push_back({a, b});
        return out;
    }
};

inline MaximalGoodInstance maximalize(const GoodInstance& g) {
    PairSet plus = MaximalGoodInstance::candidate_pairs(g.inst);
    for (auto p : g.inst.I)
        if (std::find(plus.begin(), plus.end(), p) == plus.end())
            throw InvariantViolation("maximalization lost a pair"); // unreachable
    return MaximalGoodInstance(GoodInstance(Instance(g.inst.P, g.inst.G, g.inst.x0, std::move(plus))));
}

// ----- the address-class reduction ----------------------------------------------

struct AddressClass {
    int theta = 0;
    Address addr;             // in the parent instance's ids
    GoodInstance good;        // sub-instance over {p : p not< x}, pairs relabeled
    std::vector<int> to_sub;  // parent id -> sub id, -1 when dropped
    std::vector<int> to_full; // sub id -> parent id
    PairSet pairs_full;       // good.inst.I in parent ids
};

struct GoodReduction {
    std::array<PairSet, 2> nonrisky;                     // fails R1 / fails R2 only
    std::array<std::array<PairSet, 2>, 2> nondangerous;  // per theta: fails D1 / D2 only
    std::vector<AddressClass> classes;                   // sorted by (theta, j, x)
};

namespace detail {

// restrict the instance to {p : p not< x}, planted at x with the anchor in
// the corner vacated by the last edge of W_L(x)
struct SubParts {
    Poset P;
    PlaneGraph G;
    int x0;
    std::vector<int> to_sub, to_full;
};

inline SubParts restrict_above(const Instance& inst, int x) {
    std::vector<int> keep;
    for (int p = 0; p < inst.P.n; ++p)
        if (!inst.P.lt(p, x)) keep.push_back(p);
    auto S = induced_subposet(inst.P, keep);
    int m = (int)keep.size();
    PairSet edges;
    for (auto [u, v] : S.P.cover) edges.push_back({std::min(u, v), std::max(u, v)});
    std::sort(edges.begin(), edges.end());
    std::vector<std::vector<int>> rot(m);
    for (int i = 0; i < m; ++i)
        for (int w : inst.G.neighbors(keep[i]))
            if (S.to_sub[w] >= 0) rot[i].push_back(S.to_sub[w]);
    int pos = 0;
    if (x == inst.x0) {
        pos = 0;
        auto nb = inst.G.neighbors(x);
        for (int i = 0; i < inst.G.anchor_pos && i < (int)nb.size(); ++i)
            if (S.to_sub[nb[i]] >= 0) ++pos;
    } else {
        const auto& W = inst.wl(x);
        int prev = W[W.size() - 2];
        auto ord = cut_ordering(inst.G, x, inst.G.dart(x, prev));
        rot[S.to_sub[x]].clear();
        for (size_t t = 1; t < ord.size(); ++t) {
            int w = inst.G.head[ord[t]];
            if (w != inst.G.n && S.to_sub[w] >= 0) rot[S.to_sub[x]].push_back(S.to_sub[w]);
        }
        pos = 0; // the anchor takes the slot the deleted edge left behind
    }
    PlaneGraph G = build_plane_graph(m, edges, rot, S.to_sub[x], pos);
    return {std::move(S.P), std::move(G), S.to_sub[x], std::move(S.to_sub), std::move(S.to_full)};
}

} // namespace detail

inline GoodReduction good_reduction(const Instance& inst) {
    GoodReduction R;
    std::map<Address, PairSet> buckets;
    for (auto [a, b] : inst.I) {
        if (!is_risky(inst, a, b)) {
            R.nonrisky[satisfies_r1(inst, a, b) ? 1 : 0].push_back({a, b});
            continue;
        }
        buckets[escape_address(inst, a, b)].push_back({a, b});
    }
    for (auto& [addr, cls] : buckets) {
        int theta = addr.j % 2;
        auto sub = detail::restrict_above(inst, addr.x);
        PairSet J;
        for (auto [a, b] : cls) J.push_back({sub.to_sub[a], sub.to_sub[b]});
        Instance probe(sub.P, sub.G, sub.x0, J);
        PairSet dangerous, dangerous_full;
        for (size_t t = 0; t < J.size(); ++t) {
            auto [a, b] = J[t];
            if (in_shad(probe, a, b))
                throw InvariantViolation("address class fails I6 in its sub-instance");
            if (!is_dangerous(probe, a, b)) {
                R.nondangerous[theta][satisfies_d1(probe, a, b) ? 1 : 0].push_back(cls[t]);
                continue;
            }
            dangerous.push_back(J[t]);
            dangerous_full.push_back(cls[t]);
        }
        if (dangerous.empty()) continue;
        AddressClass entry{theta,
                           addr,
                           GoodInstance(Instance(std::move(sub.P), std::move(sub.G), sub.x0,
                                                 std::move(dangerous))),
                           std::move(sub.to_sub),
                           std::move(sub.to_full),
                           std::move(dangerous_full)};
        R.classes.push_back(std::move(entry));
    }
    return R;
}

// Palette-merge: within each parity the class coverings share slots (strict
// cycles never cross address classes), the non-dangerous leftovers add two
// sets per parity, and the non-risky pairs two more. Every emitted set is
// re-verified reversible.
inline Covering compose_good_reduction(const Poset& P, const GoodReduction& R,
                                       const std::vector<Covering>& class_covers) {
    if (class_covers.size() != R.classes.size())
        throw BadParameter("one covering per address class expected");
    Covering out;
    auto emit = [&](PairSet cls, const std::string& why) {
        if (cls.empty()) return;
        if (!is_reversible(P, cls)) throw NotReversible("composed class not reversible", cls);
        out.add(std::move(cls), why);
    };
    for (int theta = 0; theta < 2; ++theta) {
        size_t K = 0;
        for (size_t c = 0; c < R.classes.size(); ++c)
            if (R.classes[c].theta == theta) K = std::max(K, class_covers[c].size());
        std::vector<PairSet> slots(K);
        for (size_t c = 0; c < R.classes.size(); ++c) {
            if (R.classes[c].theta != theta) continue;
            auto& cls = R.classes[c];
            for (size_t k = 0; k < class_covers[c].size(); ++k)
                for (auto [a, b] : class_covers[c].classes[k])
                    slots[k].push_back({cls.to_full[a], cls.to_full[b]});
        }
        for (size_t k = 0; k < K; ++k)
            emit(std::move(slots[k]),
                 "parity " + std::to_string(theta) + " slot " + std::to_string(k));
        emit(R.nondangerous[theta][0], "parity " + std::to_string(theta) + " fails D1");
        emit(R.nondangerous[theta][1], "parity " + std::to_string(theta) + " fails D2");
    }
    emit(R.nonrisky[0], "fails R1");
    emit(R.nonrisky[1], "fails R2");
    return out;
}

} // namespace planedim
