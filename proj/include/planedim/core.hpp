#pragma once

// Order-theoretic core: posets as reachability bitsets over a cover DAG,
// alternating-cycle detection, reversible sets, and the exact small-instance
// solvers for dimension and the standard-example number.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace planedim {

using Bits = boost::dynamic_bitset<>;
using Pair = std::pair<int, int>;
using PairSet = std::vector<Pair>;
using LinExt = std::vector<int>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadParameter : Error { using Error::Error; };
struct CycleDetected : Error { using Error::Error; };
struct RedundantCover : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

struct NotReversible : Error {
    PairSet cycle; // a strict alternating cycle witnessing irreversibility
    NotReversible(std::string msg, PairSet c) : Error(std::move(msg)), cycle(std::move(c)) {}
};

struct Poset {
    int n = 0;
    PairSet cover;                        // transitive reduction, (lo, hi)
    std::vector<Bits> up;                 // up[x][y] iff x <= y
    std::vector<Bits> down;               // down[x][y] iff y <= x
    std::vector<std::vector<int>> up_adj; // cover successors
    std::vector<std::vector<int>> down_adj;

    bool leq(int x, int y) const { return up[x].test(y); }
    bool lt(int x, int y) const { return x != y && up[x].test(y); }
    bool comparable(int x, int y) const { return up[x].test(y) || up[y].test(x); }
    bool incomparable(int x, int y) const { return !comparable(x, y); }

    std::vector<int> minimal_elements() const {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (down_adj[v].empty()) out.push_back(v);
        return out;
    }
    std::vector<int> maximal_elements() const {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (up_adj[v].empty()) out.push_back(v);
        return out;
    }
};

inline Poset build_poset(int n, const PairSet& cover) {
    if (n < 0) throw BadParameter("poset size must be nonnegative");
    Poset P;
    P.n = n;
    P.up_adj.assign(n, {});
    P.down_adj.assign(n, {});
    std::set<Pair> seen;
    for (auto [x, y] : cover) {
        if (x < 0 || x >= n || y < 0 || y >= n) throw BadParameter("cover id out of range");
        if (x == y) throw BadParameter("cover loop");
        if (!seen.insert({x, y}).second) throw BadParameter("duplicate cover edge");
        P.up_adj[x].push_back(y);
        P.down_adj[y].push_back(x);
        P.cover.push_back({x, y});
    }
    for (auto& a : P.up_adj) std::sort(a.begin(), a.end());
    for (auto& a : P.down_adj) std::sort(a.begin(), a.end());

    // Kahn; min-id order keeps everything downstream deterministic
    std::vector<int> indeg(n);
    for (int v = 0; v < n; ++v) indeg[v] = (int)P.down_adj[v].size();
    std::priority_queue<int, std::vector<int>, std::greater<>> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push(v);
    std::vector<int> topo;
    while (!q.empty()) {
        int v = q.top();
        q.pop();
        topo.push_back(v);
        for (int w : P.up_adj[v])
            if (--indeg[w] == 0) q.push(w);
    }
    if ((int)topo.size() != n) throw CycleDetected("cover relation contains a directed cycle");

    P.up.assign(n, Bits(n));
    P.down.assign(n, Bits(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int v = *it;
        P.up[v].set(v);
        for (int w : P.up_adj[v]) P.up[v] |= P.up[w];
    }
    for (int v : topo) {
        P.down[v].set(v);
        for (int w : P.down_adj[v]) P.down[v] |= P.down[w];
    }
    for (auto [x, y] : P.cover) {
        for (int z : P.up_adj[x])
            if (z != y && P.up[z].test(y))
                throw RedundantCover("cover edge " + std::to_string(x) + "<" + std::to_string(y) +
                                     " is implied by a longer chain");
    }
    return P;
}

// rebuilds a poset from an arbitrary (acyclic) relation, reducing to covers
inline Poset poset_from_relation(int n, const PairSet& rel) {
    std::vector<Bits> up(n, Bits(n));
    std::vector<std::vector<int>> adj(n);
    for (auto [x, y] : rel) adj[x].push_back(y);
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : adj[v]) ++indeg[w];
    std::vector<int> q, topo;
    for (int v = 0; v < n; ++v)
        if (!indeg[v]) q.push_back(v);
    while (!q.empty()) {
        int v = q.back();
        q.pop_back();
        topo.push_back(v);
        for (int w : adj[v])
            if (--indeg[w] == 0) q.push_back(w);
    }
    if ((int)topo.size() != n) throw CycleDetected("relation contains a directed cycle");
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        up[*it].set(*it);
        for (int w : adj[*it]) up[*it] |= up[w];
    }
    PairSet cov;
    for (int x = 0; x < n; ++x)
        for (int y = (int)up[x].find_first(); y != -1 && y < n; y = (int)up[x].find_next(y)) {
            if (y == x) continue;
            bool direct = true;
            for (int z = (int)up[x].find_first(); z != -1 && z < n; z = (int)up[x].find_next(z))
                if (z != x && z != y && up[z].test(y)) { direct = false; break; }
            if (direct) cov.push_back({x, y});
        }
    return build_poset(n, cov);
}

inline Poset dual_poset(const Poset& P) {
    PairSet cov;
    cov.reserve(P.cover.size());
    for (auto [x, y] : P.cover) cov.push_back({y, x});
    return build_poset(P.n, cov);
}

// induced subposet; old id -> new id in `to_sub` (-1 when dropped), new -> old in `to_full`
struct Subposet {
    Poset P;
    std::vector<int> to_sub;
    std::vector<int> to_full;
};

inline Subposet induced_subposet(const Poset& P, const std::vector<int>& keep_sorted) {
    Subposet S;
    S.to_full = keep_sorted;
    S.to_sub.assign(P.n, -1);
    for (int i = 0; i < (int)keep_sorted.size(); ++i) S.to_sub[keep_sorted[i]] = i;
    PairSet rel;
    for (int x : keep_sorted)
        for (int y : keep_sorted)
            if (P.lt(x, y)) rel.push_back({S.to_sub[x], S.to_sub[y]});
    S.P = poset_from_relation((int)keep_sorted.size(), rel);
    return S;
}

inline PairSet incomparable_pairs(const Poset& P) {
    PairSet I;
    for (int a = 0; a < P.n; ++a)
        for (int b = 0; b < P.n; ++b)
            if (a != b && P.incomparable(a, b)) I.push_back({a, b});
    return I;
}

// ----- alternating cycles ---------------------------------------------------

// digraph on pair indices: i -> j iff a_i <= b_j (the alternating-cycle step)
inline std::vector<Bits> pair_digraph(const Poset& P, const PairSet& I) {
    int m = (int)I.size();
    std::vector<Bits> adj(m, Bits(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && P.leq(I[i].first, I[j].second)) adj[i].set(j);
    return adj;
}

namespace detail {

// strongly connected components (Tarjan, iterative); returns component ids
inline std::vector<int> scc_components(const std::vector<Bits>& adj) {
    int m = (int)adj.size();
    std::vector<int> low(m, -1), num(m, -1), comp(m, -1), stk;
    std::vector<bool> on(m, false);
    int idx = 0, ncomp = 0;
    std::vector<std::tuple<int, int>> call;
    for (int s = 0; s < m; ++s) {
        if (num[s] != -1) continue;
        call.push_back({s, 0});
        while (!call.empty()) {
            auto& [v, state] = call.back();
            if (state == 0) {
                num[v] = low[v] = idx++;
                stk.push_back(v);
                on[v] = true;
            }
            bool descended = false;
            for (int w = (state == 0) ? (int)adj[v].find_first() : (int)adj[v].find_next(state - 1);
                 w != -1 && w < m; w = (int)adj[v].find_next(w)) {
                state = w + 1;
                if (num[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on[w]) low[v] = std::min(low[v], num[w]);
            }
            if (descended) continue;
            if (low[v] == num[v]) {
                while (true) {
                    int w = stk.back();
                    stk.pop_back();
                    on[w] = false;
                    comp[w] = ncomp;
                    if (w == v) break;
                }
                ++ncomp;
            }
            call.pop_back();
            if (!call.empty()) {
                int p = std::get<0>(call.back());
                low[p] = std::min(low[p], low[v]);
            }
        }
    }
    return comp;
}

// any directed cycle through the lowest-index vertex of the first nontrivial SCC
inline std::optional<std::vector<int>> find_digraph_cycle(const std::vector<Bits>& adj) {
    int m = (int)adj.size();
    std::vector<int> comp = scc_components(adj);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> size(ncomp, 0), lowest(ncomp, m);
    for (int v = 0; v < m; ++v) {
        ++size[comp[v]];
        lowest[comp[v]] = std::min(lowest[comp[v]], v);
    }
    int best = -1;
    for (int c = 0; c < ncomp; ++c)
        if (size[c] >= 2 && (best == -1 || lowest[c] < lowest[best])) best = c;
    if (best == -1) return std::nullopt;
    // BFS within the SCC from its lowest vertex back to itself, smallest-id first
    int src = lowest[best];
    std::vector<int> par(m, -1);
    std::vector<bool> vis(m, false);
    std::queue<int> bfs;
    bfs.push(src);
    vis[src] = true;
    int found = -1;
    while (!bfs.empty() && found == -1) {
        int v = bfs.front();
        bfs.pop();
        for (int w = (int)adj[v].find_first(); w != -1 && w < m; w = (int)adj[v].find_next(w)) {
            if (comp[w] != best) continue;
            if (w == src) { found = v; break; }
            if (!vis[w]) {
                vis[w] = true;
                par[w] = v;
                bfs.push(w);
            }
        }
    }
    assert(found != -1);
    std::vector<int> cyc;
    for (int v = found; v != -1; v = par[v]) cyc.push_back(v);
    std::reverse(cyc.begin(), cyc.end());
    return cyc;
}

} // namespace detail

// Returns indices into I forming a STRICT alternating cycle (a_i <= b_{i+1}
// cyclically, and no other comparability between cycle pairs), or nullopt if
// I is reversible. A found cycle is shortened until strict: with the cycle
// rotated so the offending comparability involves a_1 and b_j (j != 2),
//   a_1 <= b_j  gives  (a_1,b_1),(a_j,b_j),...,(a_k,b_k)
//   b_j <= a_1  gives  (a_2,b_2),...,(a_{j-1},b_{j-1})
inline std::optional<std::vector<int>> find_strict_alternating_cycle(const Poset& P, const PairSet& I) {
    auto adj = pair_digraph(P, I);
    auto cyc0 = detail::find_digraph_cycle(adj);
    if (!cyc0) return std::nullopt;
    std::vector<int> cyc = *cyc0;
    auto rotate_to = [&](int i) { std::rotate(cyc.begin(), cyc.begin() + i, cyc.end()); };
    while (true) {
        int k = (int)cyc.size();
        int vi = -1, vj = -1;
        bool upper = false; // true: a_i <= b_j; false: b_j <= a_i
        for (int i = 0; i < k && vi == -1; ++i)
            for (int j = 0; j < k; ++j) {
                if (j == (i + 1) % k || j == i) continue;
                auto [ai, bi] = I[cyc[i]];
                auto [aj, bj] = I[cyc[j]];
                (void)bi;
                (void)aj;
                if (P.leq(ai, bj)) { vi = i, vj = j, upper = true; break; }
                if (P.leq(bj, ai)) { vi = i, vj = j, upper = false; break; }
            }
        if (vi == -1) break;
        rotate_to(vi);
        int j = (vj - vi + k) % k; // offending index after rotation, in [2, k-1] or 0... never 1
        assert(j >= 2);
        std::vector<int> next;
        if (upper) {
            next.push_back(cyc[0]);
            for (int t = j; t < k; ++t) next.push_back(cyc[t]);
        } else {
            for (int t = 1; t < j; ++t) next.push_back(cyc[t]);
        }
        assert((int)next.size() >= 2 && (int)next.size() < k);
        cyc = next;
    }
    return cyc;
}

inline bool is_reversible(const Poset& P, const PairSet& I) {
    return !find_strict_alternating_cycle(P, I).has_value();
}

// one linear extension reversing every pair of S (b before a), min-id tie-break
inline LinExt reverse_set(const Poset& P, const PairSet& S) {
    std::vector<std::vector<int>> adj(P.n);
    std::vector<int> indeg(P.n, 0);
    auto arc = [&](int x, int y) {
        adj[x].push_back(y);
        ++indeg[y];
    };
    for (auto [x, y] : P.cover) arc(x, y);
    for (auto [a, b] : S) {
        if (!P.incomparable(a, b)) throw BadParameter("reverse_set: pair is comparable");
        arc(b, a);
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> q;
    for (int v = 0; v < P.n; ++v)
        if (indeg[v] == 0) q.push(v);
    LinExt out;
    while (!q.empty()) {
        int v = q.top();
        q.pop();
        out.push_back(v);
        for (int w : adj[v])
            if (--indeg[w] == 0) q.push(w);
    }
    if ((int)out.size() != P.n) {
        auto cyc = find_strict_alternating_cycle(P, S);
        assert(cyc.has_value());
        PairSet witness;
        for (int i : *cyc) witness.push_back(S[i]);
        throw NotReversible("set contains an alternating cycle", witness);
    }
    return out;
}

inline LinExt linear_extension(const Poset& P) { return reverse_set(P, {}); }

// extends a linear extension of an induced subposet (given by original ids,
// in order) to a linear extension of P; consecutive constraints only, which
// is enough to pin the whole subsequence
inline LinExt lift_extension(const Poset& P, const std::vector<int>& sub_order) {
    std::vector<std::vector<int>> adj(P.n);
    std::vector<int> indeg(P.n, 0);
    auto arc = [&](int x, int y) {
        adj[x].push_back(y);
        ++indeg[y];
    };
    for (auto [x, y] : P.cover) arc(x, y);
    for (size_t i = 0; i + 1 < sub_order.size(); ++i) arc(sub_order[i], sub_order[i + 1]);
    std::priority_queue<int, std::vector<int>, std::greater<>> q;
    for (int v = 0; v < P.n; ++v)
        if (indeg[v] == 0) q.push(v);
    LinExt out;
    while (!q.empty()) {
        int v = q.top();
        q.pop();
        out.push_back(v);
        for (int w : adj[v])
            if (--indeg[w] == 0) q.push(w);
    }
    if ((int)out.size() != P.n) throw Error("lift_extension: sub order conflicts with P");
    return out;
}

// ----- realizer verification ------------------------------------------------

struct VerifyResult {
    bool ok = true;
    std::string why;
};

inline VerifyResult verify_realizer(const Poset& P, const std::vector<LinExt>& R,
                                    const std::optional<PairSet>& I = std::nullopt) {
    auto fail = [](std::string w) { return VerifyResult{false, std::move(w)}; };
    if (R.empty()) {
        if (P.n > 1 || (I && !I->empty())) return fail("empty realizer");
        return {};
    }
    std::vector<std::vector<int>> pos(R.size(), std::vector<int>(P.n, -1));
    for (size_t r = 0; r < R.size(); ++r) {
        if ((int)R[r].size() != P.n) return fail("extension " + std::to_string(r) + " wrong length");
        for (int i = 0; i < P.n; ++i) {
            int v = R[r][i];
            if (v < 0 || v >= P.n || pos[r][v] != -1)
                return fail("extension " + std::to_string(r) + " not a permutation");
            pos[r][v] = i;
        }
        for (auto [x, y] : P.cover)
            if (pos[r][x] > pos[r][y])
                return fail("extension " + std::to_string(r) + " violates " + std::to_string(x) +
                            "<" + std::to_string(y));
    }
    PairSet need = I ? *I : incomparable_pairs(P);
    for (auto [a, b] : need) {
        bool reversed = false;
        for (size_t r = 0; r < R.size() && !reversed; ++r) reversed = pos[r][b] < pos[r][a];
        if (!reversed)
            return fail("pair (" + std::to_string(a) + "," + std::to_string(b) + ") never reversed");
    }
    return {};
}

// ----- coverings ------------------------------------------------------------

struct Covering {
    std::vector<PairSet> classes;
    std::vector<std::string> provenance;

    void add(PairSet cls, std::string why) {
        classes.push_back(std::move(cls));
        provenance.push_back(std::move(why));
    }
    size_t size() const { return classes.size(); }
};

// ----- exact se -------------------------------------------------------------

namespace detail {

// Tomita-style max clique with greedy-coloring bound
struct MaxClique {
    const std::vector<Bits>& adj;
    int m;
    std::vector<int> best, cur;

    explicit MaxClique(const std::vector<Bits>& a) : adj(a), m((int)a.size()) {}

    void expand(std::vector<int>& cand) {
        if (cand.empty()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        // greedy coloring bound, colors assigned in candidate order
        std::vector<int> color(cand.size());
        std::vector<Bits> used; // per color, members so far
        for (size_t i = 0; i < cand.size(); ++i) {
            int v = cand[i], c = 0;
            while (c < (int)used.size() && (used[c] & adj[v]).any()) ++c;
            if (c == (int)used.size()) used.push_back(Bits(m));
            used[c].set(v);
            color[i] = c + 1;
        }
        // sort candidates by color ascending, branch from the back
        std::vector<int> order(cand.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return color[x] < color[y]; });
        std::vector<int> sorted_cand(cand.size());
        std::vector<int> sorted_color(cand.size());
        for (size_t i = 0; i < order.size(); ++i) {
            sorted_cand[i] = cand[order[i]];
            sorted_color[i] = color[order[i]];
        }
        for (int i = (int)sorted_cand.size() - 1; i >= 0; --i) {
            if (cur.size() + sorted_color[i] <= best.size()) return;
            int v = sorted_cand[i];
            cur.push_back(v);
            std::vector<int> next;
            for (int j = 0; j < i; ++j)
                if (adj[v].test(sorted_cand[j])) next.push_back(sorted_cand[j]);
            expand(next);
            cur.pop_back();
        }
    }
};

} // namespace detail

struct SeResult {
    int s = 1;
    PairSet witness; // pairs inducing the standard example (possibly one pair)
};

// largest sub-family of I inducing a standard example; equals the max clique
// of the digon graph (i ~ j iff a_i < b_j and a_j < b_i)
inline SeResult se_exact(const Poset& P, const PairSet& I, size_t budget = 512) {
    if (I.size() > budget) throw BudgetExceeded("se_exact: |I| exceeds budget");
    int m = (int)I.size();
    std::vector<Bits> g(m, Bits(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (P.lt(I[i].first, I[j].second) && P.lt(I[j].first, I[i].second)) {
                g[i].set(j);
                g[j].set(i);
            }
    detail::MaxClique mc(g);
    std::vector<int> cand(m);
    std::iota(cand.begin(), cand.end(), 0);
    mc.expand(cand);
    SeResult res;
    std::sort(mc.best.begin(), mc.best.end());
    for (int i : mc.best) res.witness.push_back(I[i]);
    res.s = std::max<int>(1, (int)mc.best.size());
    if (res.witness.empty() && !I.empty()) res.witness.push_back(I[0]);
    return res;
}

inline SeResult se_exact(const Poset& P, size_t budget = 512) {
    return se_exact(P, incomparable_pairs(P), budget);
}

// ----- exact dimension ------------------------------------------------------

struct DimResult {
    int d = 1;
    Covering covering;
};

namespace detail {

// dichromatic-number branch and bound on the pair digraph: dim_P(I) is the
// least number of acyclic-induced classes covering the vertices
struct DimSolver {
    const std::vector<Bits>& adj;
    int m;
    int best_k;
    std::vector<int> color, best_color;
    std::vector<std::vector<int>> classes; // members per open color

    DimSolver(const std::vector<Bits>& a, int ub)
        : adj(a), m((int)a.size()), best_k(ub + 1), color(m, -1) {}

    bool class_stays_acyclic(int v, const std::vector<int>& cls) const {
        if (cls.empty()) return true;
        // cycle through v within cls+{v}: v reaches u and u reaches v
        Bits members(m);
        for (int u : cls) members.set(u);
        members.set(v);
        Bits fwd(m), bwd(m);
        fwd.set(v);
        bwd.set(v);
        bool grew = true;
        while (grew) {
            grew = false;
            for (int u = (int)fwd.find_first(); u != -1 && u < m; u = (int)fwd.find_next(u)) {
                Bits add = adj[u] & members;
                add -= fwd;
                if (add.any()) {
                    fwd |= add;
                    grew = true;
                }
            }
        }
        for (int u : cls)
            if (fwd.test(u) && adj[u].test(v)) return false;
        // deeper back-reach: u reaches v via class
        grew = true;
        while (grew) {
            grew = false;
            for (int u = 0; u < m; ++u) {
                if (!members.test(u) || bwd.test(u)) continue;
                Bits hit = adj[u] & bwd;
                if (hit.any()) {
                    bwd.set(u);
                    grew = true;
                }
            }
        }
        Bits both = fwd & bwd;
        both.reset(v);
        return !both.any();
    }

    void search(int assigned, int lb) {
        if (best_k <= lb) return; // optimum already certified
        if ((int)classes.size() >= best_k) return;
        if (assigned == m) {
            best_k = (int)classes.size();
            best_color = color;
            return;
        }
        // fail-first: vertex with fewest feasible existing classes
        int pick = -1, pick_feas = m + 2;
        std::vector<char> feas_pick;
        for (int v = 0; v < m; ++v) {
            if (color[v] != -1) continue;
            std::vector<char> feas(classes.size());
            int cnt = 0;
            for (size_t c = 0; c < classes.size(); ++c) {
                feas[c] = class_stays_acyclic(v, classes[c]);
                cnt += feas[c];
            }
            if (cnt < pick_feas) {
                pick_feas = cnt;
                pick = v;
                feas_pick = feas;
                if (cnt == 0) break;
            }
        }
        for (size_t c = 0; c < classes.size(); ++c) {
            if (!feas_pick[c]) continue;
            color[pick] = (int)c;
            classes[c].push_back(pick);
            search(assigned + 1, lb);
            classes[c].pop_back();
            color[pick] = -1;
        }
        if ((int)classes.size() + 1 < best_k) {
            color[pick] = (int)classes.size();
            classes.push_back({pick});
            search(assigned + 1, lb);
            classes.pop_back();
            color[pick] = -1;
        }
    }
};

// transitive orientation of an undirected graph by forcing classes
// (Golumbic); returns the orientation as a dart matrix, or nullopt when the
// graph is not a comparability graph
inline std::optional<std::vector<Bits>> transitive_orientation(int n, const std::vector<Bits>& adj) {
    std::vector<Bits> ori(n, Bits(n));
    std::vector<Pair> queue;
    for (int a = 0; a < n; ++a) {
        for (int b = (int)adj[a].find_first(); b != -1 && b < n; b = (int)adj[a].find_next(b)) {
            if (ori[a].test(b) || ori[b].test(a)) continue;
            ori[a].set(b);
            queue.assign(1, {a, b});
            while (!queue.empty()) {
                auto [x, y] = queue.back();
                queue.pop_back();
                // x->y forces x->z whenever xz is an edge but yz is not
                Bits cand = adj[x] - adj[y];
                cand.reset(y);
                for (int z = (int)cand.find_first(); z != -1 && z < n; z = (int)cand.find_next(z)) {
                    if (ori[x].test(z)) continue;
                    if (ori[z].test(x)) return std::nullopt;
                    ori[x].set(z);
                    queue.push_back({x, z});
                }
                // and z->y whenever zy is an edge but zx is not
                cand = adj[y] - adj[x];
                cand.reset(x);
                for (int z = (int)cand.find_first(); z != -1 && z < n; z = (int)cand.find_next(z)) {
                    if (ori[z].test(y)) continue;
                    if (ori[y].test(z)) return std::nullopt;
                    ori[z].set(y);
                    queue.push_back({z, y});
                }
            }
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = (int)ori[x].find_first(); y != -1 && y < n; y = (int)ori[x].find_next(y))
            if ((ori[y] - ori[x]).any()) return std::nullopt;
    return ori;
}

} // namespace detail

inline DimResult dim_exact(const Poset& P, const PairSet& I, size_t budget = 64) {
    if (I.size() > budget) throw BudgetExceeded("dim_exact: |I| exceeds budget");
    DimResult res;
    if (I.empty()) {
        res.d = 1;
        res.covering.add({}, "empty");
        return res;
    }
    auto adj = pair_digraph(P, I);
    int m = (int)I.size();

    // every alternating cycle lives inside one strongly connected component
    // of the pair digraph, so the dichromatic number is the maximum over the
    // components and classes can be merged index-wise
    auto comp = detail::scc_components(adj);
    int ncomp = m ? *std::max_element(comp.begin(), comp.end()) + 1 : 0;
    std::vector<std::vector<int>> members(ncomp);
    for (int v = 0; v < m; ++v) members[comp[v]].push_back(v);
    bool cyclic = false;
    for (auto& s : members) cyclic |= s.size() >= 2;

    std::vector<std::vector<int>> solution;
    int glb = 2; // any directed cycle forces two classes
    if (!cyclic) {
        solution.push_back({});
        for (int v = 0; v < m; ++v) solution[0].push_back(v);
    } else {
        // full-I shortcut: dim <= 2 exactly when the incomparability graph
        // has a transitive orientation (Dushnik-Miller)
        size_t full = 0;
        for (int v = 0; v < P.n; ++v)
            full += (size_t)P.n - (P.up[v] | P.down[v]).count();
        if (I.size() == full) {
            std::vector<Bits> inc(P.n, Bits(P.n));
            for (auto [a, b] : I) inc[a].set(b), inc[b].set(a);
            if (auto ori = detail::transitive_orientation(P.n, inc)) {
                std::vector<std::vector<int>> two(2);
                for (int v = 0; v < m; ++v)
                    two[(*ori)[I[v].first].test(I[v].second) ? 0 : 1].push_back(v);
                bool ok = true;
                for (auto& cls : two) {
                    PairSet S;
                    for (int v : cls) S.push_back(I[v]);
                    if (!is_reversible(P, S)) ok = false;
                }
                if (ok) solution = std::move(two);
            } else {
                glb = 3;
            }
        }
    }

    if (solution.empty()) {
        solution.assign(glb, {});
        // largest components first so their exact counts prune the rest
        std::sort(members.begin(), members.end(),
                  [](const auto& a, const auto& b) { return a.size() > b.size(); });
        for (auto& scc : members) {
            if (scc.size() < 2) {
                if (!scc.empty()) solution[0].push_back(scc[0]);
                continue;
            }
            int sm = (int)scc.size();
            std::vector<Bits> sub(sm, Bits(sm));
            PairSet subI;
            for (int i = 0; i < sm; ++i) {
                subI.push_back(I[scc[i]]);
                for (int j = 0; j < sm; ++j)
                    if (adj[scc[i]].test(scc[j])) sub[i].set(j);
            }
            detail::DimSolver probe(sub, sm + 1);
            auto run_greedy = [&](const std::vector<int>& order) {
                std::vector<std::vector<int>> g;
                for (int v : order) {
                    bool placed = false;
                    for (auto& cls : g)
                        if (probe.class_stays_acyclic(v, cls)) {
                            cls.push_back(v);
                            placed = true;
                            break;
                        }
                    if (!placed) g.push_back({v});
                }
                return g;
            };
            std::vector<int> order(sm);
            std::iota(order.begin(), order.end(), 0);
            auto greedy = run_greedy(order);
            std::vector<std::vector<int>> local;
            if ((int)greedy.size() <= glb) {
                local = std::move(greedy);
            } else {
                // se of the sub-pairs lower-bounds the whole instance too
                int lb = std::max(glb, se_exact(P, subI, std::max<size_t>(budget, subI.size())).s);
                // iterated greedy: refeeding whole classes as blocks never
                // increases the count and often shakes one class loose
                std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
                for (int round = 0; round < 150 && (int)greedy.size() > lb; ++round) {
                    std::vector<int> perm(greedy.size());
                    std::iota(perm.begin(), perm.end(), 0);
                    std::shuffle(perm.begin(), perm.end(), rng);
                    order.clear();
                    for (int c : perm) {
                        auto blk = greedy[c];
                        if (round % 3 == 1) std::shuffle(blk.begin(), blk.end(), rng);
                        if (round % 3 == 2) std::reverse(blk.begin(), blk.end());
                        order.insert(order.end(), blk.begin(), blk.end());
                    }
                    auto g = run_greedy(order);
                    if (g.size() <= greedy.size()) greedy = std::move(g);
                }
                if ((int)greedy.size() <= lb) {
                    local = std::move(greedy);
                } else {
                    detail::DimSolver solver(sub, (int)greedy.size());
                    solver.best_k = (int)greedy.size(); // greedy already realizes this
                    solver.search(0, lb);
                    if (solver.best_color.empty()) {
                        local = std::move(greedy);
                    } else {
                        local.assign(solver.best_k, {});
                        for (int v = 0; v < sm; ++v) local[solver.best_color[v]].push_back(v);
                    }
                }
                glb = std::max<int>(glb, (int)local.size());
            }
            if (local.size() > solution.size()) solution.resize(local.size());
            for (size_t c = 0; c < local.size(); ++c)
                for (int v : local[c]) solution[c].push_back(scc[v]);
        }
    }
    res.d = std::max<int>(1, (int)solution.size());
    for (size_t c = 0; c < solution.size(); ++c) {
        PairSet cls;
        for (int v : solution[c]) cls.push_back(I[v]);
        res.covering.add(std::move(cls), "dim_exact class " + std::to_string(c));
    }
    return res;
}

inline DimResult dim_exact(const Poset& P, size_t budget = 64) {
    return dim_exact(P, incomparable_pairs(P), budget);
}

// realizer from a covering: one extension per class plus one plain extension
inline std::vector<LinExt> realizer_from_covering(const Poset& P, const Covering& C) {
    std::vector<LinExt> R;
    for (auto& cls : C.classes) R.push_back(reverse_set(P, cls));
    if (R.empty()) R.push_back(linear_extension(P));
    return R;
}

// connected components of the cover graph (as undirected graph)
inline std::vector<int> cover_components(const Poset& P) {
    std::vector<int> comp(P.n, -1);
    int c = 0;
    for (int s = 0; s < P.n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stk{s};
        comp[s] = c;
        while (!stk.empty()) {
            int v = stk.back();
            stk.pop_back();
            for (int w : P.up_adj[v])
                if (comp[w] == -1) comp[w] = c, stk.push_back(w);
            for (int w : P.down_adj[v])
                if (comp[w] == -1) comp[w] = c, stk.push_back(w);
        }
        ++c;
    }
    return comp;
}

// search for an induced copy of `pattern` inside `host`: an injection f with
// f(x) < f(y) in host exactly when x < y in pattern.  Returns the image by
// pattern index, or nullopt.  `first_candidates` restricts the host elements
// tried for the first pattern element placed (useful when the host has a
// transitive symmetry group).
inline std::optional<std::vector<int>> find_subposet_embedding(
    const Poset& host, const Poset& pattern,
    const std::vector<int>& first_candidates = {}) {
    int k = pattern.n, N = host.n;
    if (k == 0) return std::vector<int>{};
    if (k > N) return std::nullopt;

    // static order: start from the most comparable element, then repeatedly
    // take the element with the most relations into the placed set
    std::vector<int> order;
    {
        std::vector<char> placed(k, 0);
        auto cmp_count = [&](int x) {
            int c = 0;
            for (int y = 0; y < k; ++y)
                if (y != x && placed[y] && pattern.comparable(x, y)) ++c;
            return c;
        };
        for (int step = 0; step < k; ++step) {
            int best = -1, best_c = -1;
            for (int x = 0; x < k; ++x) {
                if (placed[x]) continue;
                int c = step == 0 ? (int)(pattern.up[x].count() + pattern.down[x].count()) : cmp_count(x);
                if (c > best_c) best_c = c, best = x;
            }
            placed[best] = 1;
            order.push_back(best);
        }
    }

    std::vector<int> img(k, -1);
    std::vector<char> used(N, 0);
    auto consistent = [&](int x, int v, int depth) {
        for (int d = 0; d < depth; ++d) {
            int y = order[d], w = img[y];
            if (w == v) return false;
            bool pl = pattern.lt(x, y), pg = pattern.lt(y, x);
            if (host.lt(v, w) != pl || host.lt(w, v) != pg) return false;
        }
        return true;
    };
    std::vector<int> firsts = first_candidates;
    if (firsts.empty())
        for (int v = 0; v < N; ++v) firsts.push_back(v);

    // iterative DFS over assignments
    std::function<bool(int)> dfs = [&](int depth) -> bool {
        if (depth == k) return true;
        int x = order[depth];
        const std::vector<int>* cand = nullptr;
        std::vector<int> all;
        if (depth == 0) {
            cand = &firsts;
        } else {
            all.reserve(N);
            for (int v = 0; v < N; ++v) all.push_back(v);
            cand = &all;
        }
        for (int v : *cand) {
            if (used[v] || !consistent(x, v, depth)) continue;
            img[x] = v;
            used[v] = 1;
            if (dfs(depth + 1)) return true;
            img[x] = -1;
            used[v] = 0;
        }
        return false;
    };
    if (!dfs(0)) return std::nullopt;
    return img;
}

} // namespace planedim
