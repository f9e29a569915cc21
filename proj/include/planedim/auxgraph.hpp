#pragma once

// Machinery on a maximal good instance: exposed paths, the Y/Z sets, extreme
// M-paths, regions, the four L/R properties, classification of size-2
// alternating cycles, the six oriented graphs, and the kappa coloring.

#include <planedim/goodinst.hpp>

#include <optional>
#include <set>

namespace planedim {

struct EmptyM : Error { using Error::Error; };
struct NotLeftOf : Error { using Error::Error; };
struct NotRegular : Error { using Error::Error; };
struct NotAlternatingCycle : Error { using Error::Error; };
struct CycleInAuxGraph : Error { using Error::Error; };

struct ColoringNotReversible : Error {
    PairSet cycle;
    ColoringNotReversible(std::string msg, PairSet c) : Error(std::move(msg)), cycle(std::move(c)) {}
};

struct ZEntry {
    Bits Y;       // {y in B : a < y, a outside shad(y)}
    Bits Z;       // members of Y reachable by an exposed witnessing path
    Bits exposed; // all B elements reachable by an exposed witnessing path
    Bits N;       // elements outside B on exposed path prefixes (a included)
};

struct MEntry {
    std::vector<int> left, right; // composite paths x0 -> peak -> a
    int zl = -1, zr = -1;         // the peaks
};

struct RegionTuple {
    int a = -1, u = -1, v = -1;
    int q = -1; // lower-min
    int m = -1; // upper-min
    std::vector<int> U, V;           // exposed paths a -> u and a -> v
    std::vector<int> gammaL, gammaR; // x0 -> u -> m and x0 -> v -> m
    RegionSet R;
};

struct Props {
    bool l12 = false, l21 = false, r12 = false, r21 = false;
};

enum class Cycle2 { InIn, InOut, OutIn, OutOut };

enum class AuxKind { OO, IIL, IIR, IILR, IO, OI };

struct AuxEdge {
    int to = -1;
    int weight = 0;                    // meaningful for IO/OI only
    std::pair<int, int> witness{-1, -1}; // (s,t) or (-1,t) for shifted edges
};

struct AuxDigraph {
    AuxKind kind = AuxKind::OO;
    std::vector<std::vector<AuxEdge>> adj; // vertex set = pair indices into I
};

// memoizing context over a maximal good instance
struct Aux {
    const Instance& inst;

    explicit Aux(const MaximalGoodInstance& g) : inst(g.good.inst) {
        for (size_t t = 0; t < inst.I.size(); ++t) index_[inst.I[t]] = (int)t;
    }

    // ----- Y/Z sets -------------------------------------------------------------

    const ZEntry& z_sets(int a) const {
        auto it = zc_.find(a);
        if (it != zc_.end()) return it->second;
        const Poset& P = inst.P;
        if (a < 0 || a >= P.n || inst.B.test(a)) throw BadParameter("z-data needs a outside B");
        ZEntry e{Bits(P.n), Bits(P.n), Bits(P.n), Bits(P.n)};
        std::vector<int> st{a};
        e.N.set(a);
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int w : P.up_adj[v]) {
                if (inst.B.test(w)) {
                    e.exposed.set(w);
                } else if (!e.N.test(w)) {
                    e.N.set(w);
                    st.push_back(w);
                }
            }
        }
        for (int b = (int)inst.B.find_first(); b != -1 && b < P.n; b = (int)inst.B.find_next(b))
            if (P.lt(a, b) && !in_shad(inst, a, b)) e.Y.set(b);
        e.Z = e.exposed & e.Y;
        return zc_.emplace(a, std::move(e)).first->second;
    }

    // deterministic exposed witnessing path from a to z, listed ascending
    std::vector<int> exposed_path(int a, int z) const {
        const Poset& P = inst.P;
        const auto& zd = z_sets(a);
        if (!zd.Z.test(z) && !zd.exposed.test(z)) throw BadParameter("no exposed path to z");
        std::vector<int> par(P.n, -2);
        std::vector<int> queue{a};
        par[a] = -1;
        for (size_t h = 0; h < queue.size(); ++h) {
            int v = queue[h];
            for (int w : P.up_adj[v]) {
                if (w == z) {
                    std::vector<int> path{z};
                    for (int c = v; c != -1; c = par[c]) path.push_back(c);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                if (!inst.B.test(w) && par[w] == -2) {
                    par[w] = v;
                    queue.push_back(w);
                }
            }
        }
        throw BadParameter("no exposed path to z");
    }

    // ----- extreme M-paths --------------------------------------------------------

    const MEntry& m_paths(int a) const {
        auto it = mc_.find(a);
        if (it != mc_.end()) return it->second;
        const auto& zd = z_sets(a);
        if (zd.Z.none()) throw EmptyM("no peaks available");
        MEntry e;
        e.left = trace_m(a, zd, true);
        e.right = trace_m(a, zd, false);
        auto peak = [&](const std::vector<int>& path) {
            int p = -1;
            for (int v : path)
                if (inst.B.test(v)) p = v;
            return p;
        };
        e.zl = peak(e.left);
        e.zr = peak(e.right);
        return mc_.emplace(a, std::move(e)).first->second;
    }

    // ----- regions ------------------------------------------------------------

    RegionTuple build_region(int a, int u, int v, std::vector<int> U, std::vector<int> V) const {
        const PlaneGraph& G = inst.G;
        if (!left_of(inst, u, v)) throw NotLeftOf("u must be left of v");
        RegionTuple R;
        R.a = a;
        R.u = u;
        R.v = v;
        R.U = std::move(U);
        R.V = std::move(V);
        const auto& WL = inst.wl(u);
        const auto& WR = inst.wr(v);
        R.q = max_common(WL, WR);
        R.m = max_common(R.U, R.V);

        auto at = [](const std::vector<int>& path, int x) {
            return (int)(std::find(path.begin(), path.end(), x) - path.begin());
        };
        std::vector<int> walk;
        for (int t = at(WR, R.q); t < (int)WR.size(); ++t) walk.push_back(WR[t]); // q .. v
        for (int t = (int)R.V.size() - 2; t >= at(R.V, R.m); --t) walk.push_back(R.V[t]); // .. m
        for (int t = at(R.U, R.m) + 1; t < (int)R.U.size(); ++t) walk.push_back(R.U[t]); // .. u
        for (int t = at(WL, u) - 1; t > at(WL, R.q); --t) walk.push_back(WL[t]); // .. back to q
        R.R = region_of_cycle(G, walk);

        R.gammaL = WL;
        for (int t = (int)R.U.size() - 2; t >= at(R.U, R.m); --t) R.gammaL.push_back(R.U[t]);
        R.gammaR = WR;
        for (int t = (int)R.V.size() - 2; t >= at(R.V, R.m); --t) R.gammaR.push_back(R.V[t]);
        return R;
    }

    // the canonical region of a: spanned between both extreme M-paths
    const RegionTuple& canonical_region(int a) const {
        auto it = rc_.find(a);
        if (it != rc_.end()) return it->second;
        const auto& me = m_paths(a);
        return rc_.emplace(a, build_region(a, me.zl, me.zr, descent(me.left, me.zl),
                                           descent(me.right, me.zr)))
            .first->second;
    }

    // ----- the four properties of regular pair sequences ----------------------------

    Props test_properties(int i, int j) const {
        auto key = std::pair{i, j};
        auto it = props_.find(key);
        if (it != props_.end()) return it->second;
        require_regular(i, j);
        auto [a1, b1] = inst.I[i];
        auto [a2, b2] = inst.I[j];
        Props pr;
        pr.l12 = compare_paths(inst.G, m_paths(a1).left, m_paths(a2).left, inst.G.anchor).order ==
                 PathOrder::LeftOf;
        pr.r12 = compare_paths(inst.G, m_paths(a2).right, m_paths(a1).right, inst.G.anchor).order ==
                 PathOrder::RightOf;
        pr.l21 = witness_out(inst.wl(m_paths(a1).zl), inst.wl(b1), a2, true);
        pr.r21 = witness_out(inst.wr(m_paths(a2).zr), inst.wr(b2), a1, false);
        props_.emplace(key, pr);
        return pr;
    }

    // ----- classification of regular alternating cycles of size 2 --------------------

    Cycle2 classify_cycle2(int i, int j) const {
        auto key = std::pair{i, j};
        auto it = cyc2_.find(key);
        if (it != cyc2_.end()) return it->second;
        require_regular(i, j);
        const Poset& P = inst.P;
        auto [a1, b1] = inst.I[i];
        auto [a2, b2] = inst.I[j];
        if (!P.leq(a1, b2) || !P.leq(a2, b1))
            throw NotAlternatingCycle("the two pairs do not form an alternating cycle");

        auto pick = [&](int a, int below) {
            Bits cand = z_sets(a).Z & P.down[below];
            int z = (int)cand.find_first();
            if (z == -1 || z >= P.n) throw InvariantViolation("no peak below the opposite b");
            return z;
        };
        int z1 = pick(a1, b2), z2 = pick(a2, b1);
        const auto& m1 = m_paths(a1);
        const auto& m2 = m_paths(a2);
        auto R1 = build_region(a1, m1.zl, z1, descent(m1.left, m1.zl), exposed_path(a1, z1));
        auto R2 = build_region(a2, z2, m2.zr, exposed_path(a2, z2), descent(m2.right, m2.zr));
        Location l2 = vertex_in_region(R1.R, a2);
        Location l1 = vertex_in_region(R2.R, a1);
        if (l1 == Location::Boundary || l2 == Location::Boundary)
            throw InvariantViolation("an incomparable a lies on a region boundary");
        bool lin = l2 == Location::Interior;
        bool rin = l1 == Location::Interior;
        Cycle2 c = rin ? (lin ? Cycle2::InIn : Cycle2::InOut)
                       : (lin ? Cycle2::OutIn : Cycle2::OutOut);
        cyc2_.emplace(key, c);
        return c;
    }

    // ----- the six oriented graphs ------------------------------------------------

    AuxDigraph build_aux_digraph(AuxKind kind) const {
        const Poset& P = inst.P;
        int m = (int)inst.I.size();
        AuxDigraph H{kind, std::vector<std::vector<AuxEdge>>(m)};
        for (int i = 0; i < m; ++i) {
            auto [a1, b1] = inst.I[i];
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                auto [a2, b2] = inst.I[j];
                if (!lof(b1, b2)) continue;
                std::optional<AuxEdge> e;
                bool ac = P.leq(a1, b2) && P.leq(a2, b1);
                switch (kind) {
                case AuxKind::OO:
                    if (ac && classify_cycle2(i, j) == Cycle2::OutOut) e = AuxEdge{j, 0, {-1, -1}};
                    break;
                case AuxKind::IIL:
                    if (ac && classify_cycle2(i, j) == Cycle2::InIn) {
                        e = AuxEdge{j, 0, {-1, -1}};
                    } else if (P.incomparable(a1, b2)) {
                        for (auto [t, k] : by_a(a2)) {
                            if (!lof(t, b2) || !is_cycle2(i, k, Cycle2::InIn)) continue;
                            e = AuxEdge{j, 0, {-1, t}};
                            break;
                        }
                    }
                    break;
                case AuxKind::IIR:
                    if (ac && classify_cycle2(i, j) == Cycle2::InIn) {
                        e = AuxEdge{j, 0, {-1, -1}};
                    } else if (P.incomparable(a2, b1)) {
                        for (auto [s, k] : by_a(a1)) {
                            if (!lof(b1, s) || !is_cycle2(k, j, Cycle2::InIn)) continue;
                            e = AuxEdge{j, 0, {s, -1}};
                            break;
                        }
                    }
                    break;
                case AuxKind::IILR:
                    if (P.incomparable(a1, b2) && P.incomparable(a2, b1)) {
                        for (auto [s, ks] : by_a(a1)) {
                            if (e) break;
                            if (!lof(b1, s)) continue;
                            for (auto [t, kt] : by_a(a2)) {
                                if (!lof(t, b2) || !is_cycle2(ks, kt, Cycle2::InIn)) continue;
                                e = AuxEdge{j, 0, {s, t}};
                                break;
                            }
                        }
                    }
                    break;
                case AuxKind::IO: {
                    Props pr = test_properties(i, j);
                    if (!(pr.r12 && pr.l21)) break;
                    AuxEdge edge{j, 0, {-1, -1}};
                    if (P.leq(a1, b2)) {
                        edge.weight = 1;
                    } else if (P.incomparable(a1, b2)) {
                        for (auto [t, k] : by_a(a2)) {
                            if (!lof(t, b2) || !is_cycle2(i, k, Cycle2::InOut)) continue;
                            edge.weight = 1;
                            edge.witness = {-1, t};
                            break;
                        }
                    }
                    e = edge;
                    break;
                }
                case AuxKind::OI: {
                    Props pr = test_properties(i, j);
                    if (!(pr.l12 && pr.r21)) break;
                    AuxEdge edge{j, 0, {-1, -1}};
                    if (P.leq(a2, b1)) {
                        edge.weight = 1;
                    } else if (P.incomparable(a2, b1)) {
                        for (auto [t, k] : by_a(a1)) {
                            if (!lof(b1, t) || !is_cycle2(k, j, Cycle2::OutIn)) continue;
                            edge.weight = 1;
                            edge.witness = {-1, t};
                            break;
                        }
                    }
                    e = edge;
                    break;
                }
                }
                if (e) H.adj[i].push_back(*e);
            }
        }
        assert_acyclic(H);
        return H;
    }

    // ----- kappa ------------------------------------------------------------

    Covering kappa_coloring(std::optional<int> se_override = std::nullopt) const {
        const Poset& P = inst.P;
        int s_exact = se_exact(P, inst.I, std::max<size_t>(512, inst.I.size())).s;
        int s = s_exact;
        if (se_override) {
            long long m_ex = 2LL * s_exact * (2LL * s_exact + 6);
            long long m_ov = 2LL * *se_override * (2LL * *se_override + 6);
            if (*se_override != s_exact && (m_ov <= 0 || m_ov % m_ex != 0))
                throw BadParameter("se override must be exact or induce a multiple of the modulus");
            s = *se_override;
        }
        long long mod = 2LL * s * (2LL * s + 6);

        auto hoo = build_aux_digraph(AuxKind::OO);
        auto hiil = build_aux_digraph(AuxKind::IIL);
        auto hiir = build_aux_digraph(AuxKind::IIR);
        auto hiilr = build_aux_digraph(AuxKind::IILR);
        auto hio = build_aux_digraph(AuxKind::IO);
        auto hoi = build_aux_digraph(AuxKind::OI);
        auto p1 = maxsp(hoo), p2 = maxsp(hiil), p3 = maxsp(hiir), p4 = maxsp(hiilr);
        auto w5 = maxsw(hio), w6 = maxew(hoi);

        std::map<std::array<long long, 6>, PairSet> groups;
        for (size_t t = 0; t < inst.I.size(); ++t)
            groups[{(long long)p1[t], (long long)p2[t], (long long)p3[t], (long long)p4[t],
                    w5[t] % mod, w6[t] % mod}]
                .push_back(inst.I[t]);
        Covering out;
        for (auto& [key, cls] : groups) {
            if (auto cyc = find_strict_alternating_cycle(P, cls)) {
                PairSet witness;
                for (int t : *cyc) witness.push_back(cls[t]);
                throw ColoringNotReversible("a kappa class contains a strict alternating cycle",
                                            witness);
            }
            std::string why = "kappa=(";
            for (int t = 0; t < 6; ++t) why += std::to_string(key[t]) + (t < 5 ? "," : ")");
            out.add(cls, why);
        }
        return out;
    }

    // longest-path DPs; all graphs here are acyclic
    static std::vector<int> maxsp(const AuxDigraph& H) {
        std::vector<int> memo(H.adj.size(), 0);
        std::function<int(int)> go = [&](int v) {
            if (memo[v]) return memo[v];
            int best = 1;
            for (auto& e : H.adj[v]) best = std::max(best, 1 + go(e.to));
            return memo[v] = best;
        };
        for (size_t v = 0; v < H.adj.size(); ++v) go((int)v);
        return memo;
    }

    static std::vector<long long> maxsw(const AuxDigraph& H) {
        std::vector<long long> memo(H.adj.size(), -1);
        std::function<long long(int)> go = [&](int v) {
            if (memo[v] >= 0) return memo[v];
            memo[v] = 0;
            long long best = 0;
            for (auto& e : H.adj[v]) best = std::max(best, e.weight + go(e.to));
            return memo[v] = best;
        };
        for (size_t v = 0; v < H.adj.size(); ++v) go((int)v);
        return memo;
    }

    static std::vector<long long> maxew(const AuxDigraph& H) {
        AuxDigraph R{H.kind, std::vector<std::vector<AuxEdge>>(H.adj.size())};
        for (size_t v = 0; v < H.adj.size(); ++v)
            for (auto& e : H.adj[v]) R.adj[e.to].push_back({(int)v, e.weight, e.witness});
        return maxsw(R);
    }

    bool lof(int b1, int b2) const {
        auto key = std::pair{b1, b2};
        auto it = lof_.find(key);
        if (it != lof_.end()) return it->second;
        bool r = left_of(inst, b1, b2);
        lof_.emplace(key, r);
        return r;
    }

  private:
    std::map<Pair, int> index_; // pair -> index in I
    mutable std::map<int, ZEntry> zc_;
    mutable std::map<int, MEntry> mc_;
    mutable std::map<int, RegionTuple> rc_;
    mutable std::map<std::pair<int, int>, Cycle2> cyc2_;
    mutable std::map<std::pair<int, int>, Props> props_;
    mutable std::map<std::pair<int, int>, bool> lof_;

    // pairs of I with first component a, in b order of appearance
    std::vector<std::pair<int, int>> by_a(int a) const {
        std::vector<std::pair<int, int>> out;
        for (auto& [p, t] : index_)
            if (p.first == a) out.push_back({p.second, t});
        return out;
    }

    bool is_cycle2(int i, int j, Cycle2 want) const {
        auto [a1, b1] = inst.I[i];
        auto [a2, b2] = inst.I[j];
        if (!lof(b1, b2) || !inst.P.leq(a1, b2) || !inst.P.leq(a2, b1)) return false;
        return classify_cycle2(i, j) == want;
    }

    void require_regular(int i, int j) const {
        if (i < 0 || j < 0 || i >= (int)inst.I.size() || j >= (int)inst.I.size() || i == j)
            throw NotRegular("indices must name two distinct pairs of I");
        if (!lof(inst.I[i].second, inst.I[j].second))
            throw NotRegular("b1 must be left of b2");
    }

    // trailing descent of a composite M-path, reversed into an exposed path a -> peak
    static std::vector<int> descent(const std::vector<int>& path, int peak) {
        auto it = std::find(path.begin(), path.end(), peak);
        std::vector<int> out(it, path.end());
        std::reverse(out.begin(), out.end());
        return out;
    }

    int max_common(const std::vector<int>& X, const std::vector<int>& Y) const {
        std::set<int> sx(X.begin(), X.end());
        std::vector<int> common;
        for (int v : Y)
            if (sx.count(v)) common.push_back(v);
        for (int v : common) {
            bool top = true;
            for (int w : common)
                if (!inst.P.leq(w, v)) {
                    top = false;
                    break;
                }
            if (top) return v;
        }
        throw InvariantViolation("common elements of the two paths have no maximum");
    }

    // greedy two-phase walk: ascend from x0 in B, turn at a peak in Z, descend
    // through N to a; at each step take the extreme feasible dart
    std::vector<int> trace_m(int a, const ZEntry& zd, bool leftmost) const {
        const Poset& P = inst.P;
        const PlaneGraph& G = inst.G;
        std::vector<int> path{inst.x0};
        int back = G.anchor;
        int cur = inst.x0;
        bool asc = true;
        while (cur != a) {
            auto ord = cut_ordering(G, cur, back);
            int pick = -1;
            auto feasible = [&](int d) {
                int w = G.head[d];
                if (w == G.n) return false;
                if (asc) {
                    if (P.lt(cur, w)) return (P.up[w] & zd.Z).any();
                    return zd.Z.test(cur) && (w == a || zd.N.test(w));
                }
                return P.lt(w, cur) && (w == a || zd.N.test(w));
            };
            if (leftmost) {
                for (size_t t = 1; t < ord.size(); ++t)
                    if (feasible(ord[t])) {
                        pick = ord[t];
                        break;
                    }
            } else {
                for (size_t t = ord.size(); t-- > 1;)
                    if (feasible(ord[t])) {
                        pick = ord[t];
                        break;
                    }
            }
            if (pick < 0) throw EmptyM("stuck while tracing an M-path");
            int w = G.head[pick];
            if (asc && !P.lt(cur, w)) asc = false;
            path.push_back(w);
            back = G.twin[pick];
            cur = w;
        }
        return path;
    }

    // does some exposed descent from a common element of W (= W_L(z_L(a1)) or
    // the mirrored counterpart) and Wb escape to the outer side of W
    bool witness_out(const std::vector<int>& W, const std::vector<int>& Wb, int a_other,
                     bool left) const {
        const Poset& P = inst.P;
        const PlaneGraph& G = inst.G;
        const auto& zd = z_sets(a_other);
        std::set<int> onWb(Wb.begin(), Wb.end());
        for (size_t t = 1; t + 1 < W.size(); ++t) {
            int u = W[t];
            if (!zd.Z.test(u) || !onWb.count(u)) continue;
            auto ord = cut_ordering(G, u, G.dart(u, W[t - 1]));
            int posW = dart_position(G, u, ord[0], G.dart(u, W[t + 1]));
            for (int w : G.neighbors(u)) {
                if (!P.lt(w, u)) continue;
                if (w != a_other && !zd.N.test(w)) continue;
                int pos = dart_position(G, u, ord[0], G.dart(u, w));
                if (pos == 0) continue;
                if (left ? pos < posW : pos > posW) return true;
            }
        }
        return false;
    }

    static void assert_acyclic(const AuxDigraph& H) {
        int m = (int)H.adj.size();
        std::vector<int> indeg(m, 0);
        for (auto& out : H.adj)
            for (auto& e : out) ++indeg[e.to];
        std::vector<int> q;
        for (int v = 0; v < m; ++v)
            if (!indeg[v]) q.push_back(v);
        size_t done = 0;
        while (done < q.size()) {
            int v = q[done++];
            for (auto& e : H.adj[v])
                if (--indeg[e.to] == 0) q.push_back(e.to);
        }
        if ((int)done != m) throw CycleInAuxGraph("an auxiliary digraph contains a cycle");
    }
};

} // namespace planedim
