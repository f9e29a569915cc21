#pragma once

// Combinatorial plane graphs: clockwise rotation systems with an anchor half
// edge (a phantom degree-1 vertex marking the unbounded face at x0), face
// tracing, clockwise path orderings, planar regions, and contraction.

#include <planedim/core.hpp>

#include <map>

namespace planedim {

struct RotationMismatch : Error { using Error::Error; };
struct NonPlanarRotation : Error { using Error::Error; };
struct AnchorNotOnOuterFace : Error { using Error::Error; };

struct PlaneGraph {
    int n = 0;   // real vertices are 0..n-1; the phantom anchor vertex is n
    int x0 = -1; // anchor vertex
    int anchor = -1; // dart x0 -> phantom
    int anchor_pos = 0; // index of the phantom inside rot[x0]

    std::vector<int> tail, head, twin;
    std::vector<int> cw_nxt, cw_prv; // within the rotation at tail
    std::vector<int> face_of;
    std::vector<std::vector<int>> rot;   // dart ids, clockwise, per vertex (incl phantom)
    std::vector<std::vector<int>> faces; // darts in trace order
    int outer_face = -1;

    std::map<Pair, int> dart_by_ends;

    int dart_count() const { return (int)tail.size(); }
    int num_faces() const { return (int)faces.size(); }
    int degree(int v) const { return (int)rot[v].size(); }

    // unique dart u->v, or -1
    int dart(int u, int v) const {
        auto it = dart_by_ends.find({u, v});
        return it == dart_by_ends.end() ? -1 : it->second;
    }
    int edge_id(int d) const { return std::min(d, twin[d]); }
    bool touches_phantom(int d) const { return tail[d] == n || head[d] == n; }

    // real edges as (min,max) pairs, anchor excluded
    PairSet edges() const {
        PairSet out;
        for (int d = 0; d < dart_count(); ++d)
            if (d < twin[d] && !touches_phantom(d)) out.push_back({std::min(tail[d], head[d]), std::max(tail[d], head[d])});
        std::sort(out.begin(), out.end());
        return out;
    }
    // clockwise real neighbors of u
    std::vector<int> neighbors(int u) const {
        std::vector<int> out;
        for (int d : rot[u])
            if (head[d] != n) out.push_back(head[d]);
        return out;
    }
};

// `anchor_pos` is the index at which the phantom neighbor is spliced into
// rotation[x0] (0..deg). `outer_walk`, when nonempty, must match the traced
// boundary of the anchor's face cyclically.
inline PlaneGraph build_plane_graph(int n, const PairSet& edges,
                                    const std::vector<std::vector<int>>& rotation, int x0,
                                    int anchor_pos, const std::vector<int>& outer_walk = {}) {
    if (x0 < 0 || x0 >= n) throw BadParameter("anchor vertex out of range");
    if ((int)rotation.size() != n) throw RotationMismatch("rotation table has wrong size");
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw BadParameter("bad edge");
        if (!adj[u].insert(v).second) throw BadParameter("duplicate edge");
        adj[v].insert(u);
    }
    for (int u = 0; u < n; ++u) {
        std::set<int> listed(rotation[u].begin(), rotation[u].end());
        if (listed.size() != rotation[u].size() || listed != adj[u])
            throw RotationMismatch("rotation at " + std::to_string(u) + " does not list its neighbors");
    }
    if (anchor_pos < 0 || anchor_pos > (int)rotation[x0].size())
        throw BadParameter("anchor position out of range");

    PlaneGraph G;
    G.n = n;
    G.x0 = x0;
    G.anchor_pos = anchor_pos;
    G.rot.assign(n + 1, {});
    std::vector<std::vector<int>> aug(n + 1);
    for (int u = 0; u < n; ++u) aug[u] = rotation[u];
    aug[x0].insert(aug[x0].begin() + anchor_pos, n);
    aug[n] = {x0};

    for (int u = 0; u <= n; ++u)
        for (int v : aug[u]) {
            int d = (int)G.tail.size();
            G.tail.push_back(u);
            G.head.push_back(v);
            G.rot[u].push_back(d);
            G.dart_by_ends[{u, v}] = d;
        }
    int m = G.dart_count();
    G.twin.assign(m, -1);
    for (int d = 0; d < m; ++d) G.twin[d] = G.dart_by_ends.at({G.head[d], G.tail[d]});
    G.cw_nxt.assign(m, -1);
    G.cw_prv.assign(m, -1);
    for (int u = 0; u <= n; ++u) {
        int deg = (int)G.rot[u].size();
        for (int i = 0; i < deg; ++i) {
            int d = G.rot[u][i];
            G.cw_nxt[d] = G.rot[u][(i + 1) % deg];
            G.cw_prv[d] = G.rot[u][(i + deg - 1) % deg];
        }
    }
    G.anchor = G.dart_by_ends.at({x0, n});

    G.face_of.assign(m, -1);
    for (int d0 = 0; d0 < m; ++d0) {
        if (G.face_of[d0] != -1) continue;
        int f = G.num_faces();
        G.faces.push_back({});
        int d = d0;
        do {
            G.face_of[d] = f;
            G.faces[f].push_back(d);
            d = G.cw_nxt[G.twin[d]];
        } while (d != d0);
    }

    // Euler check per component carrying edges
    {
        std::vector<int> comp(n + 1, -1);
        int c = 0;
        for (int s = 0; s <= n; ++s) {
            if (comp[s] != -1) continue;
            std::vector<int> stk{s};
            comp[s] = c;
            while (!stk.empty()) {
                int v = stk.back();
                stk.pop_back();
                for (int d : G.rot[v])
                    if (comp[G.head[d]] == -1) comp[G.head[d]] = c, stk.push_back(G.head[d]);
            }
            ++c;
        }
        std::vector<int> V(c, 0), E(c, 0);
        std::vector<std::set<int>> F(c);
        for (int v = 0; v <= n; ++v) ++V[comp[v]];
        for (int d = 0; d < m; ++d)
            if (d < G.twin[d]) ++E[comp[G.tail[d]]];
        for (int d = 0; d < m; ++d) F[comp[G.tail[d]]].insert(G.face_of[d]);
        for (int i = 0; i < c; ++i) {
            if (E[i] == 0) continue; // isolated vertex
            if (V[i] - E[i] + (int)F[i].size() != 2)
                throw NonPlanarRotation("rotation system is not planar (Euler check failed)");
        }
    }

    G.outer_face = G.face_of[G.anchor];
    if (!outer_walk.empty()) {
        std::vector<int> traced;
        for (int d : G.faces[G.outer_face])
            if (!G.touches_phantom(d)) traced.push_back(G.tail[d]);
        bool match = traced.size() == outer_walk.size();
        if (match) {
            bool any = false;
            for (size_t off = 0; off < traced.size() && !any; ++off) {
                bool eq = true;
                for (size_t i = 0; i < traced.size() && eq; ++i)
                    eq = traced[(off + i) % traced.size()] == outer_walk[i];
                any = eq;
            }
            match = any || traced.empty();
        }
        if (!match) throw AnchorNotOnOuterFace("declared outer walk is not the anchor's face");
    }
    return G;
}

// convenience: anchor spliced after the given neighbor (-1: at index 0)
inline int anchor_pos_after(const std::vector<std::vector<int>>& rotation, int x0, int after) {
    if (after < 0) return 0;
    auto& r = rotation[x0];
    auto it = std::find(r.begin(), r.end(), after);
    if (it == r.end()) throw BadParameter("anchor 'after' neighbor not in rotation");
    return (int)(it - r.begin()) + 1;
}

// ----- clockwise orderings --------------------------------------------------

// darts out of u, clockwise, starting at d0 (which must leave u)
inline std::vector<int> cut_ordering(const PlaneGraph& G, int u, int d0) {
    auto& r = G.rot[u];
    auto it = std::find(r.begin(), r.end(), d0);
    if (it == r.end()) throw BadParameter("cut dart not at vertex");
    std::vector<int> out(r.begin() + (it - r.begin()), r.end());
    out.insert(out.end(), r.begin(), r.begin() + (it - r.begin()));
    return out;
}

inline int dart_position(const PlaneGraph& G, int u, int d0, int d) {
    auto ord = cut_ordering(G, u, d0);
    auto it = std::find(ord.begin(), ord.end(), d);
    if (it == ord.end()) throw BadParameter("dart not at vertex");
    return (int)(it - ord.begin());
}

enum class PathOrder { LeftOf, RightOf, Prefix, Extension, Equal };

struct PathCmp {
    PathOrder order;
    int divergence; // index of the last common prefix vertex
};

// Both paths must start at the same vertex; e0 is the cut dart used when the
// divergence happens at the very first vertex (the anchor dart for paths from
// x0). Smaller clockwise position after the cut reads as LeftOf.
inline PathCmp compare_paths(const PlaneGraph& G, const std::vector<int>& U,
                             const std::vector<int>& V, int e0) {
    if (U.empty() || V.empty() || U[0] != V[0]) throw BadParameter("paths must share their start");
    size_t i = 0;
    while (i + 1 < U.size() && i + 1 < V.size() && U[i + 1] == V[i + 1]) ++i;
    if (i + 1 >= U.size() && i + 1 >= V.size()) return {PathOrder::Equal, (int)i};
    if (i + 1 >= U.size()) return {PathOrder::Prefix, (int)i};
    if (i + 1 >= V.size()) return {PathOrder::Extension, (int)i};
    int u = U[i];
    int cut = (i == 0) ? e0 : G.dart(U[i], U[i - 1]);
    if (cut < 0) throw BadParameter("path edge missing from graph");
    int du = G.dart(u, U[i + 1]), dv = G.dart(u, V[i + 1]);
    if (du < 0 || dv < 0) throw BadParameter("path edge missing from graph");
    int pu = dart_position(G, u, cut, du), pv = dart_position(G, u, cut, dv);
    return {pu < pv ? PathOrder::LeftOf : PathOrder::RightOf, (int)i};
}

// ----- regions --------------------------------------------------------------

struct RegionSet {
    Bits faces;             // faces strictly inside
    Bits boundary_edges;    // canonical dart ids on the bounding walk
    Bits interior_edges;    // canonical dart ids strictly inside
    Bits boundary_vertices; // size n+1
    Bits interior_vertices;
};

enum class Location { Interior, Boundary, Outside };

// the region enclosed by the closed walk (the side not containing the outer
// face). `walk` is cyclic: consecutive entries, plus last->first, are edges.
inline RegionSet region_of_cycle(const PlaneGraph& G, const std::vector<int>& walk) {
    int m = G.dart_count();
    RegionSet R;
    R.boundary_edges.resize(m);
    R.interior_edges.resize(m);
    R.faces.resize(G.num_faces());
    R.boundary_vertices.resize(G.n + 1);
    R.interior_vertices.resize(G.n + 1);
    size_t k = walk.size();
    for (size_t i = 0; i < k; ++i) {
        int u = walk[i], v = walk[(i + 1) % k];
        if (u == v) continue; // a single-vertex walk bounds nothing
        int d = G.dart(u, v);
        if (d < 0) throw BadParameter("region walk uses a missing edge");
        R.boundary_edges.set(G.edge_id(d));
        R.boundary_vertices.set(u);
    }
    if (k == 1) R.boundary_vertices.set(walk[0]);
    // dual reachability from the outer face, never crossing the walk
    Bits outside(G.num_faces());
    std::vector<int> stk{G.outer_face};
    outside.set(G.outer_face);
    while (!stk.empty()) {
        int f = stk.back();
        stk.pop_back();
        for (int d : G.faces[f]) {
            if (R.boundary_edges.test(G.edge_id(d))) continue;
            int g = G.face_of[G.twin[d]];
            if (!outside.test(g)) {
                outside.set(g);
                stk.push_back(g);
            }
        }
    }
    for (int f = 0; f < G.num_faces(); ++f)
        if (!outside.test(f)) R.faces.set(f);
    for (int d = 0; d < m; ++d) {
        if (d >= G.twin[d]) continue;
        if (R.boundary_edges.test(d)) continue;
        if (R.faces.test(G.face_of[d]) && R.faces.test(G.face_of[G.twin[d]])) R.interior_edges.set(d);
    }
    for (int v = 0; v <= G.n; ++v) {
        if (R.boundary_vertices.test(v) || G.rot[v].empty()) continue;
        bool inside = true;
        for (int d : G.rot[v]) inside = inside && R.faces.test(G.face_of[d]);
        if (inside) R.interior_vertices.set(v);
    }
    return R;
}

inline Location edge_in_region(const PlaneGraph& G, const RegionSet& R, int u, int v) {
    int d = G.dart(u, v);
    if (d < 0) throw BadParameter("no such edge");
    int e = G.edge_id(d);
    if (R.boundary_edges.test(e)) return Location::Boundary;
    if (R.interior_edges.test(e)) return Location::Interior;
    return Location::Outside;
}

inline Location vertex_in_region(const RegionSet& R, int v) {
    if (R.boundary_vertices.test(v)) return Location::Boundary;
    if (R.interior_vertices.test(v)) return Location::Interior;
    return Location::Outside;
}

// ----- mirror (dual flip) ---------------------------------------------------

inline PlaneGraph mirror(const PlaneGraph& G) {
    std::vector<std::vector<int>> rotation(G.n);
    for (int u = 0; u < G.n; ++u) {
        auto nb = G.neighbors(u);
        std::reverse(nb.begin(), nb.end());
        rotation[u] = nb;
    }
    // phantom sits at index anchor_pos of the augmented list (length deg+1);
    // reversal maps it to deg - anchor_pos
    int deg = (int)rotation[G.x0].size();
    int pos = deg - G.anchor_pos;
    return build_plane_graph(G.n, G.edges(), rotation, G.x0, pos);
}

// ----- contraction ----------------------------------------------------------

namespace detail {

// multigraph rotation system used only while contracting
struct MultiRot {
    std::vector<int> tail, head; // twin of d is d^1
    std::vector<std::vector<int>> rot;
    std::vector<bool> dead;

    int twin(int d) const { return d ^ 1; }
    void erase_dart(int d) {
        auto& r = rot[tail[d]];
        r.erase(std::find(r.begin(), r.end(), d));
        dead[d] = true;
    }
    void erase_edge(int d) {
        erase_dart(d);
        erase_dart(twin(d));
    }
};

inline MultiRot multirot_of(const PlaneGraph& G) {
    MultiRot M;
    M.rot.assign(G.n, {});
    std::map<int, int> pending; // canonical source dart -> my dart id
    for (int u = 0; u < G.n; ++u)
        for (int d : G.rot[u]) {
            if (G.touches_phantom(d)) continue;
            int e = G.edge_id(d);
            auto it = pending.find(e);
            int mine;
            if (it == pending.end()) {
                mine = (int)M.tail.size();
                M.tail.push_back(-1);
                M.head.push_back(-1);
                M.tail.push_back(-1);
                M.head.push_back(-1);
                M.dead.push_back(false);
                M.dead.push_back(false);
                pending[e] = mine;
                if (d != e) mine ^= 1; // this dart is the twin of the canonical one
            } else {
                mine = (d == e) ? it->second : (it->second ^ 1);
            }
            M.tail[mine] = u;
            M.head[mine ^ 1] = u;
            M.rot[u].push_back(mine);
        }
    return M;
}

// contract the edge given by dart d (head merged into tail), embedding kept:
// rot[u] gets rot[v] spliced in (starting after v->u) at the slot of u->v
inline void contract_dart(MultiRot& M, int d) {
    int u = M.tail[d], v = M.head[d];
    int t = M.twin(d);
    auto& rv = M.rot[v];
    auto itv = std::find(rv.begin(), rv.end(), t);
    std::vector<int> splice(itv + 1, rv.end());
    splice.insert(splice.end(), rv.begin(), itv);
    auto& ru = M.rot[u];
    auto itu = std::find(ru.begin(), ru.end(), d);
    size_t at = itu - ru.begin();
    ru.erase(itu);
    ru.insert(ru.begin() + at, splice.begin(), splice.end());
    for (int e : splice) {
        M.tail[e] = u;
        M.head[M.twin(e)] = u;
    }
    rv.clear();
    M.dead[d] = M.dead[t] = true;
    // drop loops created at u (former parallel u-v edges)
    for (size_t i = 0; i < ru.size();) {
        int e = ru[i];
        if (M.head[e] == u) {
            M.erase_edge(e);
            i = 0; // positions shifted; restart scan (degrees are small)
        } else {
            ++i;
        }
    }
}

} // namespace detail

struct Contraction {
    std::vector<std::vector<int>> rotation; // clockwise neighbor lists over surviving ORIGINAL ids
    PairSet edges;                          // (min,max), simple
    int rep;                                // the vertex the set collapsed onto
};

// contracts the connected vertex set Y (given sorted) onto its lowest member;
// loops are dropped and parallel edges pruned to their lowest-id copy
inline Contraction contract_connected_set(const PlaneGraph& G, const std::vector<int>& Y) {
    if (Y.empty()) throw BadParameter("empty contraction set");
    auto M = detail::multirot_of(G);
    Bits inY(G.n);
    for (int v : Y) inY.set(v);
    int rep = Y[0];
    // BFS over Y from rep; contract each tree edge parent<-child in discovery order
    Bits seen(G.n);
    seen.set(rep);
    std::queue<int> q;
    q.push(rep);
    std::vector<Pair> tree;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : G.neighbors(v))
            if (inY.test(w) && !seen.test(w)) {
                seen.set(w);
                tree.push_back({v, w});
                q.push(w);
            }
    }
    for (int v : Y)
        if (!seen.test(v)) throw BadParameter("contraction set is not connected");
    for (auto [pv, w] : tree) {
        (void)pv; // the parent's darts have been re-tailed to rep already
        int d = -1;
        for (int e : M.rot[rep])
            if (M.head[e] == w) { d = e; break; }
        assert(d != -1);
        detail::contract_dart(M, d);
    }
    // prune parallels, keep the lowest dart id per vertex pair
    std::map<Pair, int> keep;
    for (int d = 0; d < (int)M.tail.size(); ++d) {
        if (M.dead[d] || d > M.twin(d)) continue;
        Pair key{std::min(M.tail[d], M.head[d]), std::max(M.tail[d], M.head[d])};
        auto it = keep.find(key);
        if (it == keep.end())
            keep[key] = d;
        else if (d < it->second) {
            M.erase_edge(it->second);
            it->second = d;
        } else {
            M.erase_edge(d);
        }
    }
    Contraction C;
    C.rep = rep;
    C.rotation.assign(G.n, {});
    for (int u = 0; u < G.n; ++u)
        for (int d : M.rot[u]) C.rotation[u].push_back(M.head[d]);
    for (auto& [key, d] : keep)
        if (!M.dead[d]) C.edges.push_back(key);
    std::sort(C.edges.begin(), C.edges.end());
    return C;
}

// rebuilds a PlaneGraph over relabeled vertices after contraction/deletion,
// re-rooting on the sphere: the outer face is the lowest-id traced face at
// x0, and the anchor slips in before the lowest out-dart on that face
inline PlaneGraph replant(int n, const PairSet& edges, const std::vector<std::vector<int>>& rotation,
                          int x0) {
    PlaneGraph tmp = build_plane_graph(n, edges, rotation, x0, 0);
    if (rotation[x0].empty()) return tmp;
    // trace faces of the anchorless system: step over the phantom bounce
    std::vector<int> face_of(tmp.dart_count(), -1);
    auto succ = [&](int d) {
        int e = tmp.cw_nxt[tmp.twin[d]];
        if (e == tmp.anchor) e = tmp.cw_nxt[e]; // skip the anchor edge and its bounce
        return e;
    };
    int nf = 0;
    for (int d0 = 0; d0 < tmp.dart_count(); ++d0) {
        if (tmp.touches_phantom(d0) || face_of[d0] != -1) continue;
        int d = d0;
        do {
            face_of[d] = nf;
            d = succ(d);
        } while (d != d0);
        ++nf;
    }
    // corner before out-dart rot[x0][i] belongs to face_of of that dart;
    // pick the lowest-id face at x0 and splice the anchor there
    int best_face = -1, best_slot = -1;
    for (int i = 0; i < (int)rotation[x0].size(); ++i) {
        int d = tmp.dart(x0, rotation[x0][i]);
        if (best_face == -1 || face_of[d] < best_face) {
            best_face = face_of[d];
            best_slot = i;
        }
    }
    return build_plane_graph(n, edges, rotation, x0, best_slot);
}

// drop a set of edges (as (min,max) pairs), preserving rotation order and the
// anchor's corner
inline PlaneGraph delete_edges(const PlaneGraph& G, const std::set<Pair>& gone) {
    std::vector<std::vector<int>> rotation(G.n);
    PairSet kept;
    for (auto e : G.edges())
        if (!gone.count(e)) kept.push_back(e);
    for (int u = 0; u < G.n; ++u)
        for (int v : G.neighbors(u)) {
            Pair key{std::min(u, v), std::max(u, v)};
            if (!gone.count(key)) rotation[u].push_back(v);
        }
    // anchor: count surviving darts before the old anchor slot
    int pos = 0;
    {
        auto nb = G.neighbors(G.x0);
        for (int i = 0; i < G.anchor_pos && i < (int)nb.size(); ++i) {
            Pair key{std::min(G.x0, nb[i]), std::max(G.x0, nb[i])};
            if (!gone.count(key)) ++pos;
        }
    }
    return build_plane_graph(G.n, kept, rotation, G.x0, pos);
}

} // namespace planedim
