#pragma once

// Deterministic generators for canonical and random poset families.  Each
// family emits a Poset and, where the construction comes with a drawing, a
// PlaneGraph over its cover graph.

#include <array>
#include <random>

#include <planedim/core.hpp>
#include <planedim/embed.hpp>

namespace planedim {

enum class Family { Standard, Kelly, Wheel, Chain, Antichain, Forest, RandomPlanar };

struct Generated {
    Poset P;
    std::optional<PlaneGraph> G;
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Standard: return "standard";
        case Family::Kelly: return "kelly";
        case Family::Wheel: return "wheel";
        case Family::Chain: return "chain";
        case Family::Antichain: return "antichain";
        case Family::Forest: return "forest";
        case Family::RandomPlanar: return "random-planar";
    }
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
    for (Family f : {Family::Standard, Family::Kelly, Family::Wheel, Family::Chain,
                     Family::Antichain, Family::Forest, Family::RandomPlanar})
        if (s == family_name(f)) return f;
    return std::nullopt;
}

namespace gen_detail {

// S_n: minimal a_1..a_n (ids 0..n-1), maximal b_1..b_n (ids n..2n-1),
// a_i < b_j exactly when i != j.  The cover graph is a union of two edges
// (n = 2) or a hexagon (n = 3); beyond that it is non-planar and no
// embedding is emitted.
inline Generated standard(int n) {
    if (n < 2) throw BadParameter("standard example needs n >= 2");
    PairSet cov;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) cov.push_back({i, n + j});
    Generated g{build_poset(2 * n, cov), std::nullopt};
    if (n == 2) {
        std::vector<std::vector<int>> rot{{3}, {2}, {1}, {0}};
        g.G = build_plane_graph(4, g.P.cover, rot, 0, 0);
    } else if (n == 3) {
        // hexagon a1 b2 a3 b1 a2 b3
        std::vector<std::vector<int>> rot{{4, 5}, {3, 5}, {3, 4}, {1, 2}, {0, 2}, {0, 1}};
        g.G = build_plane_graph(6, g.P.cover, rot, 0, 0);
    }
    return g;
}

// Kelly's planar-diagram construction.  Elements (1-indexed in the classic
// naming): a_1..a_n, b_1..b_n, and two chains c_2 > c_3 > ... > c_{n-1},
// d_2 < d_3 < ... < d_{n-1}.  Covers:
//
//   a_i < d_i, d_i < b_{i+1}, a_{i+1} < c_i, c_i < b_i   (2 <= i <= n-1)
//   a_1 < d_2, a_1 < b_2, c_2 < b_1, a_2 < b_1
//
// so a_i < b_j exactly when i != j.  Drawn as a horizontal strip: c-rail on
// top, d-rail below, with the a-connectors (c_{i-1} -- a_i -- d_i) wrapping
// around the left end of the strip and the b-connectors (c_i -- b_i --
// d_{i-1}) nested inside the band, e.g. for n = 6:
//
//        c2----c3----c4----c5              (c-rail)
//       /  \b3/| \b4/| \b5/| \
//      | b1 \/ a4 \/ a5 \/ a6|             (band: b-connectors nested,
//      | |a2/\  | /\  | /\   |              pendants a_n, b_n at the ends)
//      | b2  | \|/  | \|/ b6 |
//       \ |a3|  X   |  X  | /
//        \| \| /|\  | /|\ |/
//    a1---d2----d3----d4----d5             (d-rail)
//     \_______outer_wraps____/             (a-connectors around the left)
//
// ids: a_i -> i-1, b_i -> n+i-1, c_i -> 2n+i-2, d_i -> 3n-2+i-2.
inline Generated kelly(int n) {
    if (n < 3) throw BadParameter("kelly poset needs n >= 3");
    auto a = [&](int i) { return i - 1; };
    auto b = [&](int i) { return n + i - 1; };
    auto c = [&](int i) { return 2 * n + i - 2; };
    auto d = [&](int i) { return 3 * n - 2 + i - 2; };
    PairSet cov;
    for (int j = 2; j <= n - 2; ++j) cov.push_back({d(j), d(j + 1)});
    for (int j = 2; j <= n - 2; ++j) cov.push_back({c(j + 1), c(j)});
    for (int i = 2; i <= n - 1; ++i) cov.push_back({a(i), d(i)});
    cov.push_back({a(1), d(2)});
    for (int i = 2; i <= n - 1; ++i) cov.push_back({d(i), b(i + 1)});
    cov.push_back({a(1), b(2)});
    for (int i = 2; i <= n - 1; ++i) cov.push_back({a(i + 1), c(i)});
    for (int i = 2; i <= n - 1; ++i) cov.push_back({c(i), b(i)});
    cov.push_back({c(2), b(1)});
    cov.push_back({a(2), b(1)});
    Generated g{build_poset(4 * n - 4, cov), std::nullopt};

    std::vector<std::vector<int>> rot(4 * n - 4);
    if (n == 3) {
        // the cover graph is unicyclic: hexagon d2 a1 b2 c2 b1 a2 with
        // pendants b3 on d2 and a3 on c2
        rot[a(1)] = {b(2), d(2)};
        rot[a(2)] = {d(2), b(1)};
        rot[a(3)] = {c(2)};
        rot[b(1)] = {c(2), a(2)};
        rot[b(2)] = {a(1), c(2)};
        rot[b(3)] = {d(2)};
        rot[c(2)] = {b(2), a(3), b(1)};
        rot[d(2)] = {a(2), b(3), a(1)};
    } else {
        for (int i = 3; i <= n - 2; ++i) rot[c(i)] = {b(i), c(i + 1), a(i + 1), c(i - 1)};
        rot[c(2)] = {b(2), c(3), a(3), b(1)};
        rot[c(n - 1)] = {b(n - 1), a(n), c(n - 2)};
        for (int i = 3; i <= n - 2; ++i) rot[d(i)] = {a(i), d(i + 1), b(i + 1), d(i - 1)};
        rot[d(2)] = {a(2), d(3), b(3), a(1)};
        rot[d(n - 1)] = {a(n - 1), b(n), d(n - 2)};
        rot[a(1)] = {b(2), d(2)};
        rot[a(2)] = {b(1), d(2)};
        for (int i = 3; i <= n - 1; ++i) rot[a(i)] = {c(i - 1), d(i)};
        rot[a(n)] = {c(n - 1)};
        rot[b(1)] = {c(2), a(2)};
        rot[b(2)] = {c(2), a(1)};
        for (int i = 3; i <= n - 1; ++i) rot[b(i)] = {c(i), d(i - 1)};
        rot[b(n)] = {d(n - 1)};
    }
    g.G = build_plane_graph(4 * n - 4, g.P.cover, rot, a(1), 0);
    return g;
}

// The wheel of order n: a zero z in the center and 2n-1 concentric rings of
// 2n elements each, every cover relation pointing inwards.  Ring r element
// (r, t) covers (r-1, t) and (r-1, t+1 mod 2n); z is covered by all of ring 1.
//
//            . (3,1) .  (3,0)  .            covers go inwards:
//          (2,1) | /  \ | (2,0)             (r,t) > (r-1,t), (r-1,t+1)
//            \   |/    \|  /
//           --- (1,1)--(1,0) ---                  z > nothing below
//                  \    /
//                    z
//
// ids: z -> 0, (r, t) -> 1 + (r-1)*2n + t.  The wheel contains the Kelly
// poset of the same order (and hence S_n) as an induced subposet.
inline Generated wheel(int n) {
    if (n < 3) throw BadParameter("wheel needs n >= 3");
    int m = 2 * n, h = 2 * n - 1;
    auto id = [&](int r, int t) { return 1 + (r - 1) * m + ((t % m) + m) % m; };
    PairSet cov;
    for (int t = 0; t < m; ++t) cov.push_back({0, id(1, t)});
    for (int r = 2; r <= h; ++r)
        for (int t = 0; t < m; ++t) {
            cov.push_back({id(r - 1, t), id(r, t)});
            cov.push_back({id(r - 1, t + 1), id(r, t)});
        }
    Generated g{build_poset(1 + h * m, cov), std::nullopt};

    // clockwise rotations with angle t drawn counterclockwise-increasing
    std::vector<std::vector<int>> rot(1 + h * m);
    for (int t = 0; t < m; ++t) rot[0].push_back(id(1, t));
    for (int t = 0; t < m; ++t) rot[id(1, t)] = {id(2, t), 0, id(2, t - 1)};
    for (int r = 2; r < h; ++r)
        for (int t = 0; t < m; ++t)
            rot[id(r, t)] = {id(r + 1, t), id(r - 1, t + 1), id(r - 1, t), id(r + 1, t - 1)};
    for (int t = 0; t < m; ++t) rot[id(h, t)] = {id(h - 1, t + 1), id(h - 1, t)};
    g.G = build_plane_graph(1 + h * m, g.P.cover, rot, id(h, 0), 0);
    return g;
}

inline Generated chain(int n) {
    if (n < 1) throw BadParameter("chain needs n >= 1");
    PairSet cov;
    for (int i = 0; i + 1 < n; ++i) cov.push_back({i, i + 1});
    Generated g{build_poset(n, cov), std::nullopt};
    std::vector<std::vector<int>> rot(n);
    for (int i = 0; i < n; ++i) {
        if (i > 0) rot[i].push_back(i - 1);
        if (i + 1 < n) rot[i].push_back(i + 1);
    }
    g.G = build_plane_graph(n, g.P.cover, rot, 0, 0);
    return g;
}

inline Generated antichain(int n) {
    if (n < 1) throw BadParameter("antichain needs n >= 1");
    Generated g{build_poset(n, {}), std::nullopt};
    g.G = build_plane_graph(n, {}, std::vector<std::vector<int>>(n), 0, 0);
    return g;
}

// random forest cover graph with random edge orientations; since the
// underlying graph is acyclic no cover is redundant, and by Trotter-Moore
// the dimension is at most 3
inline Generated forest(int n, uint64_t seed) {
    if (n < 1) throw BadParameter("forest needs n >= 1");
    std::mt19937_64 rng(seed);
    PairSet cov;
    std::vector<std::vector<int>> nbr(n);
    for (int v = 1; v < n; ++v) {
        // every fifth vertex or so starts a fresh tree
        if (rng() % 5 == 0) continue;
        int p = (int)(rng() % v);
        nbr[p].push_back(v);
        nbr[v].push_back(p);
        if (rng() % 2) cov.push_back({p, v});
        else cov.push_back({v, p});
    }
    Generated g{build_poset(n, cov), std::nullopt};
    g.G = build_plane_graph(n, g.P.cover, nbr, 0, 0);
    return g;
}

// stacked triangulation: repeatedly pick an inner face and plant a new vertex
// joined to its three corners, then orient all edges by a random ranking with
// two fixed outer extremes and take the transitive reduction
inline Generated random_planar(int n, uint64_t seed) {
    if (n < 3) throw BadParameter("random-planar needs n >= 3");
    std::mt19937_64 rng(seed);

    // clockwise rotations; inner faces kept as counterclockwise corner triples
    std::vector<std::vector<int>> rot{{1, 2}, {2, 0}, {0, 1}};
    PairSet edges{{0, 1}, {0, 2}, {1, 2}};
    std::vector<std::array<int, 3>> faces{{0, 2, 1}};
    auto insert_after = [&](int u, int after, int v) {
        auto& r = rot[u];
        auto it = std::find(r.begin(), r.end(), after);
        r.insert(it + 1, v);
    };
    for (int v = 3; v < n; ++v) {
        size_t fi = rng() % faces.size();
        auto [x, y, z] = faces[fi];
        rot.push_back({x, z, y});
        edges.push_back({std::min(x, v), std::max(x, v)});
        edges.push_back({std::min(y, v), std::max(y, v)});
        edges.push_back({std::min(z, v), std::max(z, v)});
        // in face x->y->z the corner at x lies between the darts to z and
        // to y, which are clockwise-consecutive in rot[x]
        insert_after(x, z, v);
        insert_after(y, x, v);
        insert_after(z, y, v);
        faces[fi] = {x, y, v};
        faces.push_back({y, z, v});
        faces.push_back({z, x, v});
    }

    // ranking: vertex 0 forced minimum, vertex 1 forced maximum
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    for (int i = 2; i < n; ++i) std::swap(rank[i], rank[2 + rng() % (i - 1)]);
    rank[0] = -1;
    rank[1] = n;

    PairSet rel;
    for (auto [u, v] : edges) {
        if (rank[u] < rank[v]) rel.push_back({u, v});
        else rel.push_back({v, u});
    }
    Poset P = poset_from_relation(n, rel);
    std::set<Pair> gone, kept;
    for (auto [u, v] : P.cover) kept.insert({std::min(u, v), std::max(u, v)});
    for (auto [u, v] : edges) {
        Pair e{std::min(u, v), std::max(u, v)};
        if (!kept.count(e)) gone.insert(e);
    }
    auto G0 = build_plane_graph(n, edges, rot, 0, 0);
    Generated g{std::move(P), std::nullopt};
    g.G = delete_edges(G0, gone);
    return g;
}

} // namespace gen_detail

inline Generated generate(Family f, int n, uint64_t seed = 0) {
    switch (f) {
        case Family::Standard: return gen_detail::standard(n);
        case Family::Kelly: return gen_detail::kelly(n);
        case Family::Wheel: return gen_detail::wheel(n);
        case Family::Chain: return gen_detail::chain(n);
        case Family::Antichain: return gen_detail::antichain(n);
        case Family::Forest: return gen_detail::forest(n, seed);
        case Family::RandomPlanar: return gen_detail::random_planar(n, seed);
    }
    throw BadParameter("unknown family");
}

} // namespace planedim
