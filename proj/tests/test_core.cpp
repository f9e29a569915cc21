#include <catch2/catch_amalgamated.hpp>

#include <planedim/core.hpp>

#include <functional>
#include <random>

using namespace planedim;

namespace {

Poset standard_example(int n) {
    PairSet cov;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) cov.push_back({i, n + j});
    return build_poset(2 * n, cov);
}

Poset chain(int n) {
    PairSet cov;
    for (int i = 0; i + 1 < n; ++i) cov.push_back({i, i + 1});
    return build_poset(n, cov);
}

Poset random_poset(int n, double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    PairSet rel;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < p) rel.push_back({i, j});
    return poset_from_relation(n, rel);
}

// all linear extensions, for tiny posets only
void all_extensions(const Poset& P, std::vector<LinExt>& out) {
    LinExt cur;
    std::vector<bool> used(P.n, false);
    std::function<void()> rec = [&] {
        if ((int)cur.size() == P.n) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < P.n; ++v) {
            if (used[v]) continue;
            bool ready = true;
            for (int w : P.down_adj[v]) ready = ready && used[w];
            if (!ready) continue;
            used[v] = true;
            cur.push_back(v);
            rec();
            cur.pop_back();
            used[v] = false;
        }
    };
    rec();
}

int brute_force_dim(const Poset& P) {
    std::vector<LinExt> exts;
    all_extensions(P, exts);
    auto I = incomparable_pairs(P);
    if (I.empty()) return 1;
    int e = (int)exts.size();
    std::vector<std::vector<int>> pos(e, std::vector<int>(P.n));
    for (int r = 0; r < e; ++r)
        for (int i = 0; i < P.n; ++i) pos[r][exts[r][i]] = i;
    for (int k = 1; k <= e; ++k) {
        std::vector<int> pickidx(k);
        std::function<bool(int, int)> choose = [&](int start, int depth) -> bool {
            if (depth == k) {
                for (auto [a, b] : I) {
                    bool rev = false;
                    for (int t = 0; t < k && !rev; ++t) rev = pos[pickidx[t]][b] < pos[pickidx[t]][a];
                    if (!rev) return false;
                }
                return true;
            }
            for (int r = start; r < e; ++r) {
                pickidx[depth] = r;
                if (choose(r + 1, depth + 1)) return true;
            }
            return false;
        };
        if (choose(0, 0)) return k;
    }
    return e;
}

bool is_strict_cycle(const Poset& P, const PairSet& C) {
    int k = (int)C.size();
    if (k < 2) return false;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            bool want = (j == (i + 1) % k);
            if (P.leq(C[i].first, C[j].second) != want) return false;
            // the only admissible downward comparability is the degenerate a_i = b_{i+1}
            if (i != j && P.leq(C[j].second, C[i].first) && !(want && C[j].second == C[i].first))
                return false;
        }
    return true;
}

} // namespace

TEST_CASE("build_poset computes closure and rejects bad input") {
    auto P = build_poset(4, {{0, 1}, {1, 2}, {0, 3}});
    CHECK(P.leq(0, 2));
    CHECK(P.lt(0, 2));
    CHECK_FALSE(P.leq(2, 0));
    CHECK(P.incomparable(3, 1));
    CHECK(P.leq(2, 2));
    CHECK_THROWS_AS(build_poset(2, {{0, 1}, {1, 0}}), CycleDetected);
    CHECK_THROWS_AS(build_poset(3, {{0, 1}, {1, 2}, {0, 2}}), RedundantCover);
    CHECK_THROWS_AS(build_poset(2, {{0, 2}}), BadParameter);
    CHECK_THROWS_AS(build_poset(2, {{0, 0}}), BadParameter);
    CHECK_THROWS_AS(build_poset(2, {{0, 1}, {0, 1}}), BadParameter);
}

TEST_CASE("poset_from_relation reduces to covers") {
    auto P = poset_from_relation(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(P.cover == PairSet{{0, 1}, {1, 2}});
    CHECK(P.leq(0, 2));
}

TEST_CASE("incomparable_pairs is symmetric and complete") {
    auto P = standard_example(3);
    auto I = incomparable_pairs(P);
    // 2n^2 ordered pairs for S_n
    CHECK(I.size() == 18);
    for (auto [a, b] : I) CHECK(P.incomparable(a, b));
}

TEST_CASE("chains have no alternating cycle") {
    auto P = chain(6);
    CHECK(is_reversible(P, incomparable_pairs(P)));
}

TEST_CASE("standard example diagonal forms a strict alternating cycle") {
    auto P = standard_example(2);
    PairSet diag{{0, 2}, {1, 3}}; // (a1,b1),(a2,b2)
    auto cyc = find_strict_alternating_cycle(P, diag);
    REQUIRE(cyc.has_value());
    CHECK(cyc->size() == 2);
    PairSet pairs;
    for (int i : *cyc) pairs.push_back(diag[i]);
    CHECK(is_strict_cycle(P, pairs));
}

TEST_CASE("found alternating cycles are always strict") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        auto P = random_poset(9, 0.3, seed);
        auto I = incomparable_pairs(P);
        auto cyc = find_strict_alternating_cycle(P, I);
        if (!cyc) {
            CHECK_NOTHROW(reverse_set(P, I));
            continue;
        }
        PairSet pairs;
        for (int i : *cyc) pairs.push_back(I[i]);
        INFO("seed " << seed);
        CHECK(is_strict_cycle(P, pairs));
    }
}

TEST_CASE("reverse_set produces a linear extension reversing every pair") {
    auto P = standard_example(3);
    PairSet S{{0, 3}, {1, 4}, {2, 5}}; // the diagonal (a_i, b_i)
    // the full diagonal is an alternating cycle for n=3, so it must throw
    CHECK_THROWS_AS(reverse_set(P, S), NotReversible);
    try {
        reverse_set(P, S);
    } catch (const NotReversible& e) {
        CHECK(is_strict_cycle(P, e.cycle));
    }
    // a single diagonal pair is reversible
    auto L = reverse_set(P, {{0, 3}});
    std::vector<int> pos(P.n);
    for (int i = 0; i < P.n; ++i) pos[L[i]] = i;
    CHECK(pos[3] < pos[0]);
    for (auto [x, y] : P.cover) CHECK(pos[x] < pos[y]);
}

TEST_CASE("reverse_set rejects comparable pairs") {
    auto P = chain(3);
    CHECK_THROWS_AS(reverse_set(P, {{0, 2}}), BadParameter);
}

TEST_CASE("verify_realizer accepts a handmade realizer and rejects broken ones") {
    auto P = build_poset(2, {}); // 2-antichain
    std::vector<LinExt> good{{0, 1}, {1, 0}};
    CHECK(verify_realizer(P, good).ok);
    std::vector<LinExt> half{{0, 1}};
    CHECK_FALSE(verify_realizer(P, half).ok);
    auto Q = chain(3);
    std::vector<LinExt> bad{{2, 1, 0}};
    CHECK_FALSE(verify_realizer(Q, bad).ok);
}

TEST_CASE("dim_exact on small named posets") {
    CHECK(dim_exact(chain(7)).d == 1);
    CHECK(dim_exact(build_poset(4, {})).d == 2); // antichain
    for (int n = 2; n <= 4; ++n) {
        auto P = standard_example(n);
        auto [d, cov] = dim_exact(P);
        CHECK(d == n);
        auto R = realizer_from_covering(P, cov);
        CHECK(verify_realizer(P, R).ok);
    }
    // two disjoint 3-chains
    auto T = build_poset(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    CHECK(dim_exact(T).d == 2);
}

TEST_CASE("dim_exact matches brute force on random posets") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        auto P = random_poset(5, 0.35, 100 + seed);
        INFO("seed " << seed);
        CHECK(dim_exact(P).d == brute_force_dim(P));
    }
}

TEST_CASE("dim_exact covering classes are reversible and cover I") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        auto P = random_poset(8, 0.3, 500 + seed);
        auto I = incomparable_pairs(P);
        auto [d, cov] = dim_exact(P, I, 128);
        std::set<Pair> covered;
        for (auto& cls : cov.classes) {
            CHECK(is_reversible(P, cls));
            for (auto pr : cls) covered.insert(pr);
        }
        for (auto pr : I) CHECK(covered.count(pr) == 1);
        CHECK((int)cov.size() == std::max(d, 1));
    }
}

TEST_CASE("dim_exact budget") {
    auto P = build_poset(10, {});
    CHECK_THROWS_AS(dim_exact(P, incomparable_pairs(P), 8), BudgetExceeded);
}

TEST_CASE("se_exact on standard examples and chains") {
    for (int n = 2; n <= 5; ++n) {
        auto [s, w] = se_exact(standard_example(n));
        CHECK(s == n);
        CHECK((int)w.size() == n);
    }
    CHECK(se_exact(chain(5)).s == 1);
    CHECK(se_exact(build_poset(1, {})).s == 1);
}

TEST_CASE("se_exact witness induces a genuine standard example") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        auto P = random_poset(10, 0.25, 900 + seed);
        auto [s, w] = se_exact(P);
        if (s < 2) continue;
        REQUIRE((int)w.size() == s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                if (i == j) {
                    CHECK(P.incomparable(w[i].first, w[i].second));
                } else {
                    CHECK(P.lt(w[i].first, w[j].second));
                    CHECK(P.incomparable(w[i].first, w[j].first));
                    CHECK(P.incomparable(w[i].second, w[j].second));
                }
            }
    }
}

TEST_CASE("se_exact lower-bounds dim_exact") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto P = random_poset(7, 0.3, 1300 + seed);
        auto I = incomparable_pairs(P);
        if (I.empty()) continue;
        CHECK(se_exact(P, I).s <= dim_exact(P, I, 128).d);
    }
}

TEST_CASE("lift_extension embeds a sub-extension into a full one") {
    auto P = standard_example(3);
    Subposet S = induced_subposet(P, {0, 1, 3, 4}); // a1,a2,b1,b2
    auto subext = linear_extension(S.P);
    std::vector<int> sub_in_full;
    for (int v : subext) sub_in_full.push_back(S.to_full[v]);
    auto L = lift_extension(P, sub_in_full);
    std::vector<int> pos(P.n);
    for (int i = 0; i < P.n; ++i) pos[L[i]] = i;
    for (size_t i = 0; i + 1 < sub_in_full.size(); ++i)
        CHECK(pos[sub_in_full[i]] < pos[sub_in_full[i + 1]]);
    for (auto [x, y] : P.cover) CHECK(pos[x] < pos[y]);
}

TEST_CASE("dual and induced subposet sanity") {
    auto P = standard_example(3);
    auto D = dual_poset(P);
    for (int x = 0; x < P.n; ++x)
        for (int y = 0; y < P.n; ++y) CHECK(P.leq(x, y) == D.leq(y, x));
    auto S = induced_subposet(P, {0, 1, 2});
    CHECK(S.P.cover.empty()); // the a_i form an antichain
    CHECK(dim_exact(S.P).d == 2);
}

TEST_CASE("cover_components") {
    auto T = build_poset(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    auto c = cover_components(T);
    CHECK(c[0] == c[1]);
    CHECK(c[1] == c[2]);
    CHECK(c[3] == c[4]);
    CHECK(c[0] != c[3]);
}
