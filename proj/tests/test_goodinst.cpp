#include <catch2/catch_amalgamated.hpp>

#include <planedim/gen.hpp>
#include <planedim/goodinst.hpp>

#include <set>

using namespace planedim;

namespace {

Instance wheel_instance(int n) {
    auto g = generate(Family::Wheel, n);
    std::vector<std::vector<int>> nbr(g.P.n);
    for (int u = 0; u < g.P.n; ++u) nbr[u] = g.G->neighbors(u);
    auto G = replant(g.P.n, g.G->edges(), nbr, 0);
    PairSet I = incomparable_pairs(g.P);
    return Instance(std::move(g.P), std::move(G), 0, std::move(I));
}

std::optional<Instance> random_planar_instance(int n, uint64_t seed) {
    auto g = generate(Family::RandomPlanar, n, seed);
    PairSet I;
    for (auto [a, b] : incomparable_pairs(g.P))
        if (g.P.leq(0, b)) I.push_back({a, b});
    if (I.empty()) return std::nullopt;
    return Instance(std::move(g.P), std::move(*g.G), 0, std::move(I));
}

std::vector<Instance> instance_pool() {
    std::vector<Instance> out;
    out.push_back(wheel_instance(3));
    for (uint64_t seed = 0; seed < 8; ++seed)
        if (auto inst = random_planar_instance(18 + (int)seed * 3, seed)) out.push_back(std::move(*inst));
    return out;
}

bool covers_all(const Covering& C, const PairSet& I) {
    std::set<Pair> got;
    for (auto& cls : C.classes) got.insert(cls.begin(), cls.end());
    for (auto p : I)
        if (!got.count(p)) return false;
    return true;
}

} // namespace

TEST_CASE("strict cycle enumeration finds the standard example digon") {
    auto P = build_poset(4, {{0, 3}, {1, 2}});
    PairSet I{{0, 2}, {1, 3}};
    int hits = 0;
    for_each_strict_cycle(P, I, 4, 1000, [&](const std::vector<int>& cyc) {
        ++hits;
        CHECK(cyc == std::vector<int>{0, 1});
    });
    CHECK(hits == 1);
}

TEST_CASE("risky and dangerous predicates") {
    std::vector<Instance> pool = instance_pool();
    {
        // the interesting pairs mostly live inside the per-address sub-instances
        size_t base = pool.size();
        for (size_t i = 0; i < base; ++i)
            for (auto& cls : good_reduction(pool[i]).classes) pool.push_back(cls.good.inst);
    }
    int seen_dangerous = 0, seen_nonrisky = 0;
    for (auto& inst : pool) {
        for (auto [a, b] : inst.I) {
            bool risky = is_risky(inst, a, b);
            bool dangerous = is_dangerous(inst, a, b);
            if (dangerous) {
                ++seen_dangerous;
                CHECK(risky);
                CHECK_FALSE(inst.B.test(a));
            }
            if (!risky) ++seen_nonrisky;
            if ((inst.P.up[a] & inst.B).none()) CHECK_FALSE(risky);
        }
    }
    CHECK(seen_dangerous > 0);
    CHECK(seen_nonrisky > 0);
}

TEST_CASE("escape addresses match a direct shadow scan") {
    for (auto& inst : instance_pool()) {
        for (auto [a, b] : inst.I) {
            const auto& D = inst.shadows(b);
            int jo = D.sd + 1;
            for (int j = 0; j <= D.sd; ++j)
                if (locate_in_shadow(inst, a, b, j) == Location::Outside) {
                    jo = j;
                    break;
                }
            Address addr = escape_address(inst, a, b);
            CHECK(addr.j == jo);
            if (jo <= D.sd) {
                CHECK(addr.x == D.shadows[jo].initial);
            } else {
                CHECK(addr.x == b);
            }
            if (jo == 0) CHECK(addr.x == inst.x0);
            CHECK(inst.P.leq(addr.x, b));
        }
    }
}

TEST_CASE("risky pairs are trapped by shadows with a shared initial element") {
    int configs = 0;
    for (auto& inst : instance_pool()) {
        for (auto [a, b] : inst.I) {
            if (!is_risky(inst, a, b)) continue;
            const auto& Db = inst.shadows(b);
            for (int b0 = (int)inst.B.find_first(); b0 != -1 && b0 < inst.P.n;
                 b0 = (int)inst.B.find_next(b0)) {
                if (b0 == inst.x0 || !inst.P.incomparable(a, b0)) continue;
                const auto& D0 = inst.shadows(b0);
                for (int j = 0; j <= std::min(D0.sd, Db.sd); ++j) {
                    if (D0.shadows[j].initial != Db.shadows[j].initial) continue;
                    if (locate_in_shadow(inst, a, b0, j) == Location::Outside) continue;
                    ++configs;
                    CHECK(locate_in_shadow(inst, b, b0, j) != Location::Outside);
                }
            }
        }
    }
    CHECK(configs > 0);
}

TEST_CASE("strict cycles within one parity share an address and spread their b's") {
    int cycles = 0;
    for (auto& inst : instance_pool()) {
        for (int theta = 0; theta < 2; ++theta) {
            PairSet It;
            std::vector<Address> addr;
            for (auto [a, b] : inst.I) {
                if (!is_risky(inst, a, b)) continue;
                Address ad = escape_address(inst, a, b);
                if (ad.j % 2 != theta) continue;
                It.push_back({a, b});
                addr.push_back(ad);
            }
            for_each_strict_cycle(inst.P, It, 4, 500000, [&](const std::vector<int>& cyc) {
                ++cycles;
                for (size_t s = 1; s < cyc.size(); ++s) CHECK(addr[cyc[s]] == addr[cyc[0]]);
                int j = addr[cyc[0]].j;
                for (size_t s = 0; s < cyc.size(); ++s)
                    for (size_t t = 0; t < cyc.size(); ++t) {
                        if (s == t) continue;
                        int bs = It[cyc[s]].second, bt = It[cyc[t]].second;
                        CHECK(locate_in_shadow(inst, bt, bs, j) == Location::Outside);
                    }
            });
        }
    }
    CHECK(cycles > 0);
}

TEST_CASE("good_reduction partitions I and composes to a small covering") {
    for (auto& inst : instance_pool()) {
        auto R = good_reduction(inst);

        std::set<Pair> seen;
        auto take = [&](const PairSet& S) {
            for (auto p : S) {
                CHECK(!seen.count(p));
                seen.insert(p);
            }
        };
        take(R.nonrisky[0]);
        take(R.nonrisky[1]);
        for (int theta = 0; theta < 2; ++theta) {
            take(R.nondangerous[theta][0]);
            take(R.nondangerous[theta][1]);
        }
        for (auto& cls : R.classes) take(cls.pairs_full);
        CHECK(seen.size() == inst.I.size());
        for (auto p : inst.I) CHECK(seen.count(p));

        CHECK(is_reversible(inst.P, R.nonrisky[0]));
        CHECK(is_reversible(inst.P, R.nonrisky[1]));
        for (int theta = 0; theta < 2; ++theta) {
            CHECK(is_reversible(inst.P, R.nondangerous[theta][0]));
            CHECK(is_reversible(inst.P, R.nondangerous[theta][1]));
        }

        Address prev{-1, -1};
        for (auto& cls : R.classes) {
            CHECK(prev < cls.addr);
            prev = cls.addr;
            CHECK(cls.theta == cls.addr.j % 2);
            CHECK(!cls.pairs_full.empty());
            CHECK(cls.pairs_full.size() == cls.good.inst.I.size());
            for (size_t t = 0; t < cls.pairs_full.size(); ++t) {
                auto [a, b] = cls.pairs_full[t];
                CHECK(cls.to_sub[a] == cls.good.inst.I[t].first);
                CHECK(cls.to_sub[b] == cls.good.inst.I[t].second);
                CHECK(cls.to_full[cls.to_sub[a]] == a);
            }
            if (cls.addr.x == inst.x0) {
                CHECK(cls.good.inst.P.n == inst.P.n);
            } else {
                CHECK(cls.good.inst.P.n < inst.P.n);
                CHECK(cls.good.inst.x0 == cls.to_sub[cls.addr.x]);
            }
            // the sub-poset is the restriction of the parent order
            auto& Q = cls.good.inst.P;
            for (int u = 0; u < Q.n; ++u)
                for (int v = 0; v < Q.n; ++v)
                    CHECK(Q.leq(u, v) == inst.P.leq(cls.to_full[u], cls.to_full[v]));
        }

        std::vector<Covering> covers;
        size_t maxd = 0;
        for (auto& cls : R.classes) {
            auto res = dim_exact(cls.good.inst.P, cls.good.inst.I, 4096);
            maxd = std::max(maxd, res.covering.size());
            covers.push_back(std::move(res.covering));
        }
        auto C = compose_good_reduction(inst.P, R, covers);
        CHECK(covers_all(C, inst.I));
        CHECK(C.size() <= 2 * (maxd + 2) + 2);
        auto realizer = realizer_from_covering(inst.P, C);
        CHECK(verify_realizer(inst.P, realizer, inst.I).ok);
    }
}

TEST_CASE("maximalization keeps projections and is idempotent") {
    int tested = 0;
    for (auto& inst : instance_pool()) {
        auto R = good_reduction(inst);
        for (auto& cls : R.classes) {
            auto plus = maximalize(cls.good);
            auto& I0 = cls.good.inst.I;
            auto& I1 = plus.good.inst.I;
            for (auto p : I0) CHECK(std::find(I1.begin(), I1.end(), p) != I1.end());
            auto proj = [&](const PairSet& I, bool first) {
                std::set<int> s;
                for (auto [a, b] : I) s.insert(first ? a : b);
                return s;
            };
            CHECK(proj(I0, true) == proj(I1, true));
            CHECK(proj(I0, false) == proj(I1, false));
            auto again = maximalize(plus.good);
            CHECK(again.good.inst.I == I1);
            ++tested;
            if (tested >= 12) return;
        }
    }
    CHECK(tested > 0);
}

TEST_CASE("good-instance validation rejects offending pairs") {
    auto inst = wheel_instance(3);

    Pair shadowed{-1, -1}, tame{-1, -1};
    for (auto [a, b] : inst.I) {
        if (shadowed.first < 0 && in_shad(inst, a, b)) shadowed = {a, b};
        if (tame.first < 0 && !in_shad(inst, a, b) && !is_dangerous(inst, a, b)) tame = {a, b};
    }
    REQUIRE(shadowed.first >= 0);
    REQUIRE(tame.first >= 0);
    CHECK_THROWS_AS(GoodInstance(Instance(inst.P, inst.G, 0, PairSet{shadowed})),
                    InvariantViolation);
    CHECK_THROWS_AS(GoodInstance(Instance(inst.P, inst.G, 0, PairSet{tame})), InvariantViolation);
}
