#include <catch2/catch_amalgamated.hpp>

#include <planedim/embed.hpp>

using namespace planedim;

namespace {

// triangle drawn with 0 bottom-left, 1 bottom-right, 2 top
PlaneGraph triangle() {
    PairSet edges{{0, 1}, {0, 2}, {1, 2}};
    std::vector<std::vector<int>> rot{{2, 1}, {2, 0}, {1, 0}};
    return build_plane_graph(3, edges, rot, 0, 0, {0, 2, 1});
}

// theta graph: 0 bottom, 4 top, three inner paths through 1 (left), 2, 3 (right)
PlaneGraph theta() {
    PairSet edges{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
    std::vector<std::vector<int>> rot{{1, 2, 3}, {4, 0}, {4, 0}, {4, 0}, {3, 2, 1}};
    return build_plane_graph(5, edges, rot, 0, 0);
}

// K4: outer triangle 1,2,3 with 0 in the middle
PlaneGraph k4(bool twisted = false) {
    PairSet edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::vector<std::vector<int>> rot{{3, 2, 1}, {3, 0, 2}, {1, 0, 3}, {2, 0, 1}};
    if (twisted) rot[0] = {2, 3, 1};
    return build_plane_graph(4, edges, rot, 1, 0);
}

} // namespace

TEST_CASE("build_plane_graph traces faces and checks Euler") {
    auto T = triangle();
    CHECK(T.num_faces() == 2);
    CHECK(T.face_of[T.anchor] == T.outer_face);
    auto K = k4();
    CHECK(K.num_faces() == 4);
    CHECK_THROWS_AS(k4(true), NonPlanarRotation);
}

TEST_CASE("rotation and anchor validation") {
    PairSet edges{{0, 1}, {0, 2}, {1, 2}};
    std::vector<std::vector<int>> bad{{2, 1}, {2, 0}, {1, 1}};
    CHECK_THROWS_AS(build_plane_graph(3, edges, bad, 0, 0), RotationMismatch);
    std::vector<std::vector<int>> missing{{2, 1}, {0}, {1, 0}};
    CHECK_THROWS_AS(build_plane_graph(3, edges, missing, 0, 0), RotationMismatch);
    std::vector<std::vector<int>> rot{{2, 1}, {2, 0}, {1, 0}};
    CHECK_THROWS_AS(build_plane_graph(3, edges, rot, 0, 0, {0, 1, 2}), AnchorNotOnOuterFace);
    CHECK_NOTHROW(build_plane_graph(3, edges, rot, 0, 0, {2, 1, 0}));
    CHECK_THROWS_AS(build_plane_graph(3, edges, rot, 0, 7), BadParameter);
}

TEST_CASE("anchor_pos_after") {
    std::vector<std::vector<int>> rot{{2, 1}, {2, 0}, {1, 0}};
    CHECK(anchor_pos_after(rot, 0, -1) == 0);
    CHECK(anchor_pos_after(rot, 0, 2) == 1);
    CHECK(anchor_pos_after(rot, 0, 1) == 2);
    CHECK_THROWS_AS(anchor_pos_after(rot, 0, 5), BadParameter);
}

TEST_CASE("cut orderings") {
    auto G = theta();
    auto ord = cut_ordering(G, 0, G.anchor);
    REQUIRE(ord.size() == 4);
    CHECK(ord[0] == G.anchor);
    CHECK(G.head[ord[1]] == 1);
    CHECK(G.head[ord[2]] == 2);
    CHECK(G.head[ord[3]] == 3);
    CHECK(dart_position(G, 0, G.anchor, G.dart(0, 2)) == 2);
}

TEST_CASE("compare_paths orders the theta paths left to right") {
    auto G = theta();
    std::vector<int> L{0, 1, 4}, M{0, 2, 4}, R{0, 3, 4};
    CHECK(compare_paths(G, L, M, G.anchor).order == PathOrder::LeftOf);
    CHECK(compare_paths(G, M, R, G.anchor).order == PathOrder::LeftOf);
    CHECK(compare_paths(G, L, R, G.anchor).order == PathOrder::LeftOf);
    CHECK(compare_paths(G, R, L, G.anchor).order == PathOrder::RightOf);
    CHECK(compare_paths(G, L, L, G.anchor).order == PathOrder::Equal);
    std::vector<int> P{0, 1};
    CHECK(compare_paths(G, P, L, G.anchor).order == PathOrder::Prefix);
    CHECK(compare_paths(G, L, P, G.anchor).order == PathOrder::Extension);
    CHECK(compare_paths(G, L, M, G.anchor).divergence == 0);
}

TEST_CASE("mirror flips left and right") {
    auto G = mirror(theta());
    std::vector<int> L{0, 1, 4}, M{0, 2, 4};
    CHECK(compare_paths(G, L, M, G.anchor).order == PathOrder::RightOf);
}

TEST_CASE("region_of_cycle on the K4 outer triangle") {
    auto K = k4();
    auto R = region_of_cycle(K, {1, 2, 3});
    CHECK(vertex_in_region(R, 0) == Location::Interior);
    CHECK(vertex_in_region(R, 1) == Location::Boundary);
    CHECK(edge_in_region(K, R, 0, 1) == Location::Interior);
    CHECK(edge_in_region(K, R, 0, 2) == Location::Interior);
    CHECK(edge_in_region(K, R, 0, 3) == Location::Interior);
    CHECK(edge_in_region(K, R, 1, 2) == Location::Boundary);
    CHECK(R.faces.count() == 3);
}

TEST_CASE("region_of_cycle picks the bounded side in the theta graph") {
    auto G = theta();
    auto R = region_of_cycle(G, {0, 1, 4, 2});
    CHECK(edge_in_region(G, R, 0, 3) == Location::Outside);
    CHECK(edge_in_region(G, R, 3, 4) == Location::Outside);
    CHECK(edge_in_region(G, R, 0, 2) == Location::Boundary);
    CHECK(vertex_in_region(R, 3) == Location::Outside);
    CHECK(R.faces.count() == 1);
    // degenerate walk along a single edge bounds nothing
    auto D = region_of_cycle(G, {0, 1, 0});
    CHECK(D.faces.none());
    CHECK(edge_in_region(G, D, 0, 1) == Location::Boundary);
}

TEST_CASE("contract an edge of the theta graph") {
    auto G = theta();
    auto C = contract_connected_set(G, {0, 1});
    CHECK(C.rep == 0);
    CHECK(C.edges == PairSet{{0, 2}, {0, 3}, {0, 4}, {2, 4}, {3, 4}});
    CHECK(C.rotation[0] == std::vector<int>{4, 2, 3});
    CHECK(C.rotation[1].empty());
}

TEST_CASE("contraction prunes parallels and loops") {
    auto G = theta();
    auto C = contract_connected_set(G, {0, 1, 2});
    CHECK(C.rep == 0);
    CHECK(C.edges == PairSet{{0, 3}, {0, 4}, {3, 4}});
}

TEST_CASE("contract and replant keeps a planar rooted graph") {
    auto G = theta();
    auto C = contract_connected_set(G, {0, 1});
    // relabel surviving vertices densely
    std::vector<int> ids{0, 2, 3, 4}, to_new(5, -1);
    for (size_t i = 0; i < ids.size(); ++i) to_new[ids[i]] = (int)i;
    PairSet edges;
    for (auto [u, v] : C.edges) edges.push_back({std::min(to_new[u], to_new[v]), std::max(to_new[u], to_new[v])});
    std::vector<std::vector<int>> rot(ids.size());
    for (size_t i = 0; i < ids.size(); ++i)
        for (int w : C.rotation[ids[i]]) rot[i].push_back(to_new[w]);
    auto H = replant((int)ids.size(), edges, rot, 0);
    CHECK(H.x0 == 0);
    CHECK(H.face_of[H.anchor] == H.outer_face);
    CHECK(H.num_faces() == 3);
}

TEST_CASE("delete_edges keeps rotation order and anchor corner") {
    auto G = theta();
    auto H = delete_edges(G, {{0, 2}, {2, 4}});
    CHECK(H.edges() == PairSet{{0, 1}, {0, 3}, {1, 4}, {3, 4}});
    std::vector<int> L{0, 1, 4}, R{0, 3, 4};
    CHECK(compare_paths(H, L, R, H.anchor).order == PathOrder::LeftOf);
    CHECK(H.num_faces() == 2);
}
