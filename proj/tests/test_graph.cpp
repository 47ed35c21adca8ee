#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "spinpoll/graph.hpp"

using namespace spinpoll;

namespace {

std::vector<int> degree_sequence(const GraphInstance& g) {
    std::vector<int> d(g.n);
    for (int v = 0; v < g.n; ++v) d[v] = g.degree(v);
    return d;
}

}  // namespace

TEST_CASE("edge counts match the closed forms") {
    CHECK(build_graph(GraphFamily::Empty, 5).edge_count() == 0);
    CHECK(build_graph(GraphFamily::Empty, 10).edge_count() == 0);
    CHECK(build_graph(GraphFamily::Wheel, 5).edge_count() == 8);  // 4 ring + 4 spokes
    CHECK(build_graph(GraphFamily::Lattice2D, 9).edge_count() == 12);  // 2L(L-1), L=3
    CHECK(build_graph(GraphFamily::Complete, 5).edge_count() == 10);
    CHECK(build_graph(GraphFamily::Ring, 7).edge_count() == 7);
    CHECK(build_graph(GraphFamily::Chain, 7).edge_count() == 6);
    CHECK(build_graph(GraphFamily::Star, 9).edge_count() == 8);
}

TEST_CASE("degree sequences follow each family") {
    for (int n : {4, 7, 12, 25}) {
        auto star = degree_sequence(build_graph(GraphFamily::Star, n));
        CHECK(star[0] == n - 1);
        CHECK(std::count(star.begin() + 1, star.end(), 1) == n - 1);

        auto wheel = degree_sequence(build_graph(GraphFamily::Wheel, n));
        CHECK(wheel[0] == n - 1);
        CHECK(std::count(wheel.begin() + 1, wheel.end(), 3) == n - 1);

        auto chain = degree_sequence(build_graph(GraphFamily::Chain, n));
        CHECK(chain.front() == 1);
        CHECK(chain.back() == 1);
        CHECK(std::count(chain.begin(), chain.end(), 2) == n - 2);

        auto ring = degree_sequence(build_graph(GraphFamily::Ring, n));
        CHECK(std::count(ring.begin(), ring.end(), 2) == n);

        auto complete = degree_sequence(build_graph(GraphFamily::Complete, n));
        CHECK(std::count(complete.begin(), complete.end(), n - 1) == n);
    }
    // lattice: interior degree 4, corner 2, edge 3
    auto g = build_graph(GraphFamily::Lattice2D, 16);
    std::map<int, int> hist;
    for (int d : degree_sequence(g)) ++hist[d];
    CHECK(hist[2] == 4);
    CHECK(hist[3] == 8);
    CHECK(hist[4] == 4);
}

TEST_CASE("construction is deterministic and has no duplicate edges") {
    for (GraphFamily f : {GraphFamily::Star, GraphFamily::Wheel, GraphFamily::Ring,
                          GraphFamily::Complete, GraphFamily::Lattice2D}) {
        const int n = f == GraphFamily::Lattice2D ? 16 : 11;
        auto a = build_graph(f, n);
        auto b = build_graph(f, n);
        CHECK(a.edges == b.edges);
        auto sorted = a.edges;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        for (auto [u, v] : a.edges) {
            CHECK(u < v);  // no self loops, canonical order
            CHECK(v < n);
        }
    }
}

TEST_CASE("size and boundary violations are rejected") {
    CHECK_THROWS_AS(build_graph(GraphFamily::Wheel, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(GraphFamily::Ring, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(GraphFamily::Chain, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(GraphFamily::Lattice2D, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(GraphFamily::Empty, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(GraphFamily::Chain, 5, Boundary::PlusClamped),
                    std::invalid_argument);
}

TEST_CASE("lattice clamp masks freeze exactly the frame") {
    auto g = build_graph(GraphFamily::Lattice2D, 9, Boundary::PlusClamped);
    CHECK(g.num_free() == 1);
    CHECK(g.clamp[4] == 0);  // center of the 3x3 grid
    for (int v : {0, 1, 2, 3, 5, 6, 7, 8}) CHECK(g.clamp[v] == 1);

    auto m = build_graph(GraphFamily::Lattice2D, 25, Boundary::MinusClamped);
    CHECK(m.num_free() == 9);
    for (int v : m.free_vertices()) CHECK(m.clamp[v] == 0);

    auto f = build_graph(GraphFamily::Lattice2D, 25);
    CHECK(f.num_free() == 25);
}

TEST_CASE("family names round trip") {
    for (GraphFamily f : {GraphFamily::Empty, GraphFamily::Star, GraphFamily::Chain,
                          GraphFamily::Ring, GraphFamily::Wheel, GraphFamily::Complete,
                          GraphFamily::Lattice2D}) {
        CHECK(family_from_name(family_name(f)) == f);
    }
    CHECK(!family_from_name("torus").has_value());
}
