#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace spinpoll {

enum class GraphFamily { Empty, Star, Chain, Ring, Wheel, Complete, Lattice2D };

enum class Boundary { Free, PlusClamped, MinusClamped };

const char* family_name(GraphFamily f);
std::optional<GraphFamily> family_from_name(std::string_view name);
const char* boundary_name(Boundary b);
std::optional<Boundary> boundary_from_name(std::string_view name);

// A concrete network with a fixed canonical layout: vertices 0..n-1, hub at
// index 0 for Star/Wheel, row-major grid for Lattice2D. Boundary clamping is
// a per-vertex frozen-spin mask, not graph surgery, so the same grid serves
// Free/Plus/Minus runs. Immutable after construction.
struct GraphInstance {
    GraphFamily family = GraphFamily::Empty;
    int n = 0;
    int side = 0;  // L for Lattice2D (n = L*L); 0 otherwise
    Boundary boundary = Boundary::Free;
    std::optional<int> hub;
    std::vector<std::pair<int, int>> edges;  // unordered pairs with first < second
    std::vector<int8_t> clamp;               // 0 = free, +1/-1 = frozen spin value

    std::vector<int> adj_offsets;  // CSR adjacency
    std::vector<int> adj;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return adj_offsets[v + 1] - adj_offsets[v]; }
    std::span<const int> neighbors(int v) const {
        return {adj.data() + adj_offsets[v], adj.data() + adj_offsets[v + 1]};
    }
    bool is_clamped(int v) const { return clamp[v] != 0; }
    int num_free() const;
    std::vector<int> free_vertices() const;
};

// Deterministic construction; throws std::invalid_argument on family size
// minimums (Ring n>=3, Wheel n>=4, Chain/Star n>=2, Lattice2D n=L^2) or a
// boundary request on a non-lattice family.
GraphInstance build_graph(GraphFamily family, int n, Boundary boundary = Boundary::Free);

}  // namespace spinpoll
