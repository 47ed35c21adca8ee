#include "spinpoll/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinpoll {

const char* family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::Empty: return "empty";
        case GraphFamily::Star: return "star";
        case GraphFamily::Chain: return "chain";
        case GraphFamily::Ring: return "ring";
        case GraphFamily::Wheel: return "wheel";
        case GraphFamily::Complete: return "complete";
        case GraphFamily::Lattice2D: return "lattice";
    }
    return "?";
}

std::optional<GraphFamily> family_from_name(std::string_view name) {
    for (GraphFamily f : {GraphFamily::Empty, GraphFamily::Star, GraphFamily::Chain,
                          GraphFamily::Ring, GraphFamily::Wheel, GraphFamily::Complete,
                          GraphFamily::Lattice2D}) {
        if (name == family_name(f)) return f;
    }
    return std::nullopt;
}

const char* boundary_name(Boundary b) {
    switch (b) {
        case Boundary::Free: return "free";
        case Boundary::PlusClamped: return "plus";
        case Boundary::MinusClamped: return "minus";
    }
    return "?";
}

std::optional<Boundary> boundary_from_name(std::string_view name) {
    for (Boundary b : {Boundary::Free, Boundary::PlusClamped, Boundary::MinusClamped}) {
        if (name == boundary_name(b)) return b;
    }
    return std::nullopt;
}

int GraphInstance::num_free() const {
    int m = 0;
    for (int8_t c : clamp) m += (c == 0);
    return m;
}

std::vector<int> GraphInstance::free_vertices() const {
    std::vector<int> out;
    out.reserve(n);
    for (int v = 0; v < n; ++v)
        if (clamp[v] == 0) out.push_back(v);
    return out;
}

namespace {

void build_adjacency(GraphInstance& g) {
    g.adj_offsets.assign(g.n + 1, 0);
    for (auto [a, b] : g.edges) {
        ++g.adj_offsets[a + 1];
        ++g.adj_offsets[b + 1];
    }
    for (int v = 0; v < g.n; ++v) g.adj_offsets[v + 1] += g.adj_offsets[v];
    g.adj.resize(2 * g.edges.size());
    std::vector<int> cursor(g.adj_offsets.begin(), g.adj_offsets.end() - 1);
    for (auto [a, b] : g.edges) {
        g.adj[cursor[a]++] = b;
        g.adj[cursor[b]++] = a;
    }
}

[[noreturn]] void size_violation(GraphFamily f, int n, const char* req) {
    throw std::invalid_argument(std::string(family_name(f)) + " graph with n=" +
                                std::to_string(n) + " (requires " + req + ")");
}

}  // namespace

GraphInstance build_graph(GraphFamily family, int n, Boundary boundary) {
    if (n < 1) throw std::invalid_argument("graph size must be positive");
    if (boundary != Boundary::Free && family != GraphFamily::Lattice2D)
        throw std::invalid_argument("boundary clamping is only defined for the lattice family");

    GraphInstance g;
    g.family = family;
    g.n = n;
    g.boundary = boundary;
    g.clamp.assign(n, 0);

    switch (family) {
        case GraphFamily::Empty:
            break;
        case GraphFamily::Star:
            if (n < 2) size_violation(family, n, "n >= 2");
            g.hub = 0;
            for (int v = 1; v < n; ++v) g.edges.emplace_back(0, v);
            break;
        case GraphFamily::Chain:
            if (n < 2) size_violation(family, n, "n >= 2");
            for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
            break;
        case GraphFamily::Ring:
            if (n < 3) size_violation(family, n, "n >= 3");
            for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
            g.edges.emplace_back(0, n - 1);
            break;
        case GraphFamily::Wheel: {
            if (n < 4) size_violation(family, n, "n >= 4");
            g.hub = 0;
            // ring on vertices 1..n-1 plus a spoke from the hub to each
            for (int v = 1; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
            g.edges.emplace_back(1, n - 1);
            for (int v = 1; v < n; ++v) g.edges.emplace_back(0, v);
            break;
        }
        case GraphFamily::Complete:
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) g.edges.emplace_back(a, b);
            break;
        case GraphFamily::Lattice2D: {
            int L = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
            if (L * L != n) size_violation(family, n, "n = L^2");
            g.side = L;
            auto id = [L](int r, int c) { return r * L + c; };
            for (int r = 0; r < L; ++r)
                for (int c = 0; c < L; ++c) {
                    if (c + 1 < L) g.edges.emplace_back(id(r, c), id(r, c + 1));
                    if (r + 1 < L) g.edges.emplace_back(id(r, c), id(r + 1, c));
                }
            std::sort(g.edges.begin(), g.edges.end());
            if (boundary != Boundary::Free) {
                int8_t v = boundary == Boundary::PlusClamped ? int8_t{1} : int8_t{-1};
                for (int r = 0; r < L; ++r)
                    for (int c = 0; c < L; ++c)
                        if (r == 0 || c == 0 || r == L - 1 || c == L - 1) g.clamp[id(r, c)] = v;
            }
            break;
        }
    }

    build_adjacency(g);
    return g;
}

}  // namespace spinpoll
