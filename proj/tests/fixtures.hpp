#pragma once

// Shared fixtures: the small cubic graphs, a deterministic generator for the
// 4-regular planar family grown from the base cases, and a tiny isomorphism
// check for round-trip tests.

#include <random>
#include <vector>

#include "ochroma/catalog.hpp"
#include "ochroma/cubic.hpp"
#include "ochroma/transforms.hpp"

namespace fixtures {

using namespace ochroma;

inline CubicGraph k4() {
    // outer triangle 1,2,3 with 0 in the centre
    std::vector<std::pair<Vertex, Vertex>> edges = {{0, 1}, {0, 2}, {0, 3},
                                                    {1, 2}, {2, 3}, {3, 1}};
    std::vector<std::vector<Dart>> rots = {
        {0, 2, 4},
        {6, 1, 11},
        {8, 3, 7},
        {10, 5, 9},
    };
    return build_cubic(edges, rots);
}

inline CubicGraph cube_q3() {
    // bottom 0..3, top 4..7
    std::vector<std::pair<Vertex, Vertex>> edges = {
        {0, 1}, {1, 2}, {2, 3}, {3, 0},  // bottom
        {4, 5}, {5, 6}, {6, 7}, {7, 4},  // top
        {0, 4}, {1, 5}, {2, 6}, {3, 7},  // pillars
    };
    std::vector<std::vector<Dart>> rots = {
        {0, 16, 7}, {2, 18, 1}, {4, 20, 3}, {5, 6, 22},
        {8, 15, 17}, {10, 9, 19}, {21, 12, 11}, {13, 23, 14},
    };
    return build_cubic(edges, rots);
}

inline CubicGraph prism() {
    // triangles 0,1,2 and 3,4,5
    std::vector<std::pair<Vertex, Vertex>> edges = {
        {0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5},
    };
    std::vector<std::vector<Dart>> rots = {
        {0, 12, 5}, {2, 14, 1}, {4, 16, 3}, {6, 11, 13}, {8, 7, 15}, {17, 10, 9},
    };
    return build_cubic(edges, rots);
}

inline CubicGraph k33() {  // abstract
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < 3; a++)
        for (Vertex b = 3; b < 6; b++) edges.push_back({a, b});
    return build_cubic(edges);
}

inline CubicGraph petersen() {  // abstract
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < 5; i++) edges.push_back({i, (i + 1) % 5});
    for (int i = 0; i < 5; i++) edges.push_back({5 + i, 5 + (i + 2) % 5});
    for (int i = 0; i < 5; i++) edges.push_back({i, 5 + i});
    return build_cubic(edges);
}

inline CubicGraph theta_with_digon() {
    // a digon hanging off a theta-like frame: vertices 0,1 digon; 2,3 frame
    std::vector<std::pair<Vertex, Vertex>> edges = {
        {0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3},
    };
    std::vector<std::vector<Dart>> rots = {
        {4, 2, 0}, {6, 1, 3}, {8, 10, 5}, {7, 11, 9},
    };
    return build_cubic(edges, rots);
}

// 17-vertex, 34-edge simple 4-regular plane graph: a crossing diagram whose
// marked vertex can force a fresh colour when a removed cycle is reinserted
inline PlaneGraph seventeen_crossing() {
    static const char* vog =
        "V 17\nE 34\n"
        "e 0 0 1\ne 1 1 2\ne 2 2 3\ne 3 3 0\ne 4 0 1\ne 5 1 4\ne 6 4 5\ne 7 5 6\n"
        "e 8 6 7\ne 9 7 8\ne 10 8 3\ne 11 3 2\ne 12 2 4\ne 13 4 9\ne 14 9 10\ne 15 10 11\n"
        "e 16 11 12\ne 17 12 0\ne 18 12 13\ne 19 13 10\ne 20 10 6\ne 21 6 14\ne 22 14 8\n"
        "e 23 8 15\ne 24 15 16\ne 25 16 12\ne 26 16 11\ne 27 11 13\ne 28 13 9\ne 29 9 5\n"
        "e 30 5 14\ne 31 14 7\ne 32 7 15\ne 33 15 16\n"
        "r 0 8 7 35 0\nr 1 10 2 9 1\nr 2 4 23 3 24\nr 3 5 21 6 22\nr 4 12 25 11 26\n"
        "r 5 14 60 13 59\nr 6 16 42 15 41\nr 7 18 63 17 64\nr 8 46 20 45 19\nr 9 58 27 57 28\n"
        "r 10 40 29 39 30\nr 11 53 31 54 32\nr 12 33 36 34 51\nr 13 38 56 37 55\n"
        "r 14 62 44 61 43\nr 15 47 65 48 66\nr 16 67 49 52 50\n";
    return parse_vog(vog).first;
}

// 4-regular planar family grown from the base cases by connected sums,
// strand pinches (inverse smoothing) and loop insertions
struct Instance {
    PlaneGraph g;
    OrientationAssignment sigma;
};

inline std::vector<Instance> grow_family(int count, int max_vertices, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<Instance> pool;
    for (const char* base : {"fig7a", "fig7b", "fig7c"}) {
        auto b = builtin(base);
        long long n = assignment_count(b.g);
        for (long long k = 0; k < n; k++) pool.push_back({b.g, assignment_at(b.g, k)});
    }
    std::vector<Instance> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && ++guard < count * 60) {
        const auto& src = pool[rng() % pool.size()];
        int op = static_cast<int>(rng() % 3);
        try {
            if (op == 0) {
                const auto& other = pool[rng() % pool.size()];
                if (src.g.nv + other.g.nv > max_vertices) continue;
                Edge e = static_cast<Edge>(rng() % src.g.ne);
                Edge f = static_cast<Edge>(rng() % other.g.ne);
                auto sum = connect_sum_edge(src.g, e, other.g, f, static_cast<int>(rng() % 2));
                // orientations carry over edge-wise; selectors are recomputed
                OrientationAssignment sig;
                sig.sel.assign(sum.g.nv, 0);
                for (Vertex v = 0; v < src.g.nv; v++)
                    sig.sel[sum.vertex_map1[v]] = src.sigma.sel[v];
                for (Vertex v = 0; v < other.g.nv; v++)
                    sig.sel[sum.vertex_map2[v]] = other.sigma.sel[v];
                // the sum may have re-cut cells at the endpoints; keep only
                // admissible selectors
                bool ok = true;
                for (Vertex v = 0; v < sum.g.nv; v++)
                    if (!is_admissible(sum.g, v, sig.sel[v])) ok = false;
                if (!ok) continue;
                out.push_back({sum.g, sig});
            } else if (op == 1) {
                if (src.g.nv + 1 > max_vertices) continue;
                Dart a = static_cast<Dart>(rng() % src.g.dart_count());
                Dart b = static_cast<Dart>(rng() % src.g.dart_count());
                if (edge_of(a) == edge_of(b)) continue;
                auto [g2, s2] = inverse_smooth(src.g, src.sigma, a, b);
                out.push_back({g2, s2});
            } else {
                if (src.g.nv + 1 > max_vertices) continue;
                Dart a = static_cast<Dart>(rng() % src.g.dart_count());
                auto [g2, s2] = add_loop_vertex(src.g, src.sigma, a, rng() % 2 == 0);
                out.push_back({g2, s2});
            }
            pool.push_back(out.back());
        } catch (const Error&) {
            continue;  // bad pick (non-planar pinch etc.)
        }
    }
    return out;
}

// random abstract 4-regular multigraphs by the pairing model
inline PlaneGraph random_abstract(int nv, std::mt19937& rng) {
    while (true) {
        std::vector<int> stubs;
        for (Vertex v = 0; v < nv; v++)
            for (int i = 0; i < 4; i++) stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (size_t i = 0; i < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
        try {
            auto g = build_graph(edges);
            return g;
        } catch (const Error&) {
            continue;
        }
    }
}

inline OrientationAssignment random_assignment(const PlaneGraph& g, std::mt19937& rng) {
    long long n = assignment_count(g);
    return assignment_at(g, static_cast<long long>(rng() % static_cast<unsigned long>(n)));
}

// small-scale graph isomorphism by vertex backtracking over the adjacency
// multiset matrix
inline bool isomorphic(const PlaneGraph& a, const PlaneGraph& b) {
    if (a.nv != b.nv || a.ne != b.ne) return false;
    auto mult = [](const PlaneGraph& g) {
        std::map<std::pair<Vertex, Vertex>, int> m;
        for (Edge e = 0; e < g.ne; e++) {
            auto [u, v] = g.ends(e);
            m[{std::min(u, v), std::max(u, v)}]++;
        }
        return m;
    };
    auto ma = mult(a), mb = mult(b);
    auto get = [](const std::map<std::pair<Vertex, Vertex>, int>& m, Vertex u, Vertex v) {
        auto it = m.find({std::min(u, v), std::max(u, v)});
        return it == m.end() ? 0 : it->second;
    };
    std::vector<Vertex> perm(a.nv, -1);
    std::vector<char> used(a.nv, 0);
    auto rec = [&](auto&& self, Vertex v) -> bool {
        if (v == a.nv) return true;
        for (Vertex img = 0; img < a.nv; img++) {
            if (used[img]) continue;
            if (get(ma, v, v) != get(mb, img, img)) continue;
            bool ok = true;
            for (Vertex u = 0; u < v && ok; u++)
                if (get(ma, u, v) != get(mb, perm[u], img)) ok = false;
            if (!ok) continue;
            perm[v] = img;
            used[img] = 1;
            if (self(self, v + 1)) return true;
            used[img] = 0;
            perm[v] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace fixtures
