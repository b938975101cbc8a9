#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "ochroma/plane_graph.hpp"

namespace ochroma {

// 3-regular multigraph in the same dart representation; embedded when a
// spherical rotation system is supplied.
struct CubicGraph {
    int nv = 0;
    int ne = 0;
    std::vector<Vertex> tail;
    std::vector<std::array<Dart, 3>> rot;
    bool embedded = false;

    int dart_count() const { return 2 * ne; }
    Vertex head(Dart d) const { return tail[twin(d)]; }
    bool is_loop(Edge e) const { return tail[2 * e] == tail[2 * e + 1]; }
    std::pair<Vertex, Vertex> ends(Edge e) const { return {tail[2 * e], tail[2 * e + 1]}; }

    int rot_index(Vertex v, Dart d) const {
        for (int i = 0; i < 3; i++)
            if (rot[v][i] == d) return i;
        throw RotationError("dart not at vertex");
    }
    Dart rot_next(Dart d) const {
        Vertex v = tail[d];
        return rot[v][(rot_index(v, d) + 1) % 3];
    }
};

inline CubicGraph build_cubic(const std::vector<std::pair<Vertex, Vertex>>& edges,
                              const std::vector<std::vector<Dart>>& rotations = {}) {
    CubicGraph g;
    g.ne = static_cast<int>(edges.size());
    g.tail.resize(2 * g.ne);
    for (Edge e = 0; e < g.ne; e++) {
        g.tail[2 * e] = edges[e].first;
        g.tail[2 * e + 1] = edges[e].second;
        g.nv = std::max({g.nv, edges[e].first + 1, edges[e].second + 1});
    }
    std::vector<std::vector<Dart>> incident(g.nv);
    for (Dart d = 0; d < g.dart_count(); d++) incident[g.tail[d]].push_back(d);
    for (Vertex v = 0; v < g.nv; v++)
        if (incident[v].size() != 3)
            throw DegreeError("vertex " + std::to_string(v) + " has degree " +
                              std::to_string(incident[v].size()));
    g.rot.resize(g.nv);
    if (rotations.empty()) {
        for (Vertex v = 0; v < g.nv; v++)
            std::copy(incident[v].begin(), incident[v].end(), g.rot[v].begin());
        g.embedded = false;
        return g;
    }
    if (static_cast<int>(rotations.size()) != g.nv)
        throw RotationError("rotation count != vertex count");
    for (Vertex v = 0; v < g.nv; v++) {
        if (rotations[v].size() != 3) throw RotationError("cubic rotation not of size 3");
        auto sorted = rotations[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != incident[v]) throw RotationError("rotation does not list incident darts");
        std::copy(rotations[v].begin(), rotations[v].end(), g.rot[v].begin());
    }
    g.embedded = true;
    if (!detail::euler_spherical(g)) throw GenusError("cubic rotation system is not spherical");
    return g;
}

inline std::vector<std::vector<Dart>> faces(const CubicGraph& g) {
    if (!g.embedded) throw ModeError("faces need an embedded graph");
    return detail::trace_faces(g);
}

inline bool is_connected(const CubicGraph& g) {
    std::vector<char> none(g.ne, 0);
    return detail::component_count(g, none) <= 1;
}

inline bool has_cut_edge(const CubicGraph& g) {
    std::vector<char> dead(g.ne, 0);
    int base = detail::component_count(g, dead);
    for (Edge e = 0; e < g.ne; e++) {
        if (g.is_loop(e)) continue;
        dead[e] = 1;
        int c = detail::component_count(g, dead);
        dead[e] = 0;
        if (c > base) return true;
    }
    return false;
}

// all perfect matchings, by backtracking on the lowest unmatched vertex
inline std::vector<std::vector<Edge>> perfect_matchings(const CubicGraph& g) {
    std::vector<std::vector<Edge>> out;
    std::vector<char> matched(g.nv, 0);
    std::vector<Edge> cur;
    auto rec = [&](auto&& self, Vertex from) -> void {
        Vertex v = from;
        while (v < g.nv && matched[v]) v++;
        if (v == g.nv) {
            out.push_back(cur);
            return;
        }
        for (Dart d : g.rot[v]) {
            Vertex w = g.head(d);
            if (w == v || matched[w]) continue;  // loops cannot be matched
            matched[v] = matched[w] = 1;
            cur.push_back(edge_of(d));
            self(self, v + 1);
            cur.pop_back();
            matched[v] = matched[w] = 0;
        }
    };
    rec(rec, 0);
    for (auto& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_one_factor(const CubicGraph& g, const std::vector<Edge>& f) {
    std::vector<int> deg(g.nv, 0);
    for (Edge e : f) {
        if (e < 0 || e >= g.ne || g.is_loop(e)) return false;
        deg[g.tail[2 * e]]++;
        deg[g.tail[2 * e + 1]]++;
    }
    for (Vertex v = 0; v < g.nv; v++)
        if (deg[v] != 1) return false;
    return true;
}

// proper 3-edge-colourings with colours {0,1,2}; all of them, or just the
// first when deciding colourability
inline std::vector<std::vector<int>> three_edge_colourings(const CubicGraph& g,
                                                           bool first_only = false) {
    std::vector<std::vector<int>> out;
    for (Edge e = 0; e < g.ne; e++)
        if (g.is_loop(e)) return out;  // a loop can never be properly coloured
    std::vector<int> col(g.ne, -1);
    auto ok = [&](Edge e, int c) {
        for (int end = 0; end < 2; end++) {
            Vertex v = g.tail[2 * e + end];
            for (Dart d : g.rot[v])
                if (edge_of(d) != e && col[edge_of(d)] == c) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, Edge e) -> void {
        if (first_only && !out.empty()) return;
        if (e == g.ne) {
            out.push_back(col);
            return;
        }
        for (int c = 0; c < 3; c++) {
            if (!ok(e, c)) continue;
            col[e] = c;
            self(self, e + 1);
            col[e] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

inline bool is_three_edge_colourable(const CubicGraph& g) {
    return !three_edge_colourings(g, true).empty();
}

inline bool is_proper_three_edge_colouring(const CubicGraph& g, const std::vector<int>& col) {
    if (static_cast<int>(col.size()) != g.ne) return false;
    for (int c : col)
        if (c < 0 || c > 2) return false;
    for (Vertex v = 0; v < g.nv; v++) {
        int seen = 0;
        for (Dart d : g.rot[v]) {
            int bit = 1 << col[edge_of(d)];
            if (seen & bit) return false;
            seen |= bit;
        }
    }
    return true;
}

}  // namespace ochroma
