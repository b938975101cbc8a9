#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ochroma/core.hpp"

namespace ochroma {

// 4-regular multigraph with an optional rotation system. Loops and parallel
// edges are allowed; a loop contributes both of its darts to one vertex.
//
// Conventions:
//  - tail[d] is the vertex a dart is attached to; head(d) = tail[twin(d)].
//  - rot[v] lists v's four darts in counterclockwise embedding order.
//  - face tracing: the successor of dart d is the rotation successor of
//    twin(d).  A rotation system is accepted only if V - E + F = 2 holds on
//    every connected component (sphere embedding).
//  - abstract graphs carry rot[v] too (sorted dart list) so that incidences
//    stay cheap to query, but embedded == false and face/embedding queries
//    raise ModeError.
struct PlaneGraph {
    int nv = 0;
    int ne = 0;
    std::vector<Vertex> tail;                // dart -> attached vertex
    std::vector<std::array<Dart, 4>> rot;    // vertex -> incident darts
    bool embedded = false;

    int dart_count() const { return 2 * ne; }
    Vertex head(Dart d) const { return tail[twin(d)]; }
    bool is_loop(Edge e) const { return tail[2 * e] == tail[2 * e + 1]; }
    std::pair<Vertex, Vertex> ends(Edge e) const {
        return {tail[2 * e], tail[2 * e + 1]};
    }

    bool has_loop_at(Vertex v) const {
        for (Dart d : rot[v])
            if (head(d) == v) return true;
        return false;
    }
    int loops_at(Vertex v) const {
        int n = 0;
        for (Dart d : rot[v])
            if (head(d) == v) n++;
        return n / 2;
    }

    int rot_index(Vertex v, Dart d) const {
        for (int i = 0; i < 4; i++)
            if (rot[v][i] == d) return i;
        throw RotationError("dart not at vertex");
    }
    Dart rot_next(Dart d) const {
        Vertex v = tail[d];
        return rot[v][(rot_index(v, d) + 1) % 4];
    }
    Dart rot_prev(Dart d) const {
        Vertex v = tail[d];
        return rot[v][(rot_index(v, d) + 3) % 4];
    }
};

namespace detail {

template <class G>
inline std::vector<std::vector<Dart>> trace_faces(const G& g) {
    std::vector<std::vector<Dart>> out;
    std::vector<char> seen(g.dart_count(), 0);
    for (Dart d0 = 0; d0 < g.dart_count(); d0++) {
        if (seen[d0]) continue;
        std::vector<Dart> f;
        Dart d = d0;
        while (!seen[d]) {
            seen[d] = 1;
            f.push_back(d);
            d = g.rot_next(twin(d));
        }
        out.push_back(std::move(f));
    }
    return out;
}

// connected components of the vertex set, edges in `dead` removed
template <class G>
inline std::vector<int> components(const G& g, const std::vector<char>& dead_edge,
                                   Vertex dead_vertex = -1) {
    std::vector<int> comp(g.nv, -1);
    int c = 0;
    for (Vertex s = 0; s < g.nv; s++) {
        if (comp[s] >= 0 || s == dead_vertex) continue;
        comp[s] = c;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Dart d : g.rot[u]) {
                if (dead_edge[edge_of(d)]) continue;
                Vertex w = g.head(d);
                if (w == dead_vertex || comp[w] >= 0) continue;
                comp[w] = c;
                stack.push_back(w);
            }
        }
        c++;
    }
    return comp;
}

template <class G>
inline int component_count(const G& g, const std::vector<char>& dead_edge,
                           Vertex dead_vertex = -1) {
    auto comp = components(g, dead_edge, dead_vertex);
    int c = 0;
    for (Vertex v = 0; v < g.nv; v++)
        if (v != dead_vertex) c = std::max(c, comp[v] + 1);
    return c;
}

// V - E + F == 2 per connected component
template <class G>
inline bool euler_spherical(const G& g) {
    if (g.ne == 0) return true;
    auto faces = trace_faces(g);
    std::vector<char> none(g.ne, 0);
    auto comp = components(g, none);
    int ncomp = 0;
    for (Vertex v = 0; v < g.nv; v++) ncomp = std::max(ncomp, comp[v] + 1);
    // attribute each face to the component of any of its darts
    std::vector<int> nf(ncomp, 0), nvc(ncomp, 0), nec(ncomp, 0);
    for (auto& f : faces) nf[comp[g.tail[f[0]]]]++;
    for (Vertex v = 0; v < g.nv; v++) nvc[comp[v]]++;
    for (Edge e = 0; e < g.ne; e++) nec[comp[g.tail[2 * e]]]++;
    for (int c = 0; c < ncomp; c++)
        if (nvc[c] - nec[c] + nf[c] != 2) return false;
    return true;
}

}  // namespace detail

inline PlaneGraph build_graph(const std::vector<std::pair<Vertex, Vertex>>& edges,
                              const std::vector<std::vector<Dart>>& rotations = {}) {
    PlaneGraph g;
    g.ne = static_cast<int>(edges.size());
    g.tail.resize(2 * g.ne);
    for (Edge e = 0; e < g.ne; e++) {
        if (edges[e].first < 0 || edges[e].second < 0)
            throw DegreeError("negative vertex id");
        g.tail[2 * e] = edges[e].first;
        g.tail[2 * e + 1] = edges[e].second;
        g.nv = std::max({g.nv, edges[e].first + 1, edges[e].second + 1});
    }
    std::vector<std::vector<Dart>> incident(g.nv);
    for (Dart d = 0; d < g.dart_count(); d++) incident[g.tail[d]].push_back(d);
    for (Vertex v = 0; v < g.nv; v++)
        if (incident[v].size() != 4)
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
        if (rotations[v].size() != 4)
            throw RotationError("rotation at " + std::to_string(v) + " not of size 4");
        auto sorted = rotations[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != incident[v])
            throw RotationError("rotation at " + std::to_string(v) +
                                " is not a permutation of its incident darts");
        std::copy(rotations[v].begin(), rotations[v].end(), g.rot[v].begin());
    }
    g.embedded = true;
    if (!detail::euler_spherical(g))
        throw GenusError("rotation system is not spherical");
    return g;
}

inline std::vector<std::vector<Dart>> faces(const PlaneGraph& g) {
    if (!g.embedded) throw ModeError("faces need an embedded graph");
    return detail::trace_faces(g);
}

inline bool is_connected(const PlaneGraph& g) {
    std::vector<char> none(g.ne, 0);
    return detail::component_count(g, none) <= 1;
}

struct Separation {
    enum Kind { cut_vertex, two_edge_cut } kind;
    Vertex pivot_vertex = -1;              // for cut_vertex
    std::array<Edge, 2> pivot_edges{-1, -1};  // for two_edge_cut
    std::vector<int> side_of;              // vertex -> 1 or 2 (0 for the pivot vertex)
};

// All cut-vertices and all 2-edge cut-sets with their side partitions.
// A 4-regular graph has no cut-edges, and removing a cut-vertex or a 2-edge
// cut leaves exactly two components (handshake), which is asserted here.
inline std::vector<Separation> find_separations(const PlaneGraph& g) {
    if (!is_connected(g)) throw DisconnectedError("find_separations needs a connected graph");
    std::vector<Separation> out;
    std::vector<char> dead(g.ne, 0);
    for (Vertex v = 0; v < g.nv; v++) {
        if (g.nv <= 1) break;
        auto comp = detail::components(g, dead, v);
        int nc = 0;
        for (Vertex u = 0; u < g.nv; u++)
            if (u != v) nc = std::max(nc, comp[u] + 1);
        if (nc < 2) continue;
        if (nc != 2) throw Error("4-regular cut-vertex must leave two components");
        Separation s;
        s.kind = Separation::cut_vertex;
        s.pivot_vertex = v;
        s.side_of.assign(g.nv, 0);
        for (Vertex u = 0; u < g.nv; u++)
            if (u != v) s.side_of[u] = comp[u] + 1;
        out.push_back(std::move(s));
    }
    for (Edge e = 0; e < g.ne; e++) {
        if (g.is_loop(e)) continue;
        for (Edge f = e + 1; f < g.ne; f++) {
            if (g.is_loop(f)) continue;
            dead[e] = dead[f] = 1;
            auto comp = detail::components(g, dead);
            dead[e] = dead[f] = 0;
            int nc = 0;
            for (Vertex u = 0; u < g.nv; u++) nc = std::max(nc, comp[u] + 1);
            if (nc < 2) continue;
            if (nc != 2) throw Error("2-edge cut must leave two components");
            Separation s;
            s.kind = Separation::two_edge_cut;
            s.pivot_edges = {e, f};
            s.side_of.assign(g.nv, 0);
            for (Vertex u = 0; u < g.nv; u++) s.side_of[u] = comp[u] + 1;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace ochroma
