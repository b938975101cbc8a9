#pragma once

#include <algorithm>
#include <vector>

#include "ochroma/cubic.hpp"
#include "ochroma/ocycle.hpp"
#include "ochroma/orientation.hpp"
#include "ochroma/plane_graph.hpp"

namespace ochroma {

// ---------------------------------------------------------------------------
// Tait expansion / contraction
// ---------------------------------------------------------------------------

struct TaitExpansion {
    CubicGraph h;
    std::vector<Edge> matching;    // the new edges, one per old vertex; a 1-factor
    std::vector<Vertex> x_of, y_of;  // old vertex -> the two expansion vertices
};

// Replace every oriented vertex by an edge x--y with one cell at each end.
// The new edge is embedded in the gap between the two cells, so planarity is
// preserved.
inline TaitExpansion tait_expand(const PlaneGraph& g, const OrientationAssignment& sigma) {
    if (!g.embedded) throw ModeError("tait_expand needs an embedded graph");
    for (Vertex v = 0; v < g.nv; v++)
        if (g.has_loop_at(v)) throw LoopAnchorError("tait_expand cannot expand a loop-anchor");
    std::vector<std::pair<Vertex, Vertex>> edges(g.ne + g.nv);
    TaitExpansion out;
    out.x_of.resize(g.nv);
    out.y_of.resize(g.nv);
    // which end each old dart attaches to: the cell containing rot[v][0] goes to x
    std::vector<Vertex> end_of(g.dart_count());
    for (Vertex v = 0; v < g.nv; v++) {
        Vertex x = 2 * v, y = 2 * v + 1;
        out.x_of[v] = x;
        out.y_of[v] = y;
        auto cells = cells_of(g, sigma, v);
        int cx = cell_index(cells, g.rot[v][0]);
        for (Dart d : g.rot[v]) end_of[d] = (cell_index(cells, d) == cx) ? x : y;
    }
    for (Edge e = 0; e < g.ne; e++)
        edges[e] = {end_of[2 * e], end_of[2 * e + 1]};
    for (Vertex v = 0; v < g.nv; v++) {
        edges[g.ne + v] = {2 * v, 2 * v + 1};
        out.matching.push_back(g.ne + v);
    }
    std::vector<std::vector<Dart>> rots(2 * g.nv);
    for (Vertex v = 0; v < g.nv; v++) {
        const auto& r = g.rot[v];
        Dart nx = 2 * (g.ne + v), ny = nx + 1;
        int s = sigma.sel[v];
        // cells are the consecutive pairs (r[s],r[s+1]) and (r[s+2],r[s+3])
        Vertex x = end_of[r[s]];
        rots[x] = {r[s], r[(s + 1) % 4], x == 2 * v ? nx : ny};
        Vertex y = end_of[r[(s + 2) % 4]];
        rots[y] = {r[(s + 2) % 4], r[(s + 3) % 4], y == 2 * v ? nx : ny};
    }
    out.h = build_cubic(edges, rots);
    return out;
}

struct TaitContraction {
    PlaneGraph g;
    OrientationAssignment sigma;
    std::vector<int> edge_map;    // h edge -> g edge, -1 for matching edges
    std::vector<int> vertex_map;  // h vertex -> g vertex
};

// Contract a 1-factor; each contracted vertex's cells are the edge pairs from
// its two old endpoints.
inline TaitContraction tait_contract(const CubicGraph& h, const std::vector<Edge>& factor) {
    if (!is_one_factor(h, factor)) throw NotOneFactorError("edge set is not a 1-factor");
    std::vector<Edge> f = factor;
    std::sort(f.begin(), f.end());
    std::vector<char> in_f(h.ne, 0);
    for (Edge e : f) in_f[e] = 1;

    TaitContraction out;
    out.vertex_map.assign(h.nv, -1);
    for (size_t k = 0; k < f.size(); k++) {
        out.vertex_map[h.tail[2 * f[k]]] = static_cast<int>(k);
        out.vertex_map[h.tail[2 * f[k] + 1]] = static_cast<int>(k);
    }
    out.edge_map.assign(h.ne, -1);
    int m = 0;
    for (Edge e = 0; e < h.ne; e++)
        if (!in_f[e]) out.edge_map[e] = m++;

    out.g.nv = static_cast<int>(f.size());
    out.g.ne = m;
    out.g.tail.resize(2 * m);
    for (Edge e = 0; e < h.ne; e++) {
        if (in_f[e]) continue;
        out.g.tail[2 * out.edge_map[e]] = out.vertex_map[h.tail[2 * e]];
        out.g.tail[2 * out.edge_map[e] + 1] = out.vertex_map[h.tail[2 * e + 1]];
    }
    auto map_dart = [&](Dart d) { return 2 * out.edge_map[edge_of(d)] + (d & 1); };

    out.g.rot.resize(out.g.nv);
    out.sigma.sel.assign(out.g.nv, 0);
    for (size_t k = 0; k < f.size(); k++) {
        Vertex x = h.tail[2 * f[k]], y = h.tail[2 * f[k] + 1];
        auto two_after = [&](Vertex v, Dart fd) {
            int i = h.rot_index(v, fd);
            return std::array<Dart, 2>{h.rot[v][(i + 1) % 3], h.rot[v][(i + 2) % 3]};
        };
        auto [a, b] = two_after(x, 2 * f[k]);
        auto [c, d] = two_after(y, 2 * f[k] + 1);
        out.g.rot[k] = {map_dart(a), map_dart(b), map_dart(c), map_dart(d)};
    }
    out.g.embedded = h.embedded;
    if (h.embedded && !detail::euler_spherical(out.g))
        throw GenusError("contraction broke the sphere embedding");
    if (!h.embedded) {
        // abstract mode stores sorted incidences; recompute rotations and selectors
        std::vector<CellPair> want(out.g.nv);
        for (size_t k = 0; k < f.size(); k++) {
            want[k] = detail::mk_cells(out.g.rot[k][0], out.g.rot[k][1], out.g.rot[k][2],
                                       out.g.rot[k][3]);
            auto r = out.g.rot[k];
            std::sort(r.begin(), r.end());
            out.g.rot[k] = r;
        }
        for (Vertex v = 0; v < out.g.nv; v++) {
            bool found = false;
            for (int s = 0; s < 3; s++)
                if (cells_of(out.g, s, v) == want[v]) {
                    out.sigma.sel[v] = static_cast<std::uint8_t>(s);
                    found = true;
                    break;
                }
            if (!found) throw Error("contracted cells are not a pairing");
        }
    }
    // in embedded mode the rotation tuple starts with cell {a,b}: selector 0
    return out;
}

// ---------------------------------------------------------------------------
// digon reduction with colour lifting
// ---------------------------------------------------------------------------

struct DigonReduction {
    CubicGraph h;
    Edge new_edge = -1;
    Edge digon0 = -1, digon1 = -1, stem_u = -1, stem_w = -1;  // removed edges
    std::vector<int> edge_map;    // old edge -> new edge (-1 removed)
    std::vector<int> vertex_map;  // old vertex -> new vertex (-1 removed)
};

// Replace a digon (u,w and the two parallel edges) by a single edge joining
// the outside attachments.
inline DigonReduction reduce_digon(const CubicGraph& g, Edge d0, Edge d1) {
    auto [u, w] = g.ends(d0);
    auto [u2, w2] = g.ends(d1);
    if (u == w || !((u2 == u && w2 == w) || (u2 == w && w2 == u)))
        throw SemanticError("edges do not form a digon");
    Edge eu = -1, ew = -1;
    Dart du = -1, dw = -1;
    for (Dart d : g.rot[u])
        if (edge_of(d) != d0 && edge_of(d) != d1) {
            eu = edge_of(d);
            du = d;
        }
    for (Dart d : g.rot[w])
        if (edge_of(d) != d0 && edge_of(d) != d1) {
            ew = edge_of(d);
            dw = d;
        }
    if (eu < 0 || ew < 0 || eu == ew) throw ValidationError("digon stems are not distinct");
    Vertex p = g.head(du), q = g.head(dw);
    if (p == u || p == w || q == u || q == w)
        throw ValidationError("digon is attached to itself and cannot be reduced");

    DigonReduction out;
    out.digon0 = d0;
    out.digon1 = d1;
    out.stem_u = eu;
    out.stem_w = ew;
    out.vertex_map.assign(g.nv, -1);
    int nv = 0;
    for (Vertex v = 0; v < g.nv; v++)
        if (v != u && v != w) out.vertex_map[v] = nv++;
    out.edge_map.assign(g.ne, -1);
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<int> dart_map(g.dart_count(), -1);
    for (Edge e = 0; e < g.ne; e++) {
        if (e == d0 || e == d1 || e == eu || e == ew) continue;
        out.edge_map[e] = static_cast<int>(edges.size());
        dart_map[2 * e] = 2 * static_cast<int>(edges.size());
        dart_map[2 * e + 1] = dart_map[2 * e] + 1;
        edges.push_back({out.vertex_map[g.tail[2 * e]], out.vertex_map[g.tail[2 * e + 1]]});
    }
    out.new_edge = static_cast<int>(edges.size());
    dart_map[twin(du)] = 2 * out.new_edge;      // the slot at p
    dart_map[twin(dw)] = 2 * out.new_edge + 1;  // the slot at q
    edges.push_back({out.vertex_map[p], out.vertex_map[q]});
    if (!g.embedded) {
        out.h = build_cubic(edges);
        return out;
    }
    std::vector<std::vector<Dart>> rots(nv);
    for (Vertex v = 0; v < g.nv; v++) {
        if (v == u || v == w) continue;
        std::vector<Dart> r;
        for (Dart d : g.rot[v]) r.push_back(dart_map[d]);
        rots[out.vertex_map[v]] = r;
    }
    out.h = build_cubic(edges, rots);
    return out;
}

// In a proper 3-edge-colouring, the two stem edges around a digon are forced
// to one common colour, so a colouring of the reduced graph lifts back.
inline std::vector<int> lift_digon_colouring(const CubicGraph& g, const DigonReduction& red,
                                             const std::vector<int>& reduced_col) {
    std::vector<int> col(g.ne, -1);
    for (Edge e = 0; e < g.ne; e++)
        if (red.edge_map[e] >= 0) col[e] = reduced_col[red.edge_map[e]];
    int c = reduced_col[red.new_edge];
    col[red.stem_u] = col[red.stem_w] = c;
    int lo = -1, hi = -1;
    for (int k = 0; k < 3; k++)
        if (k != c) (lo < 0 ? lo : hi) = k;
    Edge d0 = std::min(red.digon0, red.digon1), d1 = std::max(red.digon0, red.digon1);
    col[d0] = lo;
    col[d1] = hi;
    if (!is_proper_three_edge_colouring(g, col))
        throw ValidationError("digon lift produced an improper colouring");
    return col;
}

// ---------------------------------------------------------------------------
// colour transport between a cubic graph and its contraction
// ---------------------------------------------------------------------------

struct LiftedOColouring {
    PlaneGraph g;
    OrientationAssignment sigma;
    OColouring oc;
};

// Contract the 1-factor and carry a proper 3-edge-colouring over; the result
// is an o-colouring on the contracted graph with the same palette.
inline LiftedOColouring lift_to_o_colouring(const CubicGraph& h, const std::vector<Edge>& factor,
                                            const std::vector<int>& ec) {
    if (!is_proper_three_edge_colouring(h, ec))
        throw ValidationError("not a proper 3-edge-colouring");
    auto tc = tait_contract(h, factor);
    std::vector<int> ecg(tc.g.ne, -1);
    for (Edge e = 0; e < h.ne; e++)
        if (tc.edge_map[e] >= 0) ecg[tc.edge_map[e]] = ec[e];
    if (!validate_o_colouring(tc.g, tc.sigma, ecg))
        throw ValidationError("contracted colouring is not an o-colouring");
    LiftedOColouring out;
    out.oc = ocolouring_from_edges(tc.g, tc.sigma, ecg);
    out.g = std::move(tc.g);
    out.sigma = std::move(tc.sigma);
    return out;
}

// Push a <=3-palette o-colouring of the contraction back to a proper
// 3-edge-colouring of the cubic graph; each matching edge takes the colour
// missing at its contracted vertex.
inline std::vector<int> push_to_edge_colouring(const CubicGraph& h, const std::vector<Edge>& factor,
                                               const OColouring& oc) {
    auto tc = tait_contract(h, factor);
    auto ecg = oc.edge_colours();
    if (static_cast<int>(ecg.size()) != tc.g.ne)
        throw ValidationError("o-colouring does not fit the contraction");
    // fit the palette into {0,1,2}, keeping colours that already fit
    std::vector<int> palette;
    for (int c : ecg)
        if (std::find(palette.begin(), palette.end(), c) == palette.end()) palette.push_back(c);
    std::sort(palette.begin(), palette.end());
    if (palette.size() > 3) throw ValidationError("o-colouring uses more than three colours");
    bool already_fits = palette.empty() || palette.back() <= 2;
    auto norm = [&](int c) {
        if (already_fits) return c;
        return static_cast<int>(std::find(palette.begin(), palette.end(), c) - palette.begin());
    };
    std::vector<int> col(h.ne, -1);
    for (Edge e = 0; e < h.ne; e++)
        if (tc.edge_map[e] >= 0) col[e] = norm(ecg[tc.edge_map[e]]);
    std::vector<Edge> f = factor;
    std::sort(f.begin(), f.end());
    for (size_t k = 0; k < f.size(); k++) {
        Vertex x = h.tail[2 * f[k]];
        int seen = 0;
        for (Dart d : h.rot[x])
            if (edge_of(d) != f[k]) seen |= 1 << col[edge_of(d)];
        if (seen != 3 && seen != 5 && seen != 6)
            throw ValidationError("contracted vertex does not see two colours");
        col[f[k]] = (seen == 3) ? 2 : (seen == 5 ? 1 : 0);
    }
    if (!is_proper_three_edge_colouring(h, col))
        throw ValidationError("push produced an improper colouring");
    return col;
}

}  // namespace ochroma
