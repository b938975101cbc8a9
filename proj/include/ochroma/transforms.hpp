#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <vector>

#include "ochroma/ocycle.hpp"
#include "ochroma/orientation.hpp"
#include "ochroma/plane_graph.hpp"

namespace ochroma {

// ---------------------------------------------------------------------------
// generic surgery: drop vertices/edges, re-splice strands, add slot edges
// ---------------------------------------------------------------------------

struct Rebuilt {
    PlaneGraph g;
    std::vector<int> vertex_map;  // old vertex -> new vertex, -1 dropped
    std::vector<int> dart_map;    // old dart -> new dart, -1 dropped
    std::vector<int> edge_map;    // old edge -> new edge, -1 dropped
};

namespace detail {

// Rebuild a graph after a surgery.
//  - alive edges whose tails both survive stay as they are;
//  - a removed vertex carries a pairing of its alive darts: strands crossing
//    it are spliced, so maximal chains collapse into single edges;
//  - a port pair (x,y) adds a brand new edge whose ends occupy the rotation
//    slots of the dead darts x and y (both at kept vertices).
// New edge ids interleave at the position of the smallest constituent old
// edge, which keeps rotation tuples (and orientation selectors) stable.
inline Rebuilt rebuild(const PlaneGraph& g, const std::vector<char>& keep_vertex,
                       const std::vector<char>& alive_edge,
                       const std::vector<std::array<Dart, 2>>& pairings,
                       const std::vector<std::array<Dart, 2>>& ports) {
    std::vector<int> partner(g.dart_count(), -1);
    for (auto& p : pairings) {
        if (g.tail[p[0]] != g.tail[p[1]] || keep_vertex[g.tail[p[0]]])
            throw Error("pairing must join two darts at one removed vertex");
        partner[p[0]] = p[1];
        partner[p[1]] = p[0];
    }

    struct NewEdge {
        Dart end0, end1;  // old darts giving the rotation slots of the ends
        int anchor;
        int order;
    };
    std::vector<NewEdge> spec;
    std::vector<char> dart_done(g.dart_count(), 0);

    auto trace = [&](Dart start) {
        // follow the strand from a kept-tail dart to the opposite kept end
        int anchor = edge_of(start);
        Dart cur = twin(start);
        while (!keep_vertex[g.tail[cur]]) {
            if (partner[cur] < 0) throw Error("strand enters an unpaired removed vertex");
            cur = twin(partner[cur]);
            anchor = std::min(anchor, edge_of(cur));
        }
        return std::pair<Dart, int>(cur, anchor);
    };

    int order = 0;
    for (Dart d = 0; d < g.dart_count(); d++) {
        if (dart_done[d] || !alive_edge[edge_of(d)] || !keep_vertex[g.tail[d]]) continue;
        auto [other, anchor] = trace(d);
        dart_done[d] = dart_done[other] = 1;
        Dart a = std::min(d, other), b = std::max(d, other);
        if (d == other) throw Error("strand closed onto one dart");
        spec.push_back(NewEdge{a, b, std::min(anchor, edge_of(d)), order++});
    }
    for (auto& p : ports) {
        if (alive_edge[edge_of(p[0])] || alive_edge[edge_of(p[1])])
            throw Error("port slots must sit on dead edges");
        if (!keep_vertex[g.tail[p[0]]] || !keep_vertex[g.tail[p[1]]])
            throw Error("port slots must be at kept vertices");
        Dart a = std::min(p[0], p[1]), b = std::max(p[0], p[1]);
        spec.push_back(NewEdge{a, b, std::min(edge_of(a), edge_of(b)), order++});
    }
    std::sort(spec.begin(), spec.end(), [](const NewEdge& x, const NewEdge& y) {
        return x.anchor != y.anchor ? x.anchor < y.anchor : x.order < y.order;
    });

    Rebuilt r;
    r.vertex_map.assign(g.nv, -1);
    int nnv = 0;
    for (Vertex v = 0; v < g.nv; v++)
        if (keep_vertex[v]) r.vertex_map[v] = nnv++;
    r.dart_map.assign(g.dart_count(), -1);
    r.edge_map.assign(g.ne, -1);
    r.g.nv = nnv;
    r.g.ne = static_cast<int>(spec.size());
    r.g.tail.resize(2 * r.g.ne);
    for (int k = 0; k < static_cast<int>(spec.size()); k++) {
        r.dart_map[spec[k].end0] = 2 * k;
        r.dart_map[spec[k].end1] = 2 * k + 1;
        r.g.tail[2 * k] = r.vertex_map[g.tail[spec[k].end0]];
        r.g.tail[2 * k + 1] = r.vertex_map[g.tail[spec[k].end1]];
        int e0 = edge_of(spec[k].end0), e1 = edge_of(spec[k].end1);
        if (e0 == e1 && alive_edge[e0]) r.edge_map[e0] = k;
    }
    // alive edges swallowed in the middle of a chain keep edge_map -1
    r.g.rot.resize(nnv);
    for (Vertex v = 0; v < g.nv; v++) {
        if (!keep_vertex[v]) continue;
        for (int i = 0; i < 4; i++) {
            Dart nd = r.dart_map[g.rot[v][i]];
            if (nd < 0) throw Error("kept vertex lost a dart in surgery");
            r.g.rot[r.vertex_map[v]][i] = nd;
        }
    }
    r.g.embedded = g.embedded;
    if (r.g.embedded && !euler_spherical(r.g))
        throw GenusError("surgery broke the sphere embedding");
    return r;
}

}  // namespace detail

// Carry an orientation through a surgery: cells map dart-wise; the selector at
// each surviving vertex is recomputed against the new rotation tuple.
inline OrientationAssignment map_assignment(const PlaneGraph& oldg,
                                            const OrientationAssignment& sigma,
                                            const Rebuilt& r) {
    OrientationAssignment out;
    out.sel.assign(r.g.nv, 0);
    for (Vertex v = 0; v < oldg.nv; v++) {
        if (r.vertex_map[v] < 0) continue;
        auto cells = cells_of(oldg, sigma, v);
        CellPair mapped = detail::mk_cells(r.dart_map[cells[0][0]], r.dart_map[cells[0][1]],
                                           r.dart_map[cells[1][0]], r.dart_map[cells[1][1]]);
        bool found = false;
        for (int s = 0; s < (r.g.embedded ? 2 : 3); s++) {
            if (cells_of(r.g, s, r.vertex_map[v]) == mapped) {
                out.sel[r.vertex_map[v]] = static_cast<std::uint8_t>(s);
                found = true;
                break;
            }
        }
        if (!found) throw Error("orientation does not survive the surgery");
    }
    return out;
}

// ---------------------------------------------------------------------------
// smoothing
// ---------------------------------------------------------------------------

struct SmoothResult {
    PlaneGraph g;
    OrientationAssignment sigma;
    std::vector<int> edge_map;    // old edge -> new edge (-1 removed; merged
                                  // edges share their chain's id)
    std::vector<int> vertex_map;  // old vertex -> new vertex
    std::vector<int> dart_map;    // old dart -> new dart (-1 removed)
    std::array<Edge, 2> merged{-1, -1};           // the new edges formed by the splice
    std::array<std::array<Dart, 2>, 2> spliced{};  // the dart pairs at v that merged
};

// Remove v and splice each dart to the rotation-adjacent dart of the other
// cell.  A loop-anchor loses its loop and the two through edges are
// identified; the single-vertex double loop cannot be smoothed.
inline SmoothResult smooth(const PlaneGraph& g, const OrientationAssignment& sigma, Vertex v) {
    if (!g.embedded) throw ModeError("smooth needs an embedded graph");
    if (g.loops_at(v) >= 2) throw DoubleLoopError("smoothing a double-loop vertex empties the graph");
    std::vector<char> keep(g.nv, 1), alive(g.ne, 1);
    keep[v] = 0;
    std::vector<std::array<Dart, 2>> pairings;
    if (g.has_loop_at(v)) {
        std::array<Dart, 2> through{-1, -1};
        int k = 0;
        for (Dart d : g.rot[v]) {
            if (g.head(d) == v)
                alive[edge_of(d)] = 0;
            else
                through[k++] = d;
        }
        if (k != 2) throw DoubleLoopError("loop-anchor must have two through edges");
        pairings.push_back(through);
    } else {
        // exactly two of the four consecutive dart pairs cross the cells, and
        // they are disjoint; those are the splice pairs
        auto cells = cells_of(g, sigma, v);
        int start = (cell_index(cells, g.rot[v][0]) != cell_index(cells, g.rot[v][1])) ? 0 : 1;
        pairings.push_back({g.rot[v][start], g.rot[v][start + 1]});
        pairings.push_back({g.rot[v][(start + 2) % 4], g.rot[v][(start + 3) % 4]});
        for (auto& p : pairings)
            if (cell_index(cells, p[0]) == cell_index(cells, p[1]))
                throw Error("vertex does not have two splice pairs");
    }
    auto r = detail::rebuild(g, keep, alive, pairings, {});
    SmoothResult out;
    out.sigma = map_assignment(g, sigma, r);
    out.edge_map = std::move(r.edge_map);
    out.vertex_map = std::move(r.vertex_map);
    int k = 0;
    for (auto& p : pairings) {
        out.spliced[k] = p;
        out.merged[k++] = edge_of(r.dart_map[twin(p[0])]);
        for (Dart d : {p[0], p[1]})
            if (out.edge_map[edge_of(d)] == -1 && alive[edge_of(d)])
                out.edge_map[edge_of(d)] = out.merged[k - 1];
    }
    out.dart_map = std::move(r.dart_map);
    out.g = std::move(r.g);
    return out;
}

// ---------------------------------------------------------------------------
// connected sums and splits
// ---------------------------------------------------------------------------

struct SumResult {
    PlaneGraph g;
    std::array<Edge, 2> new_edges{-1, -1};
    std::vector<int> edge_map1, edge_map2;  // old edge -> new edge (-1 for e, f)
    std::vector<int> vertex_map1, vertex_map2;
};

// Remove e from g1 and f from g2 and cross-join the endpoints; `pairing`
// selects which of the two ways.  g2 is reflected when the chosen pairing
// needs it to stay spherical.
inline SumResult connect_sum_edge(const PlaneGraph& g1, Edge e, const PlaneGraph& g2, Edge f,
                                  int pairing) {
    if (!g1.embedded || !g2.embedded) throw ModeError("connect_sum_edge needs embedded graphs");
    auto assemble = [&](bool reflect2) {
        PlaneGraph u;
        u.nv = g1.nv + g2.nv;
        u.ne = g1.ne + g2.ne;
        u.tail.resize(2 * u.ne);
        for (Dart d = 0; d < g1.dart_count(); d++) u.tail[d] = g1.tail[d];
        for (Dart d = 0; d < g2.dart_count(); d++)
            u.tail[g1.dart_count() + d] = g1.nv + g2.tail[d];
        u.rot.resize(u.nv);
        for (Vertex v = 0; v < g1.nv; v++) u.rot[v] = g1.rot[v];
        for (Vertex v = 0; v < g2.nv; v++) {
            for (int i = 0; i < 4; i++) {
                Dart d = g2.rot[v][reflect2 ? 3 - i : i];
                u.rot[g1.nv + v][i] = g1.dart_count() + d;
            }
        }
        u.embedded = true;
        std::vector<char> keep(u.nv, 1), alive(u.ne, 1);
        Edge fu = g1.ne + f;
        alive[e] = alive[fu] = 0;
        Dart ea = 2 * e, eb = 2 * e + 1;
        Dart fc = g1.dart_count() + 2 * f, fd = g1.dart_count() + 2 * f + 1;
        std::vector<std::array<Dart, 2>> ports;
        if (pairing == 0)
            ports = {{ea, fc}, {eb, fd}};
        else
            ports = {{ea, fd}, {eb, fc}};
        return detail::rebuild(u, keep, alive, {}, ports);
    };
    Rebuilt r;
    try {
        r = assemble(false);
    } catch (const GenusError&) {
        r = assemble(true);
    }
    SumResult out;
    out.edge_map1.assign(g1.ne, -1);
    out.edge_map2.assign(g2.ne, -1);
    out.vertex_map1.assign(g1.nv, -1);
    out.vertex_map2.assign(g2.nv, -1);
    for (Edge k = 0; k < g1.ne; k++) out.edge_map1[k] = r.edge_map[k];
    for (Edge k = 0; k < g2.ne; k++) out.edge_map2[k] = r.edge_map[g1.ne + k];
    for (Vertex v = 0; v < g1.nv; v++) out.vertex_map1[v] = r.vertex_map[v];
    for (Vertex v = 0; v < g2.nv; v++) out.vertex_map2[v] = r.vertex_map[g1.nv + v];
    // the two port edges are the ones not hit by any old edge
    std::vector<char> from_old(r.g.ne, 0);
    for (Edge k = 0; k < g1.ne + g2.ne; k++)
        if (r.edge_map[k] >= 0) from_old[r.edge_map[k]] = 1;
    int k = 0;
    for (Edge ne = 0; ne < r.g.ne; ne++)
        if (!from_old[ne]) out.new_edges[k++] = ne;
    out.g = std::move(r.g);
    return out;
}

struct SplitResult {
    PlaneGraph g1, g2;
    OrientationAssignment sigma1, sigma2;
    Edge new_edge1 = -1, new_edge2 = -1;
    std::vector<int> edge_side;            // old edge -> 1, 2 (0 for the cut pair)
    std::vector<int> edge_map;             // old edge -> new edge in its side
    std::vector<int> vertex_map1, vertex_map2;
};

// Cut {e,f}: each side keeps its component plus one new edge joining the cut
// endpoints on that side (a loop when they coincide).
inline SplitResult split_two_edge_cut(const PlaneGraph& g, const OrientationAssignment& sigma,
                                      const Separation& sep) {
    if (sep.kind != Separation::two_edge_cut) throw PreconditionError("separation is not a 2-edge cut");
    Edge e = sep.pivot_edges[0], f = sep.pivot_edges[1];
    SplitResult out;
    out.edge_side.assign(g.ne, 0);
    out.edge_map.assign(g.ne, -1);
    for (Edge k = 0; k < g.ne; k++)
        if (k != e && k != f) out.edge_side[k] = sep.side_of[g.tail[2 * k]];
    for (int side = 1; side <= 2; side++) {
        std::vector<char> keep(g.nv, 0), alive(g.ne, 0);
        for (Vertex v = 0; v < g.nv; v++) keep[v] = (sep.side_of[v] == side);
        for (Edge k = 0; k < g.ne; k++) alive[k] = (out.edge_side[k] == side);
        Dart se = keep[g.tail[2 * e]] ? 2 * e : 2 * e + 1;
        Dart sf = keep[g.tail[2 * f]] ? 2 * f : 2 * f + 1;
        auto r = detail::rebuild(g, keep, alive, {}, {{se, sf}});
        auto sig = map_assignment(g, sigma, r);
        Edge ne = edge_of(r.dart_map[se]);
        for (Edge k = 0; k < g.ne; k++)
            if (alive[k]) out.edge_map[k] = r.edge_map[k];
        if (side == 1) {
            out.g1 = std::move(r.g);
            out.sigma1 = std::move(sig);
            out.new_edge1 = ne;
            out.vertex_map1 = std::move(r.vertex_map);
        } else {
            out.g2 = std::move(r.g);
            out.sigma2 = std::move(sig);
            out.new_edge2 = ne;
            out.vertex_map2 = std::move(r.vertex_map);
        }
    }
    return out;
}

// Split at a cut-vertex: each component keeps its two edges into v merged
// into one new edge (the vertex itself disappears from both sides).
inline SplitResult split_cut_vertex(const PlaneGraph& g, const OrientationAssignment& sigma,
                                    Vertex v) {
    std::vector<char> none(g.ne, 0);
    auto comp = detail::components(g, none, v);
    int nc = 0;
    for (Vertex u = 0; u < g.nv; u++)
        if (u != v) nc = std::max(nc, comp[u] + 1);
    if (nc != 2) throw PreconditionError("vertex is not a cut-vertex");
    SplitResult out;
    out.edge_side.assign(g.ne, 0);
    out.edge_map.assign(g.ne, -1);
    for (Edge k = 0; k < g.ne; k++) {
        Vertex a = g.tail[2 * k], b = g.tail[2 * k + 1];
        Vertex w = (a == v) ? b : a;
        if (w == v) throw PreconditionError("cut-vertex carries a loop");
        out.edge_side[k] = comp[w] + 1;
    }
    for (int side = 1; side <= 2; side++) {
        std::vector<char> keep(g.nv, 0), alive(g.ne, 1);
        for (Vertex u = 0; u < g.nv; u++)
            if (u != v) keep[u] = (comp[u] + 1 == side);
        for (Edge k = 0; k < g.ne; k++) alive[k] = (out.edge_side[k] == side && g.tail[2*k] != v && g.tail[2*k+1] != v);
        // the two edges from v into this side are spliced at v
        std::vector<std::array<Dart, 2>> pairing;
        std::array<Dart, 2> legs{-1, -1};
        int nlegs = 0;
        for (Dart d : g.rot[v])
            if (comp[g.head(d)] + 1 == side) legs[nlegs++] = d;
        if (nlegs != 2) throw Error("cut-vertex side must receive exactly two edges");
        pairing.push_back(legs);
        // edges incident to v heading into this side stay alive (they merge)
        for (Dart d : legs) alive[edge_of(d)] = 1;
        auto r = detail::rebuild(g, keep, alive, pairing, {});
        auto sig = map_assignment(g, sigma, r);
        Edge ne = edge_of(r.dart_map[twin(legs[0])]);
        for (Edge k = 0; k < g.ne; k++)
            if (alive[k] && r.edge_map[k] >= 0) out.edge_map[k] = r.edge_map[k];
        for (Dart d : legs) out.edge_map[edge_of(d)] = ne;
        if (side == 1) {
            out.g1 = std::move(r.g);
            out.sigma1 = std::move(sig);
            out.new_edge1 = ne;
            out.vertex_map1 = std::move(r.vertex_map);
        } else {
            out.g2 = std::move(r.g);
            out.sigma2 = std::move(sig);
            out.new_edge2 = ne;
            out.vertex_map2 = std::move(r.vertex_map);
        }
    }
    return out;
}

// Remove the edges of an o-cycle and suppress the freed degree-2 vertices.
struct CycleRemoval {
    PlaneGraph g;
    OrientationAssignment sigma;
    std::vector<int> edge_map;    // surviving old edge -> new edge (chains share)
    std::vector<int> vertex_map;
};

inline CycleRemoval remove_cycle(const PlaneGraph& g, const OrientationAssignment& sigma,
                                 const OCycle& c) {
    std::vector<char> keep(g.nv, 1), alive(g.ne, 1);
    for (Dart d : c.darts) {
        keep[g.tail[d]] = 0;
        alive[edge_of(d)] = 0;
    }
    std::vector<std::array<Dart, 2>> pairings;
    for (Dart d : c.darts) {
        Vertex v = g.tail[d];
        std::array<Dart, 2> rest{-1, -1};
        int k = 0;
        for (Dart x : g.rot[v])
            if (alive[edge_of(x)]) {
                if (k == 2) throw PatternError("cycle vertex keeps more than two darts");
                rest[k++] = x;
            }
        if (k != 2) throw PatternError("cycle vertex keeps fewer than two darts");
        pairings.push_back(rest);
    }
    Rebuilt r;
    try {
        r = detail::rebuild(g, keep, alive, pairings, {});
    } catch (const Error&) {
        throw PatternError("cycle removal degenerated");
    }
    CycleRemoval out;
    out.sigma = map_assignment(g, sigma, r);
    out.edge_map = std::move(r.edge_map);
    out.vertex_map = std::move(r.vertex_map);
    std::vector<Dart> partner(g.dart_count(), -1);
    for (auto& pr : pairings) {
        partner[pr[0]] = pr[1];
        partner[pr[1]] = pr[0];
    }
    // propagate chain ids to edges swallowed mid-chain
    for (Edge k = 0; k < g.ne; k++) {
        if (!alive[k] || out.edge_map[k] >= 0) continue;
        Dart d = 2 * k;
        int guard = 0;
        while (r.dart_map[d] < 0) {
            if (partner[d] < 0 || ++guard > 2 * g.ne)
                throw PatternError("suppressed chain closed on itself");
            d = twin(partner[d]);
        }
        out.edge_map[k] = edge_of(r.dart_map[d]);
    }
    out.g = std::move(r.g);
    return out;
}

// ---------------------------------------------------------------------------
// generators used to grow test families
// ---------------------------------------------------------------------------

// Pinch two strands that bound a common face into a new 4-valent vertex; the
// inverse of smoothing.  `a` and `b` are darts on distinct edges; the new
// vertex is oriented so that smoothing it restores the input.
inline std::pair<PlaneGraph, OrientationAssignment> inverse_smooth(
    const PlaneGraph& g, const OrientationAssignment& sigma, Dart a, Dart b) {
    if (!g.embedded) throw ModeError("inverse_smooth needs an embedded graph");
    if (edge_of(a) == edge_of(b)) throw PreconditionError("pinch needs two distinct edges");
    PlaneGraph h;
    h.nv = g.nv + 1;
    Vertex w = g.nv;
    // edge_of(a) -> edges (tail(a),w),(w,head(a));  edge_of(b) likewise.
    // new ids: ea keeps edge_of(a), its far half and b's halves are appended.
    int ea = edge_of(a), eb = edge_of(b);
    h.ne = g.ne + 2;
    Edge ea2 = g.ne, eb2 = g.ne + 1;
    h.tail.assign(2 * h.ne, -1);
    for (Edge k = 0; k < g.ne; k++) {
        h.tail[2 * k] = g.tail[2 * k];
        h.tail[2 * k + 1] = g.tail[2 * k + 1];
    }
    // ea: tail(a) -- w ; ea2: w -- head(a) ; eb: tail(b) -- w ; eb2: w -- head(b)
    h.tail[2 * ea] = g.tail[a];
    h.tail[2 * ea + 1] = w;
    h.tail[2 * ea2] = w;
    h.tail[2 * ea2 + 1] = g.head(a);
    h.tail[2 * eb] = g.tail[b];
    h.tail[2 * eb + 1] = w;
    h.tail[2 * eb2] = w;
    h.tail[2 * eb2 + 1] = g.head(b);
    auto remap = [&](Dart d) -> Dart {
        if (d == a) return 2 * ea;
        if (d == twin(a)) return 2 * ea2 + 1;
        if (d == b) return 2 * eb;
        if (d == twin(b)) return 2 * eb2 + 1;
        return d;
    };
    h.rot.resize(h.nv);
    for (Vertex v = 0; v < g.nv; v++)
        for (int i = 0; i < 4; i++) h.rot[v][i] = remap(g.rot[v][i]);
    // rotation at w: towards tail(a), towards head(a), towards tail(b), towards head(b)
    h.rot[w] = {2 * ea + 1, 2 * ea2, 2 * eb + 1, 2 * eb2};
    h.embedded = true;
    if (!detail::euler_spherical(h)) {
        // pinching inside the other face: reverse the wedge of b
        std::swap(h.rot[w][2], h.rot[w][3]);
        if (!detail::euler_spherical(h)) throw GenusError("strands do not bound a common face");
    }
    OrientationAssignment s2;
    s2.sel.assign(h.nv, 0);
    for (Vertex v = 0; v < g.nv; v++) s2.sel[v] = sigma.sel[v];
    // cells {rot1,rot2},{rot3,rot0}: the a-halves land in different cells, so
    // smoothing w re-merges them
    s2.sel[w] = 1;
    return {h, s2};
}

// Vertex-level connected sum: subdivide e in g1 and f in g2 and identify the
// two midpoints.  The new vertex is a cut-vertex; `transverse` picks which of
// its two orientations the returned assignment carries.
struct VertexSumResult {
    PlaneGraph g;
    OrientationAssignment sigma;
    Vertex pivot = -1;
    std::vector<int> vertex_map1, vertex_map2;
    std::vector<int> edge_map1, edge_map2;  // -1 for the subdivided edges
};

inline VertexSumResult connect_sum_vertex(const PlaneGraph& g1, const OrientationAssignment& s1,
                                          Edge e, const PlaneGraph& g2,
                                          const OrientationAssignment& s2, Edge f,
                                          bool transverse) {
    if (!g1.embedded || !g2.embedded) throw ModeError("connect_sum_vertex needs embedded graphs");
    auto assemble = [&](bool reflect2) {
        PlaneGraph u;
        Vertex v = g1.nv + g2.nv;
        u.nv = v + 1;
        u.ne = g1.ne + g2.ne + 2;  // e and f each split in two
        Edge e2 = g1.ne + g2.ne, f2 = e2 + 1;
        u.tail.assign(2 * u.ne, -1);
        for (Edge k = 0; k < g1.ne; k++) {
            u.tail[2 * k] = g1.tail[2 * k];
            u.tail[2 * k + 1] = g1.tail[2 * k + 1];
        }
        for (Edge k = 0; k < g2.ne; k++) {
            u.tail[2 * (g1.ne + k)] = g1.nv + g2.tail[2 * k];
            u.tail[2 * (g1.ne + k) + 1] = g1.nv + g2.tail[2 * k + 1];
        }
        // e becomes tail(e)--v, e2 becomes v--head(e); same for f, f2
        u.tail[2 * e + 1] = v;
        u.tail[2 * e2] = v;
        u.tail[2 * e2 + 1] = g1.tail[2 * e + 1];
        Edge fu = g1.ne + f;
        u.tail[2 * fu + 1] = v;
        u.tail[2 * f2] = v;
        u.tail[2 * f2 + 1] = g1.nv + g2.tail[2 * f + 1];
        auto remap1 = [&](Dart d) -> Dart { return d == twin(2 * e) ? 2 * e2 + 1 : d; };
        auto remap2 = [&](Dart d) -> Dart {
            Dart shifted = 2 * g1.ne + d;
            return d == twin(2 * f) ? 2 * f2 + 1 : shifted;
        };
        u.rot.resize(u.nv);
        for (Vertex w = 0; w < g1.nv; w++)
            for (int i = 0; i < 4; i++) u.rot[w][i] = remap1(g1.rot[w][i]);
        for (Vertex w = 0; w < g2.nv; w++)
            for (int i = 0; i < 4; i++)
                u.rot[g1.nv + w][i] = remap2(g2.rot[w][reflect2 ? 3 - i : i]);
        // around v: both g1 strand ends, then both g2 strand ends
        u.rot[v] = {twin(2 * e), 2 * e2, twin(2 * fu), 2 * f2};
        u.embedded = true;
        if (!detail::euler_spherical(u)) throw GenusError("vertex sum broke the embedding");
        return u;
    };
    VertexSumResult out;
    try {
        out.g = assemble(false);
    } catch (const GenusError&) {
        out.g = assemble(true);
    }
    out.pivot = g1.nv + g2.nv;
    out.vertex_map1.resize(g1.nv);
    out.vertex_map2.resize(g2.nv);
    for (Vertex w = 0; w < g1.nv; w++) out.vertex_map1[w] = w;
    for (Vertex w = 0; w < g2.nv; w++) out.vertex_map2[w] = g1.nv + w;
    out.edge_map1.assign(g1.ne, -1);
    out.edge_map2.assign(g2.ne, -1);
    for (Edge k = 0; k < g1.ne; k++)
        if (k != e) out.edge_map1[k] = k;
    for (Edge k = 0; k < g2.ne; k++)
        if (k != f) out.edge_map2[k] = g1.ne + k;
    out.sigma.sel.assign(out.g.nv, 0);
    for (Vertex w = 0; w < g1.nv; w++) out.sigma.sel[w] = s1.sel[w];
    for (Vertex w = 0; w < g2.nv; w++) out.sigma.sel[g1.nv + w] = s2.sel[w];
    // rotation at the pivot is (g1, g1, g2, g2); selector 0 keeps each side in
    // its own cell (nontransverse), selector 1 straddles (transverse)
    out.sigma.sel[out.pivot] = transverse ? 1 : 0;
    return out;
}

// Subdivide an edge with a new transverse loop-anchor.
inline std::pair<PlaneGraph, OrientationAssignment> add_loop_vertex(
    const PlaneGraph& g, const OrientationAssignment& sigma, Dart a, bool transverse = true) {
    if (!g.embedded) throw ModeError("add_loop_vertex needs an embedded graph");
    PlaneGraph h;
    h.nv = g.nv + 1;
    Vertex w = g.nv;
    int ea = edge_of(a);
    h.ne = g.ne + 2;
    Edge ea2 = g.ne, loop = g.ne + 1;
    h.tail.assign(2 * h.ne, -1);
    for (Edge k = 0; k < g.ne; k++) {
        h.tail[2 * k] = g.tail[2 * k];
        h.tail[2 * k + 1] = g.tail[2 * k + 1];
    }
    h.tail[2 * ea] = g.tail[a];
    h.tail[2 * ea + 1] = w;
    h.tail[2 * ea2] = w;
    h.tail[2 * ea2 + 1] = g.head(a);
    h.tail[2 * loop] = w;
    h.tail[2 * loop + 1] = w;
    auto remap = [&](Dart d) -> Dart {
        if (d == a) return 2 * ea;
        if (d == twin(a)) return 2 * ea2 + 1;
        return d;
    };
    h.rot.resize(h.nv);
    for (Vertex v = 0; v < g.nv; v++)
        for (int i = 0; i < 4; i++) h.rot[v][i] = remap(g.rot[v][i]);
    h.rot[w] = {2 * ea + 1, 2 * loop, 2 * loop + 1, 2 * ea2};
    h.embedded = true;
    if (!detail::euler_spherical(h)) throw GenusError("loop insertion broke the embedding");
    OrientationAssignment s2;
    s2.sel.assign(h.nv, 0);
    for (Vertex v = 0; v < g.nv; v++) s2.sel[v] = sigma.sel[v];
    // with rotation (e_in, l, l', e_out), selector 0 splits the loop darts
    // across the cells (transverse); selector 1 keeps them together
    s2.sel[w] = transverse ? 0 : 1;
    return {h, s2};
}

}  // namespace ochroma
