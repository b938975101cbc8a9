#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ochroma/ocycle.hpp"
#include "ochroma/orientation.hpp"
#include "ochroma/plane_graph.hpp"
#include "ochroma/transforms.hpp"

namespace ochroma {

// Constructive o-colouring engine.  The recursion peels the graph apart:
// base cases, 2-edge-cut and transverse cut-vertex merges, loop-anchor
// smoothing, and then three irreducible configurations (flype split, framed
// vertex with its three subcases, chain search over a smoothed 3-face).
// Every branch validates what it built; a branch that does not pan out falls
// back to exhaustive decomposition search, so the engine is total on its
// precondition.

enum class StepTag {
    base,
    two_edge_cut,
    cut_vertex,
    loop_anchor,
    case1_flype,
    case2_i,
    case2_ii,
    case2_iii,
    case3_chain,
    fallback_exhaustive,
};

inline const char* to_string(StepTag t) {
    switch (t) {
        case StepTag::base: return "base";
        case StepTag::two_edge_cut: return "two_edge_cut";
        case StepTag::cut_vertex: return "cut_vertex";
        case StepTag::loop_anchor: return "loop_anchor";
        case StepTag::case1_flype: return "case1_flype";
        case StepTag::case2_i: return "case2_i";
        case StepTag::case2_ii: return "case2_ii";
        case StepTag::case2_iii: return "case2_iii";
        case StepTag::case3_chain: return "case3_chain";
        case StepTag::fallback_exhaustive: return "fallback_exhaustive";
    }
    return "?";
}

struct EngineStep {
    StepTag tag;
    int pivot;    // vertex or first cut edge, -1 when not applicable
    int palette;  // palette size after the step
    int depth;
};

struct EngineTrace {
    std::vector<EngineStep> steps;
    int new_colour_events = 0;
    int fallbacks = 0;
    int chain_extensions = 0;  // Condition A/B style triple enlargements
    std::vector<std::string> fallback_reasons;

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& s : steps) {
            for (int i = 0; i < s.depth; i++) out << "  ";
            out << to_string(s.tag) << " pivot=";
            if (s.pivot < 0)
                out << "-";
            else
                out << s.pivot;
            out << " palette=" << s.palette << "\n";
        }
        out << "new_colour_events=" << new_colour_events << "\n";
        out << "fallbacks=" << fallbacks << "\n";
        out << "chain_extensions=" << chain_extensions << "\n";
        return out.str();
    }
};

struct CaseDetection {
    int which = 3;
    Vertex v = -1;
    Edge t = -1, b = -1;  // edge frames (top and bottom closing edges)
    Vertex w = -1;        // vertex frame: both frame strands pass through w
};

namespace detail {

inline int palette_size(const std::vector<int>& col) {
    int p = 0;
    for (int c : col) p = std::max(p, c + 1);
    return p;
}

// frame test shared by case 1 and case 2: {v,t,b} separates the graph with
// two of v's edges on each side, both cells of v straddling, and t, b each
// crossing the split
struct FramePattern {
    bool ok = false;
    bool parallel_frame = false;  // frames join v's own neighbours cell-wise
    std::vector<int> comp;        // vertex -> side (0/1), v -> -1
    std::array<Dart, 2> left{}, right{};  // v's darts per side, cell 0 first
};

inline FramePattern frame_pattern(const PlaneGraph& g, const OrientationAssignment& sigma,
                                  Vertex v, Edge t, Edge b) {
    FramePattern fp;
    std::vector<char> dead(g.ne, 0);
    dead[t] = dead[b] = 1;
    auto comp = components(g, dead, v);
    int nc = 0;
    for (Vertex u = 0; u < g.nv; u++)
        if (u != v) nc = std::max(nc, comp[u] + 1);
    if (nc != 2) return fp;
    auto [tu, tv] = g.ends(t);
    auto [bu, bv] = g.ends(b);
    if (comp[tu] == comp[tv] || comp[bu] == comp[bv]) return fp;
    auto cells = cells_of(g, sigma, v);
    for (int ci = 0; ci < 2; ci++) {
        int s0 = comp[g.head(cells[ci][0])], s1 = comp[g.head(cells[ci][1])];
        if (s0 < 0 || s1 < 0 || s0 == s1) return fp;  // loops at v never qualify
        fp.left[ci] = cells[ci][s0 == 0 ? 0 : 1];
        fp.right[ci] = cells[ci][s0 == 0 ? 1 : 0];
    }
    // the surgery needs the two same-side darts rotation-adjacent
    {
        int i0 = g.rot_index(v, fp.left[0]), i1 = g.rot_index(v, fp.left[1]);
        int d = (i0 - i1 + 4) % 4;
        if (d != 1 && d != 3) return fp;
    }
    fp.ok = true;
    fp.comp = comp;
    auto pairs = [&](Edge e, Vertex a, Vertex b2) {
        auto [x, y] = g.ends(e);
        return (x == a && y == b2) || (x == b2 && y == a);
    };
    for (int ti = 0; ti < 2; ti++) {
        Edge te = ti == 0 ? t : b, be = ti == 0 ? b : t;
        if (pairs(te, g.head(cells[0][0]), g.head(cells[0][1])) &&
            pairs(be, g.head(cells[1][0]), g.head(cells[1][1])))
            fp.parallel_frame = true;
    }
    return fp;
}

}  // namespace detail

namespace detail {

// vertex-framed variant of the case-1 layout: {v,w} is a separating pair,
// v's cells straddle the two sides, and w passes two strands across (so
// smoothing v would turn w into a nontransversely oriented cut-vertex)
struct VertexFramePattern {
    bool ok = false;
    std::vector<int> comp;
    std::array<Dart, 2> v_left{}, v_right{};  // v's darts per side, cell 0 first
    std::array<Dart, 2> w_left{}, w_right{};
};

inline VertexFramePattern vertex_frame_pattern(const PlaneGraph& g,
                                               const OrientationAssignment& sigma, Vertex v,
                                               Vertex w) {
    VertexFramePattern fp;
    if (v == w) return fp;
    for (Dart d : g.rot[v])
        if (g.head(d) == w) return fp;  // frames must avoid v itself
    // components of G - v - w
    std::vector<int> comp(g.nv, -1);
    int c = 0;
    for (Vertex s = 0; s < g.nv; s++) {
        if (comp[s] >= 0 || s == v || s == w) continue;
        comp[s] = c;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Dart d : g.rot[u]) {
                Vertex h = g.head(d);
                if (h == v || h == w || comp[h] >= 0) continue;
                comp[h] = c;
                stack.push_back(h);
            }
        }
        c++;
    }
    if (c != 2) return fp;
    auto cells_v = cells_of(g, sigma, v);
    for (int ci = 0; ci < 2; ci++) {
        int s0 = comp[g.head(cells_v[ci][0])], s1 = comp[g.head(cells_v[ci][1])];
        if (s0 < 0 || s1 < 0 || s0 == s1) return fp;
        fp.v_left[ci] = cells_v[ci][s0 == 0 ? 0 : 1];
        fp.v_right[ci] = cells_v[ci][s0 == 0 ? 1 : 0];
    }
    {
        int i0 = g.rot_index(v, fp.v_left[0]), i1 = g.rot_index(v, fp.v_left[1]);
        int d = (i0 - i1 + 4) % 4;
        if (d != 1 && d != 3) return fp;
    }
    int k0 = 0, k1 = 0;
    for (Dart d : g.rot[w]) {
        int side = comp[g.head(d)];
        if (side < 0) return fp;  // w adjacent to v or looped
        if (side == 0) {
            if (k0 == 2) return fp;
            fp.w_left[k0++] = d;
        } else {
            if (k1 == 2) return fp;
            fp.w_right[k1++] = d;
        }
    }
    if (k0 != 2 || k1 != 2) return fp;
    {
        int i0 = g.rot_index(w, fp.w_left[0]), i1 = g.rot_index(w, fp.w_left[1]);
        int d = (i0 - i1 + 4) % 4;
        if (d != 1 && d != 3) return fp;
    }
    fp.ok = true;
    fp.comp = std::move(comp);
    return fp;
}

}  // namespace detail

// every case-1 and case-2 instance, case-1 first (vertex frames, then edge
// frames), in lexicographic scan order
inline std::vector<CaseDetection> detect_all_cases(const PlaneGraph& g,
                                                   const OrientationAssignment& sigma) {
    std::vector<CaseDetection> out;
    auto incident = [&](Vertex v, Edge e) {
        return g.tail[2 * e] == v || g.tail[2 * e + 1] == v;
    };
    for (Vertex v = 0; v < g.nv; v++) {
        for (Vertex w = 0; w < g.nv; w++)
            if (detail::vertex_frame_pattern(g, sigma, v, w).ok)
                out.push_back(CaseDetection{1, v, -1, -1, w});
        for (Edge t = 0; t < g.ne; t++) {
            if (incident(v, t) || g.is_loop(t)) continue;
            for (Edge b = t + 1; b < g.ne; b++) {
                if (incident(v, b) || g.is_loop(b)) continue;
                auto fp = detail::frame_pattern(g, sigma, v, t, b);
                if (fp.ok && !fp.parallel_frame) out.push_back(CaseDetection{1, v, t, b, -1});
            }
        }
    }
    for (Vertex v = 0; v < g.nv; v++) {
        for (Edge t = 0; t < g.ne; t++) {
            if (incident(v, t) || g.is_loop(t)) continue;
            for (Edge b = t + 1; b < g.ne; b++) {
                if (incident(v, b) || g.is_loop(b)) continue;
                auto fp = detail::frame_pattern(g, sigma, v, t, b);
                if (fp.ok && fp.parallel_frame) out.push_back(CaseDetection{2, v, t, b, -1});
            }
        }
    }
    return out;
}

inline CaseDetection detect_case(const PlaneGraph& g, const OrientationAssignment& sigma) {
    auto all = detect_all_cases(g, sigma);
    return all.empty() ? CaseDetection{3, -1, -1, -1, -1} : all.front();
}

namespace detail {

struct Engine {
    EngineTrace trace;

    void record(StepTag tag, int pivot, int palette, int depth) {
        trace.steps.push_back(EngineStep{tag, pivot, palette, depth});
    }

    struct Checkpoint {
        size_t steps, reasons;
        int events, fbs, exts;
    };
    Checkpoint mark() const {
        return {trace.steps.size(), trace.fallback_reasons.size(), trace.new_colour_events,
                trace.fallbacks, trace.chain_extensions};
    }
    void rollback(const Checkpoint& c) {
        trace.steps.resize(c.steps);
        trace.fallback_reasons.resize(c.reasons);
        trace.new_colour_events = c.events;
        trace.fallbacks = c.fbs;
        trace.chain_extensions = c.exts;
    }

    // ------------------------------------------------------------------
    // Every sub-instance the recursion produces should again have all its
    // cut-vertices and loop-anchors transverse; when a branch breaks that (or
    // any other assumption), the PatternError is caught one level up and the
    // still-sound parent instance is finished by exhaustive search instead.
    std::vector<int> colour(const PlaneGraph& g, const OrientationAssignment& sigma, int depth) {
        if (!is_connected(g)) return colour_components(g, sigma, depth);
        if (!is_vogwoc(g, sigma))
            throw PatternError("sub-instance has a nontransverse cut-vertex or loop-anchor");
        if (g.nv <= 2) {
            auto col = brute_force(g, sigma);
            record(StepTag::base, -1, palette_size(col), depth);
            return col;
        }
        auto cp = mark();
        try {
            // a 2-edge cut whose edges share an endpoint is exactly a
            // cut-vertex separation; those go to the cut-vertex merge, the
            // disjoint ones to the 2-edge-cut merge
            auto seps = find_separations(g);
            auto shares_endpoint = [&](const Separation& s) {
                auto [a, b] = g.ends(s.pivot_edges[0]);
                auto [c, d] = g.ends(s.pivot_edges[1]);
                return a == c || a == d || b == c || b == d;
            };
            for (const auto& s : seps)
                if (s.kind == Separation::two_edge_cut && !shares_endpoint(s))
                    return merge_two_edge_cut(g, sigma, s, depth);
            for (const auto& s : seps)
                if (s.kind == Separation::cut_vertex)
                    return merge_cut_vertex(g, sigma, s.pivot_vertex, depth);
            // remaining shared-endpoint 2-cuts sit at loop-anchors, which the
            // smoothing branch owns
            for (Vertex v = 0; v < g.nv; v++)
                if (g.has_loop_at(v)) return lift_loop_anchor(g, sigma, v, depth);
            for (const auto& det : detect_all_cases(g, sigma)) {
                auto icp = mark();
                try {
                    if (det.which == 1) return merge_flype(g, sigma, det, depth);
                    return case2(g, sigma, det, depth);
                } catch (const PatternError&) {
                    rollback(icp);
                }
            }
            return chain_search(g, sigma, depth);
        } catch (const PatternError& pe) {
            rollback(cp);
            return fallback(g, sigma, depth, pe.what());
        }
    }

    std::vector<int> colour_components(const PlaneGraph& g, const OrientationAssignment& sigma,
                                       int depth) {
        std::vector<char> none(g.ne, 0);
        auto comp = components(g, none);
        int nc = 0;
        for (Vertex v = 0; v < g.nv; v++) nc = std::max(nc, comp[v] + 1);
        std::vector<int> col(g.ne, -1);
        for (int c = 0; c < nc; c++) {
            std::vector<char> keep(g.nv, 0), alive(g.ne, 0);
            for (Vertex v = 0; v < g.nv; v++) keep[v] = (comp[v] == c);
            for (Edge e = 0; e < g.ne; e++) alive[e] = (comp[g.tail[2 * e]] == c);
            auto r = rebuild(g, keep, alive, {}, {});
            auto sub = colour(r.g, map_assignment(g, sigma, r), depth);
            for (Edge e = 0; e < g.ne; e++)
                if (alive[e]) col[e] = sub[r.edge_map[e]];
        }
        return col;
    }

    std::vector<int> brute_force(const PlaneGraph& g, const OrientationAssignment& sigma) {
        auto decs = enumerate_decompositions(g, sigma);
        if (decs.empty()) throw Error("engine: graph admits no o-cycle decomposition");
        auto [k, oc] = min_colours(g, decs.front());
        (void)k;
        return oc.edge_colours();
    }

    std::vector<int> fallback(const PlaneGraph& g, const OrientationAssignment& sigma, int depth,
                              const std::string& reason) {
        auto col = brute_force(g, sigma);
        trace.fallbacks++;
        trace.fallback_reasons.push_back(reason);
        record(StepTag::fallback_exhaustive, -1, palette_size(col), depth);
        return col;
    }

    // ------------------------------------------------------------------
    std::vector<int> merge_two_edge_cut(const PlaneGraph& g, const OrientationAssignment& sigma,
                                        const Separation& sep, int depth) {
        auto sp = split_two_edge_cut(g, sigma, sep);
        auto c1 = colour(sp.g1, sp.sigma1, depth + 1);
        auto c2 = colour(sp.g2, sp.sigma2, depth + 1);
        // permute the second palette so the replacement edges match
        int want = c1[sp.new_edge1], have = c2[sp.new_edge2];
        for (int& c : c2) {
            if (c == have)
                c = want;
            else if (c == want)
                c = have;
        }
        std::vector<int> col(g.ne, -1);
        for (Edge e = 0; e < g.ne; e++) {
            if (sp.edge_side[e] == 1) col[e] = c1[sp.edge_map[e]];
            if (sp.edge_side[e] == 2) col[e] = c2[sp.edge_map[e]];
        }
        col[sep.pivot_edges[0]] = col[sep.pivot_edges[1]] = want;
        if (!validate_o_colouring(g, sigma, col)) throw PatternError("2-edge-cut merge failed");
        record(StepTag::two_edge_cut, sep.pivot_edges[0], detail::palette_size(col), depth);
        return col;
    }

    std::vector<int> merge_cut_vertex(const PlaneGraph& g, const OrientationAssignment& sigma,
                                      Vertex v, int depth) {
        auto sp = split_cut_vertex(g, sigma, v);
        auto c1 = colour(sp.g1, sp.sigma1, depth + 1);
        auto c2 = colour(sp.g2, sp.sigma2, depth + 1);
        int colA = c1[sp.new_edge1];
        // any second colour of the first half works for the other side
        int colB = -1;
        for (int c : c1)
            if (c != colA) colB = (colB < 0 || c < colB) ? c : colB;
        if (colB < 0) {
            colB = detail::palette_size(c1);
            trace.new_colour_events++;
        }
        int have = c2[sp.new_edge2];
        for (int& c : c2) {
            if (c == have)
                c = colB;
            else if (c == colB)
                c = have;
        }
        std::vector<int> col(g.ne, -1);
        for (Edge e = 0; e < g.ne; e++) {
            if (sp.edge_side[e] == 1 && sp.edge_map[e] >= 0) col[e] = c1[sp.edge_map[e]];
            if (sp.edge_side[e] == 2 && sp.edge_map[e] >= 0) col[e] = c2[sp.edge_map[e]];
        }
        // the legs around v inherit the side colours (c, c | c', c')
        for (Dart d : g.rot[v])
            col[edge_of(d)] = (sp.edge_side[edge_of(d)] == 1) ? colA : colB;
        if (!validate_o_colouring(g, sigma, col)) throw PatternError("cut-vertex merge failed");
        record(StepTag::cut_vertex, v, detail::palette_size(col), depth);
        return col;
    }

    std::vector<int> lift_loop_anchor(const PlaneGraph& g, const OrientationAssignment& sigma,
                                      Vertex v, int depth) {
        auto sm = smooth(g, sigma, v);
        auto sub = colour(sm.g, sm.sigma, depth + 1);
        std::vector<int> col(g.ne, -1);
        for (Edge e = 0; e < g.ne; e++)
            if (sm.edge_map[e] >= 0) col[e] = sub[sm.edge_map[e]];
        int through = sub[sm.merged[0]];
        int loop_col = -1;
        for (int c : sub)
            if (c != through && (loop_col < 0 || c < loop_col)) loop_col = c;
        if (loop_col < 0) {
            loop_col = detail::palette_size(sub);
            trace.new_colour_events++;
        }
        for (Edge e = 0; e < g.ne; e++)
            if (col[e] < 0) col[e] = loop_col;  // the loop edge
        if (!validate_o_colouring(g, sigma, col)) throw PatternError("loop-anchor lift failed");
        record(StepTag::loop_anchor, v, detail::palette_size(col), depth);
        return col;
    }

    // ------------------------------------------------------------------
    // case 1 (flype): split off both sides of the frame, each keeping a copy
    // of v whose cells pair the two wrap edges together
    struct FlypeHalf {
        PlaneGraph g;
        OrientationAssignment sigma;
        std::vector<int> edge_map;
        Edge wrap_t = -1, wrap_b = -1;
        Vertex v_copy = -1;
    };

    FlypeHalf flype_half(const PlaneGraph& g, const OrientationAssignment& sigma, Vertex v,
                         Edge t, Edge b, const detail::FramePattern& fp, int side) {
        std::vector<char> keep(g.nv, 0), alive(g.ne, 0);
        for (Vertex u = 0; u < g.nv; u++) keep[u] = (u != v && fp.comp[u] == side);
        keep[v] = 1;
        for (Edge e = 0; e < g.ne; e++)
            alive[e] = keep[g.tail[2 * e]] && keep[g.tail[2 * e + 1]] && e != t && e != b;
        Dart in0 = side == 0 ? fp.left[0] : fp.right[0];
        Dart in1 = side == 0 ? fp.left[1] : fp.right[1];
        Dart out0 = side == 0 ? fp.right[0] : fp.left[0];
        Dart out1 = side == 0 ? fp.right[1] : fp.left[1];
        alive[edge_of(out0)] = alive[edge_of(out1)] = 0;
        auto side_dart = [&](Edge e) {
            return fp.comp[g.tail[2 * e]] == side ? 2 * e : 2 * e + 1;
        };
        Dart td = side_dart(t), bd = side_dart(b);
        Rebuilt r;
        bool t_first;
        try {
            r = rebuild(g, keep, alive, {}, {{out0, td}, {out1, bd}});
            t_first = true;
        } catch (const GenusError&) {
            try {
                r = rebuild(g, keep, alive, {}, {{out0, bd}, {out1, td}});
                t_first = false;
            } catch (const GenusError&) {
                throw PatternError("flype half is not planar");
            }
        }
        FlypeHalf out;
        out.sigma = map_assignment(g, sigma, r);
        out.v_copy = r.vertex_map[v];
        // override the copy of v: the two wraps form one cell
        CellPair want = mk_cells(r.dart_map[out0], r.dart_map[out1], r.dart_map[in0],
                                 r.dart_map[in1]);
        bool found = false;
        for (int s = 0; s < 2; s++)
            if (cells_of(r.g, s, out.v_copy) == want) {
                out.sigma.sel[out.v_copy] = static_cast<std::uint8_t>(s);
                found = true;
                break;
            }
        if (!found) throw PatternError("wrap edges are not a cell in the flype half");
        out.wrap_t = edge_of(r.dart_map[t_first ? out0 : out1]);
        out.wrap_b = edge_of(r.dart_map[t_first ? out1 : out0]);
        out.edge_map = std::move(r.edge_map);
        out.g = std::move(r.g);
        return out;
    }

    // vertex-framed half: keep one side plus copies of both v and w, joining
    // them by two new parallel edges in the dropped darts' slots
    FlypeHalf flype_half_vertex(const PlaneGraph& g, const OrientationAssignment& sigma,
                                Vertex v, Vertex w, const detail::VertexFramePattern& fp,
                                int side) {
        std::vector<char> keep(g.nv, 0), alive(g.ne, 0);
        for (Vertex u = 0; u < g.nv; u++)
            keep[u] = (u != v && u != w && fp.comp[u] == side);
        keep[v] = keep[w] = 1;
        for (Edge e = 0; e < g.ne; e++)
            alive[e] = keep[g.tail[2 * e]] && keep[g.tail[2 * e + 1]];
        Dart in0 = side == 0 ? fp.v_left[0] : fp.v_right[0];
        Dart in1 = side == 0 ? fp.v_left[1] : fp.v_right[1];
        Dart out0 = side == 0 ? fp.v_right[0] : fp.v_left[0];
        Dart out1 = side == 0 ? fp.v_right[1] : fp.v_left[1];
        Dart wout0 = side == 0 ? fp.w_right[0] : fp.w_left[0];
        Dart wout1 = side == 0 ? fp.w_right[1] : fp.w_left[1];
        alive[edge_of(out0)] = alive[edge_of(out1)] = 0;
        alive[edge_of(wout0)] = alive[edge_of(wout1)] = 0;
        Rebuilt r;
        try {
            r = rebuild(g, keep, alive, {}, {{out0, wout0}, {out1, wout1}});
        } catch (const GenusError&) {
            try {
                r = rebuild(g, keep, alive, {}, {{out0, wout1}, {out1, wout0}});
            } catch (const GenusError&) {
                throw PatternError("vertex-framed half is not planar");
            }
        }
        FlypeHalf out;
        out.sigma = map_assignment(g, sigma, r);
        out.v_copy = r.vertex_map[v];
        CellPair want = mk_cells(r.dart_map[out0], r.dart_map[out1], r.dart_map[in0],
                                 r.dart_map[in1]);
        bool found = false;
        for (int s = 0; s < 2; s++)
            if (cells_of(r.g, s, out.v_copy) == want) {
                out.sigma.sel[out.v_copy] = static_cast<std::uint8_t>(s);
                found = true;
                break;
            }
        if (!found) throw PatternError("wrap edges are not a cell at the v copy");
        out.wrap_t = edge_of(r.dart_map[out0]);
        out.wrap_b = edge_of(r.dart_map[out1]);
        out.edge_map = std::move(r.edge_map);
        out.g = std::move(r.g);
        return out;
    }

    // a few alternative colourings of a half, straight from its decompositions
    std::vector<std::vector<int>> alt_colourings(const PlaneGraph& g,
                                                 const OrientationAssignment& sigma,
                                                 size_t cap) {
        std::vector<std::vector<int>> out;
        for (const auto& d : enumerate_decompositions(g, sigma)) {
            out.push_back(min_colours(g, d).second.edge_colours());
            if (out.size() >= cap) break;
        }
        return out;
    }

    std::vector<int> merge_flype(const PlaneGraph& g, const OrientationAssignment& sigma,
                                 const CaseDetection& det, int depth) {
        FlypeHalf h0, h1;
        if (det.w >= 0) {
            auto fp = detail::vertex_frame_pattern(g, sigma, det.v, det.w);
            if (!fp.ok) throw PatternError("vertex frame vanished");
            h0 = flype_half_vertex(g, sigma, det.v, det.w, fp, 0);
            h1 = flype_half_vertex(g, sigma, det.v, det.w, fp, 1);
        } else {
            auto fp = detail::frame_pattern(g, sigma, det.v, det.t, det.b);
            if (!fp.ok) throw PatternError("flype pattern vanished");
            h0 = flype_half(g, sigma, det.v, det.t, det.b, fp, 0);
            h1 = flype_half(g, sigma, det.v, det.t, det.b, fp, 1);
        }
        if (!is_vogwoc(h0.g, h0.sigma) || !is_vogwoc(h1.g, h1.sigma))
            throw PatternError("flype half has a nontransverse pivot");
        auto c0 = colour(h0.g, h0.sigma, depth + 1);
        auto c1 = colour(h1.g, h1.sigma, depth + 1);
        // the engine colourings first, then decomposition alternatives: the
        // halves do not always pair their wrap cycles compatibly
        std::vector<std::vector<int>> cands0{c0}, cands1{c1};
        for (auto& a : alt_colourings(h0.g, h0.sigma, 6)) cands0.push_back(a);
        for (auto& a : alt_colourings(h1.g, h1.sigma, 6)) cands1.push_back(a);
        for (const auto& k0 : cands0)
            for (const auto& k1 : cands1) {
                auto col = try_flype_merge(g, sigma, det, h0, h1, k0, k1);
                if (!col.empty()) {
                    record(StepTag::case1_flype, det.v, detail::palette_size(col), depth);
                    return col;
                }
            }
        throw PatternError("flype merge did not validate");
    }

    // search the palette matchings of the second half for one whose assembly
    // validates; the wrap colours pin the frame-edge colours in the edge case
    std::vector<int> try_flype_merge(const PlaneGraph& g, const OrientationAssignment& sigma,
                                     const CaseDetection& det, const FlypeHalf& h0,
                                     const FlypeHalf& h1, const std::vector<int>& c0,
                                     const std::vector<int>& c1) {
        int ct = c0[h0.wrap_t], cb = c0[h0.wrap_b];
        if (ct == cb || c1[h1.wrap_t] == c1[h1.wrap_b]) return {};
        std::vector<int> pal0, pal1;
        for (int c : c0)
            if (std::find(pal0.begin(), pal0.end(), c) == pal0.end()) pal0.push_back(c);
        for (int c : c1)
            if (std::find(pal1.begin(), pal1.end(), c) == pal1.end()) pal1.push_back(c);
        std::sort(pal0.begin(), pal0.end());
        std::sort(pal1.begin(), pal1.end());
        std::vector<int> targets = pal0;
        for (size_t i = 0; i < pal1.size(); i++)
            targets.push_back(detail::palette_size(c0) + static_cast<int>(i));
        std::map<int, int> pi;
        std::vector<char> used(targets.size(), 0);
        std::vector<int> result;
        auto assemble = [&]() {
            std::vector<int> col(g.ne, -1);
            for (Edge e = 0; e < g.ne; e++) {
                if (h0.edge_map[e] >= 0) col[e] = c0[h0.edge_map[e]];
                if (h1.edge_map[e] >= 0) col[e] = pi.at(c1[h1.edge_map[e]]);
            }
            if (det.w < 0) {
                // the frame edges carry the first half's wrap colours; the
                // second half's wraps must agree for its endpoints to check out
                if (pi.at(c1[h1.wrap_t]) != ct || pi.at(c1[h1.wrap_b]) != cb) return;
                col[det.t] = ct;
                col[det.b] = cb;
            }
            if (validate_o_colouring(g, sigma, col)) result = std::move(col);
        };
        auto rec = [&](auto&& self, size_t i) -> void {
            if (!result.empty()) return;
            if (i == pal1.size()) {
                assemble();
                return;
            }
            for (size_t t = 0; t < targets.size(); t++) {
                if (used[t]) continue;
                used[t] = 1;
                pi[pal1[i]] = targets[t];
                self(self, i + 1);
                used[t] = 0;
            }
            pi.erase(pal1[i]);
        };
        rec(rec, 0);
        return result;
    }

    // ------------------------------------------------------------------
    // case 2: smooth the framed vertex and lift by subcase
    std::vector<int> case2(const PlaneGraph& g, const OrientationAssignment& sigma,
                           const CaseDetection& det, int depth) {
        auto sm = smooth(g, sigma, det.v);
        auto sub = colour(sm.g, sm.sigma, depth + 1);
        Edge m0 = sm.merged[0], m1 = sm.merged[1];
        Edge t2 = sm.edge_map[det.t], b2 = sm.edge_map[det.b];
        if (sub[t2] != sub[b2]) throw PatternError("frame edges differ across the 2-cut");
        int c1 = sub[m0], c2 = sub[m1], c3 = sub[t2];
        StepTag tag = StepTag::case2_i;
        if (c1 == c2) {
            auto oc = ocolouring_from_edges(sm.g, sm.sigma, sub);
            int cyc_m0 = oc.dec.cycle_of_edge[m0];
            int cyc_m1 = oc.dec.cycle_of_edge[m1];
            int cyc_t = oc.dec.cycle_of_edge[t2];
            if (c1 != c3) {
                // swap colours on the frame side holding m1 so the merged
                // edges differ; a brand new colour if only two are in play
                tag = StepTag::case2_ii;
                sub = case2_side_swap(sm.g, sm.sigma, sub, t2, b2, m1, c2, c3);
                c2 = sub[m1];
            } else if (cyc_m0 != cyc_m1) {
                tag = StepTag::case2_iii;
                int pick = (cyc_m1 != cyc_t) ? m1 : m0;
                sub = recolour_cycle_avoiding(sm.g, sm.sigma, sub, oc, pick, c1);
                c1 = sub[m0];
                c2 = sub[m1];
            } else {
                // both merged edges on the frame cycle: remove an interior
                // cycle of the far side, recurse with v reinstated
                tag = StepTag::case2_iii;
                return case2_remove_cycle(g, sigma, det, sm, sub, oc, depth);
            }
        }
        if (c1 == c2) throw PatternError("case 2 subcases left equal colours");
        std::vector<int> col(g.ne, -1);
        for (Edge e = 0; e < g.ne; e++)
            if (sm.edge_map[e] >= 0) col[e] = sub[sm.edge_map[e]];
        // edges at v take their strand's colour (already set through the
        // merged-edge mapping)
        if (!validate_o_colouring(g, sigma, col)) throw PatternError("case 2 lift failed");
        record(tag, det.v, detail::palette_size(col), depth);
        return col;
    }

    // swap colour c2 with a colour not in {c2,c3} on the side of the 2-cut
    // {t,b} that contains edge m1
    std::vector<int> case2_side_swap(const PlaneGraph& g, const OrientationAssignment& sigma,
                                     std::vector<int> sub, Edge t, Edge b, Edge m1, int c2,
                                     int c3) {
        std::vector<char> dead(g.ne, 0);
        dead[t] = dead[b] = 1;
        auto comp = components(g, dead);
        int side = comp[g.tail[2 * m1]];
        int fresh = -1;
        for (int c = 0; c < detail::palette_size(sub); c++)
            if (c != c2 && c != c3) { fresh = c; break; }
        if (fresh < 0) {
            fresh = detail::palette_size(sub);
            trace.new_colour_events++;
        }
        for (Edge e = 0; e < g.ne; e++) {
            if (e == t || e == b || comp[g.tail[2 * e]] != side) continue;
            if (sub[e] == c2)
                sub[e] = fresh;
            else if (sub[e] == fresh)
                sub[e] = c2;
        }
        if (!validate_o_colouring(g, sigma, sub)) throw PatternError("side swap failed");
        return sub;
    }

    // recolour the cycle through `pick` so it avoids colour `avoid`
    std::vector<int> recolour_cycle_avoiding(const PlaneGraph& g,
                                             const OrientationAssignment& sigma,
                                             std::vector<int> sub, const OColouring& oc,
                                             Edge pick, int avoid) {
        int target = oc.dec.cycle_of_edge[pick];
        std::set<int> banned{avoid};
        std::vector<char> on_target(g.nv, 0);
        for (Dart d : oc.dec.cycles[target].darts) on_target[g.tail[d]] = 1;
        for (size_t i = 0; i < oc.dec.cycles.size(); i++) {
            if (static_cast<int>(i) == target) continue;
            for (Dart d : oc.dec.cycles[i].darts)
                if (on_target[g.tail[d]]) banned.insert(oc.colour[i]);
        }
        int c = 0;
        while (banned.count(c)) c++;
        if (c >= detail::palette_size(sub)) trace.new_colour_events++;
        for (Dart d : oc.dec.cycles[target].darts) sub[edge_of(d)] = c;
        if (!validate_o_colouring(g, sigma, sub)) throw PatternError("cycle recolour failed");
        return sub;
    }

    std::vector<int> case2_remove_cycle(const PlaneGraph& g, const OrientationAssignment& sigma,
                                        const CaseDetection& det, const SmoothResult& sm,
                                        const std::vector<int>& sub, const OColouring& oc,
                                        int depth) {
        // pick an o-cycle strictly inside one frame side, translate it back
        // to the unsmoothed graph, remove it and recurse
        Edge t2 = sm.edge_map[det.t];
        int frame_cycle = oc.dec.cycle_of_edge[t2];
        (void)sub;
        std::vector<int> inv_dart(2 * sm.g.ne, -1);
        for (Dart d = 0; d < g.dart_count(); d++)
            if (sm.dart_map[d] >= 0) inv_dart[sm.dart_map[d]] = d;
        int chosen = -1;
        for (size_t i = 0; i < oc.dec.cycles.size(); i++) {
            if (static_cast<int>(i) == frame_cycle) continue;
            bool clean = true;
            for (Dart d : oc.dec.cycles[i].darts)
                if (inv_dart[d] < 0 || edge_of(d) == sm.merged[0] || edge_of(d) == sm.merged[1])
                    clean = false;
            if (clean) { chosen = static_cast<int>(i); break; }
        }
        if (chosen < 0) throw PatternError("no interior cycle to remove");
        OCycle cg;
        for (Dart d : oc.dec.cycles[chosen].darts) cg.darts.push_back(inv_dart[d]);
        cg.darts = canonical_cycle(cg.darts);
        auto rem = remove_cycle(g, sigma, cg);
        if (!is_vogwoc(rem.g, rem.sigma))
            throw PatternError("cycle removal left a nontransverse pivot");
        auto col2 = colour(rem.g, rem.sigma, depth + 1);
        auto col = reinsert_cycle(g, sigma, cg, rem, col2);
        record(StepTag::case2_iii, det.v, detail::palette_size(col), depth);
        return col;
    }

    std::vector<int> reinsert_cycle(const PlaneGraph& g, const OrientationAssignment& sigma,
                                    const OCycle& cg, const CycleRemoval& rem,
                                    const std::vector<int>& col2) {
        std::vector<int> col(g.ne, -1);
        for (Edge e = 0; e < g.ne; e++)
            if (rem.edge_map[e] >= 0) col[e] = col2[rem.edge_map[e]];
        std::set<int> used;
        for (Dart d : cg.darts) {
            Vertex v = g.tail[d];
            for (Dart x : g.rot[v])
                if (col[edge_of(x)] >= 0) used.insert(col[edge_of(x)]);
        }
        int c = 0;
        while (used.count(c)) c++;
        if (c >= detail::palette_size(col2)) trace.new_colour_events++;
        for (Dart d : cg.darts) col[edge_of(d)] = c;
        if (!validate_o_colouring(g, sigma, col)) throw PatternError("cycle reinsertion failed");
        return col;
    }

    // ------------------------------------------------------------------
    // case 3: smooth a suitable 3-face corner and run the chain search
    struct Case3Candidate {
        Vertex v, u, w;
        Edge e, base, vw;
    };

    static bool face_open_at(const PlaneGraph& g, const OrientationAssignment& sigma, Vertex v,
                             Dart fd1, Dart fd2) {
        auto cells = cells_of(g, sigma, v);
        return cell_index(cells, fd1) != cell_index(cells, fd2);
    }

    std::vector<Case3Candidate> case3_candidates(const PlaneGraph& g,
                                                 const OrientationAssignment& sigma) {
        std::vector<Case3Candidate> out;
        for (auto& f : faces(g)) {
            if (f.size() != 3) continue;
            // f[i] leaves vertex g.tail[f[i]] along the face
            for (int i = 0; i < 3; i++) {
                Vertex v = g.tail[f[i]];
                Dart out_d = f[i], in_d = twin(f[(i + 2) % 3]);
                if (!face_open_at(g, sigma, v, out_d, in_d)) continue;
                for (int j : {(i + 1) % 3, (i + 2) % 3}) {
                    Vertex u = g.tail[f[j]];
                    Dart u_out = f[j], u_in = twin(f[(j + 2) % 3]);
                    if (!face_open_at(g, sigma, u, u_out, u_in)) continue;
                    Vertex w = g.tail[f[3 - i - j]];
                    Edge e = (j == (i + 1) % 3) ? edge_of(f[i]) : edge_of(f[(i + 2) % 3]);
                    Edge base = (j == (i + 1) % 3) ? edge_of(f[j]) : edge_of(f[(i + 1) % 3]);
                    Edge vw = (j == (i + 1) % 3) ? edge_of(f[(i + 2) % 3]) : edge_of(f[i]);
                    out.push_back(Case3Candidate{v, u, w, e, base, vw});
                }
            }
        }
        std::sort(out.begin(), out.end(), [](const Case3Candidate& a, const Case3Candidate& b) {
            return std::tie(a.v, a.u, a.e) < std::tie(b.v, b.u, b.e);
        });
        return out;
    }

    std::vector<int> chain_search(const PlaneGraph& g, const OrientationAssignment& sigma,
                                  int depth) {
        // pivots on a qualifying 3-face can run the full chain machinery; any
        // other vertex still gets the direct-lift and cycle-removal paths
        auto cands = case3_candidates(g, sigma);
        std::vector<Vertex> pivots;
        for (const auto& c : cands)
            if (std::find(pivots.begin(), pivots.end(), c.v) == pivots.end())
                pivots.push_back(c.v);
        for (Vertex v = 0; v < g.nv; v++)
            if (std::find(pivots.begin(), pivots.end(), v) == pivots.end()) pivots.push_back(v);
        for (Vertex v : pivots) {
            auto cp = mark();
            try {
                return chain_search_pivot(g, sigma, v, cands, depth);
            } catch (const PatternError&) {
                rollback(cp);
            }
        }
        throw PatternError("chain search exhausted every pivot");
    }

    std::vector<int> chain_search_pivot(const PlaneGraph& g, const OrientationAssignment& sigma,
                                        Vertex v, const std::vector<Case3Candidate>& cands,
                                        int depth) {
        auto sm = smooth(g, sigma, v);
        auto sub = colour(sm.g, sm.sigma, depth + 1);
        auto oc = ocolouring_from_edges(sm.g, sm.sigma, sub);
        int cyc0 = oc.dec.cycle_of_edge[sm.merged[0]];
        int cyc1 = oc.dec.cycle_of_edge[sm.merged[1]];
        if (cyc0 != cyc1) {
            // the two strands lie on different o-cycles: lift directly,
            // recolouring one of them when the colours happen to collide
            if (oc.colour[cyc0] == oc.colour[cyc1])
                sub = recolour_cycle_avoiding(sm.g, sm.sigma, sub, oc, sm.merged[1],
                                              oc.colour[cyc0]);
            std::vector<int> col(g.ne, -1);
            for (Edge e = 0; e < g.ne; e++)
                if (sm.edge_map[e] >= 0) col[e] = sub[sm.edge_map[e]];
            if (!validate_o_colouring(g, sigma, col)) throw PatternError("case 3 direct lift failed");
            record(StepTag::case3_chain, v, detail::palette_size(col), depth);
            return col;
        }
        std::vector<int> inv_dart(2 * sm.g.ne, -1);
        for (Dart d = 0; d < g.dart_count(); d++)
            if (sm.dart_map[d] >= 0) inv_dart[sm.dart_map[d]] = d;
        // easy path: removing some other o-cycle may already leave every
        // pivot transverse; then colour the rest and reinsert that cycle
        for (size_t i = 0; i < oc.dec.cycles.size(); i++) {
            if (static_cast<int>(i) == cyc0) continue;
            bool clean = true;
            for (Dart d : oc.dec.cycles[i].darts)
                if (inv_dart[d] < 0) clean = false;
            if (!clean) continue;
            OCycle dg;
            for (Dart d : oc.dec.cycles[i].darts) dg.darts.push_back(inv_dart[d]);
            dg.darts = canonical_cycle(dg.darts);
            auto cp = mark();
            try {
                auto rem = remove_cycle(g, sigma, dg);
                if (!is_vogwoc(rem.g, rem.sigma))
                    throw PatternError("removal leaves a nontransverse pivot");
                auto col2 = colour(rem.g, rem.sigma, depth + 1);
                auto col = reinsert_cycle(g, sigma, dg, rem, col2);
                record(StepTag::case3_chain, v, detail::palette_size(col), depth);
                return col;
            } catch (const PatternError&) {
                rollback(cp);
            }
        }
        // chain machinery over the qualifying (u, w) choices at this pivot
        for (const auto& cand : cands) {
            if (cand.v != v) continue;
            auto cp = mark();
            try {
                return chain_search_at(g, sigma, cand, sm, oc, inv_dart, cyc0, depth);
            } catch (const PatternError&) {
                rollback(cp);
            }
        }
        throw PatternError("no chain decomposition at this pivot");
    }

    std::vector<int> chain_search_at(const PlaneGraph& g, const OrientationAssignment& sigma,
                                     const Case3Candidate& cand, const SmoothResult& sm,
                                     const OColouring& oc, const std::vector<int>& inv_dart,
                                     int cyc0, int depth) {
        auto expand = [&](const OCycle& c) {
            std::vector<Dart> w;
            for (Dart d : c.darts) {
                Edge e = edge_of(d);
                if (e == sm.merged[0] || e == sm.merged[1]) {
                    int k = (e == sm.merged[0]) ? 0 : 1;
                    Dart p0 = sm.spliced[k][0], p1 = sm.spliced[k][1];
                    // entering along the strand from the end matching d's tail
                    Dart first = inv_dart[d];  // dart at the same far vertex
                    Dart via = (first == twin(p0)) ? p1 : p0;
                    w.push_back(first);
                    w.push_back(via);
                } else {
                    w.push_back(inv_dart[d]);
                }
            }
            return w;
        };
        std::vector<Dart> walk = expand(oc.dec.cycles[cyc0]);
        // split the closed walk at its two visits of v
        std::vector<int> at_v;
        for (size_t i = 0; i < walk.size(); i++)
            if (g.tail[walk[i]] == cand.v) at_v.push_back(static_cast<int>(i));
        if (at_v.size() != 2) throw PatternError("strand walk does not visit v twice");
        auto piece = [&](int from, int to) {
            std::vector<Dart> p;
            for (int i = from; i != to; i = (i + 1) % static_cast<int>(walk.size()))
                p.push_back(walk[i]);
            return p;
        };
        std::vector<Dart> A = piece(at_v[0], at_v[1]);
        std::vector<Dart> B = piece(at_v[1], at_v[0]);
        Dart e_dart = -1;
        for (Dart d : g.rot[cand.v])
            if (edge_of(d) == cand.e) e_dart = d;
        if (e_dart < 0) throw PatternError("face edge vanished");
        auto contains = [&](const std::vector<Dart>& p, Edge e) {
            for (Dart d : p)
                if (edge_of(d) == e) return true;
            return false;
        };
        std::vector<Dart> C1 = contains(A, cand.e) ? A : B;
        std::vector<Dart> C3 = contains(A, cand.e) ? B : A;
        if (!contains(C1, cand.e) || !contains(C3, cand.vw))
            throw PatternError("face edges not distributed over the two v-walks");
        if (C1.front() != e_dart) {
            // reverse so the walk leaves v along e
            std::vector<Dart> rev;
            for (auto it = C1.rbegin(); it != C1.rend(); ++it) rev.push_back(twin(*it));
            C1 = rev;
            if (C1.front() != e_dart) throw PatternError("cannot align C1 with the face edge");
        }
        // C2: the cycle through the base edge; must be a genuine cycle
        Edge base2 = sm.edge_map[cand.base];
        int c2idx = oc.dec.cycle_of_edge[base2];
        if (c2idx == cyc0) throw PatternError("base edge fell on the strand cycle");
        std::vector<Dart> C2;
        for (Dart d : oc.dec.cycles[c2idx].darts) {
            if (inv_dart[d] < 0) throw PatternError("chain cycle crosses the smoothing");
            C2.push_back(inv_dart[d]);
        }
        // the chain must be exactly C1 - C2 - C3
        if (static_cast<int>(oc.dec.cycles.size()) != 2)
            throw PatternError("chain longer than two links");
        return chain_iterate(g, sigma, cand, C1, C2, C3, depth);
    }

    static std::vector<Vertex> verts_of(const PlaneGraph& g, const std::vector<Dart>& p) {
        std::vector<Vertex> out;
        for (Dart d : p) out.push_back(g.tail[d]);
        return out;
    }

    static bool on(const std::vector<Dart>& cyc, const PlaneGraph& g, Vertex v) {
        for (Dart d : cyc)
            if (g.tail[d] == v) return true;
        return false;
    }

    // follow a cyclic dart walk from the position of vertex `from` in the
    // direction whose first dart lies in the other cell than `arrival`
    static std::vector<Dart> follow_from(const PlaneGraph& g, const OrientationAssignment& sigma,
                                         const std::vector<Dart>& cyc, Vertex from, Dart arrival,
                                         Vertex stop) {
        int n = static_cast<int>(cyc.size());
        for (int dir = 0; dir < 2; dir++) {
            std::vector<Dart> oriented;
            if (dir == 0)
                oriented = cyc;
            else
                for (int i = n - 1; i >= 0; i--) oriented.push_back(twin(cyc[i]));
            for (int s = 0; s < n; s++) {
                if (g.tail[oriented[s]] != from) continue;
                auto cells = cells_of(g, sigma, from);
                if (cell_index(cells, twin(arrival)) == cell_index(cells, oriented[s])) continue;
                std::vector<Dart> path;
                for (int i = 0; i < n; i++) {
                    Dart d = oriented[(s + i) % n];
                    path.push_back(d);
                    if (g.head(d) == stop) return path;
                }
            }
        }
        throw PatternError("no legal continuation along the chain cycle");
    }

    std::vector<int> chain_iterate(const PlaneGraph& g, const OrientationAssignment& sigma,
                                   const Case3Candidate& cand, const std::vector<Dart>& C1,
                                   const std::vector<Dart>& C2, const std::vector<Dart>& C3,
                                   int depth) {
        Dart e_dart = C1.front();
        // seed triple: P1 = v -e-> u, P2 = u -base-> w, P3 = w ..C3.. v
        std::vector<Dart> P1{e_dart};
        Dart base_dart = -1;
        for (Dart d : g.rot[cand.u])
            if (edge_of(d) == cand.base) base_dart = d;
        if (base_dart < 0) throw PatternError("base dart missing");
        {
            auto cells = cells_of(g, sigma, cand.u);
            if (cell_index(cells, twin(e_dart)) == cell_index(cells, base_dart))
                throw PatternError("transition e -> base is not legal at u");
        }
        std::vector<Dart> P2{base_dart};
        std::vector<Dart> P3 = follow_from(g, sigma, C3, cand.w, base_dart, cand.v);

        auto assemble = [&]() {
            std::vector<Dart> seq = P1;
            seq.insert(seq.end(), P2.begin(), P2.end());
            seq.insert(seq.end(), P3.begin(), P3.end());
            return seq;
        };
        auto is_ocycle = [&](const std::vector<Dart>& seq) {
            std::vector<char> seen(g.nv, 0);
            for (size_t i = 0; i < seq.size(); i++) {
                Vertex vv = g.tail[seq[i]];
                if (seen[vv]) return false;
                seen[vv] = 1;
                Dart prev = seq[(i + seq.size() - 1) % seq.size()];
                if (g.head(prev) != vv) return false;
                auto cells = cells_of(g, sigma, vv);
                if (cell_index(cells, twin(prev)) == cell_index(cells, seq[i])) return false;
            }
            return true;
        };

        int guard = 0;
        while (true) {
            if (++guard > 4 * g.ne) throw PatternError("chain search did not settle");
            auto seq = assemble();
            if (!is_ocycle(seq)) throw PatternError("triple is not an o-cycle");
            OCycle hat{canonical_cycle(seq)};
            CycleRemoval rem;
            try {
                rem = remove_cycle(g, sigma, hat);
            } catch (const PatternError&) {
                throw;
            }
            Vertex z = -1;
            for (Vertex nv = 0; nv < rem.g.nv; nv++) {
                if (classify(rem.g, rem.sigma, nv) == VertexClass::nontransverse) {
                    for (Vertex ov = 0; ov < g.nv; ov++)
                        if (rem.vertex_map[ov] == nv) z = ov;
                    break;
                }
            }
            if (z < 0) {
                auto col2 = colour(rem.g, rem.sigma, depth + 1);
                auto col = reinsert_cycle(g, sigma, hat, rem, col2);
                record(StepTag::case3_chain, cand.v, detail::palette_size(col), depth);
                return col;
            }
            // extend towards z
            trace.chain_extensions++;
            bool on1 = on(C1, g, z), on2 = on(C2, g, z), on3 = on(C3, g, z);
            if (on1 && on2) {
                // extend P1 along C1 (its own direction) up to z
                size_t old = P1.size();
                size_t pos = P1.size();
                while (pos < C1.size() && g.tail[C1[pos]] != z) pos++;
                if (pos >= C1.size()) throw PatternError("z not ahead on C1");
                std::vector<Dart> ext(C1.begin(), C1.begin() + pos);
                if (ext.size() <= old) throw PatternError("chain order did not grow");
                P1 = ext;
                Dart arrive = P1.back();
                P2 = follow_c_until(g, sigma, C2, z, arrive, C3);
                Vertex r = g.head(P2.back());
                P3 = follow_from(g, sigma, C3, r, P2.back(), cand.v);
            } else if (on2 && on3) {
                size_t old = P2.size();
                Dart arrive = P1.back();
                P2 = follow_c_until_vertex(g, sigma, C2, g.head(arrive), arrive, z);
                if (P2.size() <= old) throw PatternError("chain order did not grow (B)");
                P3 = follow_from(g, sigma, C3, z, P2.back(), cand.v);
            } else {
                throw PatternError("blocking vertex off the chain");
            }
        }
    }

    // follow C2 from `from` (continuing legally after `arrival`) until the
    // first vertex lying on `C3`
    static std::vector<Dart> follow_c_until(const PlaneGraph& g,
                                            const OrientationAssignment& sigma,
                                            const std::vector<Dart>& cyc, Vertex from,
                                            Dart arrival, const std::vector<Dart>& C3) {
        int n = static_cast<int>(cyc.size());
        for (int dir = 0; dir < 2; dir++) {
            std::vector<Dart> oriented;
            if (dir == 0)
                oriented = cyc;
            else
                for (int i = n - 1; i >= 0; i--) oriented.push_back(twin(cyc[i]));
            for (int s = 0; s < n; s++) {
                if (g.tail[oriented[s]] != from) continue;
                auto cells = cells_of(g, sigma, from);
                if (cell_index(cells, twin(arrival)) == cell_index(cells, oriented[s])) continue;
                std::vector<Dart> path;
                for (int i = 0; i < n; i++) {
                    Dart d = oriented[(s + i) % n];
                    path.push_back(d);
                    if (on(C3, g, g.head(d))) return path;
                }
            }
        }
        throw PatternError("no path along the middle cycle");
    }

    static std::vector<Dart> follow_c_until_vertex(const PlaneGraph& g,
                                                   const OrientationAssignment& sigma,
                                                   const std::vector<Dart>& cyc, Vertex from,
                                                   Dart arrival, Vertex stop) {
        int n = static_cast<int>(cyc.size());
        for (int dir = 0; dir < 2; dir++) {
            std::vector<Dart> oriented;
            if (dir == 0)
                oriented = cyc;
            else
                for (int i = n - 1; i >= 0; i--) oriented.push_back(twin(cyc[i]));
            for (int s = 0; s < n; s++) {
                if (g.tail[oriented[s]] != from) continue;
                auto cells = cells_of(g, sigma, from);
                if (cell_index(cells, twin(arrival)) == cell_index(cells, oriented[s])) continue;
                std::vector<Dart> path;
                for (int i = 0; i < n; i++) {
                    Dart d = oriented[(s + i) % n];
                    path.push_back(d);
                    if (g.head(d) == stop) return path;
                }
            }
        }
        throw PatternError("no path to the blocking vertex");
    }
};

}  // namespace detail

inline std::pair<OColouring, EngineTrace> o_colour(const PlaneGraph& g,
                                                   const OrientationAssignment& sigma) {
    if (!g.embedded) throw ModeError("o_colour needs an embedded graph");
    if (!is_connected(g)) throw PreconditionError("o_colour needs a connected graph");
    if (!is_vogwoc(g, sigma))
        throw PreconditionError("a cut-vertex or loop-anchor is oriented nontransversely");
    detail::Engine eng;
    auto col = eng.colour(g, sigma, 0);
    if (!validate_o_colouring(g, sigma, col)) throw Error("engine produced an invalid colouring");
    return {ocolouring_from_edges(g, sigma, col), std::move(eng.trace)};
}

}  // namespace ochroma
