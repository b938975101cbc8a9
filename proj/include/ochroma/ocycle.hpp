#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "ochroma/orientation.hpp"
#include "ochroma/plane_graph.hpp"

namespace ochroma {

// Closed walk obeying the transition rule (consecutive edges in different
// cells at every visited vertex, the closing vertex included) and visiting no
// vertex twice.  darts[i] is the dart leaving the i-th vertex of the cycle;
// a loop forms a cycle of length 1 when its darts lie in different cells.
// Canonical form: lexicographically minimal dart sequence over all rotations
// of both traversal directions.
struct OCycle {
    std::vector<Dart> darts;

    int length() const { return static_cast<int>(darts.size()); }
    bool operator<(const OCycle& o) const { return darts < o.darts; }
    bool operator==(const OCycle& o) const { return darts == o.darts; }

    std::vector<Vertex> vertices(const PlaneGraph& g) const {
        std::vector<Vertex> vs;
        vs.reserve(darts.size());
        for (Dart d : darts) vs.push_back(g.tail[d]);
        return vs;
    }
    std::vector<Edge> edges() const {
        std::vector<Edge> es;
        es.reserve(darts.size());
        for (Dart d : darts) es.push_back(edge_of(d));
        return es;
    }
};

inline std::vector<Dart> canonical_cycle(std::vector<Dart> seq) {
    const size_t k = seq.size();
    std::vector<Dart> rev(k);
    for (size_t i = 0; i < k; i++) rev[i] = twin(seq[k - 1 - i]);
    std::vector<Dart> best;
    for (const auto& base : {seq, rev}) {
        for (size_t s = 0; s < k; s++) {
            std::vector<Dart> r(base.begin() + s, base.end());
            r.insert(r.end(), base.begin(), base.begin() + s);
            if (best.empty() || r < best) best = std::move(r);
        }
    }
    return best;
}

// The two darts of the cell at head(d) other than the one the walk came in on.
inline Cell step_options(const PlaneGraph& g, const OrientationAssignment& sigma, Dart d) {
    Dart in = twin(d);
    Vertex w = g.tail[in];
    auto cells = cells_of(g, sigma, w);
    return cells[1 - cell_index(cells, in)];
}

namespace detail {

inline void ocycle_dfs(const PlaneGraph& g, const OrientationAssignment& sigma,
                       Vertex start, std::vector<Dart>& path,
                       std::vector<char>& on_path_vertex, std::vector<char>& on_path_edge,
                       std::set<std::vector<Dart>>& out) {
    Dart d = path.back();
    Dart in = twin(d);
    Vertex w = g.tail[in];
    if (w == start) {
        auto cells = cells_of(g, sigma, w);
        if (cell_index(cells, in) != cell_index(cells, path.front()))
            out.insert(canonical_cycle(path));
        return;
    }
    if (on_path_vertex[w]) return;
    on_path_vertex[w] = 1;
    for (Dart nd : step_options(g, sigma, d)) {
        if (on_path_edge[edge_of(nd)]) continue;
        path.push_back(nd);
        on_path_edge[edge_of(nd)] = 1;
        ocycle_dfs(g, sigma, start, path, on_path_vertex, on_path_edge, out);
        on_path_edge[edge_of(nd)] = 0;
        path.pop_back();
    }
    on_path_vertex[w] = 0;
}

}  // namespace detail

inline std::vector<OCycle> enumerate_o_cycles(const PlaneGraph& g,
                                              const OrientationAssignment& sigma) {
    std::set<std::vector<Dart>> found;
    std::vector<char> on_v(g.nv, 0), on_e(g.ne, 0);
    for (Dart d0 = 0; d0 < g.dart_count(); d0++) {
        std::vector<Dart> path{d0};
        on_v[g.tail[d0]] = 1;
        on_e[edge_of(d0)] = 1;
        detail::ocycle_dfs(g, sigma, g.tail[d0], path, on_v, on_e, found);
        on_v[g.tail[d0]] = 0;
        on_e[edge_of(d0)] = 0;
    }
    std::vector<OCycle> out;
    out.reserve(found.size());
    for (auto& seq : found) out.push_back(OCycle{seq});
    return out;  // std::set iteration is already sorted
}

// Edge partition into o-cycles. Exactly two distinct cycles pass through each
// vertex.
struct Decomposition {
    std::vector<OCycle> cycles;
    std::vector<int> cycle_of_edge;  // edge -> index into cycles
};

namespace detail {

struct EdgeSet {
    std::vector<std::uint64_t> w;
    explicit EdgeSet(int n) : w((n + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool intersects(const EdgeSet& o) const {
        for (size_t i = 0; i < w.size(); i++)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    void add(const EdgeSet& o) {
        for (size_t i = 0; i < w.size(); i++) w[i] |= o.w[i];
    }
    void remove(const EdgeSet& o) {
        for (size_t i = 0; i < w.size(); i++) w[i] &= ~o.w[i];
    }
};

// exact cover of the edge set by cycles; emits index vectors (sorted)
inline void cover_dfs(int ne, const std::vector<EdgeSet>& masks,
                      const std::vector<std::vector<int>>& by_edge, EdgeSet& covered,
                      int next_edge, std::vector<int>& chosen,
                      std::vector<std::vector<int>>& out, bool first_only) {
    while (next_edge < ne && covered.test(next_edge)) next_edge++;
    if (next_edge == ne) {
        std::vector<int> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
        return;
    }
    for (int ci : by_edge[next_edge]) {
        if (masks[ci].intersects(covered)) continue;
        covered.add(masks[ci]);
        chosen.push_back(ci);
        cover_dfs(ne, masks, by_edge, covered, next_edge + 1, chosen, out, first_only);
        chosen.pop_back();
        covered.remove(masks[ci]);
        if (first_only && !out.empty()) return;
    }
}

inline std::vector<std::vector<int>> exact_covers(const PlaneGraph& g,
                                                  const std::vector<OCycle>& cycles,
                                                  bool first_only) {
    std::vector<EdgeSet> masks;
    masks.reserve(cycles.size());
    std::vector<std::vector<int>> by_edge(g.ne);
    for (size_t i = 0; i < cycles.size(); i++) {
        EdgeSet m(g.ne);
        for (Dart d : cycles[i].darts) m.set(edge_of(d));
        masks.push_back(std::move(m));
        for (Dart d : cycles[i].darts) by_edge[edge_of(d)].push_back(static_cast<int>(i));
    }
    EdgeSet covered(g.ne);
    std::vector<int> chosen;
    std::vector<std::vector<int>> out;
    cover_dfs(g.ne, masks, by_edge, covered, 0, chosen, out, first_only);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

inline std::vector<Decomposition> enumerate_decompositions(const PlaneGraph& g,
                                                           const OrientationAssignment& sigma) {
    auto cycles = enumerate_o_cycles(g, sigma);
    auto covers = detail::exact_covers(g, cycles, false);
    std::vector<Decomposition> out;
    out.reserve(covers.size());
    for (auto& ids : covers) {
        Decomposition d;
        d.cycle_of_edge.assign(g.ne, -1);
        for (int ci : ids) {
            for (Dart dd : cycles[ci].darts)
                d.cycle_of_edge[edge_of(dd)] = static_cast<int>(d.cycles.size());
            d.cycles.push_back(cycles[ci]);
        }
        out.push_back(std::move(d));
    }
    return out;
}

inline bool is_o_colourable(const PlaneGraph& g, const OrientationAssignment& sigma) {
    auto cycles = enumerate_o_cycles(g, sigma);
    return !detail::exact_covers(g, cycles, true).empty();
}

inline std::vector<std::vector<int>> cycle_usage(const std::vector<OCycle>& cycles,
                                                 const std::vector<Decomposition>& decs) {
    std::vector<std::vector<int>> usage(cycles.size());
    for (size_t di = 0; di < decs.size(); di++)
        for (const auto& c : decs[di].cycles)
            for (size_t ci = 0; ci < cycles.size(); ci++)
                if (cycles[ci] == c) usage[ci].push_back(static_cast<int>(di));
    return usage;
}

struct OColouring {
    Decomposition dec;
    std::vector<int> colour;  // cycle index -> colour id
    int palette = 0;

    std::vector<int> edge_colours() const {
        std::vector<int> ec(dec.cycle_of_edge.size());
        for (size_t e = 0; e < ec.size(); e++) ec[e] = colour[dec.cycle_of_edge[e]];
        return ec;
    }
};

namespace detail {

// exact chromatic number by branch and bound with a greedy clique lower bound
struct ChromaticSolver {
    int n;
    std::vector<std::vector<char>> adj;
    std::vector<int> best_col, col;
    int best;

    explicit ChromaticSolver(const std::vector<std::vector<char>>& a)
        : n(static_cast<int>(a.size())), adj(a), col(n, -1), best(n + 1) {}

    int clique_bound() const {
        std::vector<int> order(n);
        for (int i = 0; i < n; i++) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int da = 0, db = 0;
            for (int j = 0; j < n; j++) da += adj[a][j], db += adj[b][j];
            return da > db;
        });
        std::vector<int> clique;
        for (int v : order) {
            bool ok = true;
            for (int u : clique)
                if (!adj[u][v]) { ok = false; break; }
            if (ok) clique.push_back(v);
        }
        return static_cast<int>(clique.size());
    }

    void bt(int i, int used) {
        if (used >= best) return;
        if (i == n) {
            best = used;
            best_col = col;
            return;
        }
        for (int c = 0; c < used; c++) {
            bool ok = true;
            for (int j = 0; j < i; j++)
                if (adj[i][j] && col[j] == c) { ok = false; break; }
            if (ok) {
                col[i] = c;
                bt(i + 1, used);
            }
        }
        col[i] = used;
        bt(i + 1, used + 1);
        col[i] = -1;
    }

    std::pair<int, std::vector<int>> solve() {
        if (n == 0) return {0, {}};
        int lb = clique_bound();
        bt(0, 0);
        if (best < lb) throw Error("chromatic bound broken");
        return {best, best_col};
    }
};

}  // namespace detail

inline std::pair<int, OColouring> min_colours(const PlaneGraph& g, const Decomposition& dec) {
    int m = static_cast<int>(dec.cycles.size());
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    std::vector<std::vector<char>> hits(m, std::vector<char>(g.nv, 0));
    for (int i = 0; i < m; i++)
        for (Dart d : dec.cycles[i].darts) hits[i][g.tail[d]] = 1;
    for (int i = 0; i < m; i++)
        for (int j = i + 1; j < m; j++)
            for (Vertex v = 0; v < g.nv; v++)
                if (hits[i][v] && hits[j][v]) { adj[i][j] = adj[j][i] = 1; break; }
    auto [k, col] = detail::ChromaticSolver(adj).solve();
    OColouring oc;
    oc.dec = dec;
    oc.colour = col;
    oc.palette = k;
    return {k, oc};
}

inline std::pair<int, OColouring> chi_o(const PlaneGraph& g, const OrientationAssignment& sigma) {
    auto decs = enumerate_decompositions(g, sigma);
    if (decs.empty()) throw NotOColourableError("no o-cycle decomposition exists");
    int best = -1;
    OColouring witness;
    for (const auto& d : decs) {
        auto [k, oc] = min_colours(g, d);
        if (best < 0 || k < best) {
            best = k;
            witness = oc;
        }
    }
    return {best, witness};
}

// Rebuild an OColouring from a raw edge-colour map, reconstructing each
// monochromatic class into its o-cycles.  Throws ValidationError when the map
// is not an o-colouring.
inline OColouring ocolouring_from_edges(const PlaneGraph& g, const OrientationAssignment& sigma,
                                        const std::vector<int>& edge_colour) {
    if (static_cast<int>(edge_colour.size()) != g.ne)
        throw ValidationError("edge colour map not total");
    OColouring oc;
    oc.dec.cycle_of_edge.assign(g.ne, -1);
    std::vector<char> used(g.dart_count(), 0);
    for (Dart d0 = 0; d0 < g.dart_count(); d0++) {
        if (used[d0]) continue;
        // trace the monochromatic walk through d0
        std::vector<Dart> seq;
        Dart d = d0;
        int col = edge_colour[edge_of(d0)];
        std::vector<char> visited(g.nv, 0);
        do {
            seq.push_back(d);
            used[d] = used[twin(d)] = 1;
            Vertex w = g.head(d);
            if (visited[w]) throw ValidationError("monochromatic class is not vertex-simple");
            visited[w] = 1;
            auto opts = step_options(g, sigma, d);
            Dart next = -1;
            for (Dart nd : opts)
                if (edge_colour[edge_of(nd)] == col && edge_of(nd) != edge_of(d)) {
                    if (next >= 0) throw ValidationError("colour appears thrice at a vertex");
                    next = nd;
                }
            if (next < 0) {
                // a loop closes onto itself
                if (g.tail[d0] == w && seq.size() == 1 &&
                    cell_index(cells_of(g, sigma, w), d0) !=
                        cell_index(cells_of(g, sigma, w), twin(d0)))
                    break;
                throw ValidationError("monochromatic walk cannot continue");
            }
            d = next;
        } while (d != d0);
        OCycle c{canonical_cycle(seq)};
        for (Dart dd : c.darts) {
            if (oc.dec.cycle_of_edge[edge_of(dd)] != -1)
                throw ValidationError("edge covered twice");
            oc.dec.cycle_of_edge[edge_of(dd)] = static_cast<int>(oc.dec.cycles.size());
        }
        oc.dec.cycles.push_back(c);
        oc.colour.push_back(col);
    }
    for (Edge e = 0; e < g.ne; e++)
        if (oc.dec.cycle_of_edge[e] < 0) throw ValidationError("edge not covered");
    int pal = 0;
    for (int c : oc.colour) pal = std::max(pal, c + 1);
    oc.palette = pal;
    return oc;
}

// true iff at each vertex exactly two colours appear with both present in
// each cell; colour classes are then automatically vertex-disjoint o-cycles
inline bool validate_o_colouring(const PlaneGraph& g, const OrientationAssignment& sigma,
                                 const std::vector<int>& edge_colour) {
    if (static_cast<int>(edge_colour.size()) != g.ne) return false;
    for (int c : edge_colour)
        if (c < 0) return false;
    for (Vertex v = 0; v < g.nv; v++) {
        auto cells = cells_of(g, sigma, v);
        int c00 = edge_colour[edge_of(cells[0][0])];
        int c01 = edge_colour[edge_of(cells[0][1])];
        int c10 = edge_colour[edge_of(cells[1][0])];
        int c11 = edge_colour[edge_of(cells[1][1])];
        if (c00 == c01 || c10 == c11) return false;
        if ((c00 != c10 && c00 != c11) || (c01 != c10 && c01 != c11)) return false;
    }
    return true;
}

}  // namespace ochroma
