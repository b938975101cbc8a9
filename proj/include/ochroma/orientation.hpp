#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ochroma/plane_graph.hpp"

namespace ochroma {

// A vertex orientation partitions the four incident darts into two cells of
// two.  In an embedded graph the two darts of a cell are consecutive in the
// rotation, so there are (at most) two admissible partitions per vertex and a
// partition is named by one selector bit:
//   0: {rot[0],rot[1]} | {rot[2],rot[3]}
//   1: {rot[1],rot[2]} | {rot[3],rot[0]}
// At a vertex with two loops only the partition that pairs darts of different
// loops is admissible.  In an abstract graph all three pairings of the four
// darts are admissible; with the darts sorted a<b<c<d the selector means
//   0: {a,b}|{c,d}   1: {a,c}|{b,d}   2: {a,d}|{b,c}
using Cell = std::array<Dart, 2>;
using CellPair = std::array<Cell, 2>;

struct Orientation {
    Vertex v = -1;
    CellPair cells;
    int selector = -1;
};

struct OrientationAssignment {
    std::vector<std::uint8_t> sel;  // one selector per vertex
    bool operator==(const OrientationAssignment& o) const { return sel == o.sel; }
};

namespace detail {
inline Cell mk_cell(Dart a, Dart b) {
    return a < b ? Cell{a, b} : Cell{b, a};
}
inline CellPair mk_cells(Dart a, Dart b, Dart c, Dart d) {
    Cell x = mk_cell(a, b), y = mk_cell(c, d);
    return x < y ? CellPair{x, y} : CellPair{y, x};
}
}  // namespace detail

inline CellPair cells_of(const PlaneGraph& g, int selector, Vertex v) {
    const auto& r = g.rot[v];
    if (g.embedded) {
        if (selector == 0) return detail::mk_cells(r[0], r[1], r[2], r[3]);
        if (selector == 1) return detail::mk_cells(r[1], r[2], r[3], r[0]);
        throw SemanticError("embedded selector must be 0 or 1");
    }
    std::array<Dart, 4> s = r;
    std::sort(s.begin(), s.end());
    switch (selector) {
        case 0: return detail::mk_cells(s[0], s[1], s[2], s[3]);
        case 1: return detail::mk_cells(s[0], s[2], s[1], s[3]);
        case 2: return detail::mk_cells(s[0], s[3], s[1], s[2]);
    }
    throw SemanticError("abstract selector must be 0, 1 or 2");
}

inline CellPair cells_of(const PlaneGraph& g, const OrientationAssignment& sigma, Vertex v) {
    return cells_of(g, sigma.sel[v], v);
}

inline std::vector<int> admissible_selectors(const PlaneGraph& g, Vertex v) {
    if (!g.embedded) return {0, 1, 2};
    if (g.loops_at(v) == 2) {
        // keep the partition whose cells pair darts of different loops
        for (int s = 0; s < 2; s++) {
            auto c = cells_of(g, s, v);
            if (edge_of(c[0][0]) != edge_of(c[0][1])) return {s};
        }
        throw RotationError("double loop with no mixed cell partition");
    }
    return {0, 1};
}

inline std::vector<Orientation> admissible_orientations(const PlaneGraph& g, Vertex v) {
    std::vector<Orientation> out;
    for (int s : admissible_selectors(g, v))
        out.push_back(Orientation{v, cells_of(g, s, v), s});
    return out;
}

inline bool is_admissible(const PlaneGraph& g, Vertex v, int selector) {
    for (int s : admissible_selectors(g, v))
        if (s == selector) return true;
    return false;
}

inline int cell_index(const CellPair& cells, Dart d) {
    if (d == cells[0][0] || d == cells[0][1]) return 0;
    if (d == cells[1][0] || d == cells[1][1]) return 1;
    throw Error("dart not in either cell");
}

enum class VertexClass { plain, transverse, nontransverse };

// Loop-anchors are transverse when the loop's darts land in different cells.
// Cut-vertices are transverse when each cell has one edge into each side of
// the separation, nontransverse when each cell lies wholly in one side.
inline VertexClass classify(const PlaneGraph& g, const OrientationAssignment& sigma, Vertex v) {
    if (!g.embedded) throw ModeError("classify needs an embedded graph");
    auto cells = cells_of(g, sigma, v);
    if (g.has_loop_at(v)) {
        for (Dart d : g.rot[v]) {
            if (g.head(d) != v) continue;
            return cell_index(cells, d) != cell_index(cells, twin(d))
                       ? VertexClass::transverse
                       : VertexClass::nontransverse;
        }
    }
    std::vector<char> none(g.ne, 0);
    auto comp = detail::components(g, none, v);
    int nc = 0;
    for (Vertex u = 0; u < g.nv; u++)
        if (u != v) nc = std::max(nc, comp[u] + 1);
    if (nc >= 2) {
        int side0 = comp[g.head(cells[0][0])];
        bool straddle0 = comp[g.head(cells[0][1])] != side0;
        bool straddle1 = comp[g.head(cells[1][0])] != comp[g.head(cells[1][1])];
        if (straddle0 != straddle1) throw Error("inconsistent cut-vertex cells");
        return straddle0 ? VertexClass::transverse : VertexClass::nontransverse;
    }
    return VertexClass::plain;
}

inline bool is_vogwoc(const PlaneGraph& g, const OrientationAssignment& sigma) {
    if (!g.embedded) throw ModeError("is_vogwoc needs an embedded graph");
    for (Vertex v = 0; v < g.nv; v++) {
        VertexClass c = classify(g, sigma, v);
        if (c == VertexClass::nontransverse) return false;
    }
    return true;
}

inline long long assignment_count(const PlaneGraph& g) {
    long long n = 1;
    for (Vertex v = 0; v < g.nv; v++)
        n *= static_cast<long long>(admissible_selectors(g, v).size());
    return n;
}

// k-th assignment in mixed-radix order, vertex 0 least significant
inline OrientationAssignment assignment_at(const PlaneGraph& g, long long k) {
    OrientationAssignment a;
    a.sel.resize(g.nv);
    for (Vertex v = 0; v < g.nv; v++) {
        auto adm = admissible_selectors(g, v);
        a.sel[v] = static_cast<std::uint8_t>(adm[k % adm.size()]);
        k /= static_cast<long long>(adm.size());
    }
    return a;
}

inline std::vector<OrientationAssignment> enumerate_assignments(const PlaneGraph& g) {
    long long n = assignment_count(g);
    std::vector<OrientationAssignment> out;
    out.reserve(static_cast<size_t>(n));
    for (long long k = 0; k < n; k++) out.push_back(assignment_at(g, k));
    return out;
}

// canonical integer encoding (selector digits, vertex 0 least significant)
inline long long assignment_code(const PlaneGraph& g, const OrientationAssignment& a) {
    long long code = 0;
    int radix = g.embedded ? 2 : 3;
    for (Vertex v = g.nv - 1; v >= 0; v--) code = code * radix + a.sel[v];
    return code;
}

}  // namespace ochroma
