#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ochroma/cubic.hpp"
#include "ochroma/orientation.hpp"
#include "ochroma/plane_graph.hpp"

namespace ochroma {

// VOG text format, one record per line, '#' starts a comment:
//   V n                vertex count
//   E m                edge count
//   e id u v           edge id with darts 2*id at u and 2*id+1 at v
//   r v d0 d1 d2 d3    counterclockwise rotation at v
//   o v b              orientation selector at v
// Rotations are all-or-nothing; a document with rotations for only some
// vertices is rejected.  The canonical writer sorts records, so
// write(parse(x)) == canonical(x).
struct VogDocument {
    int nv = -1;
    int ne = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::map<Vertex, std::vector<Dart>> rotations;
    std::map<Vertex, int> selectors;
};

namespace detail {

inline SyntaxError vog_syntax(int line, const std::string& what) {
    return SyntaxError("line " + std::to_string(line) + ": " + what);
}
inline SemanticError vog_semantic(int line, const std::string& what) {
    return SemanticError("line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

inline VogDocument parse_vog_document(const std::string& text) {
    VogDocument doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<char> edge_seen;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        auto expect_int = [&](const char* what) {
            long long x;
            if (!(ls >> x)) throw detail::vog_syntax(lineno, std::string("expected ") + what);
            return static_cast<int>(x);
        };
        auto expect_end = [&]() {
            std::string junk;
            if (ls >> junk) throw detail::vog_syntax(lineno, "trailing tokens");
        };
        if (kind == "V") {
            doc.nv = expect_int("vertex count");
            expect_end();
            if (doc.nv < 0) throw detail::vog_semantic(lineno, "negative vertex count");
        } else if (kind == "E") {
            doc.ne = expect_int("edge count");
            expect_end();
            if (doc.ne < 0) throw detail::vog_semantic(lineno, "negative edge count");
            doc.edges.assign(doc.ne, {-1, -1});
            edge_seen.assign(doc.ne, 0);
        } else if (kind == "e") {
            int id = expect_int("edge id"), u = expect_int("vertex"), v = expect_int("vertex");
            expect_end();
            if (doc.ne < 0) throw detail::vog_semantic(lineno, "e record before E");
            if (id < 0 || id >= doc.ne) throw detail::vog_semantic(lineno, "edge id out of range");
            if (edge_seen[id]) throw detail::vog_semantic(lineno, "duplicate edge id");
            if (doc.nv < 0 || u < 0 || u >= doc.nv || v < 0 || v >= doc.nv)
                throw detail::vog_semantic(lineno, "unknown vertex");
            edge_seen[id] = 1;
            doc.edges[id] = {u, v};
        } else if (kind == "r") {
            int v = expect_int("vertex");
            std::vector<Dart> darts;
            for (int i = 0; i < 4; i++) darts.push_back(expect_int("dart"));
            expect_end();
            if (doc.nv < 0 || v < 0 || v >= doc.nv)
                throw detail::vog_semantic(lineno, "unknown vertex");
            if (doc.rotations.count(v)) throw detail::vog_semantic(lineno, "duplicate rotation");
            for (Dart d : darts)
                if (d < 0 || doc.ne < 0 || d >= 2 * doc.ne)
                    throw detail::vog_semantic(lineno, "dart out of range");
            doc.rotations[v] = darts;
        } else if (kind == "o") {
            int v = expect_int("vertex"), b = expect_int("selector");
            expect_end();
            if (doc.nv < 0 || v < 0 || v >= doc.nv)
                throw detail::vog_semantic(lineno, "unknown vertex");
            if (doc.selectors.count(v)) throw detail::vog_semantic(lineno, "duplicate orientation");
            if (b < 0 || b > 2) throw detail::vog_semantic(lineno, "selector out of range");
            doc.selectors[v] = b;
        } else {
            throw detail::vog_syntax(lineno, "unknown record '" + kind + "'");
        }
    }
    if (doc.nv < 0) throw SemanticError("missing V record");
    if (doc.ne < 0) throw SemanticError("missing E record");
    for (Edge e = 0; e < doc.ne; e++)
        if (!edge_seen.empty() && !edge_seen[e])
            throw SemanticError("edge " + std::to_string(e) + " not declared");
    if (!doc.rotations.empty() && static_cast<int>(doc.rotations.size()) != doc.nv)
        throw SemanticError("rotations must cover every vertex or none");
    if (!doc.selectors.empty() && static_cast<int>(doc.selectors.size()) != doc.nv)
        throw SemanticError("orientation records must cover every vertex or none");
    return doc;
}

inline std::pair<PlaneGraph, std::optional<OrientationAssignment>> parse_vog(
    const std::string& text) {
    auto doc = parse_vog_document(text);
    std::vector<std::vector<Dart>> rots;
    if (!doc.rotations.empty()) {
        rots.resize(doc.nv);
        for (auto& [v, r] : doc.rotations) rots[v] = r;
    }
    PlaneGraph g = build_graph(doc.edges, rots);
    std::optional<OrientationAssignment> sigma;
    if (!doc.selectors.empty()) {
        OrientationAssignment a;
        a.sel.resize(g.nv);
        for (auto& [v, b] : doc.selectors) {
            if (!is_admissible(g, v, b))
                throw SemanticError("selector " + std::to_string(b) +
                                    " not admissible at vertex " + std::to_string(v));
            a.sel[v] = static_cast<std::uint8_t>(b);
        }
        sigma = a;
    }
    return {g, sigma};
}

inline CubicGraph parse_vog_cubic(const std::string& text) {
    auto doc = parse_vog_document(text);
    if (!doc.rotations.empty())
        throw SemanticError("cubic documents are abstract; drop the r records");
    return build_cubic(doc.edges);
}

inline std::string write_vog(const PlaneGraph& g,
                             const std::optional<OrientationAssignment>& sigma = std::nullopt) {
    std::ostringstream out;
    out << "V " << g.nv << "\n";
    out << "E " << g.ne << "\n";
    for (Edge e = 0; e < g.ne; e++)
        out << "e " << e << " " << g.tail[2 * e] << " " << g.tail[2 * e + 1] << "\n";
    if (g.embedded)
        for (Vertex v = 0; v < g.nv; v++) {
            out << "r " << v;
            for (Dart d : g.rot[v]) out << " " << d;
            out << "\n";
        }
    if (sigma)
        for (Vertex v = 0; v < g.nv; v++)
            out << "o " << v << " " << static_cast<int>(sigma->sel[v]) << "\n";
    return out.str();
}

inline std::string write_vog(const CubicGraph& g) {
    std::ostringstream out;
    out << "V " << g.nv << "\n";
    out << "E " << g.ne << "\n";
    for (Edge e = 0; e < g.ne; e++)
        out << "e " << e << " " << g.tail[2 * e] << " " << g.tail[2 * e + 1] << "\n";
    return out.str();
}

// PD code: one crossing per line, X[a,b,c,d] with the strand labels listed
// counterclockwise.  Each label names a strand (edge) and appears exactly
// twice.  Over/under information carries no meaning here; the projection is
// what gets built.
inline PlaneGraph parse_pd(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::vector<long long>> crossings;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c))) stripped += c;
        if (stripped.empty()) continue;
        if (stripped[0] != 'X' || stripped[1] != '[' || stripped.back() != ']')
            throw detail::vog_syntax(lineno, "expected X[a,b,c,d]");
        std::string body = stripped.substr(2, stripped.size() - 3);
        std::vector<long long> labels;
        std::istringstream bs(body);
        std::string tok;
        while (std::getline(bs, tok, ',')) {
            try {
                size_t pos = 0;
                long long v = std::stoll(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                labels.push_back(v);
            } catch (const std::exception&) {
                throw detail::vog_syntax(lineno, "bad strand label '" + tok + "'");
            }
        }
        if (labels.size() != 4)
            throw NonQuadrivalentError("line " + std::to_string(lineno) + ": crossing has " +
                                       std::to_string(labels.size()) + " strands");
        crossings.push_back(labels);
    }
    std::map<long long, int> count;
    for (auto& c : crossings)
        for (long long l : c) count[l]++;
    for (auto& [l, n] : count)
        if (n != 2)
            throw LabelError("strand " + std::to_string(l) + " appears " + std::to_string(n) +
                             " times");
    std::map<long long, Edge> edge_id;
    for (auto& [l, n] : count) edge_id.emplace(l, static_cast<Edge>(edge_id.size()));
    int ne = static_cast<int>(edge_id.size());
    std::vector<std::pair<Vertex, Vertex>> edges(ne, {-1, -1});
    std::vector<std::vector<Dart>> rots(crossings.size());
    std::map<long long, int> occurrences;
    for (size_t v = 0; v < crossings.size(); v++) {
        for (long long l : crossings[v]) {
            Edge e = edge_id[l];
            int occ = occurrences[l]++;
            Dart d = 2 * e + occ;
            if (occ == 0)
                edges[e].first = static_cast<Vertex>(v);
            else
                edges[e].second = static_cast<Vertex>(v);
            rots[v].push_back(d);
        }
    }
    return build_graph(edges, rots);
}

}  // namespace ochroma
