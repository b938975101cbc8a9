#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ochroma/catalog.hpp"
#include "ochroma/engine.hpp"
#include "ochroma/ocycle.hpp"
#include "ochroma/symmetry.hpp"

namespace ochroma {

enum class ReportFormat { text, tsv };

namespace report_detail {

inline std::vector<Vertex> canonical_vertex_cycle(const PlaneGraph& g, const OCycle& c) {
    auto vs = c.vertices(g);
    size_t k = vs.size();
    std::vector<Vertex> best;
    for (size_t s = 0; s < k; s++) {
        for (int dir = 0; dir < 2; dir++) {
            std::vector<Vertex> cand;
            for (size_t i = 0; i < k; i++) {
                size_t idx = dir == 0 ? (s + i) % k : (s + k - i) % k;
                cand.push_back(vs[idx]);
            }
            if (best.empty() || cand < best) best = std::move(cand);
        }
    }
    return best;
}

inline std::string vseq_string(const PlaneGraph& g, const OCycle& c) {
    auto vs = canonical_vertex_cycle(g, c);
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < vs.size(); i++) out << vs[i] << ",";
    out << vs.front() << ")";
    return out.str();
}

inline std::string edge_list_string(const OCycle& c) {
    auto es = c.edges();
    std::sort(es.begin(), es.end());
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < es.size(); i++) out << (i ? "," : "") << es[i];
    out << "]";
    return out.str();
}

inline bool is_simple(const PlaneGraph& g) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (Edge e = 0; e < g.ne; e++) {
        auto [u, v] = g.ends(e);
        if (u == v) return false;
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second) return false;
    }
    return true;
}

inline std::string bits_string(const OrientationAssignment& a) {
    std::string s;
    for (auto b : a.sel) s += static_cast<char>('0' + b);
    return s;
}

inline std::string join_ints(const std::vector<int>& xs, const char* sep = ",") {
    std::ostringstream out;
    for (size_t i = 0; i < xs.size(); i++) out << (i ? sep : "") << xs[i];
    return out.str();
}

}  // namespace report_detail

// The o-cycle table, the o-colourings (edge decompositions), and chi_o with a
// witness; deterministic byte-for-byte.
inline std::string analyze_report(const PlaneGraph& g, const OrientationAssignment& sigma,
                                  const std::string& gname, const std::string& oname,
                                  ReportFormat fmt = ReportFormat::text) {
    using namespace report_detail;
    auto cycles = enumerate_o_cycles(g, sigma);
    auto decs = enumerate_decompositions(g, sigma);
    auto usage = cycle_usage(cycles, decs);

    // display order: long cycles first, then lexicographic
    std::vector<int> order(cycles.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = static_cast<int>(i);
    std::vector<std::string> vstr(cycles.size());
    for (size_t i = 0; i < cycles.size(); i++) vstr[i] = vseq_string(g, cycles[i]);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (cycles[a].length() != cycles[b].length())
            return cycles[a].length() > cycles[b].length();
        return vstr[a] < vstr[b];
    });
    bool simple = is_simple(g);

    std::ostringstream out;
    if (fmt == ReportFormat::text) {
        out << "graph " << gname << ": " << g.nv << " vertices, " << g.ne << " edges";
        if (g.embedded) out << ", " << detail::trace_faces(g).size() << " faces";
        out << "\n";
        out << "orientation " << oname << ": bits " << bits_string(sigma) << "\n";
        out << "o-cycles (" << cycles.size() << "):\n";
        for (int i : order) {
            out << "  " << vstr[i];
            if (!simple) out << " edges " << edge_list_string(cycles[i]);
            out << "  length " << cycles[i].length();
            out << "  colourings: " << (usage[i].empty() ? "-" : join_ints(usage[i]));
            out << "\n";
        }
        out << "o-colourings (" << decs.size() << "):\n";
        for (size_t di = 0; di < decs.size(); di++) {
            out << "  " << di << ":";
            std::vector<std::string> parts;
            for (const auto& c : decs[di].cycles) {
                std::string p = vseq_string(g, c);
                if (!simple) p += " " + edge_list_string(c);
                parts.push_back(p);
            }
            std::sort(parts.begin(), parts.end());
            for (auto& p : parts) out << " " << p;
            out << "\n";
        }
        if (decs.empty()) {
            out << "chi_o: not o-colourable\n";
        } else {
            auto [k, wit] = chi_o(g, sigma);
            out << "chi_o: " << k << "\n";
            auto ec = wit.edge_colours();
            out << "witness:";
            for (Edge e = 0; e < g.ne; e++) out << " " << ec[e];
            out << "\n";
        }
    } else {
        out << "graph\t" << gname << "\t" << g.nv << "\t" << g.ne << "\n";
        out << "orientation\t" << oname << "\t" << bits_string(sigma) << "\n";
        for (int i : order)
            out << "cycle\t" << vstr[i] << "\t" << cycles[i].length() << "\t"
                << (usage[i].empty() ? "-" : join_ints(usage[i])) << "\n";
        for (size_t di = 0; di < decs.size(); di++) {
            out << "colouring\t" << di;
            std::vector<std::string> parts;
            for (const auto& c : decs[di].cycles) parts.push_back(vseq_string(g, c));
            std::sort(parts.begin(), parts.end());
            for (auto& p : parts) out << "\t" << p;
            out << "\n";
        }
        if (!decs.empty()) out << "chi_o\t" << chi_o(g, sigma).first << "\n";
    }
    return out.str();
}

inline std::string orbit_report(const PlaneGraph& g, const std::string& gname,
                                ReportFormat fmt = ReportFormat::text) {
    using namespace report_detail;
    auto rep = orbits(g);
    std::ostringstream out;
    if (fmt == ReportFormat::text) {
        out << "graph " << gname << ": " << g.nv << " vertices, " << g.ne << " edges\n";
        out << rep.orbits.size() << " orbits (group order " << rep.group_order << ")\n";
        long long total = 0;
        for (size_t i = 0; i < rep.orbits.size(); i++) {
            const auto& o = rep.orbits[i];
            auto cycles = enumerate_o_cycles(g, o.representative);
            auto decs = enumerate_decompositions(g, o.representative);
            out << "  orbit " << i << ": size " << o.size << "  bits "
                << bits_string(o.representative) << "  o-cycles " << cycles.size()
                << "  o-colourings " << decs.size() << "\n";
            total += o.size;
        }
        out << "assignments: " << total << "\n";
        out << "burnside: " << (rep.burnside_ok ? "ok" : "FAILED") << "\n";
    } else {
        out << "orbits\t" << rep.orbits.size() << "\t" << rep.group_order << "\n";
        for (size_t i = 0; i < rep.orbits.size(); i++) {
            const auto& o = rep.orbits[i];
            out << "orbit\t" << i << "\t" << o.size << "\t" << bits_string(o.representative)
                << "\t" << enumerate_o_cycles(g, o.representative).size() << "\t"
                << enumerate_decompositions(g, o.representative).size() << "\n";
        }
    }
    return out.str();
}

inline std::string engine_report(const PlaneGraph& g, const OrientationAssignment& sigma,
                                 const std::string& gname, const std::string& oname) {
    using namespace report_detail;
    auto [oc, tr] = o_colour(g, sigma);
    std::ostringstream out;
    out << "graph " << gname << ", orientation " << oname << ": bits " << bits_string(sigma)
        << "\n";
    out << "palette: " << oc.palette << "\n";
    auto ec = oc.edge_colours();
    out << "colours:";
    for (Edge e = 0; e < g.ne; e++) out << " " << ec[e];
    out << "\n";
    out << "trace:\n" << tr.to_text();
    return out.str();
}

}  // namespace ochroma
