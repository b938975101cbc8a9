#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "ochroma/orientation.hpp"
#include "ochroma/plane_graph.hpp"

namespace ochroma {

// Abstract graph automorphisms at dart level: a dart bijection commuting with
// twin and inducing a vertex bijection.  Parallel edges may be permuted and
// loops flipped, so the dart group can be larger than the vertex action
// suggests.  Elements are flagged map-compatible when they carry every
// rotation to a rotation, all with one global handedness.
struct Automorphism {
    std::vector<Vertex> vertex_map;
    std::vector<Dart> dart_map;
    bool map_compatible = false;
    bool reflecting = false;
};

namespace detail {

// multiset of edges between u,v (loops counted once per loop edge)
inline std::map<std::pair<Vertex, Vertex>, std::vector<Edge>> edge_classes(const PlaneGraph& g) {
    std::map<std::pair<Vertex, Vertex>, std::vector<Edge>> cls;
    for (Edge e = 0; e < g.ne; e++) {
        auto [u, v] = g.ends(e);
        cls[{std::min(u, v), std::max(u, v)}].push_back(e);
    }
    return cls;
}

inline void check_map_compat(const PlaneGraph& g, Automorphism& a) {
    a.map_compatible = false;
    a.reflecting = false;
    if (!g.embedded) return;
    for (int refl = 0; refl < 2; refl++) {
        bool ok = true;
        for (Vertex v = 0; v < g.nv && ok; v++) {
            std::array<Dart, 4> img{};
            for (int i = 0; i < 4; i++)
                img[i] = a.dart_map[g.rot[v][refl ? 3 - i : i]];
            const auto& target = g.rot[a.vertex_map[v]];
            bool cyclic = false;
            for (int s = 0; s < 4 && !cyclic; s++) {
                bool match = true;
                for (int i = 0; i < 4; i++)
                    if (img[(s + i) % 4] != target[i]) { match = false; break; }
                cyclic = match;
            }
            ok = cyclic;
        }
        if (ok) {
            a.map_compatible = true;
            a.reflecting = (refl == 1);
            return;
        }
    }
}

}  // namespace detail

// The full abstract automorphism group by backtracking on vertex images,
// extended over parallel-class permutations and loop flips.
inline std::vector<Automorphism> automorphisms(const PlaneGraph& g) {
    std::vector<Automorphism> out;
    auto cls = detail::edge_classes(g);
    // adjacency multiplicity matrix (loops separately)
    std::vector<std::vector<int>> mult(g.nv, std::vector<int>(g.nv, 0));
    for (auto& [key, edges] : cls) mult[key.first][key.second] = static_cast<int>(edges.size());
    auto multiplicity = [&](Vertex a, Vertex b) { return mult[std::min(a, b)][std::max(a, b)]; };

    std::vector<Vertex> perm(g.nv, -1);
    std::vector<char> used(g.nv, 0);

    // enumerate edge bijections consistent with a vertex permutation
    auto emit = [&]() {
        std::vector<std::vector<Edge>> src, dst;
        for (auto& [key, edges] : cls) {
            auto [u, v] = key;
            Vertex pu = perm[u], pv = perm[v];
            auto it = cls.find({std::min(pu, pv), std::max(pu, pv)});
            if (it == cls.end() || it->second.size() != edges.size()) return;  // cannot happen
            src.push_back(edges);
            dst.push_back(it->second);
        }
        // for each class, all permutations of the destination edges; loops
        // additionally flip their darts
        std::vector<std::vector<int>> choice(src.size());
        auto rec = [&](auto&& self, size_t ci) -> void {
            if (ci == src.size()) {
                // assemble dart maps, expanding loop flips
                std::vector<std::pair<Edge, Edge>> epairs;
                std::vector<Edge> loops;
                for (size_t i = 0; i < src.size(); i++)
                    for (size_t j = 0; j < src[i].size(); j++) {
                        epairs.push_back({src[i][j], dst[i][choice[i][j]]});
                        if (g.is_loop(src[i][j])) loops.push_back(src[i][j]);
                    }
                int flips = 1 << loops.size();
                for (int mask = 0; mask < flips; mask++) {
                    Automorphism a;
                    a.vertex_map = perm;
                    a.dart_map.assign(g.dart_count(), -1);
                    bool ok = true;
                    for (auto& [e, f] : epairs) {
                        Dart d0 = 2 * e, d1 = 2 * e + 1;
                        Dart t0 = 2 * f, t1 = 2 * f + 1;
                        bool flip;
                        if (g.is_loop(e)) {
                            size_t li = std::find(loops.begin(), loops.end(), e) - loops.begin();
                            flip = (mask >> li) & 1;
                        } else {
                            // direction forced by the vertex images
                            if (perm[g.tail[d0]] == g.tail[t0] && perm[g.tail[d1]] == g.tail[t1])
                                flip = false;
                            else if (perm[g.tail[d0]] == g.tail[t1] &&
                                     perm[g.tail[d1]] == g.tail[t0])
                                flip = true;
                            else {
                                ok = false;
                                break;
                            }
                        }
                        a.dart_map[d0] = flip ? t1 : t0;
                        a.dart_map[d1] = flip ? t0 : t1;
                    }
                    if (!ok) continue;
                    detail::check_map_compat(g, a);
                    out.push_back(std::move(a));
                }
                return;
            }
            std::vector<int> idx(src[ci].size());
            std::iota(idx.begin(), idx.end(), 0);
            do {
                choice[ci] = idx;
                self(self, ci + 1);
            } while (std::next_permutation(idx.begin(), idx.end()));
        };
        rec(rec, 0);
    };

    auto bt = [&](auto&& self, Vertex v) -> void {
        if (v == g.nv) {
            emit();
            return;
        }
        for (Vertex img = 0; img < g.nv; img++) {
            if (used[img]) continue;
            if (multiplicity(v, v) != multiplicity(img, img)) continue;
            bool ok = true;
            for (Vertex u = 0; u < v && ok; u++)
                if (multiplicity(u, v) != multiplicity(perm[u], img)) ok = false;
            if (!ok) continue;
            perm[v] = img;
            used[img] = 1;
            self(self, v + 1);
            used[img] = 0;
            perm[v] = -1;
        }
    };
    bt(bt, 0);
    return out;
}

// the natural action on orientation assignments; only map-compatible
// elements act on embedded graphs
inline OrientationAssignment act(const PlaneGraph& g, const Automorphism& a,
                                 const OrientationAssignment& sigma) {
    if (g.embedded && !a.map_compatible)
        throw CompatibilityError("automorphism does not respect the embedding");
    OrientationAssignment out;
    out.sel.assign(g.nv, 0);
    for (Vertex v = 0; v < g.nv; v++) {
        auto cells = cells_of(g, sigma, v);
        CellPair img = detail::mk_cells(a.dart_map[cells[0][0]], a.dart_map[cells[0][1]],
                                        a.dart_map[cells[1][0]], a.dart_map[cells[1][1]]);
        Vertex w = a.vertex_map[v];
        bool found = false;
        for (int s = 0; s < (g.embedded ? 2 : 3); s++)
            if (cells_of(g, s, w) == img) {
                out.sel[w] = static_cast<std::uint8_t>(s);
                found = true;
                break;
            }
        if (!found) throw CompatibilityError("image cells are not an admissible orientation");
    }
    return out;
}

struct Orbit {
    OrientationAssignment representative;  // minimal assignment code in the orbit
    long long size = 0;
};

struct OrbitReport {
    std::vector<Orbit> orbits;
    long long group_order = 0;         // full abstract group
    long long acting_order = 0;        // map-compatible subgroup
    bool burnside_ok = false;
};

inline OrbitReport orbits(const PlaneGraph& g) {
    if (!g.embedded) throw ModeError("orbits need an embedded graph");
    auto auts = automorphisms(g);
    std::vector<const Automorphism*> acting;
    for (auto& a : auts)
        if (a.map_compatible) acting.push_back(&a);
    OrbitReport rep;
    rep.group_order = static_cast<long long>(auts.size());
    rep.acting_order = static_cast<long long>(acting.size());

    long long n = assignment_count(g);
    std::map<long long, long long> code_to_index;
    std::vector<OrientationAssignment> all;
    for (long long k = 0; k < n; k++) {
        all.push_back(assignment_at(g, k));
        code_to_index[assignment_code(g, all.back())] = k;
    }
    std::vector<long long> owner(n, -1);
    long long fixed_total = 0;
    for (long long k = 0; k < n; k++) {
        if (owner[k] >= 0) continue;
        // sweep the orbit of assignment k
        std::vector<long long> members;
        long long best = k;
        for (auto* a : acting) {
            auto img = act(g, *a, all[k]);
            long long idx = code_to_index.at(assignment_code(g, img));
            if (owner[idx] < 0) {
                owner[idx] = k;
                members.push_back(idx);
            }
            best = std::min(best, idx);
        }
        // the orbit of k is exactly the image set under the whole group
        Orbit o;
        o.representative = all[best];
        o.size = static_cast<long long>(members.size());
        rep.orbits.push_back(std::move(o));
    }
    for (auto* a : acting)
        for (long long k = 0; k < n; k++)
            if (code_to_index.at(assignment_code(g, act(g, *a, all[k]))) == k) fixed_total++;
    rep.burnside_ok = !acting.empty() &&
                      fixed_total == static_cast<long long>(rep.orbits.size()) * rep.acting_order;
    std::sort(rep.orbits.begin(), rep.orbits.end(), [&](const Orbit& a, const Orbit& b) {
        return assignment_code(g, a.representative) < assignment_code(g, b.representative);
    });
    return rep;
}

}  // namespace ochroma
