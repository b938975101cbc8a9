#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "ochroma/catalog.hpp"
#include "ochroma/ocycle.hpp"
#include "ochroma/symmetry.hpp"

using namespace ochroma;

TEST_CASE("star6 automorphism group") {
    auto s6 = builtin("star6");
    auto auts = automorphisms(s6.g);
    CHECK(auts.size() == 48);
    for (auto& a : auts) CHECK(a.map_compatible);
}

TEST_CASE("group axioms hold on the returned list") {
    auto s6 = builtin("star6");
    auto auts = automorphisms(s6.g);
    std::set<std::vector<Dart>> maps;
    for (auto& a : auts) maps.insert(a.dart_map);
    CHECK(maps.size() == auts.size());
    // identity present
    std::vector<Dart> id(s6.g.dart_count());
    for (Dart d = 0; d < s6.g.dart_count(); d++) id[d] = d;
    CHECK(maps.count(id) == 1);
    // closure and inverses on a sample
    for (size_t i = 0; i < auts.size(); i += 7)
        for (size_t j = 0; j < auts.size(); j += 11) {
            std::vector<Dart> comp(s6.g.dart_count());
            for (Dart d = 0; d < s6.g.dart_count(); d++)
                comp[d] = auts[i].dart_map[auts[j].dart_map[d]];
            CHECK(maps.count(comp) == 1);
        }
    for (auto& a : auts) {
        std::vector<Dart> inv(s6.g.dart_count());
        for (Dart d = 0; d < s6.g.dart_count(); d++) inv[a.dart_map[d]] = d;
        CHECK(maps.count(inv) == 1);
    }
}

TEST_CASE("automorphism counts match the permutation oracle") {
    std::vector<PlaneGraph> graphs;
    for (auto name : builtin_names()) graphs.push_back(builtin(name).g);
    for (auto& inst : fixtures::grow_family(10, 5, 7)) graphs.push_back(inst.g);
    for (auto& g : graphs) {
        if (g.nv > 8) continue;
        CHECK(static_cast<long long>(automorphisms(g).size()) ==
              oracle::automorphism_count(g));
    }
}

TEST_CASE("a pinched edge breaks the symmetry") {
    // subdividing-and-resumming one edge of star6 leaves far fewer symmetries
    auto s6 = builtin("star6");
    auto sigma = s6.orientations[0].second;
    auto [g2, s2] = inverse_smooth(s6.g, sigma, 0, 8);
    (void)s2;
    auto auts = automorphisms(g2);
    CHECK(static_cast<long long>(auts.size()) == oracle::automorphism_count(g2));
    CHECK(auts.size() < 48);
}

TEST_CASE("incidence preservation") {
    auto s8 = builtin("star8");
    for (auto& a : automorphisms(s8.g)) {
        for (Dart d = 0; d < s8.g.dart_count(); d++) {
            CHECK(a.dart_map[twin(d)] == twin(a.dart_map[d]));
            CHECK(a.vertex_map[s8.g.tail[d]] == s8.g.tail[a.dart_map[d]]);
        }
    }
}

TEST_CASE("action axioms") {
    auto s6 = builtin("star6");
    auto auts = automorphisms(s6.g);
    auto sigma = s6.orientations[2].second;
    // identity acts trivially
    for (auto& a : auts) {
        bool is_id = true;
        for (Dart d = 0; d < s6.g.dart_count(); d++)
            if (a.dart_map[d] != d) is_id = false;
        if (is_id) CHECK(act(s6.g, a, sigma) == sigma);
    }
    // (a b) sigma == a (b sigma)
    std::mt19937 rng(5);
    for (int trial = 0; trial < 25; trial++) {
        auto& a = auts[rng() % auts.size()];
        auto& b = auts[rng() % auts.size()];
        auto sig = assignment_at(s6.g, static_cast<long long>(rng() % 64));
        Automorphism ab;
        ab.vertex_map.resize(s6.g.nv);
        ab.dart_map.resize(s6.g.dart_count());
        for (Vertex v = 0; v < s6.g.nv; v++) ab.vertex_map[v] = a.vertex_map[b.vertex_map[v]];
        for (Dart d = 0; d < s6.g.dart_count(); d++) ab.dart_map[d] = a.dart_map[b.dart_map[d]];
        detail::check_map_compat(s6.g, ab);
        REQUIRE(ab.map_compatible);
        CHECK(act(s6.g, ab, sig) == act(s6.g, a, act(s6.g, b, sig)));
    }
}

TEST_CASE("orbit structure of star6") {
    auto s6 = builtin("star6");
    auto rep = orbits(s6.g);
    CHECK(rep.group_order == 48);
    CHECK(rep.acting_order == 48);
    CHECK(rep.orbits.size() == 7);
    long long total = 0;
    for (auto& o : rep.orbits) total += o.size;
    CHECK(total == 64);
    CHECK(rep.burnside_ok);
}

TEST_CASE("orbit invariants match the published pairs") {
    auto s6 = builtin("star6");
    auto rep = orbits(s6.g);
    std::multiset<std::pair<size_t, size_t>> got, want = {
        {11, 3}, {11, 3}, {9, 4}, {11, 5}, {7, 2}, {9, 4}, {18, 11}};
    for (auto& o : rep.orbits)
        got.insert({enumerate_o_cycles(s6.g, o.representative).size(),
                    enumerate_decompositions(s6.g, o.representative).size()});
    CHECK(got == want);
    // each catalog representative sits in a distinct orbit
    std::set<long long> orbit_of;
    auto auts = automorphisms(s6.g);
    for (auto& [name, sigma] : s6.orientations) {
        long long best = assignment_code(s6.g, sigma);
        for (auto& a : auts)
            if (a.map_compatible)
                best = std::min(best, assignment_code(s6.g, act(s6.g, a, sigma)));
        orbit_of.insert(best);
    }
    CHECK(orbit_of.size() == 7);
}

TEST_CASE("orbit invariance of the cycle statistics") {
    auto s6 = builtin("star6");
    auto auts = automorphisms(s6.g);
    auto sigma = s6.orientations[6].second;
    auto base_cycles = enumerate_o_cycles(s6.g, sigma);
    auto base_decs = enumerate_decompositions(s6.g, sigma);
    std::multiset<int> base_lens;
    for (auto& c : base_cycles) base_lens.insert(c.length());
    for (size_t i = 0; i < auts.size(); i += 5) {
        auto img = act(s6.g, auts[i], sigma);
        auto cycles = enumerate_o_cycles(s6.g, img);
        std::multiset<int> lens;
        for (auto& c : cycles) lens.insert(c.length());
        CHECK(lens == base_lens);
        CHECK(enumerate_decompositions(s6.g, img).size() == base_decs.size());
    }
}

TEST_CASE("images of admissible orientations are admissible") {
    auto s6 = builtin("star6");
    auto auts = automorphisms(s6.g);
    for (size_t i = 0; i < auts.size(); i += 3) {
        auto img = act(s6.g, auts[i], s6.orientations[0].second);
        for (Vertex v = 0; v < s6.g.nv; v++) CHECK(is_admissible(s6.g, v, img.sel[v]));
    }
}
