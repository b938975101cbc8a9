#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ochroma/catalog.hpp"
#include "ochroma/report.hpp"

using namespace ochroma;

namespace {

std::string golden_dir() {
    if (const char* env = std::getenv("OCHROMA_GOLDEN_DIR")) return env;
    return OCHROMA_DEFAULT_GOLDEN_DIR;
}

// compare against tests/golden/<name>.txt; regenerate with OCHROMA_REGEN=1
void check_golden(const std::string& name, const std::string& got) {
    std::string path = golden_dir() + "/" + name + ".txt";
    if (std::getenv("OCHROMA_REGEN")) {
        std::ofstream out(path, std::ios::binary);
        out << got;
        SUCCEED("regenerated " + path);
        return;
    }
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream want;
    want << in.rdbuf();
    CHECK(got == want.str());
}

}  // namespace

TEST_CASE("golden analyze tables") {
    auto s6 = builtin("star6");
    for (auto& [name, sigma] : s6.orientations)
        check_golden("analyze_star6_" + name,
                     analyze_report(s6.g, sigma, "star6", name));
    auto s8 = builtin("star8");
    check_golden("analyze_star8_ex42",
                 analyze_report(s8.g, s8.orientations[0].second, "star8", "ex42"));
    auto w = builtin("whitehead");
    check_golden("analyze_whitehead_ex41",
                 analyze_report(w.g, w.orientations[0].second, "whitehead", "ex41"));
    auto a = builtin("fig7a");
    check_golden("analyze_fig7a",
                 analyze_report(a.g, assignment_at(a.g, 0), "fig7a", "unique"));
}

TEST_CASE("golden tsv table") {
    auto s8 = builtin("star8");
    check_golden("analyze_star8_ex42_tsv",
                 analyze_report(s8.g, s8.orientations[0].second, "star8", "ex42",
                                ReportFormat::tsv));
}

TEST_CASE("golden orbit report") {
    auto s6 = builtin("star6");
    check_golden("orbits_star6", orbit_report(s6.g, "star6"));
}

TEST_CASE("golden engine trace") {
    auto s6 = builtin("star6");
    check_golden("engine_star6_orbit5",
                 engine_report(s6.g, s6.orientations[4].second, "star6", "orbit5"));
}

TEST_CASE("reports are byte-stable across runs") {
    auto s6 = builtin("star6");
    auto one = analyze_report(s6.g, s6.orientations[6].second, "star6", "orbit7");
    auto two = analyze_report(s6.g, s6.orientations[6].second, "star6", "orbit7");
    CHECK(one == two);
}
