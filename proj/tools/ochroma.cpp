// command line front end: analyze / orbits / tait / engine / snark-scan / validate
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "ochroma/catalog.hpp"
#include "ochroma/engine.hpp"
#include "ochroma/report.hpp"
#include "ochroma/tait.hpp"
#include "ochroma/vog.hpp"

using namespace ochroma;

namespace {

struct Input {
    PlaneGraph g;
    std::optional<OrientationAssignment> sigma;
    std::string gname;
    std::vector<std::pair<std::string, OrientationAssignment>> named;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SemanticError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Input load_input(const std::string& builtin_name, const std::string& file,
                 const std::string& pd) {
    int given = !builtin_name.empty() + !file.empty() + !pd.empty();
    if (given != 1) throw SemanticError("give exactly one of --builtin, --file, --pd");
    Input in;
    if (!builtin_name.empty()) {
        auto b = builtin(builtin_name);
        in.g = b.g;
        in.gname = builtin_name;
        in.named = b.orientations;
    } else if (!file.empty()) {
        auto [g, sigma] = parse_vog(slurp(file));
        in.g = g;
        in.sigma = sigma;
        in.gname = file;
    } else {
        in.g = parse_pd(slurp(pd));
        in.gname = pd;
    }
    return in;
}

std::pair<OrientationAssignment, std::string> resolve_orientation(const Input& in,
                                                                  const std::string& spec) {
    if (spec.empty()) {
        if (in.sigma) return {*in.sigma, "file"};
        if (assignment_count(in.g) == 1) return {assignment_at(in.g, 0), "unique"};
        throw SemanticError("an orientation is required (--orientation)");
    }
    for (const auto& [name, a] : in.named)
        if (name == spec) return {a, name};
    // integer bitmask: bit v selects the partition at vertex v
    bool numeric = !spec.empty() && spec.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
        long long mask = std::stoll(spec);
        OrientationAssignment a;
        a.sel.resize(in.g.nv);
        for (Vertex v = 0; v < in.g.nv; v++) {
            int b = static_cast<int>((mask >> v) & 1);
            if (!is_admissible(in.g, v, b))
                throw SemanticError("bitmask selects an inadmissible orientation at vertex " +
                                    std::to_string(v));
            a.sel[v] = static_cast<std::uint8_t>(b);
        }
        return {a, spec};
    }
    // otherwise an o-record file
    auto [g2, sigma2] = parse_vog(slurp(spec));
    if (g2.nv != in.g.nv || g2.ne != in.g.ne)
        throw SemanticError("orientation file does not match the graph");
    if (!sigma2) throw SemanticError("orientation file carries no o records");
    return {*sigma2, spec};
}

void parallel_for(int jobs, int n, const std::function<void(int)>& body) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; i++) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < std::min(jobs, n); t++)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"o-cycles and o-colourings of vertex-oriented 4-regular plane graphs"};
    app.require_subcommand(1);

    std::string builtin_name, file, pd, orientation, colouring_file, format = "text";
    std::string direction = "expand";
    int matching_index = 0, jobs = 1;
    bool witness = false;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--builtin", builtin_name, "built-in graph name");
        cmd->add_option("--file", file, "VOG file");
        cmd->add_option("--pd", pd, "PD code file");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text or tsv")
            ->check(CLI::IsMember({"text", "tsv"}));
    };

    auto* analyze = app.add_subcommand("analyze", "o-cycle and o-colouring tables");
    add_input(analyze);
    add_format(analyze);
    analyze->add_option("--orientation", orientation, "named orientation, o-file or bitmask");
    analyze->add_flag("--witness", witness, "also print a minimum colouring as edge/colour lines");

    auto* orbitsc = app.add_subcommand("orbits", "orientation orbits under the automorphism group");
    add_input(orbitsc);
    add_format(orbitsc);
    orbitsc->add_option("--jobs", jobs, "parallel sweep width");

    auto* tait = app.add_subcommand("tait", "expand to a cubic graph / contract a 1-factor");
    add_input(tait);
    tait->add_option("--orientation", orientation, "orientation for expansion");
    tait->add_option("--direction", direction, "expand or contract")
        ->check(CLI::IsMember({"expand", "contract"}));
    tait->add_option("--matching-index", matching_index, "which 1-factor to contract");

    auto* engine = app.add_subcommand("engine", "constructive o-colouring with trace");
    add_input(engine);
    engine->add_option("--orientation", orientation, "named orientation, o-file or bitmask");

    auto* snark = app.add_subcommand("snark-scan", "per-1-factor o-colourability of a cubic graph");
    snark->add_option("--file", file, "cubic VOG file (abstract)")->required();
    snark->add_option("--jobs", jobs, "parallel sweep width");

    auto* validate = app.add_subcommand("validate", "check an edge colouring file");
    add_input(validate);
    validate->add_option("--orientation", orientation, "named orientation, o-file or bitmask");
    validate->add_option("--colouring", colouring_file, "edge/colour lines")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        ReportFormat fmt = format == "tsv" ? ReportFormat::tsv : ReportFormat::text;
        if (app.got_subcommand(analyze)) {
            auto in = load_input(builtin_name, file, pd);
            auto [sigma, oname] = resolve_orientation(in, orientation);
            std::cout << analyze_report(in.g, sigma, in.gname, oname, fmt);
            if (witness) {
                auto [k, oc] = chi_o(in.g, sigma);
                (void)k;
                auto ec = oc.edge_colours();
                std::cout << "# witness colouring\n";
                for (Edge e = 0; e < in.g.ne; e++) std::cout << e << " " << ec[e] << "\n";
            }
        } else if (app.got_subcommand(orbitsc)) {
            auto in = load_input(builtin_name, file, pd);
            // the sweep over representatives dominates; run it wide but print
            // in index order
            auto rep = orbits(in.g);
            std::vector<std::string> lines(rep.orbits.size());
            parallel_for(jobs, static_cast<int>(rep.orbits.size()), [&](int i) {
                const auto& o = rep.orbits[i];
                std::ostringstream ls;
                auto cycles = enumerate_o_cycles(in.g, o.representative);
                auto decs = enumerate_decompositions(in.g, o.representative);
                if (fmt == ReportFormat::text)
                    ls << "  orbit " << i << ": size " << o.size << "  bits "
                       << report_detail::bits_string(o.representative) << "  o-cycles "
                       << cycles.size() << "  o-colourings " << decs.size() << "\n";
                else
                    ls << "orbit\t" << i << "\t" << o.size << "\t"
                       << report_detail::bits_string(o.representative) << "\t" << cycles.size()
                       << "\t" << decs.size() << "\n";
                lines[i] = ls.str();
            });
            if (fmt == ReportFormat::text) {
                std::cout << "graph " << in.gname << ": " << in.g.nv << " vertices, " << in.g.ne
                          << " edges\n";
                std::cout << rep.orbits.size() << " orbits (group order " << rep.group_order
                          << ")\n";
            } else {
                std::cout << "orbits\t" << rep.orbits.size() << "\t" << rep.group_order << "\n";
            }
            for (auto& l : lines) std::cout << l;
            if (fmt == ReportFormat::text) {
                long long total = 0;
                for (auto& o : rep.orbits) total += o.size;
                std::cout << "assignments: " << total << "\n";
                std::cout << "burnside: " << (rep.burnside_ok ? "ok" : "FAILED") << "\n";
            }
        } else if (app.got_subcommand(tait)) {
            if (direction == "expand") {
                auto in = load_input(builtin_name, file, pd);
                auto [sigma, oname] = resolve_orientation(in, orientation);
                (void)oname;
                auto te = tait_expand(in.g, sigma);
                std::cout << "# cubic expansion (" << te.h.nv << " vertices)\n";
                std::cout << write_vog(te.h);
                for (Vertex v = 0; v < te.h.nv; v++) {
                    std::cout << "# rotation " << v << ":";
                    for (Dart d : te.h.rot[v]) std::cout << " " << d;
                    std::cout << "\n";
                }
                std::cout << "# matching:";
                for (Edge e : te.matching) std::cout << " " << e;
                std::cout << "\n";
            } else {
                if (file.empty()) throw SemanticError("contract needs a cubic --file");
                auto h = parse_vog_cubic(slurp(file));
                auto pms = perfect_matchings(h);
                if (matching_index < 0 || matching_index >= static_cast<int>(pms.size()))
                    throw SemanticError("matching index out of range (found " +
                                        std::to_string(pms.size()) + " matchings)");
                auto tc = tait_contract(h, pms[matching_index]);
                std::cout << write_vog(tc.g, tc.sigma);
            }
        } else if (app.got_subcommand(engine)) {
            auto in = load_input(builtin_name, file, pd);
            auto [sigma, oname] = resolve_orientation(in, orientation);
            std::cout << engine_report(in.g, sigma, in.gname, oname);
            auto [oc, tr] = o_colour(in.g, sigma);
            (void)tr;
            auto ec = oc.edge_colours();
            std::cout << "# colouring\n";
            for (Edge e = 0; e < in.g.ne; e++) std::cout << e << " " << ec[e] << "\n";
        } else if (app.got_subcommand(snark)) {
            auto h = parse_vog_cubic(slurp(file));
            auto pms = perfect_matchings(h);
            std::cout << "cubic graph: " << h.nv << " vertices, " << h.ne << " edges, "
                      << pms.size() << " perfect matchings\n";
            std::vector<std::string> lines(pms.size());
            parallel_for(jobs, static_cast<int>(pms.size()), [&](int i) {
                auto tc = tait_contract(h, pms[i]);
                bool ok = is_o_colourable(tc.g, tc.sigma);
                std::ostringstream ls;
                ls << "matching " << i << ": edges";
                for (Edge e : pms[i]) ls << " " << e;
                ls << "  o-colourable: " << (ok ? "yes" : "no") << "\n";
                lines[i] = ls.str();
            });
            for (auto& l : lines) std::cout << l;
        } else if (app.got_subcommand(validate)) {
            auto in = load_input(builtin_name, file, pd);
            auto [sigma, oname] = resolve_orientation(in, orientation);
            (void)oname;
            std::vector<int> col(in.g.ne, -1);
            std::istringstream cf(slurp(colouring_file));
            std::string line;
            while (std::getline(cf, line)) {
                auto hash = line.find('#');
                if (hash != std::string::npos) line.erase(hash);
                std::istringstream ls(line);
                long long e, c;
                if (!(ls >> e >> c)) continue;
                if (e < 0 || e >= in.g.ne) throw SemanticError("edge id out of range");
                col[static_cast<Edge>(e)] = static_cast<int>(c);
            }
            bool ok = validate_o_colouring(in.g, sigma, col);
            std::cout << (ok ? "valid" : "invalid") << "\n";
            return ok ? 0 : 2;
        }
        return 0;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownNameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LabelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonQuadrivalentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegreeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const RotationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GenusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotOColourableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
