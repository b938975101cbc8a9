#pragma once

#include <string>
#include <vector>

#include "ochroma/vog.hpp"

namespace ochroma {

// Built-in graphs and orientation assignments.  The rotation systems and
// selector bits were reconstructed from the published diagrams by constraint
// solving against the tabulated o-cycle and decomposition lists; the golden
// tests pin them down.
struct BuiltinEntry {
    std::string name;
    PlaneGraph g;
    std::vector<std::pair<std::string, OrientationAssignment>> orientations;
};

namespace catalog_data {

inline const char* fig7a_vog =
    "V 1\nE 2\n"
    "e 0 0 0\ne 1 0 0\n"
    "r 0 0 1 2 3\n";

inline const char* fig7b_vog =
    "V 2\nE 4\n"
    "e 0 0 1\ne 1 0 1\ne 2 0 1\ne 3 0 1\n"
    "r 0 0 2 4 6\nr 1 7 5 3 1\n";

inline const char* fig7c_vog =
    "V 2\nE 4\n"
    "e 0 0 0\ne 1 1 1\ne 2 0 1\ne 3 0 1\n"
    "r 0 0 1 4 6\nr 1 5 7 2 3\n";

inline const char* whitehead_vog =
    "V 5\nE 10\n"
    "e 0 0 1\ne 1 1 2\ne 2 2 3\ne 3 3 4\ne 4 4 2\n"
    "e 5 2 0\ne 6 0 1\ne 7 1 4\ne 8 4 3\ne 9 3 0\n"
    "r 0 19 11 12 0\n"
    "r 1 1 13 2 14\n"
    "r 2 10 4 9 3\n"
    "r 3 18 6 17 5\n"
    "r 4 8 16 7 15\n";

inline const char* star8_vog =
    "V 8\nE 16\n"
    "e 0 0 1\ne 1 1 2\ne 2 2 3\ne 3 3 4\ne 4 4 5\ne 5 5 1\ne 6 1 6\ne 7 6 3\n"
    "e 8 3 7\ne 9 7 5\ne 10 5 0\ne 11 0 6\ne 12 6 2\ne 13 2 7\ne 14 7 4\ne 15 4 0\n"
    "r 0 31 21 0 22\n"
    "r 1 1 11 2 12\n"
    "r 2 26 4 25 3\n"
    "r 3 16 6 15 5\n"
    "r 4 29 8 30 7\n"
    "r 5 9 19 10 20\n"
    "r 6 14 23 13 24\n"
    "r 7 18 28 17 27\n";

inline const char* star6_vog =
    "V 6\nE 12\n"
    "e 0 0 1\ne 1 1 2\ne 2 2 3\ne 3 3 0\ne 4 0 4\ne 5 4 2\n"
    "e 6 2 5\ne 7 5 0\ne 8 1 4\ne 9 4 3\ne 10 3 5\ne 11 5 1\n"
    "r 0 0 8 7 15\n"
    "r 1 16 1 23 2\n"
    "r 2 11 3 12 4\n"
    "r 3 5 20 6 19\n"
    "r 4 9 17 10 18\n"
    "r 5 22 14 21 13\n";

}  // namespace catalog_data

inline OrientationAssignment make_assignment(std::initializer_list<int> bits) {
    OrientationAssignment a;
    for (int b : bits) a.sel.push_back(static_cast<std::uint8_t>(b));
    return a;
}

inline BuiltinEntry builtin(const std::string& name) {
    BuiltinEntry entry;
    entry.name = name;
    if (name == "fig7a") {
        entry.g = parse_vog(catalog_data::fig7a_vog).first;
    } else if (name == "fig7b") {
        entry.g = parse_vog(catalog_data::fig7b_vog).first;
    } else if (name == "fig7c") {
        entry.g = parse_vog(catalog_data::fig7c_vog).first;
    } else if (name == "whitehead") {
        entry.g = parse_vog(catalog_data::whitehead_vog).first;
        entry.orientations.push_back({"ex41", make_assignment({1, 0, 0, 0, 1})});
    } else if (name == "star8") {
        entry.g = parse_vog(catalog_data::star8_vog).first;
        entry.orientations.push_back({"ex42", make_assignment({0, 1, 1, 1, 0, 1, 1, 1})});
    } else if (name == "star6") {
        entry.g = parse_vog(catalog_data::star6_vog).first;
        entry.orientations.push_back({"orbit1", make_assignment({1, 0, 0, 1, 1, 0})});
        entry.orientations.push_back({"orbit2", make_assignment({0, 0, 0, 1, 1, 0})});
        entry.orientations.push_back({"orbit3", make_assignment({1, 1, 0, 1, 1, 0})});
        entry.orientations.push_back({"orbit4", make_assignment({0, 1, 0, 1, 1, 0})});
        entry.orientations.push_back({"orbit5", make_assignment({1, 1, 0, 0, 1, 0})});
        entry.orientations.push_back({"orbit6", make_assignment({1, 1, 1, 1, 0, 0})});
        entry.orientations.push_back({"orbit7", make_assignment({0, 1, 0, 1, 0, 0})});
    } else {
        throw UnknownNameError("no builtin named '" + name + "'");
    }
    return entry;
}

inline std::vector<std::string> builtin_names() {
    return {"fig7a", "fig7b", "fig7c", "whitehead", "star8", "star6"};
}

}  // namespace ochroma
