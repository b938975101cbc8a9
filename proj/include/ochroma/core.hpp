#pragma once

#include <stdexcept>
#include <string>

namespace ochroma {

// Darts are directed half-edges, two per edge. Edge k owns darts 2k and 2k+1;
// a dart's twin is the other half of the same edge.
using Dart = int;
using Vertex = int;
using Edge = int;

constexpr Dart twin(Dart d) { return d ^ 1; }
constexpr Edge edge_of(Dart d) { return d >> 1; }
constexpr Dart dart(Edge e, int end) { return 2 * e + end; }

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define OCHROMA_ERROR(Name)                                                   \
    struct Name : Error {                                                     \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}  \
    }

OCHROMA_ERROR(DegreeError);
OCHROMA_ERROR(RotationError);
OCHROMA_ERROR(GenusError);
OCHROMA_ERROR(ModeError);
OCHROMA_ERROR(DisconnectedError);
OCHROMA_ERROR(NotOColourableError);
OCHROMA_ERROR(DoubleLoopError);
OCHROMA_ERROR(LoopAnchorError);
OCHROMA_ERROR(NotOneFactorError);
OCHROMA_ERROR(ValidationError);
OCHROMA_ERROR(PatternError);
OCHROMA_ERROR(PreconditionError);
OCHROMA_ERROR(SyntaxError);
OCHROMA_ERROR(SemanticError);
OCHROMA_ERROR(LabelError);
OCHROMA_ERROR(NonQuadrivalentError);
OCHROMA_ERROR(UnknownNameError);
OCHROMA_ERROR(CompatibilityError);

#undef OCHROMA_ERROR

}  // namespace ochroma
