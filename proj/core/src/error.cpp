#include "nlsg/error.hpp"

namespace nlsg {

std::string_view code_name(Errc c) noexcept {
  switch (c) {
    case Errc::ParseError: return "PARSE_ERROR";
    case Errc::DuplicateId: return "DUPLICATE_ID";
    case Errc::UnknownVertex: return "UNKNOWN_VERTEX";
    case Errc::UnknownEdge: return "UNKNOWN_EDGE";
    case Errc::DisconnectedGraph: return "DISCONNECTED_GRAPH";
    case Errc::InfinityDegreeViolation: return "INFINITY_DEGREE_VIOLATION";
    case Errc::NonpositiveLength: return "NONPOSITIVE_LENGTH";
    case Errc::InfinityToInfinityEdge: return "INFINITY_TO_INFINITY_EDGE";
    case Errc::SelfLoopAtInfinity: return "SELF_LOOP_AT_INFINITY";
    case Errc::HalflineMarkerMismatch: return "HALFLINE_MARKER_MISMATCH";
    case Errc::NonpositiveTruncation: return "NONPOSITIVE_TRUNCATION";
    case Errc::EmptyCompactCore: return "EMPTY_COMPACT_CORE";
    case Errc::TooLargeForBruteForce: return "TOO_LARGE_FOR_BRUTE_FORCE";
    case Errc::CompactGraph: return "COMPACT_GRAPH";
    case Errc::ExponentOutOfRange: return "EXPONENT_OUT_OF_RANGE";
    case Errc::NonpositiveScale: return "NONPOSITIVE_SCALE";
    case Errc::InvalidArgument: return "INVALID_ARGUMENT";
    case Errc::DiscontinuousRule: return "DISCONTINUOUS_RULE";
    case Errc::ZeroMass: return "ZERO_MASS";
    case Errc::NegativeValues: return "NEGATIVE_VALUES";
    case Errc::ConstantFunction: return "CONSTANT_FUNCTION";
    case Errc::ZeroInitialMass: return "ZERO_INITIAL_MASS";
    case Errc::NoConvergedRun: return "NO_CONVERGED_RUN";
    case Errc::NoSignChange: return "NO_SIGN_CHANGE";
    case Errc::NonpositiveWidth: return "NONPOSITIVE_WIDTH";
    case Errc::NotABubbleTower: return "NOT_A_BUBBLE_TOWER";
    case Errc::WrongShape: return "WRONG_SHAPE";
    case Errc::MassTooLarge: return "MASS_TOO_LARGE";
    case Errc::IoNotFound: return "IO_NOT_FOUND";
    case Errc::IoError: return "IO_ERROR";
    case Errc::Usage: return "USAGE";
    case Errc::AssertionFailed: return "ASSERTION_FAILED";
    case Errc::SolverError: return "SOLVER_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace nlsg
