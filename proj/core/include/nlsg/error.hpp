#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlsg {

enum class Errc {
  ParseError,
  DuplicateId,
  UnknownVertex,
  UnknownEdge,
  DisconnectedGraph,
  InfinityDegreeViolation,
  NonpositiveLength,
  InfinityToInfinityEdge,
  SelfLoopAtInfinity,
  HalflineMarkerMismatch,
  NonpositiveTruncation,
  EmptyCompactCore,
  TooLargeForBruteForce,
  CompactGraph,
  ExponentOutOfRange,
  NonpositiveScale,
  InvalidArgument,
  DiscontinuousRule,
  ZeroMass,
  NegativeValues,
  ConstantFunction,
  ZeroInitialMass,
  NoConvergedRun,
  NoSignChange,
  NonpositiveWidth,
  NotABubbleTower,
  WrongShape,
  MassTooLarge,
  IoNotFound,
  IoError,
  Usage,
  AssertionFailed,
  SolverError,
};

/// Upper snake case name used in machine-readable error lines.
std::string_view code_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nlsg
