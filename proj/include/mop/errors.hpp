#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mop {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument values (parameters out of range, malformed input).
struct DomainError : Error {
  using Error::Error;
};

// Family parameters violating the per-family constraints.
struct InvalidParams : DomainError {
  using DomainError::DomainError;
};

// A truncated series failed to meet its tail bound within the term cap.
struct ConvergenceError : Error {
  using Error::Error;
};

// Moment sequences too short for the requested index window.
struct InsufficientMoments : Error {
  using Error::Error;
};

// A moment determinant S_{n,m} below the normality threshold.
struct NotNormal : Error {
  std::vector<std::pair<int, int>> indices;
  NotNormal(const std::string& msg, std::vector<std::pair<int, int>> bad)
      : Error(msg), indices(std::move(bad)) {}
};

// The east and north recurrence routes disagree beyond tolerance.
struct InconsistentField : Error {
  using Error::Error;
};

// Coefficient extraction residual exceeds tolerance; the table is not
// generated by any nearest-neighbor recurrence.
struct FitError : Error {
  using Error::Error;
};

// A required (c - d) denominator vanishes.
struct DegenerateDenominator : Error {
  std::vector<std::pair<int, int>> indices;
  DegenerateDenominator(const std::string& msg, std::vector<std::pair<int, int>> bad)
      : Error(msg), indices(std::move(bad)) {}
};

// The local 6x6 reconstruction system is singular at some cell.
struct DegenerateSystem : Error {
  int cell_n = -1;
  int cell_m = -1;
  DegenerateSystem(const std::string& msg, int n, int m) : Error(msg), cell_n(n), cell_m(m) {}
};

// Overlapping reconstruction cells disagree beyond tolerance.
struct InconsistentOverlap : Error {
  using Error::Error;
};

// The symmetrizability condition fails.
struct NotSymmetrizable : Error {
  using Error::Error;
};

// Row-wise and column-wise fills (or two lattice paths) disagree.
struct PathInconsistent : Error {
  using Error::Error;
};

}  // namespace mop
