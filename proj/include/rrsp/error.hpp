#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrsp {

enum class ErrorKind {
  Usage,
  Validation,
  Parse,
  CycleDetected,
  NotSeriesParallel,
  UnsupportedStructure,
  Capacity,
  Infeasible,
  AlphaZero,
  DZero,
  Unavailable,
  SolverError,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class CycleDetected : public Error {
 public:
  explicit CycleDetected(std::vector<int> cycle);

  // Nodes of a directed cycle, in order; the last node has an arc back to the first.
  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

class TooManyPaths : public Error {
 public:
  explicit TooManyPaths(std::size_t cap);

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace rrsp
