#pragma once

#include <stdexcept>
#include <string>

namespace groovegait {

/// Bad argument to a geometric query (e.g. a point outside the tile it is snapped in).
class InvalidQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input value outside the domain of a mapping.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Coincident feet; the body axis is undefined.
class DegenerateState : public std::runtime_error {
 public:
  explicit DegenerateState(const std::string& what, long cycle = -1)
      : std::runtime_error(cycle < 0 ? what : what + " (cycle " + std::to_string(cycle) + ")"),
        cycle_(cycle) {}
  long cycle() const noexcept { return cycle_; }

 private:
  long cycle_;
};

/// Wrong number of free parameters for the chosen optimizer.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A domain invariant was violated by user-supplied values.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, int line, const std::string& message)
      : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                           message),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace groovegait
