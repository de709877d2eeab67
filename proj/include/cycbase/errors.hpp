#pragma once

#include <stdexcept>
#include <string>

namespace cycbase {

/// Two permutations (or a permutation and a group) of different degrees met.
class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cycle-notation or file-format input that cannot be parsed.
class ParseError : public std::invalid_argument {
 public:
  enum class Kind { Malformed, RepeatedPoint, OutOfRange };

  ParseError(Kind kind, std::string const &what)
    : std::invalid_argument(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A precondition on an argument does not hold.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotTransitive : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class InvalidBlocks : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Randomized full-cycle search ran out of budget and could not fall back to
/// enumeration. Undecided, not "no full cycle".
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Post-hoc check of the feasibility structure failed (socle orbits, socle
/// orders, minimality of the block system after replacement).
class FeasibilityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FrameError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StandardizeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Enumeration requested for a group larger than the configured cap.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

} // namespace cycbase
