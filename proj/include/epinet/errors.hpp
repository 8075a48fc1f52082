#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epinet {

// Invalid argument to a generator, engine or intervention.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed edge-list input. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A metric that is undefined for the given graph (e.g. density with n < 2).
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Power-law fit could not be carried out; tail_size is the sample that was available.
class FitError : public std::runtime_error {
 public:
  FitError(std::size_t tail_size, const std::string& what)
      : std::runtime_error(what + " (tail size " + std::to_string(tail_size) + ")"),
        tail_size_(tail_size) {}
  std::size_t tail_size() const noexcept { return tail_size_; }

 private:
  std::size_t tail_size_;
};

// Compartment state inconsistent with the graph it is simulated on.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bernoulli probability outside [0, 1] in the agent-based engine.
class ProbabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An engine failure inside a sweep, prefixed with the parameter point.
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epinet
