#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nnadv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graphic metric was asked about a pair that has no connecting path.
class DisconnectedGraph : public Error {
 public:
  DisconnectedGraph(std::size_t from, std::size_t to)
      : Error("graph is disconnected: no path between city " + std::to_string(from) +
              " and city " + std::to_string(to)),
        from_(from),
        to_(to) {}

  std::size_t from() const { return from_; }
  std::size_t to() const { return to_; }

 private:
  std::size_t from_;
  std::size_t to_;
};

/// Raised by the adversarial tie-break policy when the target's next city is
/// not among the nearest unvisited cities.
class AdversarialTargetIllegal : public Error {
 public:
  explicit AdversarialTargetIllegal(std::size_t step)
      : Error("adversarial target is not NNR-realizable at step " + std::to_string(step)),
        step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nnadv
