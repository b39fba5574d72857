#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spinmkt {

// Domain errors carry a stable name used by the CLI and by tests.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define SPINMKT_ERROR(E)                                         \
  struct E : Error {                                             \
    explicit E(const std::string& what) : Error(#E, what) {}     \
  }

SPINMKT_ERROR(InvalidParams);
SPINMKT_ERROR(NotSupercritical);
SPINMKT_ERROR(MoreThanTwoIntervals);
SPINMKT_ERROR(ZeroTransition);
SPINMKT_ERROR(InsufficientCrossings);
SPINMKT_ERROR(InsufficientSamples);
SPINMKT_ERROR(DegenerateGrid);

#undef SPINMKT_ERROR

}  // namespace spinmkt
