#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trigroup {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A closure outgrew its element cap; `partial` elements were stored.
struct CapExceeded : Error {
  CapExceeded(std::uint64_t partial_count, std::uint64_t cap_value, const std::string& where)
      : Error("closure cap exceeded at " + where + ": " + std::to_string(partial_count) + " elements stored, cap " +
              std::to_string(cap_value)),
        partial(partial_count),
        cap(cap_value) {}
  std::uint64_t partial;
  std::uint64_t cap;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

/// kappa relative to the cusp 0 only makes sense for even n.
struct OddN : PreconditionViolated {
  using PreconditionViolated::PreconditionViolated;
};

struct NotFound : Error {
  using Error::Error;
};

struct NotInImage : Error {
  using Error::Error;
};

struct KeyAbsent : Error {
  using Error::Error;
};

}  // namespace trigroup
