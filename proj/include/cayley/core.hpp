#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cayley {

using i64 = std::int64_t;

// A breadth-first search grew past its vertex budget before the query
// resolved.  partial_size() is how far it got.
class resource_limit_error : public std::runtime_error {
 public:
  resource_limit_error(const std::string& what, std::size_t partial)
      : std::runtime_error(what), partial_(partial) {}
  std::size_t partial_size() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

// Geodesic enumeration hit the configured count cap.  Kept distinct from
// resource_limit_error so callers widen the right knob.
class geodesic_cap_error : public std::runtime_error {
 public:
  geodesic_cap_error(const std::string& what, std::size_t cap)
      : std::runtime_error(what), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

struct SearchLimits {
  std::size_t max_vertices = 5'000'000;
  std::size_t max_geodesics = 1'000'000;
};

// Euclidean remainder: result in [0, m) for m > 0.
inline i64 floor_mod(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

inline i64 floor_div(i64 x, i64 m) { return (x - floor_mod(x, m)) / m; }

// ceil(num/den) for num >= 0, den > 0.
inline i64 ceil_div(i64 num, i64 den) { return (num + den - 1) / den; }

}  // namespace cayley
