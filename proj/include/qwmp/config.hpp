#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace qwmp {

/// Relative tolerance used by float-backend comparisons unless overridden.
inline constexpr double kDefaultTol = 1e-10;

namespace detail {
inline std::size_t read_size_cap_env() {
  const char* s = std::getenv("QWMP_SIZE_CAP");
  if (s == nullptr) return 8;
  char* end = nullptr;
  const unsigned long v = std::strtoul(s, &end, 10);
  if (end == s || *end != '\0' || v == 0 || v > 12) return 8;
  return static_cast<std::size_t>(v);
}
}  // namespace detail

/// Largest order accepted by the factorial-cost determinant kernels.
/// Defaults to 8; override with QWMP_SIZE_CAP (clamped to [1, 12]).
inline std::size_t size_cap() {
  static const std::size_t cap = detail::read_size_cap_env();
  return cap;
}

}  // namespace qwmp
