#pragma once

#include <cstdint>
#include <string>

#include "tailsum/errors.hpp"

namespace tailsum {

// Widest signed integer the toolchain offers. Every arithmetic step on it
// goes through the checked helpers below; wraparound is never silent.
#if defined(__SIZEOF_INT128__)
__extension__ typedef __int128 exact_int;
#else
using exact_int = std::int64_t;
#endif

inline exact_int checked_add(exact_int a, exact_int b) {
  exact_int out;
  if (__builtin_add_overflow(a, b, &out)) throw overflow_error("exact integer addition overflow");
  return out;
}

inline exact_int checked_mul(exact_int a, exact_int b) {
  exact_int out;
  if (__builtin_mul_overflow(a, b, &out)) throw overflow_error("exact integer multiplication overflow");
  return out;
}

std::string to_string(exact_int value);

/// Narrowing for callers that need a fixed-width value; throws if out of range.
std::int64_t to_int64(exact_int value);

inline double to_double(exact_int value) { return static_cast<double>(value); }

}  // namespace tailsum
