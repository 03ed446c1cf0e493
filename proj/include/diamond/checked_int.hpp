#pragma once

#include <cstdint>

#include "diamond/error.hpp"

namespace diamond::detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::IntegerOverflow, "64-bit addition overflow");
  }
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::IntegerOverflow, "64-bit multiplication overflow");
  }
  return out;
}

}  // namespace diamond::detail
