#pragma once

#include <doctest.h>

#include <cmath>
#include <functional>

#include "diamond/error.hpp"

namespace testing {

inline bool throws_code(const std::function<void()>& fn, diamond::ErrorCode code) {
  try {
    fn();
  } catch (const diamond::Error& e) {
    return e.code() == code;
  }
  return false;
}

inline double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing

#define CHECK_CODE(expr, code) CHECK(testing::throws_code([&] { (void)(expr); }, diamond::ErrorCode::code))
