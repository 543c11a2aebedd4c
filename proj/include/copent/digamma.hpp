#pragma once

#include <cmath>
#include <string>

#include "copent/error.hpp"

namespace copent {

// Digamma function psi(x) for x > 0.
//
// Shifts x upward with psi(x) = psi(x + 1) - 1/x until x >= 6, then applies the
// asymptotic expansion ln x - 1/(2x) - sum B_2n / (2n x^2n) through B_18.
// Truncation error at x = 6 is below 1e-13.
inline double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw ArgumentError("digamma: argument must be a positive finite number, got " +
                        std::to_string(x));
  double shift = 0.0;
  while (x < 6.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  // B_2n / (2n) for n = 9 .. 1, evaluated in Horner form in 1/x^2.
  constexpr double c[] = {43867.0 / 14364.0, -3617.0 / 8160.0, 1.0 / 12.0,
                          -691.0 / 32760.0,  1.0 / 132.0,      -1.0 / 240.0,
                          1.0 / 252.0,       -1.0 / 120.0,     1.0 / 12.0};
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  for (double ci : c) series = series * inv2 + ci;
  series *= inv2;
  return std::log(x) - 0.5 / x - series - shift;
}

}  // namespace copent
