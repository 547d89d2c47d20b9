#pragma once

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace wreath {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(std::int64_t n)
{
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

/// n(n-1)...(n-r+1); zero when r > n >= 0.
inline BigInt falling_factorial(std::int64_t n, std::int64_t r)
{
  BigInt out = 1;
  for (std::int64_t i = 0; i < r; ++i)
    out *= (n - i);
  return out;
}

/// Binomial coefficient, zero outside 0 <= r <= n.
inline BigInt binomial(std::int64_t n, std::int64_t r)
{
  if (r < 0 || n < 0 || r > n)
    return 0;
  if (r > n - r)
    r = n - r;
  BigInt out = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    out *= (n - r + i);
    out /= i;
  }
  return out;
}

inline BigInt power(BigInt base, std::int64_t e)
{
  BigInt out = 1;
  for (std::int64_t i = 0; i < e; ++i)
    out *= base;
  return out;
}

/// Converts to uint64, throwing if the value does not fit.
inline std::uint64_t to_u64(BigInt const &v)
{
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw std::overflow_error("value does not fit in 64 bits: " + v.str());
  return static_cast<std::uint64_t>(v);
}

inline std::string to_string(Rational const &q)
{
  if (denominator(q) == 1)
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace wreath
