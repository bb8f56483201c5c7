#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hamsub {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

#ifndef HAMSUB_DP_CAP
#define HAMSUB_DP_CAP 24
#endif

#ifndef HAMSUB_NU_CAP
#define HAMSUB_NU_CAP 22
#endif

// Largest order accepted by the subset dynamic programs.
inline constexpr int kDeskCap = HAMSUB_DP_CAP;
// Cycle census stores 64-bit path counts per (subset, endpoint) cell.
inline constexpr int kCycleCensusCap = HAMSUB_NU_CAP;
// Exact expander certification enumerates every subset.
inline constexpr int kExactExpanderCap = 20;

static_assert(kDeskCap <= 30, "subset tables are indexed by 32-bit masks");
static_assert(kCycleCensusCap <= 22, "64-bit path counts overflow beyond n = 22");

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, int order, int cap)
      : std::runtime_error(what + ": order " + std::to_string(order) +
                           " exceeds cap " + std::to_string(cap)),
        order_(order),
        cap_(cap) {}
  int order() const noexcept { return order_; }
  int cap() const noexcept { return cap_; }

 private:
  int order_;
  int cap_;
};

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline BigInt pow2(unsigned k) {
  BigInt r = 1;
  r <<= k;
  return r;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// floor(q) for a nonnegative rational.
inline BigInt floor_nonneg(const Rational& q) {
  return boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
}

}  // namespace hamsub
