#pragma once

#include <cstdint>

#include "koszul/errors.hpp"

namespace koszul {

/// Field element, always reduced into [0, modulus).
using fe_t = std::uint32_t;

bool is_prime(std::uint64_t n);

/// Arithmetic in Z/pZ for a prime p < 2^16.
///
/// The bound keeps every product-plus-sum `a + b*c` of reduced elements
/// inside 32 bits, which the elimination kernels rely on.
class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;
  static constexpr std::uint32_t kAlternatePrime = 65521;
  static constexpr std::uint32_t kMaxModulus = 65536;

  explicit PrimeField(std::uint32_t modulus = kDefaultPrime);

  std::uint32_t modulus() const { return p_; }

  fe_t add(fe_t a, fe_t b) const {
    fe_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  fe_t sub(fe_t a, fe_t b) const { return a >= b ? a - b : a + p_ - b; }
  fe_t neg(fe_t a) const { return a == 0 ? 0 : p_ - a; }
  fe_t mul(fe_t a, fe_t b) const { return static_cast<fe_t>((std::uint64_t{a} * b) % p_); }
  fe_t inv(fe_t a) const;
  fe_t pow(fe_t a, std::uint64_t e) const;

  /// Reduction of an arbitrary integer (the "same integral construction" map).
  fe_t from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<fe_t>(r < 0 ? r + p_ : r);
  }

  /// Signed representative in (-p/2, p/2].
  std::int64_t to_signed(fe_t a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace koszul
