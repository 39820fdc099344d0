#include "koszul/field.hpp"

#include <string>

namespace koszul {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t modulus) : p_(modulus) {
  if (!is_prime(modulus))
    throw config_error("modulus " + std::to_string(modulus) + " is not prime");
  if (modulus >= kMaxModulus)
    throw config_error("modulus " + std::to_string(modulus) + " exceeds the supported bound 2^16");
}

fe_t PrimeField::pow(fe_t a, std::uint64_t e) const {
  fe_t r = 1 % p_;
  fe_t b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

fe_t PrimeField::inv(fe_t a) const {
  if (a == 0) throw input_error("inverse of zero");
  return pow(a, p_ - 2);
}

}  // namespace koszul
