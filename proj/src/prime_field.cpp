#include "rigidity/prime_field.hpp"

#include <string>

namespace rigidity {

namespace {

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint32_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1U) result = result * base % m;
    base = base * base % m;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t small : {2U, 3U, 5U, 7U, 11U, 13U}) {
    if (n % small == 0) return n == small;
  }
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Bases 2, 7, 61 are exact below 4,759,123,141.
  for (std::uint32_t a : {2U, 7U, 61U}) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1U << 31) || !is_prime_u32(p)) {
    throw std::invalid_argument("field modulus " + std::to_string(p) + " is not an odd prime below 2^31");
  }
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const { return pow_mod(a, e, p_); }

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero");
  // Extended Euclid on (a, p).
  std::int64_t t = 0;
  std::int64_t new_t = 1;
  std::int64_t r = p_;
  std::int64_t new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Residue>(t);
}

Residue PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Residue>(r);
}

}  // namespace rigidity
