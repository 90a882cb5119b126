#ifndef RIGIDITY_PRIME_FIELD_HPP
#define RIGIDITY_PRIME_FIELD_HPP

#include <cstdint>
#include <stdexcept>

namespace rigidity {

/// Residue class representative in [0, p).
using Residue = std::uint32_t;

/// Arithmetic modulo an odd prime p < 2^31; products fit in 64 bits.
class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is an odd prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  Residue add(Residue a, Residue b) const {
    const Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  /// Multiplicative inverse; throws std::domain_error for 0.
  Residue inv(Residue a) const;
  Residue from_int(std::int64_t v) const;
  /// Symmetric representative in (-p/2, p/2].
  std::int64_t to_signed(Residue a) const { return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a; }

 private:
  std::uint32_t p_;
};

/// Deterministic Miller–Rabin for 32-bit inputs.
bool is_prime_u32(std::uint32_t n);

}  // namespace rigidity

#endif  // RIGIDITY_PRIME_FIELD_HPP
