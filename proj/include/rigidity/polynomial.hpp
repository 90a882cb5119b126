#ifndef RIGIDITY_POLYNOMIAL_HPP
#define RIGIDITY_POLYNOMIAL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidity/prime_field.hpp"

namespace rigidity {

inline constexpr int kMaxVariables = 32;
inline constexpr int kMaxExponent = 127;

/// Exponent vector over at most 32 variables, compared in degrevlex with
/// x0 > x1 > ... . Exponents are packed one byte each, last variable first,
/// so that the reverse-lexicographic tie break is a word-wise comparison.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(int var, int exponent = 1);
  static Monomial from_exponents(std::span<const int> exponents);

  int exponent(int var) const {
    const int r = kMaxVariables - 1 - var;
    return static_cast<int>((words_[static_cast<std::size_t>(r / 8)] >> (8 * (7 - r % 8))) & 0xFFU);
  }
  std::uint32_t degree() const { return degree_; }
  /// Bit v set iff variable v occurs.
  std::uint32_t support() const { return support_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const {
    if (degree_ > other.degree_ || (support_ & ~other.support_) != 0) return false;
    constexpr std::uint64_t kHigh = 0x8080808080808080ULL;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((((other.words_[w] | kHigh) - words_[w]) & kHigh) != kHigh) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b) { return (a.support_ & b.support_) == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.words_ == b.words_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      if (a.words_[w] != b.words_[w]) return b.words_[w] <=> a.words_[w];
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const;

 private:
  void recompute();

  std::array<std::uint64_t, 4> words_{};
  std::uint32_t degree_ = 0;
  std::uint32_t support_ = 0;
};

struct Term {
  Residue coeff = 0;
  Monomial mono;
};

/// Sparse polynomial over a prime field: terms strictly decreasing in
/// degrevlex, no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  /// Sorts, merges like terms, and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms, const PrimeField& field);
  static Polynomial constant(Residue c);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  std::uint32_t total_degree() const;
  const std::vector<Term>& terms() const { return terms_; }

  Polynomial& make_monic(const PrimeField& field);

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Evaluates at a point given as one residue per variable.
  Residue evaluate(std::span<const Residue> point, const PrimeField& field) const;

 private:
  friend class PolyOps;
  std::vector<Term> terms_;
};

/// Arithmetic needing the field context.
class PolyOps {
 public:
  explicit PolyOps(const PrimeField& field) : field_(field) {}

  const PrimeField& field() const { return field_; }

  Polynomial add(const Polynomial& a, const Polynomial& b) const;
  Polynomial sub(const Polynomial& a, const Polynomial& b) const;
  Polynomial mul(const Polynomial& a, const Polynomial& b) const;
  Polynomial scale(const Polynomial& a, Residue c, const Monomial& m) const;
  /// f - c * m * g, merging in one pass.
  Polynomial sub_scaled(const Polynomial& f, Residue c, const Monomial& m, const Polynomial& g) const;
  /// S-polynomial of two nonzero polynomials.
  Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) const;
  /// Full normal form of f with respect to `divisors` (nonzero, any order).
  Polynomial reduce(const Polynomial& f, std::span<const Polynomial> divisors) const;
  Polynomial reduce(const Polynomial& f, std::span<const Polynomial* const> divisors) const;

 private:
  const PrimeField& field_;
};

/// Polynomial in the debug-dump style: terms in order, decimal residues,
/// e.g. "x0^2 + 1073741788*x1*x2 + 5".
std::string format_polynomial(const Polynomial& f, std::span<const std::string> names);

}  // namespace rigidity

#endif  // RIGIDITY_POLYNOMIAL_HPP
