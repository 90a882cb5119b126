#ifndef RIGIDITY_GROEBNER_HPP
#define RIGIDITY_GROEBNER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rigidity/polynomial.hpp"

namespace rigidity {

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t max_basis_size = 0;
};

/// Reduced Gröbner basis (degrevlex, monic, sorted by ascending leading
/// monomial) of the ideal generated by `generators`. Buchberger's algorithm
/// with the Gebauer–Möller criteria and normal pair selection.
std::vector<Polynomial> groebner_basis(std::span<const Polynomial> generators, const PrimeField& field,
                                       GroebnerStats* stats = nullptr);

/// Dimension of the quotient ring for a zero-dimensional ideal given by a
/// Gröbner basis over `variable_count` variables; nullopt when some variable
/// has no pure power among the leading monomials.
std::optional<std::uint64_t> count_ideal_degree(std::span<const Polynomial> basis, int variable_count);

/// Leading monomials not divisible by any other basis leading monomial and
/// every S-polynomial reducing to zero.
bool is_groebner_basis(std::span<const Polynomial> basis, const PrimeField& field);

}  // namespace rigidity

#endif  // RIGIDITY_GROEBNER_HPP
