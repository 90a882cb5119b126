#ifndef RIGIDITY_ALGEBRAIC_HPP
#define RIGIDITY_ALGEBRAIC_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "rigidity/graph.hpp"
#include "rigidity/groebner.hpp"
#include "rigidity/polynomial.hpp"

namespace rigidity {

/// Plane counts c2(G); Sphere counts the spherical number c2°(G).
enum class Mode { Plane, Sphere };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Raised when the modular solver cannot reach a trustworthy answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  /// Defaults are the three largest primes below 2^30.
  std::vector<std::uint32_t> primes{1073741789U, 1073741783U, 1073741741U};
  std::uint64_t seed = 20240917;
  int quorum = 2;
  int max_resamples = 8;

  /// Throws std::invalid_argument: primes distinct, odd, prime, > 2^20;
  /// quorum in [1, #primes]; max_resamples >= 1.
  void validate() const;
};

/// Pinned measurement equations together with the sampled realisation
/// they were derived from.
struct PolynomialSystem {
  std::uint32_t modulus = 0;
  std::vector<std::string> variables;
  std::vector<Polynomial> equations;
  /// Sampled coordinates per vertex (2 in the plane, 3 on the sphere).
  std::vector<std::vector<Residue>> realisation;
  /// One measurement per edge, in sorted edge order.
  std::vector<Residue> measurements;
};

/// Squared edge lengths of a random realisation, pinned by x_a = y_a = 0,
/// y_b = 0 on the first edge {a,b}. Requires a rigid graph.
PolynomialSystem build_planar_system(const Graph& g, const PrimeField& field, std::mt19937_64& rng,
                                     int max_resamples = 8);

/// Inner products of a random realisation on the unit sphere (sampled by
/// inverse stereographic projection), pinned by p_0 = (0,0,1), y_1 = 0.
/// Requires a rigid graph.
PolynomialSystem build_spherical_system(const Graph& g, const PrimeField& field, std::mt19937_64& rng,
                                        int max_resamples = 8);

/// Outcome of one modular run.
struct SolverRun {
  std::uint32_t prime = 0;
  std::uint64_t seed = 0;
  int resamples = 0;
  std::uint64_t pinned_degree = 0;
  GroebnerStats stats;
};

/// One run: build, Gröbner basis, quotient dimension. Resamples on a
/// degenerate sample, a positive-dimensional or empty fibre, or a degree
/// not divisible by the residual symmetry (2 for K2, else 4).
SolverRun solve_pinned(const Graph& g, Mode mode, std::uint32_t prime, std::uint64_t seed, int max_resamples);

struct DirectCountReport {
  mpz_class value;
  std::vector<SolverRun> runs;
  /// Runs whose count disagreed with the accepted value.
  int disagreements = 0;
};

/// Realisation count from the pinned fibre degree divided by the residual
/// symmetry, accepted once `quorum` runs with distinct primes agree.
DirectCountReport direct_count_report(const Graph& g, Mode mode, const SolverConfig& cfg);
mpz_class direct_count(const Graph& g, Mode mode, const SolverConfig& cfg);

/// Base case of the recursion for minimally rigid graphs (same algorithm as
/// direct_count, but insists on minimal rigidity).
mpz_class base_count(const Graph& g, Mode mode, const SolverConfig& cfg);

/// One polynomial per line, terms in order, coefficients as decimal residues.
std::string format_basis(const std::vector<Polynomial>& basis, const std::vector<std::string>& names);

}  // namespace rigidity

#endif  // RIGIDITY_ALGEBRAIC_HPP
