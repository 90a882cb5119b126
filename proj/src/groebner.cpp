#include "rigidity/groebner.hpp"

#include <algorithm>
#include <deque>

namespace rigidity {

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

// Pairs are popped from the back, so the vector is kept in descending order.
bool pops_later(const Pair& a, const Pair& b) {
  if (a.lcm != b.lcm) return a.lcm > b.lcm;
  if (a.j != b.j) return a.j > b.j;
  return a.i > b.i;
}

class Buchberger {
 public:
  explicit Buchberger(const PrimeField& field) : field_(field), ops_(field) {}

  void insert_generator(const Polynomial& f) {
    Polynomial r = normal_form(f);
    if (!r.is_zero()) add(std::move(r.make_monic(field_)));
  }

  void run(GroebnerStats* stats) {
    while (!pairs_.empty()) {
      const Pair p = pairs_.back();
      pairs_.pop_back();
      ++stats_.pairs_reduced;
      Polynomial r = normal_form(ops_.s_polynomial(polys_[p.i], polys_[p.j]));
      if (r.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      add(std::move(r.make_monic(field_)));
    }
    if (stats) *stats = stats_;
  }

  std::vector<Polynomial> reduced_basis() const {
    std::vector<Polynomial> basis;
    for (std::size_t k : active_) basis.push_back(polys_[k]);
    std::sort(basis.begin(), basis.end(),
              [](const Polynomial& a, const Polynomial& b) { return a.leading_monomial() < b.leading_monomial(); });
    // Interreduce tails; leading monomials are already pairwise non-dividing.
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::vector<Polynomial> others;
      for (std::size_t l = 0; l < basis.size(); ++l) {
        if (l != k) others.push_back(basis[l]);
      }
      const Term lead = basis[k].leading();
      Polynomial lead_only = Polynomial::from_terms({lead}, field_);
      Polynomial rest = ops_.sub(basis[k], lead_only);
      basis[k] = ops_.add(lead_only, ops_.reduce(rest, others));
      basis[k].make_monic(field_);
    }
    return basis;
  }

 private:
  Polynomial normal_form(const Polynomial& f) const {
    std::vector<const Polynomial*> divisors;
    divisors.reserve(by_size_.size());
    for (std::size_t k : by_size_) divisors.push_back(&polys_[k]);
    return ops_.reduce(f, std::span<const Polynomial* const>(divisors));
  }

  void add(Polynomial h) {
    const std::size_t hk = polys_.size();
    polys_.push_back(std::move(h));
    update(hk);
    stats_.max_basis_size = std::max(stats_.max_basis_size, active_.size());
  }

  // Gebauer–Möller update.
  void update(std::size_t hk) {
    const Monomial& lh = polys_[hk].leading_monomial();
    std::vector<Pair> candidates;
    for (std::size_t g : active_) candidates.push_back({g, hk, lcm(polys_[g].leading_monomial(), lh)});
    stats_.pairs_considered += candidates.size();

    // Chain criterion among the new pairs.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool keep = coprime(polys_[p.i].leading_monomial(), lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b) {
          if (candidates[b].lcm.divides(p.lcm)) keep = false;
        }
        for (const Pair& q : kept) {
          if (!keep) break;
          if (q.lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(p);
    }
    // Product criterion.
    std::vector<Pair> fresh;
    for (const Pair& p : kept) {
      if (!coprime(polys_[p.i].leading_monomial(), lh)) fresh.push_back(p);
    }
    // Old pairs made redundant by h.
    std::vector<Pair> survivors;
    survivors.reserve(pairs_.size() + fresh.size());
    for (const Pair& p : pairs_) {
      const bool drop = lh.divides(p.lcm) && lcm(polys_[p.i].leading_monomial(), lh) != p.lcm &&
                        lcm(polys_[p.j].leading_monomial(), lh) != p.lcm;
      if (!drop) survivors.push_back(p);
    }
    survivors.insert(survivors.end(), fresh.begin(), fresh.end());
    std::sort(survivors.begin(), survivors.end(), pops_later);
    pairs_ = std::move(survivors);

    std::vector<std::size_t> next;
    for (std::size_t g : active_) {
      if (!lh.divides(polys_[g].leading_monomial())) next.push_back(g);
    }
    next.push_back(hk);
    active_ = std::move(next);
    by_size_ = active_;
    std::stable_sort(by_size_.begin(), by_size_.end(),
                     [&](std::size_t a, std::size_t b) { return polys_[a].size() < polys_[b].size(); });
  }

  const PrimeField& field_;
  PolyOps ops_;
  std::deque<Polynomial> polys_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> by_size_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
};

}  // namespace

std::vector<Polynomial> groebner_basis(std::span<const Polynomial> generators, const PrimeField& field,
                                       GroebnerStats* stats) {
  std::vector<Polynomial> inputs;
  for (const Polynomial& f : generators) {
    if (!f.is_zero()) inputs.push_back(f);
  }
  std::sort(inputs.begin(), inputs.end(),
            [](const Polynomial& a, const Polynomial& b) { return a.leading_monomial() < b.leading_monomial(); });
  Buchberger engine(field);
  for (const Polynomial& f : inputs) engine.insert_generator(f);
  engine.run(stats);
  return engine.reduced_basis();
}

std::optional<std::uint64_t> count_ideal_degree(std::span<const Polynomial> basis, int variable_count) {
  std::vector<Monomial> leads;
  for (const Polynomial& f : basis) {
    if (f.is_zero()) continue;
    if (f.leading_monomial().is_one()) return 0;  // unit ideal
    leads.push_back(f.leading_monomial());
  }
  for (int v = 0; v < variable_count; ++v) {
    const bool pure = std::any_of(leads.begin(), leads.end(), [&](const Monomial& m) {
      return m.support() == (1U << v);
    });
    if (!pure) return std::nullopt;
  }
  for (const Monomial& m : leads) {
    if (variable_count < kMaxVariables && (m.support() >> variable_count) != 0) {
      throw std::invalid_argument("basis uses more variables than declared");
    }
  }
  // Depth-first walk of the staircase; divisibility is monotone, so a
  // partial exponent vector that is already divisible prunes its subtree.
  std::vector<int> exps(static_cast<std::size_t>(variable_count), 0);
  std::uint64_t count = 0;
  auto divisible = [&]() {
    const Monomial m = Monomial::from_exponents(exps);
    return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  auto walk = [&](auto&& self, int var) -> void {
    if (var == variable_count) {
      ++count;
      return;
    }
    auto& e = exps[static_cast<std::size_t>(var)];
    for (e = 0; !divisible(); ++e) self(self, var + 1);
    e = 0;
  };
  walk(walk, 0);
  return count;
}

bool is_groebner_basis(std::span<const Polynomial> basis, const PrimeField& field) {
  PolyOps ops(field);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!ops.reduce(ops.s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace rigidity
