#include "rigidity/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace rigidity {

namespace {

constexpr std::uint64_t kHigh = 0x8080808080808080ULL;

void exponent_overflow() {
  throw std::overflow_error("monomial exponent exceeds " + std::to_string(kMaxExponent));
}

}  // namespace

void Monomial::recompute() {
  degree_ = 0;
  support_ = 0;
  for (int v = 0; v < kMaxVariables; ++v) {
    const int e = exponent(v);
    degree_ += static_cast<std::uint32_t>(e);
    if (e) support_ |= 1U << v;
  }
}

Monomial Monomial::variable(int var, int exponent) {
  if (var < 0 || var >= kMaxVariables) throw std::out_of_range("variable index out of range");
  if (exponent < 0 || exponent > kMaxExponent) exponent_overflow();
  Monomial m;
  const int r = kMaxVariables - 1 - var;
  m.words_[static_cast<std::size_t>(r / 8)] = static_cast<std::uint64_t>(exponent) << (8 * (7 - r % 8));
  m.degree_ = static_cast<std::uint32_t>(exponent);
  m.support_ = exponent ? 1U << var : 0U;
  return m;
}

Monomial Monomial::from_exponents(std::span<const int> exponents) {
  if (exponents.size() > kMaxVariables) throw std::out_of_range("too many variables");
  Monomial m;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] < 0 || exponents[v] > kMaxExponent) exponent_overflow();
    const int r = kMaxVariables - 1 - static_cast<int>(v);
    m.words_[static_cast<std::size_t>(r / 8)] |= static_cast<std::uint64_t>(exponents[v]) << (8 * (7 - r % 8));
  }
  m.recompute();
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::uint64_t high = 0;
  for (std::size_t w = 0; w < m.words_.size(); ++w) {
    m.words_[w] = a.words_[w] + b.words_[w];
    high |= m.words_[w];
  }
  if (high & kHigh) exponent_overflow();
  m.degree_ = a.degree_ + b.degree_;
  m.support_ = a.support_ | b.support_;
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t w = 0; w < m.words_.size(); ++w) m.words_[w] = a.words_[w] - b.words_[w];
  m.degree_ = a.degree_ - b.degree_;
  m.support_ = 0;
  for (int v = 0; v < kMaxVariables; ++v) {
    if ((a.support_ >> v) & 1U && m.exponent(v)) m.support_ |= 1U << v;
  }
  return m;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t w = 0; w < m.words_.size(); ++w) {
    std::uint64_t out = 0;
    for (int byte = 0; byte < 8; ++byte) {
      const std::uint64_t mask = std::uint64_t{0xFF} << (8 * byte);
      out |= std::max(a.words_[w] & mask, b.words_[w] & mask);
    }
    m.words_[w] = out;
  }
  m.support_ = a.support_ | b.support_;
  m.degree_ = 0;
  for (int v = 0; v < kMaxVariables; ++v) {
    if ((m.support_ >> v) & 1U) m.degree_ += static_cast<std::uint32_t>(m.exponent(v));
  }
  return m;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
  return h;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::from_terms(std::vector<Term> terms, const PrimeField& field) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  Polynomial out;
  for (Term& t : terms) {
    t.coeff %= field.modulus();
    if (!out.terms_.empty() && out.terms_.back().mono == t.mono) {
      out.terms_.back().coeff = field.add(out.terms_.back().coeff, t.coeff);
      if (out.terms_.back().coeff == 0) out.terms_.pop_back();
    } else if (t.coeff != 0) {
      out.terms_.push_back(t);
    }
  }
  return out;
}

Polynomial Polynomial::constant(Residue c) {
  Polynomial out;
  if (c != 0) out.terms_.push_back({c, Monomial{}});
  return out;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const Term& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

Polynomial& Polynomial::make_monic(const PrimeField& field) {
  if (terms_.empty() || terms_.front().coeff == 1) return *this;
  const Residue scale = field.inv(terms_.front().coeff);
  for (Term& t : terms_) t.coeff = field.mul(t.coeff, scale);
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                    [](const Term& x, const Term& y) { return x.coeff == y.coeff && x.mono == y.mono; });
}

Residue Polynomial::evaluate(std::span<const Residue> point, const PrimeField& field) const {
  Residue acc = 0;
  for (const Term& t : terms_) {
    Residue value = t.coeff;
    for (int v = 0; v < kMaxVariables; ++v) {
      const int e = t.mono.exponent(v);
      if (e) value = field.mul(value, field.pow(point[static_cast<std::size_t>(v)], static_cast<std::uint64_t>(e)));
    }
    acc = field.add(acc, value);
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

// out = f[from..] - c * m * g
void merge_sub_scaled(std::vector<Term>& out, std::span<const Term> f, Residue c, const Monomial& m,
                      std::span<const Term> g, const PrimeField& field) {
  out.clear();
  out.reserve(f.size() + g.size());
  const Residue neg_c = field.neg(c);
  std::size_t i = 0;
  std::size_t j = 0;
  bool have_scaled = j < g.size();
  Monomial scaled = have_scaled ? g[0].mono * m : Monomial{};
  while (i < f.size() && have_scaled) {
    const auto cmp = f[i].mono <=> scaled;
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back({field.mul(neg_c, g[j].coeff), scaled});
      if (++j < g.size()) scaled = g[j].mono * m; else have_scaled = false;
    } else {
      const Residue coeff = field.add(f[i].coeff, field.mul(neg_c, g[j].coeff));
      if (coeff) out.push_back({coeff, scaled});
      ++i;
      if (++j < g.size()) scaled = g[j].mono * m; else have_scaled = false;
    }
  }
  while (i < f.size()) out.push_back(f[i++]);
  while (have_scaled) {
    out.push_back({field.mul(neg_c, g[j].coeff), scaled});
    if (++j < g.size()) scaled = g[j].mono * m; else have_scaled = false;
  }
}

}  // namespace

Polynomial PolyOps::add(const Polynomial& a, const Polynomial& b) const {
  return sub_scaled(a, field_.neg(1), Monomial{}, b);
}

Polynomial PolyOps::sub(const Polynomial& a, const Polynomial& b) const { return sub_scaled(a, 1, Monomial{}, b); }

Polynomial PolyOps::scale(const Polynomial& a, Residue c, const Monomial& m) const {
  return sub_scaled(Polynomial{}, field_.neg(c), m, a);
}

Polynomial PolyOps::sub_scaled(const Polynomial& f, Residue c, const Monomial& m, const Polynomial& g) const {
  Polynomial out;
  if (c % field_.modulus() == 0) {
    out = f;
    return out;
  }
  merge_sub_scaled(out.terms_, f.terms_, c, m, g.terms_, field_);
  return out;
}

Polynomial PolyOps::mul(const Polynomial& a, const Polynomial& b) const {
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const Term& x : a.terms()) {
    for (const Term& y : b.terms()) terms.push_back({field_.mul(x.coeff, y.coeff), x.mono * y.mono});
  }
  return Polynomial::from_terms(std::move(terms), field_);
}

Polynomial PolyOps::s_polynomial(const Polynomial& f, const Polynomial& g) const {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("S-polynomial of zero");
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  const Residue cf = field_.inv(f.leading().coeff);
  const Residue cg = field_.inv(g.leading().coeff);
  Polynomial left = scale(f, cf, l / f.leading_monomial());
  return sub_scaled(left, cg, l / g.leading_monomial(), g);
}

Polynomial PolyOps::reduce(const Polynomial& f, std::span<const Polynomial> divisors) const {
  std::vector<const Polynomial*> ptrs;
  ptrs.reserve(divisors.size());
  for (const Polynomial& d : divisors) ptrs.push_back(&d);
  return reduce(f, std::span<const Polynomial* const>(ptrs));
}

Polynomial PolyOps::reduce(const Polynomial& f, std::span<const Polynomial* const> divisors) const {
  std::vector<Term> remainder;
  std::vector<Term> cur = f.terms_;
  std::vector<Term> scratch;
  std::size_t pos = 0;
  while (pos < cur.size()) {
    const Term lead = cur[pos];
    const Polynomial* divisor = nullptr;
    for (const Polynomial* d : divisors) {
      if (d->leading_monomial().divides(lead.mono)) {
        divisor = d;
        break;
      }
    }
    if (!divisor) {
      remainder.push_back(lead);
      ++pos;
      continue;
    }
    const Residue c = field_.mul(lead.coeff, field_.inv(divisor->leading().coeff));
    const Monomial m = lead.mono / divisor->leading_monomial();
    // The leading terms cancel; merge the tails.
    merge_sub_scaled(scratch, std::span<const Term>(cur).subspan(pos + 1), c, m,
                     std::span<const Term>(divisor->terms_).subspan(1), field_);
    std::swap(cur, scratch);
    pos = 0;
  }
  Polynomial out;
  out.terms_ = std::move(remainder);
  return out;
}

std::string format_polynomial(const Polynomial& f, std::span<const std::string> names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const Term& t : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (int v = 0; v < kMaxVariables; ++v) {
      const int e = t.mono.exponent(v);
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += static_cast<std::size_t>(v) < names.size() ? names[static_cast<std::size_t>(v)] : "v" + std::to_string(v);
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty()) {
      out += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      out += mono;
    } else {
      out += std::to_string(t.coeff) + '*' + mono;
    }
  }
  return out;
}

}  // namespace rigidity
