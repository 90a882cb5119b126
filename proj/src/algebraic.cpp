#include "rigidity/algebraic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "rigidity/matroid.hpp"

namespace rigidity {

std::string_view to_string(Mode mode) { return mode == Mode::Plane ? "plane" : "sphere"; }

Mode parse_mode(std::string_view text) {
  if (text == "plane") return Mode::Plane;
  if (text == "sphere") return Mode::Sphere;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected plane or sphere)");
}

void SolverConfig::validate() const {
  if (primes.empty()) throw std::invalid_argument("solver needs at least one prime");
  std::vector<std::uint32_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("solver primes must be distinct");
  }
  for (std::uint32_t p : primes) {
    if (p <= (1U << 20)) throw std::invalid_argument("solver prime " + std::to_string(p) + " is not above 2^20");
    PrimeField{p};
  }
  if (quorum < 1 || static_cast<std::size_t>(quorum) > primes.size()) {
    throw std::invalid_argument("quorum must be between 1 and the number of primes");
  }
  if (max_resamples < 1) throw std::invalid_argument("max_resamples must be positive");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

// Two vertices only admit the reflection in the pinned line (or meridian)
// as a residual symmetry; larger rigid graphs have four.
std::uint64_t orbit_multiplicity(const Graph& g) { return g.vertex_count() == 2 ? 2 : 4; }

Residue uniform(std::mt19937_64& rng, const PrimeField& field) {
  return static_cast<Residue>(rng() % field.modulus());
}

void require_rigid(const Graph& g) {
  if (g.vertex_count() < 2 || !is_rigid(g)) {
    throw GraphError("pinned systems need a rigid graph (finite fibre)");
  }
}

// Polynomial builder over a fixed variable layout; -1 marks a pinned
// coordinate with a known constant value.
class SystemBuilder {
 public:
  SystemBuilder(const PrimeField& field, int vertex_count, int dims)
      : field_(field), ops_(field), dims_(dims),
        index_(static_cast<std::size_t>(vertex_count) * static_cast<std::size_t>(dims), -1),
        pinned_(index_.size(), 0) {}

  void assign_variables(const char* coord_names) {
    const int n = static_cast<int>(index_.size()) / dims_;
    std::vector<bool> is_pinned(index_.size(), false);
    for (const auto& [v, c] : pinned_list_) is_pinned[slot(v, c)] = true;
    for (int v = 0; v < n; ++v) {
      for (int c = 0; c < dims_; ++c) {
        if (is_pinned[slot(v, c)]) continue;
        index_[slot(v, c)] = static_cast<int>(names_.size());
        names_.push_back(std::string(1, coord_names[c]) + std::to_string(v + 1));
      }
    }
    if (names_.size() > static_cast<std::size_t>(kMaxVariables)) {
      throw GraphError("pinned system needs " + std::to_string(names_.size()) + " variables; at most " +
                       std::to_string(kMaxVariables) + " are supported");
    }
  }

  void mark_pinned(int v, int coord, Residue value) {
    pinned_list_.emplace_back(v, coord);
    pinned_[slot(v, coord)] = value;
  }

  // Coordinate as a polynomial: a variable or its pinned constant.
  Polynomial coordinate(int v, int coord) const {
    const int idx = index_[slot(v, coord)];
    if (idx < 0) return Polynomial::constant(pinned_[slot(v, coord)]);
    return Polynomial::from_terms({{1, Monomial::variable(idx)}}, field_);
  }

  const PolyOps& ops() const { return ops_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::size_t slot(int v, int coord) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(dims_) + static_cast<std::size_t>(coord);
  }

  const PrimeField& field_;
  PolyOps ops_;
  int dims_;
  std::vector<int> index_;
  std::vector<Residue> pinned_;
  std::vector<std::pair<int, int>> pinned_list_;
  std::vector<std::string> names_;
};

}  // namespace

PolynomialSystem build_planar_system(const Graph& g, const PrimeField& field, std::mt19937_64& rng,
                                     int max_resamples) {
  require_rigid(g);
  const int n = g.vertex_count();
  const std::vector<Edge> edges = g.edges();
  PolynomialSystem sys;
  sys.modulus = field.modulus();

  auto squared_distance = [&](const std::vector<Residue>& p, const std::vector<Residue>& q) {
    const Residue dx = field.sub(p[0], q[0]);
    const Residue dy = field.sub(p[1], q[1]);
    return field.add(field.mul(dx, dx), field.mul(dy, dy));
  };

  bool ok = false;
  for (int attempt = 0; attempt < max_resamples && !ok; ++attempt) {
    sys.realisation.assign(static_cast<std::size_t>(n), std::vector<Residue>(2));
    for (auto& p : sys.realisation) {
      p[0] = uniform(rng, field);
      p[1] = uniform(rng, field);
    }
    // Coincident points and isotropic (zero-length) pairs are degenerate.
    ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) {
        if (squared_distance(sys.realisation[static_cast<std::size_t>(i)],
                             sys.realisation[static_cast<std::size_t>(j)]) == 0) {
          ok = false;
        }
      }
    }
  }
  if (!ok) throw SolverError("planar sampling: resample budget exhausted");

  const Edge pin = edges.front();
  SystemBuilder b(field, n, 2);
  b.mark_pinned(pin.u, 0, 0);
  b.mark_pinned(pin.u, 1, 0);
  b.mark_pinned(pin.v, 1, 0);
  b.assign_variables("xy");
  sys.variables = b.names();

  const PolyOps& ops = b.ops();
  for (const Edge& e : edges) {
    const Residue lambda = squared_distance(sys.realisation[static_cast<std::size_t>(e.u)],
                                            sys.realisation[static_cast<std::size_t>(e.v)]);
    sys.measurements.push_back(lambda);
    const Polynomial dx = ops.sub(b.coordinate(e.u, 0), b.coordinate(e.v, 0));
    const Polynomial dy = ops.sub(b.coordinate(e.u, 1), b.coordinate(e.v, 1));
    Polynomial eq = ops.add(ops.mul(dx, dx), ops.mul(dy, dy));
    eq = ops.sub(eq, Polynomial::constant(lambda));
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

PolynomialSystem build_spherical_system(const Graph& g, const PrimeField& field, std::mt19937_64& rng,
                                        int max_resamples) {
  require_rigid(g);
  const int n = g.vertex_count();
  PolynomialSystem sys;
  sys.modulus = field.modulus();
  const Residue one = 1;
  const Residue minus_one = field.neg(1);

  auto inner = [&](const std::vector<Residue>& p, const std::vector<Residue>& q) {
    return field.add(field.add(field.mul(p[0], q[0]), field.mul(p[1], q[1])), field.mul(p[2], q[2]));
  };

  bool ok = false;
  for (int attempt = 0; attempt < max_resamples && !ok; ++attempt) {
    sys.realisation.assign(static_cast<std::size_t>(n), std::vector<Residue>(3));
    ok = true;
    for (auto& p : sys.realisation) {
      // (2a, 2b, 1 - a^2 - b^2) / (1 + a^2 + b^2) lies on x^2 + y^2 + z^2 = 1.
      const Residue a = uniform(rng, field);
      const Residue bb = uniform(rng, field);
      const Residue sq = field.add(field.mul(a, a), field.mul(bb, bb));
      const Residue d = field.add(1, sq);
      if (d == 0) {
        ok = false;
        break;
      }
      const Residue inv_d = field.inv(d);
      p[0] = field.mul(field.add(a, a), inv_d);
      p[1] = field.mul(field.add(bb, bb), inv_d);
      p[2] = field.mul(field.sub(1, sq), inv_d);
    }
    // Coincident or antipodal pairs (inner product +-1) are degenerate.
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) {
        const Residue ip = inner(sys.realisation[static_cast<std::size_t>(i)],
                                 sys.realisation[static_cast<std::size_t>(j)]);
        if (ip == one || ip == minus_one) ok = false;
      }
    }
  }
  if (!ok) throw SolverError("spherical sampling: resample budget exhausted");

  SystemBuilder b(field, n, 3);
  b.mark_pinned(0, 0, 0);
  b.mark_pinned(0, 1, 0);
  b.mark_pinned(0, 2, 1);
  b.mark_pinned(1, 1, 0);
  b.assign_variables("xyz");
  sys.variables = b.names();

  const PolyOps& ops = b.ops();
  auto inner_poly = [&](int u, int v) {
    Polynomial acc;
    for (int c = 0; c < 3; ++c) acc = ops.add(acc, ops.mul(b.coordinate(u, c), b.coordinate(v, c)));
    return acc;
  };
  for (int v = 1; v < n; ++v) sys.equations.push_back(ops.sub(inner_poly(v, v), Polynomial::constant(1)));
  for (const Edge& e : g.edges()) {
    const Residue gij = inner(sys.realisation[static_cast<std::size_t>(e.u)],
                              sys.realisation[static_cast<std::size_t>(e.v)]);
    sys.measurements.push_back(gij);
    sys.equations.push_back(ops.sub(inner_poly(e.u, e.v), Polynomial::constant(gij)));
  }
  return sys;
}

SolverRun solve_pinned(const Graph& g, Mode mode, std::uint32_t prime, std::uint64_t seed, int max_resamples) {
  const PrimeField field(prime);
  std::mt19937_64 rng(seed);
  SolverRun run{prime, seed, 0, 0, {}};
  for (; run.resamples < max_resamples; ++run.resamples) {
    const PolynomialSystem sys = mode == Mode::Plane ? build_planar_system(g, field, rng, max_resamples)
                                                     : build_spherical_system(g, field, rng, max_resamples);
    const auto basis = groebner_basis(sys.equations, field, &run.stats);
    const auto degree = count_ideal_degree(basis, static_cast<int>(sys.variables.size()));
    if (degree && *degree > 0 && *degree % orbit_multiplicity(g) == 0) {
      run.pinned_degree = *degree;
      return run;
    }
  }
  throw SolverError("pinned solve for p=" + std::to_string(prime) + " failed after " +
                    std::to_string(max_resamples) + " samples");
}

DirectCountReport direct_count_report(const Graph& g, Mode mode, const SolverConfig& cfg) {
  cfg.validate();
  require_rigid(g);
  DirectCountReport report;
  std::map<std::uint64_t, int> votes;
  for (std::size_t k = 0; k < cfg.primes.size(); ++k) {
    const std::uint64_t seed = splitmix64(cfg.seed ^ splitmix64(k + 1));
    SolverRun run;
    try {
      run = solve_pinned(g, mode, cfg.primes[k], seed, cfg.max_resamples);
    } catch (const SolverError&) {
      continue;
    }
    report.runs.push_back(run);
    if (++votes[run.pinned_degree] >= cfg.quorum) {
      report.value = static_cast<unsigned long>(run.pinned_degree / orbit_multiplicity(g));
      for (const SolverRun& r : report.runs) {
        if (r.pinned_degree != run.pinned_degree) ++report.disagreements;
      }
      return report;
    }
  }
  std::ostringstream msg;
  msg << "no quorum of " << cfg.quorum << " agreeing runs; pinned degrees:";
  for (const SolverRun& r : report.runs) msg << ' ' << r.pinned_degree << "(p=" << r.prime << ')';
  throw SolverError(msg.str());
}

mpz_class direct_count(const Graph& g, Mode mode, const SolverConfig& cfg) {
  return direct_count_report(g, mode, cfg).value;
}

mpz_class base_count(const Graph& g, Mode mode, const SolverConfig& cfg) {
  if (g.vertex_count() < 2 || !is_minimally_rigid(g)) {
    throw GraphError("base count needs a minimally rigid graph");
  }
  return direct_count(g, mode, cfg);
}

std::string format_basis(const std::vector<Polynomial>& basis, const std::vector<std::string>& names) {
  std::string out;
  for (const Polynomial& f : basis) {
    out += format_polynomial(f, names);
    out += '\n';
  }
  return out;
}

}  // namespace rigidity
