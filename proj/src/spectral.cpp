#include "unistab/spectral.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "unistab/chains.hpp"
#include "unistab/error.hpp"
#include "unistab/unitary.hpp"

namespace unistab {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse");
  return pow_mod(a, p - 2, p);
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t p) {
  const std::int64_t m = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
}

void require_prime(std::uint64_t p, const char* what) {
  if (!is_prime(p) || p > kLargePrime) throw PreconditionError(std::string(what) + " must be a prime below 2^31");
}

// a - c b for sorted sparse vectors over F_p
ModVec axpy(const ModVec& a, std::uint64_t c, const ModVec& b, std::uint64_t p) {
  ModVec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  const std::uint64_t neg = (p - c % p) % p;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, static_cast<std::uint32_t>(neg * b[j].second % p));
      ++j;
    } else {
      const std::uint64_t v = (a[i].second + neg * b[j].second) % p;
      if (v) r.emplace_back(a[i].first, static_cast<std::uint32_t>(v));
      ++i;
      ++j;
    }
  }
  return r;
}

// Kernel of m over F_p by column reduction, tracking the column operations.
std::vector<ModVec> kernel_basis(const SparseMatrix& m, std::uint64_t p) {
  std::vector<std::int64_t> owner(m.rows(), -1);
  std::vector<ModVec> reduced, combos, kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    ModVec r = to_modvec(m.column(j), p);
    ModVec v{{static_cast<std::uint32_t>(j), 1}};
    while (!r.empty() && owner[r.back().first] >= 0) {
      const auto k = static_cast<std::size_t>(owner[r.back().first]);
      const std::uint64_t c = r.back().second;
      r = axpy(r, c, reduced[k], p);
      v = axpy(v, c, combos[k], p);
    }
    if (r.empty()) {
      kernel.push_back(std::move(v));
      continue;
    }
    const std::uint64_t s = inv_mod(r.back().second, p);
    for (auto& e : r) e.second = static_cast<std::uint32_t>(e.second * s % p);
    for (auto& e : v) e.second = static_cast<std::uint32_t>(e.second * s % p);
    owner[r.back().first] = static_cast<std::int64_t>(reduced.size());
    reduced.push_back(std::move(r));
    combos.push_back(std::move(v));
  }
  return kernel;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Permutation of the simplex list induced by g.
std::vector<std::uint32_t> simplex_permutation(const HyperbolicSpace& space, const UnitaryMatrix& g,
                                               const SimplexList& list) {
  std::vector<std::uint32_t> perm(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto s = list[i];
    const LineFrame image = act(space, g, LineFrame(s.begin(), s.end()));
    const auto j = list.find(image);
    if (!j) throw std::logic_error("group element does not preserve the frame complex");
    perm[i] = static_cast<std::uint32_t>(*j);
  }
  return perm;
}

// Orbit index per simplex (orbits numbered by first occurrence) and the representatives.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> orbits(
    const std::vector<std::vector<std::uint32_t>>& perms, std::size_t size) {
  UnionFind uf(size);
  for (const auto& perm : perms)
    for (std::size_t i = 0; i < size; ++i) uf.unite(static_cast<std::uint32_t>(i), perm[i]);
  std::vector<std::uint32_t> label(size), reps;
  std::map<std::uint32_t, std::uint32_t> root_label;
  for (std::size_t i = 0; i < size; ++i) {
    const auto [it, fresh] = root_label.emplace(uf.find(static_cast<std::uint32_t>(i)),
                                                static_cast<std::uint32_t>(root_label.size()));
    if (fresh) reps.push_back(static_cast<std::uint32_t>(i));
    label[i] = it->second;
  }
  return {label, reps};
}

PosetSpec frame_spec(const HyperbolicSpace& space) {
  PosetSpec spec;
  spec.kind = PosetKind::iu_proj;
  spec.field = space.field();
  spec.eps = space.eps();
  spec.n = space.rank();
  return spec;
}

}  // namespace

std::size_t rank_mod(ModMatrix m, std::uint64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t s = inv_mod(m[rank][c] % p, p);
    for (auto& x : m[rank]) x = x % p * s % p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] % p == 0) continue;
      const std::uint64_t k = m[r][c] % p;
      for (std::size_t j = 0; j < cols; ++j) m[r][j] = (m[r][j] % p + (p - k) * m[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

bool BottomRow::transitive() const {
  for (unsigned p = 0; p <= n; ++p)
    if (dims.at(p) != 1) return false;
  for (unsigned p = 1; p <= n; ++p)
    if (orbit_sizes.at(p - 1) != frame_counts.at(p)) return false;
  return true;
}

BottomRow build_bottom_row(const HyperbolicSpace& space, std::uint64_t prime, std::uint64_t budget) {
  if (prime == 0) throw UnsupportedConfiguration("the bottom row is computed over prime fields only");
  require_prime(prime, "coefficient characteristic");
  space.require_isotropy();
  const unsigned n = space.rank();
  Poset poset(frame_spec(space), budget);
  const ChainComplex c = build_complex(poset, static_cast<int>(n) - 1);
  const auto gens = matrices(make_generators(space));

  BottomRow row;
  row.n = n;
  row.prime = prime;
  row.dims.assign(n + 2, 0);
  row.dims[0] = 1;
  row.frame_counts.push_back(1);
  // orbit labels per degree k = p - 1, with degree -1 a single orbit
  std::vector<std::vector<std::uint32_t>> labels{{0}}, reps{{0}};
  std::vector<std::vector<std::uint32_t>> top_perms;
  for (unsigned p = 1; p <= n; ++p) {
    const SimplexList& list = c.simplices(static_cast<int>(p) - 1);
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& g : gens) perms.push_back(simplex_permutation(space, g, list));
    auto [label, rep] = orbits(perms, list.size());
    row.dims[p] = rep.size();
    row.frame_counts.push_back(list.size());
    row.orbit_sizes.push_back(orbit_of_frame(space, gens, sigma(space, p), budget).size());
    labels.push_back(std::move(label));
    reps.push_back(std::move(rep));
    if (p == n) top_perms = std::move(perms);
  }

  // d_p for 1 <= p <= n: signed faces of an orbit representative, summed per orbit
  row.differentials.resize(n + 2);
  for (unsigned p = 1; p <= n; ++p) {
    const SparseMatrix& d = c.boundary(static_cast<int>(p) - 1);
    ModMatrix m(row.dims[p - 1], std::vector<std::uint64_t>(row.dims[p], 0));
    for (std::size_t o = 0; o < reps[p].size(); ++o)
      for (const Entry& e : d.column(reps[p][o])) {
        auto& x = m[labels[p - 1][e.row]][o];
        x = (x + reduce_signed(e.value, prime)) % prime;
      }
    row.differentials[p] = std::move(m);
  }

  // E_{n+1}: cycles modulo span{g z - z}
  const auto cycles = kernel_basis(c.boundary(static_cast<int>(n) - 1), prime);
  row.cycle_dim = cycles.size();
  const std::size_t top = c.dim(static_cast<int>(n) - 1);
  auto relations = std::make_shared<ModularReducer>(top, prime);
  for (const auto& perm : top_perms) {
    for (const auto& z : cycles) {
      if (relations->rank() == row.cycle_dim) break;
      ModVec gz;
      for (const auto& [i, v] : z) gz.emplace_back(perm[i], v);
      std::sort(gz.begin(), gz.end());
      relations->add(axpy(gz, 1, z, prime));
    }
  }
  row.relation_rank = relations->rank();
  ModularReducer extended = *relations;
  for (const auto& z : cycles)
    if (extended.add(z)) row.top_basis.push_back(z);
  if (row.top_basis.size() + row.relation_rank != row.cycle_dim)
    throw std::logic_error("relations are not contained in the cycles");
  row.dims[n + 1] = row.top_basis.size();

  ModMatrix top_map(row.dims[n], std::vector<std::uint64_t>(row.dims[n + 1], 0));
  for (std::size_t b = 0; b < row.top_basis.size(); ++b)
    for (const auto& [i, v] : row.top_basis[b]) {
      auto& x = top_map[labels[n][i]][b];
      x = (x + v) % prime;
    }
  row.differentials[n + 1] = std::move(top_map);
  row.relations = std::move(relations);
  row.top_simplices = std::make_shared<SimplexList>(c.simplices(static_cast<int>(n) - 1));
  row.top_orbit = labels[n];
  return row;
}

RowVerdict check_e2_vanishing(const BottomRow& row) {
  RowVerdict v;
  auto rank = [&](unsigned p) -> std::size_t {
    if (p == 0 || p >= row.differentials.size()) return 0;
    return rank_mod(row.differentials[p], row.prime);
  };
  v.pass = true;
  for (unsigned p = 0; p <= row.n; ++p) {
    const std::size_t h = row.dims[p] - rank(p) - rank(p + 1);
    v.homology.push_back(h);
    if (h != 0 && v.pass) {
      v.pass = false;
      v.failing_position = p;
    }
  }
  return v;
}

namespace {

using Chain = std::map<LineFrame, std::int64_t>;

void add_term(Chain& c, const LineFrame& f, std::int64_t v) {
  auto& x = c[f];
  x += v;
  if (x == 0) c.erase(f);
}

Chain boundary_of(const Chain& c) {
  Chain out;
  for (const auto& [f, v] : c)
    for (std::size_t i = 0; i < f.size(); ++i) {
      LineFrame face = f;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      add_term(out, face, i % 2 == 0 ? v : -v);
    }
  return out;
}

struct ThetaLines {
  std::uint32_t e1, e3, f;
};

ThetaLines theta_lines(const HyperbolicSpace& space) {
  const Field& fld = space.field();
  Vector sum = space.e(1);
  sum[2] = fld.one();
  const auto codes = line_frame(space, {space.e(1), space.e(3), sum});
  return {codes[0], codes[1], codes[2]};
}

// alpha on one frame of the small complex, already in ambient codes.
Chain alpha_of(const ThetaLines& t, const LineFrame& tail, std::int64_t v) {
  Chain out;
  auto with = [&](std::uint32_t a, std::uint32_t b) {
    LineFrame f{a, b};
    f.insert(f.end(), tail.begin(), tail.end());
    return f;
  };
  add_term(out, with(t.e1, t.e3), v);
  add_term(out, with(t.e1, t.f), -v);
  add_term(out, with(t.e3, t.f), v);
  return out;
}

Chain alpha_of(const ThetaLines& t, const Chain& c) {
  Chain out;
  for (const auto& [f, v] : c)
    for (const auto& [g, w] : alpha_of(t, f, v)) add_term(out, g, w);
  return out;
}

}  // namespace

ThetaReport theta_check(const BottomRow& row, const HyperbolicSpace& space) {
  if (row.n != 2 || space.rank() != 2) throw PreconditionError("theta lives in C_1(X_2)");
  const auto t = theta_lines(space);
  const Chain theta = alpha_of(t, LineFrame{}, 1);
  ThetaReport r;
  const SimplexList& list = *row.top_simplices;
  ModVec vec;
  r.frames_valid = true;
  for (const auto& [f, v] : theta) {
    const auto idx = list.find(f);
    if (!idx) {
      r.frames_valid = false;
      continue;
    }
    vec.emplace_back(static_cast<std::uint32_t>(*idx), reduce_signed(v, row.prime));
  }
  std::sort(vec.begin(), vec.end());
  r.boundary_zero = boundary_of(theta).empty();
  if (!r.frames_valid) return r;
  // X_2 has no 2-simplices, so the boundary image in C_1 is zero and the
  // class is nonzero iff adjoining theta raises the rank of that image
  ModularReducer image(list.size(), row.prime);
  r.class_nonzero = r.boundary_zero && image.add(vec);
  r.coinvariant_nonzero = r.boundary_zero && !row.relations->in_span(vec);
  std::uint64_t sum = 0;
  for (const auto& [i, v] : vec) sum = (sum + v) % row.prime;
  r.d1_value = sum;
  return r;
}

ThetaReport theta_check(const HyperbolicSpace& space, std::uint64_t prime) {
  return theta_check(build_bottom_row(space, prime), space);
}

AlphaReport alpha_chain_map_check(const HyperbolicSpace& space, std::uint64_t samples, std::uint64_t seed) {
  const unsigned n = space.rank();
  if (n < 2) throw PreconditionError("alpha needs n >= 2");
  space.require_isotropy();
  Poset big(frame_spec(space));
  const auto t = theta_lines(space);
  AlphaReport r;
  r.n = n;

  auto valid = [&](const Chain& c) {
    return std::all_of(c.begin(), c.end(), [&](const auto& kv) { return big.is_simplex(kv.first); });
  };
  const Chain theta = alpha_of(t, LineFrame{}, 1);
  r.empty_simplex_ok = valid(theta) && boundary_of(theta).empty();

  // simplices of X_{n-2}, embedded on e5..e2n
  std::vector<LineFrame> small;
  if (n > 2) {
    const HyperbolicSpace sub = space.with_rank(n - 2);
    Poset sp(frame_spec(sub));
    auto embed_code = [&](std::uint32_t code) {
      Vector v(4, space.field().zero());
      const Vector w = sub.codec().decode(code);
      v.insert(v.end(), w.begin(), w.end());
      return space.codec().encode(v);
    };
    for (int k = 0; k < static_cast<int>(n) - 2; ++k) {
      const auto& list = sp.simplices(k);
      for (std::size_t i = 0; i < list.size(); ++i) {
        LineFrame f;
        for (auto code : list[i]) f.push_back(embed_code(code));
        small.push_back(std::move(f));
      }
    }
  }
  if (small.empty()) return r;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const LineFrame& sigma_frame = small[pick(rng)];
    const Chain sig{{sigma_frame, 1}};
    const Chain a = alpha_of(t, sig);
    ++r.samples;
    if (valid(a)) ++r.terms_valid;
    if (boundary_of(a) == alpha_of(t, boundary_of(sig))) ++r.commuting;
  }
  return r;
}

std::size_t coinvariants(const std::vector<ModMatrix>& actions, std::uint64_t prime) {
  require_prime(prime, "coefficient characteristic");
  if (actions.empty()) throw PreconditionError("need at least one action matrix");
  const std::size_t d = actions.front().size();
  ModMatrix stacked(d);
  for (const auto& a : actions) {
    if (a.size() != d) throw PreconditionError("action matrices differ in size");
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) stacked[r].push_back((a[r][c] + prime - (r == c ? 1 : 0)) % prime);
  }
  return d - rank_mod(stacked, prime);
}

namespace {

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b, std::uint64_t p) {
  ModMatrix c(a.size(), std::vector<std::uint64_t>(b.front().size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
  return c;
}

std::optional<ModMatrix> mat_inverse(ModMatrix m, std::uint64_t p) {
  const std::size_t d = m.size();
  ModMatrix inv(d, std::vector<std::uint64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const std::uint64_t s = inv_mod(m[c][c], p);
    for (std::size_t j = 0; j < d; ++j) {
      m[c][j] = m[c][j] * s % p;
      inv[c][j] = inv[c][j] * s % p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const std::uint64_t k = p - m[r][c];
      for (std::size_t j = 0; j < d; ++j) {
        m[r][j] = (m[r][j] + k * m[c][j]) % p;
        inv[r][j] = (inv[r][j] + k * inv[c][j]) % p;
      }
    }
  }
  return inv;
}

}  // namespace

std::size_t weight_coinvariants(unsigned q, const std::vector<unsigned>& weights, std::uint64_t prime,
                                std::optional<std::uint64_t> basis_seed) {
  require_prime(prime, "coefficient characteristic");
  if (q < 2) throw PreconditionError("q must be a prime power");
  const std::uint64_t m = std::gcd<std::uint64_t>(q - 1, prime - 1);
  std::uint64_t g = 1;
  for (std::uint64_t cand = 1; cand < prime; ++cand) {
    bool generator = true;
    for (std::uint64_t k = 1; k < prime - 1; ++k)
      if (pow_mod(cand, k, prime) == 1) generator = false;
    if (generator) {
      g = cand;
      break;
    }
  }
  const std::uint64_t zeta = pow_mod(g, (prime - 1) / m, prime);
  const std::size_t d = weights.size();
  if (d == 0) return 0;
  ModMatrix a(d, std::vector<std::uint64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) a[i][i] = pow_mod(zeta, weights[i], prime);
  if (basis_seed) {
    std::mt19937_64 rng(*basis_seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, prime - 1);
    while (true) {
      ModMatrix pm(d, std::vector<std::uint64_t>(d));
      for (auto& r : pm)
        for (auto& x : r) x = dist(rng);
      const auto inv = mat_inverse(pm, prime);
      if (!inv) continue;
      a = mat_mul(mat_mul(pm, a, prime), *inv, prime);
      break;
    }
  }
  return coinvariants({a}, prime);
}

std::vector<std::size_t> cyclic_power_homology(std::uint64_t p, unsigned r, std::uint64_t ell, unsigned max_degree) {
  require_prime(p, "group order");
  require_prime(ell, "coefficient characteristic");
  // periodic resolution tensored with F_ell: d_i = 0 for odd i, multiplication by p for even i >= 2
  std::vector<std::size_t> cyclic(max_degree + 1);
  auto rank_d = [&](unsigned i) -> std::size_t { return (i >= 2 && i % 2 == 0 && p % ell != 0) ? 1 : 0; };
  for (unsigned i = 0; i <= max_degree; ++i) cyclic[i] = 1 - rank_d(i) - rank_d(i + 1);
  std::vector<std::size_t> total(max_degree + 1, 0);
  total[0] = 1;
  for (unsigned k = 0; k < r; ++k) {
    std::vector<std::size_t> next(max_degree + 1, 0);
    for (unsigned i = 0; i <= max_degree; ++i)
      for (unsigned j = 0; i + j <= max_degree; ++j) next[i + j] += total[i] * cyclic[j];
    total = std::move(next);
  }
  return total;
}

std::vector<std::size_t> coprime_module_homology(std::uint64_t p, unsigned r, std::uint64_t ell,
                                                 unsigned max_degree) {
  if (p == ell) throw PreconditionError("coefficient characteristic equals the group exponent");
  return cyclic_power_homology(p, r, ell, max_degree);
}

namespace {

std::size_t log_exact(std::uint64_t x, std::uint64_t base) {
  std::size_t k = 0;
  while (x > 1) {
    if (x % base != 0) throw std::logic_error("index is not a power of the coefficient characteristic");
    x /= base;
    ++k;
  }
  return k;
}

}  // namespace

bool StabilityReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const StabilityRow& r) { return r.consistent(); });
}

StabilityReport h1_stability_check(const HyperbolicSpace& family, unsigned max_n, std::uint64_t ell) {
  require_prime(ell, "coefficient characteristic");
  const Field& f = family.field();
  if (f.characteristic() == ell)
    throw PreconditionError("coefficient characteristic equals the characteristic of the field");
  if (max_n < 2) throw PreconditionError("need max_n >= 2 for a stability map");
  StabilityReport rep;
  rep.ell = ell;
  std::vector<std::vector<UnitaryMatrix>> gens;
  std::vector<StabilizerChain> power;  // <[G,G], g^ell>
  for (unsigned n = 1; n <= max_n; ++n) {
    const HyperbolicSpace s = family.with_rank(n);
    gens.push_back(matrices(make_generators(s)));
    const StabilizerChain g(f, s.dim(), gens.back());
    const StabilizerChain d = derived_subgroup(f, s.dim(), gens.back());
    power.push_back(power_subgroup(d, gens.back(), ell));
    rep.h1_dims.push_back(log_exact(g.order() / power.back().order(), ell));
    rep.abelianizations.push_back(abelianization(f, s.dim(), gens.back()));
  }
  for (unsigned n = 1; n < max_n; ++n) {
    rep.rows.push_back({0, n, 1, 1, 1});
    StabilizerChain image = power[n];
    for (const auto& g : gens[n - 1]) image.add_generator(include_block(f, g));
    rep.rows.push_back({1, n, rep.h1_dims[n - 1], rep.h1_dims[n], log_exact(image.order() / power[n].order(), ell)});
  }
  return rep;
}

nlohmann::json row_to_json(const BottomRow& row, const RowVerdict& v) {
  nlohmann::json d = nlohmann::json::array();
  for (std::size_t p = 1; p < row.differentials.size(); ++p) d.push_back({{"p", p}, {"matrix", row.differentials[p]}});
  nlohmann::json j{{"n", row.n},
                   {"coeff", "F" + std::to_string(row.prime)},
                   {"dims", row.dims},
                   {"frame_counts", row.frame_counts},
                   {"orbit_sizes", row.orbit_sizes},
                   {"transitive", row.transitive()},
                   {"differentials", d},
                   {"cycle_dim", row.cycle_dim},
                   {"relation_rank", row.relation_rank},
                   {"row_homology", v.homology},
                   {"verdict", v.pass ? "PASS" : "FAIL"},
                   {"evidence", to_string(row.evidence)}};
  j["failing_position"] = v.failing_position ? nlohmann::json(*v.failing_position) : nlohmann::json(nullptr);
  if (row.n == 1) j["note"] = "top term uses reduced H_0(X_1), the kernel of the augmentation";
  return j;
}

nlohmann::json theta_to_json(const ThetaReport& t) {
  return {{"frames_valid", t.frames_valid},   {"boundary_zero", t.boundary_zero},
          {"class_nonzero", t.class_nonzero}, {"coinvariant_nonzero", t.coinvariant_nonzero},
          {"d1_value", t.d1_value},
          {"verdict", t.frames_valid && t.boundary_zero && t.class_nonzero && t.d1_value == 1 ? "PASS" : "FAIL"},
          {"evidence", "exhaustive"}};
}

nlohmann::json alpha_to_json(const AlphaReport& a) {
  return {{"n", a.n},
          {"samples", a.samples},
          {"terms_valid", a.terms_valid},
          {"commuting", a.commuting},
          {"empty_simplex_ok", a.empty_simplex_ok},
          {"verdict", a.pass() ? "PASS" : "FAIL"},
          {"evidence", "sampled"}};
}

nlohmann::json stability_to_json(const StabilityReport& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"l", r.l},
                    {"n", r.n},
                    {"source_dim", r.source_dim},
                    {"target_dim", r.target_dim},
                    {"image_dim", r.image_dim},
                    {"surjective", r.surjective()},
                    {"injective", r.injective()},
                    {"surjectivity_claimed", r.surjectivity_claimed()},
                    {"injectivity_claimed", r.injectivity_claimed()},
                    {"consistent", r.consistent()}});
  return {{"coeff", "F" + std::to_string(s.ell)},
          {"h1_dims", s.h1_dims},
          {"abelianizations", s.abelianizations},
          {"rows", rows},
          {"verdict", s.pass() ? "PASS" : "FAIL"},
          {"evidence", "exhaustive"}};
}

}  // namespace unistab
