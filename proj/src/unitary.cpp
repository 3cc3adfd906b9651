#include "unistab/unitary.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "unistab/error.hpp"
#include "unistab/frames.hpp"

namespace unistab {

// ---------------------------------------------------------------- matrices

UnitaryMatrix::UnitaryMatrix(std::size_t dim) : dim_(static_cast<std::uint8_t>(dim)) {
  if (dim == 0 || dim > kMaxDim) throw PreconditionError("matrix dimension must be in 1..8");
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  UnitaryMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, Scalar{1});
  return m;
}

Vector UnitaryMatrix::column(std::size_t c) const {
  Vector v(dim_);
  for (std::size_t r = 0; r < dim_; ++r) v[r] = at(r, c);
  return v;
}

bool UnitaryMatrix::is_identity() const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      if (a_[r * kMaxDim + c] != (r == c ? 1 : 0)) return false;
  return true;
}

std::size_t UnitaryMatrix::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ dim_;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) {
      h ^= a_[r * kMaxDim + c];
      h *= 1099511628211ULL;
    }
  return static_cast<std::size_t>(h);
}

UnitaryMatrix multiply(const Field& f, const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw PreconditionError("matrix dimension mismatch");
  const std::size_t d = a.dim();
  UnitaryMatrix c(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const Scalar x = a.at(r, k);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < d; ++j) c.set(r, j, f.add(c.at(r, j), f.mul(x, b.at(k, j))));
    }
  return c;
}

UnitaryMatrix inverse(const Field& f, const UnitaryMatrix& a) {
  const std::size_t d = a.dim();
  UnitaryMatrix m = a;
  UnitaryMatrix inv = UnitaryMatrix::identity(d);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && f.is_zero(m.at(piv, col))) ++piv;
    if (piv == d) throw DomainError("singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < d; ++j) {
        Scalar t = m.at(col, j);
        m.set(col, j, m.at(piv, j));
        m.set(piv, j, t);
        t = inv.at(col, j);
        inv.set(col, j, inv.at(piv, j));
        inv.set(piv, j, t);
      }
    const Scalar s = f.inv(m.at(col, col));
    for (std::size_t j = 0; j < d; ++j) {
      m.set(col, j, f.mul(s, m.at(col, j)));
      inv.set(col, j, f.mul(s, inv.at(col, j)));
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || f.is_zero(m.at(r, col))) continue;
      const Scalar k = m.at(r, col);
      for (std::size_t j = 0; j < d; ++j) {
        m.set(r, j, f.sub(m.at(r, j), f.mul(k, m.at(col, j))));
        inv.set(r, j, f.sub(inv.at(r, j), f.mul(k, inv.at(col, j))));
      }
    }
  }
  return inv;
}

Vector apply(const Field& f, const UnitaryMatrix& m, const Vector& v) {
  if (v.size() != m.dim()) throw PreconditionError("vector dimension mismatch");
  Vector out(v.size(), f.zero());
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (f.is_zero(v[c])) continue;
    for (std::size_t r = 0; r < v.size(); ++r) out[r] = f.add(out[r], f.mul(m.at(r, c), v[c]));
  }
  return out;
}

UnitaryMatrix commutator(const Field& f, const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return multiply(f, multiply(f, a, b), multiply(f, inverse(f, a), inverse(f, b)));
}

UnitaryMatrix from_rows(const Field& f, const std::vector<std::vector<unsigned>>& rows) {
  UnitaryMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw PreconditionError("matrix must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) m.set(r, c, f.element(rows[r][c]));
  }
  return m;
}

bool is_member(const HyperbolicSpace& space, const UnitaryMatrix& m) {
  if (m.dim() != space.dim()) return false;
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m.dim(); ++c) cols.push_back(m.column(c));
  if (!independent(space.field(), cols, m.dim())) return false;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (space.h(cols[i], cols[j]) != space.h(space.e(i + 1), space.e(j + 1))) return false;
  return true;
}

// -------------------------------------------------------------- generators

namespace {

// F_p-basis of an additive subgroup of F, greedily in index order.
std::vector<Scalar> additive_basis(const Field& f, const std::vector<Scalar>& subgroup) {
  std::set<std::uint8_t> span{0};
  std::vector<Scalar> basis;
  for (Scalar x : subgroup) {
    if (span.count(x.value)) continue;
    basis.push_back(x);
    std::set<std::uint8_t> next;
    for (auto s : span)
      for (unsigned k = 0; k < f.characteristic(); ++k)
        next.insert(f.add(Scalar{s}, f.mul(f.from_int(k), x)).value);
    span = std::move(next);
  }
  return basis;
}

}  // namespace

std::vector<Generator> make_generators(const HyperbolicSpace& space) {
  const Field& f = space.field();
  const std::size_t d = space.dim();
  const unsigned n = space.rank();
  const Scalar eps = space.eps();
  std::vector<Generator> out;
  const Scalar a = f.primitive_element();
  for (unsigned i = 1; i <= n; ++i) {
    UnitaryMatrix m = UnitaryMatrix::identity(d);
    m.set(2 * i - 2, 2 * i - 2, a);
    m.set(2 * i - 1, 2 * i - 1, f.inv(f.conj(a)));
    out.push_back({"torus", {i}, a, m});
  }
  for (unsigned i = 1; i <= n; ++i) {
    // e_{2i-1} -> e_{2i}, e_{2i} -> eps e_{2i-1}
    UnitaryMatrix m = UnitaryMatrix::identity(d);
    m.set(2 * i - 2, 2 * i - 2, f.zero());
    m.set(2 * i - 1, 2 * i - 1, f.zero());
    m.set(2 * i - 1, 2 * i - 2, f.one());
    m.set(2 * i - 2, 2 * i - 1, eps);
    out.push_back({"weyl", {i}, f.one(), m});
  }
  std::vector<Scalar> long_params;
  for (Scalar r : f.elements())
    if (f.is_zero(f.add(r, f.mul(eps, f.conj(r))))) long_params.push_back(r);
  const auto long_basis = additive_basis(f, long_params);
  for (unsigned i = 1; i <= n; ++i)
    for (Scalar r : long_basis) {
      UnitaryMatrix m = UnitaryMatrix::identity(d);
      m.set(2 * i - 2, 2 * i - 1, r);
      out.push_back({"long-root", {i}, r, m});
    }
  const auto field_basis = additive_basis(f, f.elements());
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (Scalar b : field_basis) {
        // I + b E_{2i-1,2j} - eps conj(b) E_{2j-1,2i}
        UnitaryMatrix m = UnitaryMatrix::identity(d);
        m.set(2 * i - 2, 2 * j - 1, b);
        m.set(2 * j - 2, 2 * i - 1, f.neg(f.mul(eps, f.conj(b))));
        out.push_back({"short-root", {i, j}, b, m});
        // e_{2j-1} -> e_{2j-1} + b e_{2i-1}, e_{2i} -> e_{2i} - conj(b) e_{2j}
        UnitaryMatrix g = UnitaryMatrix::identity(d);
        g.set(2 * i - 2, 2 * j - 2, b);
        g.set(2 * j - 1, 2 * i - 1, f.neg(f.conj(b)));
        out.push_back({"gl-root", {i, j}, b, g});
      }
    }
  return out;
}

std::vector<UnitaryMatrix> matrices(const std::vector<Generator>& gens) {
  std::vector<UnitaryMatrix> out;
  for (const auto& g : gens) out.push_back(g.matrix);
  return out;
}

// ------------------------------------------------------------------- chain

StabilizerChain::StabilizerChain(Field f, std::size_t dim) : f_(std::move(f)), dim_(dim), codec_(f_, dim) {}

StabilizerChain::StabilizerChain(Field f, std::size_t dim, const std::vector<UnitaryMatrix>& gens)
    : StabilizerChain(std::move(f), dim) {
  for (const auto& g : gens) add_generator(g);
}

std::uint32_t StabilizerChain::image(const UnitaryMatrix& m, std::uint32_t code) const {
  return codec_.encode(apply(f_, m, codec_.decode(code)));
}

std::pair<UnitaryMatrix, std::size_t> StabilizerChain::sift(UnitaryMatrix g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& L = levels_[i];
    const auto it = L.index.find(image(g, L.base));
    if (it == L.index.end()) return {g, i};
    g = multiply(f_, L.trans_inv[it->second], g);
  }
  return {g, levels_.size()};
}

void StabilizerChain::add_at(std::size_t level, const UnitaryMatrix& g) {
  if (level >= dim_) throw std::logic_error("sift residue fixes the whole base");
  while (levels_.size() <= level) {
    Level L;
    L.base = codec_.encode(unit_vector(dim_, levels_.size(), f_));
    L.points = {L.base};
    L.index[L.base] = 0;
    L.trans = {UnitaryMatrix::identity(dim_)};
    L.trans_inv = L.trans;
    levels_.push_back(std::move(L));
  }
  levels_[level].gens.push_back(g);
  levels_[level].gens_inv.push_back(inverse(f_, g));
  const std::uint32_t fresh = static_cast<std::uint32_t>(levels_[level].gens.size() - 1);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> work, schreier;
  for (std::uint32_t k = 0; k < levels_[level].points.size(); ++k) work.emplace_back(k, fresh);
  for (std::size_t w = 0; w < work.size(); ++w) {
    Level& L = levels_[level];
    const auto [slot, s] = work[w];
    const std::uint32_t img = image(L.gens[s], L.points[slot]);
    if (L.index.count(img)) {
      schreier.emplace_back(slot, s);
      continue;
    }
    const auto k = static_cast<std::uint32_t>(L.points.size());
    L.index[img] = k;
    L.points.push_back(img);
    L.trans.push_back(multiply(f_, L.gens[s], L.trans[slot]));
    L.trans_inv.push_back(multiply(f_, L.trans_inv[slot], L.gens_inv[s]));
    for (std::uint32_t t = 0; t < L.gens.size(); ++t) work.emplace_back(k, t);
  }
  for (const auto& [slot, s] : schreier) {
    UnitaryMatrix h;
    {
      const Level& L = levels_[level];
      const std::uint32_t target = L.index.at(image(L.gens[s], L.points[slot]));
      h = multiply(f_, L.trans_inv[target], multiply(f_, L.gens[s], L.trans[slot]));
    }
    auto [res, at] = sift(h, level + 1);
    if (res.is_identity()) continue;
    // res fixes the bases of levels level+1..at-1 as well, so it generates there too
    for (std::size_t j = at + 1; j-- > level + 1;) add_at(j, res);
  }
}

bool StabilizerChain::add_generator(const UnitaryMatrix& g) {
  if (g.dim() != dim_) throw PreconditionError("generator dimension mismatch");
  auto [res, at] = sift(g, 0);
  if (res.is_identity()) return false;
  gens_.push_back(g);
  for (std::size_t j = at + 1; j-- > 0;) add_at(j, res);
  return true;
}

bool StabilizerChain::contains(const UnitaryMatrix& g) const {
  if (g.dim() != dim_) return false;
  return sift(g, 0).first.is_identity();
}

std::uint64_t StabilizerChain::order() const {
  unsigned __int128 o = 1;
  for (const auto& L : levels_) {
    o *= L.points.size();
    if (o > UINT64_MAX) throw BudgetExceeded("group order overflows 64 bits", UINT64_MAX, UINT64_MAX);
  }
  return static_cast<std::uint64_t>(o);
}

UnitaryMatrix StabilizerChain::random_element(std::mt19937_64& rng) const {
  UnitaryMatrix g = UnitaryMatrix::identity(dim_);
  for (const auto& L : levels_) {
    std::uniform_int_distribution<std::size_t> d(0, L.points.size() - 1);
    g = multiply(f_, g, L.trans[d(rng)]);
  }
  return g;
}

void StabilizerChain::for_each_element(const std::function<void(const UnitaryMatrix&)>& fn,
                                       std::uint64_t budget) const {
  const std::uint64_t ord = order();
  if (ord > budget) throw BudgetExceeded("group enumeration", ord, budget);
  std::function<void(std::size_t, const UnitaryMatrix&)> rec = [&](std::size_t i, const UnitaryMatrix& prefix) {
    if (i == levels_.size()) {
      fn(prefix);
      return;
    }
    for (const auto& u : levels_[i].trans) rec(i + 1, multiply(f_, prefix, u));
  };
  rec(0, UnitaryMatrix::identity(dim_));
}

std::uint64_t group_order(const Field& f, std::size_t dim, const std::vector<UnitaryMatrix>& gens) {
  return StabilizerChain(f, dim, gens).order();
}

// ------------------------------------------------------------------ frames

LineFrame line_frame(const HyperbolicSpace& space, const std::vector<Vector>& vectors) {
  LineFrame out;
  for (const auto& v : vectors) out.push_back(space.codec().encode(normalize_line(space.field(), v)));
  return out;
}

LineFrame act(const HyperbolicSpace& space, const UnitaryMatrix& g, const LineFrame& frame) {
  LineFrame out;
  out.reserve(frame.size());
  for (auto c : frame)
    out.push_back(
        space.codec().encode(normalize_line(space.field(), apply(space.field(), g, space.codec().decode(c)))));
  return out;
}

LineFrame sigma(const HyperbolicSpace& space, unsigned p) {
  if (p > space.rank()) throw PreconditionError("sigma_p needs p <= n");
  std::vector<Vector> v;
  for (unsigned j = 1; j <= p; ++j) v.push_back(space.e(2 * j - 1));
  return line_frame(space, v);
}

namespace {

struct FrameHash {
  std::size_t operator()(const LineFrame& f) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : f) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::vector<LineFrame> orbit_of_frame(const HyperbolicSpace& space, const std::vector<UnitaryMatrix>& gens,
                                      const LineFrame& frame, std::uint64_t budget) {
  std::unordered_set<LineFrame, FrameHash> seen{frame};
  std::vector<LineFrame> queue{frame};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      LineFrame y = act(space, g, queue[i]);
      if (seen.insert(y).second) {
        if (queue.size() >= budget) throw BudgetExceeded("frame orbit", queue.size() + 1, budget);
        queue.push_back(std::move(y));
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

FrameOrbit orbit_with_transversal(const HyperbolicSpace& space, const std::vector<UnitaryMatrix>& gens,
                                  const LineFrame& frame, std::uint64_t budget) {
  FrameOrbit o;
  std::unordered_set<LineFrame, FrameHash> seen{frame};
  o.frames.push_back(frame);
  o.reps.push_back(UnitaryMatrix::identity(space.dim()));
  for (std::size_t i = 0; i < o.frames.size(); ++i)
    for (const auto& g : gens) {
      LineFrame y = act(space, g, o.frames[i]);
      if (seen.insert(y).second) {
        if (o.frames.size() >= budget) throw BudgetExceeded("frame orbit", o.frames.size() + 1, budget);
        o.frames.push_back(std::move(y));
        o.reps.push_back(multiply(space.field(), g, o.reps[i]));
      }
    }
  return o;
}

StabilizerChain frame_stabilizer(const HyperbolicSpace& space, const StabilizerChain& group, const FrameOrbit& orbit,
                                 std::uint64_t seed) {
  const Field& f = space.field();
  const std::uint64_t g = group.order();
  if (orbit.frames.empty() || g % orbit.frames.size() != 0)
    throw DomainError("orbit size does not divide the group order");
  const std::uint64_t target = g / orbit.frames.size();
  std::map<LineFrame, std::size_t> where;
  for (std::size_t i = 0; i < orbit.frames.size(); ++i) where.emplace(orbit.frames[i], i);
  const LineFrame& x = orbit.frames.front();
  if (!orbit.reps.front().is_identity()) throw PreconditionError("orbit must start at its base frame");

  StabilizerChain stab(f, space.dim());
  std::mt19937_64 rng(seed);
  // for uniform r with y = r x, u_y^-1 r fixes x and is uniform in Stab(x)
  for (int attempt = 0; attempt < 100000 && stab.order() < target; ++attempt) {
    const UnitaryMatrix r = group.random_element(rng);
    const auto it = where.find(act(space, r, x));
    if (it == where.end()) throw DomainError("orbit is not closed under the group");
    stab.add_generator(multiply(f, inverse(f, orbit.reps[it->second]), r));
  }
  if (stab.order() != target) throw DomainError("stabilizer did not reach |G| / |orbit|");
  return stab;
}

// ---------------------------------------------------------------- patterns

namespace {

bool block_is_identity(const UnitaryMatrix& m, std::size_t from) {
  for (std::size_t r = from; r < m.dim(); ++r)
    for (std::size_t c = from; c < m.dim(); ++c)
      if (m.at(r, c).value != (r == c ? 1 : 0)) return false;
  return true;
}

UnitaryMatrix lower_block(const UnitaryMatrix& m, std::size_t from) {
  UnitaryMatrix b(m.dim() - from);
  for (std::size_t r = from; r < m.dim(); ++r)
    for (std::size_t c = from; c < m.dim(); ++c) b.set(r - from, c - from, m.at(r, c));
  return b;
}

bool in_lambda(const HyperbolicSpace& s, Scalar r) {
  const auto& l = s.params().lambda;
  return std::find(l.begin(), l.end(), r) != l.end();
}

void require_p(const HyperbolicSpace& space, unsigned p) {
  if (p == 0 || p > space.rank()) throw PreconditionError("need 1 <= p <= n");
}

}  // namespace

bool matches_stabilizer_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m) {
  require_p(space, p);
  const Field& f = space.field();
  const std::size_t d = space.dim();
  if (m.dim() != d) return false;
  for (unsigned j = 1; j <= p; ++j) {
    const std::size_t odd = 2 * j - 2, even = 2 * j - 1;
    const Scalar a = m.at(odd, odd);
    if (f.is_zero(a)) return false;
    for (std::size_t r = 0; r < d; ++r)
      if (r != odd && !f.is_zero(m.at(r, odd))) return false;
    for (std::size_t c = 0; c < d; ++c)
      if (c != even && !f.is_zero(m.at(even, c))) return false;
    if (m.at(even, even) != f.inv(f.conj(a))) return false;
  }
  if (p == space.rank()) return true;
  return is_member(space.with_rank(space.rank() - p), lower_block(m, 2 * p));
}

bool matches_levi_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m) {
  return matches_stabilizer_pattern(space, p, m) && block_is_identity(m, 2 * p);
}

bool matches_unipotent_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m) {
  if (!matches_levi_pattern(space, p, m)) return false;
  for (unsigned j = 1; j <= p; ++j)
    if (m.at(2 * j - 2, 2 * j - 2) != space.field().one()) return false;
  return true;
}

bool matches_derived_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m) {
  require_p(space, p);
  const Field& f = space.field();
  const std::size_t d = space.dim();
  if (m.dim() != d) return false;
  auto allowed = [&](std::size_t r, std::size_t c) { return r % 2 == 0 && c % 2 == 1 && r < 2 * p && c < 2 * p; };
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      if (r == c) {
        if (m.at(r, c) != f.one()) return false;
      } else if (!allowed(r, c) && !f.is_zero(m.at(r, c))) {
        return false;
      }
    }
  const Scalar minus_eps_inv = f.neg(f.inv(space.eps()));
  for (unsigned i = 1; i <= p; ++i) {
    if (!in_lambda(space, m.at(2 * i - 2, 2 * i - 1))) return false;
    for (unsigned j = i + 1; j <= p; ++j)
      if (m.at(2 * j - 2, 2 * i - 1) != f.mul(minus_eps_inv, f.conj(m.at(2 * i - 2, 2 * j - 1)))) return false;
  }
  return true;
}

std::vector<UnitaryMatrix> derived_pattern_instances(const HyperbolicSpace& space, unsigned p) {
  require_p(space, p);
  const Field& f = space.field();
  const auto& lambda = space.params().lambda;
  const auto all = f.elements();
  const Scalar minus_eps_inv = f.neg(f.inv(space.eps()));
  std::vector<std::pair<unsigned, unsigned>> offdiag;
  for (unsigned i = 1; i <= p; ++i)
    for (unsigned j = i + 1; j <= p; ++j) offdiag.emplace_back(i, j);
  std::vector<UnitaryMatrix> out;
  std::vector<std::size_t> li(p, 0), ti(offdiag.size(), 0);
  while (true) {
    UnitaryMatrix m = UnitaryMatrix::identity(space.dim());
    for (unsigned i = 1; i <= p; ++i) m.set(2 * i - 2, 2 * i - 1, lambda[li[i - 1]]);
    for (std::size_t k = 0; k < offdiag.size(); ++k) {
      const auto [i, j] = offdiag[k];
      const Scalar t = all[ti[k]];
      m.set(2 * i - 2, 2 * j - 1, t);
      m.set(2 * j - 2, 2 * i - 1, f.mul(minus_eps_inv, f.conj(t)));
    }
    out.push_back(m);
    // odometer over (li, ti)
    std::size_t pos = 0;
    for (; pos < li.size(); ++pos) {
      if (++li[pos] < lambda.size()) break;
      li[pos] = 0;
    }
    if (pos < li.size()) continue;
    std::size_t k = 0;
    for (; k < ti.size(); ++k) {
      if (++ti[k] < all.size()) break;
      ti[k] = 0;
    }
    if (k == ti.size()) break;
  }
  return out;
}

// ------------------------------------------------------- derived subgroups

namespace {

// Closes the generators of d under conjugation by gens.
void normal_closure(StabilizerChain& d, const std::vector<UnitaryMatrix>& gens) {
  const Field& f = d.field();
  std::vector<UnitaryMatrix> gens_inv;
  for (const auto& g : gens) gens_inv.push_back(inverse(f, g));
  for (std::size_t i = 0; i < d.generators().size(); ++i) {
    const UnitaryMatrix x = d.generators()[i];
    for (std::size_t k = 0; k < gens.size(); ++k) d.add_generator(multiply(f, multiply(f, gens[k], x), gens_inv[k]));
  }
}

UnitaryMatrix power(const Field& f, UnitaryMatrix g, std::uint64_t e) {
  UnitaryMatrix r = UnitaryMatrix::identity(g.dim());
  while (e) {
    if (e & 1) r = multiply(f, r, g);
    g = multiply(f, g, g);
    e >>= 1;
  }
  return r;
}

}  // namespace

StabilizerChain derived_subgroup(const Field& f, std::size_t dim, const std::vector<UnitaryMatrix>& gens) {
  StabilizerChain d(f, dim);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) d.add_generator(commutator(f, gens[i], gens[j]));
  normal_closure(d, gens);
  return d;
}

StabilizerChain power_subgroup(const StabilizerChain& derived, const std::vector<UnitaryMatrix>& gens,
                               std::uint64_t m) {
  StabilizerChain out = derived;
  for (const auto& g : gens) out.add_generator(power(derived.field(), g, m));
  normal_closure(out, gens);
  return out;
}

std::vector<std::uint64_t> abelianization(const Field& f, std::size_t dim, const std::vector<UnitaryMatrix>& gens) {
  const StabilizerChain g(f, dim, gens);
  const StabilizerChain d = derived_subgroup(f, dim, gens);
  const std::uint64_t index = g.order() / d.order();
  // prime -> exponents of its cyclic factors, largest first
  std::map<std::uint64_t, std::vector<unsigned>> parts;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t r = 2, rest = index; rest > 1; ++r) {
    if (r * r > rest) r = rest;
    if (rest % r != 0) continue;
    primes.push_back(r);
    while (rest % r == 0) rest /= r;
  }
  for (const std::uint64_t r : primes) {
    // counts[j] = number of cyclic r-factors of exponent >= j+1
    std::vector<unsigned> counts;
    std::uint64_t prev = 1, rj = r;
    while (true) {
      const std::uint64_t quotient = g.order() / power_subgroup(d, gens, rj).order();  // |A / r^j A|
      if (quotient == prev) break;
      unsigned c = 0;
      for (std::uint64_t x = quotient / prev; x > 1; x /= r) ++c;
      counts.push_back(c);
      prev = quotient;
      rj *= r;
    }
    std::vector<unsigned> exps;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      const unsigned next = j + 1 < counts.size() ? counts[j + 1] : 0;
      for (unsigned k = 0; k < counts[j] - next; ++k) exps.push_back(static_cast<unsigned>(j + 1));
    }
    std::sort(exps.rbegin(), exps.rend());
    parts[r] = exps;
  }
  std::size_t width = 0;
  for (const auto& [r, e] : parts) width = std::max(width, e.size());
  std::vector<std::uint64_t> factors(width, 1);
  for (const auto& [r, e] : parts)
    for (std::size_t k = 0; k < e.size(); ++k)
      for (unsigned t = 0; t < e[k]; ++t) factors[k] *= r;
  std::sort(factors.begin(), factors.end());
  return factors;
}

std::uint64_t classical_order(const HyperbolicSpace& space) {
  const Field& f = space.field();
  const unsigned n = space.rank();
  if (f.characteristic() == 2) throw UnsupportedConfiguration("classical orders are tabulated for odd q only");
  unsigned __int128 o = 1;
  auto ipow = [](unsigned __int128 b, unsigned e) {
    unsigned __int128 r = 1;
    while (e--) r *= b;
    return r;
  };
  if (f.involution() == Involution::identity) {
    const unsigned __int128 q = f.order();
    if (space.eps() == f.neg(f.one())) {
      o = ipow(q, n * n);
      for (unsigned i = 1; i <= n; ++i) o *= ipow(q, 2 * i) - 1;
    } else {
      o = 2 * ipow(q, n * (n - 1)) * (ipow(q, n) - 1);
      for (unsigned i = 1; i < n; ++i) o *= ipow(q, 2 * i) - 1;
    }
  } else {
    unsigned q0 = 1;
    while (q0 * q0 < f.order()) ++q0;
    const unsigned m = 2 * n;
    o = ipow(q0, m * (m - 1) / 2);
    for (unsigned i = 1; i <= m; ++i) {
      const unsigned __int128 t = ipow(q0, i);
      o *= (i % 2 == 1) ? t + 1 : t - 1;
    }
  }
  if (o > UINT64_MAX) throw BudgetExceeded("classical order overflows 64 bits", UINT64_MAX, UINT64_MAX);
  return static_cast<std::uint64_t>(o);
}

// ------------------------------------------------------- stabilizer report

StabilizerStructure stabilizer_report(const HyperbolicSpace& space, unsigned p, std::uint64_t seed,
                                      std::uint64_t samples, std::uint64_t enumeration_budget) {
  require_p(space, p);
  space.require_isotropy();
  if (!space.eps_is_sign())
    throw UnsupportedConfiguration("the stabilizer display is stated for eps = +1 or -1 only");
  const Field& f = space.field();
  StabilizerStructure s;
  s.n = space.rank();
  s.p = p;
  const auto gens = matrices(make_generators(space));
  const StabilizerChain group(f, space.dim(), gens);
  s.group_order = group.order();
  const auto orbit = orbit_with_transversal(space, gens, sigma(space, p));
  s.orbit_size = orbit.frames.size();
  try {
    PosetSpec spec;
    spec.kind = PosetKind::iu_proj;
    spec.field = f;
    spec.eps = space.eps();
    spec.n = space.rank();
    s.frames_enumerated = enumerate_simplices(spec, p - 1).size();
  } catch (const BudgetExceeded&) {
    s.frames_enumerated = 0;
  }
  const StabilizerChain stab = frame_stabilizer(space, group, orbit, seed);
  s.stabilizer_order = stab.order();
  s.unit_count = f.order() - 1;
  s.levi_block_order =
      p == s.n ? 1 : group_order(f, 2 * (s.n - p), matrices(make_generators(space.with_rank(s.n - p))));

  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  s.samples = samples;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const UnitaryMatrix x = stab.random_element(rng);
    if (matches_stabilizer_pattern(space, p, x)) ++s.samples_matching;
    if (s.witnesses.size() < 3) s.witnesses.push_back(x);
  }

  const auto instances = derived_pattern_instances(space, p);
  s.derived_pattern_count = instances.size();
  if (s.stabilizer_order <= enumeration_budget) {
    StabilizerChain unipotent(f, space.dim());
    std::uint64_t n_count = 0, l_count = 0;
    stab.for_each_element(
        [&](const UnitaryMatrix& x) {
          if (!matches_levi_pattern(space, p, x)) return;
          ++l_count;
          if (!matches_unipotent_pattern(space, p, x)) return;
          ++n_count;
          unipotent.add_generator(x);
        },
        enumeration_budget);
    s.levi_order = l_count;
    s.unipotent_order = n_count;
    if (unipotent.order() != n_count) throw std::logic_error("unipotent elements do not form a group");
    const StabilizerChain derived = derived_subgroup(f, space.dim(), unipotent.generators());
    s.derived_order = derived.order();
    bool all_match = true;
    derived.for_each_element([&](const UnitaryMatrix& x) { all_match = all_match && matches_derived_pattern(space, p, x); },
                             enumeration_budget);
    s.derived_matches_pattern = all_match;
    s.pattern_in_derived = std::all_of(instances.begin(), instances.end(),
                                       [&](const UnitaryMatrix& x) { return derived.contains(x); });
    unsigned __int128 prod = s.levi_block_order * static_cast<unsigned __int128>(s.unipotent_order);
    for (unsigned j = 0; j < p; ++j) prod *= s.unit_count;
    s.factorization_holds = prod == s.stabilizer_order;
    s.unipotent_enumerated = true;
  }
  return s;
}

// --------------------------------------------------------- alpha and friends

UnitaryMatrix g_perm(const HyperbolicSpace& space, unsigned i, unsigned p) {
  if (i == 0 || i > p || p > space.rank()) throw PreconditionError("need 1 <= i <= p <= n");
  UnitaryMatrix g(space.dim());
  auto target = [&](unsigned plane) -> unsigned {
    if (plane < i || plane > p) return plane;
    if (plane == i) return p;
    return plane - 1;
  };
  for (unsigned plane = 1; plane <= space.rank(); ++plane) {
    const unsigned t = target(plane);
    g.set(2 * t - 2, 2 * plane - 2, space.field().one());
    g.set(2 * t - 1, 2 * plane - 1, space.field().one());
  }
  return g;
}

UnitaryMatrix embed(const HyperbolicSpace& space, const ProductElement& x) {
  const Field& f = space.field();
  const std::size_t p = x.units.size();
  if (p > space.rank() || (p < space.rank() && x.block.dim() != space.dim() - 2 * p))
    throw PreconditionError("product element does not fit the space");
  UnitaryMatrix m(space.dim());
  for (std::size_t j = 0; j < p; ++j) {
    m.set(2 * j, 2 * j, x.units[j]);
    m.set(2 * j + 1, 2 * j + 1, f.inv(f.conj(x.units[j])));
  }
  for (std::size_t r = 2 * p; r < space.dim(); ++r)
    for (std::size_t c = 2 * p; c < space.dim(); ++c) m.set(r, c, x.block.at(r - 2 * p, c - 2 * p));
  return m;
}

std::optional<ProductElement> restrict_product(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m) {
  require_p(space, p);
  const Field& f = space.field();
  if (m.dim() != space.dim()) return std::nullopt;
  ProductElement x;
  for (std::size_t r = 0; r < 2 * p; ++r)
    for (std::size_t c = 0; c < space.dim(); ++c) {
      if (r == c) continue;
      if (!f.is_zero(m.at(r, c)) || !f.is_zero(m.at(c, r))) return std::nullopt;
    }
  for (unsigned j = 0; j < p; ++j) {
    const Scalar a = m.at(2 * j, 2 * j);
    if (f.is_zero(a) || m.at(2 * j + 1, 2 * j + 1) != f.inv(f.conj(a))) return std::nullopt;
    x.units.push_back(a);
  }
  if (p < space.rank()) {
    x.block = lower_block(m, 2 * p);
    if (!is_member(space.with_rank(space.rank() - p), x.block)) return std::nullopt;
  }
  return x;
}

ProductElement alpha_map(const HyperbolicSpace& space, unsigned i, unsigned p, const ProductElement& x) {
  if (i == 0 || i > p || x.units.size() != p) throw PreconditionError("need 1 <= i <= p = |units|");
  const Field& f = space.field();
  ProductElement out;
  for (unsigned j = 1; j <= p; ++j)
    if (j != i) out.units.push_back(x.units[j - 1]);
  const std::size_t d = 2 + (p < space.rank() ? x.block.dim() : 0);
  UnitaryMatrix b(d);
  const Scalar a = x.units[i - 1];
  b.set(0, 0, a);
  b.set(1, 1, f.inv(f.conj(a)));
  for (std::size_t r = 2; r < d; ++r)
    for (std::size_t c = 2; c < d; ++c) b.set(r, c, x.block.at(r - 2, c - 2));
  out.block = b;
  return out;
}

UnitaryMatrix include_block(const Field& f, const UnitaryMatrix& a) {
  UnitaryMatrix m(a.dim() + 2);
  m.set(0, 0, f.one());
  m.set(1, 1, f.one());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) m.set(r + 2, c + 2, a.at(r, c));
  return m;
}

// -------------------------------------------------------------------- json

nlohmann::json matrix_to_json(const UnitaryMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m.at(r, c).value);
    rows.push_back(row);
  }
  return rows;
}

UnitaryMatrix matrix_from_json(const Field& f, const nlohmann::json& j) {
  return from_rows(f, j.get<std::vector<std::vector<unsigned>>>());
}

nlohmann::json stabilizer_to_json(const StabilizerStructure& s) {
  nlohmann::json j{{"n", s.n},
                   {"p", s.p},
                   {"group_order", s.group_order},
                   {"orbit_size", s.orbit_size},
                   {"frames_enumerated", s.frames_enumerated},
                   {"stabilizer_order", s.stabilizer_order},
                   {"unit_count", s.unit_count},
                   {"levi_block_order", s.levi_block_order},
                   {"samples", s.samples},
                   {"samples_matching", s.samples_matching},
                   {"derived_pattern_count", s.derived_pattern_count}};
  if (s.unipotent_enumerated) {
    j["unipotent_order"] = s.unipotent_order;
    j["levi_order"] = s.levi_order;
    j["derived_order"] = s.derived_order;
    j["derived_matches_pattern"] = s.derived_matches_pattern;
    j["pattern_in_derived"] = s.pattern_in_derived;
    j["factorization_holds"] = s.factorization_holds;
  }
  j["evidence"] = s.unipotent_enumerated ? "exhaustive" : "sampled";
  nlohmann::json w = nlohmann::json::array();
  for (const auto& m : s.witnesses) w.push_back(matrix_to_json(m));
  j["witnesses"] = w;
  return j;
}

}  // namespace unistab
