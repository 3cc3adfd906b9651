#include "unistab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "unistab/error.hpp"

namespace unistab {

std::string to_string(PosetKind k) {
  switch (k) {
    case PosetKind::u: return "u";
    case PosetKind::iu: return "iu";
    case PosetKind::u_proj: return "u-proj";
    case PosetKind::iu_proj: return "iu-proj";
    case PosetKind::iv: return "iv";
    case PosetKind::tits: return "tits";
  }
  return "?";
}

PosetKind poset_kind_from_string(const std::string& s) {
  if (s == "u") return PosetKind::u;
  if (s == "iu") return PosetKind::iu;
  if (s == "u-proj") return PosetKind::u_proj;
  if (s == "iu-proj") return PosetKind::iu_proj;
  if (s == "iv") return PosetKind::iv;
  if (s == "tits") return PosetKind::tits;
  throw ConfigError("unknown poset kind '" + s + "' (expected u, iu, u-proj, iu-proj, iv, tits)");
}

bool is_isotropic_kind(PosetKind k) { return k == PosetKind::iu || k == PosetKind::iu_proj || k == PosetKind::iv; }
bool is_projective_kind(PosetKind k) { return k == PosetKind::u_proj || k == PosetKind::iu_proj; }
bool is_chain_kind(PosetKind k) { return k == PosetKind::iv || k == PosetKind::tits; }

std::size_t PosetSpec::ambient_dim() const {
  switch (kind) {
    case PosetKind::u:
    case PosetKind::u_proj: return m == 0 ? n : m;
    case PosetKind::tits: return n;
    default: return 2 * std::size_t{n};
  }
}

std::optional<HyperbolicSpace> PosetSpec::space() const {
  if (!is_isotropic_kind(kind)) return std::nullopt;
  return HyperbolicSpace(field, n, eps);
}

void PosetSpec::validate() const {
  if (n == 0) throw ConfigError("n must be at least 1");
  if ((kind == PosetKind::u || kind == PosetKind::u_proj) && m != 0 && m < n)
    throw ConfigError("window n=" + std::to_string(n) + " exceeds ambient dimension m=" + std::to_string(m));
  if (is_isotropic_kind(kind)) {
    const auto sp = space();
    sp->require_isotropy();
  }
  if (is_chain_kind(kind) && !link.empty()) throw ConfigError("links are only supported for frame posets");
  for (const auto& w : link)
    if (w.size() != ambient_dim()) throw ConfigError("link vector has wrong dimension");
  if (!link.empty() && !independent(field, link, ambient_dim())) throw PreconditionError("link w is not a frame");
  if (is_isotropic_kind(kind) && !link.empty() && !space()->is_isotropic_frame(link))
    throw PreconditionError("link w is not isotropic");
}

std::string PosetSpec::key() const {
  std::ostringstream os;
  os << to_string(kind) << ";q=" << field.order() << ";inv=" << to_string(field.involution())
     << ";eps=" << unsigned{eps.value} << ";n=" << n << ";m=" << ambient_dim() << ";w=";
  for (const auto& w : link) os << '[' << format_vector(w) << ']';
  return os.str();
}

PosetSpec link_restrict(const PosetSpec& spec, std::vector<Vector> w) {
  PosetSpec r = spec;
  for (auto& v : w) {
    if (v.size() != spec.ambient_dim()) throw PreconditionError("link vector has wrong dimension");
    if (is_projective_kind(spec.kind)) v = normalize_line(spec.field, v);
    r.link.push_back(std::move(v));
  }
  try {
    r.validate();
  } catch (const ConfigError& e) {
    throw PreconditionError(std::string("w is not a simplex of the poset: ") + e.what());
  }
  return r;
}

std::optional<std::size_t> SimplexList::find(std::span<const std::uint32_t> s) const {
  if (s.size() != length_) return std::nullopt;
  if (length_ == 0) return empty_simplex_ ? std::optional<std::size_t>(0) : std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto x = (*this)[mid];
    if (std::lexicographical_compare(x.begin(), x.end(), s.begin(), s.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(s.begin(), s.end(), (*this)[lo].begin())) return lo;
  return std::nullopt;
}

void SimplexList::push_back(std::span<const std::uint32_t> s) {
  if (s.size() != length_) throw PreconditionError("simplex length mismatch");
  data_.insert(data_.end(), s.begin(), s.end());
}

void SimplexList::append(const SimplexList& other) {
  if (other.length_ != length_) throw PreconditionError("simplex length mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
}

bool SimplexList::is_sorted() const {
  for (std::size_t i = 1; i < size(); ++i) {
    const auto a = (*this)[i - 1];
    const auto b = (*this)[i];
    if (!std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  return true;
}

std::uint64_t gaussian_binomial(unsigned N, unsigned d, unsigned q) {
  if (d > N) return 0;
  // prod_{i<d} (q^{N-i} - 1) / (q^{i+1} - 1), computed in long double then rounded
  long double r = 1;
  for (unsigned i = 0; i < d; ++i) {
    r *= (std::pow(static_cast<long double>(q), N - i) - 1) / (std::pow(static_cast<long double>(q), i + 1) - 1);
  }
  if (r > static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r + 0.5L);
}

Poset::Poset(PosetSpec spec, std::uint64_t budget, unsigned threads)
    : spec_(std::move(spec)),
      budget_(budget),
      threads_(std::max(1u, threads)),
      codec_(spec_.field, spec_.ambient_dim()) {
  spec_.validate();
  if (is_projective_kind(spec_.kind))
    for (auto& w : spec_.link) w = normalize_line(spec_.field, w);
  space_ = spec_.space();
  if (is_chain_kind(spec_.kind))
    build_subspaces();
  else
    build_frame_vertices();
}

unsigned Poset::max_length() const {
  if (spec_.kind == PosetKind::iv) return spec_.n;
  if (spec_.kind == PosetKind::tits) return spec_.n == 0 ? 0 : spec_.n - 1;
  if (is_isotropic_kind(spec_.kind)) return spec_.n - static_cast<unsigned>(spec_.link.size());
  const std::size_t free_dims = ambient_dim() - std::min(spec_.link.size(), ambient_dim());
  return static_cast<unsigned>(std::min<std::size_t>(spec_.n, free_dims));
}

bool Poset::vertex_ok(const Vector& v) const {
  const Field& f = spec_.field;
  if (v.size() != ambient_dim()) return false;
  if (std::all_of(v.begin(), v.end(), [](Scalar s) { return s.value == 0; })) return false;
  if (spec_.kind == PosetKind::u || spec_.kind == PosetKind::u_proj)
    for (std::size_t i = spec_.n; i < v.size(); ++i)
      if (v[i].value != 0) return false;
  if (is_projective_kind(spec_.kind) && normalize_line(f, v) != v) return false;
  if (space_) {
    if (!space_->is_isotropic(v)) return false;
    for (const auto& w : spec_.link)
      if (space_->h(v, w) != f.zero()) return false;
  }
  if (!spec_.link.empty()) {
    Echelon e(f, ambient_dim());
    for (const auto& w : spec_.link) e.add(w);
    if (e.contains(v)) return false;
  }
  return true;
}

void Poset::build_frame_vertices() {
  const std::uint64_t total = codec_.count();
  if (total > 50'000'000) throw BudgetExceeded("vector space enumeration", total, 50'000'000);
  for (std::uint64_t c = 1; c < total; ++c) {
    Vector v = codec_.decode(static_cast<std::uint32_t>(c));
    if (vertex_ok(v)) {
      vertices_.push_back(static_cast<std::uint32_t>(c));
      vertex_vectors_.push_back(std::move(v));
    }
  }
}

void Poset::build_subspaces() {
  const Field& f = spec_.field;
  const unsigned N = static_cast<unsigned>(ambient_dim());
  const unsigned q = f.order();
  const unsigned max_dim = spec_.kind == PosetKind::tits ? N - 1 : spec_.n;
  std::uint64_t est = 0;
  for (unsigned d = 1; d <= max_dim; ++d) est += gaussian_binomial(N, d, q);
  if (est > budget_) throw BudgetExceeded("subspace enumeration", est, budget_);

  for (unsigned d = 1; d <= max_dim; ++d) {
    std::vector<unsigned> piv(d);
    for (unsigned i = 0; i < d; ++i) piv[i] = i;
    while (true) {
      std::vector<std::pair<unsigned, unsigned>> free;  // (row, col)
      for (unsigned r = 0; r < d; ++r)
        for (unsigned c = piv[r] + 1; c < N; ++c)
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
      std::vector<unsigned> digits(free.size(), 0);
      while (true) {
        std::vector<Vector> rows(d, Vector(N, f.zero()));
        for (unsigned r = 0; r < d; ++r) rows[r][piv[r]] = f.one();
        for (std::size_t i = 0; i < free.size(); ++i)
          rows[free[i].first][free[i].second] = f.element(digits[i]);
        bool ok = true;
        if (space_) {
          for (unsigned a = 0; a < d && ok; ++a)
            for (unsigned b = a; b < d && ok; ++b)
              if (space_->h(rows[a], rows[b]) != f.zero()) ok = false;
        }
        if (ok) {
          Subspace s;
          for (const auto& r : rows) s.rows.push_back(codec_.encode(r));
          subspaces_.push_back(std::move(s));
        }
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
        if (i == digits.size()) break;
      }
      // next pivot combination
      int i = static_cast<int>(d) - 1;
      while (i >= 0 && piv[i] == N - d + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++piv[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  std::sort(subspaces_.begin(), subspaces_.end());
  for (std::uint32_t i = 0; i < subspaces_.size(); ++i) vertices_.push_back(i);

  std::vector<Echelon> spans;
  spans.reserve(subspaces_.size());
  for (const auto& s : subspaces_) {
    Echelon e(spec_.field, N);
    for (auto c : s.rows) e.add(codec_.decode(c));
    spans.push_back(std::move(e));
  }
  up_.resize(subspaces_.size());
  for (std::size_t a = 0; a < subspaces_.size(); ++a) {
    std::vector<Vector> rows;
    for (auto c : subspaces_[a].rows) rows.push_back(codec_.decode(c));
    for (std::size_t b = a + 1; b < subspaces_.size(); ++b) {
      if (subspaces_[b].dim() <= subspaces_[a].dim()) continue;
      if (std::all_of(rows.begin(), rows.end(), [&](const Vector& v) { return spans[b].contains(v); }))
        up_[a].push_back(static_cast<std::uint32_t>(b));
    }
  }
}

std::string Poset::vertex_label(std::uint32_t id) const {
  if (!is_chain_kind(spec_.kind)) return "(" + format_vector(codec_.decode(id)) + ")";
  std::string s = "<";
  for (std::size_t i = 0; i < subspaces_.at(id).rows.size(); ++i) {
    if (i) s += ";";
    s += format_vector(codec_.decode(subspaces_[id].rows[i]));
  }
  return s + ">";
}

std::uint32_t Poset::vertex_id(const Vector& v) const {
  if (is_chain_kind(spec_.kind)) throw PreconditionError("vertex_id(Vector) is defined for frame posets only");
  return codec_.encode(is_projective_kind(spec_.kind) ? normalize_line(spec_.field, v) : v);
}

bool Poset::is_simplex(std::span<const std::uint32_t> s) const {
  if (is_chain_kind(spec_.kind)) {
    for (auto id : s)
      if (id >= subspaces_.size()) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (subspaces_[s[i]].dim() <= subspaces_[s[i - 1]].dim()) return false;
      Echelon e(spec_.field, ambient_dim());
      for (auto c : subspaces_[s[i]].rows) e.add(codec_.decode(c));
      for (auto c : subspaces_[s[i - 1]].rows)
        if (!e.contains(codec_.decode(c))) return false;
    }
    return true;
  }
  std::vector<Vector> vs;
  for (auto id : s) {
    if (id >= codec_.count()) return false;
    Vector v = codec_.decode(id);
    if (!vertex_ok(v)) return false;
    vs.push_back(std::move(v));
  }
  std::vector<Vector> all = vs;
  all.insert(all.end(), spec_.link.begin(), spec_.link.end());
  if (!independent(spec_.field, all, ambient_dim())) return false;
  if (space_)
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (space_->h(vs[i], vs[j]) != spec_.field.zero()) return false;
  return true;
}

SimplexList Poset::enumerate_frames(unsigned length) const {
  SimplexList out(length);
  if (length == 0) {
    out.set_empty_simplex();
    return out;
  }
  const std::size_t V = vertices_.size();
  Echelon base(spec_.field, ambient_dim());
  for (const auto& w : spec_.link) base.add(w);

  auto work = [&](std::size_t begin, std::size_t end, SimplexList& part) {
    std::vector<std::uint32_t> prefix;
    std::function<void(const std::vector<std::uint32_t>&, const Echelon&)> rec =
        [&](const std::vector<std::uint32_t>& cand, const Echelon& span) {
          if (prefix.size() == length) {
            part.push_back(prefix);
            return;
          }
          for (std::uint32_t idx : cand) {
            const Vector& v = vertex_vectors_[idx];
            Echelon next = span;
            next.add(v);
            prefix.push_back(vertices_[idx]);
            if (prefix.size() == length) {
              part.push_back(prefix);
            } else {
              std::vector<std::uint32_t> sub;
              for (std::uint32_t c : cand) {
                if (c == idx) continue;
                if (space_ && space_->h(vertex_vectors_[c], v) != spec_.field.zero()) continue;
                if (next.contains(vertex_vectors_[c])) continue;
                sub.push_back(c);
              }
              rec(sub, next);
            }
            prefix.pop_back();
          }
        };
    for (std::size_t i = begin; i < end; ++i) {
      const Vector& v = vertex_vectors_[i];
      Echelon next = base;
      next.add(v);
      prefix.assign(1, vertices_[i]);
      if (length == 1) {
        part.push_back(prefix);
        continue;
      }
      std::vector<std::uint32_t> sub;
      for (std::uint32_t c = 0; c < V; ++c) {
        if (c == i) continue;
        if (space_ && space_->h(vertex_vectors_[c], v) != spec_.field.zero()) continue;
        if (next.contains(vertex_vectors_[c])) continue;
        sub.push_back(c);
      }
      rec(sub, next);
    }
  };

  const unsigned T = static_cast<unsigned>(std::min<std::size_t>(threads_, std::max<std::size_t>(V, 1)));
  if (T <= 1) {
    work(0, V, out);
    return out;
  }
  std::vector<SimplexList> parts(T, SimplexList(length));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < T; ++t) {
    const std::size_t b = V * t / T;
    const std::size_t e = V * (t + 1) / T;
    pool.emplace_back([&, b, e, t] { work(b, e, parts[t]); });
  }
  for (auto& th : pool) th.join();
  for (const auto& p : parts) out.append(p);
  return out;
}

SimplexList Poset::enumerate_chains(unsigned length) const {
  SimplexList out(length);
  if (length == 0) {
    out.set_empty_simplex();
    return out;
  }
  std::vector<std::uint32_t> prefix;
  std::function<void()> rec = [&] {
    if (prefix.size() == length) {
      out.push_back(prefix);
      return;
    }
    for (std::uint32_t nxt : up_[prefix.back()]) {
      prefix.push_back(nxt);
      rec();
      prefix.pop_back();
    }
  };
  for (std::uint32_t v = 0; v < subspaces_.size(); ++v) {
    prefix.assign(1, v);
    rec();
  }
  return out;
}

SimplexList Poset::enumerate(unsigned length) const {
  return is_chain_kind(spec_.kind) ? enumerate_chains(length) : enumerate_frames(length);
}

std::uint64_t Poset::extension_count(std::span<const std::uint32_t> s) const {
  std::uint64_t count = 0;
  std::vector<std::uint32_t> t(s.begin(), s.end());
  t.push_back(0);
  for (std::uint32_t v : vertices_) {
    t.back() = v;
    if (std::find(s.begin(), s.end(), v) == s.end() && is_simplex(t)) ++count;
  }
  return count;
}

std::uint64_t Poset::estimate(unsigned k) {
  if (is_chain_kind(spec_.kind)) {
    // exact: count[len][v] = number of chains of length len starting at v
    const std::size_t S = subspaces_.size();
    std::vector<long double> cnt(S, 1);
    for (unsigned len = 2; len <= k + 1; ++len) {
      std::vector<long double> nxt(S, 0);
      for (std::size_t v = 0; v < S; ++v)
        for (auto u : up_[v]) nxt[v] += cnt[u];
      cnt = std::move(nxt);
    }
    long double total = 0;
    for (auto c : cnt) total += c;
    return total > 1.8e19L ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(total);
  }
  if (k == 0) return vertices_.size();
  if (k + 1 > max_length()) return 0;
  const SimplexList& prev = simplices(static_cast<int>(k) - 1);
  if (prev.size() == 0) return 0;
  const long double e = static_cast<long double>(prev.size()) * static_cast<long double>(extension_count(prev[0]));
  return e > 1.8e19L ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(e);
}

const SimplexList& Poset::simplices(int k) {
  if (k < -1) throw PreconditionError("simplex degree below -1");
  if (auto it = cache_.find(k); it != cache_.end()) return it->second;
  const unsigned length = static_cast<unsigned>(k + 1);
  if (k >= 0) {
    const std::uint64_t est = estimate(static_cast<unsigned>(k));
    if (est > budget_)
      throw BudgetExceeded("enumeration of " + std::to_string(k) + "-simplices of " + to_string(spec_.kind), est,
                           budget_);
  }
  SimplexList list = enumerate(length);
  if (list.size() > budget_)
    throw BudgetExceeded("enumeration of " + std::to_string(k) + "-simplices of " + to_string(spec_.kind),
                         list.size(), budget_);
  return cache_.emplace(k, std::move(list)).first->second;
}

std::vector<SubspaceChain> Poset::chains(unsigned length) {
  if (!is_chain_kind(spec_.kind)) throw PreconditionError("chains() needs an iv or tits poset");
  const SimplexList& list = simplices(static_cast<int>(length) - 1);
  std::vector<SubspaceChain> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    SubspaceChain c;
    for (auto id : list[i]) c.push_back(subspaces_[id]);
    out.push_back(std::move(c));
  }
  return out;
}

SimplexList enumerate_simplices(const PosetSpec& spec, unsigned k, std::uint64_t budget) {
  Poset p(spec, budget);
  return p.simplices(static_cast<int>(k));
}

std::vector<SubspaceChain> enumerate_chains(const PosetSpec& spec, unsigned length, std::uint64_t budget) {
  Poset p(spec, budget);
  return p.chains(length);
}

bool face_closed(Poset& poset, unsigned max_degree) {
  for (unsigned k = 1; k <= max_degree; ++k) {
    const SimplexList& hi = poset.simplices(static_cast<int>(k));
    const SimplexList& lo = poset.simplices(static_cast<int>(k) - 1);
    std::vector<std::uint32_t> face(k);
    for (std::size_t s = 0; s < hi.size(); ++s) {
      const auto x = hi[s];
      for (unsigned i = 0; i <= k; ++i) {
        std::size_t w = 0;
        for (unsigned j = 0; j <= k; ++j)
          if (j != i) face[w++] = x[j];
        if (!lo.find(face)) return false;
      }
    }
  }
  return true;
}

}  // namespace unistab
