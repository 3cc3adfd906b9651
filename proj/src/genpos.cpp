#include "unistab/genpos.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "unistab/error.hpp"
#include "unistab/frames.hpp"

namespace unistab {

namespace {

Matrix pairing(const HyperbolicSpace& s, const Frame& w, const Frame& v) {
  Matrix m(w.size(), v.size());
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b) m.at(a, b) = s.h(w[a], v[b]);
  return m;
}

bool in_general_position(const HyperbolicSpace& s, const Frame& w, const std::vector<Frame>& frames) {
  for (const auto& v : frames)
    if (rank_of(s.field(), pairing(s, w, v)) != v.size()) return false;
  return true;
}

// dim(W cap V^perp) = dim W + dim V^perp - dim(W + V^perp), independent of
// the pairing matrix.
std::size_t intersection_dim(const HyperbolicSpace& s, const Frame& w, const Frame& v) {
  const auto vp = s.perp(v);
  std::vector<Vector> sum = vp;
  sum.insert(sum.end(), w.begin(), w.end());
  return rank_of(s.field(), w, s.dim()) + vp.size() - rank_of(s.field(), sum, s.dim());
}

void check_inputs(const HyperbolicSpace& space, const std::vector<Frame>& frames) {
  space.require_isotropy();
  if (space.rank() < 2) throw PreconditionError("general position needs n >= 2");
  for (const auto& t : frames) {
    if (t.empty()) throw PreconditionError("input frames must be nonempty");
    if (t.size() > space.rank() - 1) throw PreconditionError("input frame size k must satisfy k <= n-1");
    for (const auto& v : t)
      if (v.size() != space.dim()) throw PreconditionError("input vector has the wrong dimension");
    if (!space.is_isotropic_frame(t)) throw PreconditionError("input frame is not isotropic");
  }
}

// Calls visit(basis) on each n-dimensional subspace of F^dim in reduced
// echelon form, in lexicographic order of pivot sets, until it returns true.
template <class Visit>
bool for_each_subspace(const Field& f, std::size_t dim, std::size_t n, Visit&& visit) {
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  const unsigned q = f.order();
  while (true) {
    // free positions: (row r, column c) with c > piv[r], c not a pivot
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = piv[r] + 1; c < dim; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
    std::vector<unsigned> digits(free.size(), 0);
    Frame basis(n, Vector(dim, f.zero()));
    for (std::size_t r = 0; r < n; ++r) basis[r][piv[r]] = f.one();
    while (true) {
      for (std::size_t i = 0; i < free.size(); ++i) basis[free[i].first][free[i].second] = f.element(digits[i]);
      if (visit(basis)) return true;
      std::size_t i = free.size();
      while (i > 0 && ++digits[i - 1] == q) digits[--i] = 0;
      if (i == 0) break;
    }
    // next pivot combination
    std::size_t i = n;
    while (i > 0 && piv[i - 1] == dim - n + i - 1) --i;
    if (i == 0) return false;
    ++piv[i - 1];
    for (std::size_t j = i; j < n; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace

Frame random_isotropic_frame(const HyperbolicSpace& space, std::mt19937_64& rng) {
  const Field& f = space.field();
  std::uniform_int_distribution<unsigned> coeff(0, f.order() - 1);
  Frame frame;
  while (frame.size() < space.rank()) {
    const auto perp = space.perp(frame);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw DomainError("no isotropic extension found");
      Vector v(space.dim(), f.zero());
      for (const auto& b : perp) {
        const Scalar c = f.element(coeff(rng));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(v[i], f.mul(c, b[i]));
      }
      Frame ext = frame;
      ext.push_back(v);
      if (!independent(f, ext, space.dim()) || !space.is_isotropic(v)) continue;
      frame = std::move(ext);
      break;
    }
  }
  return frame;
}

std::optional<GeneralPositionCertificate> certify(const HyperbolicSpace& space, const std::vector<Frame>& frames,
                                                  const Frame& candidate, Evidence evidence) {
  if (candidate.size() != space.rank() || !independent(space.field(), candidate, space.dim())) return std::nullopt;
  if (!space.is_isotropic_frame(candidate)) return std::nullopt;
  GeneralPositionCertificate c{space, frames, candidate, {}, {}, {}, evidence};
  for (const auto& v : frames) {
    Matrix p = pairing(space, candidate, v);
    auto l = left_inverse(space.field(), p);
    if (!l) return std::nullopt;
    c.pairings.push_back(std::move(p));
    c.left_inverses.push_back(std::move(*l));
    c.intersection_dims.push_back(intersection_dim(space, candidate, v));
  }
  return c;
}

SearchResult find_general_position(const HyperbolicSpace& space, const std::vector<Frame>& frames,
                                   std::uint64_t seed, const SearchOptions& options) {
  check_inputs(space, frames);
  SearchResult result;

  // Trial t draws from its own stream, so the winner (the smallest
  // successful index) does not depend on the thread count.
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  auto run = [&](unsigned tid, unsigned stride) {
    for (std::uint64_t t = tid; t < options.trials && t < best.load(); t += stride) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
      std::mt19937_64 rng(seq);
      if (in_general_position(space, random_isotropic_frame(space, rng), frames)) {
        std::uint64_t cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
        return;
      }
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(run, i, threads);
  }
  if (best.load() != std::numeric_limits<std::uint64_t>::max()) {
    const std::uint64_t t = best.load();
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
    std::mt19937_64 rng(seq);
    result.trials = t + 1;
    result.evidence = Evidence::sampled;
    result.certificate = certify(space, frames, random_isotropic_frame(space, rng), Evidence::sampled);
    return result;
  }
  result.trials = options.trials;

  const std::uint64_t total = gaussian_binomial(static_cast<unsigned>(space.dim()), space.rank(), space.field().order());
  if (total > options.exhaustive_limit) {
    result.evidence = Evidence::sampled;
    return result;
  }
  result.evidence = Evidence::exhaustive;
  for_each_subspace(space.field(), space.dim(), space.rank(), [&](const Frame& basis) {
    ++result.candidates_examined;
    if (!space.is_isotropic_frame(basis) || !in_general_position(space, basis, frames)) return false;
    result.certificate = certify(space, frames, basis, Evidence::exhaustive);
    return true;
  });
  return result;
}

bool verify_certificate(const GeneralPositionCertificate& c) {
  try {
    const HyperbolicSpace& s = c.space;
    const Field& f = s.field();
    const std::size_t n = s.rank();
    if (c.candidate.size() != n) return false;
    for (const auto& w : c.candidate)
      if (w.size() != s.dim()) return false;
    if (!independent(f, c.candidate, s.dim()) || !s.is_isotropic_frame(c.candidate)) return false;
    if (c.pairings.size() != c.frames.size() || c.left_inverses.size() != c.frames.size() ||
        c.intersection_dims.size() != c.frames.size())
      return false;
    for (std::size_t i = 0; i < c.frames.size(); ++i) {
      const Frame& v = c.frames[i];
      const std::size_t k = v.size();
      if (k == 0 || k > n - 1) return false;
      for (const auto& x : v)
        if (x.size() != s.dim()) return false;
      if (!independent(f, v, s.dim()) || !s.is_isotropic_frame(v)) return false;
      if (!(c.pairings[i] == pairing(s, c.candidate, v))) return false;
      const Matrix& l = c.left_inverses[i];
      if (l.rows() != k || l.cols() != n) return false;
      if (!(multiply(f, l, c.pairings[i]) == Matrix::identity(k))) return false;
      if (rank_of(f, c.pairings[i]) != k) return false;
      const std::size_t d = intersection_dim(s, c.candidate, v);
      if (d != c.intersection_dims[i] || d != n - k) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

Vector extend_frame(const Field& f, std::size_t m, const Frame& frame, std::size_t n) {
  if (n < frame.size() + 1 || n > m) throw PreconditionError("extension needs k+1 <= n <= m");
  for (const auto& v : frame)
    if (v.size() != m) throw PreconditionError("frame vector has the wrong dimension");
  if (!independent(f, frame, m)) throw PreconditionError("frame is not unimodular");
  Echelon span(f, m);
  for (const auto& v : frame) span.add(v);
  // dim span(e_1..e_n) = n > k, so some e_i escapes span(frame)
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = unit_vector(m, i, f);
    if (!span.contains(e)) return e;
  }
  throw DomainError("no extension found");
}

namespace {

nlohmann::json vec_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Scalar x : v) a.push_back(x.value);
  return a;
}

Vector vec_from(const Field& f, const nlohmann::json& j) {
  Vector v;
  for (const auto& x : j) v.push_back(f.element(x.get<unsigned>()));
  return v;
}

nlohmann::json frame_json(const Frame& fr) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : fr) a.push_back(vec_json(v));
  return a;
}

Frame frame_from(const Field& f, const nlohmann::json& j) {
  Frame fr;
  for (const auto& v : j) fr.push_back(vec_from(f, v));
  return fr;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r)));
  return a;
}

Matrix matrix_from(const Field& f, const nlohmann::json& j, std::size_t cols) {
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vec_from(f, r));
  return Matrix::from_rows(rows, cols);
}

Evidence search_evidence(const std::string& s) {
  if (s == to_string(Evidence::exhaustive)) return Evidence::exhaustive;
  if (s == to_string(Evidence::sampled)) return Evidence::sampled;
  throw ConfigError("unknown search evidence: " + s);
}

}  // namespace

void to_json(nlohmann::json& j, const HyperbolicSpace& s) {
  j = nlohmann::json{{"q", s.field().order()},
                     {"involution", to_string(s.field().involution())},
                     {"eps", s.eps().value},
                     {"n", s.rank()}};
}

HyperbolicSpace space_from_json(const nlohmann::json& j) {
  const Field f = Field::from_order(j.at("q").get<unsigned>(), involution_from_string(j.at("involution")));
  return HyperbolicSpace(f, j.at("n").get<unsigned>(), f.element(j.at("eps").get<unsigned>()));
}

nlohmann::json certificate_to_json(const GeneralPositionCertificate& c) {
  nlohmann::json frames = nlohmann::json::array(), pairings = nlohmann::json::array(),
                 inverses = nlohmann::json::array();
  for (const auto& t : c.frames) frames.push_back(frame_json(t));
  for (const auto& m : c.pairings) pairings.push_back(matrix_json(m));
  for (const auto& m : c.left_inverses) inverses.push_back(matrix_json(m));
  return {{"space", c.space},
          {"frames", frames},
          {"candidate", frame_json(c.candidate)},
          {"pairings", pairings},
          {"left_inverses", inverses},
          {"intersection_dims", c.intersection_dims},
          {"evidence", to_string(c.evidence)}};
}

GeneralPositionCertificate certificate_from_json(const nlohmann::json& j) {
  const HyperbolicSpace s = space_from_json(j.at("space"));
  const Field& f = s.field();
  GeneralPositionCertificate c{s, {}, frame_from(f, j.at("candidate")), {}, {}, {},
                               search_evidence(j.at("evidence"))};
  for (const auto& t : j.at("frames")) c.frames.push_back(frame_from(f, t));
  for (std::size_t i = 0; i < c.frames.size(); ++i) {
    c.pairings.push_back(matrix_from(f, j.at("pairings").at(i), c.frames[i].size()));
    c.left_inverses.push_back(matrix_from(f, j.at("left_inverses").at(i), s.rank()));
  }
  c.intersection_dims = j.at("intersection_dims").get<std::vector<std::size_t>>();
  return c;
}

nlohmann::json search_to_json(const SearchResult& r) {
  nlohmann::json j{{"found", r.found()},
                   {"evidence", to_string(r.evidence)},
                   {"trials", r.trials},
                   {"candidates_examined", r.candidates_examined}};
  j["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : nlohmann::json(nullptr);
  return j;
}

}  // namespace unistab
