#include "unistab/chains.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "unistab/error.hpp"
#include "unistab/scalars.hpp"

namespace unistab {

namespace {

// Lookup of simplices in a list that need not be sorted.
class FaceIndex {
 public:
  explicit FaceIndex(const SimplexList& list) : list_(list), order_(list.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (!list.is_sorted())
      std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(list[a].begin(), list[a].end(), list[b].begin(), list[b].end());
      });
  }

  std::optional<std::size_t> find(std::span<const std::uint32_t> s) const {
    auto it = std::lower_bound(order_.begin(), order_.end(), s, [&](std::size_t i, std::span<const std::uint32_t> key) {
      return std::lexicographical_compare(list_[i].begin(), list_[i].end(), key.begin(), key.end());
    });
    if (it == order_.end() || !std::equal(s.begin(), s.end(), list_[*it].begin(), list_[*it].end())) return std::nullopt;
    return *it;
  }

 private:
  const SimplexList& list_;
  std::vector<std::size_t> order_;
};

SparseMatrix augmentation(std::size_t vertices) {
  SparseMatrix m(1);
  const Entry one{0, 1};
  for (std::size_t j = 0; j < vertices; ++j) m.add_column(std::span<const Entry>(&one, 1));
  return m;
}

SparseMatrix face_matrix(const SimplexList& upper, const SimplexList& lower) {
  const FaceIndex index(lower);
  SparseMatrix m(lower.size());
  const unsigned len = upper.length();
  std::vector<std::uint32_t> face(len - 1);
  std::vector<Entry> col;
  for (std::size_t j = 0; j < upper.size(); ++j) {
    const auto s = upper[j];
    col.clear();
    for (unsigned i = 0; i < len; ++i) {
      std::copy(s.begin(), s.begin() + i, face.begin());
      std::copy(s.begin() + i + 1, s.end(), face.begin() + i);
      const auto row = index.find(face);
      if (!row) throw PreconditionError("simplex list is not closed under faces");
      col.push_back({static_cast<std::uint32_t>(*row), (i % 2) ? -1 : 1});
    }
    std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    std::vector<Entry> merged;
    for (const Entry& e : col) {
      if (!merged.empty() && merged.back().row == e.row) merged.back().value += e.value;
      else merged.push_back(e);
    }
    std::erase_if(merged, [](const Entry& e) { return e.value == 0; });
    m.add_column(merged);
  }
  return m;
}

Evidence weaker(Evidence a, Evidence b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

}  // namespace

Coefficients Coefficients::modulo(std::uint64_t p) {
  if (!is_prime(p)) throw ConfigError("coefficient modulus must be prime: " + std::to_string(p));
  if (p > kLargePrime) throw ConfigError("coefficient prime too large");
  return {Ring::prime_field, p};
}

Coefficients Coefficients::parse(const std::string& s) {
  if (s == "int" || s == "Z" || s == "z") return integers();
  if (s == "Q" || s == "q" || s == "rat") return rationals();
  std::string digits = (!s.empty() && (s[0] == 'F' || s[0] == 'f')) ? s.substr(1) : s;
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw ConfigError("unknown coefficients: " + s);
  return modulo(std::stoull(digits));
}

std::string Coefficients::name() const {
  switch (ring) {
    case Ring::integers: return "Z";
    case Ring::rationals: return "Q";
    case Ring::prime_field: return "F" + std::to_string(prime);
  }
  return "?";
}

ChainComplex ChainComplex::from_simplices(std::vector<SimplexList> lists) {
  ChainComplex c;
  for (std::size_t k = 0; k < lists.size(); ++k)
    if (lists[k].length() != k + 1) throw PreconditionError("simplex list has the wrong length for its degree");
  c.lists_ = std::move(lists);
  if (c.lists_.empty()) return c;
  c.boundaries_.push_back(augmentation(c.lists_[0].size()));
  for (std::size_t k = 1; k < c.lists_.size(); ++k) c.boundaries_.push_back(face_matrix(c.lists_[k], c.lists_[k - 1]));
  if (!c.boundaries_compose_to_zero()) throw DomainError("boundary maps do not compose to zero");
  return c;
}

std::size_t ChainComplex::dim(int k) const {
  if (k == -1) return 1;
  if (k < -1 || k > max_degree()) throw PreconditionError("degree outside the built complex: " + std::to_string(k));
  return lists_[static_cast<std::size_t>(k)].size();
}

const SparseMatrix& ChainComplex::boundary(int k) const {
  if (k < 0 || k > max_degree()) throw PreconditionError("no boundary map in degree " + std::to_string(k));
  return boundaries_[static_cast<std::size_t>(k)];
}

bool ChainComplex::boundaries_compose_to_zero() const {
  for (std::size_t k = 1; k < boundaries_.size(); ++k)
    if (!boundaries_[k - 1].multiply(boundaries_[k]).is_zero()) return false;
  return true;
}

const SmithForm& ChainComplex::smith(int k) const {
  {
    std::lock_guard lock(*mutex_);
    if (auto it = smith_.find(k); it != smith_.end()) return it->second;
  }
  SmithForm s = smith_form(boundary(k), snf_budget_);
  std::lock_guard lock(*mutex_);
  return smith_.emplace(k, std::move(s)).first->second;
}

RankResult ChainComplex::rank(int k, std::uint64_t p) const {
  if (k == -1 || (k >= 0 && k <= max_degree() && dim(k) == 0)) return {0, Evidence::exact_integer};
  {
    std::lock_guard lock(*mutex_);
    if (auto it = ranks_.find({k, p}); it != ranks_.end()) return it->second;
  }
  const SparseMatrix& d = boundary(k);
  RankResult r;
  if (p != 0) {
    // rank d_k <= dim C_{k-1} - rank d_{k-1}; stop once reached
    const std::size_t cap = dim(k - 1) - rank(k - 1, p).rank;
    r = {rank_mod_p(d, p, cap), Evidence::modular_rank};
  } else if (d.cols() <= snf_budget_) {
    r = {smith(k).rank, Evidence::exact_integer};
  } else {
    // Sandwich: rank mod a prime is a lower bound for the rational rank, and
    // when d_{k-1} has exact rank, dim C_{k-1} - rank d_{k-1} is an upper bound.
    const RankResult below = rank(k - 1, 0);
    const std::size_t upper = dim(k - 1) - below.rank;
    const std::size_t lower = rank_mod_p(d, kLargePrime, upper);
    const bool exact = below.evidence != Evidence::modular_rank && lower == upper;
    r = {lower, exact ? Evidence::rational_rank : Evidence::modular_rank};
  }
  std::lock_guard lock(*mutex_);
  ranks_[{k, p}] = r;
  return r;
}

ChainComplex build_complex(Poset& poset, int max_degree) {
  if (max_degree < 0) throw PreconditionError("max_degree must be nonnegative");
  std::vector<SimplexList> lists;
  for (int k = 0; k <= max_degree; ++k) lists.push_back(poset.simplices(k));
  return ChainComplex::from_simplices(std::move(lists));
}

ChainComplex build_complex(const PosetSpec& spec, int max_degree, std::uint64_t budget) {
  Poset poset(spec, budget);
  return build_complex(poset, max_degree);
}

std::size_t homology_field(const ChainComplex& c, int k, std::uint64_t p) {
  if (k + 1 > c.max_degree()) throw PreconditionError("homology needs the boundary one degree up");
  return c.dim(k) - c.rank(k, p).rank - c.rank(k + 1, p).rank;
}

std::pair<std::size_t, std::vector<std::int64_t>> homology_snf(const ChainComplex& c, int k) {
  if (k + 1 > c.max_degree()) throw PreconditionError("homology needs the boundary one degree up");
  const SmithForm& up = c.smith(k + 1);
  const std::size_t down = k >= 0 ? c.smith(k).rank : 0;
  return {c.dim(k) - down - up.rank, up.torsion};
}

bool DegreeHomology::vanishes() const {
  if (rank != 0 || !torsion.empty()) return false;
  return std::all_of(cross_checks.begin(), cross_checks.end(), [](const auto& kv) { return kv.second == 0; });
}

DegreeHomology degree_homology(const ChainComplex& c, int k, const Coefficients& coeff) {
  DegreeHomology h;
  h.degree = k;
  h.coeff = coeff.name();
  switch (coeff.ring) {
    case Coefficients::Ring::prime_field:
      h.rank = homology_field(c, k, coeff.prime);
      h.evidence = Evidence::modular_rank;
      return h;
    case Coefficients::Ring::rationals: {
      h.rank = homology_field(c, k, 0);
      const Evidence e = weaker(c.rank(k, 0).evidence, c.rank(k + 1, 0).evidence);
      h.evidence = e == Evidence::modular_rank ? e : Evidence::rational_rank;
      return h;
    }
    case Coefficients::Ring::integers:
      break;
  }
  if (k + 1 <= c.max_degree() && c.boundary(k + 1).cols() <= c.snf_budget()) {
    const RankResult down = c.rank(k, 0);
    if (down.evidence != Evidence::modular_rank) {
      const SmithForm& up = c.smith(k + 1);
      h.rank = c.dim(k) - down.rank - up.rank;
      h.torsion = up.torsion;
      h.evidence = Evidence::exact_integer;
      return h;
    }
  }
  // Beyond the Smith budget: free rank from Q, torsion probed by primes.
  h.rank = homology_field(c, k, 0);
  h.evidence = weaker(c.rank(k, 0).evidence, c.rank(k + 1, 0).evidence);
  if (h.evidence == Evidence::exact_integer) h.evidence = Evidence::rational_rank;
  h.cross_checks["Q"] = h.rank;
  for (std::uint64_t p : kCrossCheckPrimes) h.cross_checks["F" + std::to_string(p)] = homology_field(c, k, p);
  return h;
}

HomologyReport acyclicity_verdict(const ChainComplex& c, int bound, const Coefficients& coeff, unsigned threads) {
  if (bound + 1 > c.max_degree()) throw PreconditionError("complex not built to degree bound+1");
  HomologyReport r;
  r.coeff = coeff.name();
  r.bound = bound;
  if (threads > 1) {
    std::vector<std::future<DegreeHomology>> jobs;
    for (int k = -1; k <= bound; ++k)
      jobs.push_back(std::async(std::launch::async, [&c, k, coeff] { return degree_homology(c, k, coeff); }));
    for (auto& j : jobs) r.degrees.push_back(j.get());
  } else {
    for (int k = -1; k <= bound; ++k) r.degrees.push_back(degree_homology(c, k, coeff));
  }
  r.pass = true;
  r.evidence = Evidence::exact_integer;
  for (const auto& d : r.degrees) {
    r.evidence = weaker(r.evidence, d.evidence);
    if (r.pass && !d.vanishes()) {
      r.pass = false;
      r.failing_degree = d.degree;
    }
  }
  return r;
}

HomologyReport acyclicity_verdict(Poset& poset, int bound, const Coefficients& coeff, unsigned threads) {
  const ChainComplex c = build_complex(poset, bound + 1);
  return acyclicity_verdict(c, bound, coeff, threads);
}

void to_json(nlohmann::json& j, const DegreeHomology& d) {
  j = nlohmann::json{{"degree", d.degree},
                     {"coeff", d.coeff},
                     {"rank", d.rank},
                     {"torsion", d.torsion},
                     {"verdict", d.vanishes() ? "zero" : "nonzero"},
                     {"evidence", to_string(d.evidence)}};
  if (!d.cross_checks.empty()) j["cross_checks"] = d.cross_checks;
}

namespace {

Evidence evidence_from_string(const std::string& s) {
  for (Evidence e : {Evidence::exact_integer, Evidence::rational_rank, Evidence::modular_rank, Evidence::exhaustive,
                     Evidence::sampled})
    if (to_string(e) == s) return e;
  throw ConfigError("unknown evidence class: " + s);
}

}  // namespace

void from_json(const nlohmann::json& j, DegreeHomology& d) {
  d.degree = j.at("degree").get<int>();
  d.coeff = j.at("coeff").get<std::string>();
  d.rank = j.at("rank").get<std::size_t>();
  d.torsion = j.at("torsion").get<std::vector<std::int64_t>>();
  d.evidence = evidence_from_string(j.at("evidence").get<std::string>());
  d.cross_checks.clear();
  if (j.contains("cross_checks")) d.cross_checks = j.at("cross_checks").get<std::map<std::string, std::size_t>>();
}

void to_json(nlohmann::json& j, const HomologyReport& r) {
  j = nlohmann::json{{"coeff", r.coeff},         {"bound", r.bound},
                     {"degrees", r.degrees},     {"verdict", r.verdict()},
                     {"evidence", to_string(r.evidence)}};
  j["failing_degree"] = r.failing_degree ? nlohmann::json(*r.failing_degree) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, HomologyReport& r) {
  r.coeff = j.at("coeff").get<std::string>();
  r.bound = j.at("bound").get<int>();
  r.degrees = j.at("degrees").get<std::vector<DegreeHomology>>();
  r.pass = j.at("verdict").get<std::string>() == "PASS";
  r.evidence = evidence_from_string(j.at("evidence").get<std::string>());
  r.failing_degree.reset();
  if (!j.at("failing_degree").is_null()) r.failing_degree = j.at("failing_degree").get<int>();
}

}  // namespace unistab
