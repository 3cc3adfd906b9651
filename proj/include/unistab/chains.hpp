#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "unistab/evidence.hpp"
#include "unistab/frames.hpp"
#include "unistab/smith.hpp"
#include "unistab/sparse.hpp"

namespace unistab {

/// Coefficient ring of a homology computation: Z, Q or F_p.
struct Coefficients {
  enum class Ring { integers, rationals, prime_field };
  Ring ring = Ring::integers;
  std::uint64_t prime = 0;

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {Ring::rationals, 0}; }
  static Coefficients modulo(std::uint64_t p);
  /// Accepts "int"/"Z", "Q"/"rat", or a prime ("5", "F5").
  static Coefficients parse(const std::string& s);
  std::string name() const;  // "Z", "Q", "F5"
  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

/// Rank of one boundary matrix together with how it was obtained.
struct RankResult {
  std::size_t rank = 0;
  Evidence evidence = Evidence::exact_integer;
};

/// Augmented simplicial chain complex C_max -> ... -> C_0 -> C_{-1} = Z.
///
/// boundary(k) is d_k : C_k -> C_{k-1} with column sum_i (-1)^i (i-th face).
/// Immutable after construction apart from the internal rank cache, which
/// is guarded so ranks for different (degree, prime) can run concurrently.
class ChainComplex {
 public:
  /// Builds from per-degree simplex lists; lists[k] holds the k-simplices
  /// (length k+1) in any order. Verifies dd = 0 eagerly.
  static ChainComplex from_simplices(std::vector<SimplexList> lists);

  int max_degree() const { return static_cast<int>(lists_.size()) - 1; }
  std::size_t dim(int k) const;
  const SparseMatrix& boundary(int k) const;
  const SimplexList& simplices(int k) const { return lists_.at(static_cast<std::size_t>(k)); }

  /// Exact check that d_k d_{k+1} = 0 for every stored pair.
  bool boundaries_compose_to_zero() const;

  /// Rank of d_k over F_p (p > 0) or Q (p = 0), cached. Over Q the rank is
  /// exact via Smith form within the column budget, or via a modular lower
  /// bound meeting the rank-nullity upper bound; otherwise it is only a
  /// modular value and says so.
  RankResult rank(int k, std::uint64_t p) const;
  /// Smith form of d_k, cached; throws BudgetExceeded over the budget.
  const SmithForm& smith(int k) const;

  std::size_t snf_budget() const { return snf_budget_; }
  void set_snf_budget(std::size_t b) { snf_budget_ = b; }

 private:
  ChainComplex() = default;

  std::vector<SimplexList> lists_;
  std::vector<SparseMatrix> boundaries_;  // boundaries_[k] = d_k, k = 0..max
  std::size_t snf_budget_ = kSnfColumnBudget;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
  mutable std::map<std::pair<int, std::uint64_t>, RankResult> ranks_;
  mutable std::map<int, SmithForm> smith_;
};

/// Complex of a poset through degree max_degree. Throws BudgetExceeded
/// when an enumeration is too large.
ChainComplex build_complex(Poset& poset, int max_degree);
ChainComplex build_complex(const PosetSpec& spec, int max_degree, std::uint64_t budget = kDefaultSimplexBudget);

/// dim H~_k over F_p (p > 0) or Q (p = 0). Needs d_{k+1}.
std::size_t homology_field(const ChainComplex& c, int k, std::uint64_t p);

/// (free rank, torsion invariant factors) of H~_k(C; Z).
std::pair<std::size_t, std::vector<std::int64_t>> homology_snf(const ChainComplex& c, int k);

/// Homology of one degree.
struct DegreeHomology {
  int degree = 0;
  std::string coeff;
  std::size_t rank = 0;                // betti number or field dimension
  std::vector<std::int64_t> torsion;   // Z only
  Evidence evidence = Evidence::exact_integer;
  /// Field dimensions behind a Z verdict computed without Smith form.
  std::map<std::string, std::size_t> cross_checks;
  bool vanishes() const;
};

struct HomologyReport {
  std::string coeff;
  int bound = 0;
  std::vector<DegreeHomology> degrees;
  bool pass = false;
  std::optional<int> failing_degree;
  Evidence evidence = Evidence::exact_integer;  // weakest across degrees

  std::string verdict() const { return pass ? "PASS" : "FAIL"; }
};

void to_json(nlohmann::json& j, const DegreeHomology& d);
void from_json(const nlohmann::json& j, DegreeHomology& d);
void to_json(nlohmann::json& j, const HomologyReport& r);
void from_json(const nlohmann::json& j, HomologyReport& r);

/// Primes used to cross-check Z verdicts beyond the Smith budget.
inline const std::vector<std::uint64_t> kCrossCheckPrimes{2, 5};

/// Homology in degree k; over Z beyond the Smith budget this falls back to
/// Q together with the cross-check primes.
DegreeHomology degree_homology(const ChainComplex& c, int k, const Coefficients& coeff);

/// PASS iff H~_k = 0 for -1 <= k <= bound. Degree -1 vanishes iff the
/// complex is nonempty. With threads > 1 the degrees run concurrently.
HomologyReport acyclicity_verdict(const ChainComplex& c, int bound, const Coefficients& coeff, unsigned threads = 1);
HomologyReport acyclicity_verdict(Poset& poset, int bound, const Coefficients& coeff, unsigned threads = 1);

}  // namespace unistab
