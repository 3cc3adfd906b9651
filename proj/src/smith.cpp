#include "unistab/smith.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <unordered_map>

#include "unistab/error.hpp"

namespace unistab {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using Column = std::map<std::uint32_t, std::int64_t>;

constexpr std::size_t kDenseEntryBudget = 4'000'000;

std::int64_t checked_mul_sub(std::int64_t a, std::int64_t c, std::int64_t b) {
  std::int64_t prod = 0, out = 0;
  if (__builtin_mul_overflow(c, b, &prod) || __builtin_sub_overflow(a, prod, &out))
    throw DomainError("integer overflow during sparse Smith elimination");
  return out;
}

// Pivot columns keyed by their lowest row, where they hold +-1.
class UnitPivots {
 public:
  void reduce(Column& v) const {
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      const auto p = pivots_.find(it->first);
      if (p == pivots_.end()) continue;
      const std::uint32_t row = it->first;
      const std::int64_t c = it->second * p->second.back().second;  // unit: inverse is itself
      for (const auto& [r, x] : p->second) {
        const std::int64_t nv = checked_mul_sub(v[r], c, x);
        if (nv == 0) v.erase(r);
        else v[r] = nv;
      }
      it = v.upper_bound(row);
    }
  }

  bool try_add(const Column& v) {
    if (v.empty()) return false;
    const auto& [row, lead] = *v.rbegin();
    if (lead != 1 && lead != -1) return false;
    pivots_.emplace(row, std::vector<std::pair<std::uint32_t, std::int64_t>>(v.begin(), v.end()));
    return true;
  }

  std::size_t size() const { return pivots_.size(); }

 private:
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::int64_t>>> pivots_;
};

// Diagonalizes a dense matrix in place and returns the nonzero diagonal.
std::vector<BigInt> dense_diagonal(std::vector<std::vector<BigInt>>& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

// Turns a diagonal into invariant factors d_1 | d_2 | ...
void normalize_divisibility(std::vector<BigInt>& d) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        const BigInt g = gcd(d[i], d[j]);
        if (g == d[i]) continue;
        const BigInt l = d[i] / g * d[j];
        d[i] = g;
        d[j] = l;
        changed = true;
      }
  }
}

}  // namespace

SmithForm smith_form(const SparseMatrix& m, std::size_t column_budget) {
  if (m.modulus() != 0) throw PreconditionError("Smith form needs an integer matrix");
  if (m.cols() > column_budget)
    throw BudgetExceeded("Smith form over Z is limited to the column budget; use field ranks instead", m.cols(),
                         column_budget);

  UnitPivots pivots;
  std::vector<Column> hard;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Column v;
    for (const Entry& e : m.column(j)) v.emplace(e.row, e.value);
    pivots.reduce(v);
    if (v.empty()) continue;
    if (!pivots.try_add(v)) hard.push_back(std::move(v));
  }

  // Project the rest away from the final pivot rows. The projection kills
  // exactly the span of the unit pivots, so the cokernel is preserved.
  std::map<std::uint32_t, std::size_t> row_index;
  std::vector<Column> residual;
  for (auto& v : hard) {
    pivots.reduce(v);
    if (v.empty()) continue;
    for (const auto& [r, x] : v) row_index.emplace(r, 0);
    residual.push_back(std::move(v));
  }

  SmithForm out;
  out.rank = pivots.size();
  if (residual.empty()) return out;
  if (row_index.size() * residual.size() > kDenseEntryBudget)
    throw BudgetExceeded("dense Smith block too large", row_index.size() * residual.size(), kDenseEntryBudget);
  std::size_t next = 0;
  for (auto& [r, idx] : row_index) idx = next++;
  std::vector<std::vector<BigInt>> dense(row_index.size(), std::vector<BigInt>(residual.size()));
  for (std::size_t j = 0; j < residual.size(); ++j)
    for (const auto& [r, x] : residual[j]) dense[row_index[r]][j] = x;

  std::vector<BigInt> diag = dense_diagonal(dense);
  normalize_divisibility(diag);
  out.rank += diag.size();
  for (const BigInt& d : diag) {
    if (d == 1) continue;
    if (d > std::numeric_limits<std::int64_t>::max()) throw DomainError("invariant factor exceeds 64 bits");
    out.torsion.push_back(static_cast<std::int64_t>(d));
  }
  return out;
}

}  // namespace unistab
