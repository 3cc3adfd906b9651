#pragma once

#include <cstdint>
#include <vector>

#include "unistab/sparse.hpp"

namespace unistab {

inline constexpr std::size_t kSnfColumnBudget = 20000;

/// Rank and nontrivial invariant factors of an integer matrix.
struct SmithForm {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, each dividing the next
};

/// Smith normal form over Z. Columns whose reduced lowest entry is a unit are
/// eliminated sparsely; the remaining block goes through dense elimination
/// with arbitrary precision. Throws BudgetExceeded above column_budget.
SmithForm smith_form(const SparseMatrix& m, std::size_t column_budget = kSnfColumnBudget);

}  // namespace unistab
