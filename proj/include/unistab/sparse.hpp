#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace unistab {

struct Entry {
  std::uint32_t row;
  std::int64_t value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  std::int64_t value;
};

/// Column-compressed sparse matrix with integer entries. A nonzero modulus
/// tags the entries as residues mod that prime. Columns hold strictly
/// increasing rows and no explicit zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::uint64_t modulus = 0) : rows_(rows), modulus_(modulus) {}

  /// Sums duplicate coordinates and drops zeros.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t,
                                    std::uint64_t modulus = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return col_start_.size() - 1; }
  std::size_t nnz() const { return entries_.size(); }
  std::uint64_t modulus() const { return modulus_; }

  /// Appends a column; entries must have strictly increasing rows < rows().
  void add_column(std::span<const Entry> entries);
  std::span<const Entry> column(std::size_t j) const {
    return {entries_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }

  /// Product this * other, exact over Z (or mod the shared modulus).
  SparseMatrix multiply(const SparseMatrix& other) const;
  bool is_zero() const { return entries_.empty(); }
  /// Copy with entries reduced mod p (zeros dropped).
  SparseMatrix reduced_mod(std::uint64_t p) const;
  SparseMatrix transpose() const;

  /// Text dump: first line "rows cols nnz", then "i j v" per entry, 0-indexed.
  void dump(std::ostream& os) const;
  static SparseMatrix load(std::istream& is);

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::uint64_t modulus_ = 0;
  std::vector<std::size_t> col_start_{0};
  std::vector<Entry> entries_;
};

/// Sparse vector over F_p as (row, value) pairs with increasing rows.
using ModVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Incremental column reduction over F_p. Each accepted column is stored with
/// its largest row as pivot, scaled so the pivot entry is 1; reduction
/// always clears the current largest row against the stored pivot for it.
class ModularReducer {
 public:
  ModularReducer(std::size_t rows, std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  std::size_t rank() const { return columns_.size(); }
  /// Residue of v (entries already reduced mod p) after elimination of its
  /// pivot-owned leading entries; empty when v lies in the span.
  ModVec reduce(ModVec v) const;
  /// Adds v; returns true if it increased the rank.
  bool add(ModVec v);
  bool in_span(const ModVec& v) const { return reduce(v).empty(); }

 private:
  ModVec axpy(const ModVec& a, std::uint64_t c, const ModVec& b) const;  // a - c*b

  std::uint64_t p_;
  std::vector<std::int64_t> owner_;
  std::vector<ModVec> columns_;
};

ModVec to_modvec(std::span<const Entry> col, std::uint64_t p);

/// Rank over F_p. Stops early once the rank reaches cap.
std::size_t rank_mod_p(const SparseMatrix& m, std::uint64_t p, std::optional<std::size_t> cap = std::nullopt);

/// Largest prime below 2^31, used for modular lower bounds on rational rank.
inline constexpr std::uint64_t kLargePrime = 2147483647ULL;

}  // namespace unistab
