#include "unistab/sparse.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "unistab/error.hpp"

namespace unistab {

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1;
  std::uint64_t e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t residue(std::int64_t v, std::uint64_t p) {
  const std::int64_t sp = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((v % sp) + sp) % sp);
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t,
                                         std::uint64_t modulus) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseMatrix m(rows, modulus);
  std::size_t i = 0;
  std::vector<Entry> col;
  for (std::size_t c = 0; c < cols; ++c) {
    col.clear();
    while (i < t.size() && t[i].col == c) {
      if (t[i].row >= rows) throw PreconditionError("triplet row out of range");
      std::int64_t v = 0;
      const std::uint32_t r = t[i].row;
      while (i < t.size() && t[i].col == c && t[i].row == r) v += t[i++].value;
      if (modulus) v = static_cast<std::int64_t>(residue(v, modulus));
      if (v != 0) col.push_back({r, v});
    }
    m.add_column(col);
  }
  if (i != t.size()) throw PreconditionError("triplet column out of range");
  return m;
}

void SparseMatrix::add_column(std::span<const Entry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].row >= rows_) throw PreconditionError("entry row out of range");
    if (entries[i].value == 0) throw PreconditionError("explicit zero entry");
    if (i && entries[i].row <= entries[i - 1].row) throw PreconditionError("column rows not strictly increasing");
  }
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  col_start_.push_back(entries_.size());
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (cols() != other.rows()) throw PreconditionError("matrix dimension mismatch");
  SparseMatrix r(rows_, modulus_);
  std::vector<Entry> acc, col;
  for (std::size_t j = 0; j < other.cols(); ++j) {
    acc.clear();
    for (const Entry& b : other.column(j))
      for (const Entry& a : column(b.row)) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(a.value, b.value, &prod)) throw DomainError("integer overflow in sparse product");
        acc.push_back({a.row, prod});
      }
    std::sort(acc.begin(), acc.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
    col.clear();
    for (std::size_t i = 0; i < acc.size();) {
      std::int64_t v = 0;
      const std::uint32_t row = acc[i].row;
      for (; i < acc.size() && acc[i].row == row; ++i)
        if (__builtin_add_overflow(v, acc[i].value, &v)) throw DomainError("integer overflow in sparse product");
      if (modulus_) v = static_cast<std::int64_t>(residue(v, modulus_));
      if (v != 0) col.push_back({row, v});
    }
    r.add_column(col);
  }
  return r;
}

SparseMatrix SparseMatrix::reduced_mod(std::uint64_t p) const {
  SparseMatrix r(rows_, p);
  std::vector<Entry> col;
  for (std::size_t j = 0; j < cols(); ++j) {
    col.clear();
    for (const Entry& e : column(j)) {
      const std::uint64_t v = residue(e.value, p);
      if (v) col.push_back({e.row, static_cast<std::int64_t>(v)});
    }
    r.add_column(col);
  }
  return r;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t j = 0; j < cols(); ++j)
    for (const Entry& e : column(j)) t.push_back({static_cast<std::uint32_t>(j), e.row, e.value});
  return from_triplets(cols(), rows_, std::move(t), modulus_);
}

void SparseMatrix::dump(std::ostream& os) const {
  os << rows_ << ' ' << cols() << ' ' << nnz() << '\n';
  for (std::size_t j = 0; j < cols(); ++j)
    for (const Entry& e : column(j)) os << e.row << ' ' << j << ' ' << e.value << '\n';
}

SparseMatrix SparseMatrix::load(std::istream& is) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(is >> rows >> cols >> nnz)) throw ConfigError("malformed sparse matrix header");
  std::vector<Triplet> t(nnz);
  for (auto& x : t)
    if (!(is >> x.row >> x.col >> x.value)) throw ConfigError("malformed sparse matrix entry");
  return from_triplets(rows, cols, std::move(t));
}

ModVec to_modvec(std::span<const Entry> col, std::uint64_t p) {
  ModVec v;
  v.reserve(col.size());
  for (const Entry& e : col) {
    const std::uint64_t r = residue(e.value, p);
    if (r) v.emplace_back(e.row, static_cast<std::uint32_t>(r));
  }
  return v;
}

ModularReducer::ModularReducer(std::size_t rows, std::uint64_t p) : p_(p), owner_(rows, -1) {
  if (p < 2 || p > kLargePrime) throw PreconditionError("modulus out of supported range");
}

ModVec ModularReducer::axpy(const ModVec& a, std::uint64_t c, const ModVec& b) const {
  ModVec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  const std::uint64_t neg = (p_ - c) % p_;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, static_cast<std::uint32_t>(neg * b[j].second % p_));
      ++j;
    } else {
      const std::uint64_t v = (a[i].second + neg * b[j].second) % p_;
      if (v) r.emplace_back(a[i].first, static_cast<std::uint32_t>(v));
      ++i;
      ++j;
    }
  }
  return r;
}

ModVec ModularReducer::reduce(ModVec v) const {
  while (!v.empty()) {
    const auto [row, val] = v.back();
    const std::int64_t o = owner_[row];
    if (o < 0) break;
    v = axpy(v, val, columns_[static_cast<std::size_t>(o)]);
  }
  return v;
}

bool ModularReducer::add(ModVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::uint64_t s = mod_inverse(v.back().second, p_);
  for (auto& e : v) e.second = static_cast<std::uint32_t>(e.second * s % p_);
  owner_[v.back().first] = static_cast<std::int64_t>(columns_.size());
  columns_.push_back(std::move(v));
  return true;
}

std::size_t rank_mod_p(const SparseMatrix& m, std::uint64_t p, std::optional<std::size_t> cap) {
  ModularReducer red(m.rows(), p);
  const std::size_t limit = std::min({cap.value_or(m.cols()), m.rows(), m.cols()});
  for (std::size_t j = 0; j < m.cols() && red.rank() < limit; ++j) red.add(to_modvec(m.column(j), p));
  return red.rank();
}

}  // namespace unistab
