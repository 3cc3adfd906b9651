#pragma once

// Brute-force reference computations used by the tests. They work over prime
// fields with plain integer arithmetic and share no code with the library.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using IVec = std::vector<long long>;

inline long long mod(long long a, long long p) { return ((a % p) + p) % p; }

inline long long inv_mod(long long a, long long p) {
  long long r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod(std::vector<IVec> rows, long long p) {
  std::size_t r = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && mod(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const long long iv = inv_mod(rows[r][c], p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const long long t = mod(rows[i][c], p) * iv % p;
      if (!t) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = mod(rows[i][j] - t * rows[r][j], p);
    }
    ++r;
  }
  return r;
}

/// All vectors of F_p^dim, first coordinate varying slowest.
inline std::vector<IVec> all_vectors(long long p, std::size_t dim) {
  std::vector<IVec> out;
  IVec v(dim, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = dim;
    while (i > 0 && ++v[i - 1] == p) v[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

inline bool is_zero(const IVec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

/// Alternating form sum x_{2i-1} y_{2i} - x_{2i} y_{2i-1}.
inline long long symplectic(const IVec& x, const IVec& y, long long p) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); i += 2) s += x[i] * y[i + 1] - x[i + 1] * y[i];
  return mod(s, p);
}

inline bool leading_one(const IVec& v) {
  for (auto x : v)
    if (x) return x == 1;
  return false;
}

/// Normalized lines of F_p^dim that are isotropic for the symplectic form.
inline std::vector<IVec> symplectic_lines(long long p, std::size_t dim) {
  std::vector<IVec> out;
  for (auto& v : all_vectors(p, dim))
    if (!is_zero(v) && leading_one(v)) out.push_back(v);
  return out;
}

/// Number of ordered isotropic frames of lines of the given length in the
/// symplectic space F_p^dim, by exhaustive tuple search.
inline std::size_t count_symplectic_line_frames(long long p, std::size_t dim, std::size_t length) {
  const auto lines = symplectic_lines(p, dim);
  std::size_t count = 0;
  std::vector<std::size_t> idx(length, 0);
  while (true) {
    std::vector<IVec> rows;
    bool ok = true;
    for (std::size_t a = 0; a < length && ok; ++a) {
      rows.push_back(lines[idx[a]]);
      for (std::size_t b = 0; b < a && ok; ++b)
        if (symplectic(lines[idx[a]], lines[idx[b]], p)) ok = false;
    }
    if (ok && rank_mod(rows, p) == length) ++count;
    std::size_t i = length;
    while (i > 0 && ++idx[i - 1] == lines.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return count;
}

/// Dense integer matrix rank over Q by exact fraction-free elimination with
/// __int128 intermediates (small inputs only).
inline std::size_t rank_rational(std::vector<IVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const long long a = rows[r][c];
      const long long b = rows[i][c];
      long long g = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        rows[i][j] = static_cast<long long>(static_cast<__int128>(a) * rows[i][j] - static_cast<__int128>(b) * rows[r][j]);
        g = std::gcd(g, rows[i][j]);
      }
      if (g > 1)
        for (auto& x : rows[i]) x /= g;
    }
    ++r;
  }
  return r;
}

// dim H_k(Z/m; F_ell) for k <= top from the unnormalized bar complex.
inline std::vector<std::size_t> bar_homology(long long m, long long ell, unsigned top) {
  auto tuples = [&](unsigned len) {
    std::vector<IVec> out{{}};
    for (unsigned i = 0; i < len; ++i) {
      std::vector<IVec> next;
      for (const auto& t : out)
        for (long long g = 0; g < m; ++g) {
          auto u = t;
          u.push_back(g);
          next.push_back(u);
        }
      out = next;
    }
    return out;
  };
  auto rank_d = [&](unsigned len) -> std::size_t {
    if (len == 0) return 0;
    const auto src = tuples(len);
    const auto dst = tuples(len - 1);
    auto index = [&](const IVec& t) {
      long long k = 0;
      for (auto g : t) k = k * m + g;
      return static_cast<std::size_t>(k);
    };
    std::vector<IVec> cols;
    for (const auto& t : src) {
      IVec col(dst.size(), 0);
      col[index(IVec(t.begin() + 1, t.end()))] += 1;
      for (unsigned i = 0; i + 1 < len; ++i) {
        IVec u;
        for (unsigned j = 0; j < len; ++j) {
          if (j == i + 1) continue;
          u.push_back(j == i ? (t[i] + t[i + 1]) % m : t[j]);
        }
        col[index(u)] += (i % 2 == 0) ? -1 : 1;
      }
      col[index(IVec(t.begin(), t.end() - 1))] += (len % 2 == 0) ? 1 : -1;
      for (auto& x : col) x = mod(x, ell);
      cols.push_back(col);
    }
    return rank_mod(cols, ell);
  };
  std::vector<std::size_t> h;
  for (unsigned k = 0; k <= top; ++k) {
    std::size_t dim = 1;
    for (unsigned i = 0; i < k; ++i) dim *= static_cast<std::size_t>(m);
    h.push_back(dim - rank_d(k) - rank_d(k + 1));
  }
  return h;
}

}  // namespace oracle
