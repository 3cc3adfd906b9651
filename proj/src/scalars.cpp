#include "unistab/scalars.hpp"

#include <algorithm>

#include "unistab/error.hpp"

namespace unistab {

namespace {

using Poly = std::vector<unsigned>;  // coefficients, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p * p - lead * m[i] % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

Poly index_to_poly(unsigned index, unsigned p, unsigned len) {
  Poly r(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    r[i] = index % p;
    index /= p;
  }
  return r;
}

unsigned poly_to_index(const Poly& a, unsigned p) {
  unsigned r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * p + a[i];
  return r;
}

bool is_irreducible(const Poly& m, unsigned p) {
  const unsigned deg = static_cast<unsigned>(m.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned idx = 0; idx < count; ++idx) {
      Poly f = index_to_poly(idx, p, d);
      f.push_back(1);
      if (poly_mod(m, f, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(unsigned p, unsigned e) {
  unsigned count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  for (unsigned idx = 0; idx < count; ++idx) {
    Poly m = index_to_poly(idx, p, e);
    m.push_back(1);
    if (e == 1 || (m[0] != 0 && is_irreducible(m, p))) return m;
  }
  throw ConfigError("no irreducible polynomial found");
}

}  // namespace

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string to_string(Involution inv) {
  return inv == Involution::identity ? "identity" : "frobenius";
}

Involution involution_from_string(const std::string& s) {
  if (s == "identity" || s == "id") return Involution::identity;
  if (s == "frobenius" || s == "frobenius-sqrt" || s == "frobenius_sqrt") return Involution::frobenius_sqrt;
  throw ConfigError("unknown involution '" + s + "'");
}

Field Field::make(unsigned p, unsigned e, Involution inv) {
  if (!is_prime(p)) throw ConfigError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw ConfigError("extension degree must be at least 1");
  unsigned long long q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw ConfigError("field order exceeds " + std::to_string(kMaxOrder));
  }
  if (inv == Involution::frobenius_sqrt && e % 2 != 0)
    throw ConfigError("frobenius-sqrt involution needs an even extension degree, got e=" + std::to_string(e));

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->e = e;
  t->q = static_cast<unsigned>(q);
  t->inv = inv;
  t->modulus = smallest_irreducible(p, e);

  const unsigned Q = t->q;
  t->add.resize(std::size_t{Q} * Q);
  t->mul.resize(std::size_t{Q} * Q);
  t->neg.resize(Q);
  t->inverse.assign(Q, 0);
  t->conj.resize(Q);

  std::vector<Poly> polys(Q);
  for (unsigned i = 0; i < Q; ++i) polys[i] = index_to_poly(i, p, e);

  for (unsigned a = 0; a < Q; ++a) {
    Poly n(e);
    for (unsigned i = 0; i < e; ++i) n[i] = (p - polys[a][i]) % p;
    t->neg[a] = static_cast<std::uint8_t>(poly_to_index(n, p));
    for (unsigned b = 0; b < Q; ++b) {
      Poly s(e);
      for (unsigned i = 0; i < e; ++i) s[i] = (polys[a][i] + polys[b][i]) % p;
      t->add[std::size_t{a} * Q + b] = static_cast<std::uint8_t>(poly_to_index(s, p));
      Poly m = poly_mod(poly_mul(polys[a], polys[b], p), t->modulus, p);
      t->mul[std::size_t{a} * Q + b] = static_cast<std::uint8_t>(poly_to_index(m, p));
    }
  }
  for (unsigned a = 1; a < Q; ++a)
    for (unsigned b = 1; b < Q; ++b)
      if (t->mul[std::size_t{a} * Q + b] == 1) t->inverse[a] = static_cast<std::uint8_t>(b);

  // conj(x) = x^{p^{e/2}} or identity
  unsigned long long exponent = 1;
  if (inv == Involution::frobenius_sqrt)
    for (unsigned i = 0; i < e / 2; ++i) exponent *= p;
  for (unsigned a = 0; a < Q; ++a) {
    unsigned r = 1;
    for (unsigned long long k = 0; k < exponent; ++k) r = t->mul[std::size_t{r} * Q + a];
    t->conj[a] = static_cast<std::uint8_t>(a == 0 ? 0 : r);
  }

  for (unsigned g = 1; g < Q; ++g) {
    unsigned x = g;
    unsigned ord = 1;
    while (x != 1) {
      x = t->mul[std::size_t{x} * Q + g];
      ++ord;
    }
    if (ord == Q - 1) {
      t->primitive = static_cast<std::uint8_t>(g);
      break;
    }
  }
  return Field(std::move(t));
}

Field Field::from_order(unsigned q, Involution inv) {
  if (q < 2) throw ConfigError("field order must be a prime power >= 2");
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw ConfigError(std::to_string(q) + " is not a prime power");
  return make(p, e, inv);
}

Scalar Field::element(unsigned index) const {
  if (index >= t_->q) throw DomainError("scalar index " + std::to_string(index) + " out of range");
  return Scalar{static_cast<std::uint8_t>(index)};
}

Scalar Field::from_int(long long v) const {
  const long long p = t_->p;
  return Scalar{static_cast<std::uint8_t>(((v % p) + p) % p)};
}

Scalar Field::inv(Scalar a) const {
  if (a.value == 0) throw DomainError("inverse of zero");
  return Scalar{t_->inverse[a.value]};
}

Scalar Field::pow(Scalar a, unsigned long long k) const {
  Scalar r = one();
  Scalar b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

std::vector<Scalar> Field::elements() const {
  std::vector<Scalar> r(t_->q);
  for (unsigned i = 0; i < t_->q; ++i) r[i] = Scalar{static_cast<std::uint8_t>(i)};
  return r;
}

std::vector<Scalar> Field::fixed_elements() const {
  std::vector<Scalar> r;
  for (Scalar x : elements())
    if (conj(x) == x) r.push_back(x);
  return r;
}

std::vector<unsigned> Field::coefficients(Scalar a) const { return index_to_poly(a.value, t_->p, t_->e); }

std::string Field::name() const {
  return "F_" + std::to_string(t_->q) + " (" + to_string(t_->inv) + ")";
}

std::vector<Scalar> lambda_set(const Field& f, Scalar eps) {
  if (f.mul(eps, f.conj(eps)) != f.one()) throw DomainError("epsilon is not a norm-one unit");
  const Scalar eps_inv = f.inv(eps);
  std::vector<Scalar> r;
  for (Scalar x : f.elements())
    if (f.mul(eps_inv, f.conj(x)) == f.neg(x)) r.push_back(x);
  return r;
}

std::vector<Scalar> norm_one_units(const Field& f) {
  std::vector<Scalar> r;
  for (Scalar x : f.elements())
    if (f.mul(x, f.conj(x)) == f.one()) r.push_back(x);
  return r;
}

FormParams make_form_params(const Field& f, Scalar eps) {
  return FormParams{eps, lambda_set(f, eps), f.fixed_elements()};
}

}  // namespace unistab
