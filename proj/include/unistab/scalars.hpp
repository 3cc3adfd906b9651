#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace unistab {

/// Element of a finite field F_q, stored as its canonical index in [0, q).
///
/// The index i = c_0 + c_1 p + ... + c_{e-1} p^{e-1} encodes the residue
/// class of c_0 + c_1 x + ... + c_{e-1} x^{e-1} modulo the field's modulus,
/// so 0 and 1 are the additive and multiplicative identities and equality of
/// scalars is equality of field elements.
struct Scalar {
  std::uint8_t value = 0;

  friend constexpr auto operator<=>(Scalar, Scalar) = default;
};

enum class Involution {
  identity,
  frobenius_sqrt,  // x -> x^{p^{e/2}}, requires even extension degree
};

std::string to_string(Involution inv);
Involution involution_from_string(const std::string& s);

/// Finite field F_{p^e} with an involution of order at most two.
///
/// Arithmetic is table driven; q is limited to 256. The modulus is the
/// lexicographically smallest monic irreducible polynomial of degree e
/// (coefficients compared from the constant term upward), so element indices
/// are stable across runs and machines. Copies share the immutable tables.
class Field {
 public:
  static constexpr unsigned kMaxOrder = 256;

  /// Throws ConfigError when p is not prime, e == 0, q exceeds kMaxOrder, or
  /// a Frobenius involution is requested for odd e.
  static Field make(unsigned p, unsigned e, Involution inv);

  /// Same as make() with q given as a prime power.
  static Field from_order(unsigned q, Involution inv);

  unsigned characteristic() const { return t_->p; }
  unsigned degree() const { return t_->e; }
  unsigned order() const { return t_->q; }
  Involution involution() const { return t_->inv; }

  /// The acyclicity results for frame posets exclude the two-element field.
  bool excluded_by_connectivity() const { return t_->q == 2; }

  /// Monic modulus coefficients c_0, ..., c_e.
  const std::vector<unsigned>& modulus() const { return t_->modulus; }

  Scalar zero() const { return Scalar{0}; }
  Scalar one() const { return Scalar{1}; }
  Scalar element(unsigned index) const;
  /// Image of an integer under Z -> F_p -> F_q.
  Scalar from_int(long long v) const;

  Scalar add(Scalar a, Scalar b) const { return Scalar{t_->add[idx(a, b)]}; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar neg(Scalar a) const { return Scalar{t_->neg[a.value]}; }
  Scalar mul(Scalar a, Scalar b) const { return Scalar{t_->mul[idx(a, b)]}; }
  /// Throws DomainError for zero.
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar conj(Scalar a) const { return Scalar{t_->conj[a.value]}; }
  Scalar pow(Scalar a, unsigned long long k) const;

  bool is_zero(Scalar a) const { return a.value == 0; }

  /// Generator of the cyclic group F_q^*, the smallest index with full order.
  Scalar primitive_element() const { return Scalar{t_->primitive}; }

  /// All q elements in index order.
  std::vector<Scalar> elements() const;
  /// Fixed field of the involution.
  std::vector<Scalar> fixed_elements() const;

  /// Coefficients c_0..c_{e-1} of the polynomial representative.
  std::vector<unsigned> coefficients(Scalar a) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.t_->p == b.t_->p && a.t_->e == b.t_->e && a.t_->inv == b.t_->inv;
  }

  /// Short human label like "F_9 (frobenius)".
  std::string name() const;

 private:
  struct Tables {
    unsigned p = 0;
    unsigned e = 0;
    unsigned q = 0;
    Involution inv = Involution::identity;
    std::vector<unsigned> modulus;
    std::vector<std::uint8_t> add;
    std::vector<std::uint8_t> mul;
    std::vector<std::uint8_t> neg;
    std::vector<std::uint8_t> inverse;
    std::vector<std::uint8_t> conj;
    std::uint8_t primitive = 0;
  };

  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::size_t idx(Scalar a, Scalar b) const { return std::size_t{a.value} * t_->q + b.value; }

  std::shared_ptr<const Tables> t_;
};

/// Form data derived from a norm-one unit epsilon.
struct FormParams {
  Scalar eps;
  /// {r : eps^{-1} conj(r) = -r}, the maximal form parameter.
  std::vector<Scalar> lambda;
  /// {r : conj(r) = r}.
  std::vector<Scalar> fixed;
};

/// Throws DomainError unless eps * conj(eps) = 1.
std::vector<Scalar> lambda_set(const Field& f, Scalar eps);
std::vector<Scalar> norm_one_units(const Field& f);
FormParams make_form_params(const Field& f, Scalar eps);

bool is_prime(unsigned long long n);

}  // namespace unistab
