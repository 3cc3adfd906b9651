#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unistab/linalg.hpp"
#include "unistab/scalars.hpp"

namespace unistab {

/// Packs coordinate vectors of F_q^dim into integers. The first coordinate is
/// the most significant digit, so numeric order on codes is lexicographic
/// order on coordinate tuples.
class VectorCodec {
 public:
  VectorCodec(const Field& f, std::size_t dim);

  std::size_t dim() const { return dim_; }
  /// q^dim.
  std::uint64_t count() const { return count_; }
  std::uint32_t encode(const Vector& v) const;
  Vector decode(std::uint32_t code) const;

 private:
  unsigned q_;
  std::size_t dim_;
  std::uint64_t count_;
};

/// R^{2n} with the hyperbolic eps-hermitian form
///   h(x, y) = sum_i x_{2i-1} conj(y_{2i}) + eps x_{2i} conj(y_{2i-1}).
class HyperbolicSpace {
 public:
  /// Throws DomainError if eps is not a norm-one unit.
  HyperbolicSpace(Field f, unsigned n, Scalar eps);

  const Field& field() const { return f_; }
  unsigned rank() const { return n_; }
  std::size_t dim() const { return 2 * std::size_t{n_}; }
  Scalar eps() const { return params_.eps; }
  const FormParams& params() const { return params_; }
  const VectorCodec& codec() const { return codec_; }

  /// "symplectic", "orthogonal", "unitary" or "hermitian".
  std::string form_type() const;
  /// eps equals +1 or -1.
  bool eps_is_sign() const;

  /// Standard basis vector e_i, 1-based as in e_1, ..., e_{2n}.
  Vector e(std::size_t i) const;

  Scalar h(const Vector& x, const Vector& y) const;
  Matrix gram() const;

  /// Isotropy predicates are defined here only in odd characteristic.
  bool isotropy_supported() const { return f_.characteristic() != 2; }
  /// Throws UnsupportedConfiguration in characteristic 2.
  void require_isotropy() const;

  bool is_isotropic(const Vector& v) const;
  /// h vanishes on span(frame). Throws PreconditionError if the frame is not
  /// linearly independent.
  bool is_isotropic_frame(std::span<const Vector> frame) const;

  /// Basis of {x : h(x, v) = 0 for all v in vectors}.
  std::vector<Vector> perp(std::span<const Vector> vectors) const;

  /// Same space over rank m, sharing the field and eps.
  HyperbolicSpace with_rank(unsigned m) const { return HyperbolicSpace(f_, m, params_.eps); }

 private:
  void check_dim(const Vector& v) const;

  Field f_;
  unsigned n_;
  FormParams params_;
  VectorCodec codec_;
};

/// Parses "e1+2e3" style or comma separated coordinate lists.
Vector parse_vector(const Field& f, std::size_t dim, const std::string& text);
std::string format_vector(const Vector& v);

}  // namespace unistab
