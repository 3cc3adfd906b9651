#include "unistab/hermitian.hpp"

#include <cctype>

#include "unistab/error.hpp"

namespace unistab {

VectorCodec::VectorCodec(const Field& f, std::size_t dim) : q_(f.order()), dim_(dim), count_(1) {
  for (std::size_t i = 0; i < dim; ++i) {
    count_ *= q_;
    if (count_ > (std::uint64_t{1} << 32)) throw ConfigError("vector space too large to encode");
  }
}

std::uint32_t VectorCodec::encode(const Vector& v) const {
  if (v.size() != dim_) throw PreconditionError("vector dimension mismatch");
  std::uint64_t c = 0;
  for (Scalar s : v) c = c * q_ + s.value;
  return static_cast<std::uint32_t>(c);
}

Vector VectorCodec::decode(std::uint32_t code) const {
  Vector v(dim_);
  for (std::size_t i = dim_; i-- > 0;) {
    v[i] = Scalar{static_cast<std::uint8_t>(code % q_)};
    code /= q_;
  }
  return v;
}

HyperbolicSpace::HyperbolicSpace(Field f, unsigned n, Scalar eps)
    : f_(std::move(f)), n_(n), params_(make_form_params(f_, eps)), codec_(f_, 2 * std::size_t{n}) {}

std::string HyperbolicSpace::form_type() const {
  if (f_.involution() == Involution::frobenius_sqrt) return "unitary";
  if (params_.eps == f_.neg(f_.one())) return "symplectic";
  if (params_.eps == f_.one()) return "orthogonal";
  return "hermitian";
}

bool HyperbolicSpace::eps_is_sign() const { return params_.eps == f_.one() || params_.eps == f_.neg(f_.one()); }

Vector HyperbolicSpace::e(std::size_t i) const {
  if (i == 0 || i > dim()) throw PreconditionError("basis index e" + std::to_string(i) + " out of range");
  return unit_vector(dim(), i - 1, f_);
}

void HyperbolicSpace::check_dim(const Vector& v) const {
  if (v.size() != dim())
    throw PreconditionError("vector of length " + std::to_string(v.size()) + " in space of dimension " +
                            std::to_string(dim()));
}

Scalar HyperbolicSpace::h(const Vector& x, const Vector& y) const {
  check_dim(x);
  check_dim(y);
  Scalar a = f_.zero();
  Scalar b = f_.zero();
  for (std::size_t i = 0; i < dim(); i += 2) {
    a = f_.add(a, f_.mul(x[i], f_.conj(y[i + 1])));
    b = f_.add(b, f_.mul(x[i + 1], f_.conj(y[i])));
  }
  return f_.add(a, f_.mul(params_.eps, b));
}

Matrix HyperbolicSpace::gram() const {
  Matrix g(dim(), dim());
  for (std::size_t i = 0; i < dim(); i += 2) {
    g.at(i, i + 1) = f_.one();
    g.at(i + 1, i) = params_.eps;
  }
  return g;
}

void HyperbolicSpace::require_isotropy() const {
  if (!isotropy_supported())
    throw UnsupportedConfiguration(
        "isotropy in characteristic 2 needs the quadratic refinement of the form, which is not implemented");
}

bool HyperbolicSpace::is_isotropic(const Vector& v) const {
  require_isotropy();
  return h(v, v) == f_.zero();
}

bool HyperbolicSpace::is_isotropic_frame(std::span<const Vector> frame) const {
  require_isotropy();
  for (const auto& v : frame) check_dim(v);
  if (!independent(f_, frame, dim())) throw PreconditionError("frame is not unimodular");
  for (std::size_t i = 0; i < frame.size(); ++i)
    for (std::size_t j = i; j < frame.size(); ++j)
      if (h(frame[i], frame[j]) != f_.zero()) return false;
  return true;
}

std::vector<Vector> HyperbolicSpace::perp(std::span<const Vector> vectors) const {
  // x in perp(v) iff sum_j x_j * h(e_j, v) = 0; rows are the functionals.
  Matrix m(vectors.size(), dim());
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    check_dim(vectors[r]);
    for (std::size_t j = 0; j < dim(); ++j) m.at(r, j) = h(unit_vector(dim(), j, f_), vectors[r]);
  }
  if (vectors.empty()) {
    std::vector<Vector> all;
    for (std::size_t j = 0; j < dim(); ++j) all.push_back(unit_vector(dim(), j, f_));
    return all;
  }
  return nullspace(f_, m);
}

Vector parse_vector(const Field& f, std::size_t dim, const std::string& text) {
  Vector v(dim, f.zero());
  if (text.find('e') == std::string::npos) {
    std::size_t pos = 0;
    std::size_t i = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (i >= dim) throw ConfigError("too many coordinates in '" + text + "'");
      const long long x = std::stoll(tok);
      v[i++] = x < 0 ? f.from_int(x) : f.element(static_cast<unsigned>(x));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (i != dim) throw ConfigError("expected " + std::to_string(dim) + " coordinates in '" + text + "'");
    return v;
  }
  // sum of terms [+|-][coeff]e<index>
  std::size_t pos = 0;
  while (pos < text.size()) {
    long long sign = 1;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-' || text[pos] == ' ')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
    }
    long long coeff = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t used = 0;
      coeff = std::stoll(text.substr(pos), &used);
      pos += used;
    }
    if (pos >= text.size() || text[pos] != 'e') throw ConfigError("cannot parse vector '" + text + "'");
    ++pos;
    std::size_t used = 0;
    const long long idx = std::stoll(text.substr(pos), &used);
    pos += used;
    if (idx < 1 || static_cast<std::size_t>(idx) > dim)
      throw ConfigError("basis index out of range in '" + text + "'");
    v[idx - 1] = f.add(v[idx - 1], f.from_int(sign * coeff));
  }
  return v;
}

std::string format_vector(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i].value);
  }
  return s;
}

}  // namespace unistab
