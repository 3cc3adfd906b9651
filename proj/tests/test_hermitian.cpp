#include "doctest.h"

#include <random>

#include "unistab/error.hpp"
#include "unistab/hermitian.hpp"

using namespace unistab;

namespace {

HyperbolicSpace symplectic(unsigned q, unsigned n) {
  const Field f = Field::from_order(q, Involution::identity);
  return HyperbolicSpace(f, n, f.neg(f.one()));
}

Vector random_vector(const HyperbolicSpace& s, std::mt19937& rng) {
  Vector v(s.dim());
  std::uniform_int_distribution<unsigned> d(0, s.field().order() - 1);
  for (auto& x : v) x = s.field().element(d(rng));
  return v;
}

}  // namespace

TEST_CASE("Gram convention on the basis") {
  const auto s = symplectic(3, 2);
  const Field& f = s.field();
  CHECK(s.h(s.e(1), s.e(2)) == f.one());
  CHECK(s.h(s.e(2), s.e(1)) == s.eps());
  CHECK(s.h(s.e(1), s.e(3)) == f.zero());
  CHECK(s.h(s.e(3), s.e(4)) == f.one());
  CHECK(s.form_type() == "symplectic");
  CHECK_THROWS_AS(s.h(s.e(1), Vector(3)), PreconditionError);
  CHECK_THROWS_AS(s.e(5), PreconditionError);
}

TEST_CASE("h(y,x) = eps conj(h(x,y)) and sesquilinearity") {
  std::mt19937 rng(7);
  const Field f9 = Field::make(3, 2, Involution::frobenius_sqrt);
  const Field f5 = Field::make(5, 1, Involution::identity);
  std::vector<HyperbolicSpace> spaces{symplectic(3, 2), HyperbolicSpace(f5, 3, f5.one()),
                                      HyperbolicSpace(f9, 2, f9.one())};
  for (Scalar eps : norm_one_units(f9)) spaces.emplace_back(f9, 2, eps);
  for (const auto& s : spaces) {
    const Field& f = s.field();
    for (int t = 0; t < 200; ++t) {
      const Vector x = random_vector(s, rng);
      const Vector y = random_vector(s, rng);
      CHECK(s.h(y, x) == f.mul(s.eps(), f.conj(s.h(x, y))));
      const Scalar a = f.element(rng() % f.order());
      Vector ax = x;
      for (auto& c : ax) c = f.mul(a, c);
      CHECK(s.h(ax, y) == f.mul(a, s.h(x, y)));
      CHECK(s.h(y, ax) == f.mul(f.conj(a), s.h(y, x)));
    }
    // nondegenerate: perp of any nonzero vector has dimension 2n-1
    for (int t = 0; t < 50; ++t) {
      Vector v = random_vector(s, rng);
      if (std::all_of(v.begin(), v.end(), [](Scalar c) { return c.value == 0; })) continue;
      const std::vector<Vector> one{v};
      CHECK(s.perp(one).size() == s.dim() - 1);
    }
  }
}

TEST_CASE("isotropy examples") {
  const auto sp = symplectic(3, 2);
  std::mt19937 rng(1);
  for (int t = 0; t < 100; ++t) CHECK(sp.is_isotropic(random_vector(sp, rng)));
  CHECK(sp.is_isotropic(sp.e(1)));

  const Field f3 = Field::make(3, 1, Involution::identity);
  const HyperbolicSpace orth(f3, 1, f3.one());
  const Vector v{f3.one(), f3.one()};
  CHECK(orth.h(v, v) == f3.element(2));
  CHECK_FALSE(orth.is_isotropic(v));
  CHECK(orth.is_isotropic(orth.e(1)));

  const std::vector<Vector> f13{sp.e(1), sp.e(3)};
  const std::vector<Vector> f12{sp.e(1), sp.e(2)};
  Vector e1e3 = sp.e(1);
  e1e3[2] = f3.one();
  const std::vector<Vector> theta_edge{sp.e(1), e1e3};
  CHECK(sp.is_isotropic_frame(f13));
  CHECK_FALSE(sp.is_isotropic_frame(f12));
  CHECK(sp.is_isotropic_frame(theta_edge));
  const std::vector<Vector> dependent{sp.e(1), sp.e(1)};
  CHECK_THROWS_AS(sp.is_isotropic_frame(dependent), PreconditionError);
}

TEST_CASE("isotropy refused in characteristic 2") {
  const Field f4 = Field::make(2, 2, Involution::identity);
  const HyperbolicSpace s(f4, 2, f4.one());
  CHECK_FALSE(s.isotropy_supported());
  CHECK_THROWS_AS(s.is_isotropic(s.e(1)), UnsupportedConfiguration);
}

TEST_CASE("perp examples and rank-nullity") {
  const auto s = symplectic(3, 2);
  const std::vector<Vector> e1{s.e(1)};
  const auto p = s.perp(e1);
  CHECK(p.size() == 3);
  // span(e1, e3, e4): every basis vector has zero second coordinate
  for (const auto& v : p) CHECK(v[1].value == 0);
  CHECK(s.perp({}).size() == 4);
  const std::vector<Vector> all{s.e(1), s.e(2), s.e(3), s.e(4)};
  CHECK(s.perp(all).empty());

  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vector> vs;
    for (unsigned i = 0; i < rng() % 5; ++i) vs.push_back(random_vector(s, rng));
    CHECK(s.perp(vs).size() + rank_of(s.field(), vs, s.dim()) == s.dim());
    for (const auto& x : s.perp(vs))
      for (const auto& v : vs) CHECK(s.h(x, v) == s.field().zero());
  }
}

TEST_CASE("frame isotropy is invariant under recombination within the span") {
  const auto s = symplectic(5, 3);
  const Field& f = s.field();
  const std::vector<Vector> frame{s.e(1), s.e(3), s.e(5)};
  std::vector<Vector> mixed = frame;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    mixed[0][i] = f.add(frame[0][i], f.mul(f.element(2), frame[1][i]));
    mixed[2][i] = f.add(frame[2][i], f.mul(f.element(3), frame[0][i]));
  }
  CHECK(s.is_isotropic_frame(frame) == s.is_isotropic_frame(mixed));
  const std::vector<Vector> bad{s.e(1), s.e(2)};
  std::vector<Vector> bad_mixed = bad;
  for (std::size_t i = 0; i < s.dim(); ++i) bad_mixed[1][i] = f.add(bad[1][i], bad[0][i]);
  CHECK(s.is_isotropic_frame(bad) == s.is_isotropic_frame(bad_mixed));
}

TEST_CASE("vector codec and parsing") {
  const auto s = symplectic(3, 2);
  const VectorCodec& c = s.codec();
  CHECK(c.count() == 81);
  for (std::uint32_t code = 0; code < 81; ++code) CHECK(c.encode(c.decode(code)) == code);
  CHECK(c.encode(s.e(1)) == 27);
  CHECK(c.encode(s.e(4)) == 1);
  const Vector v = parse_vector(s.field(), 4, "e1+2e3");
  CHECK(v == Vector{Scalar{1}, Scalar{0}, Scalar{2}, Scalar{0}});
  CHECK(parse_vector(s.field(), 4, "1,0,2,0") == v);
  CHECK(parse_vector(s.field(), 4, "-e2") == Vector{Scalar{0}, Scalar{2}, Scalar{0}, Scalar{0}});
  CHECK(format_vector(v) == "1,0,2,0");
  CHECK_THROWS_AS(parse_vector(s.field(), 4, "e7"), ConfigError);
}
