#include "doctest.h"

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "unistab/error.hpp"
#include "unistab/frames.hpp"

using namespace unistab;

namespace {

PosetSpec symplectic_spec(PosetKind kind, unsigned q, unsigned n) {
  PosetSpec s;
  s.kind = kind;
  s.field = Field::from_order(q, Involution::identity);
  s.eps = s.field.neg(s.field.one());
  s.n = n;
  return s;
}

PosetSpec plain_spec(PosetKind kind, unsigned q, unsigned n, unsigned m = 0) {
  PosetSpec s;
  s.kind = kind;
  s.field = Field::from_order(q, Involution::identity);
  s.eps = s.field.one();
  s.n = n;
  s.m = m;
  return s;
}

}  // namespace

TEST_CASE("vector frames of F3^2") {
  Poset p(plain_spec(PosetKind::u, 3, 2));
  CHECK(p.simplices(0).size() == 8);
  CHECK(p.simplices(1).size() == 8 * 6);
  CHECK(p.simplices(2).size() == 0);
  CHECK(p.simplices(-1).size() == 1);
}

TEST_CASE("isotropic line frames over F3, n=2 match brute force") {
  Poset p(symplectic_spec(PosetKind::iu_proj, 3, 2));
  CHECK(p.simplices(0).size() == 40);
  CHECK(p.simplices(0).size() == oracle::count_symplectic_line_frames(3, 4, 1));
  CHECK(p.simplices(1).size() == 480);
  CHECK(p.simplices(1).size() == oracle::count_symplectic_line_frames(3, 4, 2));
  CHECK(p.simplices(2).size() == 0);
  CHECK(p.simplices(1).is_sorted());
  CHECK(p.estimate(1) == 480);
}

TEST_CASE("size estimates for n=3 over F3") {
  Poset p(symplectic_spec(PosetKind::iu_proj, 3, 3));
  CHECK(p.simplices(0).size() == 364);
  CHECK(p.simplices(1).size() == 43680);
  CHECK(p.estimate(2) == 1572480);
}

TEST_CASE("link of e1 in the isotropic vector poset") {
  const PosetSpec base = symplectic_spec(PosetKind::iu, 3, 2);
  Poset parent(base);
  const PosetSpec link = link_restrict(base, {parent.spec().space()->e(1)});
  Poset p(link);
  // oracle: isotropic v with h(v, e1) = 0 and (v, e1) independent
  std::size_t count = 0;
  for (const auto& v : oracle::all_vectors(3, 4)) {
    if (oracle::is_zero(v)) continue;
    if (oracle::symplectic(v, {1, 0, 0, 0}, 3) != 0) continue;
    if (oracle::rank_mod({v, {1, 0, 0, 0}}, 3) != 2) continue;
    ++count;
  }
  CHECK(count == 24);
  CHECK(p.simplices(0).size() == count);
  for (std::size_t i = 0; i < p.simplices(0).size(); ++i) {
    const std::uint32_t id = p.simplices(0)[i][0];
    const std::vector<std::uint32_t> joint{id, parent.vertex_id(parent.spec().space()->e(1))};
    CHECK(parent.is_simplex(joint));
  }
}

TEST_CASE("link restriction edge cases") {
  const PosetSpec base = plain_spec(PosetKind::u, 3, 2, 3);
  CHECK(link_restrict(base, {}).key() == base.key());
  // w = e3 outside the window: every frame of the window extends it
  const Vector e3{Scalar{0}, Scalar{0}, Scalar{1}};
  Poset linked(link_restrict(base, {e3}));
  Poset small(plain_spec(PosetKind::u, 3, 2));
  CHECK(linked.simplices(0).size() == small.simplices(0).size());
  CHECK(linked.simplices(1).size() == small.simplices(1).size());
  // w not a frame
  const Vector zero(3, Scalar{0});
  CHECK_THROWS_AS(link_restrict(base, {zero}), PreconditionError);
  const Vector e1{Scalar{1}, Scalar{0}, Scalar{0}};
  CHECK_THROWS_AS(link_restrict(base, {e1, e1}), PreconditionError);
  // non-isotropic w in the isotropic poset
  const PosetSpec iso = symplectic_spec(PosetKind::iu, 3, 2);
  const Vector e1v{Scalar{1}, Scalar{0}, Scalar{0}, Scalar{0}};
  const Vector e2v{Scalar{0}, Scalar{1}, Scalar{0}, Scalar{0}};
  CHECK_THROWS_AS(link_restrict(iso, {e1v, e2v}), PreconditionError);
}

TEST_CASE("Tits poset of F2^3") {
  Poset p(plain_spec(PosetKind::tits, 2, 3));
  CHECK(p.simplices(0).size() == 14);
  CHECK(p.simplices(1).size() == 21);
  CHECK(p.simplices(2).size() == 0);
  const auto flags = p.chains(2);
  CHECK(flags.size() == 21);
  for (const auto& c : flags) {
    CHECK(c[0].dim() == 1);
    CHECK(c[1].dim() == 2);
  }
}

TEST_CASE("isotropic subspaces of symplectic F3^4") {
  Poset p(symplectic_spec(PosetKind::iv, 3, 2));
  CHECK(p.simplices(0).size() == 80);
  std::map<std::size_t, std::size_t> by_dim;
  for (auto id : p.vertices()) ++by_dim[p.subspace(id).dim()];
  CHECK(by_dim[1] == 40);
  CHECK(by_dim[2] == 40);
  // each Lagrangian plane contains q+1 = 4 lines
  CHECK(p.simplices(1).size() == 160);
}

TEST_CASE("membership re-check and face closure") {
  for (auto spec : {symplectic_spec(PosetKind::iu_proj, 3, 2), symplectic_spec(PosetKind::iu, 3, 2),
                    plain_spec(PosetKind::u_proj, 3, 3), plain_spec(PosetKind::tits, 3, 3),
                    symplectic_spec(PosetKind::iv, 3, 2)}) {
    Poset p(spec);
    const unsigned top = std::min(p.max_length(), 3u);
    for (unsigned k = 0; k < top; ++k) {
      const auto& list = p.simplices(static_cast<int>(k));
      CHECK(list.is_sorted());
      for (std::size_t i = 0; i < list.size(); ++i) CHECK(p.is_simplex(list[i]));
    }
    CHECK(face_closed(p, top - 1));
  }
}

TEST_CASE("vector and line enumerations are consistent") {
  const Field f = Field::make(3, 1, Involution::identity);
  for (unsigned k = 0; k < 2; ++k) {
    Poset vec(symplectic_spec(PosetKind::iu, 3, 2));
    Poset lines(symplectic_spec(PosetKind::iu_proj, 3, 2));
    std::map<std::vector<std::uint32_t>, std::size_t> fiber;
    const auto& vs = vec.simplices(static_cast<int>(k));
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::vector<std::uint32_t> key;
      for (auto id : vs[i]) key.push_back(lines.vertex_id(vec.vector_of(id)));
      ++fiber[key];
    }
    CHECK(fiber.size() == lines.simplices(static_cast<int>(k)).size());
    std::size_t expect = 1;
    for (unsigned i = 0; i <= k; ++i) expect *= f.order() - 1;
    for (const auto& [key, count] : fiber) CHECK(count == expect);
  }
}

TEST_CASE("budget refusal carries the estimate") {
  Poset p(symplectic_spec(PosetKind::iu_proj, 3, 3), 100000);
  CHECK(p.simplices(1).size() == 43680);
  try {
    p.simplices(2);
    FAIL("expected refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(e.estimate() == 1572480);
    CHECK(e.budget() == 100000);
  }
}

TEST_CASE("threaded enumeration matches serial") {
  Poset a(symplectic_spec(PosetKind::iu_proj, 5, 2), kDefaultSimplexBudget, 1);
  Poset b(symplectic_spec(PosetKind::iu_proj, 5, 2), kDefaultSimplexBudget, 3);
  CHECK(a.simplices(1).data() == b.simplices(1).data());
  CHECK(a.simplices(1).size() == 4680);
}

TEST_CASE("F2 and characteristic 2 handling") {
  CHECK_NOTHROW(Poset(plain_spec(PosetKind::u, 2, 3)));
  CHECK_THROWS_AS(Poset(symplectic_spec(PosetKind::iu_proj, 4, 2)), UnsupportedConfiguration);
  CHECK_THROWS_AS(poset_kind_from_string("xyz"), ConfigError);
}
