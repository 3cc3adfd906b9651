#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "unistab/hermitian.hpp"

namespace unistab {

/// Square matrix of size at most 8 over a field of order at most 256,
/// stored densely by scalar index. Acts on column vectors.
class UnitaryMatrix {
 public:
  static constexpr std::size_t kMaxDim = 8;

  UnitaryMatrix() = default;
  explicit UnitaryMatrix(std::size_t dim);
  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Scalar at(std::size_t r, std::size_t c) const { return Scalar{a_[r * kMaxDim + c]}; }
  void set(std::size_t r, std::size_t c, Scalar v) { a_[r * kMaxDim + c] = v.value; }
  Vector column(std::size_t c) const;
  bool is_identity() const;

  friend bool operator==(const UnitaryMatrix&, const UnitaryMatrix&) = default;
  friend auto operator<=>(const UnitaryMatrix&, const UnitaryMatrix&) = default;
  std::size_t hash() const;

 private:
  std::uint8_t dim_ = 0;
  std::array<std::uint8_t, kMaxDim * kMaxDim> a_{};
};

struct UnitaryMatrixHash {
  std::size_t operator()(const UnitaryMatrix& m) const { return m.hash(); }
};

UnitaryMatrix multiply(const Field& f, const UnitaryMatrix& a, const UnitaryMatrix& b);
/// Throws DomainError for singular input.
UnitaryMatrix inverse(const Field& f, const UnitaryMatrix& a);
Vector apply(const Field& f, const UnitaryMatrix& m, const Vector& v);
UnitaryMatrix commutator(const Field& f, const UnitaryMatrix& a, const UnitaryMatrix& b);  // a b a^-1 b^-1
UnitaryMatrix from_rows(const Field& f, const std::vector<std::vector<unsigned>>& rows);

/// Invertible and h(M e_i, M e_j) = h(e_i, e_j) for all basis pairs.
bool is_member(const HyperbolicSpace& space, const UnitaryMatrix& m);

/// A generator together with its label.
struct Generator {
  std::string kind;  // "torus", "weyl", "long-root", "short-root", "gl-root"
  std::vector<unsigned> planes;
  Scalar parameter;
  UnitaryMatrix matrix;
};

/// Elementary unitary transformations in the hyperbolic basis plus the
/// torus and plane swaps. Long roots I + r E_{2i-1,2i} use the parameters r
/// with r + eps conj(r) = 0; for eps = +-1 these are exactly Lambda.
std::vector<Generator> make_generators(const HyperbolicSpace& space);
std::vector<UnitaryMatrix> matrices(const std::vector<Generator>& gens);

/// Base and strong generating set for a matrix group acting on F^dim, with
/// base e_1..e_dim. Built incrementally by Schreier-Sims; every Schreier
/// generator is sifted, so the chain is exact.
class StabilizerChain {
 public:
  StabilizerChain(Field f, std::size_t dim);
  StabilizerChain(Field f, std::size_t dim, const std::vector<UnitaryMatrix>& gens);

  const Field& field() const { return f_; }
  std::size_t dim() const { return dim_; }
  /// Returns false if g was already a member.
  bool add_generator(const UnitaryMatrix& g);
  bool contains(const UnitaryMatrix& g) const;
  std::uint64_t order() const;
  const std::vector<UnitaryMatrix>& generators() const { return gens_; }
  /// Uniform random element (product of random coset representatives).
  UnitaryMatrix random_element(std::mt19937_64& rng) const;
  /// Calls f on every element; throws BudgetExceeded above budget.
  void for_each_element(const std::function<void(const UnitaryMatrix&)>& f, std::uint64_t budget) const;

 private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<UnitaryMatrix> gens, gens_inv;
    std::unordered_map<std::uint32_t, std::uint32_t> index;  // orbit point -> slot
    std::vector<std::uint32_t> points;
    std::vector<UnitaryMatrix> trans, trans_inv;  // trans[k] e_base = points[k]
  };

  // Residue of g after sifting from level `from`, and the level it stopped at.
  std::pair<UnitaryMatrix, std::size_t> sift(UnitaryMatrix g, std::size_t from) const;
  void add_at(std::size_t level, const UnitaryMatrix& g);
  std::uint32_t image(const UnitaryMatrix& m, std::uint32_t code) const;

  Field f_;
  std::size_t dim_;
  VectorCodec codec_;
  std::vector<Level> levels_;
  std::vector<UnitaryMatrix> gens_;
};

std::uint64_t group_order(const Field& f, std::size_t dim, const std::vector<UnitaryMatrix>& gens);

/// Frames of lines as tuples of normalized line codes.
using LineFrame = std::vector<std::uint32_t>;

LineFrame line_frame(const HyperbolicSpace& space, const std::vector<Vector>& vectors);
LineFrame act(const HyperbolicSpace& space, const UnitaryMatrix& g, const LineFrame& frame);

/// sigma_p = (<e_1>, <e_3>, ..., <e_{2p-1}>).
LineFrame sigma(const HyperbolicSpace& space, unsigned p);

/// Orbit of a line frame under the generated group, sorted. Throws
/// BudgetExceeded past budget points.
std::vector<LineFrame> orbit_of_frame(const HyperbolicSpace& space, const std::vector<UnitaryMatrix>& gens,
                                      const LineFrame& frame, std::uint64_t budget = 5'000'000);

/// Orbit together with coset representatives u_y (u_y frame = y).
struct FrameOrbit {
  std::vector<LineFrame> frames;
  std::vector<UnitaryMatrix> reps;
};
FrameOrbit orbit_with_transversal(const HyperbolicSpace& space, const std::vector<UnitaryMatrix>& gens,
                                  const LineFrame& frame, std::uint64_t budget = 5'000'000);

/// Stabilizer chain of a line frame inside the group of `group`, generated
/// from uniformly random stabilizer elements until the order reaches
/// |G| / |orbit|.
StabilizerChain frame_stabilizer(const HyperbolicSpace& space, const StabilizerChain& group, const FrameOrbit& orbit,
                                 std::uint64_t seed);

/// Block predicates of the stabilizer display for sigma_p.
bool matches_stabilizer_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m);  // T
bool matches_levi_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m);        // L
bool matches_unipotent_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m);   // N
bool matches_derived_pattern(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m);     // N'
/// All matrices of the N' display: Lambda entries on (2i-1, 2i), free t on
/// (2i-1, 2j) for i < j <= p, and (2j-1, 2i) = -eps^-1 conj(t).
std::vector<UnitaryMatrix> derived_pattern_instances(const HyperbolicSpace& space, unsigned p);

/// Normal closure in <gens> of the commutators of gens.
StabilizerChain derived_subgroup(const Field& f, std::size_t dim, const std::vector<UnitaryMatrix>& gens);
/// <D, s^m : s in gens>, the preimage of m(G/D) when D contains [G, G].
StabilizerChain power_subgroup(const StabilizerChain& derived, const std::vector<UnitaryMatrix>& gens,
                               std::uint64_t m);

struct StabilizerStructure {
  unsigned n = 0, p = 0;
  std::uint64_t group_order = 0;
  std::uint64_t orbit_size = 0;
  std::uint64_t frames_enumerated = 0;  // projective isotropic p-frames, 0 if not enumerated
  std::uint64_t stabilizer_order = 0;
  std::uint64_t unit_count = 0;         // |R*|
  std::uint64_t levi_block_order = 0;   // |G_{n-p}|
  std::uint64_t unipotent_order = 0;    // |N|
  std::uint64_t levi_order = 0;         // |L|
  std::uint64_t derived_order = 0;      // |[N, N]|
  std::uint64_t derived_pattern_count = 0;
  std::uint64_t samples = 0;
  std::uint64_t samples_matching = 0;
  bool derived_matches_pattern = false;   // every element of [N,N] has the N' shape
  bool pattern_in_derived = false;        // every N' pattern instance lies in [N,N]
  bool factorization_holds = false;       // |Stab| = |R*|^p |G_{n-p}| |N|
  bool unipotent_enumerated = false;      // N, L and [N,N] were computed
  std::vector<UnitaryMatrix> witnesses;   // a few stabilizer samples
};

/// Requires eps = +-1 (the displays are stated for that case) and
/// |Stab| <= enumeration_budget for the N and [N,N] parts.
StabilizerStructure stabilizer_report(const HyperbolicSpace& space, unsigned p, std::uint64_t seed,
                                      std::uint64_t samples = 200, std::uint64_t enumeration_budget = 1'000'000);

/// Permutation of hyperbolic planes: plane h -> h for h < i, plane i -> p,
/// plane l -> l-1 for i < l <= p, others fixed. Then d_i(sigma_p) equals
/// g^-1 sigma_{p-1}.
UnitaryMatrix g_perm(const HyperbolicSpace& space, unsigned i, unsigned p);

/// Element of R*^p x G_{n-p}.
struct ProductElement {
  std::vector<Scalar> units;
  UnitaryMatrix block;  // acts on planes p+1..n
};

/// diag(a_1, conj(a_1)^-1, ..., a_p, conj(a_p)^-1, A).
UnitaryMatrix embed(const HyperbolicSpace& space, const ProductElement& x);
/// Inverse of embed; nullopt outside the image.
std::optional<ProductElement> restrict_product(const HyperbolicSpace& space, unsigned p, const UnitaryMatrix& m);
/// alpha_{i,p}(a, A) = (a without a_i, diag(a_i, conj(a_i)^-1, A)).
ProductElement alpha_map(const HyperbolicSpace& space, unsigned i, unsigned p, const ProductElement& x);
/// A -> diag(I_2, A) from G_{n-1} into G_n.
UnitaryMatrix include_block(const Field& f, const UnitaryMatrix& a);

/// Invariant factors of G / [G, G], each dividing the next.
std::vector<std::uint64_t> abelianization(const Field& f, std::size_t dim, const std::vector<UnitaryMatrix>& gens);

/// Classical orders used as oracles: Sp_{2n}(q), O^+_{2n}(q), U_{2n}(q0) with q = q0^2.
std::uint64_t classical_order(const HyperbolicSpace& space);

nlohmann::json matrix_to_json(const UnitaryMatrix& m);
UnitaryMatrix matrix_from_json(const Field& f, const nlohmann::json& j);
nlohmann::json stabilizer_to_json(const StabilizerStructure& s);

}  // namespace unistab
