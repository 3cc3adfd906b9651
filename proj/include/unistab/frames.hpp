#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unistab/hermitian.hpp"

namespace unistab {

enum class PosetKind {
  u,        // unimodular frames of vectors in a coordinate window of F^m
  iu,       // isotropic unimodular frames of vectors in the hyperbolic space
  u_proj,   // frames of lines in a coordinate window of F^m
  iu_proj,  // isotropic frames of lines
  iv,       // order complex of nonzero isotropic subspaces
  tits,     // order complex of proper nonzero subspaces of F^n
};

std::string to_string(PosetKind k);
PosetKind poset_kind_from_string(const std::string& s);
bool is_isotropic_kind(PosetKind k);
bool is_projective_kind(PosetKind k);
bool is_chain_kind(PosetKind k);

inline constexpr std::uint64_t kDefaultSimplexBudget = 5'000'000;

/// Parameters of one poset.
///
/// For u and u_proj, vertices are (lines of) vectors of F^m supported on the
/// first n coordinates. For the isotropic kinds and iv the ambient space is
/// the hyperbolic space of rank n. For tits the ambient space is F^n.
struct PosetSpec {
  PosetKind kind = PosetKind::iu_proj;
  Field field = Field::make(3, 1, Involution::identity);
  Scalar eps{};
  unsigned n = 2;
  unsigned m = 0;  // 0 means m = n (u kinds only)
  /// Link frame w: simplices x must form a frame (x, w) of the parent poset.
  std::vector<Vector> link;

  std::size_t ambient_dim() const;
  std::optional<HyperbolicSpace> space() const;
  /// Validates parameter consistency; throws ConfigError/UnsupportedConfiguration.
  void validate() const;
  /// Stable textual key for caches and reports.
  std::string key() const;
};

/// Restricts to the link of w: simplices x with (x, w) in the parent poset.
/// Throws PreconditionError if w is not itself a simplex of the parent.
PosetSpec link_restrict(const PosetSpec& spec, std::vector<Vector> w);

/// Flat, lexicographically sorted list of simplices with a fixed number of
/// vertices. Vertex ids are vector codes for frame kinds and subspace
/// indices for chain kinds.
class SimplexList {
 public:
  explicit SimplexList(unsigned length = 0) : length_(length) {}

  unsigned length() const { return length_; }
  std::size_t size() const { return length_ == 0 ? (empty_simplex_ ? 1 : 0) : data_.size() / length_; }
  std::span<const std::uint32_t> operator[](std::size_t i) const {
    return {data_.data() + i * length_, length_};
  }
  /// Index of s, assuming canonical (sorted) order.
  std::optional<std::size_t> find(std::span<const std::uint32_t> s) const;

  void push_back(std::span<const std::uint32_t> s);
  void append(const SimplexList& other);
  void set_empty_simplex() { empty_simplex_ = true; }
  bool is_sorted() const;
  const std::vector<std::uint32_t>& data() const { return data_; }
  std::vector<std::uint32_t>& mutable_data() { return data_; }

 private:
  unsigned length_;
  bool empty_simplex_ = false;
  std::vector<std::uint32_t> data_;
};

/// A subspace stored by its reduced row echelon basis (as vector codes).
struct Subspace {
  std::vector<std::uint32_t> rows;
  std::size_t dim() const { return rows.size(); }
  friend auto operator<=>(const Subspace& a, const Subspace& b) {
    if (a.rows.size() != b.rows.size()) return a.rows.size() <=> b.rows.size();
    return a.rows <=> b.rows;
  }
  friend bool operator==(const Subspace&, const Subspace&) = default;
};

using SubspaceChain = std::vector<Subspace>;

/// Simplicial model of one poset with cached, budgeted enumeration.
///
/// A k-simplex is a (k+1)-frame, resp. a chain of k+1 subspaces. Lists come
/// out in canonical lexicographic order on vertex ids, and for frame kinds
/// vertex ids are vector codes, so the order is lexicographic on normalized
/// coordinate tuples.
class Poset {
 public:
  explicit Poset(PosetSpec spec, std::uint64_t budget = kDefaultSimplexBudget, unsigned threads = 1);

  const PosetSpec& spec() const { return spec_; }
  const Field& field() const { return spec_.field; }
  std::size_t ambient_dim() const { return codec_.dim(); }
  const VectorCodec& codec() const { return codec_; }
  std::uint64_t budget() const { return budget_; }

  /// Vertex ids, sorted.
  const std::vector<std::uint32_t>& vertices() const { return vertices_; }
  /// Largest possible simplex length.
  unsigned max_length() const;

  /// Vector of a frame-kind vertex id.
  Vector vector_of(std::uint32_t id) const { return codec_.decode(id); }
  /// Subspace of a chain-kind vertex id.
  const Subspace& subspace(std::uint32_t id) const { return subspaces_.at(id); }
  std::string vertex_label(std::uint32_t id) const;

  /// Estimated number of k-simplices (exact for k = 0 and for posets on
  /// which the extension count is constant, e.g. under a transitive group).
  std::uint64_t estimate(unsigned k);

  /// k-simplices; k = -1 gives the single empty simplex. Throws
  /// BudgetExceeded with the estimate when over budget.
  const SimplexList& simplices(int k);

  /// Independent membership test (rank, isotropy, link, inclusion checks).
  bool is_simplex(std::span<const std::uint32_t> s) const;

  /// Vertex id of a vector / line (normalized for projective kinds).
  std::uint32_t vertex_id(const Vector& v) const;

  /// Chains of the given length as explicit subspace chains (chain kinds).
  std::vector<SubspaceChain> chains(unsigned length);

 private:
  void build_frame_vertices();
  void build_subspaces();
  bool vertex_ok(const Vector& v) const;
  SimplexList enumerate(unsigned length) const;
  SimplexList enumerate_frames(unsigned length) const;
  SimplexList enumerate_chains(unsigned length) const;
  std::uint64_t extension_count(std::span<const std::uint32_t> s) const;

  PosetSpec spec_;
  std::uint64_t budget_;
  unsigned threads_;
  VectorCodec codec_;
  std::optional<HyperbolicSpace> space_;
  std::vector<std::uint32_t> vertices_;
  std::vector<Vector> vertex_vectors_;  // frame kinds, parallel to vertices_
  std::vector<Subspace> subspaces_;     // chain kinds
  std::vector<std::vector<std::uint32_t>> up_;  // chain kinds: strict supersets
  std::map<int, SimplexList> cache_;
};

/// Free-function form of the enumeration.
SimplexList enumerate_simplices(const PosetSpec& spec, unsigned k, std::uint64_t budget = kDefaultSimplexBudget);
std::vector<SubspaceChain> enumerate_chains(const PosetSpec& spec, unsigned length,
                                            std::uint64_t budget = kDefaultSimplexBudget);

/// Every face of every k-simplex is a (k-1)-simplex, for 1 <= k <= max_degree.
bool face_closed(Poset& poset, unsigned max_degree);

/// Gaussian binomial [N, d]_q, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(unsigned N, unsigned d, unsigned q);

}  // namespace unistab
