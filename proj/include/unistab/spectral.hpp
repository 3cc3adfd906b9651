#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "unistab/evidence.hpp"
#include "unistab/frames.hpp"
#include "unistab/hermitian.hpp"
#include "unistab/sparse.hpp"

namespace unistab {

/// Small dense matrix over F_prime, row-major.
using ModMatrix = std::vector<std::vector<std::uint64_t>>;

/// Bottom row (q = 0) of the E^1 page for the action of G_n on the complex
/// X_n of isotropic line frames, with coefficients in F_prime:
///
///   E_0 <- E_1 <- ... <- E_n <- E_{n+1} = H_0(G_n, H_{n-1}(X_n))
///
/// where E_p (1 <= p <= n) has one basis vector per G_n-orbit of p-frames and
/// E_0 = k. H_{n-1} is reduced, so at n = 1 it is the kernel of the
/// augmentation.
struct BottomRow {
  unsigned n = 0;
  std::uint64_t prime = 0;
  std::vector<std::size_t> dims;             // dims[p] = dim E_p, p = 0..n+1
  std::vector<std::uint64_t> frame_counts;   // number of p-frames, p = 0..n (1 at p = 0)
  std::vector<std::uint64_t> orbit_sizes;    // |G_n sigma_p| from the group side, p = 1..n
  std::vector<ModMatrix> differentials;      // differentials[p] = d_p : E_p -> E_{p-1}, p = 1..n+1
  std::size_t cycle_dim = 0;                 // dim Z_{n-1}
  std::size_t relation_rank = 0;             // dim span{g z - z}
  std::vector<ModVec> top_basis;             // cycles whose classes span E_{n+1}
  /// span{g z - z : g a generator, z a cycle}, in coordinates of (n-1)-simplices.
  std::shared_ptr<const ModularReducer> relations;
  std::shared_ptr<const SimplexList> top_simplices;  // the (n-1)-simplices
  std::vector<std::uint32_t> top_orbit;              // orbit index of each (n-1)-simplex
  Evidence evidence = Evidence::exhaustive;

  /// Rank-one terms at 0 <= p <= n and both sides of the transitivity check agree.
  bool transitive() const;
};

/// Throws BudgetExceeded if an enumeration is over budget and
/// UnsupportedConfiguration for prime == 0 (rational coefficients).
BottomRow build_bottom_row(const HyperbolicSpace& space, std::uint64_t prime,
                           std::uint64_t budget = 5'000'000);

std::size_t rank_mod(ModMatrix m, std::uint64_t p);

struct RowVerdict {
  std::vector<std::size_t> homology;  // dims of row homology at p = 0..n
  bool pass = false;
  std::optional<unsigned> failing_position;
};

/// PASS iff the row homology vanishes at 0..n.
RowVerdict check_e2_vanishing(const BottomRow& row);

/// theta = (<e1>,<e3>) - (<e1>,<e1+e3>) + (<e3>,<e1+e3>) in C_1(X_2).
struct ThetaReport {
  bool frames_valid = false;       // all three terms are simplices
  bool boundary_zero = false;
  bool class_nonzero = false;      // in H_1(X_2; k)
  bool coinvariant_nonzero = false;
  std::uint64_t d1_value = 0;      // d^1_{3,0}(theta mod G_2)
};
ThetaReport theta_check(const HyperbolicSpace& space, std::uint64_t prime);
ThetaReport theta_check(const BottomRow& row, const HyperbolicSpace& space);

/// Chain map from the complex of X_{n-2} (on planes 3..n), shifted by two,
/// into that of X_n: sigma -> (e1,e3,sigma) - (e1,e1+e3,sigma) + (e3,e1+e3,sigma).
struct AlphaReport {
  unsigned n = 0;
  std::uint64_t samples = 0;
  std::uint64_t terms_valid = 0;   // samples whose three terms are simplices of X_n
  std::uint64_t commuting = 0;     // samples with d alpha = alpha d
  bool empty_simplex_ok = false;   // alpha of the empty simplex is the cycle theta
  bool pass() const { return empty_simplex_ok && terms_valid == samples && commuting == samples; }
};
/// Requires n >= 2.
AlphaReport alpha_chain_map_check(const HyperbolicSpace& space, std::uint64_t samples, std::uint64_t seed);

/// dim of M / span{A m - m : A in actions} for matrices over F_prime.
std::size_t coinvariants(const std::vector<ModMatrix>& actions, std::uint64_t prime);

/// F_q^* acting diagonally on k^d = F_prime^d by chi^{w_i}, where chi sends
/// the primitive element of F_q to a generator of the largest subgroup of
/// F_prime^* of order dividing q-1. With basis_seed the action is written in
/// a random basis first. This is an exploration on finite fields only.
std::size_t weight_coinvariants(unsigned q, const std::vector<unsigned>& weights, std::uint64_t prime,
                                std::optional<std::uint64_t> basis_seed = std::nullopt);

/// dim H_i((Z/p)^r; F_ell) for i = 0..max_degree, from the periodic
/// resolution of Z/p and the Kunneth formula. Throws PreconditionError for
/// ell == p (outside the coprime hypothesis).
std::vector<std::size_t> coprime_module_homology(std::uint64_t p, unsigned r, std::uint64_t ell,
                                                 unsigned max_degree);

/// Same dimensions without the coprime restriction; used as the oracle side
/// and for the refused case in reports.
std::vector<std::size_t> cyclic_power_homology(std::uint64_t p, unsigned r, std::uint64_t ell, unsigned max_degree);

/// H_1(G_n; F_ell) for the family of hyperbolic spaces over one field and
/// eps, and the maps induced by A -> diag(I_2, A).
struct StabilityRow {
  unsigned l = 0;              // homology degree, 0 or 1
  unsigned n = 0;              // map H_l(G_n) -> H_l(G_{n+1})
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t image_dim = 0;
  bool surjective() const { return image_dim == target_dim; }
  bool injective() const { return image_dim == source_dim; }
  bool surjectivity_claimed() const { return n >= l; }
  bool injectivity_claimed() const { return n >= l + 1; }
  bool consistent() const {
    return (!surjectivity_claimed() || surjective()) && (!injectivity_claimed() || injective());
  }
};
struct StabilityReport {
  std::uint64_t ell = 0;
  std::vector<std::size_t> h1_dims;                // index n - 1 for n = 1..max_n
  std::vector<std::vector<std::uint64_t>> abelianizations;
  std::vector<StabilityRow> rows;
  bool pass() const;
};
/// Requires char(F) != ell. Computes n = 1..max_n.
StabilityReport h1_stability_check(const HyperbolicSpace& family, unsigned max_n, std::uint64_t ell);

nlohmann::json row_to_json(const BottomRow& row, const RowVerdict& v);
nlohmann::json theta_to_json(const ThetaReport& t);
nlohmann::json alpha_to_json(const AlphaReport& a);
nlohmann::json stability_to_json(const StabilityReport& s);

}  // namespace unistab
