#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "json.hpp"
#include "unistab/evidence.hpp"
#include "unistab/hermitian.hpp"

namespace unistab {

using Frame = std::vector<Vector>;

/// Witness that an isotropic n-frame T = (w_1..w_n) is in general position
/// with isotropic frames T_1..T_l: every pairing matrix (h(w_a, v_b)) has a
/// left inverse, and W meets each V_i^perp in dimension n - k_i.
struct GeneralPositionCertificate {
  HyperbolicSpace space;
  std::vector<Frame> frames;
  Frame candidate;
  std::vector<Matrix> pairings;       // n x k_i
  std::vector<Matrix> left_inverses;  // k_i x n
  std::vector<std::size_t> intersection_dims;
  Evidence evidence = Evidence::sampled;  // how the candidate was found
};

struct SearchOptions {
  std::uint64_t trials = 2000;
  /// Exhaustive search runs when the number of n-subspaces is at most this.
  std::uint64_t exhaustive_limit = 10'000'000;
  unsigned threads = 1;
};

/// Result of a search. Without a certificate, evidence says whether every
/// Lagrangian was examined (exhaustive) or only random ones (sampled). Over a
/// finite field a miss does not contradict the infinite-field existence result.
struct SearchResult {
  std::optional<GeneralPositionCertificate> certificate;
  Evidence evidence = Evidence::sampled;
  std::uint64_t trials = 0;
  std::uint64_t candidates_examined = 0;
  bool found() const { return certificate.has_value(); }
};

/// Requires n >= 2 and isotropic independent input frames of size <= n-1.
SearchResult find_general_position(const HyperbolicSpace& space, const std::vector<Frame>& frames,
                                   std::uint64_t seed, const SearchOptions& options = {});

/// Builds and fills a certificate for a given candidate; nullopt if the
/// candidate is not an isotropic n-frame in general position with all frames.
std::optional<GeneralPositionCertificate> certify(const HyperbolicSpace& space, const std::vector<Frame>& frames,
                                                  const Frame& candidate, Evidence evidence);

/// Re-derives every invariant from scratch. Never throws.
bool verify_certificate(const GeneralPositionCertificate& cert);

/// A vector v in span(e_1..e_n) of F^m with (v, v_1..v_k) unimodular.
/// Requires k+1 <= n <= m and an independent frame.
Vector extend_frame(const Field& f, std::size_t m, const Frame& frame, std::size_t n);

/// Random isotropic n-frame, built one vector at a time inside the perp.
Frame random_isotropic_frame(const HyperbolicSpace& space, std::mt19937_64& rng);

void to_json(nlohmann::json& j, const HyperbolicSpace& s);
HyperbolicSpace space_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const GeneralPositionCertificate& c);
GeneralPositionCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json search_to_json(const SearchResult& r);

}  // namespace unistab
