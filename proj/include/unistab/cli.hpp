#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "unistab/frames.hpp"
#include "unistab/hermitian.hpp"

namespace unistab {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a command may read. Commands ignore fields they do not use;
/// validate() checks only what the named command needs.
struct RunConfig {
  // field and form
  unsigned q = 3;
  std::string involution = "identity";
  std::string eps = "-1";  // "-1", "1", or the index of a norm-one unit
  unsigned n = 2;
  unsigned m = 0;
  // posets and homology
  std::string kind = "iu-proj";
  std::string link;  // vectors separated by ';'
  std::optional<int> bound;
  std::optional<int> through;  // extra degrees reported without affecting the verdict
  std::string coeff = "int";
  std::optional<int> degree;   // dump
  // searches and groups
  std::vector<std::string> frames;  // each "v1;v2;..."
  unsigned random_inputs = 0;
  unsigned frame_size = 1;
  std::uint64_t trials = 2000;
  std::uint64_t exhaustive_limit = 10'000'000;
  unsigned p = 2;
  std::uint64_t samples = 200;
  std::uint64_t enumeration_budget = 1'000'000;
  // spectral extras
  std::string weights;
  std::optional<std::uint64_t> basis_seed;
  unsigned group_prime = 3;
  unsigned group_rank = 2;
  unsigned max_degree = 3;
  unsigned max_n = 2;
  // run control
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultSimplexBudget;
  unsigned threads = 1;
  std::string cache_dir;
  bool no_cache = false;

  Field field() const;
  Scalar eps_value(const Field& f) const;
  HyperbolicSpace space() const;
  PosetSpec poset_spec() const;
  /// Resolved cache directory: cache_dir, else $UNISTAB_CACHE_DIR, else
  /// $HOME/.cache/unistab, else ./.unistab-cache.
  std::filesystem::path cache_path() const;
  nlohmann::json to_json(const std::string& command) const;
};

/// Outcome of one command. The result section is deterministic given
/// (config, seed, version); timings and cache statistics live outside it.
struct Report {
  std::string command;
  nlohmann::json config;
  nlohmann::json result = nlohmann::json::object();
  std::string verdict;   // "PASS", "FAIL" or "REFUSED"
  std::string evidence;  // exact-Z, Q-rank, modular-rank, exhaustive, sampled, or none
  std::string message;   // refusal reason or short summary
  double seconds = 0;
  nlohmann::json cache = nlohmann::json::object();
  std::string version = kVersion;

  int exit_code() const { return verdict == "PASS" ? 0 : verdict == "FAIL" ? 1 : 2; }
  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  /// Plain-text summary, one "key: value" line per check.
  std::string summary() const;
  friend bool operator==(const Report&, const Report&) = default;
};

/// Throws ConfigError describing the first missing or malformed field.
void validate_report_json(const nlohmann::json& j);

/// Text cache of simplex lists, one file per (version, poset key, degree).
class SimplexCache {
 public:
  /// A disabled cache never reads or writes.
  SimplexCache(std::filesystem::path dir, bool enabled);
  std::optional<SimplexList> load(const std::string& key) const;
  /// Written to a temporary file and renamed into place.
  void store(const std::string& key, const SimplexList& list) const;
  std::filesystem::path file_for(const std::string& key) const;
  bool enabled() const { return enabled_; }

 private:
  std::filesystem::path dir_;
  bool enabled_;
};

Report cmd_acyclicity(const RunConfig& c);
Report cmd_genpos(const RunConfig& c);
Report cmd_orbit(const RunConfig& c);
Report cmd_stab(const RunConfig& c);
/// sub is one of bottom-row, theta, alpha, coinvariants, coprime.
Report cmd_spectral(const std::string& sub, const RunConfig& c);
Report cmd_h1(const RunConfig& c);
/// Sparse boundary matrix of the chosen degree in the dump format.
Report cmd_dump(const RunConfig& c, std::ostream& os);

/// Runs fn and converts refusals (configuration, precondition, budget and
/// unsupported-configuration errors) into a REFUSED report.
Report run_guarded(const std::string& command, const RunConfig& c, const std::function<Report()>& fn);

/// Writes text to path through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& text);

}  // namespace unistab
