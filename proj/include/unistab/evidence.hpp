#pragma once

#include <string>

namespace unistab {

/// How a verdict was established, strongest first.
enum class Evidence {
  exact_integer,  // Smith normal form over Z
  rational_rank,  // exact rank over Q
  modular_rank,   // ranks over sampled primes only
  exhaustive,     // complete search
  sampled,        // random trials
};

inline std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::exact_integer: return "exact-Z";
    case Evidence::rational_rank: return "Q-rank";
    case Evidence::modular_rank: return "modular-rank";
    case Evidence::exhaustive: return "exhaustive";
    case Evidence::sampled: return "sampled";
  }
  return "unknown";
}

}  // namespace unistab
