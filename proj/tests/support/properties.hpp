#pragma once

#include <cstdint>
#include <string>

namespace props {

struct Outcome {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

Outcome normalize_idempotence(std::uint64_t seed, int n);
Outcome add_cancel(std::uint64_t seed, int n);
Outcome leibniz(std::uint64_t seed, int n);
Outcome collect_roundtrip(std::uint64_t seed, int n);
Outcome total_derivatives_commute(std::uint64_t seed, int n);
Outcome total_derivative_on_solution(std::uint64_t seed, int n);
Outcome prolong_linearity(std::uint64_t seed, int n);
Outcome bracket_compatibility(std::uint64_t seed, int n);
Outcome characteristic_decomposition(std::uint64_t seed, int n);
Outcome prolong_next_order(std::uint64_t seed, int n);
Outcome prolong_matches_recursive(std::uint64_t seed, int n);
Outcome euler_kills_divergence(std::uint64_t seed, int n);
Outcome parser_roundtrip(std::uint64_t seed, int n);
Outcome parser_fuzz(std::uint64_t seed, int n);
/// Pairwise brackets of the six finite heat generators stay in their span.
Outcome heat_closure();

}  // namespace props
