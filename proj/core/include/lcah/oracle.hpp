#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcah/random.hpp"

namespace lcah {

// One verified case. The witness explains a failure or summarizes a pass.
struct OracleCase {
  std::string id;
  bool pass = false;
  nlohmann::json witness;
};
nlohmann::json report_to_json(const std::vector<OracleCase> &cases);

inline constexpr long kBruteOrderLimit = 10000;

// Recomputes kernel, image and cokernel of a map between finite groups by
// enumerating elements and compares them with the reduction-based results.
OracleCase brute_finite_check(const FgAbMorphism &f, std::string id = {});
// Same, for the elca kernel/closure/cokernel of a map between finite groups.
OracleCase brute_finite_check(const ElcaMorphism &f, std::string id = {});

struct ShadowOptions {
  std::size_t samples = 10000;
  double eps = 1e-3;
  // Allowed distance of a character value from an integer.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
};

// Two-sided floating-point audit of a claimed closure of the image of a map
// from a discrete group into a compact group: every sample satisfies the
// annihilator equations of the claim, and every point of an eps-grid of the
// claim has a sample within eps.
OracleCase shadow_density_check(const ElcaMorphism &f, const Subobject &claimed,
                                const SymbolTable &symbols,
                                const ShadowOptions &opt = {}, std::string id = {});

// dual(dual(G)) = G and dual(dual(f)) = f for random maps out of G.
OracleCase double_dual_check(const ElcaGroup &g, std::size_t trials,
                             RandomSource &rng, std::string id = {});

} // namespace lcah
