#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace geokin::checks {

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool expected_fail = false;  // known-unattainable threshold, reported red
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Criteria 1-7 depend only on the core library (metric/geodesic/ray/spectral).
Criterion c1_euclidean_exactness(uint64_t seed);
Criterion c2_homogeneity(uint64_t seed);
Criterion c3_forward_oracle();
Criterion c4_kinetic_residual();
Criterion c5_lemma1_contrast();
Criterion c6_spectral_identities();
Criterion c7_characteristic(uint64_t seed);
// Lemma 4/5 limit probes also need only the core library.
Criterion c10_lemma45_limits();

std::vector<Criterion> core_criteria(uint64_t seed);

// Criteria 8-9 exercise the chart/recovery layer.
Criterion c8_jump_scaling();
Criterion c9_uniqueness();

std::vector<Criterion> full_criteria(uint64_t seed);

// one pass/fail line per criterion (plus detail lines for failures);
// returns strict overall pass
bool print_criteria(const std::vector<Criterion>& cs, bool verbose = true);

}  // namespace geokin::checks
