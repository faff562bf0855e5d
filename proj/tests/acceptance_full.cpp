// Runs all acceptance criteria (1-10). Usage:
//   acceptance_full [--seed K] [--only N]... [--skip N]...
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>

#include "geokin/checks.hpp"

using namespace geokin::checks;

int main(int argc, char** argv) {
  uint64_t seed = 1;
  std::set<int> only, skip;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only.insert(std::atoi(argv[++i]));
    else if (!std::strcmp(argv[i], "--skip") && i + 1 < argc) skip.insert(std::atoi(argv[++i]));
    else { std::fprintf(stderr, "unknown argument: %s\n", argv[i]); return 2; }
  }
  std::vector<std::pair<int, Criterion (*)(uint64_t)>> table = {
      {1, [](uint64_t s) { return c1_euclidean_exactness(s); }},
      {2, [](uint64_t s) { return c2_homogeneity(s); }},
      {3, [](uint64_t) { return c3_forward_oracle(); }},
      {4, [](uint64_t) { return c4_kinetic_residual(); }},
      {5, [](uint64_t) { return c5_lemma1_contrast(); }},
      {6, [](uint64_t) { return c6_spectral_identities(); }},
      {7, [](uint64_t s) { return c7_characteristic(s); }},
      {8, [](uint64_t) { return c8_jump_scaling(); }},
      {9, [](uint64_t) { return c9_uniqueness(); }},
      {10, [](uint64_t) { return c10_lemma45_limits(); }},
  };
  std::vector<Criterion> sel;
  for (auto& [id, fn] : table)
    if ((only.empty() || only.count(id)) && !skip.count(id)) sel.push_back(fn(seed));
  if (sel.empty()) { std::fprintf(stderr, "no criteria selected\n"); return 2; }
  return print_criteria(sel) ? 0 : 1;
}
