#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mergehopf/planar.hpp"
#include "mergehopf/syntree.hpp"

namespace mergehopf {

// Deterministic source for sampled property runs; identical seeds give
// identical draws on every platform (no distribution objects involved).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // Uniform-ish integer in [lo, hi]; modulo bias is irrelevant here.
  int range(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

SynTree random_tree(Rng& rng, int n_leaves,
                    const std::vector<std::string>& labels);
Forest random_forest(Rng& rng, int total_leaves,
                     const std::vector<std::string>& labels);
PlanarTree random_planar_tree(Rng& rng, int n_leaves,
                              const std::vector<std::string>& labels);
PlanarForest random_planar_forest(Rng& rng, int total_leaves,
                                  const std::vector<std::string>& labels);

}  // namespace mergehopf
