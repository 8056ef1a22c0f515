#include "mergehopf/random.hpp"

namespace mergehopf {

SynTree random_tree(Rng& rng, int n_leaves,
                    const std::vector<std::string>& labels) {
  if (n_leaves <= 1) {
    int i = rng.range(0, static_cast<int>(labels.size()) - 1);
    return SynTree::leaf(labels[static_cast<std::size_t>(i)]);
  }
  int j = rng.range(1, n_leaves - 1);
  SynTree a = random_tree(rng, j, labels);
  SynTree b = random_tree(rng, n_leaves - j, labels);
  return merge(a, b);
}

Forest random_forest(Rng& rng, int total_leaves,
                     const std::vector<std::string>& labels) {
  std::vector<SynTree> comps;
  int remaining = total_leaves;
  while (remaining > 0) {
    int size = rng.range(1, remaining);
    comps.push_back(random_tree(rng, size, labels));
    remaining -= size;
  }
  return Forest(std::move(comps));
}

PlanarTree random_planar_tree(Rng& rng, int n_leaves,
                              const std::vector<std::string>& labels) {
  if (n_leaves <= 1) {
    int i = rng.range(0, static_cast<int>(labels.size()) - 1);
    return PlanarTree::leaf(labels[static_cast<std::size_t>(i)]);
  }
  int j = rng.range(1, n_leaves - 1);
  PlanarTree a = random_planar_tree(rng, j, labels);
  PlanarTree b = random_planar_tree(rng, n_leaves - j, labels);
  return PlanarTree::node(a, b);
}

PlanarForest random_planar_forest(Rng& rng, int total_leaves,
                                  const std::vector<std::string>& labels) {
  PlanarForest out;
  int remaining = total_leaves;
  while (remaining > 0) {
    int size = rng.range(1, remaining);
    out.push_back(random_planar_tree(rng, size, labels));
    remaining -= size;
  }
  return out;
}

}  // namespace mergehopf
