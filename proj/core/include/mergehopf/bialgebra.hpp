#pragma once

#include <functional>
#include <vector>

#include "mergehopf/lincomb.hpp"
#include "mergehopf/syntree.hpp"

namespace mergehopf {

// The coproduct and its relatives on the workspace bialgebra.
//
// A coproduct term of a forest F extracts a multiset of pairwise-disjoint
// subtrees (an antichain of vertices per component, possibly empty, possibly
// a whole component at its root) and pairs the extracted subforest with the
// sequential quotient of F by the extraction.

// One admissible extraction, with provenance.
struct Extraction {
  std::vector<SiteRef> sites;  // pairwise-disjoint, sorted
  Forest extracted;
  Forest quotient;
  int depth = 0;  // summed root distances of the extracted sites
};

// Every admissible extraction of f, in a deterministic order.
std::vector<Extraction> extractions(const Forest& f);

// Full coproduct: sum of extracted (x) quotient over all extractions.
Tensor coproduct(const Forest& f);

// Stratum by extraction arity: terms whose extracted subforest has exactly
// n-1 components; the empty extraction is counted in the n = 2 stratum.
// Summing over n >= 2 recovers the full coproduct.
Tensor coproduct_by_arity(const Forest& f, int n);

// Depth-graded refinement; erasing degrees recovers the coproduct.
GradedTensor graded_coproduct(const Forest& f);

// Coefficient of the empty forest.
BigInt counit(const Forest& f);
BigInt counit(const LinComb& x);

// Hopf antipode, defined on trees by the sign-alternating recursion over the
// reduced coproduct and extended multiplicatively to forests.
LinComb antipode(const Forest& f);
LinComb antipode(const LinComb& x);

// Convolution m o (S (x) id) o Delta; equals counit(f) * 1 when the antipode
// is correct.
LinComb antipode_convolution(const Forest& f);

// Leaf-subset coproduct on a single tree: sums, over subsets L of the leaf
// positions, the tree induced on L tensor the tree induced on the complement.
Tensor leaf_coproduct(const SynTree& t);
// Tree induced on a subset of leaf positions (positions in left-to-right
// canonical order), re-contracted to a binary tree; empty subset gives 1.
SynTree restrict_to_leaves(const SynTree& t, const std::vector<int>& positions);

// (Delta (x) id) o Delta and (id (x) Delta) o Delta.
Tensor3 coassoc_left(const Forest& f);
Tensor3 coassoc_right(const Forest& f);

// Both routes around the product/coproduct compatibility square:
// Delta(f u g) and (u (x) u) o tau o (Delta (x) Delta)(f, g).
Tensor compat_left(const Forest& f, const Forest& g);
Tensor compat_right(const Forest& f, const Forest& g);

}  // namespace mergehopf
