#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "mergehopf/bigint.hpp"
#include "mergehopf/lincomb.hpp"
#include "mergehopf/syntree.hpp"

namespace mergehopf {

// Abstract rooted tree with unordered children of arbitrary count, plus the
// empty tree.  Hosts the syntactic objects of a hypothetical n-ary
// set-formation operation (all internal vertices then have exactly n
// children) and the outputs of the grafting operator.
class NaryTree {
 public:
  NaryTree() = default;  // the unit

  static NaryTree unit() { return NaryTree(); }
  static NaryTree leaf(const std::string& label);
  static NaryTree node(std::vector<NaryTree> children);  // >= 2, non-unit

  bool is_unit() const { return p_ == nullptr; }
  bool is_leaf() const;
  bool is_node() const;

  const std::string& label() const;
  const std::vector<NaryTree>& children() const;
  const std::string& encoding() const;
  int leaf_count() const;
  int vertex_count() const;

  // True when every internal vertex has exactly n children.
  bool is_full_nary(int n) const;

  friend bool operator==(const NaryTree& a, const NaryTree& b) {
    return a.encoding() == b.encoding();
  }
  friend std::strong_ordering operator<=>(const NaryTree& a,
                                          const NaryTree& b) {
    return a.encoding() <=> b.encoding();
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> p_;
};

NaryTree nary_from_binary(const SynTree& t);
// Fails when some internal vertex does not have exactly two children.
std::optional<SynTree> binary_from_nary(const NaryTree& t);

// Vertex address: child indices against canonical order; empty = root.
struct NaryPath {
  std::vector<int> steps;

  bool is_root() const { return steps.empty(); }
  bool is_prefix_of(const NaryPath& other) const;
  bool is_strict_prefix_of(const NaryPath& other) const;
  bool disjoint_from(const NaryPath& other) const;

  friend bool operator==(const NaryPath&, const NaryPath&) = default;
  friend std::strong_ordering operator<=>(const NaryPath&,
                                          const NaryPath&) = default;
};

NaryTree nary_subtree_at(const NaryTree& t, const NaryPath& v);
std::vector<NaryPath> nary_all_vertices(const NaryTree& t);

// Multiset of non-unit trees, canonically sorted.
class NaryForest {
 public:
  NaryForest() = default;
  explicit NaryForest(std::vector<NaryTree> components);
  static NaryForest single(const NaryTree& t);

  const std::vector<NaryTree>& components() const { return comps_; }
  std::size_t size() const { return comps_.size(); }
  bool empty() const { return comps_.empty(); }
  const std::string& encoding() const { return enc_; }
  int total_vertices() const;

  friend bool operator==(const NaryForest& a, const NaryForest& b) {
    return a.enc_ == b.enc_;
  }
  friend std::strong_ordering operator<=>(const NaryForest& a,
                                          const NaryForest& b) {
    return a.enc_ <=> b.enc_;
  }

 private:
  std::vector<NaryTree> comps_;
  std::string enc_ = "1";
};

Counts nary_counts(const NaryForest& f);

using NaryLinComb = FormalSum<NaryForest>;

// Grafting: attaches all component roots to a fresh root.  The empty forest
// maps to the unit and a single tree maps to itself.
NaryTree graft(const NaryForest& f);

// Labels the root of a contracted subtree.  Total on non-unit trees.
using ProjectionRule = std::function<std::string(const NaryTree&)>;
ProjectionRule constant_projection(const std::string& label = "XP");

// The n-ary set-formation product: exactly n arguments, none the unit.
NaryTree nary_merge(const std::vector<NaryTree>& args, int n);

// Contraction quotient: the subtree at v collapses to a single leaf labelled
// by the projection rule; the root case gives the unit.
NaryTree contract_quotient(const NaryTree& t, const NaryPath& v,
                           const ProjectionRule& proj);

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Workspace action of the n-ary Merge.  Sums over all assignments of the n
// search terms to pairwise-distinct matching occurrences; consumed
// occurrences are cancelled at their outermost matched sites by contraction
// quotients.  Emits the unchanged workspace when nothing matches.
NaryLinComb nary_merge_op(const std::vector<NaryTree>& search,
                          const NaryForest& f, const ProjectionRule& proj);

// Parse/format for the extended grammar "{" tree+ "}" with per-call arity
// validation; arity 0 accepts any child counts.
NaryTree parse_nary_tree(const std::string& text, int arity = 0);
NaryForest parse_nary_forest(const std::string& text, int arity = 0);

// Lengths k(n-1)+1 reachable by at most k_max applications.
std::set<long long> reachable_lengths(int n, int k_max);

// Planar rooted tree counts by internal-vertex count.
BigInt catalan(int r);
BigInt fuss_catalan(int n, int k);

// Exact size of the labelled planar-tree deficit
// S^((n-1)k+1) * (C_{k(n-1)} - C^(n)_k); positive for every n >= 3.
BigInt undergeneration_gap(int n, int k, const BigInt& alphabet_size);

// Occurrence-tuple counting that quantifies overgeneration: ordered
// (n-1)-tuples of distinct vertices, compared against the binary baseline.
// The paper-facing inequality is nary_tuples > binary_nonroot.  The
// "_nonleaf" variants restrict to non-leaf vertices and require k >= n;
// binary_nonleaf_incl_root carries the alternative count that also admits
// the root, kept alongside the strict one.
struct OvergenCounts {
  int n = 0;
  int k = 0;
  long long ell = 0;
  BigInt binary_nonroot;
  BigInt nary_nonroot;
  BigInt binary_nonroot_nonleaf;
  BigInt binary_nonleaf_incl_root;
  BigInt nary_nonroot_nonleaf;
  BigInt nary_tuples;
  std::optional<BigInt> nary_tuples_o;
};

OvergenCounts overgeneration_counts(int n, int k);

// Brute-force census helpers (test oracles).
std::vector<NaryTree> enumerate_nary_trees(const std::vector<std::string>& labels,
                                           int n, int max_internal);
// Number of planar rooted trees, all internal vertices n-ary, with k internal
// vertices, by explicit enumeration of shapes.
BigInt count_planar_nary_shapes(int n, int k);
// Ordered tuples of distinct vertices of a concrete tree, leaves included or
// not, root always excluded.
BigInt count_vertex_tuples(const NaryTree& t, int tuple_len, bool include_leaves);

}  // namespace mergehopf
