#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mergehopf/label.hpp"

namespace mergehopf {

// Abstract (non-planar) labelled binary rooted tree, plus the distinguished
// empty tree acting as the magma unit.
//
// Canonical form: the two children of every internal vertex are stored so
// that the encoding of the first is <= the encoding of the second.  Abstract
// equality of trees is therefore byte equality of encodings, and the
// encoding doubles as a total order.  The unit never occurs as a child.
class SynTree {
 public:
  SynTree() = default;  // the unit (empty tree)

  static SynTree unit() { return SynTree(); }
  static SynTree leaf(const std::string& label);
  // Canonicalizing pair formation; both children must be non-unit.
  static SynTree node(const SynTree& a, const SynTree& b);

  bool is_unit() const { return p_ == nullptr; }
  bool is_leaf() const;
  bool is_node() const;

  const std::string& label() const;   // leaves only
  const SynTree& first() const;       // canonical children, nodes only
  const SynTree& second() const;

  // Canonical text form: "1", a label, or "{first second}".
  const std::string& encoding() const;

  int leaf_count() const;
  int vertex_count() const;
  // Edge distance from root to the deepest leaf; 0 for leaves and the unit.
  int depth() const;

  friend bool operator==(const SynTree& a, const SynTree& b) {
    return a.encoding() == b.encoding();
  }
  friend std::strong_ordering operator<=>(const SynTree& a, const SynTree& b) {
    return a.encoding() <=> b.encoding();
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> p_;
};

// The binary set-formation product of the free commutative non-associative
// magma: merge(a,b) = merge(b,a) is the canonical pair, with the unit rules
// merge(t, unit) = merge(unit, t) = t.
SynTree merge(const SynTree& a, const SynTree& b);

// Address of a vertex: steps ('0' = canonical-first child, '1' = second)
// read from the root.  Empty path addresses the root.
struct VertexPath {
  std::string steps;

  VertexPath() = default;
  explicit VertexPath(std::string s) : steps(std::move(s)) {}

  bool is_root() const { return steps.empty(); }
  std::size_t depth() const { return steps.size(); }
  bool is_prefix_of(const VertexPath& other) const;
  bool is_strict_prefix_of(const VertexPath& other) const;
  // Disjoint subtrees: neither path a prefix of the other.
  bool disjoint_from(const VertexPath& other) const;

  friend bool operator==(const VertexPath&, const VertexPath&) = default;
  friend std::strong_ordering operator<=>(const VertexPath&,
                                          const VertexPath&) = default;
};

struct AddressError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subtree rooted at the addressed vertex; throws AddressError when the path
// does not resolve.
SynTree subtree_at(const SynTree& t, const VertexPath& v);
bool path_resolves(const SynTree& t, const VertexPath& v);

// All vertex addresses of t in pre-order (root first); empty for the unit.
std::vector<VertexPath> all_vertices(const SynTree& t);

struct AccessibleTerm {
  VertexPath path;
  SynTree term;
  int depth = 0;  // distance from the root
};

// One entry per non-root vertex, leaves included, in pre-order.
std::vector<AccessibleTerm> accessible_terms(const SynTree& t);

// Removes the subtree at v and contracts the resulting unary vertex.
// quotient(t, root) is the unit.
SynTree quotient(const SynTree& t, const VertexPath& v);

// Sequential quotient by several pairwise-disjoint subtrees; the result does
// not depend on the removal order.  Throws on overlapping addresses.
SynTree tree_quotient(const SynTree& t, const std::vector<VertexPath>& vs);

// Finite multiset of non-unit trees, kept as a canonically sorted sequence.
// The empty multiset is the unit of the disjoint-union product.
class Forest {
 public:
  Forest() = default;
  explicit Forest(std::vector<SynTree> components);
  static Forest single(const SynTree& t);

  const std::vector<SynTree>& components() const { return comps_; }
  const SynTree& component(std::size_t i) const;
  std::size_t size() const { return comps_.size(); }
  bool empty() const { return comps_.empty(); }

  // "1" for the empty forest, otherwise components joined by " | ".
  const std::string& encoding() const { return enc_; }

  int total_leaves() const;
  int total_vertices() const;

  Forest disjoint_union(const Forest& other) const;
  Forest with_component(const SynTree& t) const;     // t may be the unit (no-op)
  Forest without_component(std::size_t i) const;
  Forest replace_component(std::size_t i, const SynTree& t) const;

  friend bool operator==(const Forest& a, const Forest& b) {
    return a.enc_ == b.enc_;
  }
  friend std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
    return a.enc_ <=> b.enc_;
  }

 private:
  std::vector<SynTree> comps_;
  std::string enc_ = "1";
};

// Workspace size bookkeeping: sigma = b0 + acc (total vertex count) and
// sigma_hat = b0 + sigma.
struct Counts {
  long long b0 = 0;
  long long acc = 0;
  long long sigma = 0;
  long long sigma_hat = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

Counts counts(const Forest& f);

struct SiteRef {
  int component = 0;
  VertexPath path;

  friend bool operator==(const SiteRef&, const SiteRef&) = default;
  friend std::strong_ordering operator<=>(const SiteRef&,
                                          const SiteRef&) = default;
};

// Quotient of a forest by pairwise-disjoint subtrees addressed per component.
// Components reduced to the unit drop out of the multiset.
Forest forest_quotient(const Forest& f, const std::vector<SiteRef>& sites);

// All distinct canonical trees with leaf count in [1, max_leaves], labels
// drawn from the alphabet.  Ordered by (leaf count, encoding).
std::vector<SynTree> enumerate_trees(const std::vector<std::string>& labels,
                                     int max_leaves);
std::vector<SynTree> enumerate_trees_exact(
    const std::vector<std::string>& labels, int n_leaves);

// All nonempty forests with at most max_total_leaves leaves in total.
std::vector<Forest> enumerate_forests(const std::vector<std::string>& labels,
                                      int max_total_leaves);
// All nonempty forests with at most max_total_vertices vertices in total.
std::vector<Forest> enumerate_forests_by_vertices(
    const std::vector<std::string>& labels, int max_total_vertices);

}  // namespace mergehopf
