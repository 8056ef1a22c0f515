#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mergehopf/lincomb.hpp"
#include "mergehopf/syntree.hpp"

namespace mergehopf {

// Child-ordered binary tree; the left-to-right leaf sequence is the
// linearized sentence.  No canonical reordering is ever applied.
class PlanarTree {
 public:
  PlanarTree() = delete;
  static PlanarTree leaf(const std::string& label);
  static PlanarTree node(const PlanarTree& first, const PlanarTree& second);

  bool is_leaf() const;
  bool is_node() const;
  const std::string& label() const;
  const PlanarTree& first() const;
  const PlanarTree& second() const;
  const std::string& encoding() const;
  int leaf_count() const;
  int depth() const;

  std::vector<std::string> leaf_sequence() const;

  friend bool operator==(const PlanarTree& a, const PlanarTree& b) {
    return a.encoding() == b.encoding();
  }
  friend std::strong_ordering operator<=>(const PlanarTree& a,
                                          const PlanarTree& b) {
    return a.encoding() <=> b.encoding();
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> p_;
  explicit PlanarTree(std::shared_ptr<const Impl> p) : p_(std::move(p)) {}
};

// Ordered sequence of planar trees.
using PlanarForest = std::vector<PlanarTree>;

std::string planar_forest_encoding(const PlanarForest& f);

// Same brace grammar as abstract trees, but order-preserving and without the
// empty tree.
PlanarTree parse_planar_tree(const std::string& text);
PlanarForest parse_planar_forest(const std::string& text);

// Forgets the embedding: canonicalizes child order recursively.
SynTree project(const PlanarTree& p);
Forest project(const PlanarForest& f);

// Word-order comparator: subtrees ordered by the precedence rank of their
// designated head label, falling back to canonical-encoding order.  The head
// of a subtree is its first (or last) leaf in canonical order.
struct OrderParams {
  std::vector<std::string> precedence;
  enum class HeadRule { FirstLeaf, LastLeaf };
  HeadRule head_rule = HeadRule::FirstLeaf;

  // True when a should precede b.
  bool precedes(const SynTree& a, const SynTree& b) const;
  std::string head_label(const SynTree& t) const;
};

struct FilterSpec {
  enum class Kind { MaxDepth, ForbidSubtree, ForbidAdjacent };
  int bit = 0;
  Kind kind = Kind::MaxDepth;
  int max_depth = 0;                  // MaxDepth: depth in edges
  std::string pattern;                // ForbidSubtree: planar tree text
  std::string left_label, right_label;  // ForbidAdjacent: leaf bigram

  bool passes(const PlanarTree& t) const;
  std::string describe() const;
};

// A language: a parameter bit vector, per-bit tree predicates for the
// enabled bits, and word-order parameters for the planarizing section.
struct LanguageSpec {
  std::string name = "default";
  std::vector<bool> pi;  // bit i enables filters with that index
  OrderParams order;
  std::vector<FilterSpec> filters;

  bool bit_enabled(int bit) const;
  std::vector<const FilterSpec*> enabled_filters() const;

  // {order: {precedence: [...], head_rule: "first_leaf"|"last_leaf"},
  //  filters: [{bit, kind, args...}], pi: [0/1...]} – all fields optional.
  static LanguageSpec from_json_text(const std::string& text);
  static LanguageSpec load(const std::string& path);
};

// Deterministic planarization: applies the language's comparator at every
// internal vertex.  project(section(t, L)) == t for every t.
PlanarTree section(const SynTree& t, const LanguageSpec& lang);
PlanarForest section(const Forest& f, const LanguageSpec& lang);

// Order-preserving pairing; not commutative.
PlanarTree nc_merge(const PlanarTree& a, const PlanarTree& b);

// Prefix encoding over {c} and the labels, one "c" per internal vertex.
std::string malcev_encode(const PlanarTree& p);
PlanarTree malcev_decode(const std::string& text);

struct FilterRejection {
  int bit = 0;
  int component = 0;
  std::string detail;
};

// Accepts when every component satisfies every enabled bit's predicate;
// a rejection carries the first failing (bit, component).
std::variant<PlanarForest, FilterRejection> filter(const PlanarForest& f,
                                                   const LanguageSpec& lang);
bool passes_filter(const PlanarTree& t, const LanguageSpec& lang);
bool passes_filter(const PlanarForest& f, const LanguageSpec& lang);

// Partial product: defined exactly when inputs and result pass the filter.
std::optional<PlanarTree> restricted_merge(const PlanarTree& a,
                                           const PlanarTree& b,
                                           const LanguageSpec& lang);

using PlanarKey = std::string;  // planar forest encoding
using PlanarLinComb = FormalSum<PlanarKey>;

// Planar module action: single-subtree extractions with order-preserving
// quotients, the extracted term merged under t from the left.
PlanarLinComb planar_rho(const PlanarTree& t, const PlanarForest& f);
// The filtered action: extraction restricted to terms whose subtree and
// quotient both pass; the output forest must pass as a whole.
PlanarLinComb restricted_rho(const PlanarTree& t, const PlanarForest& f,
                             const LanguageSpec& lang);

// All planar trees with exactly n leaves over the alphabet.
std::vector<PlanarTree> enumerate_planar_trees(
    const std::vector<std::string>& labels, int n_leaves);

struct GradeDimensions {
  int grade = 0;
  BigInt dim_all;                 // trees of this grade
  std::vector<BigInt> dim_bit;    // passing each enabled bit alone
  BigInt dim_lang;                // passing all enabled bits
  bool truncated = false;
};

// Per-grade dimension table of the filter-defined subspaces, computed by
// enumeration.  Stops with truncation markers once a grade would exceed the
// tree budget.
std::vector<GradeDimensions> grade_dimensions(
    const LanguageSpec& lang, const std::vector<std::string>& labels,
    int max_grade, long long tree_budget = 2'000'000);

}  // namespace mergehopf
