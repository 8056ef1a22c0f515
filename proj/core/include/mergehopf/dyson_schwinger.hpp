#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mergehopf/lincomb.hpp"
#include "mergehopf/syntree.hpp"

namespace mergehopf {

using TreeSum = FormalSum<SynTree>;

// Grade-indexed formal sum solving the fixed-point recursion for the binary
// set-formation product: X_1 = x, X_n = sum_j M(X_j, X_{n-j}).  Grade =
// number of leaves; coefficients count planar embeddings.
struct DSSeries {
  std::vector<TreeSum> grades;  // grades[i] holds X_{i+1}

  const TreeSum& grade(int n) const { return grades.at(static_cast<std::size_t>(n - 1)); }
};

DSSeries ds_core(int n_max, const std::string& generator_label = "x");

// ---------------------------------------------------------------------------
// General grafting recursion X = B+(P(X)) over undecorated rooted trees with
// arbitrary child counts (leaves are childless vertices).

class RoseTree {
 public:
  RoseTree();  // single vertex
  static RoseTree vertex() { return RoseTree(); }
  static RoseTree labelled(const std::string& label);
  static RoseTree with_children(std::vector<RoseTree> children,
                                const std::optional<std::string>& label = {});

  const std::vector<RoseTree>& children() const;
  const std::optional<std::string>& label() const;
  const std::string& encoding() const;
  int vertex_count() const;

  friend bool operator==(const RoseTree& a, const RoseTree& b) {
    return a.encoding() == b.encoding();
  }
  friend std::strong_ordering operator<=>(const RoseTree& a, const RoseTree& b) {
    return a.encoding() <=> b.encoding();
  }

 private:
  struct Impl;
  std::shared_ptr<const Impl> p_;
};

class RoseForest {
 public:
  RoseForest() = default;
  explicit RoseForest(std::vector<RoseTree> components);
  static RoseForest single(const RoseTree& t);

  const std::vector<RoseTree>& components() const { return comps_; }
  std::size_t size() const { return comps_.size(); }
  bool empty() const { return comps_.empty(); }
  const std::string& encoding() const { return enc_; }

  RoseForest disjoint_union(const RoseForest& other) const;

  friend bool operator==(const RoseForest& a, const RoseForest& b) {
    return a.enc_ == b.enc_;
  }
  friend std::strong_ordering operator<=>(const RoseForest& a,
                                          const RoseForest& b) {
    return a.enc_ <=> b.enc_;
  }

 private:
  std::vector<RoseTree> comps_;
  std::string enc_ = "1";
};

using RoseSum = FormalSum<RoseTree>;
using RoseForestSum = FormalSum<RoseForest>;
using RoseTensor = FormalSum<std::pair<RoseForest, RoseForest>>;

RoseTree rose_from_binary(const SynTree& t);
RoseForest rose_from_forest(const Forest& f);

// Grafting: all component roots attached to a fresh unlabelled root; the
// empty forest gives the single vertex.
RoseTree rose_graft(const RoseForest& f);

// Cut-style coproduct: extracted subtrees are deleted outright (no
// contraction), the root-containing remainder keeps its shape.
RoseTensor rose_coproduct(const RoseForest& f);

// Polynomial P(t) = sum a_k t^k with a_0 = 1.
struct DSPoly {
  std::map<int, BigInt> coeff;

  DSPoly() { coeff[0] = 1; }
  explicit DSPoly(std::map<int, BigInt> c);
  BigInt a(int k) const;
  int max_degree() const;
  std::string to_string() const;
};

// Recursive solution of X = B+(P(X)): x_1 is the single vertex and
// x_{n+1} = sum_k a_k sum_{j_1+...+j_k = n} B+(x_{j_1} ... x_{j_k}).
// Grading is by recursion index (the vertex count), not by leaf count.
struct RoseSeries {
  std::vector<RoseSum> grades;  // grades[i] holds x_{i+1}

  const RoseSum& grade(int n) const { return grades.at(static_cast<std::size_t>(n - 1)); }
};

RoseSeries ds_general(const DSPoly& p, int n_max);

// Diagnostic for the grafting cocycle identity
// Delta(B+(X)) = B+(X) (x) 1 + (id (x) B+) Delta(X).
// The cut-style coproduct satisfies it; the quotient convention on binary
// forests (with contraction) is evaluated and reported, not assumed.
struct CocycleReport {
  bool holds = false;
  std::string witness;  // first differing term when it fails
};

CocycleReport cocycle_check_grafting(const RoseForestSum& x);
CocycleReport cocycle_check_quotient(const LinComb& x);

}  // namespace mergehopf
