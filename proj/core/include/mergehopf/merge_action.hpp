#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mergehopf/bialgebra.hpp"
#include "mergehopf/lincomb.hpp"
#include "mergehopf/nary.hpp"
#include "mergehopf/syntree.hpp"

namespace mergehopf {

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All sites of f whose subtree equals the pattern; whole components match at
// their roots.  Empty for the unit pattern.
std::vector<SiteRef> occurrences_of(const SynTree& pattern, const Forest& f);

// Case analysis of a Merge application by where its two inputs sit:
// distinct components (External), component plus its own accessible term
// (Internal), a component and another component's accessible term
// (Sideward2b), accessible terms of two distinct components (Sideward3b),
// two accessible terms of one component (Countercyclic, split by nesting),
// or a single accessible term paired with the unit (UnaryExtract).
enum class MergeVariant {
  External,
  Internal,
  Sideward2b,
  Sideward3b,
  CountercyclicI,    // second occurrence nested inside the first
  CountercyclicII,   // first occurrence nested inside the second
  CountercyclicIII,  // disjoint occurrences
  UnaryExtract,
};

const char* variant_name(MergeVariant v);
std::optional<MergeVariant> variant_from_name(const std::string& name);

struct MergeForm {
  MergeVariant variant = MergeVariant::External;
  SiteRef first;
  std::optional<SiteRef> second;
};

// Determines the unique case label for an occurrence pair (or a single
// occurrence, for the unit-paired extraction).  Throws AddressError when an
// occurrence does not resolve and PreconditionError on degenerate input
// (identical occurrences, lone root occurrence).
MergeForm classify_form(const Forest& f, const SiteRef& occ1,
                        const std::optional<SiteRef>& occ2);

// Direct construction of the post-Merge workspace for a classified case.
Forest apply_merge_case(const MergeForm& form, const Forest& f);

struct CountDeltas {
  long long b0 = 0;
  long long acc = 0;
  long long sigma = 0;
  long long sigma_hat = 0;

  friend bool operator==(const CountDeltas&, const CountDeltas&) = default;
};

// The reference row for the variant: External (-1,+2,+1,0), Internal
// (0,0,0,0), UnaryExtract (+1,-2,-1,0), Sideward3b (+1,0,+1,+2),
// Sideward2b (0,+1,+1,+1), CountercyclicIII (+1,-2,-1,0), and the nested
// Countercyclic rows parameterized by the inner occurrence's size.
CountDeltas expected_size_delta(const MergeForm& form, const Forest& f);

// counts(apply_merge_case(form, f)) - counts(f); throws InvariantViolation
// when the computed deltas disagree with the reference row.
CountDeltas size_delta(const MergeForm& form, const Forest& f);

// The four counting constraints evaluated on one application.
struct ConstraintCheck {
  bool b0_nonincreasing = false;   // delta b0 <= 0
  bool acc_nondecreasing = false;  // delta acc >= 0
  bool sigma_bounded = false;      // 0 <= delta sigma <= 1
  bool sigma_hat_conserved = false;  // delta sigma_hat == 0

  friend bool operator==(const ConstraintCheck&, const ConstraintCheck&) = default;
};

ConstraintCheck constraint_check(const MergeForm& form, const Forest& f);

// The matching operator applied to one coproduct term of f.  Emits, for
// every assignment of the two search terms to distinct extracted occurrences
// in distinct components, the merged pair tensor the correspondingly
// quotiented workspace; emits 1 (x) f when the extraction carries no
// assignment; emits zero when the pair is not a coproduct term of f at all.
Tensor delta_match(const SynTree& s, const SynTree& s2, const Forest& f,
                   const TensorKey& term);

// Grafting operator on binary forests; components become children of a fresh
// root, so three or more components leave the binary world.
NaryTree b_plus(const Forest& f);

// Workspace action of Merge: search for copies of the two terms among
// components and accessible terms of distinct components, merge each
// matching pair, and cancel the deeper copies by quotienting.  Sums over all
// matching assignments; an unmatched search leaves the workspace unchanged.
// A unit second term extracts single occurrences (identity on whole
// components).
LinComb merge_op(const SynTree& s, const SynTree& s2, const Forest& f);

// Internal Merge at a designated non-root occurrence: the component T is
// replaced by the merge of the accessible term with T quotiented by it.
LinComb internal_merge(const SiteRef& site, const Forest& f);

// Module action of a single tree on workspaces: for every single-subtree
// extraction (including the empty and whole-component ones), merge t onto
// the extracted term and keep the quotiented remainder.
LinComb rho(const SynTree& t, const Forest& f);

// ---------------------------------------------------------------------------
// Depth-weighted action.  Components carry integer degrees in a formal
// parameter; extraction adds the occurrence depth, quotients subtract it,
// and a merged pair carries the absolute value of its inputs' total.  The
// degree-zero part of the action is the Minimal Search limit.

class WeightedWorkspace {
 public:
  struct Component {
    SynTree tree;
    int degree = 0;

    friend bool operator==(const Component&, const Component&) = default;
  };

  WeightedWorkspace() = default;
  explicit WeightedWorkspace(const Forest& f);  // all degrees zero
  explicit WeightedWorkspace(std::vector<Component> comps);

  const std::vector<Component>& components() const { return comps_; }
  std::size_t size() const { return comps_.size(); }
  const std::string& encoding() const { return enc_; }

  bool all_degrees_zero() const;
  // Sum of absolute component degrees; zero exactly on unweighted terms.
  int abs_degree() const;
  Forest forest() const;  // degrees erased

  friend bool operator==(const WeightedWorkspace& a, const WeightedWorkspace& b) {
    return a.enc_ == b.enc_;
  }
  friend std::strong_ordering operator<=>(const WeightedWorkspace& a,
                                          const WeightedWorkspace& b) {
    return a.enc_ <=> b.enc_;
  }

 private:
  std::vector<Component> comps_;
  std::string enc_ = "1";
};

using WeightedLinComb = FormalSum<WeightedWorkspace>;

// One weighted application at explicit occurrences, with provenance.
struct EpsTerm {
  WeightedWorkspace workspace;
  bool identity = false;
  std::optional<MergeVariant> variant;
  std::optional<SiteRef> occ1, occ2;
  int merged_degree = 0;
};

EpsTerm eps_apply_pair(const WeightedWorkspace& w, const SiteRef& a,
                       const SiteRef& b);
EpsTerm eps_apply_unary(const WeightedWorkspace& w, const SiteRef& a);

// All terms of one weighted Merge application, occurrence by occurrence.
std::vector<EpsTerm> merge_eps_terms(const SynTree& s, const SynTree& s2,
                                     const WeightedWorkspace& w);

// Collected weighted action.
WeightedLinComb merge_eps(const SynTree& s, const SynTree& s2,
                          const WeightedWorkspace& w);

// Keeps exactly the terms whose components all carry degree zero and erases
// the degrees; everything else is discarded.
LinComb minimal_search_limit(const WeightedLinComb& x);

// ---------------------------------------------------------------------------
// Derivations: explicit sequencing of merge applications with logging.

struct StepSpec {
  enum class Kind { MergePair, Internal, Case };
  Kind kind = Kind::MergePair;
  SynTree s, s2;                      // MergePair; s2 may be the unit
  std::optional<SiteRef> occ1, occ2;  // occurrence selectors
  std::optional<MergeVariant> variant;  // Case
};

struct DerivationStep {
  StepSpec spec;
  MergeForm form;
  Forest before;
  Forest chosen;   // branch selected for the next step
  LinComb result;  // full formal sum produced by the operator
  Counts counts_before, counts_after;
  CountDeltas deltas;
  ConstraintCheck constraints;
};

struct Derivation {
  Forest initial;
  std::vector<DerivationStep> steps;

  const Forest& final_workspace() const {
    return steps.empty() ? initial : steps.back().chosen;
  }
};

// Replays the steps from the initial workspace.  Steps act on the previous
// step's chosen branch; a step whose occurrence selectors leave more than
// one candidate fails with a message listing them.
Derivation derive(const Forest& initial, const std::vector<StepSpec>& steps);

}  // namespace mergehopf
