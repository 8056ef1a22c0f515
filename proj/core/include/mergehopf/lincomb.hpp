#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "mergehopf/bigint.hpp"
#include "mergehopf/syntree.hpp"

namespace mergehopf {

// Formal integer combination over canonically keyed basis elements.
// Zero coefficients are never stored; the empty map is the zero element.
template <class Key>
class FormalSum {
 public:
  using Terms = std::map<Key, BigInt>;

  FormalSum() = default;
  static FormalSum of(const Key& k, BigInt coeff = 1) {
    FormalSum s;
    s.add(k, std::move(coeff));
    return s;
  }

  void add(const Key& k, const BigInt& coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add(const FormalSum& other) {
    for (const auto& [k, c] : other.terms_) add(k, c);
  }
  void subtract(const FormalSum& other) {
    for (const auto& [k, c] : other.terms_) add(k, -c);
  }
  void scale(const BigInt& c) {
    if (c == 0) {
      terms_.clear();
      return;
    }
    for (auto& [k, v] : terms_) v *= c;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  BigInt coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  BigInt coeff_sum() const {
    BigInt s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

// Element of the free module over workspaces.
using LinComb = FormalSum<Forest>;
// Target of the coproduct; the two slots are not interchangeable.
using TensorKey = std::pair<Forest, Forest>;
using Tensor = FormalSum<TensorKey>;
// Iterated coproduct values, for coassociativity checks.
using Tensor3Key = std::tuple<Forest, Forest, Forest>;
using Tensor3 = FormalSum<Tensor3Key>;
using Tensor4Key = std::tuple<Forest, Forest, Forest, Forest>;
using Tensor4 = FormalSum<Tensor4Key>;

// Depth-graded coproduct terms.  Both grades equal the summed root distances
// of the extracted subtrees; they are kept separately because the two slots
// are weighted by independent formal parameters.
struct GradedKey {
  Forest left, right;
  int eps_degree = 0;
  int eta_degree = 0;

  friend bool operator==(const GradedKey&, const GradedKey&) = default;
  friend std::strong_ordering operator<=>(const GradedKey&,
                                          const GradedKey&) = default;
};
using GradedTensor = FormalSum<GradedKey>;

// Bilinear disjoint-union product; the empty forest is the unit.
LinComb product(const LinComb& x, const LinComb& y);

// Text renderings: "c*FOREST" terms joined by " + "; tensors use
// "c*(F1 (x) F2)"; graded tensors append "@eps^d".  Zero renders as "0".
std::string to_string(const LinComb& x);
std::string to_string(const Tensor& x);
std::string to_string(const GradedTensor& x);

}  // namespace mergehopf
