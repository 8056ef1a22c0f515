#include "mergehopf/dyson_schwinger.hpp"

#include <algorithm>
#include <functional>

#include "mergehopf/bialgebra.hpp"
#include "mergehopf/merge_action.hpp"

namespace mergehopf {

DSSeries ds_core(int n_max, const std::string& generator_label) {
  if (n_max < 1) throw ConfigError("ds_core: n_max must be >= 1");
  DSSeries series;
  series.grades.resize(static_cast<std::size_t>(n_max));
  series.grades[0].add(SynTree::leaf(generator_label), 1);
  for (int n = 2; n <= n_max; ++n) {
    TreeSum& xn = series.grades[static_cast<std::size_t>(n - 1)];
    for (int j = 1; j <= n - 1; ++j) {
      const TreeSum& xj = series.grades[static_cast<std::size_t>(j - 1)];
      const TreeSum& xk = series.grades[static_cast<std::size_t>(n - j - 1)];
      for (const auto& [a, ca] : xj.terms())
        for (const auto& [b, cb] : xk.terms()) xn.add(merge(a, b), ca * cb);
    }
  }
  return series;
}

// ---------------------------------------------------------------------------

struct RoseTree::Impl {
  std::optional<std::string> label;
  std::vector<RoseTree> children;  // canonically sorted
  std::string enc;
  int verts = 0;
};

const std::vector<RoseTree>& RoseTree::children() const { return p_->children; }

const std::optional<std::string>& RoseTree::label() const { return p_->label; }

const std::string& RoseTree::encoding() const { return p_->enc; }

int RoseTree::vertex_count() const { return p_->verts; }

RoseTree::RoseTree() {
  auto impl = std::make_shared<Impl>();
  impl->enc = "[]";
  impl->verts = 1;
  p_ = std::move(impl);
}

RoseTree RoseTree::labelled(const std::string& label) {
  auto impl = std::make_shared<Impl>();
  impl->label = label;
  impl->enc = label;
  impl->verts = 1;
  RoseTree t;
  t.p_ = std::move(impl);
  return t;
}

RoseTree RoseTree::with_children(std::vector<RoseTree> children,
                                 const std::optional<std::string>& label) {
  if (children.empty() && label) return labelled(*label);
  std::sort(children.begin(), children.end());
  auto impl = std::make_shared<Impl>();
  impl->label = label;
  impl->verts = 1;
  impl->enc = label ? *label : std::string();
  impl->enc += '[';
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) impl->enc += ' ';
    impl->enc += children[i].encoding();
    impl->verts += children[i].vertex_count();
  }
  impl->enc += ']';
  impl->children = std::move(children);
  RoseTree t;
  t.p_ = std::move(impl);
  return t;
}

RoseForest::RoseForest(std::vector<RoseTree> components)
    : comps_(std::move(components)) {
  std::sort(comps_.begin(), comps_.end());
  if (comps_.empty()) return;
  enc_.clear();
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) enc_ += " | ";
    enc_ += comps_[i].encoding();
  }
}

RoseForest RoseForest::single(const RoseTree& t) {
  return RoseForest(std::vector<RoseTree>{t});
}

RoseForest RoseForest::disjoint_union(const RoseForest& other) const {
  std::vector<RoseTree> all = comps_;
  all.insert(all.end(), other.comps_.begin(), other.comps_.end());
  return RoseForest(std::move(all));
}

RoseTree rose_from_binary(const SynTree& t) {
  if (t.is_unit()) throw ConfigError("rose_from_binary: empty tree");
  if (t.is_leaf()) return RoseTree::labelled(t.label());
  return RoseTree::with_children(
      {rose_from_binary(t.first()), rose_from_binary(t.second())});
}

RoseForest rose_from_forest(const Forest& f) {
  std::vector<RoseTree> comps;
  comps.reserve(f.size());
  for (const auto& t : f.components()) comps.push_back(rose_from_binary(t));
  return RoseForest(std::move(comps));
}

RoseTree rose_graft(const RoseForest& f) {
  return RoseTree::with_children(f.components());
}

namespace {

// Per-tree cuts: (removed subtrees, root-containing remainder).  The
// remainder keeps its vertex untouched; removed children simply disappear.
struct RoseCut {
  std::vector<RoseTree> removed;
  std::optional<RoseTree> rest;  // nullopt when the root itself is removed
};

std::vector<RoseCut> rose_cuts(const RoseTree& t) {
  std::vector<RoseCut> out;
  out.push_back({{t}, std::nullopt});  // cut above the root
  // choose cuts independently in the children
  std::vector<std::vector<RoseCut>> per_child;
  per_child.reserve(t.children().size());
  for (const auto& c : t.children()) per_child.push_back(rose_cuts(c));
  std::vector<std::size_t> idx(per_child.size(), 0);
  while (true) {
    RoseCut cut;
    std::vector<RoseTree> kept;
    for (std::size_t i = 0; i < per_child.size(); ++i) {
      const RoseCut& cc = per_child[i][idx[i]];
      cut.removed.insert(cut.removed.end(), cc.removed.begin(),
                         cc.removed.end());
      if (cc.rest) kept.push_back(*cc.rest);
    }
    cut.rest = RoseTree::with_children(std::move(kept), t.label());
    out.push_back(std::move(cut));
    std::size_t i = per_child.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++idx[i] < per_child[i].size()) {
        advanced = true;
        break;
      }
      idx[i] = 0;
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace

RoseTensor rose_coproduct(const RoseForest& f) {
  std::vector<std::vector<RoseCut>> per_comp;
  per_comp.reserve(f.size());
  for (const auto& t : f.components()) per_comp.push_back(rose_cuts(t));
  RoseTensor out;
  std::vector<std::size_t> idx(f.size(), 0);
  while (true) {
    std::vector<RoseTree> removed, rest;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const RoseCut& cc = per_comp[i][idx[i]];
      removed.insert(removed.end(), cc.removed.begin(), cc.removed.end());
      if (cc.rest) rest.push_back(*cc.rest);
    }
    out.add({RoseForest(std::move(removed)), RoseForest(std::move(rest))}, 1);
    std::size_t i = f.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++idx[i] < per_comp[i].size()) {
        advanced = true;
        break;
      }
      idx[i] = 0;
    }
    if (!advanced) break;
  }
  return out;
}

DSPoly::DSPoly(std::map<int, BigInt> c) : coeff(std::move(c)) {
  std::erase_if(coeff, [](const auto& kv) { return kv.second == 0; });
  auto it = coeff.find(0);
  if (it == coeff.end() || it->second != 1)
    throw ConfigError("DSPoly: constant coefficient must be 1");
  for (const auto& [k, v] : coeff)
    if (k < 0) throw ConfigError("DSPoly: negative exponent");
}

BigInt DSPoly::a(int k) const {
  auto it = coeff.find(k);
  return it == coeff.end() ? BigInt(0) : it->second;
}

int DSPoly::max_degree() const {
  int d = 0;
  for (const auto& [k, v] : coeff) d = std::max(d, k);
  return d;
}

std::string DSPoly::to_string() const {
  std::string out;
  for (const auto& [k, v] : coeff) {
    if (!out.empty()) out += " + ";
    out += v.str();
    if (k > 0) {
      out += "*t";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

RoseSeries ds_general(const DSPoly& p, int n_max) {
  if (n_max < 1) throw ConfigError("ds_general: n_max must be >= 1");
  RoseSeries series;
  series.grades.resize(static_cast<std::size_t>(n_max));
  series.grades[0].add(rose_graft(RoseForest()), 1);  // x_1 = single vertex

  using ForestSum = FormalSum<RoseForest>;
  for (int n = 1; n < n_max; ++n) {
    RoseSum& next = series.grades[static_cast<std::size_t>(n)];
    for (const auto& [k, ak] : p.coeff) {
      if (k < 1 || k > n) continue;
      // all ordered compositions j_1 + ... + j_k = n with j_i >= 1
      ForestSum acc;
      acc.add(RoseForest(), 1);
      std::function<void(int, int, const ForestSum&)> expand =
          [&](int slot, int remaining, const ForestSum& partial) {
            if (slot == k) {
              if (remaining != 0) return;
              for (const auto& [forest, c] : partial.terms())
                next.add(rose_graft(forest), ak * c);
              return;
            }
            int slots_left = k - slot;
            for (int j = 1; j + (slots_left - 1) <= remaining; ++j) {
              const RoseSum& xj = series.grades[static_cast<std::size_t>(j - 1)];
              if (xj.is_zero()) continue;
              ForestSum grown;
              for (const auto& [forest, c] : partial.terms())
                for (const auto& [t, ct] : xj.terms())
                  grown.add(forest.disjoint_union(RoseForest::single(t)), c * ct);
              expand(slot + 1, remaining - j, grown);
            }
          };
      expand(0, n, acc);
    }
  }
  return series;
}

namespace {

RoseTensor rose_cocycle_lhs(const RoseForestSum& x) {
  RoseTensor out;
  for (const auto& [f, c] : x.terms()) {
    RoseTensor d = rose_coproduct(RoseForest::single(rose_graft(f)));
    d.scale(c);
    out.add(d);
  }
  return out;
}

RoseTensor rose_cocycle_rhs(const RoseForestSum& x) {
  RoseTensor out;
  for (const auto& [f, c] : x.terms()) {
    out.add({RoseForest::single(rose_graft(f)), RoseForest()}, c);
    RoseTensor d = rose_coproduct(f);
    for (const auto& [k, cd] : d.terms())
      out.add({k.first, RoseForest::single(rose_graft(k.second))}, c * cd);
  }
  return out;
}

template <class TensorT>
CocycleReport compare_tensors(const TensorT& lhs, const TensorT& rhs,
                              const std::function<std::string(
                                  const typename TensorT::Terms::key_type&)>& show) {
  TensorT diff = lhs;
  diff.subtract(rhs);
  CocycleReport rep;
  rep.holds = diff.is_zero();
  if (!rep.holds) {
    const auto& [key, coeff] = *diff.terms().begin();
    rep.witness = show(key) + " differs by " + coeff.str();
  }
  return rep;
}

}  // namespace

CocycleReport cocycle_check_grafting(const RoseForestSum& x) {
  return compare_tensors<RoseTensor>(
      rose_cocycle_lhs(x), rose_cocycle_rhs(x),
      [](const std::pair<RoseForest, RoseForest>& k) {
        return "(" + k.first.encoding() + " (x) " + k.second.encoding() + ")";
      });
}

CocycleReport cocycle_check_quotient(const LinComb& x) {
  // Binary-world grafting: the empty forest maps to the unit, one component
  // to itself, two components to their merge; more leave the binary world.
  auto graft_binary = [](const Forest& f) -> SynTree {
    if (f.size() > 2)
      throw ConfigError(
          "quotient-convention grafting needs at most two components");
    SynTree acc = SynTree::unit();
    for (const auto& t : f.components()) acc = merge(acc, t);
    return acc;
  };
  Tensor lhs, rhs;
  for (const auto& [f, c] : x.terms()) {
    SynTree grafted = graft_binary(f);
    Forest gf = grafted.is_unit() ? Forest() : Forest::single(grafted);
    Tensor d = coproduct(gf);
    d.scale(c);
    lhs.add(d);
    rhs.add({gf, Forest()}, c);
    Tensor dx = coproduct(f);
    for (const auto& [k, cd] : dx.terms()) {
      SynTree g2 = graft_binary(k.second);
      rhs.add({k.first, g2.is_unit() ? Forest() : Forest::single(g2)}, c * cd);
    }
  }
  return compare_tensors<Tensor>(
      lhs, rhs, [](const TensorKey& k) {
        return "(" + k.first.encoding() + " (x) " + k.second.encoding() + ")";
      });
}

}  // namespace mergehopf
