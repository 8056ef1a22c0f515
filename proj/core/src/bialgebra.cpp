#include "mergehopf/bialgebra.hpp"

#include <map>
#include <string>

namespace mergehopf {

namespace {

// One admissible cut of a single tree: which subtrees come out, what is left
// after sequential quotienting, and the depth bookkeeping.
struct Cut {
  std::vector<VertexPath> paths;
  std::vector<SynTree> extracted;
  SynTree rest;
  int depth = 0;
};

std::vector<Cut> cuts(const SynTree& t) {
  std::vector<Cut> out;
  // whole subtree removed at its root
  out.push_back(Cut{{VertexPath{}}, {t}, SynTree::unit(), 0});
  if (t.is_leaf()) {
    out.push_back(Cut{{}, {}, t, 0});
    return out;
  }
  auto left = cuts(t.first());
  auto right = cuts(t.second());
  for (const auto& cl : left) {
    for (const auto& cr : right) {
      Cut c;
      c.paths.reserve(cl.paths.size() + cr.paths.size());
      for (const auto& p : cl.paths) c.paths.emplace_back("0" + p.steps);
      for (const auto& p : cr.paths) c.paths.emplace_back("1" + p.steps);
      c.extracted = cl.extracted;
      c.extracted.insert(c.extracted.end(), cr.extracted.begin(),
                         cr.extracted.end());
      c.rest = merge(cl.rest, cr.rest);
      c.depth = cl.depth + static_cast<int>(cl.paths.size()) + cr.depth +
                static_cast<int>(cr.paths.size());
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

std::vector<Extraction> extractions(const Forest& f) {
  std::vector<std::vector<Cut>> per_comp;
  per_comp.reserve(f.size());
  for (const auto& t : f.components()) per_comp.push_back(cuts(t));

  std::vector<Extraction> out;
  // Cartesian product over components, rightmost index fastest.
  std::vector<std::size_t> idx(f.size(), 0);
  while (true) {
    Extraction e;
    std::vector<SynTree> ext, rest;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Cut& c = per_comp[i][idx[i]];
      for (const auto& p : c.paths)
        e.sites.push_back(SiteRef{static_cast<int>(i), p});
      ext.insert(ext.end(), c.extracted.begin(), c.extracted.end());
      if (!c.rest.is_unit()) rest.push_back(c.rest);
      e.depth += c.depth;
    }
    e.extracted = Forest(std::move(ext));
    e.quotient = Forest(std::move(rest));
    out.push_back(std::move(e));

    std::size_t i = f.size();
    while (i > 0) {
      --i;
      if (++idx[i] < per_comp[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (f.size() == 0) return out;
  }
}

Tensor coproduct(const Forest& f) {
  Tensor out;
  for (const auto& e : extractions(f))
    out.add({e.extracted, e.quotient}, 1);
  return out;
}

Tensor coproduct_by_arity(const Forest& f, int n) {
  if (n < 2) throw ConfigError("coproduct_by_arity: n must be >= 2");
  Tensor out;
  for (const auto& e : extractions(f)) {
    auto k = e.extracted.size();
    if (static_cast<int>(k) == n - 1 || (n == 2 && k == 0))
      out.add({e.extracted, e.quotient}, 1);
  }
  return out;
}

GradedTensor graded_coproduct(const Forest& f) {
  GradedTensor out;
  for (const auto& e : extractions(f))
    out.add(GradedKey{e.extracted, e.quotient, e.depth, e.depth}, 1);
  return out;
}

BigInt counit(const Forest& f) { return f.empty() ? 1 : 0; }

BigInt counit(const LinComb& x) { return x.coeff(Forest()); }

namespace {

class AntipodeCache {
 public:
  LinComb tree(const SynTree& t) {
    auto it = memo_.find(t.encoding());
    if (it != memo_.end()) return it->second;
    LinComb s;
    s.add(Forest::single(t), -1);
    for (const auto& e : extractions(Forest::single(t))) {
      if (e.sites.empty()) continue;                                // 1 (x) T
      if (e.sites.size() == 1 && e.sites[0].path.is_root()) continue;  // T (x) 1
      LinComb left = forest(e.extracted);
      left.scale(-1);
      for (const auto& [g, c] : product(left, LinComb::of(e.quotient)).terms())
        s.add(g, c);
    }
    memo_.emplace(t.encoding(), s);
    return s;
  }

  LinComb forest(const Forest& f) {
    LinComb acc = LinComb::of(Forest());
    for (const auto& t : f.components()) acc = product(acc, tree(t));
    return acc;
  }

 private:
  std::map<std::string, LinComb> memo_;
};

AntipodeCache& antipode_cache() {
  thread_local AntipodeCache cache;
  return cache;
}

}  // namespace

LinComb antipode(const Forest& f) { return antipode_cache().forest(f); }

LinComb antipode(const LinComb& x) {
  LinComb out;
  for (const auto& [f, c] : x.terms()) {
    LinComb s = antipode(f);
    s.scale(c);
    out.add(s);
  }
  return out;
}

LinComb antipode_convolution(const Forest& f) {
  LinComb out;
  for (const auto& e : extractions(f)) {
    LinComb term = product(antipode(e.extracted), LinComb::of(e.quotient));
    out.add(term);
  }
  return out;
}

namespace {

SynTree restrict_rec(const SynTree& t, const std::vector<bool>& keep,
                     int& next) {
  if (t.is_leaf()) {
    bool k = keep[static_cast<std::size_t>(next)];
    ++next;
    return k ? t : SynTree::unit();
  }
  SynTree l = restrict_rec(t.first(), keep, next);
  SynTree r = restrict_rec(t.second(), keep, next);
  return merge(l, r);
}

}  // namespace

SynTree restrict_to_leaves(const SynTree& t, const std::vector<int>& positions) {
  if (t.is_unit()) throw ConfigError("restrict_to_leaves: empty tree");
  std::vector<bool> keep(static_cast<std::size_t>(t.leaf_count()), false);
  for (int p : positions) {
    if (p < 0 || p >= t.leaf_count())
      throw AddressError("leaf position out of range");
    keep[static_cast<std::size_t>(p)] = true;
  }
  int next = 0;
  return restrict_rec(t, keep, next);
}

Tensor leaf_coproduct(const SynTree& t) {
  if (t.is_unit()) throw ConfigError("leaf_coproduct: empty tree");
  int n = t.leaf_count();
  if (n > 24) throw ConfigError("leaf_coproduct: too many leaves");
  Tensor out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> keep(static_cast<std::size_t>(n));
    std::vector<bool> drop(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      keep[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
      drop[static_cast<std::size_t>(i)] = !keep[static_cast<std::size_t>(i)];
    }
    int a = 0, b = 0;
    SynTree in = restrict_rec(t, keep, a);
    SynTree out_part = restrict_rec(t, drop, b);
    Forest lf = in.is_unit() ? Forest() : Forest::single(in);
    Forest rf = out_part.is_unit() ? Forest() : Forest::single(out_part);
    out.add({lf, rf}, 1);
  }
  return out;
}

Tensor3 coassoc_left(const Forest& f) {
  Tensor3 out;
  for (const auto& e : extractions(f)) {
    for (const auto& e2 : extractions(e.extracted))
      out.add({e2.extracted, e2.quotient, e.quotient}, 1);
  }
  return out;
}

Tensor3 coassoc_right(const Forest& f) {
  Tensor3 out;
  for (const auto& e : extractions(f)) {
    for (const auto& e2 : extractions(e.quotient))
      out.add({e.extracted, e2.extracted, e2.quotient}, 1);
  }
  return out;
}

Tensor compat_left(const Forest& f, const Forest& g) {
  return coproduct(f.disjoint_union(g));
}

Tensor compat_right(const Forest& f, const Forest& g) {
  Tensor df = coproduct(f);
  Tensor dg = coproduct(g);
  Tensor out;
  for (const auto& [kf, cf] : df.terms())
    for (const auto& [kg, cg] : dg.terms())
      out.add({kf.first.disjoint_union(kg.first),
               kf.second.disjoint_union(kg.second)},
              cf * cg);
  return out;
}

}  // namespace mergehopf
