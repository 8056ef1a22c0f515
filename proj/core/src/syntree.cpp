#include "mergehopf/syntree.hpp"

#include <algorithm>
#include <map>

namespace mergehopf {

namespace {
const std::string kUnitEncoding = "1";
}

struct SynTree::Impl {
  std::string label;  // leaves only
  SynTree left, right;
  std::string enc;
  int leaves = 0;
  int verts = 0;
  int depth = 0;
};

bool SynTree::is_leaf() const { return p_ && p_->verts == 1; }

bool SynTree::is_node() const { return p_ && p_->verts > 1; }

int SynTree::leaf_count() const { return p_ ? p_->leaves : 0; }

int SynTree::vertex_count() const { return p_ ? p_->verts : 0; }

int SynTree::depth() const { return p_ ? p_->depth : 0; }

SynTree SynTree::leaf(const std::string& label) {
  require_valid_label(label);
  auto impl = std::make_shared<Impl>();
  impl->label = label;
  impl->enc = label;
  impl->leaves = 1;
  impl->verts = 1;
  impl->depth = 0;
  SynTree t;
  t.p_ = std::move(impl);
  return t;
}

SynTree SynTree::node(const SynTree& a, const SynTree& b) {
  if (a.is_unit() || b.is_unit())
    throw std::logic_error("unit cannot be a child of a node");
  const SynTree& l = (a.encoding() <= b.encoding()) ? a : b;
  const SynTree& r = (a.encoding() <= b.encoding()) ? b : a;
  auto impl = std::make_shared<Impl>();
  impl->left = l;
  impl->right = r;
  impl->enc.reserve(l.encoding().size() + r.encoding().size() + 3);
  impl->enc += '{';
  impl->enc += l.encoding();
  impl->enc += ' ';
  impl->enc += r.encoding();
  impl->enc += '}';
  impl->leaves = l.leaf_count() + r.leaf_count();
  impl->verts = l.vertex_count() + r.vertex_count() + 1;
  impl->depth = std::max(l.depth(), r.depth()) + 1;
  SynTree t;
  t.p_ = std::move(impl);
  return t;
}

const std::string& SynTree::label() const {
  if (!is_leaf()) throw std::logic_error("label() on non-leaf");
  return p_->label;
}

const SynTree& SynTree::first() const {
  if (!is_node()) throw std::logic_error("first() on non-node");
  return p_->left;
}

const SynTree& SynTree::second() const {
  if (!is_node()) throw std::logic_error("second() on non-node");
  return p_->right;
}

const std::string& SynTree::encoding() const {
  return p_ ? p_->enc : kUnitEncoding;
}

SynTree merge(const SynTree& a, const SynTree& b) {
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  return SynTree::node(a, b);
}

bool VertexPath::is_prefix_of(const VertexPath& other) const {
  return other.steps.size() >= steps.size() &&
         other.steps.compare(0, steps.size(), steps) == 0;
}

bool VertexPath::is_strict_prefix_of(const VertexPath& other) const {
  return steps.size() < other.steps.size() && is_prefix_of(other);
}

bool VertexPath::disjoint_from(const VertexPath& other) const {
  return !is_prefix_of(other) && !other.is_prefix_of(*this);
}

SynTree subtree_at(const SynTree& t, const VertexPath& v) {
  SynTree cur = t;
  for (char c : v.steps) {
    if (!cur.is_node())
      throw AddressError("path does not resolve: " + v.steps + " in " +
                         t.encoding());
    if (c == '0')
      cur = cur.first();
    else if (c == '1')
      cur = cur.second();
    else
      throw AddressError("bad path step '" + std::string(1, c) + "'");
  }
  if (cur.is_unit())
    throw AddressError("path does not resolve in the empty tree");
  return cur;
}

bool path_resolves(const SynTree& t, const VertexPath& v) {
  if (t.is_unit()) return false;
  SynTree cur = t;
  for (char c : v.steps) {
    if (!cur.is_node() || (c != '0' && c != '1')) return false;
    cur = (c == '0') ? cur.first() : cur.second();
  }
  return true;
}

namespace {

void collect_vertices(const SynTree& t, std::string& prefix,
                      std::vector<VertexPath>& out) {
  out.emplace_back(prefix);
  if (t.is_node()) {
    prefix.push_back('0');
    collect_vertices(t.first(), prefix, out);
    prefix.back() = '1';
    collect_vertices(t.second(), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<VertexPath> all_vertices(const SynTree& t) {
  std::vector<VertexPath> out;
  if (t.is_unit()) return out;
  std::string prefix;
  collect_vertices(t, prefix, out);
  return out;
}

std::vector<AccessibleTerm> accessible_terms(const SynTree& t) {
  std::vector<AccessibleTerm> out;
  for (auto& v : all_vertices(t)) {
    if (v.is_root()) continue;
    out.push_back({v, subtree_at(t, v), static_cast<int>(v.depth())});
  }
  return out;
}

namespace {

// Rebuilds t with the (pairwise-disjoint) addressed subtrees removed,
// contracting unary vertices on the way up.  Equivalent to quotienting the
// sites one at a time, in any order.  Returns the unit when everything is
// removed.
SynTree remove_sites(const SynTree& t, const std::vector<VertexPath>& sites,
                     std::size_t char_pos) {
  bool at_node = false;
  std::vector<VertexPath> left_sites, right_sites;
  for (const auto& s : sites) {
    if (s.steps.size() == char_pos) {
      if (sites.size() > 1)
        throw AddressError("overlapping quotient sites at " + s.steps);
      return SynTree::unit();
    }
    at_node = true;
    if (s.steps[char_pos] == '0')
      left_sites.push_back(s);
    else
      right_sites.push_back(s);
  }
  if (!at_node) return t;
  if (!t.is_node())
    throw AddressError("quotient path does not resolve in " + t.encoding());
  SynTree l = left_sites.empty()
                  ? t.first()
                  : remove_sites(t.first(), left_sites, char_pos + 1);
  SynTree r = right_sites.empty()
                  ? t.second()
                  : remove_sites(t.second(), right_sites, char_pos + 1);
  return merge(l, r);  // contracts when one side vanished
}

}  // namespace

SynTree quotient(const SynTree& t, const VertexPath& v) {
  if (!path_resolves(t, v))
    throw AddressError("quotient path does not resolve: " + v.steps);
  return remove_sites(t, {v}, 0);
}

SynTree tree_quotient(const SynTree& t, const std::vector<VertexPath>& vs) {
  if (vs.empty()) return t;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!path_resolves(t, vs[i]))
      throw AddressError("quotient path does not resolve: " + vs[i].steps);
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!vs[i].disjoint_from(vs[j]))
        throw AddressError("quotient sites overlap: " + vs[i].steps + ", " +
                           vs[j].steps);
  }
  return remove_sites(t, vs, 0);
}

Forest::Forest(std::vector<SynTree> components) : comps_(std::move(components)) {
  std::erase_if(comps_, [](const SynTree& t) { return t.is_unit(); });
  std::sort(comps_.begin(), comps_.end());
  if (comps_.empty()) {
    enc_ = "1";
    return;
  }
  enc_.clear();
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) enc_ += " | ";
    enc_ += comps_[i].encoding();
  }
}

Forest Forest::single(const SynTree& t) {
  return Forest(std::vector<SynTree>{t});
}

const SynTree& Forest::component(std::size_t i) const {
  if (i >= comps_.size()) throw AddressError("component index out of range");
  return comps_[i];
}

int Forest::total_leaves() const {
  int n = 0;
  for (const auto& t : comps_) n += t.leaf_count();
  return n;
}

int Forest::total_vertices() const {
  int n = 0;
  for (const auto& t : comps_) n += t.vertex_count();
  return n;
}

Forest Forest::disjoint_union(const Forest& other) const {
  std::vector<SynTree> all = comps_;
  all.insert(all.end(), other.comps_.begin(), other.comps_.end());
  return Forest(std::move(all));
}

Forest Forest::with_component(const SynTree& t) const {
  if (t.is_unit()) return *this;
  std::vector<SynTree> all = comps_;
  all.push_back(t);
  return Forest(std::move(all));
}

Forest Forest::without_component(std::size_t i) const {
  if (i >= comps_.size()) throw AddressError("component index out of range");
  std::vector<SynTree> all = comps_;
  all.erase(all.begin() + static_cast<std::ptrdiff_t>(i));
  return Forest(std::move(all));
}

Forest Forest::replace_component(std::size_t i, const SynTree& t) const {
  if (i >= comps_.size()) throw AddressError("component index out of range");
  std::vector<SynTree> all = comps_;
  if (t.is_unit())
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(i));
  else
    all[i] = t;
  return Forest(std::move(all));
}

Counts counts(const Forest& f) {
  Counts c;
  c.b0 = static_cast<long long>(f.size());
  c.sigma = f.total_vertices();
  c.acc = c.sigma - c.b0;
  c.sigma_hat = c.b0 + c.sigma;
  return c;
}

Forest forest_quotient(const Forest& f, const std::vector<SiteRef>& sites) {
  std::map<int, std::vector<VertexPath>> per_component;
  for (const auto& s : sites) {
    if (s.component < 0 || static_cast<std::size_t>(s.component) >= f.size())
      throw AddressError("component index out of range");
    per_component[s.component].push_back(s.path);
  }
  std::vector<SynTree> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto it = per_component.find(static_cast<int>(i));
    if (it == per_component.end()) {
      out.push_back(f.component(i));
    } else {
      SynTree q = tree_quotient(f.component(i), it->second);
      if (!q.is_unit()) out.push_back(q);
    }
  }
  return Forest(std::move(out));
}

namespace {

// Trees with exactly n leaves, memoized per alphabet instance.
class TreeEnumerator {
 public:
  explicit TreeEnumerator(const std::vector<std::string>& labels) {
    std::vector<SynTree> base;
    base.reserve(labels.size());
    for (const auto& l : labels) base.push_back(SynTree::leaf(l));
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    by_leaves_.push_back({});  // index 0 unused
    by_leaves_.push_back(std::move(base));
  }

  const std::vector<SynTree>& exact(int n) {
    while (static_cast<int>(by_leaves_.size()) <= n) {
      int m = static_cast<int>(by_leaves_.size());
      std::vector<SynTree> acc;
      for (int j = 1; j <= m / 2; ++j) {
        const auto& lo = by_leaves_[static_cast<std::size_t>(j)];
        const auto& hi = by_leaves_[static_cast<std::size_t>(m - j)];
        for (const auto& a : lo)
          for (const auto& b : hi) acc.push_back(merge(a, b));
      }
      std::sort(acc.begin(), acc.end());
      acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
      by_leaves_.push_back(std::move(acc));
    }
    return by_leaves_[static_cast<std::size_t>(n)];
  }

 private:
  std::vector<std::vector<SynTree>> by_leaves_;
};

}  // namespace

std::vector<SynTree> enumerate_trees_exact(
    const std::vector<std::string>& labels, int n_leaves) {
  if (labels.empty()) throw ConfigError("enumerate_trees: empty alphabet");
  if (n_leaves < 1) return {};
  TreeEnumerator en(labels);
  return en.exact(n_leaves);
}

std::vector<SynTree> enumerate_trees(const std::vector<std::string>& labels,
                                     int max_leaves) {
  if (labels.empty()) throw ConfigError("enumerate_trees: empty alphabet");
  if (max_leaves < 1)
    throw ConfigError("enumerate_trees: max_leaves must be >= 1");
  TreeEnumerator en(labels);
  std::vector<SynTree> out;
  for (int n = 1; n <= max_leaves; ++n) {
    const auto& tier = en.exact(n);
    out.insert(out.end(), tier.begin(), tier.end());
  }
  return out;
}

namespace {

// Forests as non-decreasing component sequences over a weighted tree pool.
void forests_rec(const std::vector<SynTree>& pool,
                 const std::vector<int>& weight, std::size_t min_index,
                 int budget, std::vector<SynTree>& cur,
                 std::vector<Forest>& out) {
  for (std::size_t i = min_index; i < pool.size(); ++i) {
    if (weight[i] > budget) continue;
    cur.push_back(pool[i]);
    out.push_back(Forest(cur));
    forests_rec(pool, weight, i, budget - weight[i], cur, out);
    cur.pop_back();
  }
}

std::vector<Forest> enumerate_forests_weighted(const std::vector<SynTree>& pool,
                                               const std::vector<int>& weight,
                                               int budget) {
  std::vector<Forest> out;
  std::vector<SynTree> cur;
  forests_rec(pool, weight, 0, budget, cur, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Forest> enumerate_forests(const std::vector<std::string>& labels,
                                      int max_total_leaves) {
  auto pool = enumerate_trees(labels, max_total_leaves);
  std::vector<int> weight;
  weight.reserve(pool.size());
  for (const auto& t : pool) weight.push_back(t.leaf_count());
  return enumerate_forests_weighted(pool, weight, max_total_leaves);
}

std::vector<Forest> enumerate_forests_by_vertices(
    const std::vector<std::string>& labels, int max_total_vertices) {
  int max_leaves = (max_total_vertices + 1) / 2;
  if (max_leaves < 1) return {};
  auto all = enumerate_trees(labels, max_leaves);
  std::vector<SynTree> pool;
  for (auto& t : all)
    if (t.vertex_count() <= max_total_vertices) pool.push_back(t);
  std::vector<int> weight;
  weight.reserve(pool.size());
  for (const auto& t : pool) weight.push_back(t.vertex_count());
  return enumerate_forests_weighted(pool, weight, max_total_vertices);
}

}  // namespace mergehopf
