#include "mergehopf/nary.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "mergehopf/text.hpp"

namespace mergehopf {

struct NaryTree::Impl {
  std::string label;
  std::vector<NaryTree> children;  // canonically sorted
  std::string enc;
  int leaves = 0;
  int verts = 0;
};

bool NaryTree::is_leaf() const { return p_ && p_->children.empty(); }

bool NaryTree::is_node() const { return p_ && !p_->children.empty(); }

int NaryTree::leaf_count() const { return p_ ? p_->leaves : 0; }

int NaryTree::vertex_count() const { return p_ ? p_->verts : 0; }

NaryTree NaryTree::leaf(const std::string& label) {
  require_valid_label(label);
  auto impl = std::make_shared<Impl>();
  impl->label = label;
  impl->enc = label;
  impl->leaves = 1;
  impl->verts = 1;
  NaryTree t;
  t.p_ = std::move(impl);
  return t;
}

NaryTree NaryTree::node(std::vector<NaryTree> children) {
  if (children.size() < 2)
    throw std::logic_error("nary node needs at least two children");
  for (const auto& c : children)
    if (c.is_unit()) throw std::logic_error("unit cannot be a child");
  std::sort(children.begin(), children.end());
  auto impl = std::make_shared<Impl>();
  impl->enc = "{";
  impl->verts = 1;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) impl->enc += ' ';
    impl->enc += children[i].encoding();
    impl->leaves += children[i].leaf_count();
    impl->verts += children[i].vertex_count();
  }
  impl->enc += '}';
  impl->children = std::move(children);
  NaryTree t;
  t.p_ = std::move(impl);
  return t;
}

const std::string& NaryTree::label() const {
  if (!is_leaf()) throw std::logic_error("label() on non-leaf");
  return p_->label;
}

const std::vector<NaryTree>& NaryTree::children() const {
  if (!is_node()) throw std::logic_error("children() on non-node");
  return p_->children;
}

const std::string& NaryTree::encoding() const {
  static const std::string kUnit = "1";
  return p_ ? p_->enc : kUnit;
}

bool NaryTree::is_full_nary(int n) const {
  if (is_unit() || is_leaf()) return true;
  if (static_cast<int>(p_->children.size()) != n) return false;
  return std::all_of(p_->children.begin(), p_->children.end(),
                     [n](const NaryTree& c) { return c.is_full_nary(n); });
}

NaryTree nary_from_binary(const SynTree& t) {
  if (t.is_unit()) return NaryTree::unit();
  if (t.is_leaf()) return NaryTree::leaf(t.label());
  return NaryTree::node({nary_from_binary(t.first()), nary_from_binary(t.second())});
}

std::optional<SynTree> binary_from_nary(const NaryTree& t) {
  if (t.is_unit()) return SynTree::unit();
  if (t.is_leaf()) return SynTree::leaf(t.label());
  if (t.children().size() != 2) return std::nullopt;
  auto a = binary_from_nary(t.children()[0]);
  auto b = binary_from_nary(t.children()[1]);
  if (!a || !b) return std::nullopt;
  return SynTree::node(*a, *b);
}

bool NaryPath::is_prefix_of(const NaryPath& other) const {
  if (steps.size() > other.steps.size()) return false;
  return std::equal(steps.begin(), steps.end(), other.steps.begin());
}

bool NaryPath::is_strict_prefix_of(const NaryPath& other) const {
  return steps.size() < other.steps.size() && is_prefix_of(other);
}

bool NaryPath::disjoint_from(const NaryPath& other) const {
  return !is_prefix_of(other) && !other.is_prefix_of(*this);
}

NaryTree nary_subtree_at(const NaryTree& t, const NaryPath& v) {
  NaryTree cur = t;
  for (int s : v.steps) {
    if (!cur.is_node() || s < 0 ||
        static_cast<std::size_t>(s) >= cur.children().size())
      throw AddressError("nary path does not resolve");
    cur = cur.children()[static_cast<std::size_t>(s)];
  }
  if (cur.is_unit()) throw AddressError("nary path in empty tree");
  return cur;
}

namespace {

void collect_nary(const NaryTree& t, NaryPath& prefix,
                  std::vector<NaryPath>& out) {
  out.push_back(prefix);
  if (t.is_node()) {
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      prefix.steps.push_back(static_cast<int>(i));
      collect_nary(t.children()[i], prefix, out);
      prefix.steps.pop_back();
    }
  }
}

}  // namespace

std::vector<NaryPath> nary_all_vertices(const NaryTree& t) {
  std::vector<NaryPath> out;
  if (t.is_unit()) return out;
  NaryPath p;
  collect_nary(t, p, out);
  return out;
}

NaryForest::NaryForest(std::vector<NaryTree> components)
    : comps_(std::move(components)) {
  std::erase_if(comps_, [](const NaryTree& t) { return t.is_unit(); });
  std::sort(comps_.begin(), comps_.end());
  if (comps_.empty()) return;
  enc_.clear();
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) enc_ += " | ";
    enc_ += comps_[i].encoding();
  }
}

NaryForest NaryForest::single(const NaryTree& t) {
  return NaryForest(std::vector<NaryTree>{t});
}

int NaryForest::total_vertices() const {
  int n = 0;
  for (const auto& t : comps_) n += t.vertex_count();
  return n;
}

Counts nary_counts(const NaryForest& f) {
  Counts c;
  c.b0 = static_cast<long long>(f.size());
  c.sigma = f.total_vertices();
  c.acc = c.sigma - c.b0;
  c.sigma_hat = c.b0 + c.sigma;
  return c;
}

NaryTree graft(const NaryForest& f) {
  if (f.empty()) return NaryTree::unit();
  if (f.size() == 1) return f.components()[0];
  return NaryTree::node(f.components());
}

ProjectionRule constant_projection(const std::string& label) {
  return [label](const NaryTree&) { return label; };
}

NaryTree nary_merge(const std::vector<NaryTree>& args, int n) {
  if (static_cast<int>(args.size()) != n)
    throw PreconditionError("nary_merge: expected " + std::to_string(n) +
                            " arguments, got " + std::to_string(args.size()));
  for (const auto& a : args)
    if (a.is_unit()) throw PreconditionError("nary_merge: unit argument");
  return NaryTree::node(args);
}

namespace {

NaryTree contract_rec(const NaryTree& t, const std::vector<NaryPath>& sites,
                      std::size_t pos, const ProjectionRule& proj) {
  for (const auto& s : sites) {
    if (s.steps.size() == pos) {
      if (sites.size() > 1)
        throw AddressError("overlapping contraction sites");
      return NaryTree::leaf(proj(t));
    }
  }
  if (sites.empty()) return t;
  if (!t.is_node()) throw AddressError("contraction path does not resolve");
  std::vector<NaryTree> kids = t.children();
  std::map<int, std::vector<NaryPath>> by_child;
  for (const auto& s : sites) by_child[s.steps[pos]].push_back(s);
  for (auto& [i, sub] : by_child) {
    if (i < 0 || static_cast<std::size_t>(i) >= kids.size())
      throw AddressError("contraction path does not resolve");
    kids[static_cast<std::size_t>(i)] =
        contract_rec(kids[static_cast<std::size_t>(i)], sub, pos + 1, proj);
  }
  return NaryTree::node(std::move(kids));
}

}  // namespace

NaryTree contract_quotient(const NaryTree& t, const NaryPath& v,
                           const ProjectionRule& proj) {
  if (t.is_unit()) throw AddressError("contraction on the empty tree");
  if (v.is_root()) return NaryTree::unit();
  nary_subtree_at(t, v);  // address check
  return contract_rec(t, {v}, 0, proj);
}

namespace {

struct NarySite {
  int component;
  NaryPath path;

  friend bool operator==(const NarySite&, const NarySite&) = default;
  friend std::strong_ordering operator<=>(const NarySite&,
                                          const NarySite&) = default;
};

std::vector<NarySite> nary_occurrences(const NaryTree& pattern,
                                       const NaryForest& f) {
  std::vector<NarySite> out;
  for (std::size_t c = 0; c < f.size(); ++c)
    for (const auto& v : nary_all_vertices(f.components()[c]))
      if (nary_subtree_at(f.components()[c], v) == pattern)
        out.push_back({static_cast<int>(c), v});
  return out;
}

// Cancels the outermost matched sites of one component; nested matches sit
// inside a consumed copy and need no separate cancellation.  A root site
// consumes the whole component.
NaryTree cancel_component(const NaryTree& t, std::vector<NaryPath> sites,
                          const ProjectionRule& proj) {
  std::vector<NaryPath> maximal;
  for (const auto& s : sites) {
    bool nested = false;
    for (const auto& o : sites)
      if (o.is_strict_prefix_of(s)) {
        nested = true;
        break;
      }
    if (!nested) maximal.push_back(s);
  }
  for (const auto& m : maximal)
    if (m.is_root()) return NaryTree::unit();
  return contract_rec(t, maximal, 0, proj);
}

}  // namespace

NaryLinComb nary_merge_op(const std::vector<NaryTree>& search,
                          const NaryForest& f, const ProjectionRule& proj) {
  const int n = static_cast<int>(search.size());
  if (n < 2) throw PreconditionError("nary_merge_op: arity must be >= 2");
  std::vector<std::vector<NarySite>> occs;
  occs.reserve(search.size());
  for (const auto& s : search) {
    if (s.is_unit())
      throw PreconditionError("nary_merge_op: unit search term");
    occs.push_back(nary_occurrences(s, f));
  }

  NaryLinComb out;
  std::vector<NarySite> picked;
  std::function<void(std::size_t)> rec = [&](std::size_t slot) {
    if (slot == occs.size()) {
      std::map<int, std::vector<NaryPath>> per_comp;
      for (const auto& s : picked) per_comp[s.component].push_back(s.path);
      std::vector<NaryTree> comps;
      for (std::size_t c = 0; c < f.size(); ++c) {
        auto it = per_comp.find(static_cast<int>(c));
        if (it == per_comp.end()) {
          comps.push_back(f.components()[c]);
        } else {
          NaryTree q = cancel_component(f.components()[c], it->second, proj);
          if (!q.is_unit()) comps.push_back(q);
        }
      }
      comps.push_back(NaryTree::node(search));
      out.add(NaryForest(std::move(comps)), 1);
      return;
    }
    for (const auto& site : occs[slot]) {
      if (std::find(picked.begin(), picked.end(), site) != picked.end())
        continue;  // each occurrence serves one input
      picked.push_back(site);
      rec(slot + 1);
      picked.pop_back();
    }
  };
  rec(0);

  if (out.is_zero()) out.add(f, 1);
  return out;
}

namespace {

struct NaryCursor {
  const std::string& s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos);
  }
};

bool nary_label_char(char c) {
  switch (c) {
    case '{':
    case '}':
    case '|':
    case '*':
    case '+':
    case ' ':
    case '\t':
    case '\n':
    case '\r':
      return false;
    default:
      return true;
  }
}

NaryTree parse_nary_at(NaryCursor& c, int arity) {
  c.skip_ws();
  if (c.done()) c.fail("expected a tree");
  if (c.peek() == '{') {
    std::size_t open = c.pos;
    ++c.pos;
    std::vector<NaryTree> kids;
    while (true) {
      c.skip_ws();
      if (c.done()) c.fail("expected '}'");
      if (c.peek() == '}') {
        ++c.pos;
        break;
      }
      NaryTree k = parse_nary_at(c, arity);
      if (k.is_unit()) c.fail("unit cannot be a child");
      kids.push_back(std::move(k));
    }
    if (kids.size() < 2) c.fail("node needs at least two children");
    if (arity > 0 && static_cast<int>(kids.size()) != arity)
      throw ParseError("expected arity " + std::to_string(arity) + ", got " +
                           std::to_string(kids.size()),
                       open);
    return NaryTree::node(std::move(kids));
  }
  std::size_t start = c.pos;
  while (!c.done() && nary_label_char(c.peek())) ++c.pos;
  if (c.pos == start) c.fail("expected a label or '{'");
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok == "1") return NaryTree::unit();
  return NaryTree::leaf(tok);
}

}  // namespace

NaryTree parse_nary_tree(const std::string& text, int arity) {
  NaryCursor c{text};
  NaryTree t = parse_nary_at(c, arity);
  c.skip_ws();
  if (!c.done()) c.fail("trailing input after tree");
  return t;
}

NaryForest parse_nary_forest(const std::string& text, int arity) {
  NaryCursor c{text};
  std::vector<NaryTree> comps;
  while (true) {
    NaryTree t = parse_nary_at(c, arity);
    if (!t.is_unit()) comps.push_back(std::move(t));
    c.skip_ws();
    if (c.done()) break;
    if (c.peek() != '|') c.fail("expected '|' between forest components");
    ++c.pos;
  }
  return NaryForest(std::move(comps));
}

std::set<long long> reachable_lengths(int n, int k_max) {
  if (n < 2) throw ConfigError("reachable_lengths: n must be >= 2");
  std::set<long long> out;
  for (int k = 1; k <= k_max; ++k)
    out.insert(static_cast<long long>(k) * (n - 1) + 1);
  return out;
}

BigInt catalan(int r) {
  if (r < 0) throw ConfigError("catalan: negative index");
  return binomial(static_cast<unsigned long>(2 * r),
                  static_cast<unsigned long>(r)) /
         BigInt(r + 1);
}

BigInt fuss_catalan(int n, int k) {
  if (n < 2 || k < 0) throw ConfigError("fuss_catalan: bad arguments");
  return binomial(static_cast<unsigned long>(n) * static_cast<unsigned long>(k),
                  static_cast<unsigned long>(k)) /
         BigInt((n - 1) * k + 1);
}

BigInt undergeneration_gap(int n, int k, const BigInt& alphabet_size) {
  if (n < 3)
    throw ConfigError("undergeneration_gap: defined for n >= 3 only");
  if (k < 1) throw ConfigError("undergeneration_gap: k must be >= 1");
  long long ell = static_cast<long long>(k) * (n - 1) + 1;
  BigInt gap = catalan(k * (n - 1)) - fuss_catalan(n, k);
  return int_pow(alphabet_size, static_cast<unsigned long>(ell)) * gap;
}

OvergenCounts overgeneration_counts(int n, int k) {
  if (n < 3) throw ConfigError("overgeneration_counts: n must be >= 3");
  if (k < 1) throw ConfigError("overgeneration_counts: k must be >= 1");
  OvergenCounts c;
  c.n = n;
  c.k = k;
  c.ell = static_cast<long long>(k) * (n - 1) + 1;
  c.binary_nonroot = 2 * (c.ell - 1);
  c.nary_nonroot = BigInt(k) * n;
  c.binary_nonroot_nonleaf = c.ell - 2;
  c.binary_nonleaf_incl_root = c.ell - 1;
  c.nary_nonroot_nonleaf = k - 1;
  c.nary_tuples =
      falling_factorial(static_cast<unsigned long>(k) * static_cast<unsigned long>(n),
                        static_cast<unsigned long>(n - 1));
  if (k >= n)
    c.nary_tuples_o = falling_factorial(static_cast<unsigned long>(k - 1),
                                        static_cast<unsigned long>(n - 1));
  if (c.nary_tuples <= c.binary_nonroot)
    throw std::logic_error("overgeneration bound failed");
  return c;
}

std::vector<NaryTree> enumerate_nary_trees(const std::vector<std::string>& labels,
                                           int n, int max_internal) {
  if (labels.empty()) throw ConfigError("enumerate_nary_trees: empty alphabet");
  if (n < 2) throw ConfigError("enumerate_nary_trees: arity must be >= 2");
  // by_internal[k] = all canonical full n-ary trees with k internal vertices
  std::vector<std::vector<NaryTree>> by_internal;
  std::vector<NaryTree> leaves;
  for (const auto& l : labels) leaves.push_back(NaryTree::leaf(l));
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
  by_internal.push_back(leaves);
  for (int k = 1; k <= max_internal; ++k) {
    std::vector<NaryTree> acc;
    // choose child internal-counts summing to k-1
    std::vector<int> parts(static_cast<std::size_t>(n), 0);
    std::function<void(int, int, std::vector<NaryTree>&)> pick =
        [&](int slot, int remaining, std::vector<NaryTree>& kids) {
          if (slot == n) {
            if (remaining == 0) acc.push_back(NaryTree::node(kids));
            return;
          }
          for (int ki = 0; ki <= remaining; ++ki) {
            if (ki >= static_cast<int>(by_internal.size())) break;
            for (const auto& ch : by_internal[static_cast<std::size_t>(ki)]) {
              kids.push_back(ch);
              pick(slot + 1, remaining - ki, kids);
              kids.pop_back();
            }
          }
        };
    std::vector<NaryTree> kids;
    pick(0, k - 1, kids);
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    by_internal.push_back(std::move(acc));
  }
  std::vector<NaryTree> out;
  for (int k = 1; k <= max_internal; ++k)
    for (const auto& t : by_internal[static_cast<std::size_t>(k)])
      out.push_back(t);
  return out;
}

namespace {

// Planar shapes as strings: leaf = ".", node = "(" + children + ")".
void planar_shapes(int n, int k, std::vector<std::string>& out);

void planar_children(int n, int slot, int remaining,
                     std::vector<std::vector<std::string>>& memo,
                     std::string& acc, std::vector<std::string>& out) {
  if (slot == n) {
    if (remaining == 0) out.push_back("(" + acc + ")");
    return;
  }
  for (int ki = 0; ki <= remaining; ++ki) {
    for (const auto& shape : memo[static_cast<std::size_t>(ki)]) {
      std::size_t len = acc.size();
      acc += shape;
      planar_children(n, slot + 1, remaining - ki, memo, acc, out);
      acc.resize(len);
    }
  }
}

}  // namespace

BigInt count_planar_nary_shapes(int n, int k) {
  if (n < 2 || k < 0) throw ConfigError("count_planar_nary_shapes: bad args");
  std::vector<std::vector<std::string>> memo;
  memo.push_back({"."});
  for (int kk = 1; kk <= k; ++kk) {
    std::vector<std::string> out;
    std::string acc;
    planar_children(n, 0, kk - 1, memo, acc, out);
    memo.push_back(std::move(out));
  }
  return BigInt(memo[static_cast<std::size_t>(k)].size());
}

BigInt count_vertex_tuples(const NaryTree& t, int tuple_len,
                           bool include_leaves) {
  std::vector<NaryPath> eligible;
  for (const auto& v : nary_all_vertices(t)) {
    if (v.is_root()) continue;
    if (!include_leaves && nary_subtree_at(t, v).is_leaf()) continue;
    eligible.push_back(v);
  }
  BigInt count = 0;
  std::vector<std::size_t> picked;
  std::function<void(int)> rec = [&](int slot) {
    if (slot == tuple_len) {
      count += 1;
      return;
    }
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (std::find(picked.begin(), picked.end(), i) != picked.end()) continue;
      picked.push_back(i);
      rec(slot + 1);
      picked.pop_back();
    }
  };
  rec(0);
  return count;
}

}  // namespace mergehopf
