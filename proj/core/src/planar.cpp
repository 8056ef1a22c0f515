#include "mergehopf/planar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "mergehopf/nary.hpp"
#include "mergehopf/text.hpp"

#include <json.hpp>

namespace mergehopf {

struct PlanarTree::Impl {
  std::string label;
  std::optional<PlanarTree> left, right;
  std::string enc;
  int leaves = 0;
  int depth = 0;
};

bool PlanarTree::is_leaf() const { return p_->leaves == 1; }

bool PlanarTree::is_node() const { return p_->leaves > 1; }

const std::string& PlanarTree::encoding() const { return p_->enc; }

int PlanarTree::leaf_count() const { return p_->leaves; }

int PlanarTree::depth() const { return p_->depth; }

PlanarTree PlanarTree::leaf(const std::string& label) {
  require_valid_label(label);
  auto impl = std::make_shared<Impl>();
  impl->label = label;
  impl->enc = label;
  impl->leaves = 1;
  impl->depth = 0;
  return PlanarTree(std::move(impl));
}

PlanarTree PlanarTree::node(const PlanarTree& first, const PlanarTree& second) {
  auto impl = std::make_shared<Impl>();
  impl->left = first;
  impl->right = second;
  impl->enc = "{" + first.encoding() + " " + second.encoding() + "}";
  impl->leaves = first.leaf_count() + second.leaf_count();
  impl->depth = std::max(first.depth(), second.depth()) + 1;
  return PlanarTree(std::move(impl));
}

const std::string& PlanarTree::label() const {
  if (!is_leaf()) throw std::logic_error("label() on non-leaf");
  return p_->label;
}

const PlanarTree& PlanarTree::first() const {
  if (!is_node()) throw std::logic_error("first() on leaf");
  return *p_->left;
}

const PlanarTree& PlanarTree::second() const {
  if (!is_node()) throw std::logic_error("second() on leaf");
  return *p_->right;
}

std::vector<std::string> PlanarTree::leaf_sequence() const {
  std::vector<std::string> out;
  std::function<void(const PlanarTree&)> walk = [&](const PlanarTree& t) {
    if (t.is_leaf()) {
      out.push_back(t.label());
      return;
    }
    walk(t.first());
    walk(t.second());
  };
  walk(*this);
  return out;
}

std::string planar_forest_encoding(const PlanarForest& f) {
  if (f.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += " | ";
    out += f[i].encoding();
  }
  return out;
}

namespace {

struct PlanarCursor {
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

bool planar_label_char(char c) {
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

PlanarTree parse_planar_at(PlanarCursor& c) {
  c.skip_ws();
  if (c.done()) c.fail("expected a tree");
  if (c.peek() == '{') {
    ++c.pos;
    PlanarTree a = parse_planar_at(c);
    PlanarTree b = parse_planar_at(c);
    c.skip_ws();
    if (c.done() || c.peek() != '}') c.fail("expected '}'");
    ++c.pos;
    return PlanarTree::node(a, b);
  }
  std::size_t start = c.pos;
  while (!c.done() && planar_label_char(c.peek())) ++c.pos;
  if (c.pos == start) c.fail("expected a label or '{'");
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok == "1")
    throw ParseError("the empty tree has no planar form", start);
  return PlanarTree::leaf(tok);
}

}  // namespace

PlanarTree parse_planar_tree(const std::string& text) {
  PlanarCursor c{text};
  PlanarTree t = parse_planar_at(c);
  c.skip_ws();
  if (!c.done()) c.fail("trailing input after tree");
  return t;
}

PlanarForest parse_planar_forest(const std::string& text) {
  PlanarCursor c{text};
  PlanarForest out;
  while (true) {
    out.push_back(parse_planar_at(c));
    c.skip_ws();
    if (c.done()) break;
    if (c.peek() != '|') c.fail("expected '|' between forest components");
    ++c.pos;
  }
  return out;
}

SynTree project(const PlanarTree& p) {
  if (p.is_leaf()) return SynTree::leaf(p.label());
  return merge(project(p.first()), project(p.second()));
}

Forest project(const PlanarForest& f) {
  std::vector<SynTree> comps;
  comps.reserve(f.size());
  for (const auto& t : f) comps.push_back(project(t));
  return Forest(std::move(comps));
}

std::string OrderParams::head_label(const SynTree& t) const {
  SynTree cur = t;
  while (cur.is_node())
    cur = (head_rule == HeadRule::FirstLeaf) ? cur.first() : cur.second();
  return cur.label();
}

bool OrderParams::precedes(const SynTree& a, const SynTree& b) const {
  auto rank = [this](const std::string& label) {
    auto it = std::find(precedence.begin(), precedence.end(), label);
    return it == precedence.end()
               ? precedence.size()
               : static_cast<std::size_t>(it - precedence.begin());
  };
  std::size_t ra = rank(head_label(a));
  std::size_t rb = rank(head_label(b));
  if (ra != rb) return ra < rb;
  return a.encoding() <= b.encoding();
}

bool FilterSpec::passes(const PlanarTree& t) const {
  switch (kind) {
    case Kind::MaxDepth:
      return t.depth() <= max_depth;
    case Kind::ForbidSubtree: {
      PlanarTree pat = parse_planar_tree(pattern);
      std::function<bool(const PlanarTree&)> contains =
          [&](const PlanarTree& u) {
            if (u == pat) return true;
            if (u.is_leaf()) return false;
            return contains(u.first()) || contains(u.second());
          };
      return !contains(t);
    }
    case Kind::ForbidAdjacent: {
      auto seq = t.leaf_sequence();
      for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] == left_label && seq[i + 1] == right_label) return false;
      return true;
    }
  }
  return true;
}

std::string FilterSpec::describe() const {
  switch (kind) {
    case Kind::MaxDepth:
      return "max-depth " + std::to_string(max_depth);
    case Kind::ForbidSubtree:
      return "forbid-subtree " + pattern;
    case Kind::ForbidAdjacent:
      return "forbid-adjacent " + left_label + " " + right_label;
  }
  return "?";
}

bool LanguageSpec::bit_enabled(int bit) const {
  if (bit < 0) return false;
  if (static_cast<std::size_t>(bit) < pi.size()) return pi[static_cast<std::size_t>(bit)];
  return pi.empty();  // with no explicit vector, listed filters are enabled
}

std::vector<const FilterSpec*> LanguageSpec::enabled_filters() const {
  std::vector<const FilterSpec*> out;
  for (const auto& f : filters)
    if (bit_enabled(f.bit)) out.push_back(&f);
  return out;
}

LanguageSpec LanguageSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("language spec: ") + e.what());
  }
  LanguageSpec spec;
  if (j.contains("name")) spec.name = j["name"].get<std::string>();
  if (j.contains("order")) {
    const auto& o = j["order"];
    if (o.contains("precedence"))
      for (const auto& l : o["precedence"])
        spec.order.precedence.push_back(l.get<std::string>());
    if (o.contains("head_rule")) {
      std::string r = o["head_rule"].get<std::string>();
      if (r == "first_leaf")
        spec.order.head_rule = OrderParams::HeadRule::FirstLeaf;
      else if (r == "last_leaf")
        spec.order.head_rule = OrderParams::HeadRule::LastLeaf;
      else
        throw ConfigError("language spec: unknown head_rule " + r);
    }
  }
  if (j.contains("pi"))
    for (const auto& b : j["pi"]) spec.pi.push_back(b.get<int>() != 0);
  if (j.contains("filters")) {
    for (const auto& f : j["filters"]) {
      FilterSpec fs;
      fs.bit = f.value("bit", static_cast<int>(spec.filters.size()));
      std::string kind = f.at("kind").get<std::string>();
      if (kind == "max_depth") {
        fs.kind = FilterSpec::Kind::MaxDepth;
        fs.max_depth = f.at("args").at(0).get<int>();
      } else if (kind == "forbid_subtree") {
        fs.kind = FilterSpec::Kind::ForbidSubtree;
        fs.pattern = f.at("args").at(0).get<std::string>();
        parse_planar_tree(fs.pattern);  // validate now
      } else if (kind == "forbid_adjacent") {
        fs.kind = FilterSpec::Kind::ForbidAdjacent;
        fs.left_label = f.at("args").at(0).get<std::string>();
        fs.right_label = f.at("args").at(1).get<std::string>();
      } else {
        throw ConfigError("language spec: unknown filter kind " + kind);
      }
      spec.filters.push_back(std::move(fs));
    }
  }
  return spec;
}

LanguageSpec LanguageSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open language spec: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

PlanarTree section(const SynTree& t, const LanguageSpec& lang) {
  if (t.is_unit()) throw ConfigError("section: empty tree");
  if (t.is_leaf()) return PlanarTree::leaf(t.label());
  PlanarTree a = section(t.first(), lang);
  PlanarTree b = section(t.second(), lang);
  if (lang.order.precedes(t.first(), t.second())) return PlanarTree::node(a, b);
  return PlanarTree::node(b, a);
}

PlanarForest section(const Forest& f, const LanguageSpec& lang) {
  PlanarForest out;
  out.reserve(f.size());
  for (const auto& t : f.components()) out.push_back(section(t, lang));
  return out;
}

PlanarTree nc_merge(const PlanarTree& a, const PlanarTree& b) {
  return PlanarTree::node(a, b);
}

std::string malcev_encode(const PlanarTree& p) {
  if (p.is_leaf()) return p.label();
  return "c " + malcev_encode(p.first()) + " " + malcev_encode(p.second());
}

namespace {

struct MalcevToken {
  std::string text;
  std::size_t offset;
};

PlanarTree malcev_parse(const std::vector<MalcevToken>& toks, std::size_t& i,
                        std::size_t end_offset) {
  if (i >= toks.size())
    throw ParseError("truncated prefix encoding", end_offset);
  const MalcevToken& tok = toks[i++];
  if (tok.text == "c") {
    PlanarTree a = malcev_parse(toks, i, end_offset);
    PlanarTree b = malcev_parse(toks, i, end_offset);
    return PlanarTree::node(a, b);
  }
  if (!is_valid_label(tok.text))
    throw ParseError("bad token \"" + tok.text + "\"", tok.offset);
  return PlanarTree::leaf(tok.text);
}

}  // namespace

PlanarTree malcev_decode(const std::string& text) {
  std::vector<MalcevToken> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    toks.push_back({text.substr(start, i - start), start});
  }
  if (toks.empty()) throw ParseError("empty prefix encoding", 0);
  std::size_t pos = 0;
  PlanarTree t = malcev_parse(toks, pos, text.size());
  if (pos != toks.size())
    throw ParseError("trailing tokens after tree", toks[pos].offset);
  return t;
}

bool passes_filter(const PlanarTree& t, const LanguageSpec& lang) {
  for (const auto* f : lang.enabled_filters())
    if (!f->passes(t)) return false;
  return true;
}

bool passes_filter(const PlanarForest& f, const LanguageSpec& lang) {
  return std::all_of(f.begin(), f.end(), [&](const PlanarTree& t) {
    return passes_filter(t, lang);
  });
}

std::variant<PlanarForest, FilterRejection> filter(const PlanarForest& f,
                                                   const LanguageSpec& lang) {
  for (std::size_t c = 0; c < f.size(); ++c)
    for (const auto* spec : lang.enabled_filters())
      if (!spec->passes(f[c]))
        return FilterRejection{spec->bit, static_cast<int>(c),
                               spec->describe()};
  return f;
}

std::optional<PlanarTree> restricted_merge(const PlanarTree& a,
                                           const PlanarTree& b,
                                           const LanguageSpec& lang) {
  if (!passes_filter(a, lang) || !passes_filter(b, lang))
    throw PreconditionError("restricted merge: inputs must pass the filter");
  PlanarTree m = nc_merge(a, b);
  if (!passes_filter(m, lang)) return std::nullopt;
  return m;
}

namespace {

// Planar vertex addressing mirrors the abstract one, but against the stored
// order.
std::vector<VertexPath> planar_vertices(const PlanarTree& t) {
  std::vector<VertexPath> out;
  std::string prefix;
  std::function<void(const PlanarTree&)> walk = [&](const PlanarTree& u) {
    out.emplace_back(prefix);
    if (u.is_node()) {
      prefix.push_back('0');
      walk(u.first());
      prefix.back() = '1';
      walk(u.second());
      prefix.pop_back();
    }
  };
  walk(t);
  return out;
}

PlanarTree planar_subtree_at(const PlanarTree& t, const VertexPath& v) {
  PlanarTree cur = t;
  for (char c : v.steps) {
    if (!cur.is_node()) throw AddressError("planar path does not resolve");
    cur = (c == '0') ? cur.first() : cur.second();
  }
  return cur;
}

// Removes the addressed subtree; the sibling replaces the parent.  Returns
// nullopt when the root is removed.
std::optional<PlanarTree> planar_quotient(const PlanarTree& t,
                                          const VertexPath& v) {
  if (v.is_root()) return std::nullopt;
  std::function<PlanarTree(const PlanarTree&, std::size_t)> rec =
      [&](const PlanarTree& u, std::size_t pos) -> PlanarTree {
    bool go_left = v.steps[pos] == '0';
    if (pos + 1 == v.steps.size())
      return go_left ? u.second() : u.first();
    if (go_left) return PlanarTree::node(rec(u.first(), pos + 1), u.second());
    return PlanarTree::node(u.first(), rec(u.second(), pos + 1));
  };
  return rec(t, 0);
}

// New merged component in front, quotient in place: a fixed, deterministic
// layout for the ordered workspace.
PlanarForest rho_term(const PlanarTree& merged, const PlanarForest& f,
                      std::size_t comp, const std::optional<PlanarTree>& rest) {
  PlanarForest out;
  out.push_back(merged);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == comp) {
      if (rest) out.push_back(*rest);
    } else {
      out.push_back(f[i]);
    }
  }
  return out;
}

}  // namespace

PlanarLinComb planar_rho(const PlanarTree& t, const PlanarForest& f) {
  PlanarLinComb out;
  {
    PlanarForest id_term;
    id_term.push_back(t);
    id_term.insert(id_term.end(), f.begin(), f.end());
    out.add(planar_forest_encoding(id_term), 1);
  }
  for (std::size_t c = 0; c < f.size(); ++c) {
    for (const auto& v : planar_vertices(f[c])) {
      PlanarTree sub = planar_subtree_at(f[c], v);
      auto rest = planar_quotient(f[c], v);
      out.add(planar_forest_encoding(rho_term(nc_merge(t, sub), f, c, rest)), 1);
    }
  }
  return out;
}

PlanarLinComb restricted_rho(const PlanarTree& t, const PlanarForest& f,
                             const LanguageSpec& lang) {
  if (!passes_filter(t, lang) || !passes_filter(f, lang))
    throw PreconditionError("restricted action: inputs must pass the filter");
  PlanarLinComb out;
  {
    PlanarForest id_term;
    id_term.push_back(t);
    id_term.insert(id_term.end(), f.begin(), f.end());
    if (passes_filter(id_term, lang))
      out.add(planar_forest_encoding(id_term), 1);
  }
  for (std::size_t c = 0; c < f.size(); ++c) {
    for (const auto& v : planar_vertices(f[c])) {
      PlanarTree sub = planar_subtree_at(f[c], v);
      auto rest = planar_quotient(f[c], v);
      if (!passes_filter(sub, lang)) continue;
      if (rest && !passes_filter(*rest, lang)) continue;
      PlanarForest term = rho_term(nc_merge(t, sub), f, c, rest);
      if (!passes_filter(term, lang)) continue;
      out.add(planar_forest_encoding(term), 1);
    }
  }
  return out;
}

std::vector<PlanarTree> enumerate_planar_trees(
    const std::vector<std::string>& labels, int n_leaves) {
  if (labels.empty()) throw ConfigError("enumerate_planar_trees: empty alphabet");
  if (n_leaves < 1) return {};
  std::vector<std::vector<PlanarTree>> by_leaves;
  by_leaves.push_back({});
  std::vector<PlanarTree> base;
  for (const auto& l : labels) base.push_back(PlanarTree::leaf(l));
  by_leaves.push_back(std::move(base));
  for (int n = 2; n <= n_leaves; ++n) {
    std::vector<PlanarTree> acc;
    for (int j = 1; j <= n - 1; ++j)
      for (const auto& a : by_leaves[static_cast<std::size_t>(j)])
        for (const auto& b : by_leaves[static_cast<std::size_t>(n - j)])
          acc.push_back(PlanarTree::node(a, b));
    by_leaves.push_back(std::move(acc));
  }
  return by_leaves[static_cast<std::size_t>(n_leaves)];
}

std::vector<GradeDimensions> grade_dimensions(
    const LanguageSpec& lang, const std::vector<std::string>& labels,
    int max_grade, long long tree_budget) {
  std::vector<GradeDimensions> table;
  auto enabled = lang.enabled_filters();
  for (int ell = 1; ell <= max_grade; ++ell) {
    GradeDimensions row;
    row.grade = ell;
    BigInt expected = int_pow(BigInt(static_cast<long long>(labels.size())),
                              static_cast<unsigned long>(ell)) *
                      catalan(ell - 1);
    if (expected > tree_budget) {
      row.truncated = true;
      table.push_back(std::move(row));
      break;
    }
    auto trees = enumerate_planar_trees(labels, ell);
    row.dim_all = BigInt(static_cast<long long>(trees.size()));
    row.dim_bit.assign(enabled.size(), BigInt(0));
    row.dim_lang = 0;
    for (const auto& t : trees) {
      bool all_pass = true;
      for (std::size_t i = 0; i < enabled.size(); ++i) {
        bool pass = enabled[i]->passes(t);
        if (pass)
          row.dim_bit[i] += 1;
        else
          all_pass = false;
      }
      if (all_pass) row.dim_lang += 1;
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace mergehopf
