#include "mergehopf/text.hpp"

#include <cctype>

namespace mergehopf {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' ||
                       s[pos] == '\r'))
      ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos);
  }
};

bool is_label_char(char c) {
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

SynTree parse_tree_at(Cursor& c) {
  c.skip_ws();
  if (c.done()) c.fail("expected a tree");
  if (c.peek() == '{') {
    ++c.pos;
    SynTree a = parse_tree_at(c);
    c.skip_ws();
    if (c.done() || c.peek() == '}')
      c.fail("expected a second subtree");
    SynTree b = parse_tree_at(c);
    c.skip_ws();
    if (c.done() || c.peek() != '}') c.fail("expected '}'");
    ++c.pos;
    return merge(a, b);
  }
  std::size_t start = c.pos;
  while (!c.done() && is_label_char(c.peek())) ++c.pos;
  if (c.pos == start) c.fail("expected a label or '{'");
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok == "1") return SynTree::unit();
  return SynTree::leaf(tok);
}

}  // namespace

SynTree parse_tree(const std::string& text) {
  Cursor c{text};
  SynTree t = parse_tree_at(c);
  c.skip_ws();
  if (!c.done()) c.fail("trailing input after tree");
  return t;
}

Forest parse_forest(const std::string& text) {
  Cursor c{text};
  std::vector<SynTree> comps;
  while (true) {
    SynTree t = parse_tree_at(c);
    if (!t.is_unit()) comps.push_back(t);
    c.skip_ws();
    if (c.done()) break;
    if (c.peek() != '|') c.fail("expected '|' between forest components");
    ++c.pos;
  }
  return Forest(std::move(comps));
}

const std::string& format(const SynTree& t) { return t.encoding(); }

const std::string& format(const Forest& f) { return f.encoding(); }

}  // namespace mergehopf
