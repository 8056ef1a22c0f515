#pragma once

#include <stdexcept>
#include <string>

#include "mergehopf/syntree.hpp"

namespace mergehopf {

// Shared text grammar:
//   tree   := "1" | LABEL | "{" tree WS tree "}"
//   forest := tree (WS "|" WS tree)*
//   LABEL  := [^{}|*+ \t\n]+
// Parsing canonicalizes: children are reordered, unit children collapse via
// the magma unit rules, and unit forest components are dropped.  Formatting
// always emits the canonical encoding, so parse(format(x)) == x.

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " (byte " + std::to_string(off) + ")"),
        offset(off) {}
};

SynTree parse_tree(const std::string& text);
Forest parse_forest(const std::string& text);

const std::string& format(const SynTree& t);
const std::string& format(const Forest& f);

}  // namespace mergehopf
