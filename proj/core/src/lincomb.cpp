#include "mergehopf/lincomb.hpp"

#include <sstream>

namespace mergehopf {

LinComb product(const LinComb& x, const LinComb& y) {
  LinComb out;
  for (const auto& [fx, cx] : x.terms())
    for (const auto& [fy, cy] : y.terms())
      out.add(fx.disjoint_union(fy), cx * cy);
  return out;
}

namespace {

std::string coeff_str(const BigInt& c) { return c.str(); }

}  // namespace

std::string to_string(const LinComb& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [f, c] : x.terms()) {
    if (!first) out += " + ";
    first = false;
    out += coeff_str(c);
    out += '*';
    out += f.encoding();
  }
  return out;
}

std::string to_string(const Tensor& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    if (!first) out += " + ";
    first = false;
    out += coeff_str(c);
    out += "*(";
    out += k.first.encoding();
    out += " (x) ";
    out += k.second.encoding();
    out += ')';
  }
  return out;
}

std::string to_string(const GradedTensor& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    if (!first) out += " + ";
    first = false;
    out += coeff_str(c);
    out += "*(";
    out += k.left.encoding();
    out += " (x) ";
    out += k.right.encoding();
    out += ")@eps^";
    out += std::to_string(k.eps_degree);
  }
  return out;
}

}  // namespace mergehopf
