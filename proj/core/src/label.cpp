#include "mergehopf/label.hpp"

#include <algorithm>
#include <fstream>

namespace mergehopf {

bool is_valid_label(const std::string& s) {
  if (s.empty() || s == "1") return false;
  for (char c : s) {
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
        break;
    }
  }
  return true;
}

void require_valid_label(const std::string& s) {
  if (!is_valid_label(s))
    throw ConfigError("invalid label: \"" + s + "\"");
}

Lexicon::Lexicon(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ConfigError("lexicon is empty");
  for (const auto& l : labels_) require_valid_label(l);
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon file: " + path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    labels.push_back(line.substr(b, e - b + 1));
  }
  return Lexicon(std::move(labels));
}

bool Lexicon::contains(const std::string& s) const {
  return std::binary_search(labels_.begin(), labels_.end(), s);
}

}  // namespace mergehopf
