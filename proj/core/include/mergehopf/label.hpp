#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mergehopf {

// Leaf alphabet. Labels are free-form tokens except for the delimiter
// characters of the tree grammar ({ } | * +), whitespace, and the token "1",
// which denotes the empty tree.
bool is_valid_label(const std::string& s);
void require_valid_label(const std::string& s);

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<std::string> labels);

  // One label per line; '#' starts a comment; blank lines ignored.
  static Lexicon load(const std::string& path);

  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(const std::string& s) const;
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

 private:
  std::vector<std::string> labels_;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mergehopf
