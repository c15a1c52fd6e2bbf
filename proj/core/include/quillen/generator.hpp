#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace quillen {

/// Index of a generator inside its GeneratorSet.
using Letter = std::uint16_t;

/// Degrees indexed by Letter.
using Grading = std::span<const int>;

struct Generator {
  std::string id;
  int degree = 1;  // Quillen degree, >= 1
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Ordered, uniquely named set of positively graded generators.
class GeneratorSet {
 public:
  GeneratorSet() = default;

  Letter add(std::string id, int degree);

  std::size_t size() const noexcept { return gens_.size(); }
  bool empty() const noexcept { return gens_.empty(); }
  const Generator& operator[](Letter l) const { return gens_.at(l); }
  const std::vector<Generator>& all() const noexcept { return gens_; }

  std::optional<Letter> find(const std::string& id) const;
  Letter at(const std::string& id) const;

  Grading degrees() const noexcept { return degrees_; }
  int max_degree() const;

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<Generator> gens_;
  std::vector<int> degrees_;
  std::unordered_map<std::string, Letter> index_;
};

/// True if `id` is a valid generator identifier: [A-Za-z_][A-Za-z0-9_@]*,
/// optionally containing balanced `{...}` suspension groups.
bool is_valid_identifier(const std::string& id);

}  // namespace quillen

namespace quillen::detail {
/// Length of the identifier starting at `pos` (0 if none). Suspension groups
/// `{...}` must be balanced and may contain commas and nested identifiers.
std::size_t scan_identifier(std::string_view text, std::size_t pos);
}  // namespace quillen::detail
