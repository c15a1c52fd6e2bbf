#include "quillen/generator.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "quillen/errors.hpp"

namespace quillen {

namespace {
bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@'; }
}  // namespace

namespace detail {

std::size_t scan_identifier(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || !ident_start(text[pos])) return 0;
  std::size_t i = pos + 1;
  while (i < text.size()) {
    if (ident_char(text[i])) {
      ++i;
    } else if (text[i] == '{') {
      int depth = 0;
      std::size_t j = i;
      for (; j < text.size(); ++j) {
        char c = text[j];
        if (c == '{') {
          ++depth;
        } else if (c == '}') {
          if (--depth == 0) break;
        } else if (!ident_char(c) && c != ',') {
          return 0;
        }
      }
      if (j == text.size()) return 0;
      i = j + 1;
    } else {
      break;
    }
  }
  return i - pos;
}

}  // namespace detail

bool is_valid_identifier(const std::string& id) {
  return !id.empty() && detail::scan_identifier(id, 0) == id.size();
}

Letter GeneratorSet::add(std::string id, int degree) {
  if (!is_valid_identifier(id)) throw InputError("invalid generator id '" + id + "'");
  if (degree < 1) throw InputError("generator '" + id + "' must have degree >= 1");
  if (index_.count(id)) throw InputError("duplicate generator id '" + id + "'");
  if (gens_.size() >= std::numeric_limits<Letter>::max()) throw InputError("too many generators");
  Letter l = static_cast<Letter>(gens_.size());
  index_.emplace(id, l);
  gens_.push_back({std::move(id), degree});
  degrees_.push_back(degree);
  return l;
}

std::optional<Letter> GeneratorSet::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter GeneratorSet::at(const std::string& id) const {
  auto l = find(id);
  if (!l) throw InputError("unknown generator '" + id + "'");
  return *l;
}

int GeneratorSet::max_degree() const {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

}  // namespace quillen
