#include "quillen/lie_basis.hpp"

#include <algorithm>
#include <mutex>

namespace quillen {

std::size_t WordIndex::id(const Word& w) {
  auto [it, inserted] = ids_.try_emplace(w, words_.size());
  if (inserted) words_.push_back(w);
  return it->second;
}

std::optional<std::size_t> WordIndex::find(const Word& w) const {
  auto it = ids_.find(w);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

SparseVector WordIndex::vectorize(const Tensor& t) {
  SparseVector v;
  v.reserve(t.size());
  for (const auto& [w, c] : t.terms()) v.emplace_back(id(w), c);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Tensor WordIndex::tensorize(const SparseVector& v) const {
  Tensor t;
  for (const auto& [i, c] : v) t.add_term(words_.at(i), c);
  return t;
}

SparseMatrix columns_to_matrix(const std::vector<SparseVector>& columns, std::size_t rows) {
  std::vector<SparseVector> row_data(rows);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, c] : columns[j]) row_data.at(i).emplace_back(j, c);
  return SparseMatrix::from_rows(columns.size(), std::move(row_data));
}

DenseVector to_dense(const SparseVector& v, std::size_t n) {
  DenseVector out(n);
  for (const auto& [i, c] : v) out.at(i) = c;
  return out;
}

std::vector<Letter> all_letters(std::size_t n) {
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Letter>(i);
  return out;
}

void for_each_multiset(const std::vector<Letter>& letters, Grading degrees, int degree,
                       std::size_t max_length, const std::function<void(const Multiset&)>& f) {
  std::vector<Letter> sorted = letters;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Multiset current;
  std::function<void(std::size_t, int, std::size_t)> rec = [&](std::size_t i, int remaining,
                                                               std::size_t length_left) {
    if (remaining == 0) {
      if (!current.empty()) f(current);
      return;
    }
    if (i == sorted.size() || length_left == 0) return;
    Letter l = sorted[i];
    int d = degrees[l];
    rec(i + 1, remaining, length_left);
    for (int count = 1; count * d <= remaining && static_cast<std::size_t>(count) <= length_left; ++count) {
      current.emplace_back(l, count);
      rec(i + 1, remaining - count * d, length_left - static_cast<std::size_t>(count));
      current.pop_back();
    }
  };
  rec(0, degree, max_length);
}

namespace {

// Independent left-normed words for a multiset pattern. Letters are relabeled
// 0..m-1 in increasing order; only counts and parities matter.
using Pattern = std::vector<std::pair<int, int>>;  // (count, parity)

std::vector<Word> compute_pattern_basis(const Pattern& pattern) {
  std::vector<int> grading;
  Word base;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    grading.push_back(pattern[i].second ? 1 : 2);
    for (int c = 0; c < pattern[i].first; ++c) base.push_back(static_cast<Letter>(i));
  }
  if (pattern.size() == 1) {
    int count = pattern[0].first;
    if (count == 1) return {base};
    if (count == 2 && pattern[0].second) return {base};
    return {};
  }
  std::vector<Word> chosen;
  WordIndex index;
  EchelonBasis basis;
  Word w = base;
  do {
    if (basis.insert(index.vectorize(left_normed(w, grading)))) chosen.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return chosen;
}

class PatternCache {
 public:
  std::vector<Word> get(const Pattern& p) {
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(p);
      if (it != cache_.end()) return it->second;
    }
    std::vector<Word> result = compute_pattern_basis(p);
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(p, std::move(result)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<Pattern, std::vector<Word>> cache_;
};

PatternCache& pattern_cache() {
  static PatternCache cache;
  return cache;
}

}  // namespace

std::vector<Word> lie_basis_words(const LieBasisQuery& q) {
  std::vector<Word> out;
  for_each_multiset(q.letters, q.degrees, q.degree, q.max_length, [&](const Multiset& ms) {
    if (q.accept && !q.accept(ms)) return;
    Pattern p;
    for (const auto& [l, c] : ms) p.emplace_back(c, q.degrees[l] & 1);
    for (const Word& pw : pattern_cache().get(p)) {
      Word w;
      w.reserve(pw.size());
      for (Letter i : pw) w.push_back(ms[i].first);
      out.push_back(std::move(w));
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LieBasisElement> lie_basis(const GeneratorSet& gens, int degree, std::size_t max_length) {
  LieBasisQuery q{gens.degrees(), all_letters(gens.size()), degree, max_length, {}};
  std::vector<LieBasisElement> out;
  for (Word& w : lie_basis_words(q)) {
    Tensor t = left_normed(w, gens.degrees());
    out.push_back({std::move(w), std::move(t)});
  }
  return out;
}

}  // namespace quillen
