#pragma once

// Degree-wise bases of free graded Lie algebras. Left-normed brackets of words
// span L(V); an independent subset is picked per letter multiset by rref on
// the tensor expansions (the multigrading by letter counts is preserved by the
// bracket, so different multisets never interact).

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quillen/generator.hpp"
#include "quillen/linalg.hpp"
#include "quillen/tensor.hpp"

namespace quillen {

/// Assigns dense column indices to tensor words.
class WordIndex {
 public:
  std::size_t id(const Word& w);
  std::optional<std::size_t> find(const Word& w) const;
  std::size_t size() const noexcept { return words_.size(); }
  const Word& word(std::size_t i) const { return words_.at(i); }

  /// Registers missing words.
  SparseVector vectorize(const Tensor& t);
  Tensor tensorize(const SparseVector& v) const;

 private:
  std::map<Word, std::size_t> ids_;
  std::vector<Word> words_;
};

/// Matrix whose j-th column is columns[j].
SparseMatrix columns_to_matrix(const std::vector<SparseVector>& columns, std::size_t rows);
DenseVector to_dense(const SparseVector& v, std::size_t n);

/// Sorted (letter, count) pairs, counts > 0.
using Multiset = std::vector<std::pair<Letter, int>>;
using MultisetFilter = std::function<bool(const Multiset&)>;

struct LieBasisQuery {
  Grading degrees;
  std::vector<Letter> letters;  // allowed letters
  int degree = 1;
  std::size_t max_length = std::numeric_limits<std::size_t>::max();
  MultisetFilter accept;  // empty accepts everything
};

/// Calls `f` for every multiset over `letters` of total degree `degree`.
void for_each_multiset(const std::vector<Letter>& letters, Grading degrees, int degree,
                       std::size_t max_length, const std::function<void(const Multiset&)>& f);

/// Words whose left-normed brackets form a basis; lexicographically sorted.
std::vector<Word> lie_basis_words(const LieBasisQuery& q);

struct LieBasisElement {
  Word word;
  Tensor expansion;
};

/// Basis of L(gens) in `degree`, restricted to words of length <= max_length.
std::vector<LieBasisElement> lie_basis(const GeneratorSet& gens, int degree,
                                       std::size_t max_length = std::numeric_limits<std::size_t>::max());

std::vector<Letter> all_letters(std::size_t n);

}  // namespace quillen
