#pragma once

// Tensor-algebra normal form for elements of free graded Lie algebras.
// A Lie element is stored as its image under L(V) -> T(V), where
// [a,b] = a*b - (-1)^{|a||b|} b*a.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "quillen/generator.hpp"
#include "quillen/linalg.hpp"

namespace quillen {

using Word = std::vector<Letter>;

int word_degree(const Word& w, Grading degrees);

inline int koszul_sign(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

class Tensor {
 public:
  using Terms = std::map<Word, Rational>;

  Tensor() = default;
  static Tensor letter(Letter l, const Rational& coeff = 1);
  static Tensor word(Word w, const Rational& coeff = 1);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }

  void add_term(const Word& w, const Rational& c);
  Rational coefficient(const Word& w) const;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(const Rational& c);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator-(Tensor a) { return a *= -1; }
  friend Tensor operator*(const Rational& c, Tensor a) { return a *= c; }
  /// Concatenation product in T(V).
  friend Tensor operator*(const Tensor& a, const Tensor& b);

  friend bool operator==(const Tensor&, const Tensor&) = default;

  /// Homogeneous degree, or nullopt for zero. Throws InputError if mixed.
  std::optional<int> degree(Grading degrees) const;

  /// Keeps the terms whose word satisfies `keep`.
  Tensor filter(const std::function<bool(const Word&)>& keep) const;
  /// Component of word length k.
  Tensor length_component(std::size_t k) const;
  std::size_t max_length() const;

  /// Applies a letter renaming; letters mapped to nullopt kill the word.
  Tensor relabel(const std::function<std::optional<Letter>(Letter)>& map) const;

 private:
  Terms terms_;
};

/// Graded commutator a*b - (-1)^{|a||b|} b*a for homogeneous a, b.
Tensor bracket(const Tensor& a, const Tensor& b, Grading degrees);

/// Left-normed bracket [[..[w0,w1],..],wk].
Tensor left_normed(const Word& w, Grading degrees);

/// Applies the algebra morphism T(V) -> T(V') defined by letter images.
Tensor substitute(const Tensor& x, const std::vector<Tensor>& images);

/// Extends a degree -1 map on letters to a graded derivation of T(V).
Tensor apply_derivation(const Tensor& x, const std::vector<Tensor>& on_letters, Grading degrees);

}  // namespace quillen
