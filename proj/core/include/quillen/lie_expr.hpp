#pragma once

// Formal Lie expressions, their tensor expansion, and the text grammar
//   expr   := term (("+" | "-") term)*
//   term   := [coef "*"] factor
//   factor := IDENT | "[" expr "," expr "]" | "(" expr ")"
//   coef   := ["-"] INT ["/" POSINT]

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "quillen/generator.hpp"
#include "quillen/linalg.hpp"
#include "quillen/tensor.hpp"

namespace quillen {

class LieExpr {
 public:
  enum class Kind { Generator, Bracket, Scale, Sum };

  static LieExpr generator(Letter l, int degree);
  static LieExpr bracket(const LieExpr& a, const LieExpr& b);
  static LieExpr scale(const Rational& c, const LieExpr& e);
  /// Throws InputError on a mixed-degree sum. An empty sum is the zero of `degree`.
  static LieExpr sum(std::vector<LieExpr> terms, int degree);
  static LieExpr zero(int degree) { return sum({}, degree); }
  /// Left-normed bracket of a word.
  static LieExpr left_normed(const Word& w, Grading degrees);

  Kind kind() const noexcept;
  int degree() const noexcept;

  Letter letter() const;                 // Generator
  const LieExpr& left() const;           // Bracket
  const LieExpr& right() const;          // Bracket
  const Rational& coefficient() const;   // Scale
  const LieExpr& operand() const;        // Scale
  const std::vector<LieExpr>& terms() const;  // Sum

 private:
  struct Node;
  explicit LieExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Image in the tensor algebra.
Tensor expand(const LieExpr& e, Grading degrees);

bool is_zero(const LieExpr& e, Grading degrees);

/// Compact representation of a Lie element as a rational combination of
/// left-normed brackets of words from its own support. The input must lie in
/// the image of the free Lie algebra; throws InvariantViolation otherwise.
LieExpr to_lie_expr(const Tensor& x, Grading degrees);

/// Coefficient/factor pairs of a top-level sum (a non-sum is one term).
std::vector<std::pair<Rational, LieExpr>> top_level_terms(const LieExpr& e);

LieExpr parse_lie(std::string_view text, const GeneratorSet& gens);

std::string format(const LieExpr& e, const GeneratorSet& gens);
/// Shorthand for format(to_lie_expr(x)).
std::string format_tensor(const Tensor& x, const GeneratorSet& gens);
std::string format_rational(const Rational& r);

}  // namespace quillen
