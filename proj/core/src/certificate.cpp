#include <algorithm>

#include "quillen/errors.hpp"
#include "quillen/secat.hpp"

namespace quillen {

namespace {

// Tree-level operations, kept apart from the tensor substitution and
// derivation used by the search.

LieExpr substitute_tree(const LieExpr& e, const std::vector<LieExpr>& images) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      return images.at(e.letter());
    case LieExpr::Kind::Bracket:
      return LieExpr::bracket(substitute_tree(e.left(), images), substitute_tree(e.right(), images));
    case LieExpr::Kind::Scale:
      return LieExpr::scale(e.coefficient(), substitute_tree(e.operand(), images));
    case LieExpr::Kind::Sum: {
      std::vector<LieExpr> terms;
      for (const auto& t : e.terms()) terms.push_back(substitute_tree(t, images));
      return LieExpr::sum(std::move(terms), e.degree());
    }
  }
  return LieExpr::zero(e.degree());
}

LieExpr derive_tree(const LieExpr& e, const std::vector<LieExpr>& diffs) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      return diffs.at(e.letter());
    case LieExpr::Kind::Bracket: {
      const LieExpr& a = e.left();
      const LieExpr& b = e.right();
      Rational sign = (a.degree() % 2) ? -1 : 1;
      return LieExpr::sum({LieExpr::bracket(derive_tree(a, diffs), b),
                           LieExpr::scale(sign, LieExpr::bracket(a, derive_tree(b, diffs)))},
                          e.degree() - 1);
    }
    case LieExpr::Kind::Scale:
      return LieExpr::scale(e.coefficient(), derive_tree(e.operand(), diffs));
    case LieExpr::Kind::Sum: {
      std::vector<LieExpr> terms;
      for (const auto& t : e.terms()) terms.push_back(derive_tree(t, diffs));
      return LieExpr::sum(std::move(terms), e.degree() - 1);
    }
  }
  return LieExpr::zero(e.degree() - 1);
}

bool letters_in_range(const LieExpr& e, std::size_t n, Grading degrees) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      return e.letter() < n && degrees[e.letter()] == e.degree();
    case LieExpr::Kind::Bracket:
      return letters_in_range(e.left(), n, degrees) && letters_in_range(e.right(), n, degrees);
    case LieExpr::Kind::Scale:
      return letters_in_range(e.operand(), n, degrees);
    case LieExpr::Kind::Sum:
      return std::all_of(e.terms().begin(), e.terms().end(),
                         [&](const LieExpr& t) { return letters_in_range(t, n, degrees); });
  }
  return false;
}

std::vector<LieExpr> differentials_as_trees(const Dgl& l) {
  std::vector<LieExpr> out;
  for (std::size_t g = 0; g < l.size(); ++g) {
    const Letter x = static_cast<Letter>(g);
    const Tensor& dx = l.differential(x);
    LieExpr e = dx.is_zero() ? LieExpr::zero(l.degree(x) - 1) : to_lie_expr(dx, l.degrees());
    if (expand(e, l.degrees()) != dx) throw InvariantViolation("differential of " + l.id(x) + " is not a Lie element");
    out.push_back(e);
  }
  return out;
}

}  // namespace

VerifyReport verify_certificate(const Certificate& c, int max_degree) {
  VerifyReport rep;
  rep.bound = max_degree;
  auto fail = [&](std::string what) {
    rep.pass = false;
    rep.failures.push_back(std::move(what));
  };
  const Dgl& src = *c.wedge.map.dgl;
  const Dgl& tgt = *c.wedge.kept;
  const auto& power = c.wedge.power;
  if (c.expressions.size() != src.size()) {
    fail("certificate does not assign every generator");
    return rep;
  }
  for (std::size_t g = 0; g < src.size(); ++g) {
    const LieExpr& e = c.expressions[g];
    if (e.degree() != src.degree(static_cast<Letter>(g)) || !letters_in_range(e, tgt.size(), tgt.degrees())) {
      fail("alpha(" + src.id(static_cast<Letter>(g)) + ") has the wrong degree or unknown generators");
      return rep;
    }
  }

  const auto src_d = differentials_as_trees(src);
  const auto tgt_d = differentials_as_trees(tgt);
  for (std::size_t g = 0; g < src.size(); ++g) {
    const Letter a = static_cast<Letter>(g);
    if (src.degree(a) > max_degree) continue;
    const LieExpr& e = c.expressions[g];
    Tensor lhs = expand(derive_tree(e, tgt_d), tgt.degrees());
    Tensor rhs = expand(substitute_tree(src_d[g], c.expressions), tgt.degrees());
    if (lhs != rhs) fail("chain map fails on " + src.id(a));

    // a_1 + ... + a_{n+1} in kept coordinates
    Tensor linear;
    for (std::size_t k = 0; k < c.wedge.kept_letters.size(); ++k) {
      const PowerGenerator& w = power.words[c.wedge.kept_letters[k]];
      if (w.length() == 1 && w.bases[0] == a) linear += Tensor::letter(static_cast<Letter>(k));
    }
    if (linear.size() != static_cast<std::size_t>(c.n + 1)) {
      fail("copies of " + src.id(a) + " are missing from the fat wedge");
      continue;
    }
    Tensor full = expand(e, tgt.degrees());
    Tensor copies_part = full.length_component(1).filter([&](const Word& w) { return !c.wedge.in_u[w[0]]; });
    if (copies_part != linear) fail("linear part of alpha(" + src.id(a) + ") is not a_1+...+a_n+1");
    const Tensor xi = full - linear;
    for (const auto& [word, coeff] : xi.terms())
      if (std::none_of(word.begin(), word.end(), [&](Letter l) { return static_cast<bool>(c.wedge.in_u[l]); })) {
        fail("alpha(" + src.id(a) + ") has a term outside the ideal of U");
        break;
      }
  }
  return rep;
}

std::vector<std::pair<std::string, std::string>> certificate_table(const Certificate& c) {
  std::vector<std::pair<std::string, std::string>> out;
  const Dgl& src = *c.wedge.map.dgl;
  for (std::size_t g = 0; g < src.size(); ++g)
    out.emplace_back(src.id(static_cast<Letter>(g)), format(c.expressions[g], c.wedge.kept->generators()));
  return out;
}

}  // namespace quillen
