#include "quillen/lie_expr.hpp"

#include <cctype>
#include <sstream>
#include <variant>

#include "quillen/errors.hpp"
#include "quillen/lie_basis.hpp"

namespace quillen {

struct LieExpr::Node {
  Kind kind;
  int degree;
  Letter letter = 0;
  Rational coeff;
  std::vector<LieExpr> children;
};

LieExpr LieExpr::generator(Letter l, int degree) {
  return LieExpr(std::make_shared<const Node>(Node{Kind::Generator, degree, l, {}, {}}));
}

LieExpr LieExpr::bracket(const LieExpr& a, const LieExpr& b) {
  return LieExpr(std::make_shared<const Node>(
      Node{Kind::Bracket, a.degree() + b.degree(), 0, {}, {a, b}}));
}

LieExpr LieExpr::scale(const Rational& c, const LieExpr& e) {
  return LieExpr(std::make_shared<const Node>(Node{Kind::Scale, e.degree(), 0, c, {e}}));
}

LieExpr LieExpr::sum(std::vector<LieExpr> terms, int degree) {
  for (const auto& t : terms)
    if (t.degree() != degree) throw InputError("mixed-degree sum");
  return LieExpr(std::make_shared<const Node>(Node{Kind::Sum, degree, 0, {}, std::move(terms)}));
}

LieExpr LieExpr::left_normed(const Word& w, Grading degrees) {
  LieExpr e = generator(w.at(0), degrees[w[0]]);
  for (std::size_t i = 1; i < w.size(); ++i) e = bracket(e, generator(w[i], degrees[w[i]]));
  return e;
}

LieExpr::Kind LieExpr::kind() const noexcept { return node_->kind; }
int LieExpr::degree() const noexcept { return node_->degree; }
Letter LieExpr::letter() const { return node_->letter; }
const LieExpr& LieExpr::left() const { return node_->children.at(0); }
const LieExpr& LieExpr::right() const { return node_->children.at(1); }
const Rational& LieExpr::coefficient() const { return node_->coeff; }
const LieExpr& LieExpr::operand() const { return node_->children.at(0); }
const std::vector<LieExpr>& LieExpr::terms() const { return node_->children; }

Tensor expand(const LieExpr& e, Grading degrees) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      return Tensor::letter(e.letter());
    case LieExpr::Kind::Bracket:
      return bracket(expand(e.left(), degrees), expand(e.right(), degrees), degrees);
    case LieExpr::Kind::Scale:
      return e.coefficient() * expand(e.operand(), degrees);
    case LieExpr::Kind::Sum: {
      Tensor out;
      for (const auto& t : e.terms()) out += expand(t, degrees);
      return out;
    }
  }
  return {};
}

bool is_zero(const LieExpr& e, Grading degrees) { return expand(e, degrees).is_zero(); }

LieExpr to_lie_expr(const Tensor& x, Grading degrees) {
  auto deg = x.degree(degrees);
  if (!deg) return LieExpr::zero(0);
  std::vector<LieExpr> terms;
  for (std::size_t k = 1; k <= x.max_length(); ++k) {
    Tensor part = x.length_component(k);
    if (part.is_zero()) continue;
    // The Dynkin map sends a length-k Lie element P to k*P, so the left-normed
    // brackets of the support of P span it. Keep an independent subset.
    WordIndex index;
    EchelonBasis basis;
    std::vector<Word> chosen;
    std::vector<SparseVector> columns;
    for (const auto& [w, c] : part.terms()) {
      SparseVector v = index.vectorize(left_normed(w, degrees));
      if (basis.insert(v)) {
        chosen.push_back(w);
        columns.push_back(std::move(v));
      }
    }
    SparseVector target = index.vectorize(part);
    auto sol = solve(columns_to_matrix(columns, index.size()), to_dense(target, index.size()));
    if (!sol) throw InvariantViolation("element is not in the free Lie algebra");
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const Rational& c = sol->particular[i];
      if (sgn(c) == 0) continue;
      LieExpr b = LieExpr::left_normed(chosen[i], degrees);
      terms.push_back(c == 1 ? b : LieExpr::scale(c, b));
    }
  }
  if (terms.size() == 1) return terms.front();
  return LieExpr::sum(std::move(terms), *deg);
}

std::vector<std::pair<Rational, LieExpr>> top_level_terms(const LieExpr& e) {
  std::vector<std::pair<Rational, LieExpr>> out;
  auto push = [&](const LieExpr& t) {
    if (t.kind() == LieExpr::Kind::Scale)
      out.emplace_back(t.coefficient(), t.operand());
    else
      out.emplace_back(Rational(1), t);
  };
  if (e.kind() == LieExpr::Kind::Sum) {
    for (const auto& t : e.terms()) push(t);
  } else {
    push(e);
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const GeneratorSet& gens) : text_(text), gens_(gens) {}

  LieExpr parse() {
    LieExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(pos_, pos_ >= text_.size() ? "unexpected end of input" : what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  LieExpr expr() {
    std::vector<LieExpr> terms;
    terms.push_back(term(false));
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c != '+' && c != '-') break;
      ++pos_;
      LieExpr t = term(true);
      terms.push_back(c == '-' ? LieExpr::scale(-1, t) : t);
    }
    if (terms.size() == 1) return terms.front();
    int d = terms.front().degree();
    for (const auto& t : terms)
      if (t.degree() != d) throw ParseError(pos_, "mixed-degree sum");
    return LieExpr::sum(std::move(terms), d);
  }

  bool digit_at(std::size_t p) const {
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  LieExpr term(bool after_sign) {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (!after_sign && pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
      skip_ws();
    }
    if (digit_at(pos_)) {
      mpz_class num(digits());
      mpz_class den(1);
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        if (!digit_at(pos_)) fail("expected positive integer denominator");
        den = mpz_class(digits());
        if (den == 0) throw ParseError(pos_, "zero denominator");
      }
      expect('*');
      Rational c(num, den);
      c.canonicalize();
      if (negative) c = -c;
      return LieExpr::scale(c, factor());
    }
    if (negative) {
      // "-factor" is accepted as shorthand for "-1*factor".
      if (pos_ >= text_.size()) {
        pos_ = std::max(pos_, start);
        fail("unexpected end of input");
      }
      return LieExpr::scale(-1, factor());
    }
    return factor();
  }

  LieExpr factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      LieExpr a = expr();
      expect(',');
      LieExpr b = expr();
      expect(']');
      return LieExpr::bracket(a, b);
    }
    if (c == '(') {
      ++pos_;
      LieExpr a = expr();
      expect(')');
      return a;
    }
    std::size_t len = detail::scan_identifier(text_, pos_);
    if (len == 0) fail("expected generator, '[' or '('");
    std::string id(text_.substr(pos_, len));
    auto l = gens_.find(id);
    if (!l) throw ParseError(pos_, "unknown generator '" + id + "'");
    pos_ += len;
    return LieExpr::generator(*l, gens_[*l].degree);
  }

  std::string_view text_;
  const GeneratorSet& gens_;
  std::size_t pos_ = 0;
};

void format_into(std::ostringstream& os, const LieExpr& e, const GeneratorSet& gens, bool top);

void format_term(std::ostringstream& os, const Rational& c, const LieExpr& f, const GeneratorSet& gens,
                 bool first) {
  Rational mag = abs(c);
  if (first) {
    if (sgn(c) < 0) os << '-' << format_rational(mag) << '*';
    else if (mag != 1) os << format_rational(mag) << '*';
  } else {
    os << (sgn(c) < 0 ? " - " : " + ");
    if (mag != 1) os << format_rational(mag) << '*';
  }
  bool needs_paren = f.kind() == LieExpr::Kind::Sum || f.kind() == LieExpr::Kind::Scale;
  if (needs_paren) os << '(';
  format_into(os, f, gens, false);
  if (needs_paren) os << ')';
}

void format_into(std::ostringstream& os, const LieExpr& e, const GeneratorSet& gens, bool top) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      os << gens[e.letter()].id;
      return;
    case LieExpr::Kind::Bracket:
      os << '[';
      format_into(os, e.left(), gens, true);
      os << ',';
      format_into(os, e.right(), gens, true);
      os << ']';
      return;
    case LieExpr::Kind::Scale:
    case LieExpr::Kind::Sum: {
      auto terms = top_level_terms(e);
      if (terms.empty()) {
        os << '0';
        return;
      }
      if (!top) os << '(';
      bool first = true;
      for (const auto& [c, f] : terms) {
        format_term(os, c, f, gens, first);
        first = false;
      }
      if (!top) os << ')';
      return;
    }
  }
}

}  // namespace

LieExpr parse_lie(std::string_view text, const GeneratorSet& gens) { return Parser(text, gens).parse(); }

std::string format(const LieExpr& e, const GeneratorSet& gens) {
  std::ostringstream os;
  format_into(os, e, gens, true);
  return os.str();
}

std::string format_tensor(const Tensor& x, const GeneratorSet& gens) {
  return format(to_lie_expr(x, gens.degrees()), gens);
}

std::string format_rational(const Rational& r) { return r.get_str(); }

}  // namespace quillen
