#include "quillen/tensor.hpp"

#include <algorithm>

#include "quillen/errors.hpp"

namespace quillen {

int word_degree(const Word& w, Grading degrees) {
  int d = 0;
  for (Letter l : w) d += degrees[l];
  return d;
}

Tensor Tensor::letter(Letter l, const Rational& coeff) { return word(Word{l}, coeff); }

Tensor Tensor::word(Word w, const Rational& coeff) {
  Tensor t;
  if (sgn(coeff) != 0) t.terms_.emplace(std::move(w), coeff);
  return t;
}

void Tensor::add_term(const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational Tensor::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

Tensor& Tensor::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& [w, v] : terms_) v *= c;
  }
  return *this;
}

Tensor operator*(const Tensor& a, const Tensor& b) {
  Tensor out;
  Word w;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      w.assign(wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

std::optional<int> Tensor::degree(Grading degrees) const {
  if (terms_.empty()) return std::nullopt;
  int d = word_degree(terms_.begin()->first, degrees);
  for (const auto& [w, c] : terms_)
    if (word_degree(w, degrees) != d) throw InputError("inhomogeneous element");
  return d;
}

Tensor Tensor::filter(const std::function<bool(const Word&)>& keep) const {
  Tensor out;
  for (const auto& [w, c] : terms_)
    if (keep(w)) out.terms_.emplace_hint(out.terms_.end(), w, c);
  return out;
}

Tensor Tensor::length_component(std::size_t k) const {
  return filter([k](const Word& w) { return w.size() == k; });
}

std::size_t Tensor::max_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

Tensor Tensor::relabel(const std::function<std::optional<Letter>(Letter)>& map) const {
  Tensor out;
  Word nw;
  for (const auto& [w, c] : terms_) {
    nw.clear();
    bool alive = true;
    for (Letter l : w) {
      auto m = map(l);
      if (!m) {
        alive = false;
        break;
      }
      nw.push_back(*m);
    }
    if (alive) out.add_term(nw, c);
  }
  return out;
}

Tensor bracket(const Tensor& a, const Tensor& b, Grading degrees) {
  if (a.is_zero() || b.is_zero()) return {};
  int da = word_degree(a.terms().begin()->first, degrees);
  int db = word_degree(b.terms().begin()->first, degrees);
  Tensor out = a * b;
  Tensor ba = b * a;
  if (koszul_sign(da, db) > 0) {
    out -= ba;
  } else {
    out += ba;
  }
  return out;
}

Tensor left_normed(const Word& w, Grading degrees) {
  if (w.empty()) return {};
  Tensor t = Tensor::letter(w[0]);
  int d = degrees[w[0]];
  for (std::size_t i = 1; i < w.size(); ++i) {
    Tensor x = Tensor::letter(w[i]);
    Tensor next = t * x;
    Tensor swapped = x * t;
    if (koszul_sign(d, degrees[w[i]]) > 0) {
      next -= swapped;
    } else {
      next += swapped;
    }
    t = std::move(next);
    d += degrees[w[i]];
  }
  return t;
}

Tensor substitute(const Tensor& x, const std::vector<Tensor>& images) {
  Tensor out;
  for (const auto& [w, c] : x.terms()) {
    Tensor acc = Tensor::word({}, c);
    for (Letter l : w) {
      const Tensor& img = images.at(l);
      if (img.is_zero()) {
        acc = Tensor{};
        break;
      }
      acc = acc * img;
    }
    out += acc;
  }
  return out;
}

Tensor apply_derivation(const Tensor& x, const std::vector<Tensor>& on_letters, Grading degrees) {
  Tensor out;
  Word nw;
  for (const auto& [w, c] : x.terms()) {
    int prefix_degree = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Tensor& dl = on_letters.at(w[i]);
      if (!dl.is_zero()) {
        Rational s = (prefix_degree & 1) ? Rational(-c) : c;
        for (const auto& [dw, dc] : dl.terms()) {
          nw.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
          nw.insert(nw.end(), dw.begin(), dw.end());
          nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
          out.add_term(nw, s * dc);
        }
      }
      prefix_degree += degrees[w[i]];
    }
  }
  return out;
}

}  // namespace quillen
