#include <algorithm>
#include <numeric>
#include <tuple>

#include "quillen/errors.hpp"
#include "quillen/lie_expr.hpp"
#include "quillen/models.hpp"

namespace quillen {

namespace detail {

namespace {

constexpr int kMixed = -2;
constexpr int kEmpty = -3;

class BetaRecursion {
 public:
  explicit BetaRecursion(const BetaContext& ctx) : ctx_(ctx), degrees_(ctx.dgl->degrees()) {}

  int block(const LieExpr& e) const {
    switch (e.kind()) {
      case LieExpr::Kind::Generator: {
        int b = ctx_.block(e.letter());
        if (b < 0) throw InputError("beta: input uses an ideal generator");
        return b;
      }
      case LieExpr::Kind::Bracket:
        return combine(block(e.left()), block(e.right()));
      case LieExpr::Kind::Scale:
        return block(e.operand());
      case LieExpr::Kind::Sum: {
        int b = kEmpty;
        for (const auto& t : e.terms()) b = combine(b, block(t));
        return b;
      }
    }
    return kEmpty;
  }

  LieExpr run(const LieExpr& e) const {
    const int deg = e.degree() + 1;
    switch (e.kind()) {
      case LieExpr::Kind::Generator:
        throw InputError("beta: term does not mix two factors");
      case LieExpr::Kind::Scale:
        return LieExpr::scale(e.coefficient(), run(e.operand()));
      case LieExpr::Kind::Sum: {
        std::vector<LieExpr> out;
        for (const auto& t : e.terms()) out.push_back(run(t));
        return LieExpr::sum(std::move(out), deg);
      }
      case LieExpr::Kind::Bracket:
        return run_bracket(e.left(), e.right());
    }
    return LieExpr::zero(deg);
  }

 private:
  static int combine(int a, int b) {
    if (a == kEmpty) return b;
    if (b == kEmpty) return a;
    return a == b ? a : kMixed;
  }

  LieExpr run_bracket(const LieExpr& a, const LieExpr& b) const {
    const int deg = a.degree() + b.degree() + 1;
    const Rational eps = koszul_sign(a.degree(), b.degree());
    if (a.kind() == LieExpr::Kind::Scale)
      return LieExpr::scale(a.coefficient(), run_bracket(a.operand(), b));
    if (b.kind() == LieExpr::Kind::Scale)
      return LieExpr::scale(b.coefficient(), run_bracket(a, b.operand()));
    if (a.kind() == LieExpr::Kind::Sum) {
      std::vector<LieExpr> out;
      for (const auto& t : a.terms()) out.push_back(run_bracket(t, b));
      return LieExpr::sum(std::move(out), deg);
    }
    if (b.kind() == LieExpr::Kind::Sum) {
      std::vector<LieExpr> out;
      for (const auto& t : b.terms()) out.push_back(run_bracket(a, t));
      return LieExpr::sum(std::move(out), deg);
    }
    const int ba = block(a);
    const int bb = block(b);
    if (ba == kMixed) return LieExpr::bracket(run(a), b);
    if (bb == kMixed) return LieExpr::scale(-eps, LieExpr::bracket(run(b), a));
    if (ba == bb || ba == kEmpty || bb == kEmpty) throw InputError("beta: term does not mix two factors");

    if (a.kind() == LieExpr::Kind::Generator && b.kind() == LieExpr::Kind::Generator) {
      if (ba < bb) return suspension(a.letter(), b.letter());
      return LieExpr::scale(-eps, suspension(b.letter(), a.letter()));
    }
    if (a.kind() == LieExpr::Kind::Bracket) {
      const LieExpr& a1 = a.left();
      const LieExpr& a2 = a.right();
      Rational c1 = -koszul_sign(a1.degree(), a2.degree() + b.degree());
      Rational c2 = koszul_sign(a2.degree(), b.degree());
      return LieExpr::sum({LieExpr::scale(c1, LieExpr::bracket(run_bracket(a2, b), a1)),
                           LieExpr::scale(c2, LieExpr::bracket(run_bracket(a1, b), a2))},
                          deg);
    }
    const LieExpr& b1 = b.left();
    const LieExpr& b2 = b.right();
    Rational c2 = -koszul_sign(b1.degree(), b2.degree());
    return LieExpr::sum({LieExpr::bracket(run_bracket(a, b1), b2),
                         LieExpr::scale(c2, LieExpr::bracket(run_bracket(a, b2), b1))},
                        deg);
  }

  LieExpr suspension(Letter a, Letter b) const {
    Letter s = ctx_.suspension(a, b);
    return LieExpr::generator(s, degrees_[s]);
  }

  const BetaContext& ctx_;
  Grading degrees_;
};

}  // namespace

BetaResult beta(const BetaContext& ctx, const Tensor& xi) {
  if (xi.is_zero()) return {};
  Grading degrees = ctx.dgl->degrees();
  LieExpr e = to_lie_expr(xi, degrees);
  BetaRecursion rec(ctx);
  BetaResult out;
  out.beta = expand(rec.run(e), degrees);
  out.d_plus = ctx.dgl->d(out.beta) - xi;
  auto in_ideal = [&](const Word& w) {
    return std::any_of(w.begin(), w.end(), [&](Letter l) { return ctx.block(l) < 0; });
  };
  if (!out.d_plus.filter([&](const Word& w) { return !in_ideal(w); }).is_zero())
    throw InvariantViolation("beta: correction term leaves the suspension ideal");
  return out;
}

}  // namespace detail

namespace {

bool is_minimal_input(const Dgl& l) { return l.is_minimal(); }

void validate_stages(const Dgl& l) {
  auto st = l.stages();
  for (std::size_t g = 0; g < l.size(); ++g)
    for (const auto& [w, c] : l.differential(static_cast<Letter>(g)).terms())
      for (Letter x : w)
        if (st[x] >= st[g])
          throw InputError("stage of " + l.id(static_cast<Letter>(g)) + " does not exceed the stages in its differential");
}

struct RawProduct {
  Dgl dgl;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<std::pair<Letter, Letter>> pairs;  // per suspension letter
  std::vector<std::string> omitted;
};

using Namer = std::function<std::string(Letter)>;
using PairNamer = std::function<std::string(Letter, Letter)>;

class ProductBuilder {
 public:
  ProductBuilder(const Dgl& x, const Dgl& y, int max_degree, const Namer& xname, const Namer& yname,
                 const PairNamer& sname)
      : x_(x), y_(y), nx_(x.size()), ny_(y.size()), sx_(x.stages()), sy_(y.stages()) {
    if (!is_minimal_input(x) || !is_minimal_input(y)) throw InputError("product: factors must be minimal");
    validate_stages(x);
    validate_stages(y);
    out_.nx = nx_;
    out_.ny = ny_;
    for (std::size_t a = 0; a < nx_; ++a) out_.dgl.add_generator(xname(static_cast<Letter>(a)), x.degree(static_cast<Letter>(a)));
    for (std::size_t b = 0; b < ny_; ++b) out_.dgl.add_generator(yname(static_cast<Letter>(b)), y.degree(static_cast<Letter>(b)));
    for (std::size_t a = 0; a < nx_; ++a) out_.dgl.set_differential(static_cast<Letter>(a), x.differential(static_cast<Letter>(a)));
    for (std::size_t b = 0; b < ny_; ++b)
      out_.dgl.set_differential(static_cast<Letter>(nx_ + b), y.differential(static_cast<Letter>(b)).relabel([&](Letter l) {
        return std::optional<Letter>(static_cast<Letter>(l + nx_));
      }));
    slot_.assign(nx_ * ny_, std::nullopt);
    for (std::size_t a = 0; a < nx_; ++a)
      for (std::size_t b = 0; b < ny_; ++b) {
        Letter la = static_cast<Letter>(a), lb = static_cast<Letter>(b);
        int deg = x.degree(la) + y.degree(lb) + 1;
        if (deg > max_degree) {
          out_.omitted.push_back(sname(la, lb));
          continue;
        }
        slot_[a * ny_ + b] = out_.dgl.add_generator(sname(la, lb), deg);
        out_.pairs.emplace_back(la, lb);
      }
  }

  RawProduct build() {
    std::vector<std::size_t> order(out_.pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      auto [a1, b1] = out_.pairs[i];
      auto [a2, b2] = out_.pairs[j];
      return std::tie(sy_[b1], sx_[a1]) < std::tie(sy_[b2], sx_[a2]);
    });
    for (std::size_t i : order) process(out_.pairs[i].first, out_.pairs[i].second);
    return std::move(out_);
  }

 private:
  bool is_s(Letter l) const { return l >= nx_ + ny_; }
  std::pair<Letter, Letter> pair_of(Letter s) const { return out_.pairs[s - nx_ - ny_]; }

  int block(Letter l) const {
    if (l < nx_) return 0;
    if (l < nx_ + ny_) return 1;
    return -1;
  }

  Letter suspension(Letter a, Letter b) const {
    auto s = slot_[a * ny_ + (b - nx_)];
    if (!s) throw InvariantViolation("product: suspension generator above the degree bound is needed");
    return *s;
  }

  // Letters of L_{a,b}: V-stage < a, W-stage < b, and their suspensions.
  std::vector<Letter> allowed(int alim, int blim) const {
    std::vector<Letter> out;
    for (std::size_t a = 0; a < nx_; ++a)
      if (sx_[a] < alim) out.push_back(static_cast<Letter>(a));
    for (std::size_t b = 0; b < ny_; ++b)
      if (sy_[b] < blim) out.push_back(static_cast<Letter>(nx_ + b));
    for (std::size_t i = 0; i < out_.pairs.size(); ++i) {
      auto [a, b] = out_.pairs[i];
      if (sx_[a] < alim && sy_[b] < blim) out.push_back(static_cast<Letter>(nx_ + ny_ + i));
    }
    return out;
  }

  bool in_kernel(const Multiset& m) const {
    bool hx = false, hy = false;
    for (const auto& [l, c] : m) {
      if (is_s(l)) return true;
      (l < nx_ ? hx : hy) = true;
    }
    return hx && hy;
  }

  bool word_in_kernel(const Word& w) const {
    bool hx = false, hy = false;
    for (Letter l : w) {
      if (is_s(l)) return true;
      (l < nx_ ? hx : hy) = true;
    }
    return hx && hy;
  }

  Tensor preimage(const Tensor& c, int alim, int blim) const {
    if (c.is_zero()) return {};
    for (const auto& [w, coeff] : c.terms())
      if (!word_in_kernel(w)) throw InvariantViolation("product: cycle outside the kernel of the projection");
    auto letters = allowed(alim, blim);
    auto decomposable = [this](const Multiset& m) {
      int total = 0;
      for (const auto& [l, k] : m) total += k;
      return total >= 2 && in_kernel(m);
    };
    if (auto t = solve_preimage(out_.dgl, c, letters, decomposable)) return *t;
    if (auto t = solve_preimage(out_.dgl, c, letters, [this](const Multiset& m) { return in_kernel(m); })) return *t;
    throw NoPreimage("product: kernel is not acyclic in degree " + std::to_string(*c.degree(out_.dgl.degrees()) + 1));
  }

  Tensor s_free(const Tensor& x) const {
    return x.filter([this](const Word& w) { return std::none_of(w.begin(), w.end(), [this](Letter l) { return is_s(l); }); });
  }

  Tensor beta_of(const Tensor& xi) const {
    detail::BetaContext ctx;
    ctx.dgl = &out_.dgl;
    ctx.block = [this](Letter l) { return block(l); };
    ctx.suspension = [this](Letter a, Letter b) { return suspension(a, b); };
    return detail::beta(ctx, xi).beta;
  }

  // x - d(beta(x')), which lies in the suspension ideal and has the same boundary.
  Tensor into_ideal(const Tensor& x) const { return x - out_.dgl.d(beta_of(s_free(x))); }

  void process(Letter a, Letter b) {
    Grading deg = out_.dgl.degrees();
    const Letter v = a;
    const Letter w = static_cast<Letter>(nx_ + b);
    const Letter s = suspension(v, w);
    const int n = sx_[a];
    const int m = sy_[b];
    Tensor vw = bracket(Tensor::letter(v), Tensor::letter(w), deg);
    Tensor ds;
    if (n == 0) {
      Tensor tau = preimage(out_.dgl.d(vw), 1, m);
      Tensor d_plus = out_.dgl.d(beta_of(s_free(tau))) - tau;
      ds = vw + d_plus;
    } else {
      const Tensor& dv = out_.dgl.differential(v);
      const Tensor& dw = out_.dgl.differential(w);
      const Rational sign = (deg[v] % 2) ? -1 : 1;
      Tensor psi = dw.is_zero() ? Tensor{} : preimage(bracket(dv, dw, deg), n, m);
      Tensor omega = into_ideal(preimage(bracket(dv, Tensor::letter(w), deg) + sign * psi, n, m + 1));
      Tensor pi = into_ideal(preimage(bracket(Tensor::letter(v), dw, deg) - psi, n + 1, m));
      ds = vw - omega - sign * pi;
    }
    if (!out_.dgl.d(ds).is_zero()) throw InvariantViolation("product: d^2 != 0 on " + out_.dgl.id(s));
    out_.dgl.set_differential(s, std::move(ds));
  }

  const Dgl& x_;
  const Dgl& y_;
  std::size_t nx_, ny_;
  std::vector<int> sx_, sy_;
  std::vector<std::optional<Letter>> slot_;
  RawProduct out_;
};

std::string join_name(const std::string& a, const std::string& sep, const std::string& b) {
  return (a.empty() ? std::string("L") : a) + sep + (b.empty() ? std::string("L") : b);
}

std::vector<DglMorphism> make_projections(const DglPtr& dgl, const std::vector<DglPtr>& factors,
                                          const std::vector<PowerGenerator>& words) {
  std::vector<DglMorphism> out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::vector<Tensor> images;
    for (const auto& w : words)
      images.push_back(w.length() == 1 && w.copies[0] == static_cast<int>(k + 1) ? Tensor::letter(w.bases[0])
                                                                                 : Tensor{});
    out.emplace_back(dgl, factors[k], std::move(images));
  }
  return out;
}

}  // namespace

std::string power_generator_id(const PowerGenerator& g, const std::vector<DglPtr>& factors) {
  auto part = [&](std::size_t k) {
    return factors.at(g.copies[k] - 1)->id(g.bases[k]) + "@" + std::to_string(g.copies[k]);
  };
  if (g.length() == 1) return part(0);
  std::string out = "s{";
  for (std::size_t k = 0; k < g.length(); ++k) out += (k ? "," : "") + part(k);
  return out + "}";
}

int power_generator_degree(const PowerGenerator& g, const std::vector<DglPtr>& factors) {
  int d = static_cast<int>(g.length()) - 1;
  for (std::size_t k = 0; k < g.length(); ++k) d += factors.at(g.copies[k] - 1)->degree(g.bases[k]);
  return d;
}

std::optional<Letter> ProductModel::find(const PowerGenerator& g) const {
  auto it = std::find(words.begin(), words.end(), g);
  if (it == words.end()) return std::nullopt;
  return static_cast<Letter>(it - words.begin());
}

Letter ProductModel::copy_letter(Letter g, int copy) const {
  auto l = find(PowerGenerator{{copy}, {g}});
  if (!l) throw InputError("no copy generator");
  return *l;
}

BetaResult beta(const ProductModel& p, const Tensor& xi) {
  detail::BetaContext ctx;
  ctx.dgl = p.dgl.get();
  ctx.block = [&p](Letter l) { return p.words[l].length() == 1 ? p.words[l].copies[0] : -1; };
  ctx.suspension = [&p](Letter a, Letter b) {
    const auto& wa = p.words[a];
    const auto& wb = p.words[b];
    auto l = p.find(PowerGenerator{{wa.copies[0], wb.copies[0]}, {wa.bases[0], wb.bases[0]}});
    if (!l) throw InvariantViolation("beta: suspension generator above the degree bound is needed");
    return *l;
  };
  return detail::beta(ctx, xi);
}

ProductModel binary_product(const DglPtr& x, const DglPtr& y, int max_degree) {
  std::vector<DglPtr> factors{x, y};
  ProductBuilder builder(
      *x, *y, max_degree, [&](Letter a) { return x->id(a) + "@1"; }, [&](Letter b) { return y->id(b) + "@2"; },
      [&](Letter a, Letter b) { return power_generator_id(PowerGenerator{{1, 2}, {a, b}}, factors); });
  RawProduct raw = builder.build();
  raw.dgl.set_name(join_name(x->name(), "_x_", y->name()));

  ProductModel p;
  p.copies = 2;
  p.factors = factors;
  p.bound = max_degree;
  p.omitted = raw.omitted;
  for (std::size_t a = 0; a < raw.nx; ++a) p.words.push_back({{1}, {static_cast<Letter>(a)}});
  for (std::size_t b = 0; b < raw.ny; ++b) p.words.push_back({{2}, {static_cast<Letter>(b)}});
  for (auto [a, b] : raw.pairs) p.words.push_back({{1, 2}, {a, b}});
  p.dgl = std::make_shared<const Dgl>(std::move(raw.dgl));
  p.projections = make_projections(p.dgl, p.factors, p.words);
  return p;
}

ProductModel power_model(const DglPtr& l, int copies, int max_degree) {
  if (copies < 1) throw InputError("power model: at least one copy is needed");
  ProductModel p;
  p.copies = copies;
  p.bound = max_degree;
  p.factors.assign(copies, l);
  if (copies == 1) {
    p.dgl = l;
    for (std::size_t g = 0; g < l->size(); ++g) p.words.push_back({{1}, {static_cast<Letter>(g)}});
    p.projections.push_back(DglMorphism::identity(l));
    return p;
  }

  std::vector<PowerGenerator> words;
  Dgl current(l->name());
  for (std::size_t g = 0; g < l->size(); ++g) {
    words.push_back({{1}, {static_cast<Letter>(g)}});
    current.add_generator(power_generator_id(words.back(), p.factors), l->degree(static_cast<Letter>(g)));
  }
  for (std::size_t g = 0; g < l->size(); ++g) current.set_differential(static_cast<Letter>(g), l->differential(static_cast<Letter>(g)));

  for (int k = 2; k <= copies; ++k) {
    auto joined = [&](Letter a, Letter b) {
      PowerGenerator w = words[a];
      w.copies.push_back(k);
      w.bases.push_back(b);
      return w;
    };
    ProductBuilder builder(
        current, *l, max_degree, [&](Letter a) { return current.id(a); },
        [&](Letter b) { return power_generator_id(PowerGenerator{{k}, {b}}, p.factors); },
        [&](Letter a, Letter b) { return power_generator_id(joined(a, b), p.factors); });
    RawProduct raw = builder.build();
    std::vector<PowerGenerator> next = words;
    for (std::size_t b = 0; b < raw.ny; ++b) next.push_back({{k}, {static_cast<Letter>(b)}});
    for (auto [a, b] : raw.pairs) next.push_back(joined(a, b));
    for (auto& o : raw.omitted) p.omitted.push_back(std::move(o));
    words = std::move(next);
    current = std::move(raw.dgl);
  }

  std::vector<Letter> order = all_letters(words.size());
  std::stable_sort(order.begin(), order.end(), [&](Letter a, Letter b) {
    return std::make_tuple(words[a].length(), std::cref(words[a].copies), std::cref(words[a].bases)) <
           std::make_tuple(words[b].length(), std::cref(words[b].copies), std::cref(words[b].bases));
  });
  Dgl sorted = current.reordered(order);
  sorted.set_name((l->name().empty() ? std::string("L") : l->name()) + "_pow" + std::to_string(copies));
  for (Letter a : order) p.words.push_back(words[a]);
  p.dgl = std::make_shared<const Dgl>(std::move(sorted));
  p.projections = make_projections(p.dgl, p.factors, p.words);
  return p;
}

}  // namespace quillen
