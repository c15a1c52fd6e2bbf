#include <algorithm>

#include "quillen/errors.hpp"
#include "quillen/lie_expr.hpp"
#include "quillen/models.hpp"

namespace quillen {

namespace {

bool uses_long_letter(const Word& w, const ProductModel& p) {
  return std::any_of(w.begin(), w.end(), [&](Letter l) { return p.words[l].length() >= 2; });
}

Tensor copy_of(const Tensor& x, const ProductModel& p, int copy) {
  return x.relabel([&](Letter g) { return std::optional<Letter>(p.copy_letter(g, copy)); });
}

Tensor diagonal_linear(Letter z, const ProductModel& p) {
  Tensor out;
  for (int k = 1; k <= p.copies; ++k) out += Tensor::letter(p.copy_letter(z, k));
  return out;
}

std::vector<Letter> by_degree(const Dgl& l) {
  std::vector<Letter> order = all_letters(l.size());
  std::stable_sort(order.begin(), order.end(), [&](Letter a, Letter b) { return l.degree(a) < l.degree(b); });
  return order;
}

}  // namespace

void MapModel::validate() const {
  if (!dgl) throw InputError("map model: no dgl");
  if (domain.size() != dgl->size()) throw InputError("map model: domain flags do not match the generators");
  for (Letter v : domain_letters())
    for (const auto& [w, c] : dgl->differential(v).terms())
      for (Letter l : w)
        if (!domain[l]) throw InputError("map model: d(" + dgl->id(v) + ") leaves the domain");
}

std::vector<Letter> MapModel::domain_letters() const {
  std::vector<Letter> out;
  for (std::size_t g = 0; g < domain.size(); ++g)
    if (domain[g]) out.push_back(static_cast<Letter>(g));
  return out;
}

std::vector<Letter> MapModel::relative_letters() const {
  std::vector<Letter> out;
  for (std::size_t g = 0; g < domain.size(); ++g)
    if (!domain[g]) out.push_back(static_cast<Letter>(g));
  return out;
}

MapModel make_map_model(Dgl dgl, std::vector<bool> domain) {
  MapModel m{std::make_shared<const Dgl>(std::move(dgl)), std::move(domain)};
  m.validate();
  return m;
}

DiagonalModel diagonal_model(const DglPtr& l, int copies, int max_degree) {
  if (!l->is_minimal()) throw InputError("diagonal: input must be minimal");
  if (!l->generators().empty() && l->generators().max_degree() > max_degree)
    throw InputError("diagonal: degree bound below the generator degrees");
  ProductModel p = power_model(l, copies, max_degree);
  if (copies == 1) {
    DglMorphism id = DglMorphism::identity(l);
    return {std::move(p), std::move(id)};
  }
  const Dgl& target = *p.dgl;
  std::vector<Tensor> images(l->size());
  for (Letter z : by_degree(*l)) {
    Tensor lin = diagonal_linear(z, p);
    Tensor c = substitute(l->differential(z), images) - target.d(lin);
    Tensor xi;
    if (!c.is_zero()) {
      Tensor eta;
      try {
        eta = preimage_in_kernel(p.projections, c);
      } catch (const NoPreimage&) {
        throw NoPreimage("diagonal: lift fails in degree " + std::to_string(l->degree(z)));
      }
      Tensor eta_short = eta.filter([&](const Word& w) { return !uses_long_letter(w, p); });
      xi = eta - target.d(beta(p, eta_short).beta);
    }
    images[z] = lin + xi;
  }
  DglMorphism delta(l, p.dgl, std::move(images));
  return {std::move(p), std::move(delta)};
}

FatWedge fat_wedge_model(const MapModel& m, int n, int max_degree) {
  if (n < 0) throw InputError("fat wedge: n must be non-negative");
  m.validate();
  FatWedge fw{m, n, power_model(m.dgl, n + 1, max_degree), nullptr, {}, {}, DglMorphism::identity(m.dgl)};
  const ProductModel& p = fw.power;
  for (std::size_t g = 0; g < p.words.size(); ++g) {
    const auto& w = p.words[g];
    bool pure_relative = w.length() == static_cast<std::size_t>(n + 1) &&
                         std::none_of(w.bases.begin(), w.bases.end(), [&](Letter b) { return m.domain[b]; });
    if (pure_relative) continue;
    fw.kept_letters.push_back(static_cast<Letter>(g));
    fw.in_u.push_back(w.length() >= 2);
  }
  Dgl kept = p.dgl->restricted(fw.kept_letters);
  kept.set_name((m.dgl->name().empty() ? std::string("L") : m.dgl->name()) + "_fw" + std::to_string(n));
  fw.kept = std::make_shared<const Dgl>(std::move(kept));
  std::vector<Tensor> images;
  for (Letter g : fw.kept_letters) images.push_back(Tensor::letter(g));
  fw.inclusion = DglMorphism(fw.kept, p.dgl, std::move(images));
  return fw;
}

InvariantReport check_product_invariants(const ProductModel& p) {
  InvariantReport rep;
  const Dgl& l = *p.dgl;
  Grading deg = l.degrees();
  if (p.words.size() != l.size()) {
    rep.fail("generator bookkeeping does not match the dgl");
    return rep;
  }
  for (std::size_t g = 0; g < l.size(); ++g) {
    const Letter x = static_cast<Letter>(g);
    const auto& w = p.words[g];
    const Tensor& dx = l.differential(x);
    if (power_generator_degree(w, p.factors) != l.degree(x)) rep.fail("degree formula fails for " + l.id(x));
    if (!std::is_sorted(w.copies.begin(), w.copies.end()) ||
        std::adjacent_find(w.copies.begin(), w.copies.end()) != w.copies.end())
      rep.fail("copy indices not increasing for " + l.id(x));
    if (!dx.length_component(1).is_zero()) rep.fail("linear part in d(" + l.id(x) + ")");
    if (w.length() == 1) {
      const Dgl& f = *p.factors[w.copies[0] - 1];
      if (dx != copy_of(f.differential(w.bases[0]), p, w.copies[0]))
        rep.fail("copy generator " + l.id(x) + " does not carry the factor differential");
    } else if (w.length() == 2) {
      Tensor rest = dx - bracket(Tensor::letter(p.copy_letter(w.bases[0], w.copies[0])),
                                 Tensor::letter(p.copy_letter(w.bases[1], w.copies[1])), deg);
      for (const auto& [word, c] : rest.terms())
        if (!uses_long_letter(word, p)) {
          rep.fail("d(" + l.id(x) + ") - [a,b] has a word without a suspension generator");
          break;
        }
    } else {
      const std::size_t i = w.length();
      for (const auto& [word, c] : dx.terms()) {
        bool too_long = std::any_of(word.begin(), word.end(), [&](Letter y) { return p.words[y].length() > i; });
        bool has_top = std::any_of(word.begin(), word.end(), [&](Letter y) { return p.words[y].length() + 1 >= i; });
        if (too_long || !has_top) {
          rep.fail("d(" + l.id(x) + ") has a word outside the length filtration");
          break;
        }
      }
    }
  }
  for (std::size_t k = 0; k < p.projections.size(); ++k) {
    const DglMorphism& phi = p.projections[k];
    for (std::size_t g = 0; g < l.size(); ++g) {
      const auto& w = p.words[g];
      Tensor expected = (w.length() == 1 && w.copies[0] == static_cast<int>(k + 1)) ? Tensor::letter(w.bases[0]) : Tensor{};
      if (phi.image(static_cast<Letter>(g)) != expected) {
        rep.fail("projection " + std::to_string(k + 1) + " is wrong on " + l.id(static_cast<Letter>(g)));
        break;
      }
    }
    if (!check_chain_map(phi, p.bound).pass) rep.fail("projection " + std::to_string(k + 1) + " is not a chain map");
  }
  return rep;
}

InvariantReport check_stage_containment(const ProductModel& p) {
  if (p.copies != 2 || p.factors.size() != 2) throw InputError("stage containment applies to binary products");
  InvariantReport rep;
  const Dgl& l = *p.dgl;
  const auto sx = p.factors[0]->stages();
  const auto sy = p.factors[1]->stages();
  auto stage_pair = [&](Letter g) -> std::pair<int, int> {
    const auto& w = p.words[g];
    if (w.length() == 2) return {sx[w.bases[0]], sy[w.bases[1]]};
    if (w.copies[0] == 1) return {sx[w.bases[0]], -1};
    return {-1, sy[w.bases[0]]};
  };
  for (std::size_t g = 0; g < l.size(); ++g) {
    const Letter s = static_cast<Letter>(g);
    if (p.words[s].length() != 2) continue;
    auto [n, m] = stage_pair(s);
    for (const auto& [word, c] : l.differential(s).terms()) {
      bool ok = std::all_of(word.begin(), word.end(), [&](Letter y) {
        const auto& w = p.words[y];
        auto [a, b] = stage_pair(y);
        if (w.length() == 1) return w.copies[0] == 1 ? a <= n : b <= m;
        return (a < n && b <= m) || (a <= n && b < m);
      });
      if (!ok) {
        rep.fail("d(" + l.id(s) + ") leaves the stage filtration");
        break;
      }
    }
  }
  int max_n = sx.empty() ? 0 : *std::max_element(sx.begin(), sx.end());
  int max_m = sy.empty() ? 0 : *std::max_element(sy.begin(), sy.end());
  for (int n = 0; n <= max_n; ++n)
    for (int m = 0; m <= max_m; ++m) {
      std::vector<bool> inside(l.size());
      for (std::size_t g = 0; g < l.size(); ++g) {
        auto [a, b] = stage_pair(static_cast<Letter>(g));
        inside[g] = a <= n && b <= m;
      }
      for (std::size_t g = 0; g < l.size(); ++g) {
        if (!inside[g]) continue;
        bool closed = true;
        for (const auto& [word, c] : l.differential(static_cast<Letter>(g)).terms())
          for (Letter y : word) closed = closed && inside[y];
        if (!closed) {
          rep.fail("stage sub-algebra (" + std::to_string(n) + "," + std::to_string(m) + ") is not closed under d");
          break;
        }
      }
    }
  return rep;
}

InvariantReport check_diagonal(const DiagonalModel& d, int max_degree) {
  InvariantReport rep;
  const ProductModel& p = d.power;
  const Dgl& src = d.delta.source();
  auto cm = check_chain_map(d.delta, max_degree);
  if (!cm.pass) rep.fail("delta is not a chain map: d(" + cm.violations.front().generator + ")");
  for (std::size_t g = 0; g < src.size(); ++g) {
    const Letter z = static_cast<Letter>(g);
    const Tensor& img = d.delta.image(z);
    Tensor lin = diagonal_linear(z, p);
    Tensor copies_part = img.length_component(1).filter([&](const Word& w) { return p.words[w[0]].length() == 1; });
    if (copies_part != lin) rep.fail("linear part of delta(" + src.id(z) + ") is not z_1+...+z_n");
    const Tensor xi = img - lin;
    for (const auto& [word, c] : xi.terms())
      if (!uses_long_letter(word, p)) {
        rep.fail("delta(" + src.id(z) + ") - (z_1+...+z_n) leaves the ideal");
        break;
      }
    for (std::size_t k = 0; k < p.projections.size(); ++k)
      if (p.projections[k].apply(img) != Tensor::letter(z))
        rep.fail("projection " + std::to_string(k + 1) + " of delta(" + src.id(z) + ") is not " + src.id(z));
  }
  return rep;
}

}  // namespace quillen
