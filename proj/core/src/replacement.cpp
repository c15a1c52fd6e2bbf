#include <algorithm>
#include <set>

#include "quillen/errors.hpp"
#include "quillen/models.hpp"

namespace quillen {

namespace {

std::string fresh_id(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int k = 1;; ++k) {
    std::string id = base + "_" + std::to_string(k);
    if (!taken.count(id)) return id;
  }
}

// y in L(source) with rho(y) = x; rho must be bijective in degree |x|.
Tensor solve_image(const DglMorphism& rho, const Tensor& x) {
  if (x.is_zero()) return {};
  const Dgl& src = rho.source();
  LieBasisQuery q;
  q.degrees = src.degrees();
  q.letters = all_letters(src.size());
  q.degree = *x.degree(rho.target().degrees());
  auto words = lie_basis_words(q);
  WordIndex rows;
  SparseVector rhs = rows.vectorize(x);
  std::vector<Tensor> elems;
  std::vector<SparseVector> cols;
  for (const Word& w : words) {
    elems.push_back(left_normed(w, src.degrees()));
    cols.push_back(rows.vectorize(rho.apply(elems.back())));
  }
  auto sol = solve(columns_to_matrix(cols, rows.size()), to_dense(rhs, rows.size()));
  if (!sol) throw InvariantViolation("replacement: change of generators is not onto");
  Tensor y;
  for (std::size_t j = 0; j < elems.size(); ++j)
    if (sgn(sol->particular[j]) != 0) y += sol->particular[j] * elems[j];
  return y;
}

Replacement by_change_of_generators(const DglMorphism& f, const std::vector<std::size_t>& pivot_of_source) {
  const Dgl& src = f.source();
  const Dgl& tgt = f.target();
  std::vector<bool> is_pivot(tgt.size());
  for (auto c : pivot_of_source) is_pivot[c] = true;

  // New generators ordered by the target column they stand for.
  struct Slot {
    std::size_t column;
    bool domain;
    Letter origin;
  };
  std::vector<Slot> slots;
  for (std::size_t v = 0; v < src.size(); ++v) slots.push_back({pivot_of_source[v], true, static_cast<Letter>(v)});
  for (std::size_t t = 0; t < tgt.size(); ++t)
    if (!is_pivot[t]) slots.push_back({t, false, static_cast<Letter>(t)});
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.column < b.column; });

  std::vector<Letter> src_pos(src.size());
  std::set<std::string> taken;
  for (std::size_t v = 0; v < src.size(); ++v) taken.insert(src.id(static_cast<Letter>(v)));
  Dgl skeleton(tgt.name());
  std::vector<bool> domain;
  std::vector<Tensor> images;
  for (const auto& s : slots) {
    std::string id = s.domain ? src.id(s.origin) : fresh_id(tgt.id(s.origin), taken);
    if (!s.domain) taken.insert(id);
    int deg = s.domain ? src.degree(s.origin) : tgt.degree(s.origin);
    Letter l = skeleton.add_generator(id, deg, {}, s.domain ? src.stage_tag(s.origin) : std::nullopt);
    if (s.domain) src_pos[s.origin] = l;
    domain.push_back(s.domain);
    images.push_back(s.domain ? f.image(s.origin) : Tensor::letter(s.origin));
  }
  auto skel = std::make_shared<const Dgl>(skeleton);
  DglMorphism rho0(skel, f.target_ptr(), images);

  Dgl model = skeleton;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const auto& s = slots[i];
    Tensor dx = s.domain ? src.differential(s.origin).relabel([&](Letter l) { return std::optional<Letter>(src_pos[l]); })
                         : solve_image(rho0, tgt.differential(s.origin));
    model.set_differential(static_cast<Letter>(i), std::move(dx));
  }
  Replacement r{make_map_model(std::move(model), std::move(domain)), DglMorphism::identity(skel), true, true};
  r.rho = DglMorphism(r.map.dgl, f.target_ptr(), std::move(images));
  r.minimal = r.map.dgl->is_minimal();
  return r;
}

struct DegreeSpace {
  std::vector<Tensor> basis;
  std::vector<Tensor> cycles;
  std::vector<Tensor> boundaries;  // d of the next degree
};

std::vector<Tensor> basis_of(const Dgl& l, int degree) {
  std::vector<Tensor> out;
  if (degree < 1) return out;
  for (auto& e : lie_basis(l.generators(), degree)) out.push_back(std::move(e.expansion));
  return out;
}

std::vector<Tensor> cycles_of(const Dgl& l, const std::vector<Tensor>& basis) {
  WordIndex rows;
  std::vector<SparseVector> cols;
  for (const auto& b : basis) cols.push_back(rows.vectorize(l.d(b)));
  std::vector<Tensor> out;
  for (const auto& k : kernel_basis(columns_to_matrix(cols, rows.size()))) {
    Tensor z;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (sgn(k[j]) != 0) z += k[j] * basis[j];
    out.push_back(std::move(z));
  }
  return out;
}

Replacement by_killing(const DglMorphism& f, int max_degree) {
  const Dgl& src = f.source();
  const Dgl& tgt = f.target();
  Dgl model = src;
  std::vector<bool> domain(src.size(), true);
  std::vector<Tensor> images = f.images();
  std::set<std::string> taken;
  for (const auto& g : src.generators().all()) taken.insert(g.id);
  int counter = 0;
  auto add = [&](int degree, Tensor dx, Tensor image) {
    std::string id = fresh_id("r" + std::to_string(++counter), taken);
    taken.insert(id);
    model.add_generator(id, degree, std::move(dx));
    domain.push_back(false);
    images.push_back(std::move(image));
  };
  auto rho_now = [&]() {
    return DglMorphism(std::make_shared<const Dgl>(model), f.target_ptr(), images);
  };

  for (int d = 1; d <= max_degree + 1; ++d) {
    if (d >= 2) {
      // Classes of H_{d-1} sent to boundaries.
      DglMorphism rho = rho_now();
      auto zs = cycles_of(model, basis_of(model, d - 1));
      auto te = basis_of(tgt, d);
      WordIndex rows;
      std::vector<SparseVector> cols;
      for (const auto& z : zs) cols.push_back(rows.vectorize(rho.apply(z)));
      for (const auto& e : te) cols.push_back(rows.vectorize(-tgt.d(e)));
      WordIndex sidx;
      EchelonBasis killed;
      for (const auto& b : basis_of(model, d)) killed.insert(sidx.vectorize(model.d(b)));
      for (const auto& k : kernel_basis(columns_to_matrix(cols, rows.size()))) {
        Tensor z, b;
        for (std::size_t j = 0; j < zs.size(); ++j)
          if (sgn(k[j]) != 0) z += k[j] * zs[j];
        for (std::size_t j = 0; j < te.size(); ++j)
          if (sgn(k[zs.size() + j]) != 0) b += k[zs.size() + j] * te[j];
        if (z.is_zero() || !killed.insert(sidx.vectorize(z))) continue;
        add(d, z, b);
      }
    }
    if (d <= max_degree) {
      // Target classes of H_d not yet hit.
      DglMorphism rho = rho_now();
      WordIndex tidx;
      EchelonBasis hit;
      for (const auto& e : basis_of(tgt, d + 1)) hit.insert(tidx.vectorize(tgt.d(e)));
      for (const auto& z : cycles_of(model, basis_of(model, d))) hit.insert(tidx.vectorize(rho.apply(z)));
      for (const auto& z : cycles_of(tgt, basis_of(tgt, d)))
        if (hit.insert(tidx.vectorize(z))) add(d, {}, z);
    }
  }
  Replacement r{make_map_model(std::move(model), std::move(domain)), DglMorphism::identity(f.source_ptr()), false,
                false};
  r.rho = DglMorphism(r.map.dgl, f.target_ptr(), std::move(images));
  r.minimal = r.map.dgl->is_minimal();
  return r;
}

}  // namespace

Replacement cofibration_replacement(const DglMorphism& f, int max_degree) {
  if (!f.source().is_minimal() || !f.target().is_minimal())
    throw InputError("replacement: source and target must be minimal");
  auto cm = check_chain_map(f, max_degree);
  if (!cm.pass) throw InputError("replacement: not a chain map at " + cm.violations.front().generator);

  // Each independent row of the linear part adds exactly one pivot column.
  EchelonBasis lin;
  std::vector<std::size_t> pivots;
  for (const auto& x : linear_part(f)) {
    SparseVector row;
    for (const auto& [w, c] : x.terms()) row.emplace_back(w[0], c);
    std::sort(row.begin(), row.end());
    auto before = lin.pivots();
    if (!lin.insert(row)) return by_killing(f, max_degree);
    auto after = lin.pivots();
    std::vector<std::size_t> added;
    std::set_difference(after.begin(), after.end(), before.begin(), before.end(), std::back_inserter(added));
    pivots.push_back(added.at(0));
  }
  return by_change_of_generators(f, pivots);
}

}  // namespace quillen
