#include "quillen/dgl.hpp"

#include <algorithm>
#include <set>

#include "quillen/errors.hpp"
#include "quillen/lie_expr.hpp"

namespace quillen {

namespace {

void check_letters(const Tensor& x, std::size_t n, const std::string& what) {
  for (const auto& [w, c] : x.terms())
    for (Letter l : w)
      if (l >= n) throw InputError(what + ": unknown letter");
}

std::string describe(const Tensor& x, const GeneratorSet& gens) {
  try {
    return format(to_lie_expr(x, gens.degrees()), gens);
  } catch (const Error&) {
    return format_tensor(x, gens);
  }
}

Tensor tagged(Letter tag, const Tensor& x) {
  Tensor out;
  for (const auto& [w, c] : x.terms()) {
    Word t;
    t.reserve(w.size() + 1);
    t.push_back(tag);
    t.insert(t.end(), w.begin(), w.end());
    out.add_term(t, c);
  }
  return out;
}

}  // namespace

Letter Dgl::add_generator(std::string id, int degree, Tensor differential, std::optional<int> stage) {
  if (stage && *stage < 0) throw InputError("negative stage");
  check_letters(differential, gens_.size(), "differential of " + id);
  auto deg = differential.degree(degrees());
  if (deg && *deg != degree - 1) throw InputError("differential of " + id + " has the wrong degree");
  Letter g = gens_.add(std::move(id), degree);
  diffs_.push_back(std::move(differential));
  stage_tags_.push_back(stage);
  return g;
}

void Dgl::set_differential(Letter g, Tensor differential) {
  if (g >= gens_.size()) throw InputError("set_differential: unknown generator");
  check_letters(differential, gens_.size(), "differential of " + gens_[g].id);
  auto deg = differential.degree(degrees());
  if (deg && *deg != gens_[g].degree - 1)
    throw InputError("differential of " + gens_[g].id + " has degree " + std::to_string(*deg) + ", expected " +
                     std::to_string(gens_[g].degree - 1));
  diffs_[g] = std::move(differential);
}

void Dgl::set_stage_tag(Letter g, std::optional<int> stage) {
  if (stage && *stage < 0) throw InputError("negative stage");
  stage_tags_.at(g) = stage;
}

std::vector<int> Dgl::stages() const {
  std::vector<int> out(size(), -1);
  std::vector<Letter> order = all_letters(size());
  std::stable_sort(order.begin(), order.end(),
                   [&](Letter a, Letter b) { return degree(a) < degree(b); });
  for (Letter g : order) {
    if (stage_tags_[g]) {
      out[g] = *stage_tags_[g];
      continue;
    }
    int s = 0;
    for (const auto& [w, c] : diffs_[g].terms())
      for (Letter l : w) s = std::max(s, out[l] + 1);
    out[g] = s;
  }
  return out;
}

int Dgl::stage(Letter g) const { return stages().at(g); }

Tensor Dgl::d(const Tensor& x) const { return apply_derivation(x, diffs_, degrees()); }

std::vector<Letter> Dgl::linear_part_violations() const {
  std::vector<Letter> out;
  for (std::size_t g = 0; g < size(); ++g)
    if (!diffs_[g].length_component(1).is_zero()) out.push_back(static_cast<Letter>(g));
  return out;
}

Dgl Dgl::reordered(const std::vector<Letter>& order) const {
  if (order.size() != size()) throw InputError("reordered: not a permutation");
  std::vector<std::optional<Letter>> to_new(size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= size() || to_new[order[i]]) throw InputError("reordered: not a permutation");
    to_new[order[i]] = static_cast<Letter>(i);
  }
  Dgl out(name_);
  for (Letter old : order) out.add_generator(gens_[old].id, gens_[old].degree, {}, stage_tags_[old]);
  for (std::size_t i = 0; i < order.size(); ++i)
    out.set_differential(static_cast<Letter>(i), diffs_[order[i]].relabel([&](Letter l) { return to_new[l]; }));
  return out;
}

Dgl Dgl::restricted(const std::vector<Letter>& letters) const {
  std::vector<std::optional<Letter>> to_new(size());
  for (std::size_t i = 0; i < letters.size(); ++i) to_new.at(letters[i]) = static_cast<Letter>(i);
  Dgl out(name_);
  for (Letter old : letters) out.add_generator(gens_[old].id, gens_[old].degree, {}, stage_tags_[old]);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const Tensor& dx = diffs_[letters[i]];
    for (const auto& [w, c] : dx.terms())
      for (Letter l : w)
        if (!to_new[l]) throw ClosureViolation(gens_[letters[i]].id, gens_[l].id);
    out.set_differential(static_cast<Letter>(i), dx.relabel([&](Letter l) { return to_new[l]; }));
  }
  return out;
}

DglMorphism::DglMorphism(DglPtr source, DglPtr target, std::vector<Tensor> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!source_ || !target_) throw InputError("morphism: null algebra");
  if (images_.size() != source_->size()) throw InputError("morphism: wrong number of images");
  for (std::size_t g = 0; g < images_.size(); ++g) {
    const std::string& id = source_->id(static_cast<Letter>(g));
    check_letters(images_[g], target_->size(), "image of " + id);
    auto deg = images_[g].degree(target_->degrees());
    if (deg && *deg != source_->degree(static_cast<Letter>(g)))
      throw InputError("image of " + id + " has the wrong degree");
  }
}

DglMorphism DglMorphism::identity(const DglPtr& l) {
  std::vector<Tensor> images;
  for (std::size_t g = 0; g < l->size(); ++g) images.push_back(Tensor::letter(static_cast<Letter>(g)));
  return DglMorphism(l, l, std::move(images));
}

DglMorphism DglMorphism::by_name(const DglPtr& source, const DglPtr& target) {
  std::vector<Tensor> images;
  for (const auto& gen : source->generators().all()) {
    auto t = target->generators().find(gen.id);
    images.push_back(t ? Tensor::letter(*t) : Tensor{});
  }
  return DglMorphism(source, target, std::move(images));
}

DglMorphism DglMorphism::then(const DglMorphism& next) const {
  if (next.source_.get() != target_.get() && !(next.source() == target()))
    throw InputError("compose: target and source differ");
  std::vector<Tensor> images;
  for (const auto& x : images_) images.push_back(next.apply(x));
  return DglMorphism(source_, next.target_, std::move(images));
}

bool DglMorphism::is_projection_like() const {
  std::set<Letter> hit;
  for (const auto& x : images_) {
    if (x.is_zero()) continue;
    if (x.size() != 1) return false;
    const Word& w = x.terms().begin()->first;
    if (w.size() != 1 || !hit.insert(w[0]).second) return false;
  }
  return true;
}

Tensor d(const Dgl& l, const Tensor& x) { return l.d(x); }

DSquaredReport check_d_squared(const Dgl& l, int max_degree) {
  DSquaredReport rep;
  rep.bound = max_degree;
  for (std::size_t g = 0; g < l.size(); ++g) {
    Letter x = static_cast<Letter>(g);
    if (l.degree(x) > max_degree) continue;
    Tensor dd = l.d(l.differential(x));
    if (!dd.is_zero()) {
      rep.pass = false;
      rep.violations.push_back({l.id(x), l.degree(x), describe(dd, l.generators())});
    }
  }
  return rep;
}

std::vector<Tensor> linear_part(const DglMorphism& phi) {
  std::vector<Tensor> out;
  for (const auto& x : phi.images()) out.push_back(x.length_component(1));
  return out;
}

ChainMapReport check_chain_map(const DglMorphism& phi, int max_degree) {
  ChainMapReport rep;
  rep.bound = max_degree;
  const Dgl& s = phi.source();
  const Dgl& t = phi.target();
  for (std::size_t g = 0; g < s.size(); ++g) {
    Letter x = static_cast<Letter>(g);
    if (s.degree(x) > max_degree) continue;
    Tensor r = phi.apply(s.differential(x)) - t.d(phi.image(x));
    if (!r.is_zero()) {
      rep.pass = false;
      rep.violations.push_back({s.id(x), s.degree(x), describe(r, t.generators())});
    }
  }
  return rep;
}

std::optional<SpanSolution> solve_differential(const Dgl& l, const std::vector<Word>& unknowns, const Tensor& c,
                                               const std::vector<const DglMorphism*>& must_vanish) {
  WordIndex rows;
  SparseVector rhs = rows.vectorize(tagged(0, c));
  std::vector<Tensor> elems;
  std::vector<SparseVector> cols;
  elems.reserve(unknowns.size());
  for (const Word& w : unknowns) {
    Tensor t = left_normed(w, l.degrees());
    Tensor col = tagged(0, l.d(t));
    for (std::size_t k = 0; k < must_vanish.size(); ++k)
      col += tagged(static_cast<Letter>(k + 1), must_vanish[k]->apply(t));
    cols.push_back(rows.vectorize(col));
    elems.push_back(std::move(t));
  }
  SparseMatrix m = columns_to_matrix(cols, rows.size());
  auto sol = solve(m, to_dense(rhs, rows.size()));
  if (!sol) return std::nullopt;
  SpanSolution out;
  out.unknowns = unknowns;
  out.coefficients = sol->particular;
  out.kernel = sol->kernel;
  for (std::size_t j = 0; j < elems.size(); ++j)
    if (sgn(out.coefficients[j]) != 0) out.x += out.coefficients[j] * elems[j];
  for (const auto& k : out.kernel) {
    Tensor e;
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (sgn(k[j]) != 0) e += k[j] * elems[j];
    out.kernel_elements.push_back(std::move(e));
  }
  return out;
}

std::optional<Tensor> solve_preimage(const Dgl& l, const Tensor& c, const std::vector<Letter>& allowed,
                                     const MultisetFilter& accept) {
  if (c.is_zero()) return Tensor{};
  LieBasisQuery q;
  q.degrees = l.degrees();
  q.letters = allowed;
  q.degree = *c.degree(l.degrees()) + 1;
  q.accept = accept;
  auto sol = solve_differential(l, lie_basis_words(q), c);
  if (!sol) return std::nullopt;
  return sol->x;
}

Tensor preimage_in_kernel(const DglMorphism& phi, const Tensor& c) {
  return preimage_in_kernel(std::vector<DglMorphism>{phi}, c);
}

Tensor preimage_in_kernel(const std::vector<DglMorphism>& components, const Tensor& c,
                          const std::vector<Letter>& allowed) {
  if (components.empty()) throw InputError("preimage_in_kernel: no components");
  const Dgl& l = components.front().source();
  for (const auto& phi : components)
    if (&phi.source() != &l && !(phi.source() == l)) throw InputError("preimage_in_kernel: different sources");
  if (c.is_zero()) return {};
  if (!l.d(c).is_zero()) throw InputNotCycle("preimage_in_kernel: input is not a cycle");
  for (const auto& phi : components)
    if (!phi.apply(c).is_zero()) throw InputNotInKernel("preimage_in_kernel: input is not in the kernel");

  std::vector<std::vector<bool>> killed;
  std::vector<const DglMorphism*> constraints;
  for (const auto& phi : components) {
    if (phi.is_projection_like()) {
      std::vector<bool> k(l.size());
      for (std::size_t g = 0; g < l.size(); ++g) k[g] = phi.image(static_cast<Letter>(g)).is_zero();
      killed.push_back(std::move(k));
    } else {
      constraints.push_back(&phi);
    }
  }
  LieBasisQuery q;
  q.degrees = l.degrees();
  q.letters = allowed.empty() ? all_letters(l.size()) : allowed;
  q.degree = *c.degree(l.degrees()) + 1;
  if (!killed.empty()) {
    q.accept = [&killed](const Multiset& m) {
      for (const auto& k : killed) {
        bool any = false;
        for (const auto& [letter, count] : m) any = any || k[letter];
        if (!any) return false;
      }
      return true;
    };
  }
  auto words = lie_basis_words(q);
  auto sol = solve_differential(l, words, c, constraints);
  if (!sol)
    throw NoPreimage("no preimage in the kernel for a cycle of degree " + std::to_string(q.degree - 1) + ": " +
                     describe(c, l.generators()));
  return sol->x;
}

}  // namespace quillen
