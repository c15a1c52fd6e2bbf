#include <algorithm>

#include "quillen/dgl.hpp"
#include "quillen/errors.hpp"

namespace quillen {

namespace {

// Basis of one degree together with the differential on it.
struct DegreeData {
  std::vector<Tensor> basis;
  std::vector<Tensor> boundaries;  // d of each basis element
  std::size_t rank = 0;            // rank of d restricted to this degree
  std::vector<Tensor> cycles;      // only filled on request
};

DegreeData degree_data(const Dgl& l, int degree, bool want_cycles) {
  DegreeData out;
  for (auto& e : lie_basis(l.generators(), degree)) out.basis.push_back(std::move(e.expansion));
  WordIndex rows;
  std::vector<SparseVector> cols;
  EchelonBasis ech;
  for (const auto& b : out.basis) {
    out.boundaries.push_back(l.d(b));
    cols.push_back(rows.vectorize(out.boundaries.back()));
    ech.insert(cols.back());
  }
  out.rank = ech.rank();
  if (want_cycles) {
    for (const auto& k : kernel_basis(columns_to_matrix(cols, rows.size()))) {
      Tensor z;
      for (std::size_t j = 0; j < k.size(); ++j)
        if (sgn(k[j]) != 0) z += k[j] * out.basis[j];
      out.cycles.push_back(std::move(z));
    }
  }
  return out;
}

void require_d_squared(const Dgl& l, int bound) {
  auto rep = check_d_squared(l, bound);
  if (!rep.pass)
    throw InputError("d^2 != 0 on " + rep.violations.front().generator + ": " + rep.violations.front().residual);
}

Tensor tagged(Letter tag, const Tensor& x) {
  Tensor out;
  for (const auto& [w, c] : x.terms()) {
    Word t{tag};
    t.insert(t.end(), w.begin(), w.end());
    out.add_term(t, c);
  }
  return out;
}

}  // namespace

std::map<int, std::size_t> homology_dims(const Dgl& l, int max_degree) {
  require_d_squared(l, max_degree + 1);
  std::map<int, std::size_t> out;
  std::vector<DegreeData> data;
  data.push_back({});
  for (int d = 1; d <= max_degree + 1; ++d) data.push_back(degree_data(l, d, false));
  for (int d = 1; d <= max_degree; ++d)
    out[d] = data[d].basis.size() - data[d].rank - data[d + 1].rank;
  return out;
}

QuasiIsoReport check_quasi_iso(const DglMorphism& phi, int max_degree) {
  return check_quasi_iso(std::vector<DglMorphism>{phi}, max_degree);
}

QuasiIsoReport check_quasi_iso(const std::vector<DglMorphism>& components, int max_degree) {
  if (components.empty()) throw InputError("check_quasi_iso: no components");
  const Dgl& src = components.front().source();
  require_d_squared(src, max_degree + 1);
  for (const auto& phi : components) require_d_squared(phi.target(), max_degree + 1);

  QuasiIsoReport rep;
  rep.bound = max_degree;
  DegreeData s_next = degree_data(src, 1, true);
  std::vector<DegreeData> t_next;
  for (const auto& phi : components) t_next.push_back(degree_data(phi.target(), 1, false));

  for (int d = 1; d <= max_degree; ++d) {
    DegreeData s_cur = std::move(s_next);
    s_next = degree_data(src, d + 1, true);
    std::vector<DegreeData> t_cur = std::move(t_next);
    t_next.clear();
    for (const auto& phi : components) t_next.push_back(degree_data(phi.target(), d + 1, false));

    // Cycle representatives of H_d(source).
    WordIndex sidx;
    EchelonBasis sech;
    for (const auto& b : s_next.boundaries) sech.insert(sidx.vectorize(b));
    std::vector<Tensor> reps;
    for (const auto& z : s_cur.cycles)
      if (sech.insert(sidx.vectorize(z))) reps.push_back(z);

    // Target: direct sum over components, coordinates tagged by component.
    WordIndex tidx;
    EchelonBasis tech;
    std::size_t cycles = 0;
    for (std::size_t k = 0; k < components.size(); ++k) {
      cycles += t_cur[k].basis.size() - t_cur[k].rank;
      for (const auto& b : t_next[k].boundaries) tech.insert(tidx.vectorize(tagged(static_cast<Letter>(k), b)));
    }
    std::size_t r0 = tech.rank();
    for (const auto& z : reps) {
      Tensor img;
      for (std::size_t k = 0; k < components.size(); ++k)
        img += tagged(static_cast<Letter>(k), components[k].apply(z));
      tech.insert(tidx.vectorize(img));
    }
    HomologyEntry e;
    e.degree = d;
    e.source_dim = reps.size();
    e.target_dim = cycles - r0;
    e.rank = tech.rank() - r0;
    e.injective = e.rank == e.source_dim;
    e.surjective = e.rank == e.target_dim;
    rep.pass = rep.pass && e.injective && e.surjective;
    rep.degrees.push_back(e);
  }
  return rep;
}

}  // namespace quillen
