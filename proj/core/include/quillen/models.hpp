#pragma once

// Quillen models of products, powers, diagonals and fat wedges, plus
// free-extension replacements of morphisms.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quillen/dgl.hpp"

namespace quillen {

/// Generator s^{j-1}(g_1@i_1 ⊗ ... ⊗ g_j@i_j) of a power model.
struct PowerGenerator {
  std::vector<int> copies;    // strictly increasing, 1-based
  std::vector<Letter> bases;  // letters of the factor of each copy
  std::size_t length() const noexcept { return copies.size(); }
  friend bool operator==(const PowerGenerator&, const PowerGenerator&) = default;
  friend auto operator<=>(const PowerGenerator&, const PowerGenerator&) = default;
};

/// `g@i` for length 1, `s{g1@i1,...,gj@ij}` otherwise.
std::string power_generator_id(const PowerGenerator& g, const std::vector<DglPtr>& factors);
int power_generator_degree(const PowerGenerator& g, const std::vector<DglPtr>& factors);

struct ProductModel {
  DglPtr dgl;
  int copies = 0;
  std::vector<DglPtr> factors;           // one per copy
  std::vector<PowerGenerator> words;     // one per letter of dgl
  std::vector<DglMorphism> projections;  // dgl -> factors[k]
  int bound = 0;
  std::vector<std::string> omitted;      // suspension generators above the bound

  std::optional<Letter> find(const PowerGenerator& g) const;
  /// Letter of base generator `g` in copy `copy` (1-based).
  Letter copy_letter(Letter g, int copy) const;
};

/// Free extension L(V) -> L(V ⊕ W); `domain[g]` marks V.
struct MapModel {
  DglPtr dgl;
  std::vector<bool> domain;

  /// Throws InputError unless d(V) ⊆ L(V).
  void validate() const;
  std::vector<Letter> domain_letters() const;
  std::vector<Letter> relative_letters() const;
};

MapModel make_map_model(Dgl dgl, std::vector<bool> domain);

struct BetaResult {
  Tensor beta;
  Tensor d_plus;  // d(beta) - xi
};

/// xi must be a Lie element built from copy generators with every word using
/// at least two copies. Both parts of the result lie in the ideal generated
/// by the generators of length >= 2.
BetaResult beta(const ProductModel& p, const Tensor& xi);

/// Two-factor model with generators x@1, y@2 and s{x@1,y@2} up to degree N.
ProductModel binary_product(const DglPtr& x, const DglPtr& y, int max_degree);

/// n-fold power model. n = 1 returns the input unchanged.
ProductModel power_model(const DglPtr& l, int copies, int max_degree);

struct DiagonalModel {
  ProductModel power;
  DglMorphism delta;  // l -> power.dgl
};

DiagonalModel diagonal_model(const DglPtr& l, int copies, int max_degree);

struct FatWedge {
  MapModel map;
  int n = 0;
  ProductModel power;                  // n+1 copies of map.dgl
  DglPtr kept;                         // sub-dgl on kept generators
  std::vector<Letter> kept_letters;    // letters of power.dgl, in order
  std::vector<bool> in_u;              // per kept letter
  DglMorphism inclusion;               // kept -> power.dgl
};

/// Throws ClosureViolation when d of a kept generator reaches a removed one.
FatWedge fat_wedge_model(const MapModel& m, int n, int max_degree);

struct Replacement {
  MapModel map;
  DglMorphism rho;  // map.dgl -> target of f
  bool minimal = true;
  bool free_extension = true;  // built by a change of generators
};

Replacement cofibration_replacement(const DglMorphism& f, int max_degree);

/// Structural checks on product and diagonal models.
struct InvariantReport {
  bool pass = true;
  std::vector<std::string> failures;
  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
};

/// Properties of copy generators, projections, length-2 and longer suspension
/// generators, and absence of linear part.
InvariantReport check_product_invariants(const ProductModel& p);
/// For binary products: stage containment of d(s{v,w}) and closure of the
/// stage-restricted sub-algebras.
InvariantReport check_stage_containment(const ProductModel& p);
/// Chain map up to N, linear part z -> z_1 + ... + z_n, ideal membership of the
/// rest, and projections ∘ delta = diagonal.
InvariantReport check_diagonal(const DiagonalModel& d, int max_degree);

}  // namespace quillen

namespace quillen::detail {

/// Data for the beta recursion: letters are split into blocks, block -1 being
/// the ideal generators; `suspension(a, b)` for block(a) < block(b) returns the
/// generator whose differential starts with [a, b].
struct BetaContext {
  const Dgl* dgl = nullptr;
  std::function<int(Letter)> block;
  std::function<Letter(Letter, Letter)> suspension;
};

BetaResult beta(const BetaContext& ctx, const Tensor& xi);

}  // namespace quillen::detail
