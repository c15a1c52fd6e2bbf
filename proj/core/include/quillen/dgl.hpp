#pragma once

// Free differential graded Lie algebras (L(V), d) with d given on generators,
// their morphisms, and degree-bounded verification.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quillen/generator.hpp"
#include "quillen/lie_basis.hpp"
#include "quillen/linalg.hpp"
#include "quillen/tensor.hpp"

namespace quillen {

class Dgl {
 public:
  Dgl() = default;
  explicit Dgl(std::string name) : name_(std::move(name)) {}

  /// Appends a generator. `differential` must be homogeneous of degree
  /// `degree - 1` in already present letters (or zero).
  Letter add_generator(std::string id, int degree, Tensor differential = {},
                       std::optional<int> stage = std::nullopt);
  void set_differential(Letter g, Tensor differential);
  void set_stage_tag(Letter g, std::optional<int> stage);

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const GeneratorSet& generators() const noexcept { return gens_; }
  Grading degrees() const noexcept { return gens_.degrees(); }
  std::size_t size() const noexcept { return gens_.size(); }
  const std::string& id(Letter g) const { return gens_[g].id; }
  int degree(Letter g) const { return gens_[g].degree; }

  const Tensor& differential(Letter g) const { return diffs_.at(g); }
  const std::vector<Tensor>& differentials() const noexcept { return diffs_; }

  std::optional<int> stage_tag(Letter g) const { return stage_tags_.at(g); }
  /// Cone-length stage: the tag if present, otherwise inferred greedily
  /// (0 for cycles, else 1 + max stage of letters in d(g)).
  int stage(Letter g) const;
  std::vector<int> stages() const;

  /// Derivation extension of the differential.
  Tensor d(const Tensor& x) const;

  /// Generators whose differential has a nonzero word-length-1 part.
  std::vector<Letter> linear_part_violations() const;
  bool is_minimal() const { return linear_part_violations().empty(); }

  /// Same algebra with generators listed in `order` (order[i] = old letter).
  Dgl reordered(const std::vector<Letter>& order) const;
  /// Sub-dgl on `letters` (kept in the given order). Throws InvariantViolation
  /// if a differential leaves the sub-algebra.
  Dgl restricted(const std::vector<Letter>& letters) const;

  friend bool operator==(const Dgl&, const Dgl&) = default;

 private:
  std::string name_;
  GeneratorSet gens_;
  std::vector<Tensor> diffs_;
  std::vector<std::optional<int>> stage_tags_;
};

using DglPtr = std::shared_ptr<const Dgl>;

class DglMorphism {
 public:
  DglMorphism(DglPtr source, DglPtr target, std::vector<Tensor> images);
  static DglMorphism identity(const DglPtr& l);
  /// Sends each source generator to the target generator with the same id, or 0.
  static DglMorphism by_name(const DglPtr& source, const DglPtr& target);

  const Dgl& source() const noexcept { return *source_; }
  const Dgl& target() const noexcept { return *target_; }
  const DglPtr& source_ptr() const noexcept { return source_; }
  const DglPtr& target_ptr() const noexcept { return target_; }
  const Tensor& image(Letter g) const { return images_.at(g); }
  const std::vector<Tensor>& images() const noexcept { return images_; }

  Tensor apply(const Tensor& x) const { return substitute(x, images_); }
  /// next ∘ this
  DglMorphism then(const DglMorphism& next) const;

  /// True when every generator goes to 0 or to a nonzero multiple of a
  /// generator, with no target generator hit twice.
  bool is_projection_like() const;

 private:
  DglPtr source_;
  DglPtr target_;
  std::vector<Tensor> images_;
};

struct Residual {
  std::string generator;
  int degree = 0;
  std::string residual;  // Lie expression text
};

struct DSquaredReport {
  int bound = 0;
  bool pass = true;
  std::vector<Residual> violations;
};

struct ChainMapReport {
  int bound = 0;
  bool pass = true;
  std::vector<Residual> violations;
};

struct HomologyEntry {
  int degree = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;     // rank of the induced map
  bool injective = true;
  bool surjective = true;
};

struct QuasiIsoReport {
  int bound = 0;
  bool pass = true;
  std::vector<HomologyEntry> degrees;
};

Tensor d(const Dgl& l, const Tensor& x);

DSquaredReport check_d_squared(const Dgl& l, int max_degree);

/// Word-length-1 component of each generator image.
std::vector<Tensor> linear_part(const DglMorphism& phi);

ChainMapReport check_chain_map(const DglMorphism& phi, int max_degree);

/// dim H_d for 1 <= d <= max_degree. Throws InputError if d^2 != 0 up to max_degree + 1.
std::map<int, std::size_t> homology_dims(const Dgl& l, int max_degree);

QuasiIsoReport check_quasi_iso(const DglMorphism& phi, int max_degree);
/// Quasi-isomorphism check for the map into the direct product of the
/// components' targets (homology of a product is the direct sum).
QuasiIsoReport check_quasi_iso(const std::vector<DglMorphism>& components, int max_degree);

/// Solution of d(x) = c with x ranging over span{left_normed(w)}.
struct SpanSolution {
  std::vector<Word> unknowns;
  DenseVector coefficients;
  std::vector<DenseVector> kernel;
  Tensor x;
  std::vector<Tensor> kernel_elements;
};

/// Solves d(x) = c over the given unknown words, subject to phi(x) = 0 for
/// each morphism in `must_vanish`. Deterministic: free variables are 0.
std::optional<SpanSolution> solve_differential(const Dgl& l, const std::vector<Word>& unknowns,
                                               const Tensor& c,
                                               const std::vector<const DglMorphism*>& must_vanish = {});

/// tau with d(tau) = c, built from `allowed` letters and restricted to
/// letter multisets accepted by `accept` (empty accepts all).
std::optional<Tensor> solve_preimage(const Dgl& l, const Tensor& c, const std::vector<Letter>& allowed,
                                     const MultisetFilter& accept);

/// tau in ker(phi) with d(tau) = c.
Tensor preimage_in_kernel(const DglMorphism& phi, const Tensor& c);
/// tau in the intersection of the kernels, built only from `allowed` letters
/// (all letters when empty), with d(tau) = c.
Tensor preimage_in_kernel(const std::vector<DglMorphism>& components, const Tensor& c,
                          const std::vector<Letter>& allowed = {});

}  // namespace quillen
