#include "quillen/secat.hpp"

#include <algorithm>
#include <random>

#include "quillen/errors.hpp"

namespace quillen {

namespace {

struct Step {
  Letter generator;
  Tensor linear;    // a_1 + ... + a_{n+1}
  Tensor d_linear;  // D(linear)
  std::vector<Tensor> elems;
  WordIndex rows;
  std::vector<SparseVector> cols;
};

struct StepSolution {
  Tensor particular;
  std::vector<Tensor> kernel;
};

class AlphaSearch {
 public:
  AlphaSearch(const Dgl& src, const Dgl& tgt, std::vector<Step> steps, const SearchOptions& opt)
      : src_(src), tgt_(tgt), steps_(std::move(steps)), opt_(opt), images_(src.size()) {}

  bool run() {
    if (dfs(0)) return true;
    if (all_kernels_zero_ || transcript_.budget_exhausted) return false;
    std::mt19937_64 rng(opt_.seed);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (std::size_t r = 0; r < opt_.restarts; ++r) {
      ++transcript_.restarts;
      std::fill(images_.begin(), images_.end(), Tensor{});
      bool ok = true;
      for (std::size_t t = 0; t < steps_.size() && ok; ++t) {
        if (transcript_.solves >= opt_.budget) {
          transcript_.budget_exhausted = true;
          return false;
        }
        auto sol = solve_step(t);
        if (sol) transcript_.records.back().choice = "random";
        if (!sol) {
          ok = false;
          break;
        }
        Tensor x = sol->particular;
        for (const auto& k : sol->kernel) x += Rational(coeff(rng)) * k;
        images_[steps_[t].generator] = steps_[t].linear + x;
      }
      if (ok) return true;
    }
    return false;
  }

  bool exhaustive() const { return all_kernels_zero_ && !transcript_.budget_exhausted; }
  const std::vector<Tensor>& images() const { return images_; }
  Transcript& transcript() { return transcript_; }

 private:
  bool dfs(std::size_t t) {
    if (t == steps_.size()) return true;
    if (transcript_.solves >= opt_.budget) {
      transcript_.budget_exhausted = true;
      return false;
    }
    auto sol = solve_step(t);
    if (!sol) return false;
    const std::size_t rec = transcript_.records.size() - 1;
    if (!sol->kernel.empty()) all_kernels_zero_ = false;

    std::vector<std::pair<std::string, Tensor>> candidates{{"particular", sol->particular}};
    for (std::size_t j = 0; j < sol->kernel.size(); ++j)
      for (int c : {1, -1, 2, -2})
        candidates.emplace_back("particular" + std::string(c > 0 ? "+" : "") + std::to_string(c) + "*k" +
                                    std::to_string(j + 1),
                                sol->particular + Rational(c) * sol->kernel[j]);
    const Letter a = steps_[t].generator;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      auto& [name, x] = candidates[i];
      images_[a] = steps_[t].linear + x;
      if (i == 0) {
        transcript_.records[rec].choice = name;
      } else {
        SolveRecord again = transcript_.records[rec];
        again.choice = name;
        transcript_.records.push_back(std::move(again));
      }
      if (dfs(t + 1)) return true;
      if (transcript_.budget_exhausted) return false;
    }
    images_[a] = Tensor{};
    return false;
  }

  std::optional<StepSolution> solve_step(std::size_t t) {
    Step& s = steps_[t];
    ++transcript_.solves;
    Tensor rhs = substitute(src_.differential(s.generator), images_) - s.d_linear;
    SparseVector b = s.rows.vectorize(rhs);
    SolveRecord rec;
    rec.generator = src_.id(s.generator);
    rec.degree = src_.degree(s.generator);
    rec.unknowns = s.elems.size();
    auto sol = solve(columns_to_matrix(s.cols, s.rows.size()), to_dense(b, s.rows.size()));
    if (!sol) {
      rec.consistent = false;
      rec.rhs = format(to_lie_expr(rhs, tgt_.degrees()), tgt_.generators());
      transcript_.records.push_back(std::move(rec));
      return std::nullopt;
    }
    rec.consistent = true;
    rec.kernel_dim = sol->kernel.size();
    transcript_.records.push_back(std::move(rec));
    StepSolution out;
    auto combine = [&](const DenseVector& v) {
      Tensor x;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(v[j]) != 0) x += v[j] * s.elems[j];
      return x;
    };
    out.particular = combine(sol->particular);
    for (const auto& k : sol->kernel) out.kernel.push_back(combine(k));
    return out;
  }

  const Dgl& src_;
  const Dgl& tgt_;
  std::vector<Step> steps_;
  SearchOptions opt_;
  std::vector<Tensor> images_;
  Transcript transcript_;
  bool all_kernels_zero_ = true;
};

}  // namespace

SecatOutcome find_alpha(const SecatProblem& p) {
  p.map.validate();
  const Dgl& src = *p.map.dgl;
  if (p.n < 0) throw InputError("secat: n must be non-negative");
  const int top = src.size() ? src.generators().max_degree() : 0;
  if (p.max_degree < top) throw InputError("secat: degree bound below the generator degrees");

  SecatOutcome out;
  out.n = p.n;
  out.effective_degree = src.size() ? std::min(p.max_degree, top) : p.max_degree;
  FatWedge fw = fat_wedge_model(p.map, p.n, out.effective_degree);
  const Dgl& tgt = *fw.kept;

  std::vector<std::optional<Letter>> kept_of(fw.power.words.size());
  for (std::size_t i = 0; i < fw.kept_letters.size(); ++i) kept_of[fw.kept_letters[i]] = static_cast<Letter>(i);

  std::vector<Letter> order = all_letters(src.size());
  std::stable_sort(order.begin(), order.end(), [&](Letter a, Letter b) { return src.degree(a) < src.degree(b); });

  std::vector<Step> steps;
  for (Letter a : order) {
    Step s;
    s.generator = a;
    for (int i = 1; i <= p.n + 1; ++i) {
      auto k = kept_of[fw.power.copy_letter(a, i)];
      if (!k) {
        out.exhaustive = true;
        out.reason = "generator " + fw.power.dgl->id(fw.power.copy_letter(a, i)) + " is not in the fat wedge, so no map has the required linear part";
        return out;
      }
      s.linear += Tensor::letter(*k);
    }
    s.d_linear = tgt.d(s.linear);
    LieBasisQuery q;
    q.degrees = tgt.degrees();
    q.letters = all_letters(tgt.size());
    q.degree = src.degree(a);
    q.accept = [&fw](const Multiset& m) {
      return std::any_of(m.begin(), m.end(), [&](const auto& e) { return static_cast<bool>(fw.in_u[e.first]); });
    };
    for (const Word& w : lie_basis_words(q)) {
      s.elems.push_back(left_normed(w, tgt.degrees()));
      s.cols.push_back(s.rows.vectorize(tgt.d(s.elems.back())));
    }
    steps.push_back(std::move(s));
  }

  AlphaSearch search(src, tgt, std::move(steps), p.options);
  bool found = search.run();
  out.transcript = std::move(search.transcript());
  if (!found) {
    out.exhaustive = search.exhaustive();
    out.reason = out.exhaustive ? "every solve has a unique candidate and the candidate fails"
                                : (out.transcript.budget_exhausted ? "search budget exhausted"
                                                                   : "no explored branch succeeds");
    return out;
  }

  std::vector<Tensor> images = search.images();
  std::vector<LieExpr> exprs;
  for (std::size_t g = 0; g < src.size(); ++g) exprs.push_back(to_lie_expr(images[g], tgt.degrees()));
  DglMorphism alpha(p.map.dgl, fw.kept, std::move(images));
  Certificate cert{std::move(fw), std::move(alpha), std::move(exprs), p.n, p.max_degree};
  auto rep = verify_certificate(cert, p.max_degree);
  if (!rep.pass) throw InvariantViolation("secat: constructed certificate fails verification: " + rep.failures.front());
  out.certificate = std::move(cert);
  return out;
}

SecatResult secat_upper_bound(const MapModel& m, int max_n, int max_degree, const SearchOptions& options) {
  SecatResult r;
  for (int n = 0; n <= max_n; ++n) {
    r.outcomes.push_back(find_alpha(SecatProblem{m, n, max_degree, options}));
    if (r.outcomes.back().certificate) {
      r.value = n;
      break;
    }
  }
  return r;
}

SecatResult cat(const DglPtr& l, int max_n, int max_degree, const SearchOptions& options) {
  if (!l->is_minimal()) throw InputError("cat: model must be minimal");
  MapModel m{l, std::vector<bool>(l->size(), false)};
  return secat_upper_bound(m, max_n, max_degree, options);
}

TcResult tc(const DglPtr& l, int max_n, int max_degree, const SearchOptions& options) {
  if (!l->is_minimal()) throw InputError("tc: model must be minimal");
  DiagonalModel d = diagonal_model(l, 2, max_degree);
  Replacement r = cofibration_replacement(d.delta, max_degree);
  SecatResult s = secat_upper_bound(r.map, max_n, max_degree, options);
  return {std::move(s), std::move(r)};
}

}  // namespace quillen
