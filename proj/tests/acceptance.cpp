// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "quillen/errors.hpp"
#include "quillen/model_file.hpp"
#include "quillen/secat.hpp"
#include "support.hpp"

using namespace quillen;
using testing_support::cp2;
using testing_support::make_dgl;
using testing_support::sphere2;
using testing_support::sphere3;
using testing_support::tensor;

namespace {

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool pass() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  std::string summary() const {
    std::string s = std::to_string(checks_) + " checks";
    if (failed_) s += ", " + std::to_string(failed_) + " failed";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

Tensor random_element(const GeneratorSet& gens, int degree, std::mt19937_64& rng) {
  const auto words = oracle::words_of_degree(std::vector<int>(gens.degrees().begin(), gens.degrees().end()), degree);
  Tensor x;
  if (words.empty()) return x;
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int k = 0; k < 3; ++k) {
    const auto& w = words[pick(rng)];
    x += Rational(coeff(rng)) * left_normed(Word(w.begin(), w.end()), gens.degrees());
  }
  return x;
}

Dgl random_dgl(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> deg(1, 4);
  std::vector<int> degrees(static_cast<std::size_t>(count(rng)));
  for (auto& d : degrees) d = deg(rng);
  std::sort(degrees.begin(), degrees.end());
  Dgl l("random");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    Tensor diff;
    if (degrees[i] > 1 && !l.generators().empty()) diff = random_element(l.generators(), degrees[i] - 1, rng);
    l.add_generator("g" + std::to_string(i), degrees[i], diff);
  }
  return l;
}

int sign(int a, int b) { return koszul_sign(a, b); }

void algebra_laws(Checker& c) {
  std::mt19937_64 rng(2024);
  int cases = 0;
  while (cases < 600) {
    const Dgl l = random_dgl(rng);
    const auto deg = l.degrees();
    std::uniform_int_distribution<int> ed(1, 4);
    const int da = ed(rng), db = ed(rng);
    const int dc = std::max(1, std::min(ed(rng), 8 - da - db));
    const Tensor a = random_element(l.generators(), da, rng);
    const Tensor b = random_element(l.generators(), db, rng);
    const Tensor z = random_element(l.generators(), dc, rng);
    if (a.is_zero() || b.is_zero()) continue;
    ++cases;
    const std::vector<int> odeg(deg.begin(), deg.end());
    const Tensor ab = bracket(a, b, deg);
    c.expect(testing_support::to_oracle(ab) ==
                 oracle::bracket(testing_support::to_oracle(a), testing_support::to_oracle(b), odeg),
             "bracket differs from the oracle");
    c.expect((ab + sign(da, db) * bracket(b, a, deg)).is_zero(), "antisymmetry");
    if (!z.is_zero()) {
      const Tensor jacobi = sign(da, dc) * bracket(a, bracket(b, z, deg), deg) +
                            sign(db, da) * bracket(b, bracket(z, a, deg), deg) +
                            sign(dc, db) * bracket(z, bracket(a, b, deg), deg);
      c.expect(jacobi.is_zero(), "jacobi");
    }
    const Tensor leibniz = l.d(ab) - bracket(l.d(a), b, deg) - (da % 2 ? -1 : 1) * bracket(a, l.d(b), deg);
    c.expect(leibniz.is_zero(), "leibniz");
    c.expect(testing_support::to_oracle(l.d(ab)) ==
                 oracle::derive(testing_support::to_oracle(ab), testing_support::differentials_of(l), odeg),
             "derivation differs from the oracle");
  }
}

void dimensions(Checker& c) {
  GeneratorSet g;
  g.add("x", 2);
  g.add("y", 2);
  const std::vector<int> deg{2, 2};
  for (int d = 1; d <= 12; ++d) {
    const std::size_t got = lie_basis(g, d).size();
    const std::size_t brute = oracle::lie_dimension(deg, d);
    const std::size_t witt = d % 2 ? 0 : oracle::witt_dimension(2, static_cast<std::size_t>(d / 2));
    c.expect(got == brute, "degree " + std::to_string(d) + ": " + std::to_string(got) + " vs brute force " +
                               std::to_string(brute));
    c.expect(got == witt, "degree " + std::to_string(d) + ": " + std::to_string(got) + " vs necklace count");
  }
  c.expect(lie_basis(g, 4).size() == 1 && lie_basis(g, 6).size() == 2, "lengths 2 and 3");
}

std::string first(const std::vector<std::string>& v) { return v.empty() ? "" : v.front(); }

std::vector<std::pair<std::string, ProductModel>> acceptance_products() {
  return {{"S2xS2", binary_product(sphere2(), sphere2(), 10)},
          {"S3xS3", binary_product(sphere3(), sphere3(), 10)},
          {"CP2xS3", binary_product(cp2(), sphere3(), 10)}};
}

void products(Checker& c) {
  for (const auto& [name, p] : acceptance_products()) {
    c.expect(check_d_squared(*p.dgl, 10).pass, name + " d^2");
    c.expect(check_quasi_iso(p.projections, 7).pass, name + " quasi-iso");
    const auto inv = check_product_invariants(p);
    c.expect(inv.pass, name + " invariants " + first(inv.failures));
    const auto st = check_stage_containment(p);
    c.expect(st.pass, name + " stages " + first(st.failures));
  }
}

void diagonal(Checker& c) {
  const auto d = diagonal_model(cp2(), 2, 8);
  c.expect(check_chain_map(d.delta, 8).pass, "chain map");
  const auto report = check_diagonal(d, 8);
  c.expect(report.pass, "diagonal " + first(report.failures));
  for (std::size_t k = 0; k < d.power.projections.size(); ++k) {
    const auto composite = d.delta.then(d.power.projections[k]);
    c.expect(composite.images() == DglMorphism::identity(d.power.factors[k]).images(), "projection of delta");
  }
}

std::vector<Certificate> certificates;

void keep(const SecatResult& r) {
  for (const auto& o : r.outcomes) {
    if (o.certificate) certificates.push_back(*o.certificate);
  }
}

bool verified(const SecatResult& r, int bound) {
  if (!r.value) return false;
  const auto& o = r.outcomes.at(static_cast<std::size_t>(*r.value));
  return o.certificate && verify_certificate(*o.certificate, bound).pass;
}

void ls_category(Checker& c) {
  struct Case {
    std::string name;
    DglPtr l;
    int value;
  };
  for (const auto& k : {Case{"S2", sphere2(), 1}, Case{"S3", sphere3(), 1}, Case{"CP2", cp2(), 2},
                        Case{"S3xS3", testing_support::s3xs3(), 2}}) {
    const auto r = cat(k.l, 3, 8);
    keep(r);
    c.expect(r.value == k.value, k.name + " value");
    c.expect(verified(r, 8), k.name + " certificate");
  }
  const auto r = cat(cp2(), 1, 8);
  c.expect(r.outcomes.size() == 2, "CP2 outcomes");
  if (r.outcomes.size() == 2) {
    const auto& o = r.outcomes[1];
    c.expect(!o.certificate && o.exhaustive, "CP2 n=1 exhaustive");
    const auto target = binary_product(cp2(), cp2(), 3);
    const bool residual = !o.transcript.records.empty() && !o.transcript.records.back().rhs.empty() &&
                          tensor(*target.dgl, o.transcript.records.back().rhs) == tensor(*target.dgl, "2*[x@1,x@2]");
    c.expect(residual, "CP2 n=1 residual 2*[x@1,x@2]");
  }
}

void topological_complexity(Checker& c) {
  const auto s3 = tc(sphere3(), 3, 8);
  keep(s3.secat);
  c.expect(s3.secat.value == 1, "S3 value");
  c.expect(verified(s3.secat, 8), "S3 certificate");
  const auto s2 = tc(sphere2(), 3, 8);
  keep(s2.secat);
  c.expect(s2.secat.value == 2, "S2 value");
  c.expect(verified(s2.secat, 8), "S2 certificate");
  c.expect(s2.secat.outcomes.size() == 3 && !s2.secat.outcomes[1].certificate && s2.secat.outcomes[1].exhaustive,
           "S2 n=1 exhaustive");
}

void independence(Checker& c) {
  c.expect(!certificates.empty(), "no certificates collected");
  for (const auto& cert : certificates) {
    c.expect(verify_certificate(cert, 8).pass, "unmodified certificate");
    for (std::size_t g = 0; g < cert.expressions.size(); ++g) {
      const auto terms = top_level_terms(cert.expressions[g]);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        std::vector<LieExpr> parts;
        for (std::size_t j = 0; j < terms.size(); ++j) {
          parts.push_back(LieExpr::scale(terms[j].first + (j == k ? 1 : 0), terms[j].second));
        }
        Certificate bad = cert;
        bad.expressions[g] = LieExpr::sum(parts, cert.expressions[g].degree());
        c.expect(!verify_certificate(bad, 8).pass,
                 "mutation survives: " + cert.wedge.map.dgl->id(static_cast<Letter>(g)) + " term " + std::to_string(k));
      }
    }
  }
}

struct SuiteRun {
  std::string reports;
  bool all_ok = true;
};

SuiteRun suite_reports() {
  const std::string m = testing_support::models_dir() + "/";
  const std::vector<std::vector<std::string>> commands{
      {"check", m + "cp2.dgl", "-N", "10"},
      {"homology", m + "s3xs3.dgl", "-N", "6"},
      {"product", m + "cp2.dgl", m + "s3.dgl", "-N", "10"},
      {"product", m + "s2.dgl", m + "s2.dgl", "-N", "10"},
      {"power", m + "cp2.dgl", "--copies", "3", "-N", "8"},
      {"diagonal", m + "cp2.dgl", "--copies", "2", "-N", "8"},
      {"fatwedge", m + "s3_factor.dgl", "--n", "1", "-N", "8"},
      {"secat", m + "s3_factor.dgl", "--max-n", "3", "-N", "8"},
      {"cat", m + "s2.dgl", "--max-n", "3"},
      {"cat", m + "s3.dgl", "--max-n", "3"},
      {"cat", m + "cp2.dgl", "--max-n", "3"},
      {"cat", m + "s3xs3.dgl", "--max-n", "3"},
      {"tc", m + "s3.dgl", "--max-n", "3"},
      {"tc", m + "s2.dgl", "--max-n", "3"},
      {"tc", m + "point.dgl", "--max-n", "3"}};
  SuiteRun run;
  for (auto args : commands) {
    args.push_back("--json");
    args.push_back("--no-timings");
    if (args[0] == "secat" || args[0] == "cat" || args[0] == "tc") {
      args.push_back("--seed");
      args.push_back("7");
    }
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    run.all_ok = run.all_ok && code == cli::kOk && !out.str().empty();
    run.reports += std::to_string(code) + "\n" + out.str() + err.str();
  }
  return run;
}

void determinism(Checker& c) {
  const SuiteRun a = suite_reports();
  const SuiteRun b = suite_reports();
  c.expect(a.all_ok && b.all_ok, "a command did not succeed");
  c.expect(a.reports == b.reports, "reports differ between runs");
}

void round_trip_one(Checker& c, const std::string& name, const MapModel& m) {
  const std::string text = serialize_model(m);
  try {
    const auto again = parse_model(text);
    c.expect(*again.dgl == *m.dgl && again.domain == m.domain, name);
    c.expect(serialize_model(again) == text, name + " text");
  } catch (const Error& e) {
    c.expect(false, name + ": " + e.what());
  }
}

MapModel all_relative(const DglPtr& l) { return MapModel{l, std::vector<bool>(l->size(), false)}; }

MapModel with_stage_tags(const ProductModel& p) {
  Dgl l = *p.dgl;
  const auto stages = l.stages();
  for (std::size_t g = 0; g < l.size(); ++g) l.set_stage_tag(static_cast<Letter>(g), stages[g]);
  return all_relative(std::make_shared<const Dgl>(std::move(l)));
}

void round_trip(Checker& c) {
  for (const auto& [name, p] : acceptance_products()) {
    round_trip_one(c, name, all_relative(p.dgl));
    round_trip_one(c, name + " tagged", with_stage_tags(p));
  }
  round_trip_one(c, "CP2^3", all_relative(power_model(cp2(), 3, 9).dgl));
  round_trip_one(c, "S2^4", all_relative(power_model(sphere2(), 4, 8).dgl));
  round_trip_one(c, "diagonal target", all_relative(diagonal_model(cp2(), 2, 8).power.dgl));
  for (const auto& r : {tc(sphere2(), 2, 8), tc(sphere3(), 1, 8)}) {
    round_trip_one(c, "replacement", r.replacement.map);
  }
  for (const auto& cert : certificates) {
    round_trip_one(c, "fat wedge", all_relative(cert.wedge.kept));
    round_trip_one(c, "power", all_relative(cert.wedge.power.dgl));
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<void(Checker&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "algebra laws on random elements", algebra_laws},
      {2, "Lie dimensions of two even generators through degree 12", dimensions},
      {3, "binary product models", products},
      {4, "diagonal model of CP2", diagonal},
      {5, "LS category", ls_category},
      {6, "topological complexity", topological_complexity},
      {7, "certificate mutations are rejected", independence},
      {8, "byte-identical JSON reports", determinism},
      {9, "model file round trip", round_trip},
  };
  bool all = true;
  for (const auto& k : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      k.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && c.pass();
    std::printf("criterion %d: %s  %s (%s, %.2fs)\n", k.id, c.pass() ? "PASS" : "FAIL", k.title.c_str(),
                c.summary().c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
