#include <algorithm>
#include <functional>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quillen/errors.hpp"
#include "quillen/models.hpp"
#include "support.hpp"

using namespace quillen;
using testing_support::cp2;
using testing_support::make_dgl;
using testing_support::sphere2;
using testing_support::sphere3;
using testing_support::tensor;

namespace {

std::vector<std::string> ids(const Dgl& l) {
  std::vector<std::string> out;
  for (const auto& g : l.generators().all()) out.push_back(g.id);
  return out;
}

bool every_word_uses(const Tensor& t, const std::function<bool(Letter)>& pred) {
  for (const auto& [w, c] : t.terms()) {
    if (std::none_of(w.begin(), w.end(), pred)) return false;
  }
  return true;
}

void expect_valid_binary(const ProductModel& p, int n) {
  EXPECT_TRUE(check_d_squared(*p.dgl, n).pass);
  EXPECT_TRUE(check_quasi_iso(p.projections, n - 1).pass);
  auto inv = check_product_invariants(p);
  EXPECT_TRUE(inv.pass) << (inv.failures.empty() ? "" : inv.failures.front());
  auto stages = check_stage_containment(p);
  EXPECT_TRUE(stages.pass) << (stages.failures.empty() ? "" : stages.failures.front());
}

}  // namespace

TEST(Beta, BaseCase) {
  auto p = binary_product(sphere3(), sphere3(), 8);
  const auto& l = *p.dgl;
  auto r = beta(p, tensor(l, "[w@1,w@2]"));
  EXPECT_EQ(r.beta, tensor(l, "s{w@1,w@2}"));
  EXPECT_TRUE(r.d_plus.is_zero());
}

TEST(Beta, NestedBracket) {
  auto p = binary_product(cp2(), sphere3(), 10);
  const auto& l = *p.dgl;
  auto is_suspension = [&](Letter g) { return p.words[g].length() >= 2; };
  for (const char* text : {"[[x@1,w@2],x@1]", "[[y@1,w@2],w@2]", "[x@1,[x@1,w@2]] - [w@2,[x@1,x@1]]"}) {
    const Tensor xi = tensor(l, text);
    auto r = beta(p, xi);
    EXPECT_EQ(l.d(r.beta), xi + r.d_plus) << text;
    EXPECT_TRUE(every_word_uses(r.beta, is_suspension)) << text;
    EXPECT_TRUE(every_word_uses(r.d_plus, is_suspension)) << text;
  }
}

TEST(Beta, RejectsUnmixedInput) {
  auto p = binary_product(cp2(), sphere3(), 8);
  EXPECT_THROW(beta(p, tensor(*p.dgl, "[x@1,x@1]")), InputError);
}

TEST(BinaryProduct, EvenSpheres) {
  auto p = binary_product(sphere3(), sphere3(), 10);
  EXPECT_EQ(ids(*p.dgl), (std::vector<std::string>{"w@1", "w@2", "s{w@1,w@2}"}));
  EXPECT_EQ(p.dgl->degree(2), 5);
  EXPECT_EQ(p.dgl->differential(2), tensor(*p.dgl, "[w@1,w@2]"));
  expect_valid_binary(p, 7);
}

TEST(BinaryProduct, OddSpheres) {
  auto p = binary_product(sphere2(), sphere2(), 10);
  EXPECT_EQ(p.dgl->degree(2), 3);
  EXPECT_EQ(p.dgl->differential(2), tensor(*p.dgl, "[x@1,x@2]"));
  expect_valid_binary(p, 7);
}

TEST(BinaryProduct, CP2TimesS3) {
  auto p = binary_product(cp2(), sphere3(), 10);
  const auto& l = *p.dgl;
  const Letter sx = l.generators().at("s{x@1,w@2}");
  const Letter sy = l.generators().at("s{y@1,w@2}");
  EXPECT_EQ(l.degree(sx), 4);
  EXPECT_EQ(l.degree(sy), 6);
  const Tensor rest = l.differential(sy) - tensor(l, "[y@1,w@2]");
  EXPECT_FALSE(rest.is_zero());
  EXPECT_TRUE(every_word_uses(rest, [&](Letter g) { return g == sx; }));
  expect_valid_binary(p, 8);
}

TEST(BinaryProduct, CP2Squared) {
  auto p = binary_product(cp2(), cp2(), 9);
  expect_valid_binary(p, 9);
}

TEST(BinaryProduct, RecordsOmittedGenerators) {
  auto p = binary_product(cp2(), cp2(), 5);
  EXPECT_FALSE(p.dgl->generators().find("s{y@1,y@2}"));
  EXPECT_EQ(p.omitted, (std::vector<std::string>{"s{y@1,y@2}"}));
}

TEST(BinaryProduct, RejectsNonMinimalFactor) {
  auto linear = make_dgl("lin", {{"x", 1, ""}, {"y", 2, "x"}});
  EXPECT_THROW(binary_product(linear, sphere3(), 6), InputError);
}

TEST(PowerModel, EvenSphereSquare) {
  auto p = power_model(sphere3(), 2, 8);
  EXPECT_EQ(ids(*p.dgl), (std::vector<std::string>{"w@1", "w@2", "s{w@1,w@2}"}));
}

TEST(PowerModel, OddSphereCube) {
  auto p = power_model(sphere2(), 3, 8);
  EXPECT_EQ(ids(*p.dgl), (std::vector<std::string>{"x@1", "x@2", "x@3", "s{x@1,x@2}", "s{x@1,x@3}", "s{x@2,x@3}",
                                                   "s{x@1,x@2,x@3}"}));
  EXPECT_EQ(p.dgl->degree(6), 5);
  EXPECT_TRUE(check_d_squared(*p.dgl, 8).pass);
  EXPECT_TRUE(check_product_invariants(p).pass);
}

TEST(PowerModel, GeneratorCountsMatchEnumeration) {
  struct Case {
    quillen::DglPtr l;
    int copies;
    int bound;
  };
  for (const auto& c : {Case{cp2(), 3, 10}, Case{sphere2(), 4, 9}, Case{testing_support::s3xs3(), 2, 12}}) {
    auto p = power_model(c.l, c.copies, c.bound);
    std::map<int, std::size_t> counts;
    for (const auto& g : p.dgl->generators().all()) ++counts[g.degree];
    EXPECT_EQ(counts, oracle::power_generator_counts(testing_support::degrees_of(*c.l), c.copies, c.bound))
        << c.l->name() << " " << c.copies;
    for (std::size_t g = 0; g < p.words.size(); ++g) {
      EXPECT_EQ(p.dgl->id(static_cast<Letter>(g)), power_generator_id(p.words[g], p.factors));
      EXPECT_EQ(p.dgl->degree(static_cast<Letter>(g)), power_generator_degree(p.words[g], p.factors));
    }
  }
}

TEST(PowerModel, CP2CubeIsValid) {
  auto p = power_model(cp2(), 3, 9);
  EXPECT_TRUE(check_d_squared(*p.dgl, 9).pass);
  EXPECT_TRUE(check_quasi_iso(p.projections, 7).pass);
  auto inv = check_product_invariants(p);
  EXPECT_TRUE(inv.pass) << (inv.failures.empty() ? "" : inv.failures.front());
}

TEST(PowerModel, SingleCopyIsInput) {
  auto p = power_model(cp2(), 1, 8);
  EXPECT_EQ(*p.dgl, *cp2());
}

TEST(Diagonal, EvenSphere) {
  auto d = diagonal_model(sphere3(), 2, 8);
  EXPECT_EQ(d.delta.image(0), tensor(*d.power.dgl, "w@1 + w@2"));
  EXPECT_TRUE(check_diagonal(d, 8).pass);
}

TEST(Diagonal, CP2) {
  auto d = diagonal_model(cp2(), 2, 8);
  const auto& t = *d.power.dgl;
  EXPECT_EQ(d.delta.image(0), tensor(t, "x@1 + x@2"));
  EXPECT_EQ(d.delta.image(1), tensor(t, "y@1 + y@2 + 2*s{x@1,x@2}"));
  EXPECT_TRUE(check_chain_map(d.delta, 8).pass);
  auto report = check_diagonal(d, 8);
  EXPECT_TRUE(report.pass) << (report.failures.empty() ? "" : report.failures.front());
}

TEST(Diagonal, ThreeCopies) {
  auto d = diagonal_model(cp2(), 3, 8);
  auto report = check_diagonal(d, 8);
  EXPECT_TRUE(report.pass) << (report.failures.empty() ? "" : report.failures.front());
}

TEST(Diagonal, SingleCopyIsIdentity) {
  auto d = diagonal_model(cp2(), 1, 8);
  EXPECT_EQ(d.delta.images(), DglMorphism::identity(cp2()).images());
}

TEST(FatWedge, CatOfEvenSphere) {
  auto m = make_map_model(*sphere3(), {false});
  auto f = fat_wedge_model(m, 1, 8);
  EXPECT_EQ(ids(*f.kept), (std::vector<std::string>{"w@1", "w@2"}));
  EXPECT_EQ(std::count(f.in_u.begin(), f.in_u.end(), true), 0);
  EXPECT_TRUE(check_chain_map(f.inclusion, 8).pass);
}

TEST(FatWedge, RelativeSquare) {
  auto m = make_map_model(*make_dgl("vw", {{"v", 2, ""}, {"w", 2, ""}}), {true, false});
  auto f = fat_wedge_model(m, 1, 8);
  EXPECT_EQ(ids(*f.kept), (std::vector<std::string>{"v@1", "w@1", "v@2", "w@2", "s{v@1,v@2}", "s{v@1,w@2}",
                                                    "s{w@1,v@2}"}));
  EXPECT_EQ(std::count(f.in_u.begin(), f.in_u.end(), true), 3);
}

TEST(FatWedge, ZeroKeepsDomain) {
  auto m = make_map_model(*make_dgl("vw", {{"v", 2, ""}, {"w", 2, ""}}), {true, false});
  auto f = fat_wedge_model(m, 0, 8);
  EXPECT_EQ(ids(*f.kept), (std::vector<std::string>{"v"}));
}

TEST(Replacement, SubDglInclusionIsUnchanged) {
  auto source = make_dgl("S3", {{"v", 2, ""}});
  auto target = testing_support::s3xs3();
  DglMorphism f(source, target, {tensor(*target, "v")});
  auto r = cofibration_replacement(f, 8);
  EXPECT_TRUE(r.free_extension);
  EXPECT_EQ(ids(*r.map.dgl), (std::vector<std::string>{"v", "w", "s"}));
  EXPECT_EQ(r.map.domain, (std::vector<bool>{true, false, false}));
  EXPECT_EQ(r.rho.images(), DglMorphism::identity(target).images());
}

TEST(Replacement, BasePointInclusion) {
  auto f = DglMorphism(testing_support::point(), cp2(), {});
  auto r = cofibration_replacement(f, 8);
  EXPECT_EQ(ids(*r.map.dgl), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(r.map.domain, (std::vector<bool>{false, false}));
  EXPECT_TRUE(check_quasi_iso(r.rho, 6).pass);
}

TEST(Replacement, DiagonalOfOddSphere) {
  auto l = make_dgl("S2", {{"v", 1, ""}});
  auto d = diagonal_model(l, 2, 8);
  auto r = cofibration_replacement(d.delta, 8);
  r.map.validate();
  EXPECT_TRUE(check_d_squared(*r.map.dgl, 8).pass);
  EXPECT_TRUE(check_chain_map(r.rho, 8).pass);
  EXPECT_TRUE(check_quasi_iso(r.rho, 6).pass);
  for (Letter v : r.map.domain_letters()) EXPECT_EQ(r.rho.image(v), d.delta.image(v));
}

TEST(Replacement, NonInjectiveLinearPart) {
  auto source = make_dgl("two", {{"a", 2, ""}, {"b", 2, ""}});
  auto target = sphere3();
  DglMorphism f(source, target, {tensor(*target, "w"), tensor(*target, "w")});
  auto r = cofibration_replacement(f, 6);
  EXPECT_FALSE(r.free_extension);
  r.map.validate();
  EXPECT_TRUE(check_d_squared(*r.map.dgl, 6).pass);
  EXPECT_TRUE(check_chain_map(r.rho, 6).pass);
  EXPECT_TRUE(check_quasi_iso(r.rho, 5).pass);
}
