#include <gtest/gtest.h>

#include "quillen/errors.hpp"
#include "quillen/secat.hpp"
#include "support.hpp"

using namespace quillen;
using testing_support::cp2;
using testing_support::make_dgl;
using testing_support::sphere2;
using testing_support::sphere3;
using testing_support::tensor;

namespace {

SecatProblem cat_problem(const DglPtr& l, int n, int bound = 8) {
  return SecatProblem{make_map_model(*l, std::vector<bool>(l->size(), false)), n, bound, {}};
}

Certificate with_image(const Certificate& c, Letter g, const std::string& text) {
  Certificate out = c;
  const auto& kept = *c.wedge.kept;
  out.expressions[g] = parse_lie(text, kept.generators());
  return out;
}

}  // namespace

TEST(FindAlpha, EvenSphereAtOne) {
  auto o = find_alpha(cat_problem(sphere3(), 1));
  ASSERT_TRUE(o.certificate);
  const auto& kept = *o.certificate->wedge.kept;
  EXPECT_EQ(o.certificate->alpha.image(0), tensor(kept, "w@1 + w@2"));
  EXPECT_TRUE(verify_certificate(*o.certificate, 8).pass);
}

TEST(FindAlpha, CP2AtOneIsExhaustivelyImpossible) {
  auto o = find_alpha(cat_problem(cp2(), 1));
  EXPECT_FALSE(o.certificate);
  EXPECT_TRUE(o.exhaustive);
  ASSERT_FALSE(o.transcript.records.empty());
  const auto& last = o.transcript.records.back();
  EXPECT_EQ(last.generator, "y");
  EXPECT_EQ(last.unknowns, 0u);
  EXPECT_FALSE(last.consistent);
  auto target = binary_product(cp2(), cp2(), 3);
  EXPECT_EQ(tensor(*target.dgl, last.rhs), tensor(*target.dgl, "2*[x@1,x@2]"));
}

TEST(FindAlpha, CP2AtTwo) {
  auto o = find_alpha(cat_problem(cp2(), 2));
  ASSERT_TRUE(o.certificate);
  const auto& kept = *o.certificate->wedge.kept;
  EXPECT_EQ(o.certificate->alpha.image(1),
            tensor(kept, "y@1 + y@2 + y@3 + 2*s{x@1,x@2} + 2*s{x@1,x@3} + 2*s{x@2,x@3}"));
  EXPECT_TRUE(verify_certificate(*o.certificate, 8).pass);
}

TEST(FindAlpha, ZeroNeedsEmptyRelativePart) {
  auto o = find_alpha(cat_problem(sphere3(), 0));
  EXPECT_FALSE(o.certificate);
  EXPECT_TRUE(o.exhaustive);
  auto identity = make_map_model(*cp2(), {true, true});
  auto id = find_alpha(SecatProblem{identity, 0, 8, {}});
  ASSERT_TRUE(id.certificate);
  EXPECT_TRUE(verify_certificate(*id.certificate, 8).pass);
}

TEST(FindAlpha, RejectsSmallDegreeBound) {
  EXPECT_THROW(find_alpha(cat_problem(cp2(), 1, 2)), InputError);
}

TEST(FindAlpha, EffectiveDegree) {
  auto o = find_alpha(cat_problem(cp2(), 2, 10));
  EXPECT_EQ(o.effective_degree, 3);
}

TEST(Verify, DetectsLinearPartTampering) {
  auto o = find_alpha(cat_problem(sphere3(), 1));
  ASSERT_TRUE(o.certificate);
  auto bad = with_image(*o.certificate, 0, "w@1");
  auto report = verify_certificate(bad, 8);
  EXPECT_FALSE(report.pass);
}

TEST(Verify, DetectsIdealTampering) {
  auto s3 = find_alpha(cat_problem(make_dgl("S3sq", {{"w", 2, ""}, {"u", 4, ""}}), 1));
  ASSERT_TRUE(s3.certificate);
  auto quad = with_image(*s3.certificate, 1, "u@1 + u@2 + [w@1,w@2]");
  auto report = verify_certificate(quad, 8);
  EXPECT_FALSE(report.pass);
}

TEST(Verify, EveryCoefficientMutationFails) {
  for (const auto& o : {find_alpha(cat_problem(cp2(), 2)), find_alpha(cat_problem(sphere3(), 1))}) {
    ASSERT_TRUE(o.certificate);
    const auto& c = *o.certificate;
    for (std::size_t g = 0; g < c.expressions.size(); ++g) {
      const auto terms = top_level_terms(c.expressions[g]);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        std::vector<LieExpr> parts;
        for (std::size_t j = 0; j < terms.size(); ++j) {
          const Rational coeff = terms[j].first + (j == k ? 1 : 0);
          parts.push_back(LieExpr::scale(coeff, terms[j].second));
        }
        Certificate bad = c;
        bad.expressions[g] = LieExpr::sum(parts, c.expressions[g].degree());
        EXPECT_FALSE(verify_certificate(bad, 8).pass) << g << " " << k;
      }
    }
  }
}

TEST(Cat, KnownValues) {
  EXPECT_EQ(cat(sphere2(), 3, 8).value, 1);
  EXPECT_EQ(cat(sphere3(), 3, 8).value, 1);
  EXPECT_EQ(cat(cp2(), 3, 8).value, 2);
  EXPECT_EQ(cat(testing_support::s3xs3(), 3, 8).value, 2);
  EXPECT_EQ(cat(testing_support::point(), 3, 8).value, 0);
}

TEST(Cat, Monotone) {
  for (const auto& l : {sphere2(), cp2(), testing_support::s3xs3()}) {
    auto r = cat(l, 3, 8);
    ASSERT_TRUE(r.value);
    for (int n = *r.value; n <= 3; ++n) {
      EXPECT_TRUE(find_alpha(cat_problem(l, n)).certificate) << l->name() << " n=" << n;
    }
  }
}

TEST(Tc, KnownValues) {
  auto s3 = tc(sphere3(), 3, 8);
  EXPECT_EQ(s3.secat.value, 1);
  auto s2 = tc(sphere2(), 3, 8);
  EXPECT_EQ(s2.secat.value, 2);
  ASSERT_GE(s2.secat.outcomes.size(), 2u);
  EXPECT_FALSE(s2.secat.outcomes[1].certificate);
  EXPECT_TRUE(s2.secat.outcomes[1].exhaustive);
  EXPECT_TRUE(check_quasi_iso(s2.replacement.rho, 6).pass);
  EXPECT_EQ(tc(testing_support::point(), 3, 8).secat.value, 0);
}

TEST(Secat, UpperBoundTable) {
  auto m = make_map_model(*make_dgl("f", {{"v", 2, ""}, {"w", 2, ""}, {"s", 5, "[v,w]"}}), {true, false, false});
  auto r = secat_upper_bound(m, 3, 8);
  EXPECT_EQ(r.value, 1);
  ASSERT_EQ(r.outcomes.size(), 2u);
  EXPECT_FALSE(r.outcomes[0].certificate);
  EXPECT_TRUE(r.outcomes[1].certificate);
}

TEST(Secat, Deterministic) {
  auto a = cat(cp2(), 3, 8, SearchOptions{5, 100, 4});
  auto b = cat(cp2(), 3, 8, SearchOptions{5, 100, 4});
  ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    ASSERT_EQ(a.outcomes[i].certificate.has_value(), b.outcomes[i].certificate.has_value());
    if (a.outcomes[i].certificate) {
      EXPECT_EQ(certificate_table(*a.outcomes[i].certificate), certificate_table(*b.outcomes[i].certificate));
    }
    EXPECT_EQ(a.outcomes[i].transcript.records.size(), b.outcomes[i].transcript.records.size());
  }
}
