#include <gtest/gtest.h>

#include <memory>

#include "intertwine/error.hpp"
#include "intertwine/kz.hpp"
#include "oracles.hpp"

using namespace intertwine;

namespace {

ModulePtr make(const WeightModule& m) { return std::make_shared<const WeightModule>(m); }

struct Setup {
  std::shared_ptr<const TensorModule> tensor;
  ModulePtr u3;
  GHom seed;
};

Setup setup(const WeightModule& a, const WeightModule& b, const WeightModule& c) {
  Setup s;
  s.tensor = std::make_shared<const TensorModule>(make(a), make(b));
  s.u3 = make(c);
  const auto homs = hom_space(s.tensor, s.u3);
  EXPECT_EQ(homs.size(), 1u);
  s.seed = homs.at(0);
  return s;
}

std::shared_ptr<const VermaTarget> verma(const ModulePtr& u3, const Scalar& level, int cutoff) {
  return std::make_shared<const VermaTarget>(u3, level, cutoff);
}

std::shared_ptr<const ContragredientTarget> contra(const ModulePtr& u3, const Scalar& level, int cutoff) {
  return std::make_shared<const ContragredientTarget>(u3, level, cutoff);
}

void expect_prefixes_equal(const IntertwinerPrefix& a, const IntertwinerPrefix& b) {
  ASSERT_EQ(a.built(), b.built());
  for (int m = 0; m <= a.built(); ++m)
    for (std::size_t t = 0; t < a.tensor().dim(); ++t) {
      ASSERT_EQ(a.Y(m, t).has_value(), b.Y(m, t).has_value());
      if (a.Y(m, t)) EXPECT_EQ(a.Y(m, t)->vec, b.Y(m, t)->vec) << "m=" << m << " t=" << t;
    }
}

}  // namespace

TEST(ObstructionScan, LevelFourAdjointPair) {
  const TensorModule t(make(WeightModule::finite(2)), make(WeightModule::finite(2)));
  const auto r = obstruction_scan(t, Level(4), Scalar(0));
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].N, 1);
  EXPECT_EQ(r.entries[0].eigenvalue, Scalar(12));
  // The L_4 summand occupies one vector in each of the five weight blocks.
  EXPECT_EQ(r.entries[0].eigenvectors.size(), 5u);
  for (const auto& v : r.entries[0].eigenvectors) {
    const auto b = t.block_of(static_cast<std::size_t>(std::find_if(v.begin(), v.end(), [](const Scalar& x) {
                                                        return !x.is_zero();
                                                      }) - v.begin()));
    const auto local = t.restrict(b, v);
    const auto image = t.pair_casimir(b).matrix * local;
    for (std::size_t i = 0; i < local.size(); ++i) EXPECT_EQ(image[i], Scalar(2) * local[i]);
  }
}

TEST(ObstructionScan, LevelZeroWeightThreeEighths) {
  const TensorModule t(make(WeightModule::finite(2)), make(WeightModule::finite(3)));
  const auto r = obstruction_scan(t, Level(0), Scalar(3, 8));
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].N, 4);
}

TEST(ObstructionScan, GenericLevelIsEmpty) {
  const TensorModule t(make(WeightModule::finite(2)), make(WeightModule::finite(2)));
  const auto r = obstruction_scan(t, Level::generic(), Scalar(0));
  EXPECT_TRUE(r.generic_level);
  EXPECT_TRUE(r.entries.empty());
}

TEST(ObstructionScan, UnsupportedShapeThrows) {
  const TensorModule t(make(WeightModule::highest_weight(Scalar(1, 2), 3)),
                       make(WeightModule::highest_weight(Scalar(1, 3), 3)));
  EXPECT_THROW((void)obstruction_scan(t, Level(1), Scalar(0)), UnsupportedShape);
}

TEST(BuildPrefix, SeedIsDegreeZero) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(3), WeightModule::finite(1));
  const auto p = build_prefix(s.seed, verma(s.u3, Scalar(7, 5), 3), 3);
  for (std::size_t t = 0; t < s.tensor->dim(); ++t) {
    ASSERT_TRUE(p.Y(0, t));
    const Vector col = s.seed.column(t);
    for (std::size_t i = 0; i < col.size(); ++i) EXPECT_EQ(p.Y(0, t)->vec.coeff({Monomial{}, i}), col[i]);
  }
}

TEST(BuildPrefix, UnobstructedFiniteCaseVerifies) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(3), WeightModule::finite(1));
  const auto p = build_prefix(s.seed, verma(s.u3, Scalar(7, 5), 3), 3);
  EXPECT_EQ(p.built(), 3);
  EXPECT_FALSE(p.obstructed_at());
  for (int m = 0; m <= 3; ++m) EXPECT_EQ(p.available(m), s.tensor->dim());
  const auto cc = verify_commcomp(p);
  EXPECT_TRUE(cc.ok()) << *cc.counterexample;
  EXPECT_EQ(cc.skipped, 0u);
  const auto kz = kz_residual(p);
  EXPECT_TRUE(kz.ok()) << *kz.counterexample;
  EXPECT_GT(kz.checked, 0u);
}

TEST(BuildPrefix, HighestWeightFactorExample) {
  const Scalar level(-1, 2);
  const auto s = setup(WeightModule::finite(1), WeightModule::highest_weight(Scalar(-3, 2), 7),
                       WeightModule::highest_weight(Scalar(-1, 2), 7));
  const auto p = build_prefix(s.seed, verma(s.u3, level, 3), 3);
  EXPECT_TRUE(p.scan_supported());
  EXPECT_TRUE(p.report().entries.empty());
  EXPECT_EQ(p.built(), 3);
  for (int m = 0; m <= 3; ++m) EXPECT_GT(p.available(m), 0u);
  const auto cc = verify_commcomp(p);
  EXPECT_TRUE(cc.ok()) << *cc.counterexample;
  EXPECT_GT(cc.checked, 50u);
  EXPECT_TRUE(kz_residual(p).ok());
}

TEST(BuildPrefix, IsLinearInSeed) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(2), WeightModule::finite(2));
  const auto target = verma(s.u3, Scalar(5, 3), 2);
  const auto p1 = build_prefix(s.seed, target, 2);
  const auto p2 = build_prefix(s.seed.scaled(Scalar(2)), target, 2);
  const auto p3 = build_prefix(s.seed.plus(s.seed.scaled(Scalar(-3, 7))), target, 2);
  ASSERT_EQ(p1.built(), 2);
  for (int m = 0; m <= 2; ++m)
    for (std::size_t t = 0; t < s.tensor->dim(); ++t) {
      EXPECT_EQ(p2.Y(m, t)->vec, Scalar(2) * p1.Y(m, t)->vec);
      EXPECT_EQ(p3.Y(m, t)->vec, Scalar(4, 7) * p1.Y(m, t)->vec);
    }
}

TEST(BuildPrefix, RebuildIsIdentical) {
  const auto s = setup(WeightModule::finite(1), WeightModule::finite(2), WeightModule::finite(1));
  const auto p = build_prefix(s.seed, verma(s.u3, Scalar(2, 9), 3), 3);
  const auto q = build_prefix(s.seed, verma(s.u3, Scalar(2, 9), 3), 3);
  expect_prefixes_equal(p, q);
}

TEST(BuildPrefix, StopsBeforeObstruction) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(2), WeightModule::finite(0));
  const auto p = build_prefix(s.seed, verma(s.u3, Scalar(4), 3), 3);
  ASSERT_TRUE(p.obstructed_at());
  EXPECT_EQ(*p.obstructed_at(), 1);
  EXPECT_EQ(p.built(), 0);
  // At level 3/4 the same tensor product is unobstructed.
  const auto q = build_prefix(s.seed, verma(s.u3, Scalar(3, 4), 2), 2);
  EXPECT_EQ(q.built(), 2);
}

TEST(BuildPrefix, UnsupportedShapeUsesBlockSingularity) {
  const Scalar lam1(1, 3), lam2(-1, 4);
  auto tensor = std::make_shared<const TensorModule>(make(WeightModule::highest_weight(lam1, 4)),
                                                     make(WeightModule::highest_weight(lam2, 4)));
  const auto u3 = make(WeightModule::highest_weight(lam1 + lam2, 4));
  const auto homs = hom_space(tensor, u3);
  ASSERT_EQ(homs.size(), 1u);
  const auto p = build_prefix(homs[0], verma(u3, Scalar(2, 7), 2), 2);
  EXPECT_FALSE(p.scan_supported());
  const auto cc = verify_commcomp(p);
  EXPECT_TRUE(cc.ok()) << *cc.counterexample;
  EXPECT_GT(cc.checked, 0u);
}

TEST(VerifyCommcomp, DegreeZeroOnly) {
  const auto s = setup(WeightModule::finite(1), WeightModule::finite(1), WeightModule::finite(0));
  const auto p = build_prefix(s.seed, verma(s.u3, Scalar(1), 0), 0);
  const auto r = verify_commcomp(p);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checked, 3u * 4u);
  EXPECT_TRUE(kz_residual(p).ok());
}

TEST(VerifyCommcomp, DetectsPerturbation) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(3), WeightModule::finite(1));
  auto p = build_prefix(s.seed, verma(s.u3, Scalar(7, 5), 2), 2);
  ASSERT_TRUE(verify_commcomp(p).ok());
  oracle::ScalarGen gen(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto q = p;
    const std::size_t t = gen.integer(0, static_cast<int>(s.tensor->dim()) - 1);
    const auto& y = q.Y(2, t);
    ASSERT_TRUE(y);
    if (y->vec.is_zero()) continue;
    q.perturb(2, t, y->vec.terms().begin()->first, Scalar(1, 1000));
    const auto r = verify_commcomp(q);
    EXPECT_FALSE(r.ok());
    ASSERT_TRUE(r.counterexample);
    EXPECT_NE(r.counterexample->find("Y_2"), std::string::npos);
  }
}

TEST(KzResidual, HoldsForAnyHomAtDegreeZero) {
  for (const auto& level : {Scalar(4), Scalar(0), Scalar(-1, 2), Scalar(11, 3)}) {
    const auto s = setup(WeightModule::finite(2), WeightModule::finite(2), WeightModule::finite(0));
    const auto p = build_prefix(s.seed, verma(s.u3, level, 0), 0);
    const auto r = kz_residual(p);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.checked, 9u);
  }
}

TEST(ContragredientPrefix, UnobstructedWhereVermaIsObstructed) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(2), WeightModule::finite(0));
  const auto p = build_prefix_contragredient(s.seed, contra(s.u3, Scalar(4), 2), 2);
  EXPECT_EQ(p.built(), 2);
  for (int m = 0; m <= 2; ++m) EXPECT_EQ(p.available(m), s.tensor->dim());
  const auto cc = verify_commcomp(p);
  EXPECT_TRUE(cc.ok()) << *cc.counterexample;
  EXPECT_EQ(cc.skipped, 0u);
  const auto kz = kz_residual(p);
  EXPECT_TRUE(kz.ok()) << *kz.counterexample;
}

TEST(ContragredientPrefix, MatchesVermaThroughNaturalMap) {
  const std::vector<std::tuple<int, int, int, Scalar>> cases = {
      {2, 3, 1, Scalar(7, 5)}, {1, 1, 0, Scalar(1, 3)}, {2, 2, 2, Scalar(-5, 2)}, {1, 2, 1, Scalar(6)}};
  for (const auto& [a, b, c, level] : cases) {
    const auto s = setup(WeightModule::finite(a), WeightModule::finite(b), WeightModule::finite(c));
    const int n = 2;
    const auto vt = verma(s.u3, level, n);
    const auto ct = contra(s.u3, level, n);
    const auto pv = build_prefix(s.seed, vt, n);
    ASSERT_EQ(pv.built(), n);
    const auto pc = build_prefix_contragredient(s.seed, ct, n);
    for (int m = 0; m <= n; ++m)
      for (std::size_t t = 0; t < s.tensor->dim(); ++t) {
        const auto phi = natural_map(vt->verma(), ct->module(), pv.Y(m, t)->vec, m, s.tensor->weight(t));
        EXPECT_EQ(phi, pc.Y(m, t)->vec) << "L" << a << "xL" << b << "->L" << c << " m=" << m << " t=" << t;
      }
  }
}

TEST(SingularCandidate, LevelFourMostInterestingVanishes) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(2), WeightModule::finite(0));
  const auto target = verma(s.u3, Scalar(4), 2);
  const auto p = build_prefix(s.seed, target, 2);
  const auto& t = *s.tensor;
  Vector v(t.dim());
  v[t.index(0, 1)] = 1;
  v[t.index(1, 0)] = 1;
  const auto cand = singular_candidate(p, 1, v);
  EXPECT_TRUE(cand.is_zero());
  const auto d = candidate_diagnostics(target->verma(), cand);
  EXPECT_TRUE(d.is_zero && d.in_radical && d.annihilated);
}

TEST(SingularCandidate, LevelFourAllEigenvectors) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(2), WeightModule::finite(0));
  const auto target = verma(s.u3, Scalar(4), 2);
  const auto p = build_prefix(s.seed, target, 2);
  for (const auto& v : p.report().entries.at(0).eigenvectors) {
    const auto cand = singular_candidate(p, 1, v);
    const auto d = candidate_diagnostics(target->verma(), cand);
    if (!d.is_zero) EXPECT_TRUE(d.in_radical);
  }
}

TEST(SingularCandidate, LevelZeroDegreeFour) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(3), WeightModule::finite(1));
  const auto target = verma(s.u3, Scalar(0), 4);
  EXPECT_EQ(target->conformal_weight(), Scalar(3, 8));
  const auto p = build_prefix(s.seed, target, 4);
  ASSERT_EQ(p.obstructed_at(), std::optional<int>(4));
  ASSERT_EQ(p.built(), 3);
  EXPECT_TRUE(verify_commcomp(p).ok());
  for (const auto& v : p.report().entries.at(0).eigenvectors) {
    const auto cand = singular_candidate(p, 4, v);
    const auto d = candidate_diagnostics(target->verma(), cand);
    if (!d.is_zero) {
      EXPECT_TRUE(d.in_radical);
      const auto& key = cand.terms().begin()->first;
      EXPECT_EQ(degree(key.mono), 4);
      EXPECT_EQ(target->verma().sugawara_L0(cand), Scalar(35, 8) * cand);
    }
  }
}

TEST(SingularCandidate, RejectsBadInput) {
  const auto s = setup(WeightModule::finite(2), WeightModule::finite(2), WeightModule::finite(0));
  const auto p = build_prefix(s.seed, verma(s.u3, Scalar(4), 2), 2);
  const auto& t = *s.tensor;
  Vector v(t.dim());
  v[t.index(0, 1)] = 1;
  EXPECT_THROW((void)singular_candidate(p, 1, v), DomainError);
  v[t.index(1, 0)] = 1;
  EXPECT_THROW((void)singular_candidate(p, 2, v), DomainError);
  EXPECT_THROW((void)singular_candidate(p, 1, Vector(t.dim())), DomainError);
}

TEST(CandidateDiagnostics, ZeroVector) {
  const GeneralizedVermaModule v(make(WeightModule::finite(0)), Scalar(1), 2);
  const auto d = candidate_diagnostics(v, GradedVector{});
  EXPECT_TRUE(d.is_zero && d.in_radical && d.annihilated);
}

TEST(SingularCandidate, NonzeroCandidatesLieInRadical) {
  // Negative levels where the recursion produces genuinely nonzero candidates.
  const std::vector<std::tuple<int, int, int, Scalar, int>> cases = {
      {2, 2, 4, Scalar(-5), 2}, {1, 2, 3, Scalar(-5), 1}, {3, 3, 6, Scalar(-6), 3}, {2, 3, 5, Scalar(-6), 2}};
  for (const auto& [a, b, c, level, N] : cases) {
    const auto s = setup(WeightModule::finite(a), WeightModule::finite(b), WeightModule::finite(c));
    const auto target = verma(s.u3, level, N);
    const auto p = build_prefix(s.seed, target, N);
    ASSERT_EQ(p.obstructed_at(), std::optional<int>(N));
    std::size_t nonzero = 0;
    for (const auto& v : p.report().entries.at(0).eigenvectors) {
      const auto cand = singular_candidate(p, N, v);
      const auto d = candidate_diagnostics(target->verma(), cand);
      if (d.is_zero) continue;
      ++nonzero;
      EXPECT_TRUE(d.in_radical);
      EXPECT_EQ(target->verma().sugawara_L0(cand), (target->conformal_weight() + Scalar(N)) * cand);
    }
    EXPECT_GT(nonzero, 0u) << "L" << a << "xL" << b << "->L" << c;
  }
}

TEST(SingularCandidate, LevelZeroRadicalIsTrivialAtDegreeFour) {
  // Forces the degree-4 candidate at level 0 to vanish.
  const GeneralizedVermaModule v(std::make_shared<const WeightModule>(WeightModule::finite(1)), Scalar(0), 4);
  for (int w = -9; w <= 9; w += 2) EXPECT_TRUE(v.contravariant_radical(4, Scalar(w)).empty()) << w;
}
