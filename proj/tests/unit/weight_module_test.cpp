#include <gtest/gtest.h>

#include <memory>

#include "intertwine/error.hpp"
#include "intertwine/weight_module.hpp"
#include "oracles.hpp"

using namespace intertwine;

namespace {

ModulePtr make(const WeightModule& m) { return std::make_shared<const WeightModule>(m); }

std::shared_ptr<const TensorModule> tensor(const WeightModule& a, const WeightModule& b) {
  return std::make_shared<const TensorModule>(make(a), make(b));
}

const Element& gen(std::size_t a) {
  static const std::vector<Element> basis = {sl2()->basis(0), sl2()->basis(1), sl2()->basis(2)};
  return basis.at(a);
}

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

// Supported shapes with modest windows, used by several property tests.
std::vector<std::shared_ptr<const TensorModule>> shapes() {
  return {
      tensor(WeightModule::finite(1), WeightModule::finite(1)),
      tensor(WeightModule::finite(2), WeightModule::finite(3)),
      tensor(WeightModule::finite(2), WeightModule::highest_weight(Scalar(-3, 2), 4)),
      tensor(WeightModule::highest_weight(Scalar(1, 3), 4), WeightModule::finite(1)),
      tensor(WeightModule::finite(1), WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 4)),
      tensor(WeightModule::dense(Scalar(0), Scalar(21, 8), 3), WeightModule::finite(1)),
      tensor(WeightModule::highest_weight(Scalar(-1, 2), 3), WeightModule::highest_weight(Scalar(-3, 4), 3)),
  };
}

}  // namespace

TEST(Modules, FiniteBasics) {
  const auto l1 = WeightModule::finite(1);
  EXPECT_EQ(l1.dim(), 2u);
  EXPECT_EQ(l1.act(gen(0), unit(2, 1)), unit(2, 0));
  const auto l0 = WeightModule::finite(0);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_TRUE(is_zero(l0.act(gen(a), unit(1, 0))));
  for (int p = 0; p <= 6; ++p) EXPECT_EQ(WeightModule::finite(p).dim(), static_cast<std::size_t>(p + 1));
}

TEST(Modules, ActionsAreRepresentations) {
  for (int p = 0; p <= 5; ++p) EXPECT_TRUE(is_representation(*sl2(), WeightModule::finite(p).representation()));
  EXPECT_TRUE(is_representation(*sl2(), WeightModule::finite(3).dual().representation()));
}

TEST(Modules, WindowEscapeIsExplicit) {
  const auto hw = WeightModule::highest_weight(Scalar(-3, 2), 2);
  EXPECT_THROW((void)hw.act(gen(2), unit(3, 2)), WindowEscape);
  EXPECT_TRUE(is_zero(hw.act(gen(0), unit(3, 0))));
  const auto d = WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 1);
  EXPECT_THROW((void)d.act(gen(0), unit(3, 0)), WindowEscape);
  EXPECT_THROW((void)d.act(gen(2), unit(3, 2)), WindowEscape);
  EXPECT_THROW((void)d.representation(), WindowEscape);
}

TEST(Modules, DenseEfScalar) {
  const Scalar delta(-3, 8);
  const auto d = WeightModule::dense(Scalar(1, 3), delta, 3);
  for (std::size_t i = 1; i + 1 < d.dim(); ++i) {
    const Scalar mu = d.weight(i);
    const Vector v = d.act(gen(0), d.act(gen(2), unit(d.dim(), i)));
    EXPECT_EQ(v, Scalar(1, 2) * (delta - Scalar(1, 2) * mu * (mu - Scalar(2))) * Matrix::identity(d.dim()) *
                     unit(d.dim(), i));
  }
}

TEST(Modules, DenseRejectsExtremalVectors) {
  // δ = ½ν(ν−2) with ν = 4 in the coset 0 + 2ℤ.
  EXPECT_THROW(WeightModule::dense(Scalar(0), Scalar(4), 2), DomainError);
  EXPECT_NO_THROW(WeightModule::dense(Scalar(1), Scalar(4), 2));
  EXPECT_THROW(WeightModule::highest_weight(Scalar(2), 3), DomainError);
}

TEST(Modules, CasimirScalars) {
  EXPECT_EQ(casimir_matrix(WeightModule::finite(1)).matrix, Scalar(3, 2) * Matrix::identity(2));
  EXPECT_EQ(casimir_matrix(WeightModule::finite(0)).matrix, Matrix(1, 1));
  const auto hw = WeightModule::highest_weight(Scalar(-3, 2), 4);
  const auto c = casimir_matrix(hw);
  for (std::size_t i = 0; i < hw.dim(); ++i) {
    if (!c.column_valid[i]) continue;
    EXPECT_EQ(c.matrix(i, i), hw.casimir_value());
  }
  EXPECT_FALSE(c.column_valid.back());
  const auto d = WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 3);
  const auto cd = casimir_matrix(d);
  for (std::size_t i = 0; i < d.dim(); ++i)
    if (cd.column_valid[i]) EXPECT_EQ(cd.matrix(i, i), Scalar(-3, 8));
}

TEST(Modules, CasimirCommutesWithGenerators) {
  for (const auto& m : {WeightModule::finite(3), WeightModule::highest_weight(Scalar(1, 2), 5),
                        WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 3)}) {
    const auto c = casimir_matrix(m);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t i = 0; i < m.dim(); ++i) {
        if (!c.column_valid[i]) continue;
        const SparseImage img = m.apply(gen(a), i);
        if (img.escaped) continue;
        for (const auto& [j, v] : img.terms) {
          if (!c.column_valid[j]) continue;
          EXPECT_EQ(c.matrix(j, j) * v, v * c.matrix(i, i));
        }
      }
    }
  }
}

TEST(Modules, ContravariantFormIsContravariant) {
  for (const auto& m : {WeightModule::finite(4), WeightModule::highest_weight(Scalar(-3, 2), 4),
                        WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 2), WeightModule::finite(3).dual()}) {
    const Vector& c = m.contravariant_form();
    for (std::size_t i = 0; i + 1 < m.dim(); ++i) {
      // ⟨e v_{i+1}, v_i⟩ = ⟨v_{i+1}, f v_i⟩
      const SparseImage up = m.apply(gen(0), i + 1);
      const SparseImage down = m.apply(gen(2), i);
      ASSERT_EQ(up.terms.size(), 1u);
      ASSERT_EQ(down.terms.size(), 1u);
      EXPECT_EQ(up.terms[0].second * c[i], down.terms[0].second * c[i + 1]);
      EXPECT_FALSE(c[i].is_zero());
    }
  }
  // Binomial coefficients (λ choose j) for highest-weight modules.
  const auto hw = WeightModule::highest_weight(Scalar(-3, 2), 3);
  EXPECT_EQ(hw.contravariant_form()[2], Scalar(-3, 2) * Scalar(-5, 2) / Scalar(2));
}

TEST(Tensor, DenseBlocksHaveExpectedEigenvalues) {
  const auto t = tensor(WeightModule::finite(1), WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 4));
  int checked = 0;
  for (std::size_t b = 0; b < t->blocks().size(); ++b) {
    if (!t->blocks()[b].complete) continue;
    const auto c = t->tensor_casimir(b);
    if (!c.fully_valid()) continue;
    ASSERT_EQ(c.matrix.rows(), 2u);
    EXPECT_EQ(eigenspace(c.matrix, Scalar(-3, 8)).size(), 1u);
    EXPECT_EQ(eigenspace(c.matrix, Scalar(5, 8)).size(), 1u);
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(Tensor, PairCasimirIdentity) {
  for (const auto& t : shapes()) {
    int checked = 0;
    for (std::size_t b = 0; b < t->blocks().size(); ++b) {
      const auto pc = t->pair_casimir(b);
      const auto tc = t->tensor_casimir(b);
      const auto fc = t->factor_casimirs(b);
      const Matrix rhs = Scalar(1, 2) * (tc.matrix - fc.matrix);
      for (std::size_t col = 0; col < pc.matrix.rows(); ++col) {
        if (!pc.column_valid[col] || !tc.column_valid[col] || !fc.column_valid[col]) continue;
        EXPECT_EQ(pc.matrix.column(col), rhs.column(col)) << t->label() << " block " << b;
        ++checked;
      }
    }
    EXPECT_GT(checked, 0) << t->label();
  }
}

TEST(Tensor, PairCasimirSmallCases) {
  const auto l22 = tensor(WeightModule::finite(2), WeightModule::finite(2));
  const auto top = *l22->block_of_weight(Scalar(4));
  EXPECT_EQ(l22->pair_casimir(top).matrix, Matrix::identity(1) * Scalar(2));
  const auto l11 = tensor(WeightModule::finite(1), WeightModule::finite(1));
  const auto mid = *l11->block_of_weight(Scalar(0));
  const Matrix c = l11->pair_casimir(mid).matrix;
  EXPECT_EQ(eigenspace(c, Scalar(1, 2)).size(), 1u);
  EXPECT_EQ(eigenspace(c, Scalar(-3, 2)).size(), 1u);
  const auto l30 = tensor(WeightModule::finite(3), WeightModule::finite(0));
  for (std::size_t b = 0; b < l30->blocks().size(); ++b) EXPECT_TRUE(l30->pair_casimir(b).matrix.is_zero());
}

TEST(Tensor, MostInterestingEigenvector) {
  // e⊗h + h⊗e in the L_2 gauge e ↦ v0, h ↦ −v1.
  const auto t = tensor(WeightModule::finite(2), WeightModule::finite(2));
  const auto b = *t->block_of_weight(Scalar(2));
  const auto c = t->tensor_casimir(b).matrix;
  const auto vs = eigenspace(c, Scalar(12));
  ASSERT_EQ(vs.size(), 1u);
  Vector expected(9);
  expected[t->index(0, 1)] = -1;
  expected[t->index(1, 0)] = -1;
  const Vector local = t->restrict(b, expected);
  EXPECT_EQ(c * local, Scalar(12) * Matrix::identity(2) * local);
  EXPECT_EQ(rank(Matrix::from_rows({vs[0], local})), 1u);
}

TEST(Decompose, Examples) {
  const auto s = decompose(WeightModule::finite(2), WeightModule::finite(2));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].module, ModuleSpec::finite(4));
  EXPECT_EQ(s[0].casimir, Scalar(12));
  EXPECT_EQ(s[1].casimir, Scalar(4));
  EXPECT_EQ(s[2].casimir, Scalar(0));

  const auto m = decompose(WeightModule::finite(1), WeightModule::highest_weight(Scalar(-3, 2), 4));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].module.lambda, Scalar(-1, 2));
  EXPECT_EQ(m[1].module.lambda, Scalar(-5, 2));

  const auto d = decompose(WeightModule::finite(1), WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 2));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].casimir, Scalar(5, 8));
  EXPECT_EQ(d[1].casimir, Scalar(-3, 8));

  // 2δ+1 not a square: δ± live in ℚ(√2).
  const auto [plus, minus] = dense_tensor_eigenvalues(Scalar(1, 2));
  EXPECT_EQ(plus, Scalar(1) + Scalar::sqrt(2));
  EXPECT_EQ(minus, Scalar(1) - Scalar::sqrt(2));
  // Degenerate discriminant.
  const auto deg = decompose(WeightModule::finite(1), WeightModule::dense(Scalar(1, 3), Scalar(-1, 2), 2));
  ASSERT_EQ(deg.size(), 1u);
  EXPECT_EQ(deg[0].multiplicity, 2);

  EXPECT_THROW(decompose(WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 2),
                         WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 2)),
               UnsupportedShape);
  EXPECT_THROW(decompose(WeightModule::finite(1), WeightModule::highest_weight(Scalar(-1), 2)), UnsupportedShape);
}

TEST(Decompose, MatchesEigenspaceOracle) {
  for (const auto& t : shapes()) {
    std::vector<Summand> summands;
    try {
      summands = decompose(t->first(), t->second());
    } catch (const UnsupportedShape&) {
      continue;
    }
    std::size_t total = 0;
    for (std::size_t b = 0; b < t->blocks().size(); ++b) {
      if (!t->blocks()[b].complete) continue;
      const auto c = t->tensor_casimir(b);
      if (!c.fully_valid()) continue;
      std::size_t found = 0;
      for (const auto& s : summands) found += eigenspace(c.matrix, s.casimir).size();
      EXPECT_EQ(found, c.matrix.rows()) << t->label() << " block " << t->blocks()[b].weight;
      total += found;
    }
    EXPECT_GT(total, 0u) << t->label();
  }
  // Finite case: full multiset including multiplicities.
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      const auto t = tensor(WeightModule::finite(p), WeightModule::finite(q));
      for (const auto& s : decompose(t->first(), t->second())) {
        std::size_t dim = 0;
        for (std::size_t b = 0; b < t->blocks().size(); ++b)
          dim += eigenspace(t->tensor_casimir(b).matrix, s.casimir).size();
        EXPECT_EQ(dim, static_cast<std::size_t>(s.module.p() + 1));
      }
    }
}

TEST(HomSpace, Examples) {
  const auto t23 = tensor(WeightModule::finite(2), WeightModule::finite(3));
  const auto h = hom_space(t23, make(WeightModule::finite(1)));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_TRUE(is_equivariant(h[0]));
  EXPECT_TRUE(hom_space(tensor(WeightModule::finite(1), WeightModule::finite(1)), make(WeightModule::finite(3))).empty());

  const auto td = tensor(WeightModule::finite(1), WeightModule::dense(Scalar(1, 3), Scalar(-3, 8), 4));
  const auto hd = hom_space(td, make(WeightModule::dense(Scalar(4, 3), Scalar(-3, 8), 4)));
  ASSERT_EQ(hd.size(), 1u);
  EXPECT_TRUE(is_equivariant(hd[0]));
  EXPECT_FALSE(hd[0].map.is_zero());
  EXPECT_TRUE(hom_space(td, make(WeightModule::dense(Scalar(4, 3), Scalar(1, 8), 4))).empty());
}

TEST(HomSpace, DimensionMatchesDecomposition) {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q)
      for (int r = 0; r <= 8; ++r) {
        const auto t = tensor(WeightModule::finite(p), WeightModule::finite(q));
        const auto u3 = WeightModule::finite(r);
        const auto h = hom_space(t, make(u3));
        EXPECT_EQ(static_cast<int>(h.size()), multiplicity(decompose(t->first(), t->second()), u3));
        for (const auto& f : h) EXPECT_TRUE(is_equivariant(f));
      }
  const auto hw = tensor(WeightModule::finite(2), WeightModule::highest_weight(Scalar(-3, 2), 6));
  for (int k = 0; k <= 2; ++k) {
    const auto h = hom_space(hw, make(WeightModule::highest_weight(Scalar(1, 2) - Scalar(2 * k), 6)));
    ASSERT_EQ(h.size(), 1u);
    EXPECT_TRUE(is_equivariant(h[0]));
  }
}

TEST(HomSpace, PerturbedMapIsNotEquivariant) {
  const auto t = tensor(WeightModule::finite(2), WeightModule::finite(2));
  auto h = hom_space(t, make(WeightModule::finite(0)));
  ASSERT_EQ(h.size(), 1u);
  h[0].map(0, t->index(1, 1)) += Scalar(1);
  EXPECT_FALSE(is_equivariant(h[0]));
}

TEST(ModuleSpec, ParseAndPrint) {
  EXPECT_EQ(ModuleSpec::parse("finite:2"), ModuleSpec::finite(2));
  EXPECT_EQ(ModuleSpec::parse("hw:-3/2:5").str(), "hw:-3/2:5");
  EXPECT_EQ(ModuleSpec::parse("dense:1/3:-3/8:4").str(), "dense:1/3:-3/8:4");
  EXPECT_EQ(ModuleSpec::parse("hw:-3/2", 7).window, 7);
  EXPECT_THROW(ModuleSpec::parse("finite:x"), DomainError);
  EXPECT_THROW(ModuleSpec::parse("blob:1"), DomainError);
}
