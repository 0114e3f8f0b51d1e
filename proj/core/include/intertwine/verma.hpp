#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "intertwine/level.hpp"
#include "intertwine/pbw.hpp"
#include "intertwine/weight_module.hpp"

namespace intertwine {

/// V(ℓ,U) = U(ĝ) ⊗ U, truncated at a degree cutoff. Elements are written in
/// the canonical PBW basis x_{a1}(−n1)⋯x_{ak}(−nk)⊗u.
class GeneralizedVermaModule {
 public:
  GeneralizedVermaModule(ModulePtr base, Scalar level, int cutoff);

  [[nodiscard]] const SimpleLieAlgebra& algebra() const { return *alg_; }
  [[nodiscard]] const ModulePtr& base() const { return base_; }
  [[nodiscard]] const Scalar& level() const { return level_; }
  [[nodiscard]] int cutoff() const { return cutoff_; }

  /// x_a(n)·v in canonical form. Throws CutoffExceeded if the image degree
  /// passes the cutoff and WindowEscape if the base action leaves its window.
  [[nodiscard]] GradedVector apply(std::size_t a, int n, const GradedVector& v) const;
  [[nodiscard]] GradedVector apply(const Element& x, int n, const GradedVector& v) const;
  /// x_a(n) on a single basis vector.
  [[nodiscard]] GradedVector apply(std::size_t a, int n, const BasisKey& key) const;

  [[nodiscard]] Scalar weight(const BasisKey& key) const;
  [[nodiscard]] Scalar weight(const Monomial& m) const;
  /// Canonical monomials of a given degree, in generation order.
  [[nodiscard]] std::vector<Monomial> monomials(int degree) const;
  /// Ordered basis of the weight-w subspace of degree m.
  [[nodiscard]] std::vector<BasisKey> degree_basis(int m, const Scalar& w) const;

  /// Sugawara L(0) and L(−1) in dual-basis form.
  [[nodiscard]] GradedVector sugawara_L0(const GradedVector& v) const;
  [[nodiscard]] GradedVector sugawara_Lm1(const GradedVector& v) const;
  /// Lowest conformal weight C_U / (2(ℓ+h∨)).
  [[nodiscard]] Scalar conformal_weight() const;

  /// Contravariant form ⟨key, v⟩ induced by x(n) ↦ σ(x)(−n) and the base form.
  [[nodiscard]] Scalar contravariant_form(const BasisKey& key, const GradedVector& v) const;
  [[nodiscard]] Matrix gram_matrix(int m, const Scalar& w) const;
  /// Radical of the contravariant form on the weight-w part of degree m.
  [[nodiscard]] std::vector<GradedVector> contravariant_radical(int m, const Scalar& w) const;
  /// Homogeneous v lies in the radical of its degree.
  [[nodiscard]] bool in_radical(const GradedVector& v) const;

  /// Number of memoized normal-ordering results.
  [[nodiscard]] std::size_t cache_size() const;

 private:
  using CacheKey = std::tuple<std::size_t, int, Monomial, std::size_t>;

  GradedVector apply_suffix(std::size_t a, int n, const Monomial& m, std::size_t offset, std::size_t base) const;
  GradedVector compute(std::size_t a, int n, const Monomial& suffix, std::size_t base) const;
  void enumerate(int remaining, Mode max_mode, Monomial& prefix, std::vector<Monomial>& out) const;

  AlgebraPtr alg_;
  ModulePtr base_;
  Scalar level_;
  int cutoff_;
  std::vector<DualBasisPair> pairs_;
  std::vector<Scalar> generator_weights_;

  mutable std::mutex cache_mutex_;
  mutable std::map<CacheKey, GradedVector> cache_;
};

using VermaPtr = std::shared_ptr<const GeneralizedVermaModule>;

/// h_{λ,ℓ} = ⟨λ, λ+2ρ⟩/(2(ℓ+h∨)); for sl2 λ(λ+2)/(4(ℓ+2)).
Scalar conformal_weight(const Scalar& lambda, const Level& level);

/// Radical dimension at generic level: the minimum over sample rational levels.
std::size_t generic_radical_dimension(const ModulePtr& base, int m, const Scalar& w);

/// V(ℓ,U*)' realized as functionals on V(ℓ,U*). A functional F of degree m is
/// stored by its values on the degree-m PBW basis of V(ℓ,U*).
class ContragredientModule {
 public:
  ContragredientModule(ModulePtr base, Scalar level, int cutoff);

  /// V(ℓ,U*), whose graded dual this module is.
  [[nodiscard]] const GeneralizedVermaModule& predual() const { return *dual_verma_; }
  [[nodiscard]] const ModulePtr& base() const { return base_; }
  [[nodiscard]] const ModulePtr& dual_base() const { return dual_base_; }
  [[nodiscard]] const Scalar& level() const { return dual_verma_->level(); }

  /// (x(n)F)(b) = −F(x(−n)b), for F of degree m and weight w.
  [[nodiscard]] GradedVector apply(const Element& x, int n, const GradedVector& f, int m, const Scalar& w) const;
  /// Evaluation ⟨F, b⟩.
  [[nodiscard]] static Scalar evaluate(const GradedVector& f, const GradedVector& b);

  /// Degree-0 functional for u ∈ U, using the natural pairing U × U*.
  [[nodiscard]] GradedVector from_base(const Vector& u) const;
  /// Index in U* of the functional dual to basis vector i of U.
  [[nodiscard]] std::size_t dual_index(std::size_t i) const { return base_->dim() - 1 - i; }

 private:
  ModulePtr base_;
  ModulePtr dual_base_;
  std::shared_ptr<GeneralizedVermaModule> dual_verma_;
};

/// Invariant pairing V(ℓ,U) × V(ℓ,U*) with ⟨x(n)v, b⟩ = −⟨v, x(−n)b⟩,
/// evaluated by moving modes off the left argument.
Scalar pairing_reduce_left(const GeneralizedVermaModule& v_mod, const ContragredientModule& c_mod,
                           const GradedVector& v, const GradedVector& b);
/// Same pairing, evaluated by moving modes off the right argument.
Scalar pairing_reduce_right(const GeneralizedVermaModule& v_mod, const ContragredientModule& c_mod,
                            const GradedVector& v, const GradedVector& b);
/// Φ(v): the functional b ↦ ⟨v, b⟩ on degree m of V(ℓ,U*).
GradedVector natural_map(const GeneralizedVermaModule& v_mod, const ContragredientModule& c_mod,
                         const GradedVector& v, int m, const Scalar& w);

}  // namespace intertwine
