#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intertwine/lie_algebra.hpp"
#include "intertwine/matrix.hpp"

namespace intertwine {

enum class ModuleKind { Finite, HighestWeight, Dense, FiniteDual };

/// Parameters of an sl2 weight module. Weights are labelled by the rational
/// λ in units of α/2.
struct ModuleSpec {
  ModuleKind kind = ModuleKind::Finite;
  Scalar lambda;  ///< p for Finite, highest weight for HighestWeight, coset representative for Dense
  Scalar delta;   ///< Casimir value, Dense only
  int window = 0;  ///< depth for HighestWeight, radius for Dense

  static ModuleSpec finite(int p) { return {ModuleKind::Finite, Scalar(p), Scalar(), 0}; }
  static ModuleSpec highest_weight(Scalar lambda, int depth) {
    return {ModuleKind::HighestWeight, std::move(lambda), Scalar(), depth};
  }
  static ModuleSpec dense(Scalar lambda, Scalar delta, int radius) {
    return {ModuleKind::Dense, std::move(lambda), std::move(delta), radius};
  }
  /// "finite:p", "hw:λ[:depth]", "dense:λ:δ[:radius]".
  static ModuleSpec parse(const std::string& text, int default_window = 8);
  [[nodiscard]] std::string str() const;
  [[nodiscard]] int p() const;
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

/// Result of one basis element acting on one basis vector. Weight spaces are
/// one-dimensional, so the image is a single term; leaving the window is an
/// explicit state, never a silent zero.
struct ActionTerm {
  enum class Kind { Zero, Term, Escape };
  Kind kind = Kind::Zero;
  std::size_t target = 0;
  Scalar coeff;
};

/// Sparse image of a basis vector under an algebra element.
struct SparseImage {
  std::vector<std::pair<std::size_t, Scalar>> terms;
  bool escaped = false;
  [[nodiscard]] bool is_zero() const { return terms.empty() && !escaped; }
};

/// Weight module for sl2 with one-dimensional weight spaces. Infinite modules
/// are materialized on a window of basis vectors ordered by decreasing weight.
class WeightModule {
 public:
  static WeightModule finite(int p);
  static WeightModule highest_weight(const Scalar& lambda, int depth);
  static WeightModule dense(const Scalar& lambda, const Scalar& delta, int radius);
  static WeightModule from_spec(const ModuleSpec& spec);
  /// Contragredient module U*: weights negated, x acts by −xᵀ. Needs a complete window.
  [[nodiscard]] WeightModule dual() const;

  [[nodiscard]] const ModuleSpec& spec() const { return spec_; }
  [[nodiscard]] const AlgebraPtr& algebra() const { return alg_; }
  [[nodiscard]] std::string label() const { return spec_.str(); }
  [[nodiscard]] std::size_t dim() const { return weights_.size(); }
  [[nodiscard]] const Scalar& weight(std::size_t i) const { return weights_.at(i); }
  /// True iff the module is finite-dimensional and fully materialized.
  [[nodiscard]] bool complete() const;

  [[nodiscard]] const ActionTerm& act_basis(std::size_t a, std::size_t i) const { return action_[a].at(i); }
  [[nodiscard]] SparseImage apply(const Element& x, std::size_t i) const;
  /// Strict action; throws WindowEscape when a needed image leaves the window.
  [[nodiscard]] Vector act(const Element& x, const Vector& v) const;

  /// Window index of weight w, if materialized.
  [[nodiscard]] std::optional<std::size_t> index_of_weight(const Scalar& w) const;
  /// Whether the full (unwindowed) module has a nonzero weight space at w.
  [[nodiscard]] bool in_support(const Scalar& w) const;

  /// Scalar by which the Casimir Σ x_a x^a acts (the module is irreducible).
  [[nodiscard]] Scalar casimir_value() const;
  /// Diagonal of the contravariant form ⟨x u, u'⟩ = ⟨u, σ(x) u'⟩, normalized to 1 on index 0.
  [[nodiscard]] const Vector& contravariant_form() const { return form_; }
  /// Matrices of the action; throws WindowEscape for windowed modules.
  [[nodiscard]] Representation representation() const;

 private:
  WeightModule() = default;
  void finish();

  ModuleSpec spec_;
  AlgebraPtr alg_;
  std::vector<Scalar> weights_;
  std::vector<std::vector<ActionTerm>> action_;  // [generator][index]
  Vector form_;
};

using ModulePtr = std::shared_ptr<const WeightModule>;

/// Operator restricted to one weight block; columns whose image left the
/// window are flagged instead of being filled in.
struct BlockOperator {
  Matrix matrix;
  std::vector<bool> column_valid;
  [[nodiscard]] bool fully_valid() const;
};

/// Casimir of a single module per basis vector (its weight blocks are 1×1).
BlockOperator casimir_matrix(const WeightModule& u);

struct TensorBlock {
  Scalar weight;
  std::vector<std::size_t> basis;  ///< tensor indices, in increasing order
  bool complete = false;           ///< window contains the whole weight space of U1⊗U2
};

class TensorModule {
 public:
  TensorModule(ModulePtr u1, ModulePtr u2);

  [[nodiscard]] const WeightModule& first() const { return *u1_; }
  [[nodiscard]] const WeightModule& second() const { return *u2_; }
  [[nodiscard]] const ModulePtr& first_ptr() const { return u1_; }
  [[nodiscard]] const ModulePtr& second_ptr() const { return u2_; }
  [[nodiscard]] const AlgebraPtr& algebra() const { return u1_->algebra(); }
  [[nodiscard]] std::size_t dim() const { return u1_->dim() * u2_->dim(); }
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const { return i * u2_->dim() + j; }
  [[nodiscard]] std::pair<std::size_t, std::size_t> factors(std::size_t t) const {
    return {t / u2_->dim(), t % u2_->dim()};
  }
  [[nodiscard]] Scalar weight(std::size_t t) const;
  [[nodiscard]] std::string label() const { return u1_->label() + " (x) " + u2_->label(); }

  [[nodiscard]] const std::vector<TensorBlock>& blocks() const { return blocks_; }
  [[nodiscard]] std::size_t block_of(std::size_t t) const { return block_of_.at(t); }
  [[nodiscard]] std::size_t position_in_block(std::size_t t) const { return position_.at(t); }
  [[nodiscard]] std::optional<std::size_t> block_of_weight(const Scalar& w) const;

  /// (x ⊗ 1), (1 ⊗ x) and the diagonal action x⊗1 + 1⊗x on a basis vector.
  [[nodiscard]] SparseImage apply_left(const Element& x, std::size_t t) const;
  [[nodiscard]] SparseImage apply_right(const Element& x, std::size_t t) const;
  [[nodiscard]] SparseImage apply(const Element& x, std::size_t t) const;
  /// Strict versions on full tensor vectors.
  [[nodiscard]] Vector act_left(const Element& x, const Vector& v) const;
  [[nodiscard]] Vector act(const Element& x, const Vector& v) const;

  /// C_{U1,U2} = Σ_a (x_a·u1) ⊗ (x^a·u2) on one block.
  [[nodiscard]] BlockOperator pair_casimir(std::size_t block) const;
  /// Casimir of the diagonal action on one block.
  [[nodiscard]] BlockOperator tensor_casimir(std::size_t block) const;
  /// C_{U1}⊗1 + 1⊗C_{U2} on one block.
  [[nodiscard]] BlockOperator factor_casimirs(std::size_t block) const;

  /// Embeds a block-local vector into the full tensor space.
  [[nodiscard]] Vector embed(std::size_t block, const Vector& local) const;
  [[nodiscard]] Vector restrict(std::size_t block, const Vector& full) const;

 private:
  [[nodiscard]] bool block_complete(const Scalar& w) const;

  ModulePtr u1_;
  ModulePtr u2_;
  std::vector<TensorBlock> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> position_;
};

struct Summand {
  ModuleSpec module;  ///< window field unused
  Scalar casimir;     ///< Casimir eigenvalue of U1⊗U2 on this summand
  int multiplicity = 1;
};

/// Summands of U1⊗U2 for the supported shapes: finite⊗finite, finite⊗highest
/// weight (λ, p+λ ∉ ℕ) and L_1⊗dense, in either order. Throws UnsupportedShape.
std::vector<Summand> decompose(const WeightModule& u1, const WeightModule& u2);

/// Multiplicity of U3 among the summands of U1⊗U2.
int multiplicity(const std::vector<Summand>& summands, const WeightModule& u3);

/// Linear map U1⊗U2 → U3 on the windows. Columns whose image weight lies in
/// U3's support but outside its window are unknown.
struct GHom {
  std::shared_ptr<const TensorModule> domain;
  ModulePtr codomain;
  Matrix map;  ///< dim U3 × dim(U1⊗U2)
  std::vector<bool> column_known;

  [[nodiscard]] Vector operator()(const Vector& t) const { return map * t; }
  [[nodiscard]] Vector column(std::size_t t) const { return map.column(t); }
  [[nodiscard]] GHom scaled(const Scalar& s) const;
  [[nodiscard]] GHom plus(const GHom& o) const;
};

/// Basis of Hom_g(U1⊗U2, U3) on the materialized windows. Throws
/// UnderdeterminedWindow if the windowed equations leave more freedom than the
/// decomposition allows.
std::vector<GHom> hom_space(const std::shared_ptr<const TensorModule>& t, const ModulePtr& u3);

/// f∘(x⊗1 + 1⊗x) = x∘f on every known column with an in-window image.
bool is_equivariant(const GHom& f);

/// Scalar δ± = ½(2δ+1) ± √(2δ+1).
std::pair<Scalar, Scalar> dense_tensor_eigenvalues(const Scalar& delta);

}  // namespace intertwine
