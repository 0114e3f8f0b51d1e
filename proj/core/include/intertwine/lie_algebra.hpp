#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "intertwine/matrix.hpp"

namespace intertwine {

/// Coefficient vector in the algebra's basis.
using Element = Vector;

/// Finite-dimensional Lie algebra given by structure constants and an
/// invariant form. Only sl2 ships built in; other algebras load from JSON.
class SimpleLieAlgebra {
 public:
  /// `structure[a][b]` is the element [x_a, x_b].
  SimpleLieAlgebra(std::string name, std::vector<std::string> basis, std::vector<std::vector<Element>> structure,
                   Matrix gram, Scalar dual_coxeter);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<std::string>& basis_names() const { return basis_; }
  [[nodiscard]] std::size_t index(const std::string& symbol) const;
  [[nodiscard]] Element basis(std::size_t a) const;
  [[nodiscard]] Element zero() const { return Element(dim()); }

  [[nodiscard]] const Element& bracket_basis(std::size_t a, std::size_t b) const { return structure_[a][b]; }
  [[nodiscard]] Element bracket(const Element& x, const Element& y) const;
  [[nodiscard]] const Matrix& gram() const { return gram_; }
  [[nodiscard]] Scalar form(const Element& x, const Element& y) const;
  [[nodiscard]] const Scalar& dual_coxeter() const { return dual_coxeter_; }

  /// Eigenvalue of ad(h) on each basis element, when the basis is a weight basis.
  [[nodiscard]] const std::optional<std::vector<Scalar>>& weights() const { return weights_; }
  void set_weights(std::vector<Scalar> w);
  /// Cartan anti-involution as a linear map on the basis (column a is σ(x_a)).
  [[nodiscard]] const std::optional<Matrix>& involution() const { return involution_; }
  void set_involution(Matrix sigma);
  [[nodiscard]] Element involute(std::size_t a) const;

  /// Mutable access for corruption tests.
  std::vector<std::vector<Element>>& structure_mut() { return structure_; }

 private:
  std::string name_;
  std::vector<std::string> basis_;
  std::vector<std::vector<Element>> structure_;
  Matrix gram_;
  Scalar dual_coxeter_;
  std::optional<std::vector<Scalar>> weights_;
  std::optional<Matrix> involution_;
};

using AlgebraPtr = std::shared_ptr<const SimpleLieAlgebra>;

/// sl2 with basis (e, h, f), ⟨e,f⟩ = 1, ⟨h,h⟩ = 2, h∨ = 2.
AlgebraPtr sl2();

/// Loads an algebra definition:
/// {"name", "basis": [...], "structure_constants": [[a,b,c,"value"],...],
///  "gram": [[...]], "dual_coxeter": "2", optional "weights", "involution"}.
AlgebraPtr load_algebra(const nlohmann::json& doc);
nlohmann::json algebra_to_json(const SimpleLieAlgebra& alg);

struct ValidationReport {
  bool antisymmetric = true;
  bool jacobi = true;
  bool form_symmetric = true;
  bool form_nondegenerate = true;
  bool form_invariant = true;
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

ValidationReport validate(const SimpleLieAlgebra& alg);

/// Pair (x_a, x^a) with ⟨x_a, x^b⟩ = δ_ab.
struct DualBasisPair {
  Element lower;
  Element upper;
};

/// x_a runs over the basis; x^a = Σ_b (B⁻¹)_{ab} x_b.
std::vector<DualBasisPair> dual_bases(const SimpleLieAlgebra& alg);

/// Matrix ⟨x_a, x^b⟩ of a list of pairs.
Matrix pairing_matrix(const SimpleLieAlgebra& alg, const std::vector<DualBasisPair>& pairs);

/// Finite-dimensional representation: one matrix per basis element.
struct Representation {
  std::string label;
  std::vector<Matrix> rho;
  [[nodiscard]] std::size_t dim() const { return rho.empty() ? 0 : rho.front().rows(); }
  [[nodiscard]] Matrix act(const Element& x) const;
};

Representation adjoint(const SimpleLieAlgebra& alg);

/// Σ_a ρ(x_a)ρ(x^a).
Matrix casimir(const SimpleLieAlgebra& alg, const Representation& rep,
               const std::vector<DualBasisPair>& pairs);
Matrix casimir(const SimpleLieAlgebra& alg, const Representation& rep);

/// True iff ρ([x,y]) = [ρ(x), ρ(y)] on all basis pairs.
bool is_representation(const SimpleLieAlgebra& alg, const Representation& rep);

/// Σ_a [g,x_a] ⊗ x^a = −Σ_a x_a ⊗ [g,x^a], checked on U⊗U for every probe U.
bool check_casimir_tensor_invariance(const SimpleLieAlgebra& alg, const Element& g, const std::vector<Representation>& probes);

/// Σ_a [g,x_a] x^a = h∨ g, checked as operators on every probe.
bool check_dual_coxeter_identity(const SimpleLieAlgebra& alg, const Element& g, const std::vector<Representation>& probes);

}  // namespace intertwine
