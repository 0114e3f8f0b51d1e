#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "intertwine/level.hpp"
#include "intertwine/verma.hpp"
#include "intertwine/weight_module.hpp"

namespace intertwine {

/// Homogeneous element of a graded target: degree, weight and coordinates.
struct TargetVector {
  int degree = 0;
  Scalar weight;
  GradedVector vec;
  friend bool operator==(const TargetVector&, const TargetVector&) = default;
};

/// Graded ĝ-module receiving an intertwiner prefix.
class Target {
 public:
  virtual ~Target() = default;
  [[nodiscard]] virtual std::string kind() const = 0;
  [[nodiscard]] virtual const ModulePtr& base() const = 0;
  [[nodiscard]] virtual const Scalar& level() const = 0;
  [[nodiscard]] virtual int cutoff() const = 0;
  /// Conformal weight of the degree-zero piece.
  [[nodiscard]] virtual Scalar conformal_weight() const = 0;
  /// x_a(n)·v for a basis generator.
  [[nodiscard]] virtual TargetVector apply(std::size_t a, int n, const TargetVector& v) const = 0;
  /// Degree-zero vector for u ∈ U3 of the given weight.
  [[nodiscard]] virtual TargetVector from_base(const Vector& u, const Scalar& weight) const = 0;
};

class VermaTarget final : public Target {
 public:
  VermaTarget(ModulePtr base, Scalar level, int cutoff);
  [[nodiscard]] std::string kind() const override { return "verma"; }
  [[nodiscard]] const ModulePtr& base() const override { return verma_->base(); }
  [[nodiscard]] const Scalar& level() const override { return verma_->level(); }
  [[nodiscard]] int cutoff() const override { return verma_->cutoff(); }
  [[nodiscard]] Scalar conformal_weight() const override { return verma_->conformal_weight(); }
  [[nodiscard]] TargetVector apply(std::size_t a, int n, const TargetVector& v) const override;
  [[nodiscard]] TargetVector from_base(const Vector& u, const Scalar& weight) const override;
  [[nodiscard]] const GeneralizedVermaModule& verma() const { return *verma_; }

 private:
  std::shared_ptr<GeneralizedVermaModule> verma_;
};

/// V(ℓ,U3*)'; vectors are functionals on V(ℓ,U3*).
class ContragredientTarget final : public Target {
 public:
  ContragredientTarget(ModulePtr base, Scalar level, int cutoff);
  [[nodiscard]] std::string kind() const override { return "contragredient"; }
  [[nodiscard]] const ModulePtr& base() const override { return module_->base(); }
  [[nodiscard]] const Scalar& level() const override { return module_->level(); }
  [[nodiscard]] int cutoff() const override { return module_->predual().cutoff(); }
  [[nodiscard]] Scalar conformal_weight() const override { return module_->predual().conformal_weight(); }
  [[nodiscard]] TargetVector apply(std::size_t a, int n, const TargetVector& v) const override;
  [[nodiscard]] TargetVector from_base(const Vector& u, const Scalar& weight) const override;
  [[nodiscard]] const ContragredientModule& module() const { return *module_; }

 private:
  std::shared_ptr<ContragredientModule> module_;
};

struct ObstructionEntry {
  int N = 0;
  Scalar eigenvalue;                 ///< μ, eigenvalue of the Casimir of U1⊗U2
  std::vector<Vector> eigenvectors;  ///< C_{U1,U2} eigenvectors in U1⊗U2, per complete block
};

struct ObstructionReport {
  bool generic_level = false;
  std::vector<ObstructionEntry> entries;  ///< sorted by N
  [[nodiscard]] std::optional<int> first() const;
};

/// Degrees N ≥ 1 with 2(ℓ+h∨)(h3+N) an eigenvalue of C_{U1⊗U2}. Eigenvalues
/// come from decompose, so unsupported shapes throw UnsupportedShape.
ObstructionReport obstruction_scan(const TensorModule& tensor, const Level& level, const Scalar& h3);

/// h = h3 − h1 − h2 with h_i = C_i / (2(ℓ+h∨)).
Scalar intertwiner_exponent(const TensorModule& tensor, const Scalar& level, const Scalar& h3);

/// Maps Y_0..Y_built. Y(m, t) is empty where the value could not be computed
/// inside the windows and cutoffs.
class IntertwinerPrefix {
 public:
  IntertwinerPrefix(GHom seed, std::shared_ptr<const Target> target, int requested);

  [[nodiscard]] const GHom& seed() const { return seed_; }
  [[nodiscard]] const TensorModule& tensor() const { return *seed_.domain; }
  [[nodiscard]] const Target& target() const { return *target_; }
  [[nodiscard]] const std::shared_ptr<const Target>& target_ptr() const { return target_; }
  [[nodiscard]] const Scalar& level() const { return target_->level(); }
  [[nodiscard]] const Scalar& h() const { return h_; }
  [[nodiscard]] int requested() const { return requested_; }
  /// Highest degree computed; −1 if nothing was built.
  [[nodiscard]] int built() const { return static_cast<int>(y_.size()) - 1; }
  [[nodiscard]] const std::optional<int>& obstructed_at() const { return obstructed_at_; }
  [[nodiscard]] const ObstructionReport& report() const { return report_; }
  [[nodiscard]] bool scan_supported() const { return scan_supported_; }

  [[nodiscard]] const std::optional<TargetVector>& Y(int m, std::size_t t) const { return y_.at(m).at(t); }
  /// Y_m applied to a tensor vector; empty if any needed column is missing.
  [[nodiscard]] std::optional<TargetVector> Y(int m, const Vector& v) const;
  [[nodiscard]] std::size_t available(int m) const;

  /// Adds δ to one coordinate of Y_m(t). For mutation tests.
  void perturb(int m, std::size_t t, const BasisKey& key, const Scalar& delta);

 private:
  friend IntertwinerPrefix build_prefix(const GHom&, const std::shared_ptr<const VermaTarget>&, int);
  friend IntertwinerPrefix build_prefix_contragredient(const GHom&, const std::shared_ptr<const ContragredientTarget>&,
                                                       int);

  GHom seed_;
  std::shared_ptr<const Target> target_;
  int requested_;
  Scalar h_;
  ObstructionReport report_;
  bool scan_supported_ = false;
  std::optional<int> obstructed_at_;
  std::vector<std::vector<std::optional<TargetVector>>> y_;
};

/// Y_m(t) = Σ_a Σ_{k=1}^m x_a(−k) Y_{m−k}((x^a⊗1)[(ℓ+h∨)(h+m) − C_{U1,U2}]^{−1} t).
/// Stops before the first obstructed degree.
IntertwinerPrefix build_prefix(const GHom& f, const std::shared_ptr<const VermaTarget>& target, int N);

/// Y_m(t)(y(−d)R) = −Y_{m−d}((y⊗1)t)(R). Never obstructed.
IntertwinerPrefix build_prefix_contragredient(const GHom& f, const std::shared_ptr<const ContragredientTarget>& target,
                                              int N);

struct CheckReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::optional<std::string> counterexample;
  [[nodiscard]] bool ok() const { return !counterexample.has_value(); }
};

/// g(n)Y_m(t) = Y_{m−n}((g⊗1)t) for n ≥ 1 and g(0)Y_m(t) = Y_m(g·t).
CheckReport verify_commcomp(const IntertwinerPrefix& p);

/// Y_m([(ℓ+h∨)(h+m) − C_{U1,U2}] t) = Σ_a Σ_{k=1}^m x_a(−k) Y_{m−k}((x^a⊗1)t), with
/// C_{U1,U2} taken as ½(C_{U1⊗U2} − C_1 − C_2).
CheckReport kz_residual(const IntertwinerPrefix& p);

/// Σ_a Σ_{k=1}^N x_a(−k) Y_{N−k}((x^a⊗1)v) for an eigenvector v at the first
/// obstruction N of a Verma prefix.
GradedVector singular_candidate(const IntertwinerPrefix& p, int N, const Vector& eigvec);

struct CandidateDiagnostics {
  bool is_zero = false;
  bool in_radical = false;
  bool annihilated = false;  ///< g(n)v = 0 for all basis g and 1 ≤ n ≤ degree
};
CandidateDiagnostics candidate_diagnostics(const GeneralizedVermaModule& v, const GradedVector& vec);

}  // namespace intertwine
