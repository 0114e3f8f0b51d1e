#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intertwine/level.hpp"
#include "intertwine/scalar.hpp"

namespace intertwine {

enum class Verdict { One, Unknown, Zero };

std::string to_string(Verdict v);

/// A failing instance of the eigenvalue condition: value = m(m+r+1) equals
/// (ℓ+2)·N with N ∈ ℤ₊. For dense queries m is unused and N is the degree.
struct Witness {
  Scalar m;
  Scalar value;
  Scalar N;
};

struct FusionResult {
  Verdict verdict = Verdict::Zero;
  std::optional<Scalar> n;  ///< from condition (1), when it holds
  std::vector<Witness> witnesses;
  std::string note;
};

/// N^{r}_{p,q} for finite-dimensional L_p, L_q, L_r. Uses the range 1..n when
/// ℓ+2 > 0 and n−min(p,q)..n otherwise.
FusionResult check_finite(const Level& level, int p, int q, int r);

/// Same condition over the explicit range n−min(p,q)..n, regardless of sign.
FusionResult check_finite_full_range(const Level& level, int p, int q, int r);

/// L_p ⊗ M(λ) → M(μ) with λ, p+λ ∉ ℕ.
FusionResult check_mixed(const Level& level, int p, const Scalar& lambda, const Scalar& mu);

/// M(λ1) ⊗ M(λ2) → M(λ3). The condition ranges over all m ≤ n; it is decided
/// exactly through periodicity of the divisibility test.
FusionResult check_doubly_infinite(const Level& level, const Scalar& l1, const Scalar& l2, const Scalar& l3);

/// L_1 ⊗ E(λ̄,δ) → E(λ̄+1,δ). The hom dimension is computed on a window of
/// the given radius.
FusionResult dense_fusion_check(const Level& level, const Scalar& lambda, const Scalar& delta, int radius = 6);

/// λ_{r,s} = r−1−(u/v)s for 1 ≤ r ≤ u−1, 0 ≤ s ≤ v−1, s outer.
std::vector<Scalar> admissible_weights(int u, int v);

struct GarlandLepowsky {
  Scalar m;
  Scalar r1;  ///< m(j+1,n)
  Scalar r2;  ///< m(j+2,n)
};

/// m(j,n) = (ℓ+2)j + (ℓ/2)(1−(−1)^j) + (−1)^j n for j ≥ 0, 0 ≤ n ≤ ℓ, ℓ ∈ ℕ.
GarlandLepowsky garland_lepowsky(int j, int n, int level);

/// Weights (ℓ+2)j − 1, 1 ≤ j ≤ count, which never appear as m(j,n).
std::vector<int> non_resolution_weights(int level, int count);

}  // namespace intertwine
