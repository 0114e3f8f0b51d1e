#include "intertwine/fusion.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "intertwine/error.hpp"
#include "intertwine/lie_algebra.hpp"
#include "intertwine/weight_module.hpp"

namespace intertwine {

namespace {

const Scalar kDualCoxeter(2);

bool is_natural(const Scalar& x) { return x.is_integer() && x.sign() >= 0; }

void require_rational(const Scalar& x, const char* what) {
  if (!x.is_rational()) throw DomainError(std::string(what) + " must be rational, got " + x.str());
}

// m(m+c+1) ∈ (ℓ+2)ℤ₊ ?
std::optional<Witness> failure(const Level& level, const Scalar& m, const Scalar& c) {
  if (level.is_generic()) return std::nullopt;
  const Scalar value = m * (m + c + Scalar(1));
  if (!level.in_shifted_multiples(value, kDualCoxeter)) return std::nullopt;
  return Witness{m, value, value / level.shifted(kDualCoxeter)};
}

FusionResult scan_range(const Level& level, const Scalar& n, const Scalar& c, long hi, long lo) {
  FusionResult res;
  res.n = n;
  for (long m = hi; m >= lo; --m)
    if (auto w = failure(level, Scalar(m), c)) res.witnesses.push_back(*w);
  res.verdict = res.witnesses.empty() ? Verdict::One : Verdict::Unknown;
  return res;
}

long to_long(const Scalar& x) { return x.rational().get_num().get_si(); }

long floor_of(const Scalar& x) {
  const mpq_class& q = x.rational();
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

FusionResult finite_impl(const Level& level, int p, int q, int r, bool restricted) {
  if (p < 0 || q < 0 || r < 0) throw DomainError("finite weights must be natural numbers");
  if (!level.is_generic()) (void)level.shifted(kDualCoxeter);  // rejects the critical level
  FusionResult res;
  if ((p + q - r) % 2 != 0 || (p + q - r) / 2 < 0 || (p + q - r) / 2 > std::min(p, q)) {
    res.verdict = Verdict::Zero;
    res.note = "r is not of the form p+q-2n with 0 <= n <= min(p,q)";
    return res;
  }
  const int n = (p + q - r) / 2;
  const bool positive = !level.is_generic() && level.shifted(kDualCoxeter).sign() > 0;
  const long lo = restricted && positive ? 1 : n - std::min(p, q);
  return scan_range(level, Scalar(n), Scalar(r), n, lo);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::One:
      return "one";
    case Verdict::Unknown:
      return "unknown";
    case Verdict::Zero:
      return "zero";
  }
  return "?";
}

FusionResult check_finite(const Level& level, int p, int q, int r) { return finite_impl(level, p, q, r, true); }

FusionResult check_finite_full_range(const Level& level, int p, int q, int r) {
  return finite_impl(level, p, q, r, false);
}

FusionResult check_mixed(const Level& level, int p, const Scalar& lambda, const Scalar& mu) {
  require_rational(lambda, "lambda");
  require_rational(mu, "mu");
  if (p < 0) throw DomainError("p must be a natural number");
  if (is_natural(lambda) || is_natural(lambda + Scalar(p))) {
    throw DomainError("lambda and p+lambda must lie outside the natural numbers");
  }
  if (!level.is_generic()) (void)level.shifted(kDualCoxeter);
  const Scalar n = (Scalar(p) + lambda - mu) / Scalar(2);
  if (!is_natural(n) || to_long(n) > p) {
    FusionResult res;
    res.note = "mu is not of the form p+lambda-2n with 0 <= n <= p";
    return res;
  }
  return scan_range(level, n, mu, to_long(n), to_long(n) - p);
}

FusionResult check_doubly_infinite(const Level& level, const Scalar& l1, const Scalar& l2, const Scalar& l3) {
  require_rational(l1, "lambda1");
  require_rational(l2, "lambda2");
  require_rational(l3, "lambda3");
  if (is_natural(l1) || is_natural(l2) || is_natural(l1 + l2)) {
    throw DomainError("lambda1, lambda2 and lambda1+lambda2 must lie outside the natural numbers");
  }
  const Scalar n = (l1 + l2 - l3) / Scalar(2);
  if (!is_natural(n)) {
    FusionResult res;
    res.note = "lambda3 is not of the form lambda1+lambda2-2n with n natural";
    return res;
  }
  if (level.is_generic()) return scan_range(level, n, l3, 0, 1);
  const Scalar shifted = level.shifted(kDualCoxeter);
  // With λ3 = a/b and ℓ+2 = c/d, m(m+λ3+1) ∈ (ℓ+2)ℤ₊ iff bc divides d·m(bm+a+b)
  // with a positive quotient. Divisibility has period |bc| in m, and below both
  // roots of the quadratic its sign is constant.
  const mpq_class& lq = l3.rational();
  const mpq_class& sq = shifted.rational();
  const mpz_class period = abs(mpz_class(lq.get_den() * sq.get_num()));
  const long root = floor_of(std::min(Scalar(0), -(l3 + Scalar(1))));
  const long hi = to_long(n);
  long lo = std::min(hi, root);
  if (shifted.sign() > 0) lo = std::min(hi, root - 1) - period.get_si();
  FusionResult res = scan_range(level, n, l3, hi, lo);
  if (res.verdict == Verdict::Unknown) {
    res.note = "condition fails for infinitely many m when it fails below the roots";
  }
  return res;
}

FusionResult dense_fusion_check(const Level& level, const Scalar& lambda, const Scalar& delta, int radius) {
  require_rational(lambda, "lambda");
  require_rational(delta, "delta");
  FusionResult res;
  const auto [plus, minus] = dense_tensor_eigenvalues(delta);
  if (!level.is_generic()) {
    const Scalar two_shifted = Scalar(2) * level.shifted(kDualCoxeter);
    for (const Scalar& mu : {plus, minus}) {
      const Scalar n = (mu - delta) / two_shifted;
      if (n.is_integer() && n.sign() > 0) {
        if (std::none_of(res.witnesses.begin(), res.witnesses.end(), [&](const Witness& w) { return w.N == n; }))
          res.witnesses.push_back(Witness{n, mu, n});
      }
    }
  }
  auto u1 = std::make_shared<const WeightModule>(WeightModule::finite(1));
  auto u2 = std::make_shared<const WeightModule>(WeightModule::dense(lambda, delta, radius));
  auto u3 = std::make_shared<const WeightModule>(WeightModule::dense(lambda + Scalar(1), delta, radius));
  auto tensor = std::make_shared<const TensorModule>(u1, u2);
  const std::size_t dim = hom_space(tensor, u3).size();

  // Interior blocks are complete; look at one for diagonalizability.
  const auto mid = tensor->block_of_weight(u2->weight(u2->dim() / 2) + Scalar(1));
  if (mid) {
    const BlockOperator c = tensor->tensor_casimir(*mid);
    std::size_t eig = eigenspace(c.matrix, plus).size();
    if (plus != minus) eig += eigenspace(c.matrix, minus).size();
    if (c.fully_valid() && eig < c.matrix.rows()) res.note = "tensor Casimir has a Jordan block";
  }
  if (!res.witnesses.empty()) {
    res.verdict = Verdict::Unknown;
  } else {
    res.verdict = dim == 0 ? Verdict::Zero : Verdict::One;
  }
  if (dim == 0 && res.verdict == Verdict::Unknown) {
    res.note += std::string(res.note.empty() ? "" : "; ") + "no sl2-homomorphism on the top level";
  }
  return res;
}

std::vector<Scalar> admissible_weights(int u, int v) {
  if (u < 2 || v < 1 || std::gcd(u, v) != 1) throw DomainError("admissible levels need coprime u >= 2, v >= 1");
  std::vector<Scalar> out;
  for (int s = 0; s < v; ++s)
    for (int r = 1; r < u; ++r) out.push_back(Scalar(r - 1) - Scalar(static_cast<long>(u) * s, v));
  return out;
}

GarlandLepowsky garland_lepowsky(int j, int n, int level) {
  if (level < 0 || j < 0 || n < 0 || n > level) throw DomainError("need j >= 0, 0 <= n <= level, level natural");
  const auto m = [&](int jj) {
    const int sign = jj % 2 == 0 ? 1 : -1;
    return Scalar((level + 2) * jj) + Scalar(level, 2) * Scalar(1 - sign) + Scalar(sign * n);
  };
  return {m(j), m(j + 1), m(j + 2)};
}

std::vector<int> non_resolution_weights(int level, int count) {
  if (level < 0) throw DomainError("level must be a natural number");
  std::vector<int> out;
  for (int j = 1; j <= count; ++j) out.push_back((level + 2) * j - 1);
  return out;
}

}  // namespace intertwine
