#include "intertwine/kz.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "intertwine/error.hpp"
#include "parallel.hpp"

namespace intertwine {

namespace {

using Sparse = std::map<std::size_t, Scalar>;

const Scalar& generator_weight(const SimpleLieAlgebra& alg, std::size_t a) { return (*alg.weights())[a]; }

// Σ_i s_i (x⊗1) e_{basis[i]}; empty on escape.
std::optional<Sparse> left_image(const TensorModule& tensor, const Element& x, const std::vector<std::size_t>& basis,
                                 const Vector& s) {
  Sparse out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (s[i].is_zero()) continue;
    const SparseImage img = tensor.apply_left(x, basis[i]);
    if (img.escaped) return std::nullopt;
    for (const auto& [t, c] : img.terms) out[t] += s[i] * c;
  }
  return out;
}

// Σ_a Σ_{k=1}^m x_a(−k) Y_{m−k}((x^a⊗1)s) for s supported on one block.
std::optional<GradedVector> kz_sum(const IntertwinerPrefix& p, const std::vector<DualBasisPair>& pairs, int m,
                                   const std::vector<std::size_t>& basis, const Vector& s) {
  GradedVector out;
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const auto u = left_image(p.tensor(), pairs[a].upper, basis, s);
    if (!u) return std::nullopt;
    for (int k = 1; k <= m; ++k)
      for (const auto& [t, c] : *u) {
        if (c.is_zero()) continue;
        const auto& prev = p.Y(m - k, t);
        if (!prev) return std::nullopt;
        out.add(p.target().apply(a, -k, *prev).vec, c);
      }
  }
  return out;
}

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

std::string describe(const IntertwinerPrefix& p, std::size_t g, int n, int m, std::size_t t) {
  const auto [i, j] = p.tensor().factors(t);
  std::ostringstream os;
  os << p.tensor().algebra()->basis_names().at(g) << "(" << n << ") on Y_" << m << "(u" << i << " (x) u" << j << ")";
  return os.str();
}

}  // namespace

VermaTarget::VermaTarget(ModulePtr base, Scalar level, int cutoff)
    : verma_(std::make_shared<GeneralizedVermaModule>(std::move(base), std::move(level), cutoff)) {}

TargetVector VermaTarget::apply(std::size_t a, int n, const TargetVector& v) const {
  return {v.degree - n, v.weight + generator_weight(verma_->algebra(), a), verma_->apply(a, n, v.vec)};
}

TargetVector VermaTarget::from_base(const Vector& u, const Scalar& weight) const {
  GradedVector g;
  for (std::size_t i = 0; i < u.size(); ++i) g.add({Monomial{}, i}, u[i]);
  return {0, weight, std::move(g)};
}

ContragredientTarget::ContragredientTarget(ModulePtr base, Scalar level, int cutoff)
    : module_(std::make_shared<ContragredientModule>(std::move(base), std::move(level), cutoff)) {}

TargetVector ContragredientTarget::apply(std::size_t a, int n, const TargetVector& v) const {
  const auto& alg = module_->predual().algebra();
  return {v.degree - n, v.weight + generator_weight(alg, a),
          module_->apply(alg.basis(a), n, v.vec, v.degree, v.weight)};
}

TargetVector ContragredientTarget::from_base(const Vector& u, const Scalar& weight) const {
  return {0, weight, module_->from_base(u)};
}

std::optional<int> ObstructionReport::first() const {
  if (entries.empty()) return std::nullopt;
  return entries.front().N;
}

Scalar intertwiner_exponent(const TensorModule& tensor, const Scalar& level, const Scalar& h3) {
  const Scalar two_shifted = Scalar(2) * Level(level).shifted(tensor.algebra()->dual_coxeter());
  return h3 - tensor.first().casimir_value() / two_shifted - tensor.second().casimir_value() / two_shifted;
}

ObstructionReport obstruction_scan(const TensorModule& tensor, const Level& level, const Scalar& h3) {
  ObstructionReport report;
  if (level.is_generic()) {
    report.generic_level = true;
    return report;
  }
  const Scalar shifted = level.shifted(tensor.algebra()->dual_coxeter());
  const Scalar h = intertwiner_exponent(tensor, level.value(), h3);
  std::vector<Scalar> seen;
  for (const auto& s : decompose(tensor.first(), tensor.second())) {
    if (std::find(seen.begin(), seen.end(), s.casimir) != seen.end()) continue;
    seen.push_back(s.casimir);
    const Scalar n = s.casimir / (Scalar(2) * shifted) - h3;
    if (!n.is_integer() || n.sign() <= 0) continue;
    ObstructionEntry e;
    e.N = static_cast<int>(n.rational().get_num().get_si());
    e.eigenvalue = s.casimir;
    const Scalar target = shifted * (h + n);
    for (std::size_t b = 0; b < tensor.blocks().size(); ++b) {
      const BlockOperator op = tensor.pair_casimir(b);
      if (!op.fully_valid()) continue;
      for (const auto& v : eigenspace(op.matrix, target)) e.eigenvectors.push_back(tensor.embed(b, v));
    }
    report.entries.push_back(std::move(e));
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const ObstructionEntry& x, const ObstructionEntry& y) { return x.N < y.N; });
  return report;
}

IntertwinerPrefix::IntertwinerPrefix(GHom seed, std::shared_ptr<const Target> target, int requested)
    : seed_(std::move(seed)), target_(std::move(target)), requested_(requested) {
  if (!seed_.domain) throw DomainError("seed has no domain");
  if (seed_.codomain->label() != target_->base()->label()) {
    throw DimensionMismatch("seed lands in " + seed_.codomain->label() + " but the target is built on " +
                            target_->base()->label());
  }
  h_ = intertwiner_exponent(tensor(), level(), target_->conformal_weight());
  try {
    report_ = obstruction_scan(tensor(), Level(level()), target_->conformal_weight());
    scan_supported_ = true;
  } catch (const UnsupportedShape&) {
    scan_supported_ = false;
  }
  // Degree zero is the seed itself.
  std::vector<std::optional<TargetVector>> y0(tensor().dim());
  for (std::size_t t = 0; t < tensor().dim(); ++t)
    if (seed_.column_known[t]) y0[t] = target_->from_base(seed_.column(t), tensor().weight(t));
  y_.push_back(std::move(y0));
}

std::optional<TargetVector> IntertwinerPrefix::Y(int m, const Vector& v) const {
  TargetVector out{m, Scalar(), {}};
  bool weighted = false;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v[t].is_zero()) continue;
    const auto& y = Y(m, t);
    if (!y) return std::nullopt;
    out.vec.add(y->vec, v[t]);
    if (!weighted) out.weight = y->weight;
    weighted = true;
  }
  return out;
}

std::size_t IntertwinerPrefix::available(int m) const {
  return static_cast<std::size_t>(std::count_if(y_.at(m).begin(), y_.at(m).end(), [](const auto& y) { return y; }));
}

void IntertwinerPrefix::perturb(int m, std::size_t t, const BasisKey& key, const Scalar& delta) {
  auto& y = y_.at(m).at(t);
  if (!y) throw DomainError("cannot perturb an unavailable column");
  y->vec.add(key, delta);
}

IntertwinerPrefix build_prefix(const GHom& f, const std::shared_ptr<const VermaTarget>& target, int N) {
  IntertwinerPrefix p(f, target, N);
  const TensorModule& tensor = p.tensor();
  const auto pairs = dual_bases(*tensor.algebra());
  const Scalar shifted = p.level() + tensor.algebra()->dual_coxeter();
  if (p.scan_supported_) p.obstructed_at_ = p.report_.first();

  for (int m = 1; m <= N; ++m) {
    if (p.obstructed_at_ && *p.obstructed_at_ <= m) break;
    std::vector<std::optional<TargetVector>> ym(tensor.dim());
    std::vector<char> singular(tensor.blocks().size(), 0);
    detail::parallel_for(tensor.blocks().size(), [&](std::size_t b) {
      const TensorBlock& block = tensor.blocks()[b];
      const BlockOperator op = tensor.pair_casimir(b);
      if (!op.fully_valid()) return;
      const std::size_t n = block.basis.size();
      const auto inv = inverse(shifted * (p.h_ + Scalar(m)) * Matrix::identity(n) - op.matrix);
      if (!inv) {
        singular[b] = 1;
        return;
      }
      for (std::size_t j = 0; j < n; ++j) {
        try {
          auto sum = kz_sum(p, pairs, m, block.basis, inv->column(j));
          if (sum) ym[block.basis[j]] = TargetVector{m, block.weight, std::move(*sum)};
        } catch (const WindowEscape&) {
        } catch (const CutoffExceeded&) {
        }
      }
    });
    if (std::find(singular.begin(), singular.end(), 1) != singular.end()) {
      p.obstructed_at_ = m;
      break;
    }
    p.y_.push_back(std::move(ym));
  }
  return p;
}

IntertwinerPrefix build_prefix_contragredient(const GHom& f, const std::shared_ptr<const ContragredientTarget>& target,
                                              int N) {
  IntertwinerPrefix p(f, target, N);
  const TensorModule& tensor = p.tensor();
  const auto& alg = *tensor.algebra();
  const GeneralizedVermaModule& pre = target->module().predual();

  for (int m = 1; m <= N; ++m) {
    std::vector<std::optional<TargetVector>> ym(tensor.dim());
    detail::parallel_for(tensor.dim(), [&](std::size_t t) {
      try {
        const Scalar w = tensor.weight(t);
        GradedVector functional;
        for (const auto& b : pre.degree_basis(m, -w)) {
          const Mode& y = b.mono.front();
          const BasisKey rest{Monomial(b.mono.begin() + 1, b.mono.end()), b.base};
          const SparseImage img = tensor.apply_left(alg.basis(y.a), t);
          if (img.escaped) return;
          Scalar value;
          for (const auto& [t2, c] : img.terms) {
            const auto& prev = p.y_[m - y.depth][t2];
            if (!prev) return;
            value -= c * prev->vec.coeff(rest);
          }
          functional.add(b, value);
        }
        ym[t] = TargetVector{m, w, std::move(functional)};
      } catch (const WindowEscape&) {
      } catch (const CutoffExceeded&) {
      }
    });
    p.y_.push_back(std::move(ym));
  }
  return p;
}

CheckReport verify_commcomp(const IntertwinerPrefix& p) {
  CheckReport r;
  const TensorModule& tensor = p.tensor();
  const auto& alg = *tensor.algebra();
  for (int m = 0; m <= p.built(); ++m)
    for (std::size_t t = 0; t < tensor.dim(); ++t) {
      const auto& y = p.Y(m, t);
      for (std::size_t g = 0; g < alg.dim(); ++g)
        for (int n = 0; n <= m; ++n) {
          if (!y) {
            ++r.skipped;
            continue;
          }
          const SparseImage img = n == 0 ? tensor.apply(alg.basis(g), t) : tensor.apply_left(alg.basis(g), t);
          if (img.escaped) {
            ++r.skipped;
            continue;
          }
          Vector coeffs(tensor.dim());
          for (const auto& [t2, c] : img.terms) coeffs[t2] += c;
          const auto rhs = p.Y(m - n, coeffs);
          if (!rhs) {
            ++r.skipped;
            continue;
          }
          GradedVector lhs;
          try {
            lhs = p.target().apply(g, n, *y).vec;
          } catch (const WindowEscape&) {
            ++r.skipped;
            continue;
          } catch (const CutoffExceeded&) {
            ++r.skipped;
            continue;
          }
          ++r.checked;
          if (lhs != rhs->vec && !r.counterexample) r.counterexample = describe(p, g, n, m, t);
        }
    }
  return r;
}

CheckReport kz_residual(const IntertwinerPrefix& p) {
  CheckReport r;
  const TensorModule& tensor = p.tensor();
  const auto pairs = dual_bases(*tensor.algebra());
  const Scalar shifted = p.level() + tensor.algebra()->dual_coxeter();
  for (int m = 0; m <= p.built(); ++m)
    for (std::size_t b = 0; b < tensor.blocks().size(); ++b) {
      const TensorBlock& block = tensor.blocks()[b];
      const BlockOperator whole = tensor.tensor_casimir(b);
      const BlockOperator parts = tensor.factor_casimirs(b);
      if (!whole.fully_valid() || !parts.fully_valid()) {
        r.skipped += block.basis.size();
        continue;
      }
      const std::size_t n = block.basis.size();
      const Matrix a = shifted * (p.h() + Scalar(m)) * Matrix::identity(n) -
                       Scalar(1, 2) * (whole.matrix - parts.matrix);
      for (std::size_t j = 0; j < n; ++j) {
        const auto lhs = p.Y(m, tensor.embed(b, a.column(j)));
        std::optional<GradedVector> rhs;
        try {
          rhs = kz_sum(p, pairs, m, block.basis, unit(n, j));
        } catch (const WindowEscape&) {
        } catch (const CutoffExceeded&) {
        }
        if (!lhs || !rhs) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (lhs->vec != *rhs && !r.counterexample) {
          const auto [i, k] = tensor.factors(block.basis[j]);
          r.counterexample = "KZ residual at degree " + std::to_string(m) + " on u" + std::to_string(i) + " (x) u" +
                             std::to_string(k);
        }
      }
    }
  return r;
}

GradedVector singular_candidate(const IntertwinerPrefix& p, int N, const Vector& eigvec) {
  if (p.target().kind() != "verma") throw DomainError("singular candidates live in Verma targets");
  if (!p.obstructed_at() || *p.obstructed_at() != N || p.built() != N - 1) {
    throw DomainError("degree " + std::to_string(N) + " is not the first obstruction of this prefix");
  }
  const TensorModule& tensor = p.tensor();
  if (eigvec.size() != tensor.dim()) throw DimensionMismatch("eigenvector has the wrong length");
  if (is_zero(eigvec)) throw DomainError("eigenvector is zero");
  const Scalar mu = (p.level() + tensor.algebra()->dual_coxeter()) * (p.h() + Scalar(N));
  std::optional<std::size_t> home;
  for (std::size_t b = 0; b < tensor.blocks().size(); ++b) {
    const Vector local = tensor.restrict(b, eigvec);
    if (is_zero(local)) continue;
    if (home) throw DomainError("eigenvector is not weight-homogeneous");
    home = b;
    const BlockOperator op = tensor.pair_casimir(b);
    if (!op.fully_valid()) throw WindowEscape("eigenvector block is not fully materialized");
    const Vector image = op.matrix * local;
    for (std::size_t i = 0; i < local.size(); ++i)
      if (image[i] != mu * local[i]) throw DomainError("vector is not an eigenvector of eigenvalue " + mu.str());
  }
  const auto pairs = dual_bases(*tensor.algebra());
  const auto out = kz_sum(p, pairs, N, tensor.blocks()[*home].basis, tensor.restrict(*home, eigvec));
  if (!out) throw WindowEscape("candidate needs values outside the computed prefix");
  return *out;
}

CandidateDiagnostics candidate_diagnostics(const GeneralizedVermaModule& v, const GradedVector& vec) {
  CandidateDiagnostics d;
  d.is_zero = vec.is_zero();
  d.in_radical = v.in_radical(vec);
  d.annihilated = true;
  for (std::size_t a = 0; a < v.algebra().dim() && d.annihilated; ++a)
    for (int n = 1; n <= vec.max_degree(); ++n)
      if (!v.apply(a, n, vec).is_zero()) {
        d.annihilated = false;
        break;
      }
  return d;
}

}  // namespace intertwine
