#include "intertwine/verma.hpp"

#include <algorithm>

#include "intertwine/error.hpp"

namespace intertwine {

GeneralizedVermaModule::GeneralizedVermaModule(ModulePtr base, Scalar level, int cutoff)
    : alg_(base->algebra()), base_(std::move(base)), level_(std::move(level)), cutoff_(cutoff) {
  if ((level_ + alg_->dual_coxeter()).is_zero()) {
    throw CriticalLevel("level " + level_.str() + " is critical for " + alg_->name());
  }
  if (cutoff_ < 0) throw DomainError("degree cutoff must be >= 0");
  if (!alg_->weights()) throw DomainError("algebra " + alg_->name() + " has no weight data");
  pairs_ = dual_bases(*alg_);
  generator_weights_ = *alg_->weights();
}

GradedVector GeneralizedVermaModule::apply(std::size_t a, int n, const BasisKey& key) const {
  return apply_suffix(a, n, key.mono, 0, key.base);
}

GradedVector GeneralizedVermaModule::apply(std::size_t a, int n, const GradedVector& v) const {
  GradedVector out;
  for (const auto& [key, c] : v.terms()) out.add(apply_suffix(a, n, key.mono, 0, key.base), c);
  return out;
}

GradedVector GeneralizedVermaModule::apply(const Element& x, int n, const GradedVector& v) const {
  GradedVector out;
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!x[a].is_zero()) out.add(apply(a, n, v), x[a]);
  return out;
}

GradedVector GeneralizedVermaModule::apply_suffix(std::size_t a, int n, const Monomial& m, std::size_t offset,
                                                  std::size_t base) const {
  int deg = 0;
  for (std::size_t i = offset; i < m.size(); ++i) deg += m[i].depth;
  if (deg - n < 0) return {};
  if (deg - n > cutoff_) {
    throw CutoffExceeded("x(" + std::to_string(n) + ") on a degree-" + std::to_string(deg) +
                         " vector exceeds cutoff " + std::to_string(cutoff_));
  }
  CacheKey key{a, n, Monomial(m.begin() + static_cast<std::ptrdiff_t>(offset), m.end()), base};
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    const auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  GradedVector result = compute(a, n, std::get<2>(key), base);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.emplace(std::move(key), result);
  return result;
}

GradedVector GeneralizedVermaModule::compute(std::size_t a, int n, const Monomial& m, std::size_t base) const {
  if (m.empty()) {
    if (n > 0) return {};
    if (n < 0) return GradedVector::basis({Monomial{Mode{a, -n}}, base});
    const SparseImage img = base_->apply(alg_->basis(a), base);
    if (img.escaped) throw WindowEscape("zero mode leaves the window of " + base_->label());
    GradedVector out;
    for (const auto& [j, c] : img.terms) out.add({Monomial{}, j}, c);
    return out;
  }
  const Mode& y = m.front();
  if (n < 0 && precedes_or_equal(Mode{a, -n}, y)) {
    Monomial mm;
    mm.reserve(m.size() + 1);
    mm.push_back(Mode{a, -n});
    mm.insert(mm.end(), m.begin(), m.end());
    return GradedVector::basis({std::move(mm), base});
  }
  // x_a(n) y(−d) R = y(−d) x_a(n) R + [x_a, y](n−d) R + n δ_{n,d} ⟨x_a, y⟩ ℓ R
  GradedVector out;
  const GradedVector moved = apply_suffix(a, n, m, 1, base);
  out.add(apply(y.a, -y.depth, moved));
  const Element& br = alg_->bracket_basis(a, y.a);
  for (std::size_t k = 0; k < br.size(); ++k)
    if (!br[k].is_zero()) out.add(apply_suffix(k, n - y.depth, m, 1, base), br[k]);
  if (n > 0 && n == y.depth) {
    const Scalar& g = alg_->gram()(a, y.a);
    if (!g.is_zero()) out.add({Monomial(m.begin() + 1, m.end()), base}, Scalar(n) * g * level_);
  }
  return out;
}

Scalar GeneralizedVermaModule::weight(const Monomial& m) const {
  Scalar w;
  for (const auto& x : m) w += generator_weights_[x.a];
  return w;
}

Scalar GeneralizedVermaModule::weight(const BasisKey& key) const { return weight(key.mono) + base_->weight(key.base); }

void GeneralizedVermaModule::enumerate(int remaining, Mode max_mode, Monomial& prefix,
                                       std::vector<Monomial>& out) const {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  // Next mode must not precede the previous one: depth ≤ previous depth, and
  // at equal depth a basis index ≥ the previous one.
  for (int d = std::min(remaining, max_mode.depth); d >= 1; --d) {
    const std::size_t first = d == max_mode.depth ? max_mode.a : 0;
    for (std::size_t a = first; a < alg_->dim(); ++a) {
      prefix.push_back(Mode{a, d});
      enumerate(remaining - d, Mode{a, d}, prefix, out);
      prefix.pop_back();
    }
  }
}

std::vector<Monomial> GeneralizedVermaModule::monomials(int degree) const {
  std::vector<Monomial> out;
  Monomial prefix;
  if (degree < 0) return out;
  enumerate(degree, Mode{0, degree}, prefix, out);
  return out;
}

std::vector<BasisKey> GeneralizedVermaModule::degree_basis(int m, const Scalar& w) const {
  if (m > cutoff_) throw CutoffExceeded("degree " + std::to_string(m) + " exceeds cutoff");
  std::vector<BasisKey> out;
  for (auto& mono : monomials(m)) {
    const Scalar bw = w - weight(mono);
    const auto idx = base_->index_of_weight(bw);
    if (idx) {
      out.push_back({std::move(mono), *idx});
    } else if (base_->in_support(bw)) {
      throw WindowEscape("degree_basis needs weight " + bw.str() + " outside the window of " + base_->label());
    }
  }
  return out;
}

GradedVector GeneralizedVermaModule::sugawara_L0(const GradedVector& v) const {
  const Scalar shifted = level_ + alg_->dual_coxeter();
  GradedVector zero_part;
  GradedVector positive_part;
  for (const auto& p : pairs_) {
    zero_part.add(apply(p.lower, 0, apply(p.upper, 0, v)));
    for (int n = 1; n <= v.max_degree(); ++n) positive_part.add(apply(p.lower, -n, apply(p.upper, n, v)));
  }
  GradedVector out;
  out.add(zero_part, Scalar(1) / (Scalar(2) * shifted));
  out.add(positive_part, Scalar(1) / shifted);
  return out;
}

GradedVector GeneralizedVermaModule::sugawara_Lm1(const GradedVector& v) const {
  const Scalar shifted = level_ + alg_->dual_coxeter();
  GradedVector sum;
  for (const auto& p : pairs_)
    for (int n = 0; n <= v.max_degree(); ++n) sum.add(apply(p.lower, -n - 1, apply(p.upper, n, v)));
  return Scalar(1) / shifted * sum;
}

Scalar GeneralizedVermaModule::conformal_weight() const {
  return base_->casimir_value() / (Scalar(2) * (level_ + alg_->dual_coxeter()));
}

Scalar GeneralizedVermaModule::contravariant_form(const BasisKey& key, const GradedVector& v) const {
  if (key.mono.empty()) {
    Scalar s;
    for (const auto& [k, c] : v.terms())
      if (k.mono.empty() && k.base == key.base) s += c * base_->contravariant_form()[key.base];
    return s;
  }
  const Mode& y = key.mono.front();
  const BasisKey rest{Monomial(key.mono.begin() + 1, key.mono.end()), key.base};
  return contravariant_form(rest, apply(alg_->involute(y.a), y.depth, v));
}

Matrix GeneralizedVermaModule::gram_matrix(int m, const Scalar& w) const {
  const auto basis = degree_basis(m, w);
  Matrix g(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const GradedVector bj = GradedVector::basis(basis[j]);
    for (std::size_t i = 0; i < basis.size(); ++i) g(i, j) = contravariant_form(basis[i], bj);
  }
  return g;
}

std::vector<GradedVector> GeneralizedVermaModule::contravariant_radical(int m, const Scalar& w) const {
  const auto basis = degree_basis(m, w);
  std::vector<GradedVector> out;
  for (const auto& k : kernel(gram_matrix(m, w))) {
    GradedVector v;
    for (std::size_t j = 0; j < basis.size(); ++j) v.add(basis[j], k[j]);
    out.push_back(std::move(v));
  }
  return out;
}

bool GeneralizedVermaModule::in_radical(const GradedVector& v) const {
  if (v.is_zero()) return true;
  const auto& first = v.terms().begin()->first;
  const int m = degree(first.mono);
  const Scalar w = weight(first);
  for (const auto& [k, c] : v.terms()) {
    if (degree(k.mono) != m || weight(k) != w) throw DomainError("in_radical needs a homogeneous vector");
  }
  for (const auto& b : degree_basis(m, w))
    if (!contravariant_form(b, v).is_zero()) return false;
  return true;
}

std::size_t GeneralizedVermaModule::cache_size() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.size();
}

Scalar conformal_weight(const Scalar& lambda, const Level& level) {
  const Scalar shifted = level.shifted(Scalar(2));
  return lambda * (lambda + Scalar(2)) / (Scalar(4) * shifted);
}

std::size_t generic_radical_dimension(const ModulePtr& base, int m, const Scalar& w) {
  // A polynomial identity in ℓ that fails somewhere fails at all but finitely
  // many levels, so the minimum over a few unrelated samples is the generic rank.
  static const std::vector<Scalar> samples = {Scalar(1, 7), Scalar(-13, 11), Scalar(29, 3), Scalar(-41, 17)};
  std::size_t best = static_cast<std::size_t>(-1);
  for (const auto& s : samples) {
    const GeneralizedVermaModule v(base, s, m);
    best = std::min(best, kernel(v.gram_matrix(m, w)).size());
  }
  return best;
}

// ---------------------------------------------------------------------------
// Contragredient side

ContragredientModule::ContragredientModule(ModulePtr base, Scalar level, int cutoff) : base_(std::move(base)) {
  if (!base_->complete()) throw DomainError("contragredient targets need a finite base module, got " + base_->label());
  dual_base_ = std::make_shared<const WeightModule>(base_->dual());
  dual_verma_ = std::make_shared<GeneralizedVermaModule>(dual_base_, std::move(level), cutoff);
}

GradedVector ContragredientModule::apply(const Element& x, int n, const GradedVector& f, int m,
                                         const Scalar& w) const {
  GradedVector out;
  if (m - n < 0) return out;
  const auto& gw = *dual_verma_->algebra().weights();
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    for (const auto& b : dual_verma_->degree_basis(m - n, -(w + gw[a]))) {
      const GradedVector img = dual_verma_->apply(a, -n, b);
      Scalar s;
      for (const auto& [k, c] : img.terms()) s += c * f.coeff(k);
      out.add(b, -x[a] * s);
    }
  }
  return out;
}

Scalar ContragredientModule::evaluate(const GradedVector& f, const GradedVector& b) {
  Scalar s;
  for (const auto& [k, c] : b.terms()) s += c * f.coeff(k);
  return s;
}

GradedVector ContragredientModule::from_base(const Vector& u) const {
  GradedVector f;
  for (std::size_t i = 0; i < u.size(); ++i) f.add({Monomial{}, dual_index(i)}, u[i]);
  return f;
}

Scalar pairing_reduce_left(const GeneralizedVermaModule& v_mod, const ContragredientModule& c_mod,
                           const GradedVector& v, const GradedVector& b) {
  Scalar s;
  for (const auto& [key, c] : v.terms()) {
    if (key.mono.empty()) {
      for (const auto& [kb, cb] : b.terms())
        if (kb.mono.empty() && kb.base == c_mod.dual_index(key.base)) s += c * cb;
      continue;
    }
    const Mode& y = key.mono.front();
    const GradedVector rest = GradedVector::basis({Monomial(key.mono.begin() + 1, key.mono.end()), key.base});
    s -= c * pairing_reduce_left(v_mod, c_mod, rest, c_mod.predual().apply(y.a, y.depth, b));
  }
  return s;
}

Scalar pairing_reduce_right(const GeneralizedVermaModule& v_mod, const ContragredientModule& c_mod,
                            const GradedVector& v, const GradedVector& b) {
  Scalar s;
  for (const auto& [key, c] : b.terms()) {
    if (key.mono.empty()) {
      for (const auto& [kv, cv] : v.terms())
        if (kv.mono.empty() && c_mod.dual_index(kv.base) == key.base) s += c * cv;
      continue;
    }
    const Mode& y = key.mono.front();
    const GradedVector rest = GradedVector::basis({Monomial(key.mono.begin() + 1, key.mono.end()), key.base});
    s -= c * pairing_reduce_right(v_mod, c_mod, v_mod.apply(y.a, y.depth, v), rest);
  }
  return s;
}

GradedVector natural_map(const GeneralizedVermaModule& v_mod, const ContragredientModule& c_mod,
                         const GradedVector& v, int m, const Scalar& w) {
  GradedVector f;
  for (const auto& b : c_mod.predual().degree_basis(m, -w))
    f.add(b, pairing_reduce_left(v_mod, c_mod, v, GradedVector::basis(b)));
  return f;
}

}  // namespace intertwine
