#include "intertwine/weight_module.hpp"

#include <map>
#include <sstream>

#include "intertwine/error.hpp"

namespace intertwine {

namespace {

constexpr std::size_t kE = 0;
constexpr std::size_t kH = 1;
constexpr std::size_t kF = 2;

bool is_natural(const Scalar& x) { return x.is_integer() && x.sign() >= 0; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& s, const std::string& whole) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw DomainError("expected an integer in module descriptor '" + whole + "'");
  return v;
}

ActionTerm term(std::size_t target, Scalar c) {
  if (c.is_zero()) return {};
  return {ActionTerm::Kind::Term, target, std::move(c)};
}

ActionTerm escape() { return {ActionTerm::Kind::Escape, 0, Scalar()}; }

void add_term(std::vector<std::pair<std::size_t, Scalar>>& terms, std::size_t idx, const Scalar& c) {
  for (auto& [i, v] : terms) {
    if (i == idx) {
      v += c;
      return;
    }
  }
  terms.emplace_back(idx, c);
}

void prune(std::vector<std::pair<std::size_t, Scalar>>& terms) {
  std::erase_if(terms, [](const auto& p) { return p.second.is_zero(); });
}

/// Image of a sparse vector; escaped if any contributing basis vector escapes.
SparseImage apply_sparse(const WeightModule& u, const Element& x, const SparseImage& v) {
  SparseImage out;
  out.escaped = v.escaped;
  for (const auto& [i, c] : v.terms) {
    const SparseImage img = u.apply(x, i);
    out.escaped = out.escaped || img.escaped;
    for (const auto& [j, d] : img.terms) add_term(out.terms, j, c * d);
  }
  prune(out.terms);
  return out;
}

/// Σ_a x_a x^a on basis vector i of a module (the result is a multiple of v_i).
std::optional<Scalar> module_casimir_at(const WeightModule& u, const std::vector<DualBasisPair>& pairs,
                                        std::size_t i) {
  SparseImage total;
  for (const auto& p : pairs) {
    const SparseImage mid = u.apply(p.upper, i);
    if (mid.escaped) return std::nullopt;
    const SparseImage img = apply_sparse(u, p.lower, mid);
    if (img.escaped) return std::nullopt;
    for (const auto& [j, c] : img.terms) add_term(total.terms, j, c);
  }
  prune(total.terms);
  Scalar value;
  for (const auto& [j, c] : total.terms) {
    if (j != i) throw DomainError("Casimir does not preserve weight spaces in " + u.label());
    value = c;
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModuleSpec

ModuleSpec ModuleSpec::parse(const std::string& text, int default_window) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw DomainError("empty module descriptor");
  const std::string& kind = parts[0];
  if ((kind == "finite" || kind == "dual") && parts.size() == 2) {
    const int p = parse_int(parts[1], text);
    if (p < 0) throw DomainError("finite module needs p >= 0 in '" + text + "'");
    ModuleSpec s = finite(p);
    if (kind == "dual") s.kind = ModuleKind::FiniteDual;
    return s;
  }
  if (kind == "hw" && (parts.size() == 2 || parts.size() == 3)) {
    const int depth = parts.size() == 3 ? parse_int(parts[2], text) : default_window;
    return highest_weight(Scalar::parse(parts[1]), depth);
  }
  if (kind == "dense" && (parts.size() == 3 || parts.size() == 4)) {
    const int radius = parts.size() == 4 ? parse_int(parts[3], text) : default_window;
    return dense(Scalar::parse(parts[1]), Scalar::parse(parts[2]), radius);
  }
  throw DomainError("malformed module descriptor '" + text + "' (finite:p, hw:l[:depth], dense:l:delta[:radius])");
}

std::string ModuleSpec::str() const {
  switch (kind) {
    case ModuleKind::Finite:
      return "finite:" + lambda.str();
    case ModuleKind::FiniteDual:
      return "dual:" + lambda.str();
    case ModuleKind::HighestWeight:
      return "hw:" + lambda.str() + ":" + std::to_string(window);
    case ModuleKind::Dense:
      return "dense:" + lambda.str() + ":" + delta.str() + ":" + std::to_string(window);
  }
  return {};
}

int ModuleSpec::p() const {
  if (kind != ModuleKind::Finite && kind != ModuleKind::FiniteDual) throw DomainError(str() + " is not finite");
  return static_cast<int>(lambda.rational().get_num().get_si());
}

// ---------------------------------------------------------------------------
// WeightModule

void WeightModule::finish() {
  alg_ = sl2();
  const std::size_t n = weights_.size();
  action_[kH].assign(n, ActionTerm{});
  for (std::size_t j = 0; j < n; ++j) action_[kH][j] = term(j, weights_[j]);
  // Contravariant form: ⟨e v_{j+1}, v_j⟩ = ⟨v_{j+1}, f v_j⟩.
  form_.assign(n, Scalar());
  if (n == 0) return;
  form_[0] = 1;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const ActionTerm& up = action_[kE][j + 1];
    const ActionTerm& down = action_[kF][j];
    if (up.kind != ActionTerm::Kind::Term || down.kind != ActionTerm::Kind::Term || up.target != j ||
        down.target != j + 1) {
      throw DomainError("contravariant form undefined on " + label());
    }
    form_[j + 1] = up.coeff * form_[j] / down.coeff;
  }
}

WeightModule WeightModule::finite(int p) {
  if (p < 0) throw DomainError("finite module needs p >= 0");
  WeightModule m;
  m.spec_ = ModuleSpec::finite(p);
  m.action_.assign(3, {});
  const auto n = static_cast<std::size_t>(p) + 1;
  for (std::size_t j = 0; j < n; ++j) {
    const long jj = static_cast<long>(j);
    m.weights_.emplace_back(p - 2 * jj);
    m.action_[kE].push_back(j == 0 ? ActionTerm{} : term(j - 1, Scalar(p - jj + 1)));
    m.action_[kF].push_back(j + 1 == n ? ActionTerm{} : term(j + 1, Scalar(jj + 1)));
  }
  m.action_[kH].resize(n);
  m.finish();
  return m;
}

WeightModule WeightModule::highest_weight(const Scalar& lambda, int depth) {
  if (is_natural(lambda)) throw DomainError("highest weight " + lambda.str() + " is in N; use finite:" + lambda.str());
  if (depth < 0) throw DomainError("window depth must be >= 0");
  WeightModule m;
  m.spec_ = ModuleSpec::highest_weight(lambda, depth);
  m.action_.assign(3, {});
  const auto n = static_cast<std::size_t>(depth) + 1;
  for (std::size_t j = 0; j < n; ++j) {
    const long jj = static_cast<long>(j);
    m.weights_.push_back(lambda - Scalar(2 * jj));
    m.action_[kE].push_back(j == 0 ? ActionTerm{} : term(j - 1, lambda - Scalar(jj - 1)));
    m.action_[kF].push_back(j + 1 == n ? escape() : term(j + 1, Scalar(jj + 1)));
  }
  m.action_[kH].resize(n);
  m.finish();
  return m;
}

WeightModule WeightModule::dense(const Scalar& lambda, const Scalar& delta, int radius) {
  if (!lambda.is_rational() || !delta.is_rational()) throw DomainError("dense module parameters must be rational");
  if (radius < 0) throw DomainError("window radius must be >= 0");
  // Highest or lowest weight vectors appear iff δ = ½ν(ν−2) for some ν ∈ λ + 2ℤ,
  // i.e. ν = 1 ± √(1+2δ) lies in the coset.
  const Scalar root = Scalar::sqrt((Scalar(1) + Scalar(2) * delta).rational());
  if (root.is_rational()) {
    for (const Scalar& nu : {Scalar(1) + root, Scalar(1) - root}) {
      if (((nu - lambda) / Scalar(2)).is_integer()) {
        throw DomainError("dense:" + lambda.str() + ":" + delta.str() + " has an extremal weight vector at weight " +
                          nu.str());
      }
    }
  }
  WeightModule m;
  m.spec_ = ModuleSpec::dense(lambda, delta, radius);
  m.action_.assign(3, {});
  const auto n = 2 * static_cast<std::size_t>(radius) + 1;
  for (std::size_t j = 0; j < n; ++j) {
    const Scalar mu = lambda + Scalar(2L * radius - 2L * static_cast<long>(j));
    m.weights_.push_back(mu);
    m.action_[kE].push_back(j == 0 ? escape() : term(j - 1, Scalar(1)));
    // f v_μ = ½(δ − ½μ(μ−2)) v_{μ−2}, so that ef v_μ matches the same scalar.
    const Scalar c = Scalar(1, 2) * (delta - Scalar(1, 2) * mu * (mu - Scalar(2)));
    m.action_[kF].push_back(j + 1 == n ? escape() : term(j + 1, c));
  }
  m.action_[kH].resize(n);
  m.finish();
  return m;
}

WeightModule WeightModule::from_spec(const ModuleSpec& spec) {
  switch (spec.kind) {
    case ModuleKind::Finite:
      return finite(spec.p());
    case ModuleKind::FiniteDual:
      return finite(spec.p()).dual();
    case ModuleKind::HighestWeight:
      return highest_weight(spec.lambda, spec.window);
    case ModuleKind::Dense:
      return dense(spec.lambda, spec.delta, spec.window);
  }
  throw DomainError("unknown module kind");
}

WeightModule WeightModule::dual() const {
  if (!complete()) throw DomainError("dual of windowed module " + label() + " is not supported");
  if (spec_.kind != ModuleKind::Finite) throw DomainError("dual is implemented for finite modules");
  const std::size_t n = dim();
  WeightModule m;
  m.spec_ = spec_;
  m.spec_.kind = ModuleKind::FiniteDual;
  m.action_.assign(3, std::vector<ActionTerm>(n));
  // dual index k pairs with original index n−1−k, keeping weights decreasing.
  for (std::size_t k = 0; k < n; ++k) m.weights_.push_back(-weights_[n - 1 - k]);
  for (std::size_t a : {kE, kF}) {
    for (std::size_t j = 0; j < n; ++j) {
      const ActionTerm& t = action_[a][j];
      if (t.kind != ActionTerm::Kind::Term) continue;
      // x v_j = c v_i  ⇒  x φ_i = −c φ_j + …
      const std::size_t src = n - 1 - t.target;
      const std::size_t dst = n - 1 - j;
      if (m.action_[a][src].kind == ActionTerm::Kind::Term) throw DomainError("dual: weight space not 1-dimensional");
      m.action_[a][src] = term(dst, -t.coeff);
    }
  }
  m.finish();
  return m;
}

bool WeightModule::complete() const {
  return spec_.kind == ModuleKind::Finite || spec_.kind == ModuleKind::FiniteDual;
}

SparseImage WeightModule::apply(const Element& x, std::size_t i) const {
  SparseImage out;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    const ActionTerm& t = action_[a].at(i);
    if (t.kind == ActionTerm::Kind::Escape) out.escaped = true;
    if (t.kind == ActionTerm::Kind::Term) add_term(out.terms, t.target, x[a] * t.coeff);
  }
  prune(out.terms);
  return out;
}

Vector WeightModule::act(const Element& x, const Vector& v) const {
  if (v.size() != dim()) throw DimensionMismatch("module vector length");
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v[i].is_zero()) continue;
    const SparseImage img = apply(x, i);
    if (img.escaped) throw WindowEscape("action leaves the window of " + label() + " at index " + std::to_string(i));
    for (const auto& [j, c] : img.terms) out[j] += v[i] * c;
  }
  return out;
}

std::optional<std::size_t> WeightModule::index_of_weight(const Scalar& w) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (weights_[i] == w) return i;
  return std::nullopt;
}

bool WeightModule::in_support(const Scalar& w) const {
  const Scalar k = (spec_.lambda - w) / Scalar(2);
  switch (spec_.kind) {
    case ModuleKind::Finite:
    case ModuleKind::FiniteDual:
      return is_natural(k) && k <= spec_.lambda;
    case ModuleKind::HighestWeight:
      return is_natural(k);
    case ModuleKind::Dense:
      return k.is_integer();
  }
  return false;
}

Scalar WeightModule::casimir_value() const {
  if (spec_.kind == ModuleKind::Dense) return spec_.delta;
  return spec_.lambda * (spec_.lambda + Scalar(2)) / Scalar(2);
}

Representation WeightModule::representation() const {
  Representation rep;
  rep.label = label();
  for (std::size_t a = 0; a < action_.size(); ++a) {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      const ActionTerm& t = action_[a][j];
      if (t.kind == ActionTerm::Kind::Escape) throw WindowEscape(label() + " has no finite representation matrix");
      if (t.kind == ActionTerm::Kind::Term) m(t.target, j) = t.coeff;
    }
    rep.rho.push_back(std::move(m));
  }
  return rep;
}

bool BlockOperator::fully_valid() const {
  for (bool b : column_valid)
    if (!b) return false;
  return true;
}

BlockOperator casimir_matrix(const WeightModule& u) {
  const auto pairs = dual_bases(*u.algebra());
  BlockOperator op{Matrix(u.dim(), u.dim()), std::vector<bool>(u.dim(), true)};
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const auto c = module_casimir_at(u, pairs, i);
    if (c) op.matrix(i, i) = *c;
    else op.column_valid[i] = false;
  }
  return op;
}

// ---------------------------------------------------------------------------
// TensorModule

TensorModule::TensorModule(ModulePtr u1, ModulePtr u2) : u1_(std::move(u1)), u2_(std::move(u2)) {
  std::map<std::string, std::size_t> by_weight;
  block_of_.resize(dim());
  position_.resize(dim());
  for (std::size_t t = 0; t < dim(); ++t) {
    const Scalar w = weight(t);
    auto [it, inserted] = by_weight.emplace(w.str(), blocks_.size());
    if (inserted) blocks_.push_back({w, {}, false});
    TensorBlock& b = blocks_[it->second];
    block_of_[t] = it->second;
    position_[t] = b.basis.size();
    b.basis.push_back(t);
  }
  for (auto& b : blocks_) b.complete = block_complete(b.weight);
}

Scalar TensorModule::weight(std::size_t t) const {
  const auto [i, j] = factors(t);
  return u1_->weight(i) + u2_->weight(j);
}

std::optional<std::size_t> TensorModule::block_of_weight(const Scalar& w) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    if (blocks_[b].weight == w) return b;
  return std::nullopt;
}

bool TensorModule::block_complete(const Scalar& w) const {
  const bool c1 = u1_->complete();
  const bool c2 = u2_->complete();
  if (c1 && c2) return true;
  if (c1 || c2) {
    const WeightModule& fin = c1 ? *u1_ : *u2_;
    const WeightModule& inf = c1 ? *u2_ : *u1_;
    for (std::size_t i = 0; i < fin.dim(); ++i) {
      const Scalar partner = w - fin.weight(i);
      if (inf.in_support(partner) && !inf.index_of_weight(partner)) return false;
    }
    return true;
  }
  if (u1_->spec().kind == ModuleKind::HighestWeight && u2_->spec().kind == ModuleKind::HighestWeight) {
    const Scalar k = (u1_->spec().lambda + u2_->spec().lambda - w) / Scalar(2);
    return k.is_integer() && k <= Scalar(u1_->spec().window) && k <= Scalar(u2_->spec().window);
  }
  return false;
}

SparseImage TensorModule::apply_left(const Element& x, std::size_t t) const {
  const auto [i, j] = factors(t);
  const SparseImage img = u1_->apply(x, i);
  SparseImage out;
  out.escaped = img.escaped;
  for (const auto& [i2, c] : img.terms) out.terms.emplace_back(index(i2, j), c);
  return out;
}

SparseImage TensorModule::apply_right(const Element& x, std::size_t t) const {
  const auto [i, j] = factors(t);
  const SparseImage img = u2_->apply(x, j);
  SparseImage out;
  out.escaped = img.escaped;
  for (const auto& [j2, c] : img.terms) out.terms.emplace_back(index(i, j2), c);
  return out;
}

SparseImage TensorModule::apply(const Element& x, std::size_t t) const {
  SparseImage out = apply_left(x, t);
  const SparseImage r = apply_right(x, t);
  out.escaped = out.escaped || r.escaped;
  for (const auto& [k, c] : r.terms) add_term(out.terms, k, c);
  prune(out.terms);
  return out;
}

Vector TensorModule::act_left(const Element& x, const Vector& v) const {
  Vector out(dim());
  for (std::size_t t = 0; t < dim(); ++t) {
    if (v[t].is_zero()) continue;
    const SparseImage img = apply_left(x, t);
    if (img.escaped) throw WindowEscape("left action leaves the window of " + label());
    for (const auto& [k, c] : img.terms) out[k] += v[t] * c;
  }
  return out;
}

Vector TensorModule::act(const Element& x, const Vector& v) const {
  Vector out(dim());
  for (std::size_t t = 0; t < dim(); ++t) {
    if (v[t].is_zero()) continue;
    const SparseImage img = apply(x, t);
    if (img.escaped) throw WindowEscape("action leaves the window of " + label());
    for (const auto& [k, c] : img.terms) out[k] += v[t] * c;
  }
  return out;
}

BlockOperator TensorModule::pair_casimir(std::size_t block) const {
  const auto& b = blocks_.at(block);
  const std::size_t n = b.basis.size();
  BlockOperator op{Matrix(n, n), std::vector<bool>(n, true)};
  const auto pairs = dual_bases(*algebra());
  for (std::size_t col = 0; col < n; ++col) {
    const auto [i, j] = factors(b.basis[col]);
    for (const auto& p : pairs) {
      const SparseImage l = u1_->apply(p.lower, i);
      const SparseImage r = u2_->apply(p.upper, j);
      if ((l.escaped && !r.is_zero()) || (r.escaped && !l.is_zero())) {
        op.column_valid[col] = false;
        break;
      }
      for (const auto& [i2, c1] : l.terms)
        for (const auto& [j2, c2] : r.terms) op.matrix(position_.at(index(i2, j2)), col) += c1 * c2;
    }
    if (!op.column_valid[col])
      for (std::size_t row = 0; row < n; ++row) op.matrix(row, col) = Scalar();
  }
  return op;
}

BlockOperator TensorModule::tensor_casimir(std::size_t block) const {
  const auto& b = blocks_.at(block);
  const std::size_t n = b.basis.size();
  BlockOperator op{Matrix(n, n), std::vector<bool>(n, true)};
  const auto pairs = dual_bases(*algebra());
  for (std::size_t col = 0; col < n; ++col) {
    bool ok = true;
    Vector acc(n);
    for (const auto& p : pairs) {
      const SparseImage mid = apply(p.upper, b.basis[col]);
      if (mid.escaped) {
        ok = false;
        break;
      }
      for (const auto& [t2, c] : mid.terms) {
        const SparseImage img = apply(p.lower, t2);
        if (img.escaped) {
          ok = false;
          break;
        }
        for (const auto& [t3, d] : img.terms) acc[position_.at(t3)] += c * d;
      }
      if (!ok) break;
    }
    op.column_valid[col] = ok;
    if (ok)
      for (std::size_t row = 0; row < n; ++row) op.matrix(row, col) = acc[row];
  }
  return op;
}

BlockOperator TensorModule::factor_casimirs(std::size_t block) const {
  const auto& b = blocks_.at(block);
  const std::size_t n = b.basis.size();
  BlockOperator op{Matrix(n, n), std::vector<bool>(n, true)};
  const auto pairs = dual_bases(*algebra());
  for (std::size_t col = 0; col < n; ++col) {
    const auto [i, j] = factors(b.basis[col]);
    const auto c1 = module_casimir_at(*u1_, pairs, i);
    const auto c2 = module_casimir_at(*u2_, pairs, j);
    if (c1 && c2) op.matrix(col, col) = *c1 + *c2;
    else op.column_valid[col] = false;
  }
  return op;
}

Vector TensorModule::embed(std::size_t block, const Vector& local) const {
  const auto& b = blocks_.at(block);
  if (local.size() != b.basis.size()) throw DimensionMismatch("embed: block vector length");
  Vector out(dim());
  for (std::size_t k = 0; k < local.size(); ++k) out[b.basis[k]] = local[k];
  return out;
}

Vector TensorModule::restrict(std::size_t block, const Vector& full) const {
  const auto& b = blocks_.at(block);
  Vector out(b.basis.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = full.at(b.basis[k]);
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition and homomorphisms

std::pair<Scalar, Scalar> dense_tensor_eigenvalues(const Scalar& delta) {
  const Scalar disc = Scalar(2) * delta + Scalar(1);
  const Scalar root = Scalar::sqrt(disc.rational());
  const Scalar mid = disc / Scalar(2);
  return {mid + root, mid - root};
}

std::vector<Summand> decompose(const WeightModule& u1, const WeightModule& u2) {
  const WeightModule* a = &u1;
  const WeightModule* b = &u2;
  if (!a->complete() && b->complete()) std::swap(a, b);
  auto casimir_of = [](const Scalar& mu) { return mu * (mu + Scalar(2)) / Scalar(2); };
  std::vector<Summand> out;
  if (a->complete() && b->complete()) {
    const int p = a->spec().p(), q = b->spec().p();
    for (int k = 0; k <= std::min(p, q); ++k) {
      const int s = p + q - 2 * k;
      out.push_back({ModuleSpec::finite(s), casimir_of(Scalar(s)), 1});
    }
    return out;
  }
  if (a->complete() && b->spec().kind == ModuleKind::HighestWeight) {
    const int p = a->spec().p();
    const Scalar& lambda = b->spec().lambda;
    if (is_natural(lambda) || is_natural(lambda + Scalar(p))) {
      throw UnsupportedShape("finite (x) highest weight needs lambda, p+lambda outside N");
    }
    for (int k = 0; k <= p; ++k) {
      const Scalar mu = lambda + Scalar(p - 2 * k);
      out.push_back({ModuleSpec::highest_weight(mu, 0), casimir_of(mu), 1});
    }
    return out;
  }
  if (a->complete() && a->spec().p() == 1 && b->spec().kind == ModuleKind::Dense) {
    const Scalar& delta = b->spec().delta;
    const Scalar shifted = b->spec().lambda + Scalar(1);
    const auto [plus, minus] = dense_tensor_eigenvalues(delta);
    if (plus == minus) {
      out.push_back({ModuleSpec::dense(shifted, plus, 0), plus, 2});
    } else {
      out.push_back({ModuleSpec::dense(shifted, plus, 0), plus, 1});
      out.push_back({ModuleSpec::dense(shifted, minus, 0), minus, 1});
    }
    return out;
  }
  throw UnsupportedShape("decompose: unsupported tensor shape " + u1.label() + " (x) " + u2.label());
}

int multiplicity(const std::vector<Summand>& summands, const WeightModule& u3) {
  int m = 0;
  const ModuleSpec& s3 = u3.spec();
  for (const auto& s : summands) {
    switch (s3.kind) {
      case ModuleKind::Finite:
      case ModuleKind::FiniteDual:
        if (s.module.kind == ModuleKind::Finite && s.module.lambda == s3.lambda) m += s.multiplicity;
        break;
      case ModuleKind::HighestWeight:
        if (s.module.kind == ModuleKind::HighestWeight && s.module.lambda == s3.lambda) m += s.multiplicity;
        break;
      case ModuleKind::Dense:
        if (s.module.kind == ModuleKind::Dense && s.module.delta == s3.delta &&
            ((s.module.lambda - s3.lambda) / Scalar(2)).is_integer()) {
          // A Jordan block at a double eigenvalue still carries one submodule.
          m += 1;
        }
        break;
    }
  }
  return m;
}

GHom GHom::scaled(const Scalar& s) const {
  GHom out = *this;
  out.map *= s;
  return out;
}

GHom GHom::plus(const GHom& o) const {
  GHom out = *this;
  out.map += o.map;
  for (std::size_t t = 0; t < out.column_known.size(); ++t)
    out.column_known[t] = column_known[t] && o.column_known[t];
  return out;
}

std::vector<GHom> hom_space(const std::shared_ptr<const TensorModule>& tp, const ModulePtr& u3) {
  const TensorModule& t = *tp;
  const auto& alg = *t.algebra();
  const std::size_t n = t.dim();

  std::vector<bool> known(n, true);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> unknown;  // (i3, col) -> variable
  for (std::size_t col = 0; col < n; ++col) {
    const Scalar w = t.weight(col);
    const auto i3 = u3->index_of_weight(w);
    if (i3) unknown.emplace(std::make_pair(*i3, col), unknown.size());
    else if (u3->in_support(w)) known[col] = false;
  }

  std::vector<Vector> rows;
  for (std::size_t a = 0; a < alg.dim(); ++a) {
    const Element x = alg.basis(a);
    for (std::size_t col = 0; col < n; ++col) {
      if (!known[col]) continue;
      const SparseImage img = t.apply(x, col);
      if (img.escaped) continue;
      bool usable = true;
      for (const auto& [c2, v] : img.terms) usable = usable && known[c2];
      if (!usable) continue;
      for (std::size_t i3p = 0; i3p < u3->dim(); ++i3p) {
        Vector row(unknown.size());
        bool nonempty = false;
        for (const auto& [c2, v] : img.terms) {
          const auto it = unknown.find({i3p, c2});
          if (it != unknown.end()) {
            row[it->second] += v;
            nonempty = true;
          }
        }
        const auto i3 = u3->index_of_weight(t.weight(col));
        if (i3) {
          const SparseImage y = u3->apply(x, *i3);
          if (y.escaped) continue;
          for (const auto& [k, c] : y.terms) {
            if (k != i3p) continue;
            row[unknown.at({*i3, col})] -= c;
            nonempty = true;
          }
        }
        if (nonempty) rows.push_back(std::move(row));
      }
    }
  }

  std::vector<Vector> basis;
  if (unknown.empty()) return {};
  if (rows.empty()) {
    for (std::size_t k = 0; k < unknown.size(); ++k) {
      Vector v(unknown.size());
      v[k] = 1;
      basis.push_back(std::move(v));
    }
  } else {
    basis = kernel(Matrix::from_rows(rows));
  }

  try {
    const int expected = multiplicity(decompose(t.first(), t.second()), *u3);
    if (static_cast<int>(basis.size()) > expected) {
      throw UnderdeterminedWindow("hom_space " + t.label() + " -> " + u3->label() + ": windowed equations leave " +
                                  std::to_string(basis.size()) + " solutions, expected " + std::to_string(expected));
    }
  } catch (const UnsupportedShape&) {
    // no reference dimension for this shape
  }

  std::vector<GHom> out;
  for (const auto& v : basis) {
    GHom f{tp, u3, Matrix(u3->dim(), n), known};
    for (const auto& [key, var] : unknown) f.map(key.first, key.second) = v[var];
    out.push_back(std::move(f));
  }
  return out;
}

bool is_equivariant(const GHom& f) {
  const TensorModule& t = *f.domain;
  const auto& alg = *t.algebra();
  for (std::size_t a = 0; a < alg.dim(); ++a) {
    const Element x = alg.basis(a);
    for (std::size_t col = 0; col < t.dim(); ++col) {
      if (!f.column_known[col]) continue;
      const SparseImage img = t.apply(x, col);
      if (img.escaped) continue;
      bool usable = true;
      for (const auto& [c2, v] : img.terms) usable = usable && f.column_known[c2];
      if (!usable) continue;
      Vector lhs(f.codomain->dim());
      for (const auto& [c2, v] : img.terms)
        for (std::size_t r = 0; r < lhs.size(); ++r)
          if (!f.map(r, c2).is_zero()) lhs[r] += v * f.map(r, c2);
      Vector rhs;
      try {
        rhs = f.codomain->act(x, f.column(col));
      } catch (const WindowEscape&) {
        continue;
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace intertwine
