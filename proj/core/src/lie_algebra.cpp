#include "intertwine/lie_algebra.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <utility>

#include "intertwine/error.hpp"

namespace intertwine {

SimpleLieAlgebra::SimpleLieAlgebra(std::string name, std::vector<std::string> basis,
                                   std::vector<std::vector<Element>> structure, Matrix gram, Scalar dual_coxeter)
    : name_(std::move(name)),
      basis_(std::move(basis)),
      structure_(std::move(structure)),
      gram_(std::move(gram)),
      dual_coxeter_(std::move(dual_coxeter)) {
  const std::size_t n = basis_.size();
  if (structure_.size() != n || gram_.rows() != n || gram_.cols() != n) {
    throw DimensionMismatch("algebra '" + name_ + "': structure or gram size does not match basis");
  }
  for (const auto& row : structure_) {
    if (row.size() != n) throw DimensionMismatch("algebra '" + name_ + "': ragged structure constants");
    for (const auto& el : row)
      if (el.size() != n) throw DimensionMismatch("algebra '" + name_ + "': bracket of wrong length");
  }
}

std::size_t SimpleLieAlgebra::index(const std::string& symbol) const {
  const auto it = std::find(basis_.begin(), basis_.end(), symbol);
  if (it == basis_.end()) throw DomainError("unknown basis element '" + symbol + "' in " + name_);
  return static_cast<std::size_t>(it - basis_.begin());
}

Element SimpleLieAlgebra::basis(std::size_t a) const {
  Element x(dim());
  x.at(a) = 1;
  return x;
}

Element SimpleLieAlgebra::bracket(const Element& x, const Element& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("bracket: element length");
  Element out(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim(); ++b) {
      if (y[b].is_zero()) continue;
      const Scalar c = x[a] * y[b];
      const Element& ab = structure_[a][b];
      for (std::size_t k = 0; k < dim(); ++k)
        if (!ab[k].is_zero()) out[k] += c * ab[k];
    }
  }
  return out;
}

Scalar SimpleLieAlgebra::form(const Element& x, const Element& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("form: element length");
  Scalar s;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim(); ++b)
      if (!y[b].is_zero() && !gram_(a, b).is_zero()) s += x[a] * gram_(a, b) * y[b];
  }
  return s;
}

void SimpleLieAlgebra::set_weights(std::vector<Scalar> w) {
  if (w.size() != dim()) throw DimensionMismatch("weights: one per basis element");
  weights_ = std::move(w);
}

void SimpleLieAlgebra::set_involution(Matrix sigma) {
  if (sigma.rows() != dim() || sigma.cols() != dim()) throw DimensionMismatch("involution: wrong size");
  involution_ = std::move(sigma);
}

Element SimpleLieAlgebra::involute(std::size_t a) const {
  if (!involution_) throw DomainError("algebra '" + name_ + "' has no anti-involution");
  return involution_->column(a);
}

AlgebraPtr sl2() {
  static const AlgebraPtr instance = [] {
    // basis e, h, f
    auto el = [](int e, int h, int f) { return Element{Scalar(e), Scalar(h), Scalar(f)}; };
    std::vector<std::vector<Element>> c(3, std::vector<Element>(3, el(0, 0, 0)));
    c[0][1] = el(-2, 0, 0);  // [e,h] = -2e
    c[1][0] = el(2, 0, 0);
    c[0][2] = el(0, 1, 0);  // [e,f] = h
    c[2][0] = el(0, -1, 0);
    c[1][2] = el(0, 0, -2);  // [h,f] = -2f
    c[2][1] = el(0, 0, 2);
    Matrix gram = Matrix::from_rows({el(0, 0, 1), el(0, 2, 0), el(1, 0, 0)});
    auto alg = std::make_shared<SimpleLieAlgebra>("sl2", std::vector<std::string>{"e", "h", "f"}, std::move(c),
                                                  std::move(gram), Scalar(2));
    alg->set_weights({Scalar(2), Scalar(0), Scalar(-2)});
    alg->set_involution(Matrix::from_rows({el(0, 0, 1), el(0, 1, 0), el(1, 0, 0)}));
    return AlgebraPtr(alg);
  }();
  return instance;
}

namespace {

Scalar json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw DomainError("expected an exact number (integer or \"p/q\" string), got " + v.dump());
}

std::size_t json_index(const std::vector<std::string>& names, const nlohmann::json& v) {
  if (v.is_number_unsigned()) {
    const auto i = v.get<std::size_t>();
    if (i >= names.size()) throw DomainError("basis index out of range: " + v.dump());
    return i;
  }
  if (v.is_string()) {
    const auto it = std::find(names.begin(), names.end(), v.get<std::string>());
    if (it == names.end()) throw DomainError("unknown basis element " + v.dump());
    return static_cast<std::size_t>(it - names.begin());
  }
  throw DomainError("basis reference must be a name or an index: " + v.dump());
}

Matrix json_matrix(const nlohmann::json& rows) {
  std::vector<Vector> out;
  for (const auto& r : rows) {
    Vector v;
    for (const auto& x : r) v.push_back(json_scalar(x));
    out.push_back(std::move(v));
  }
  return Matrix::from_rows(out);
}

}  // namespace

AlgebraPtr load_algebra(const nlohmann::json& doc) {
  const auto names = doc.at("basis").get<std::vector<std::string>>();
  const std::size_t n = names.size();
  std::vector<std::vector<Element>> c(n, std::vector<Element>(n, Element(n)));
  for (const auto& t : doc.at("structure_constants")) {
    if (!t.is_array() || t.size() != 4) throw DomainError("structure constant must be [a, b, c, value]");
    const auto a = json_index(names, t[0]);
    const auto b = json_index(names, t[1]);
    const auto k = json_index(names, t[2]);
    c[a][b][k] = json_scalar(t[3]);
  }
  auto alg = std::make_shared<SimpleLieAlgebra>(doc.value("name", std::string("custom")), names, std::move(c),
                                                json_matrix(doc.at("gram")), json_scalar(doc.at("dual_coxeter")));
  if (doc.contains("weights")) {
    std::vector<Scalar> w;
    for (const auto& x : doc.at("weights")) w.push_back(json_scalar(x));
    alg->set_weights(std::move(w));
  }
  if (doc.contains("involution")) alg->set_involution(json_matrix(doc.at("involution")));
  return alg;
}

nlohmann::json algebra_to_json(const SimpleLieAlgebra& alg) {
  nlohmann::json doc;
  doc["name"] = alg.name();
  doc["basis"] = alg.basis_names();
  auto sc = nlohmann::json::array();
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = 0; b < alg.dim(); ++b)
      for (std::size_t k = 0; k < alg.dim(); ++k) {
        const Scalar& v = alg.bracket_basis(a, b)[k];
        if (!v.is_zero()) sc.push_back({alg.basis_names()[a], alg.basis_names()[b], alg.basis_names()[k], v.str()});
      }
  doc["structure_constants"] = sc;
  auto mat = [](const Matrix& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto r = nlohmann::json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
      rows.push_back(r);
    }
    return rows;
  };
  doc["gram"] = mat(alg.gram());
  doc["dual_coxeter"] = alg.dual_coxeter().str();
  if (alg.weights()) {
    auto w = nlohmann::json::array();
    for (const auto& x : *alg.weights()) w.push_back(x.str());
    doc["weights"] = w;
  }
  if (alg.involution()) doc["involution"] = mat(*alg.involution());
  return doc;
}

ValidationReport validate(const SimpleLieAlgebra& alg) {
  ValidationReport rep;
  const std::size_t n = alg.dim();
  const auto& names = alg.basis_names();
  auto fail = [&](bool& flag, std::string msg) {
    if (flag) rep.failures.push_back(std::move(msg));
    flag = false;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Element sum = alg.bracket_basis(a, b);
      const Element& ba = alg.bracket_basis(b, a);
      for (std::size_t k = 0; k < n; ++k) sum[k] += ba[k];
      if (!is_zero(sum)) fail(rep.antisymmetric, "antisymmetry fails for [" + names[a] + "," + names[b] + "]");
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Element x = alg.basis(a), y = alg.basis(b), z = alg.basis(c);
        Element j = alg.bracket(x, alg.bracket(y, z));
        const Element j2 = alg.bracket(y, alg.bracket(z, x));
        const Element j3 = alg.bracket(z, alg.bracket(x, y));
        for (std::size_t k = 0; k < n; ++k) j[k] += j2[k] + j3[k];
        if (!is_zero(j)) fail(rep.jacobi, "Jacobi identity fails for (" + names[a] + "," + names[b] + "," + names[c] + ")");
        const Scalar lhs = alg.form(alg.bracket(x, y), z);
        const Scalar rhs = alg.form(x, alg.bracket(y, z));
        if (lhs != rhs) {
          fail(rep.form_invariant,
               "form not invariant on (" + names[a] + "," + names[b] + "," + names[c] + ")");
        }
      }
  if (!(alg.gram() == alg.gram().transpose())) fail(rep.form_symmetric, "Gram matrix not symmetric");
  if (rank(alg.gram()) != n) fail(rep.form_nondegenerate, "invariant form is degenerate");
  return rep;
}

std::vector<DualBasisPair> dual_bases(const SimpleLieAlgebra& alg) {
  const auto inv = inverse(alg.gram());
  if (!inv) throw DomainError("dual_bases: invariant form of " + alg.name() + " is degenerate");
  std::vector<DualBasisPair> pairs;
  for (std::size_t a = 0; a < alg.dim(); ++a) pairs.push_back({alg.basis(a), inv->row(a)});
  return pairs;
}

Matrix pairing_matrix(const SimpleLieAlgebra& alg, const std::vector<DualBasisPair>& pairs) {
  Matrix m(pairs.size(), pairs.size());
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = 0; b < pairs.size(); ++b) m(a, b) = alg.form(pairs[a].lower, pairs[b].upper);
  return m;
}

Matrix Representation::act(const Element& x) const {
  if (x.size() != rho.size()) throw DimensionMismatch("representation: element length");
  Matrix out(dim(), dim());
  for (std::size_t a = 0; a < rho.size(); ++a)
    if (!x[a].is_zero()) out += x[a] * rho[a];
  return out;
}

Representation adjoint(const SimpleLieAlgebra& alg) {
  Representation rep;
  rep.label = "adjoint";
  const std::size_t n = alg.dim();
  for (std::size_t a = 0; a < n; ++a) {
    Matrix m(n, n);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k) m(k, b) = alg.bracket_basis(a, b)[k];
    rep.rho.push_back(std::move(m));
  }
  return rep;
}

Matrix casimir(const SimpleLieAlgebra& /*alg*/, const Representation& rep, const std::vector<DualBasisPair>& pairs) {
  Matrix c(rep.dim(), rep.dim());
  for (const auto& p : pairs) c += rep.act(p.lower) * rep.act(p.upper);
  return c;
}

Matrix casimir(const SimpleLieAlgebra& alg, const Representation& rep) {
  return casimir(alg, rep, dual_bases(alg));
}

bool is_representation(const SimpleLieAlgebra& alg, const Representation& rep) {
  if (rep.rho.size() != alg.dim()) return false;
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = 0; b < alg.dim(); ++b) {
      const Matrix lhs = rep.act(alg.bracket_basis(a, b));
      const Matrix rhs = rep.rho[a] * rep.rho[b] - rep.rho[b] * rep.rho[a];
      if (!(lhs == rhs)) return false;
    }
  return true;
}

bool check_casimir_tensor_invariance(const SimpleLieAlgebra& alg, const Element& g, const std::vector<Representation>& probes) {
  const auto pairs = dual_bases(alg);
  for (const auto& u : probes) {
    const std::size_t d = u.dim();
    Matrix lhs(d * d, d * d);
    Matrix rhs(d * d, d * d);
    for (const auto& p : pairs) {
      lhs += kronecker(u.act(alg.bracket(g, p.lower)), u.act(p.upper));
      rhs -= kronecker(u.act(p.lower), u.act(alg.bracket(g, p.upper)));
    }
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool check_dual_coxeter_identity(const SimpleLieAlgebra& alg, const Element& g, const std::vector<Representation>& probes) {
  const auto pairs = dual_bases(alg);
  for (const auto& u : probes) {
    Matrix lhs(u.dim(), u.dim());
    for (const auto& p : pairs) lhs += u.act(alg.bracket(g, p.lower)) * u.act(p.upper);
    if (!(lhs == alg.dual_coxeter() * u.act(g))) return false;
  }
  return true;
}

}  // namespace intertwine
