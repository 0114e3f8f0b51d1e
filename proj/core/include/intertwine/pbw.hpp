#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "intertwine/scalar.hpp"

namespace intertwine {

/// x_a(−depth) with depth ≥ 1.
struct Mode {
  std::size_t a = 0;
  int depth = 1;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// Canonical PBW order: deeper modes first, ties by basis index.
inline bool precedes_or_equal(const Mode& x, const Mode& y) {
  return x.depth > y.depth || (x.depth == y.depth && x.a <= y.a);
}

/// Product x_{a1}(−n1)⋯x_{ak}(−nk), stored in canonical order.
using Monomial = std::vector<Mode>;

int degree(const Monomial& m);
bool is_canonical(const Monomial& m);

/// Monomial applied to a base-module basis vector.
struct BasisKey {
  Monomial mono;
  std::size_t base = 0;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

/// Finite linear combination of PBW basis vectors with exact coefficients.
/// Zero coefficients are never stored.
class GradedVector {
 public:
  using Terms = std::map<BasisKey, Scalar>;

  GradedVector() = default;
  static GradedVector basis(BasisKey key) {
    GradedVector v;
    v.terms_.emplace(std::move(key), Scalar(1));
    return v;
  }

  void add(const BasisKey& key, const Scalar& c);
  void add(const GradedVector& o, const Scalar& c = Scalar(1));
  GradedVector& operator*=(const Scalar& c);
  friend GradedVector operator*(const Scalar& c, GradedVector v) { return v *= c; }
  friend GradedVector operator+(GradedVector a, const GradedVector& b) {
    a.add(b);
    return a;
  }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) {
    a.add(b, Scalar(-1));
    return a;
  }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] Scalar coeff(const BasisKey& key) const;
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  /// Largest degree among the terms; 0 for the zero vector.
  [[nodiscard]] int max_degree() const;

  friend bool operator==(const GradedVector&, const GradedVector&) = default;

 private:
  Terms terms_;
};

std::string to_string(const BasisKey& key, const std::vector<std::string>& names);

}  // namespace intertwine
