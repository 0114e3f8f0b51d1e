#include "intertwine/pbw.hpp"

#include <algorithm>

namespace intertwine {

int degree(const Monomial& m) {
  int d = 0;
  for (const auto& x : m) d += x.depth;
  return d;
}

bool is_canonical(const Monomial& m) {
  for (std::size_t i = 0; i + 1 < m.size(); ++i)
    if (!precedes_or_equal(m[i], m[i + 1])) return false;
  return std::all_of(m.begin(), m.end(), [](const Mode& x) { return x.depth >= 1; });
}

void GradedVector::add(const BasisKey& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void GradedVector::add(const GradedVector& o, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [k, v] : o.terms_) add(k, c * v);
}

GradedVector& GradedVector::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Scalar GradedVector::coeff(const BasisKey& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? Scalar() : it->second;
}

int GradedVector::max_degree() const {
  int d = 0;
  for (const auto& [k, v] : terms_) d = std::max(d, degree(k.mono));
  return d;
}

std::string to_string(const BasisKey& key, const std::vector<std::string>& names) {
  std::string s;
  for (const auto& m : key.mono) s += names.at(m.a) + "(" + std::to_string(-m.depth) + ")";
  return s + "v" + std::to_string(key.base);
}

}  // namespace intertwine
