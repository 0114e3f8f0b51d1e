#pragma once

#include <optional>
#include <string>

#include "intertwine/error.hpp"
#include "intertwine/scalar.hpp"

namespace intertwine {

/// Level of the affine algebra: a concrete exact scalar, or "generic"
/// (treated as transcendental, so no rational coincidence can occur).
class Level {
 public:
  Level() = default;
  Level(Scalar v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Level(int v) : value_(Scalar(v)) {}        // NOLINT(google-explicit-constructor)
  static Level generic() { return Level(); }
  /// "generic" or any scalar literal.
  static Level parse(const std::string& text) {
    if (text == "generic") return generic();
    return Level(Scalar::parse(text));
  }

  [[nodiscard]] bool is_generic() const { return !value_.has_value(); }
  [[nodiscard]] const Scalar& value() const {
    if (!value_) throw DomainError("level is generic; no numeric value");
    return *value_;
  }
  [[nodiscard]] std::string str() const { return value_ ? value_->str() : "generic"; }

  /// ℓ + h∨, rejecting the critical level.
  [[nodiscard]] Scalar shifted(const Scalar& dual_coxeter) const {
    Scalar s = value() + dual_coxeter;
    if (s.is_zero()) throw CriticalLevel("level " + str() + " is critical");
    return s;
  }

  /// x ∈ (ℓ + h∨)ℤ₊; always false at generic level.
  [[nodiscard]] bool in_shifted_multiples(const Scalar& x, const Scalar& dual_coxeter) const {
    if (is_generic()) return false;
    return in_positive_multiples(x, shifted(dual_coxeter));
  }

 private:
  std::optional<Scalar> value_;
};

}  // namespace intertwine
