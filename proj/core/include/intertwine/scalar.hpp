#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace intertwine {

/// Exact element a + b√d of ℚ(√d).
///
/// Plain rationals carry no surd part. The radicand is normalized to a
/// square-free integer as far as small-prime trial division can tell, and a
/// perfect-square radicand is folded into the rational part, so `b = 0`
/// whenever √d is rational. Arithmetic between two irrational values with
/// different radicands throws `FieldMismatch`.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : a_(v) {}            // NOLINT(google-explicit-constructor)
  Scalar(long v) : a_(v) {}           // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v) : a_(v) { a_.canonicalize(); }  // NOLINT
  Scalar(long num, long den);

  /// a + b√d, canonicalized.
  static Scalar quadratic(const mpq_class& a, const mpq_class& b, const mpq_class& d);
  static Scalar sqrt(const mpq_class& d);

  /// Parses `p`, `p/q`, `a+b*sqrt(d)`, `a-sqrt(d)`, `b*sqrt(d)`.
  static Scalar parse(std::string_view text);

  [[nodiscard]] bool is_rational() const { return surd_ == nullptr; }
  [[nodiscard]] bool is_zero() const { return surd_ == nullptr && sgn(a_) == 0; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] const mpq_class& rational_part() const { return a_; }
  [[nodiscard]] mpq_class surd_coefficient() const;
  /// Radicand d; 0 for plain rationals.
  [[nodiscard]] mpq_class radicand() const;
  /// The value as a rational; throws DomainError when irrational.
  [[nodiscard]] const mpq_class& rational() const;

  /// Sign of the real number; throws DomainError for non-real values (d < 0).
  [[nodiscard]] int sign() const;

  [[nodiscard]] std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& x, const Scalar& y);
  /// Numeric order; both values must be real and share a field.
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

 private:
  struct Surd {
    mpq_class coeff;
    mpq_class radicand;
  };

  Scalar(mpq_class a, std::shared_ptr<const Surd> surd) : a_(std::move(a)), surd_(std::move(surd)) {}
  void check_compatible(const Scalar& o) const;
  void set_surd(const mpq_class& coeff, const mpq_class& radicand);

  mpq_class a_{0};
  std::shared_ptr<const Surd> surd_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// True iff x / step is an integer ≥ 1. Both arguments must be rational.
bool in_positive_multiples(const Scalar& x, const Scalar& step);

}  // namespace intertwine
