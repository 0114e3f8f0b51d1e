#include "intertwine/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "intertwine/error.hpp"

namespace intertwine {

namespace {

mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw DomainError("empty number");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && i == 0);
    if (!ok) throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0 || mpz_sgn(q.get_den_mpz_t()) == 0) {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace

Scalar::Scalar(long num, long den) : a_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  a_.canonicalize();
}

void Scalar::set_surd(const mpq_class& coeff, const mpq_class& radicand) {
  if (sgn(coeff) == 0 || sgn(radicand) == 0) {
    surd_.reset();
    return;
  }
  // b√(p/q) = (b/q)√(pq); then pull small square factors out of pq.
  mpz_class n = radicand.get_num() * radicand.get_den();
  mpq_class b = coeff / mpq_class(radicand.get_den());
  const int s = sgn(n);
  n = abs(n);
  mpz_class outside = 1;
  for (unsigned long p = 2; p <= 1000 && p * p <= n; ++p) {
    const mpz_class sq = p * p;
    while (mpz_divisible_p(n.get_mpz_t(), sq.get_mpz_t()) != 0) {
      n /= sq;
      outside *= p;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    outside *= root;
    n = 1;
  }
  b *= mpq_class(outside);
  b.canonicalize();
  if (s > 0 && n == 1) {
    a_ += b;
    surd_.reset();
    return;
  }
  surd_ = std::make_shared<const Surd>(Surd{b, mpq_class(s * n)});
}

Scalar Scalar::quadratic(const mpq_class& a, const mpq_class& b, const mpq_class& d) {
  Scalar out(a);
  out.set_surd(b, d);
  return out;
}

Scalar Scalar::sqrt(const mpq_class& d) { return quadratic(0, 1, d); }

Scalar Scalar::parse(std::string_view text) {
  const auto pos = text.find("sqrt(");
  if (pos == std::string_view::npos) return Scalar(parse_rational(text));
  const auto close = text.find(')', pos);
  if (close == std::string_view::npos) throw DomainError("unbalanced sqrt in '" + std::string(text) + "'");
  const mpq_class radicand = parse_rational(text.substr(pos + 5, close - pos - 5));
  // The surd term starts at the last sign before "sqrt(" that is not a leading sign.
  std::size_t term = 0;
  for (std::size_t i = pos; i-- > 0;) {
    if ((text[i] == '+' || text[i] == '-') && i > 0) {
      term = i;
      break;
    }
  }
  const std::string_view head = text.substr(0, term);
  std::string_view coeff_text = text.substr(term, pos - term);
  mpq_class coeff = 1;
  if (!coeff_text.empty() && (coeff_text.front() == '+' || coeff_text.front() == '-')) {
    if (coeff_text.front() == '-') coeff = -1;
    coeff_text.remove_prefix(1);
  }
  if (!coeff_text.empty()) {
    if (coeff_text.back() != '*') throw DomainError("expected '*' before sqrt in '" + std::string(text) + "'");
    coeff_text.remove_suffix(1);
    coeff *= parse_rational(coeff_text);
  }
  const mpq_class a = head.empty() ? mpq_class(0) : parse_rational(head);
  if (close + 1 != text.size()) throw DomainError("trailing characters in '" + std::string(text) + "'");
  return quadratic(a, coeff, radicand);
}

bool Scalar::is_integer() const {
  return surd_ == nullptr && a_.get_den() == 1;
}

mpq_class Scalar::surd_coefficient() const { return surd_ ? surd_->coeff : mpq_class(0); }

mpq_class Scalar::radicand() const { return surd_ ? surd_->radicand : mpq_class(0); }

const mpq_class& Scalar::rational() const {
  if (surd_) throw DomainError("expected a rational value, got " + str());
  return a_;
}

int Scalar::sign() const {
  if (!surd_) return sgn(a_);
  if (sgn(surd_->radicand) < 0) throw DomainError("non-real value has no sign: " + str());
  const int sa = sgn(a_);
  const int sb = sgn(surd_->coeff);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const mpq_class lhs = a_ * a_;
  const mpq_class rhs = surd_->coeff * surd_->coeff * surd_->radicand;
  return lhs > rhs ? sa : sb;
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (!surd_) {
    os << a_;
    return os.str();
  }
  const mpq_class& b = surd_->coeff;
  if (sgn(a_) != 0) os << a_ << (sgn(b) > 0 ? "+" : "-");
  else if (sgn(b) < 0) os << "-";
  const mpq_class mag = abs(b);
  if (mag != 1) os << mag << "*";
  os << "sqrt(" << surd_->radicand << ")";
  return os.str();
}

void Scalar::check_compatible(const Scalar& o) const {
  if (surd_ && o.surd_ && surd_->radicand != o.surd_->radicand) {
    throw FieldMismatch("cannot combine " + str() + " and " + o.str());
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_compatible(o);
  a_ += o.a_;
  if (o.surd_) {
    if (surd_) set_surd(surd_->coeff + o.surd_->coeff, surd_->radicand);
    else surd_ = o.surd_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_compatible(o);
  if (!surd_ && !o.surd_) {
    a_ *= o.a_;
    return *this;
  }
  if (!o.surd_) {
    const mpq_class b = surd_->coeff * o.a_;
    const mpq_class d = surd_->radicand;
    a_ *= o.a_;
    set_surd(b, d);
    return *this;
  }
  if (!surd_) {
    const mpq_class b = o.surd_->coeff * a_;
    a_ *= o.a_;
    set_surd(b, o.surd_->radicand);
    return *this;
  }
  const mpq_class& d = surd_->radicand;
  const mpq_class a = a_ * o.a_ + surd_->coeff * o.surd_->coeff * d;
  const mpq_class b = a_ * o.surd_->coeff + surd_->coeff * o.a_;
  const mpq_class dd = d;
  a_ = a;
  set_surd(b, dd);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  check_compatible(o);
  if (!o.surd_) {
    a_ /= o.a_;
    if (surd_) set_surd(surd_->coeff / o.a_, surd_->radicand);
    return *this;
  }
  // 1/(c + e√d) = (c − e√d)/(c² − e²d)
  const mpq_class& c = o.a_;
  const mpq_class& e = o.surd_->coeff;
  const mpq_class& d = o.surd_->radicand;
  const mpq_class norm = c * c - e * e * d;
  *this *= quadratic(c / norm, -e / norm, d);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar out(-a_, nullptr);
  if (surd_) out.surd_ = std::make_shared<const Surd>(Surd{-surd_->coeff, surd_->radicand});
  return out;
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.a_ != y.a_) return false;
  if (!x.surd_ || !y.surd_) return !x.surd_ && !y.surd_;
  return x.surd_->coeff == y.surd_->coeff && x.surd_->radicand == y.surd_->radicand;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

bool in_positive_multiples(const Scalar& x, const Scalar& step) {
  if (step.is_zero()) throw DomainError("in_positive_multiples: step must be non-zero");
  const mpq_class q = x.rational() / step.rational();
  return q.get_den() == 1 && sgn(q) > 0;
}

}  // namespace intertwine
