#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "loopkit/errors.hpp"

namespace loopkit {

// Arbitrary-precision rational scalar. Always held in canonical form:
// denominator > 0, gcd(|numerator|, denominator) = 1, zero is 0/1.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor): Rat r = 3
  Rat(long num, long den) {
    if (den == 0) throw InputError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rat(const mpz_class& n) : v_(n) {}
  explicit Rat(mpq_class q) : v_(std::move(q)) {
    if (v_.get_den() == 0) throw InputError("rational with zero denominator");
    v_.canonicalize();
  }

  // Parses "p/q" or "p" with optional leading sign, digits only.
  static Rat from_string(std::string_view s);

  const mpz_class& numerator() const { return v_.get_num(); }
  const mpz_class& denominator() const { return v_.get_den(); }
  const mpq_class& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rat inv() const {
    if (is_zero()) throw InputError("inverse of zero rational");
    return Rat(raw_tag{}, mpq_class(1) / v_);
  }
  Rat abs() const { return Rat(raw_tag{}, ::abs(v_)); }

  // Canonical serialization: "p/q", or just "p" when the denominator is 1.
  std::string str() const { return v_.get_str(); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(raw_tag{}, a.v_ + b.v_); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(raw_tag{}, a.v_ - b.v_); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(raw_tag{}, a.v_ * b.v_); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw InputError("rational division by zero");
    return Rat(raw_tag{}, a.v_ / b.v_);
  }
  Rat operator-() const { return Rat(raw_tag{}, -v_); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) >= 0; }

private:
  struct raw_tag {};
  // GMP's mpq arithmetic keeps canonical operands canonical, so results of
  // the operators above skip the redundant canonicalize pass.
  Rat(raw_tag, mpq_class q) : v_(std::move(q)) {}

  mpq_class v_;
};

inline Rat Rat::from_string(std::string_view s) {
  auto fail = [&] { return InputError("invalid rational literal: '" + std::string(s) + "'"); };
  auto parse_int = [&](std::string_view t) {
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);  // mpz rejects '+'
    std::size_t p = 0;
    if (p < t.size() && t[p] == '-') ++p;
    if (p == t.size()) throw fail();
    for (std::size_t i = p; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw fail();
    return mpz_class(std::string(t), 10);
  };
  const std::size_t slash = s.find('/');
  mpz_class num, den;
  if (slash == std::string_view::npos) {
    num = parse_int(s);
    den = 1;
  } else {
    num = parse_int(s.substr(0, slash));
    den = parse_int(s.substr(slash + 1));
    if (den == 0) throw InputError("invalid rational literal (zero denominator): '" + std::string(s) + "'");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(std::move(q));
}

}  // namespace loopkit
