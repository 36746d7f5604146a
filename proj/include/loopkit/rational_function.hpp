#pragma once

#include <string>
#include <utility>

#include "loopkit/poly.hpp"

namespace loopkit {

// Ratio of univariate polynomials in canonical form: numerator and
// denominator coprime, denominator monic and nonzero, zero is 0/1.
// Equality therefore reduces to componentwise equality.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Poly::one()) {}
  RationalFunction(Poly num, Poly den) { normalize(std::move(num), std::move(den)); }

  static RationalFunction constant(const Rat& c) {
    return RationalFunction(Poly::constant(c), Poly::one());
  }
  static RationalFunction one() { return constant(Rat(1)); }
  static RationalFunction variable() { return RationalFunction(Poly::z(), Poly::one()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == Poly::one() && den_ == Poly::one(); }

  RationalFunction inv() const {
    if (is_zero()) throw InputError("inverse of the zero rational function");
    return RationalFunction(den_, num_);
  }

  Rat eval(const Rat& z0) const {
    const Rat d = den_.eval(z0);
    if (d.is_zero()) throw PoleError("evaluation at pole z = " + z0.str(), z0.str());
    return num_.eval(z0) / d;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw InputError("division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

private:
  void normalize(Poly num, Poly den) {
    if (den.is_zero()) throw InputError("rational function with zero denominator");
    if (num.is_zero()) {
      num_ = Poly();
      den_ = Poly::one();
      return;
    }
    const Poly g = poly_gcd(num, den);
    num = Poly::divmod(num, g).first;
    den = Poly::divmod(den, g).first;
    const Rat scale = den.lead().inv();
    num_ = num.scaled(scale);
    den_ = den.scaled(scale);
  }

  Poly num_;
  Poly den_;
};

}  // namespace loopkit
