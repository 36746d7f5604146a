#pragma once

#include <cstdlib>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "loopkit/rat.hpp"

namespace loopkit {

namespace detail {
inline int& degree_cap_slot() {
  static int cap = [] {
    if (const char* env = std::getenv("LOOPKIT_DEGREE_CAP")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 64;
  }();
  return cap;
}
}  // namespace detail

// Guard against symbolic blow-up in long product chains. Exceeding the cap is
// a hard error, never silent truncation.
inline int poly_degree_cap() { return detail::degree_cap_slot(); }
inline void set_poly_degree_cap(int cap) {
  if (cap < 1) throw InputError("polynomial degree cap must be >= 1");
  detail::degree_cap_slot() = cap;
}

// Univariate polynomial in z over Rat. Coefficients ascending by degree, no
// trailing zeros; the zero polynomial has an empty coefficient list.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    strip();
    check_cap();
  }
  Poly(std::initializer_list<Rat> coeffs) : Poly(std::vector<Rat>(coeffs)) {}

  static Poly constant(const Rat& c) { return Poly({c}); }
  static Poly one() { return constant(Rat(1)); }
  static Poly z() { return Poly({Rat(0), Rat(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& coeff(int i) const {
    static const Rat zero;
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(i)];
  }
  const Rat& lead() const {
    if (is_zero()) throw InputError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !is_zero() && lead().is_one(); }

  Rat eval(const Rat& z0) const {
    Rat acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z0 + *it;
    return acc;
  }

  Poly derivative() const {
    if (degree() < 1) return Poly();
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(d));
  }

  Poly scaled(const Rat& s) const {
    if (s.is_zero()) return Poly();
    std::vector<Rat> r(c_);
    for (auto& x : r) x *= s;
    return Poly(std::move(r));
  }

  Poly monic() const { return scaled(lead().inv()); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.degree() + b.degree() > poly_degree_cap())
      throw DegreeCapError("polynomial product degree " + std::to_string(a.degree() + b.degree()) +
                           " exceeds cap " + std::to_string(poly_degree_cap()));
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InputError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> rem(a.c_);
    std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const Rat lead_inv = b.lead().inv();
    for (int d = a.degree(); d >= b.degree(); --d) {
      const Rat f = rem[static_cast<std::size_t>(d)] * lead_inv;
      if (f.is_zero()) continue;
      quo[static_cast<std::size_t>(d - b.degree())] = f;
      for (int i = 0; i <= b.degree(); ++i)
        rem[static_cast<std::size_t>(d - b.degree() + i)] -= f * b.c_[static_cast<std::size_t>(i)];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

private:
  void strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  void check_cap() const {
    if (degree() > poly_degree_cap())
      throw DegreeCapError("polynomial degree " + std::to_string(degree()) + " exceeds cap " +
                           std::to_string(poly_degree_cap()));
  }

  std::vector<Rat> c_;
};

// Monic greatest common divisor under Euclidean division over the rationals.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw InputError("gcd of two zero polynomials");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = Poly::divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

}  // namespace loopkit
