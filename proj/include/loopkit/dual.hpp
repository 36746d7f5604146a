#pragma once

#include <utility>
#include <vector>

#include "loopkit/rat.hpp"

namespace loopkit {

// Forward-mode dual number over Rat: a value plus exact partial derivatives
// with respect to each of the n ambient edge scalars.
class DualRat {
public:
  DualRat(Rat value, std::vector<Rat> derivs) : v_(std::move(value)), d_(std::move(derivs)) {}

  static DualRat constant(const Rat& value, int nvars) {
    return DualRat(value, std::vector<Rat>(static_cast<std::size_t>(nvars)));
  }

  const Rat& value() const { return v_; }
  const std::vector<Rat>& derivs() const { return d_; }
  const Rat& deriv(int i) const { return d_[static_cast<std::size_t>(i)]; }
  int vars() const { return static_cast<int>(d_.size()); }

  friend DualRat operator+(const DualRat& a, const DualRat& b) {
    check(a, b);
    std::vector<Rat> d(a.d_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.d_[i] + b.d_[i];
    return DualRat(a.v_ + b.v_, std::move(d));
  }
  friend DualRat operator-(const DualRat& a, const DualRat& b) {
    check(a, b);
    std::vector<Rat> d(a.d_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.d_[i] - b.d_[i];
    return DualRat(a.v_ - b.v_, std::move(d));
  }
  friend DualRat operator*(const DualRat& a, const DualRat& b) {
    check(a, b);
    std::vector<Rat> d(a.d_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.d_[i] * b.v_ + a.v_ * b.d_[i];
    return DualRat(a.v_ * b.v_, std::move(d));
  }
  friend DualRat operator/(const DualRat& a, const DualRat& b) {
    check(a, b);
    if (b.v_.is_zero()) throw InputError("dual division by a zero value");
    const Rat bb = b.v_ * b.v_;
    std::vector<Rat> d(a.d_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (a.d_[i] * b.v_ - a.v_ * b.d_[i]) / bb;
    return DualRat(a.v_ / b.v_, std::move(d));
  }
  DualRat operator-() const {
    std::vector<Rat> d(d_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -d_[i];
    return DualRat(-v_, std::move(d));
  }
  DualRat& operator*=(const DualRat& o) { return *this = *this * o; }

private:
  static void check(const DualRat& a, const DualRat& b) {
    if (a.d_.size() != b.d_.size())
      throw InputError("dual numbers with mismatched variable counts");
  }

  Rat v_;
  std::vector<Rat> d_;
};

// Seeds differentiation: the i-th output carries value edges[i] and the i-th
// unit vector as its derivatives.
inline std::vector<DualRat> dual_lift(const std::vector<Rat>& edges) {
  const std::size_t n = edges.size();
  std::vector<DualRat> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> d(n);
    d[i] = Rat(1);
    out.emplace_back(edges[i], std::move(d));
  }
  return out;
}

}  // namespace loopkit
