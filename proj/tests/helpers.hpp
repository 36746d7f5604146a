#pragma once

#include <random>
#include <vector>

#include "loopkit/loopkit.hpp"

namespace testutil {

using loopkit::Poly;
using loopkit::Rat;
using loopkit::RationalFunction;

inline Poly poly(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly(std::move(c));
}

inline RationalFunction rf(std::initializer_list<long> num, std::initializer_list<long> den) {
  return RationalFunction(poly(num), poly(den));
}

inline Rat random_rat(std::mt19937_64& rng, long lo = -5, long hi = 5) {
  const long span = hi - lo + 1;
  return Rat(lo + static_cast<long>(rng() % static_cast<unsigned long>(span)));
}

inline Poly random_poly(std::mt19937_64& rng, int max_degree, bool nonzero = false) {
  for (;;) {
    std::vector<Rat> c(static_cast<std::size_t>(rng() % static_cast<unsigned long>(max_degree + 1)) + 1);
    for (auto& x : c) x = random_rat(rng);
    Poly p(std::move(c));
    if (!nonzero || !p.is_zero()) return p;
  }
}

inline RationalFunction random_rf(std::mt19937_64& rng, int max_degree = 2, bool nonzero = false) {
  for (;;) {
    Poly den = random_poly(rng, max_degree, true);
    RationalFunction f(random_poly(rng, max_degree), den);
    if (!nonzero || !f.is_zero()) return f;
  }
}

}  // namespace testutil
