#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "loopkit/rat.hpp"

namespace loopkit {

// Dense row-major matrix of exact rationals.
struct RatMat {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  static RatMat zeros(int rows, int cols) {
    RatMat m;
    m.rows = rows;
    m.cols = cols;
    m.a.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Rat());
    return m;
  }
  Rat& at(int r, int c) { return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  const Rat& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
  }
};

// Exact rank by fraction-free Gaussian elimination (Bareiss) with full pivot
// search. Row denominators are cleared first so the elimination runs on
// integers; every interior division is exact.
inline int ffge_rank(const RatMat& m) {
  if (m.rows < 1 || m.cols < 1) throw InputError("ffge_rank requires at least one row and one column");

  std::vector<std::vector<mpz_class>> w(static_cast<std::size_t>(m.rows),
                                        std::vector<mpz_class>(static_cast<std::size_t>(m.cols)));
  for (int r = 0; r < m.rows; ++r) {
    mpz_class scale(1);
    for (int c = 0; c < m.cols; ++c) {
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), m.at(r, c).denominator().get_mpz_t());
      scale = l;
    }
    for (int c = 0; c < m.cols; ++c) {
      const Rat& x = m.at(r, c);
      w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          x.numerator() * mpz_class(scale / x.denominator());
    }
  }

  const int steps = std::min(m.rows, m.cols);
  mpz_class prev(1);
  int rank = 0;
  for (int k = 0; k < steps; ++k) {
    int pr = -1, pc = -1;
    for (int i = k; i < m.rows && pr < 0; ++i)
      for (int j = k; j < m.cols; ++j)
        if (w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    std::swap(w[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(pr)]);
    if (pc != k)
      for (int i = 0; i < m.rows; ++i)
        std::swap(w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                  w[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)]);

    auto& pivot_row = w[static_cast<std::size_t>(k)];
    for (int i = k + 1; i < m.rows; ++i) {
      auto& row = w[static_cast<std::size_t>(i)];
      for (int j = k + 1; j < m.cols; ++j) {
        mpz_class t = pivot_row[static_cast<std::size_t>(k)] * row[static_cast<std::size_t>(j)] -
                      row[static_cast<std::size_t>(k)] * pivot_row[static_cast<std::size_t>(j)];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        row[static_cast<std::size_t>(j)] = std::move(t);
      }
      row[static_cast<std::size_t>(k)] = 0;
    }
    prev = pivot_row[static_cast<std::size_t>(k)];
    ++rank;
  }
  return rank;
}

}  // namespace loopkit
