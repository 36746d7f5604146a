#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "loopkit/dual.hpp"
#include "loopkit/emp.hpp"
#include "loopkit/loop_network.hpp"
#include "loopkit/rank.hpp"

namespace loopkit {

namespace detail {

// Flattened entries of C (I-G)^-1 B with each edge an independent scalar,
// via the closed forms T_ii = 1/(1-P), T_ik = P_ik/(1-P). Works over Rat and
// over DualRat; `one` supplies the multiplicative identity of the type.
template <class T>
std::vector<T> scalar_entries(const std::vector<T>& g, const Emp& emp, const T& one,
                              const std::function<bool(const T&)>& is_unit) {
  const T p = cycle_loop_product(g);
  if (is_unit(p)) throw NonGenericError("degenerate point: the product of the edge scalars equals one");
  const T r = one / (one - p);
  std::vector<T> out;
  for (int i : emp.measured_nodes())
    for (int j : emp.excited_nodes())
      out.push_back(i == j ? r : cycle_path_product(g, i, j) * r);
  return out;
}

}  // namespace detail

// The input-output map at a scalar point g (one scalar per edge), flattened
// row-major over measured (rows) and excited (columns) nodes ascending.
inline std::vector<Rat> scalar_io_map(const std::vector<Rat>& g, const Emp& emp) {
  if (static_cast<int>(g.size()) != emp.size())
    throw InputError("expected " + std::to_string(emp.size()) + " edge scalars, got " +
                     std::to_string(g.size()));
  return detail::scalar_entries<Rat>(g, emp, Rat(1), [](const Rat& x) { return x.is_one(); });
}

// Exact Jacobian of scalar_io_map at g: one row per map entry, one column per
// edge scalar, computed by running the closed forms over dual numbers.
inline RatMat jacobian(const std::vector<Rat>& g, const Emp& emp) {
  if (static_cast<int>(g.size()) != emp.size())
    throw InputError("expected " + std::to_string(emp.size()) + " edge scalars, got " +
                     std::to_string(g.size()));
  const int n = static_cast<int>(g.size());
  const std::vector<DualRat> lifted = dual_lift(g);
  const std::vector<DualRat> entries = detail::scalar_entries<DualRat>(
      lifted, emp, DualRat::constant(Rat(1), n), [](const DualRat& x) { return x.value().is_one(); });
  RatMat jac = RatMat::zeros(static_cast<int>(entries.size()), n);
  for (int row = 0; row < jac.rows; ++row)
    for (int col = 0; col < n; ++col) jac.at(row, col) = entries[static_cast<std::size_t>(row)].deriv(col);
  return jac;
}

struct RankResult {
  int rank = 0;
  bool identifiable = false;
};

// Maximum Jacobian rank over `trials` random rational points with entries in
// {-9..9}\{0}; identifiable iff the rank reaches n at some point. Degenerate
// points (edge product equal to one) are resampled, at most 100 times each.
inline RankResult rank_test(const Emp& emp, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be >= 1");
  const int n = emp.size();
  RankResult res;
  if (emp.excited_count() == 0 || emp.measured_count() == 0) return res;  // empty map, rank 0
  std::mt19937_64 rng(seed);
  const auto draw = [&rng] {
    long v = static_cast<long>(rng() % 18) - 9;
    return Rat(v >= 0 ? v + 1 : v);
  };
  for (int t = 0; t < trials; ++t) {
    std::vector<Rat> g(static_cast<std::size_t>(n));
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      Rat prod(1);
      for (auto& x : g) {
        x = draw();
        prod *= x;
      }
      ok = !prod.is_one();
    }
    if (!ok) throw Error("rank_test: failed to sample a non-degenerate point");
    res.rank = std::max(res.rank, ffge_rank(jacobian(g, emp)));
    if (res.rank == n) break;
  }
  res.identifiable = (res.rank == n);
  return res;
}

struct CrosscheckEntry {
  std::string pattern;
  Verdict verdict = Verdict::Invalid;
  Rule rule = Rule::UncoveredNode;
  int rank = 0;
  bool oracle_identifiable = false;
  bool agree = false;
};

struct CrosscheckReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;
  std::uint64_t agreements = 0;
  std::vector<CrosscheckEntry> entries;
  std::vector<std::string> disagreements;
  // verdict name -> (rank -> count)
  std::map<std::string, std::map<int, std::uint64_t>> rank_histograms;
};

// Runs the rank oracle against the structural test over every one of the 3^n
// coverage-complete patterns. Per-pattern seeds are seed + pattern index, so
// the run is reproducible and trivially partitionable.
inline CrosscheckReport crosscheck(int n, int trials, std::uint64_t seed) {
  if (n < 2 || n > 7) throw InputError("crosscheck supports 2 <= n <= 7, got " + std::to_string(n));
  CrosscheckReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  std::uint64_t index = 0;
  enumerate(n, std::nullopt, [&](const Emp& e, const EmpClass& cls) {
    const RankResult rr = rank_test(e, trials, seed + index);
    CrosscheckEntry ent;
    ent.pattern = e.pattern();
    ent.verdict = cls.verdict;
    ent.rule = cls.rule;
    ent.rank = rr.rank;
    ent.oracle_identifiable = rr.identifiable;
    ent.agree = (rr.identifiable == cls.valid());
    if (ent.agree) ++rep.agreements;
    else
      rep.disagreements.push_back(ent.pattern + ": structural " + verdict_name(cls.verdict) +
                                  " vs oracle rank " + std::to_string(rr.rank));
    rep.rank_histograms[verdict_name(cls.verdict)][rr.rank] += 1;
    rep.entries.push_back(std::move(ent));
    ++index;
  });
  rep.total = index;
  return rep;
}

}  // namespace loopkit
