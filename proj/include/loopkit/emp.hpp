#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loopkit/errors.hpp"

namespace loopkit {

// Excitation and measurement pattern over the nodes 1..n of a loop: the set B
// of excited nodes and the set C of measured nodes, stored as bitmasks.
class Emp {
public:
  Emp(int n, const std::vector<int>& excited, const std::vector<int>& measured)
      : n_(check_n(n)) {
    for (int i : excited) excited_ |= bit(i, "excited");
    for (int i : measured) measured_ |= bit(i, "measured");
  }

  static Emp from_masks(int n, std::uint64_t excited, std::uint64_t measured) {
    Emp e(check_n(n));
    const std::uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    if ((excited | measured) & ~all) throw InputError("node mask out of range");
    e.excited_ = excited;
    e.measured_ = measured;
    return e;
  }

  // One character per node: E = excited only, M = measured only, B = both.
  static Emp from_pattern(int n, std::string_view pattern) {
    if (static_cast<int>(pattern.size()) != n)
      throw InputError("pattern length " + std::to_string(pattern.size()) +
                       " does not match node count " + std::to_string(n));
    Emp e(check_n(n));
    for (int i = 0; i < n; ++i) {
      switch (pattern[static_cast<std::size_t>(i)]) {
        case 'E': e.excited_ |= 1ULL << i; break;
        case 'M': e.measured_ |= 1ULL << i; break;
        case 'B': e.excited_ |= 1ULL << i; e.measured_ |= 1ULL << i; break;
        default:
          throw InputError(std::string("pattern character '") + pattern[static_cast<std::size_t>(i)] +
                           "' at node " + std::to_string(i + 1) + " is not one of E, M, B");
      }
    }
    return e;
  }

  int size() const { return n_; }
  int succ(int i) const { return i % n_ + 1; }
  int pred(int i) const { return (i + n_ - 2) % n_ + 1; }

  bool is_excited(int i) const { return i >= 1 && i <= n_ && ((excited_ >> (i - 1)) & 1ULL); }
  bool is_measured(int i) const { return i >= 1 && i <= n_ && ((measured_ >> (i - 1)) & 1ULL); }

  std::uint64_t excited_mask() const { return excited_; }
  std::uint64_t measured_mask() const { return measured_; }

  std::vector<int> excited_nodes() const { return unpack(excited_); }
  std::vector<int> measured_nodes() const { return unpack(measured_); }

  int excited_count() const { return popcount(excited_); }
  int measured_count() const { return popcount(measured_); }
  int cardinality() const { return excited_count() + measured_count(); }

  // Display form; '.' marks a node that is neither excited nor measured.
  std::string pattern() const {
    std::string s(static_cast<std::size_t>(n_), '.');
    for (int i = 1; i <= n_; ++i) {
      const bool e = is_excited(i), m = is_measured(i);
      if (e && m) s[static_cast<std::size_t>(i - 1)] = 'B';
      else if (e) s[static_cast<std::size_t>(i - 1)] = 'E';
      else if (m) s[static_cast<std::size_t>(i - 1)] = 'M';
    }
    return s;
  }

  friend bool operator==(const Emp& a, const Emp& b) {
    return a.n_ == b.n_ && a.excited_ == b.excited_ && a.measured_ == b.measured_;
  }

private:
  explicit Emp(int n) : n_(n) {}
  static int check_n(int n) {
    if (n < 1 || n > 64) throw InputError("node count must be in 1..64, got " + std::to_string(n));
    return n;
  }
  std::uint64_t bit(int i, const char* which) const {
    if (i < 1 || i > n_)
      throw InputError(std::string(which) + " node " + std::to_string(i) + " out of range 1.." + std::to_string(n_));
    return 1ULL << (i - 1);
  }
  std::vector<int> unpack(std::uint64_t mask) const {
    std::vector<int> out;
    for (int i = 1; i <= n_; ++i)
      if ((mask >> (i - 1)) & 1ULL) out.push_back(i);
    return out;
  }
  static int popcount(std::uint64_t m) {
    int c = 0;
    while (m) {
      m &= m - 1;
      ++c;
    }
    return c;
  }

  int n_;
  std::uint64_t excited_ = 0;
  std::uint64_t measured_ = 0;
};

// Cyclic relabeling i -> i+t (wrapping): node i of the input becomes node
// ((i-1+t) mod n)+1 of the output.
inline Emp rotated(const Emp& e, int t) {
  const int n = e.size();
  t = ((t % n) + n) % n;
  std::uint64_t ex = 0, me = 0;
  for (int i = 1; i <= n; ++i) {
    const int j = (i - 1 + t) % n;
    if (e.is_excited(i)) ex |= 1ULL << j;
    if (e.is_measured(i)) me |= 1ULL << j;
  }
  return Emp::from_masks(n, ex, me);
}

enum class Verdict { Invalid, ValidNonMinimal, ValidMinimal };

enum class Rule {
  EmptyExcited,      // no node is excited
  EmptyMeasured,     // no node is measured
  UncoveredNode,     // some node is neither excited nor measured
  ContiguousBlocks,  // no both-node and the measured nodes form one arc
  BothNode,          // valid: some node is both excited and measured
  AdjacentPairs,     // valid: two measured nodes each followed by an excited node
};

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Invalid: return "invalid";
    case Verdict::ValidNonMinimal: return "valid-nonminimal";
    case Verdict::ValidMinimal: return "valid-minimal";
  }
  return "?";
}

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::EmptyExcited: return "empty-excited";
    case Rule::EmptyMeasured: return "empty-measured";
    case Rule::UncoveredNode: return "uncovered-node";
    case Rule::ContiguousBlocks: return "contiguous-blocks";
    case Rule::BothNode: return "both-node";
    case Rule::AdjacentPairs: return "adjacent-pairs";
  }
  return "?";
}

// Structured classification evidence: which rule decided the verdict, plus
// the witnesses (both-node, measured-to-excited pairs, uncovered nodes).
struct EmpClass {
  Verdict verdict = Verdict::Invalid;
  Rule rule = Rule::UncoveredNode;
  int cardinality = 0;
  int both_node = 0;                         // rule == BothNode: smallest node in B and C
  std::vector<std::pair<int, int>> pairs;    // all (i, i+1) with i measured, i+1 excited
  std::vector<int> uncovered;                // rule == UncoveredNode

  bool valid() const { return verdict != Verdict::Invalid; }
};

struct Violation {
  Rule rule;
  std::vector<int> uncovered;
};

// Coverage precondition for identifiability: both sets nonempty and every
// node excited or measured.
inline std::optional<Violation> necessary_check(const Emp& e) {
  if (e.excited_mask() == 0) return Violation{Rule::EmptyExcited, {}};
  if (e.measured_mask() == 0) return Violation{Rule::EmptyMeasured, {}};
  std::vector<int> uncovered;
  for (int i = 1; i <= e.size(); ++i)
    if (!e.is_excited(i) && !e.is_measured(i)) uncovered.push_back(i);
  if (!uncovered.empty()) return Violation{Rule::UncoveredNode, std::move(uncovered)};
  return std::nullopt;
}

// All nodes i with i measured and its successor excited, ascending by i.
inline std::vector<std::pair<int, int>> measured_excited_pairs(const Emp& e) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= e.size(); ++i)
    if (e.is_measured(i) && e.is_excited(e.succ(i))) pairs.emplace_back(i, e.succ(i));
  return pairs;
}

// Smallest cardinality over all valid EMPs: n for n >= 4 (a valid pattern
// without both-nodes exists), n+1 for n in {2,3} (a both-node is mandatory).
inline int min_valid_cardinality(int n) {
  if (n < 2) throw InputError("loops need at least 2 nodes");
  return n >= 4 ? n : n + 1;
}

// Full identifiability test: valid iff the coverage condition holds and
// either some node is both excited and measured, or at least two measured
// nodes are immediately followed by excited nodes.
inline EmpClass nsc_check(const Emp& e) {
  if (e.size() < 2)
    throw InputError("identifiability is defined for loops of >= 2 nodes, got " + std::to_string(e.size()));
  EmpClass out;
  out.cardinality = e.cardinality();
  if (auto violation = necessary_check(e)) {
    out.verdict = Verdict::Invalid;
    out.rule = violation->rule;
    out.uncovered = std::move(violation->uncovered);
    return out;
  }
  out.pairs = measured_excited_pairs(e);
  const std::uint64_t both = e.excited_mask() & e.measured_mask();
  bool valid = false;
  if (both != 0) {
    valid = true;
    out.rule = Rule::BothNode;
    out.both_node = 1;
    for (std::uint64_t m = both; (m & 1ULL) == 0; m >>= 1) ++out.both_node;
  } else if (out.pairs.size() >= 2) {
    valid = true;
    out.rule = Rule::AdjacentPairs;
  } else {
    out.verdict = Verdict::Invalid;
    out.rule = Rule::ContiguousBlocks;
    return out;
  }
  if (valid)
    out.verdict = (out.cardinality == min_valid_cardinality(e.size())) ? Verdict::ValidMinimal
                                                                       : Verdict::ValidNonMinimal;
  return out;
}

inline bool is_contiguous_invalid(const EmpClass& c) {
  return c.verdict == Verdict::Invalid && c.rule == Rule::ContiguousBlocks;
}

enum class ClassFilter { Minimal, Valid, Invalid };

inline bool matches_filter(ClassFilter f, Verdict v) {
  switch (f) {
    case ClassFilter::Minimal: return v == Verdict::ValidMinimal;
    case ClassFilter::Valid: return v != Verdict::Invalid;
    case ClassFilter::Invalid: return v == Verdict::Invalid;
  }
  return false;
}

// Visits every assignment of each node to {excited-only, measured-only, both}
// -- exactly the 3^n patterns covering all nodes -- in lexicographic order
// (node 1 most significant, digit order E < M < B).
inline void enumerate(int n, std::optional<ClassFilter> filter,
                      const std::function<void(const Emp&, const EmpClass&)>& sink) {
  if (n < 2 || n > 16) throw InputError("enumeration supports 2 <= n <= 16, got " + std::to_string(n));
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t ex = 0, me = 0;
    for (int i = 0; i < n; ++i) {
      switch (digits[static_cast<std::size_t>(i)]) {
        case 0: ex |= 1ULL << i; break;
        case 1: me |= 1ULL << i; break;
        default: ex |= 1ULL << i; me |= 1ULL << i; break;
      }
    }
    const Emp e = Emp::from_masks(n, ex, me);
    const EmpClass cls = nsc_check(e);
    if (!filter || matches_filter(*filter, cls.verdict)) sink(e, cls);
    // increment base-3 counter, least significant digit at node n
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[static_cast<std::size_t>(i)] < 3) break;
      digits[static_cast<std::size_t>(i)] = 0;
    }
  }
}

struct Counts {
  mpz_class minimal;
  mpz_class valid;
  mpz_class invalid;
};

inline Counts enumerate_counts(int n) {
  Counts c;
  enumerate(n, std::nullopt, [&](const Emp&, const EmpClass& cls) {
    switch (cls.verdict) {
      case Verdict::ValidMinimal: ++c.minimal; ++c.valid; break;
      case Verdict::ValidNonMinimal: ++c.valid; break;
      case Verdict::Invalid: ++c.invalid; break;
    }
  });
  return c;
}

// Closed-form counts over the 3^n coverage-complete patterns. The with-both
// count is the literal published sum  sum_{k=1..n-1} 2^(n-k) n!/(k!(n-k)!) + 1,
// which collapses to 3^n - 2^n; valid patterns without a both-node exist only
// for n >= 4 and are exactly the minimal ones.
inline Counts counts_closed_form(int n) {
  if (n < 2) throw InputError("counts are defined for n >= 2, got " + std::to_string(n));
  const unsigned un = static_cast<unsigned>(n);
  mpz_class pow3, pow2;
  mpz_ui_pow_ui(pow3.get_mpz_t(), 3, un);
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, un);

  Counts c;
  if (n == 2) c.minimal = 4;
  else if (n == 3) c.minimal = 12;
  else c.minimal = pow2 - n * (n - 1) - 2;

  mpz_class with_both = 1;
  for (int k = 1; k <= n - 1; ++k) {
    mpz_class binom, p2;
    mpz_bin_uiui(binom.get_mpz_t(), un, static_cast<unsigned>(k));
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned>(n - k));
    with_both += binom * p2;
  }

  c.valid = with_both + (n >= 4 ? c.minimal : mpz_class(0));
  c.invalid = pow3 - c.valid;
  return c;
}

// Reference counts (minimal / valid / invalid) published for loops of 2..10
// nodes; used by the table report for cross-checking.
struct ReferenceCounts {
  int n;
  unsigned long minimal;
  unsigned long valid;
  unsigned long invalid;
};

inline const std::vector<ReferenceCounts>& reference_counts() {
  static const std::vector<ReferenceCounts> table = {
      {2, 4, 5, 2},      {3, 12, 19, 8},     {4, 2, 67, 14},
      {5, 10, 221, 22},  {6, 32, 697, 32},   {7, 84, 2143, 44},
      {8, 198, 6503, 58}, {9, 438, 19609, 74}, {10, 932, 58957, 92},
  };
  return table;
}

struct TableRow {
  int n = 0;
  Counts enumerated;
  Counts closed_form;
  std::optional<ReferenceCounts> reference;
  std::vector<std::string> flags;
};

struct TableReport {
  int max_n = 0;
  std::vector<TableRow> rows;
  bool enumeration_matches_closed_form = true;
  bool matches_reference = true;  // ignoring rows with no reference values
};

// Per-n comparison of enumeration, closed forms and the reference counts.
// Any mismatch is flagged; the n=2 invalid cell is a known discrepancy (the
// enumeration over all 9 coverage-complete patterns yields 4, the reference
// table prints 2) and is flagged rather than reconciled.
inline TableReport table(int max_n) {
  if (max_n < 2 || max_n > 16)
    throw InputError("table supports 2 <= max_n <= 16, got " + std::to_string(max_n));
  TableReport rep;
  rep.max_n = max_n;
  for (int n = 2; n <= max_n; ++n) {
    TableRow row;
    row.n = n;
    row.enumerated = enumerate_counts(n);
    row.closed_form = counts_closed_form(n);
    for (const auto& ref : reference_counts())
      if (ref.n == n) row.reference = ref;

    auto flag_mismatch = [&](const char* what, const mpz_class& a, const mpz_class& b, bool reference) {
      if (a == b) return;
      row.flags.push_back(std::string(what) + ": enumerated " + a.get_str() +
                          (reference ? " != reference " : " != closed form ") + b.get_str());
      if (reference) rep.matches_reference = false;
      else rep.enumeration_matches_closed_form = false;
    };
    flag_mismatch("minimal", row.enumerated.minimal, row.closed_form.minimal, false);
    flag_mismatch("valid", row.enumerated.valid, row.closed_form.valid, false);
    flag_mismatch("invalid", row.enumerated.invalid, row.closed_form.invalid, false);
    if (row.reference) {
      flag_mismatch("minimal", row.enumerated.minimal, mpz_class(row.reference->minimal), true);
      flag_mismatch("valid", row.enumerated.valid, mpz_class(row.reference->valid), true);
      flag_mismatch("invalid", row.enumerated.invalid, mpz_class(row.reference->invalid), true);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace loopkit
