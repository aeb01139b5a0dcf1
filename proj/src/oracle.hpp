#pragma once

#include <cstdint>
#include <span>

#include "model.hpp"

namespace opca {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// C(n, k), saturating at cap + 1 so callers can test "over budget" without
// overflow.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

// Exact optimum by enumerating all C(n, k) outlier subsets in lexicographic
// order. Raises BudgetExceeded when the count is above cap. Equal-cost
// subsets resolve to the lexicographically smallest, independent of the
// thread count.
Solution brute_force(const Instance& inst, std::uint64_t cap = kDefaultEnumerationCap,
                     unsigned threads = 1);

// Same enumeration restricted to subsets of candidate_rows; every row outside
// the candidate list is always kept. Useful when structure pins where the
// outliers can be, which shrinks the search space from C(n, k) to
// C(|candidate_rows|, k).
Solution brute_force_over(const Instance& inst, std::span<const std::size_t> candidate_rows,
                          std::uint64_t cap = kDefaultEnumerationCap, unsigned threads = 1);

struct VerifyReport {
  bool feasible = false;
  double recomputed_cost = 0.0;
  double stored_cost = 0.0;
  double cost_error = 0.0;
  bool cost_ok = false;
  bool sparsity_ok = false;        // at most k nonzero sparse rows
  bool support_ok = false;         // sparse support inside the outlier set
  bool rank_ok = false;            // low-rank rows inside span(basis)
  bool basis_ok = false;           // basis rows orthonormal
  bool shape_ok = false;
  std::size_t sparse_row_count = 0;
  double max_low_rank_residual_sq = 0.0;
};

// Checks a solution against its instance without mutating either: shapes,
// basis orthonormality, sparse row budget and support, low-rank row
// containment in span(basis), and the cost against a fresh
// ||M - L - S||_F^2. Failures land in the report, never in an exception.
VerifyReport verify(const Instance& inst, const Solution& sol, double tol = 1e-9);

}  // namespace opca
