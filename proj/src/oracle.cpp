#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace opca {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(result);
}

namespace {

// Lexicographic rank -> combination (positions into a pool of size m).
std::vector<std::size_t> unrank_combination(std::size_t m, std::size_t k,
                                            std::uint64_t rank) {
  std::vector<std::size_t> positions;
  positions.reserve(k);
  std::size_t low = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t x = low;; ++x) {
      const std::uint64_t below =
          binomial_capped(m - x - 1, k - slot - 1, UINT64_MAX - 1);
      if (rank < below) {
        positions.push_back(x);
        low = x + 1;
        break;
      }
      rank -= below;
    }
  }
  return positions;
}

bool next_combination(std::vector<std::size_t>& positions, std::size_t m) {
  const std::size_t k = positions.size();
  for (std::size_t i = k; i-- > 0;) {
    if (positions[i] < m - k + i) {
      ++positions[i];
      for (std::size_t j = i + 1; j < k; ++j) positions[j] = positions[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct RangeBest {
  double cost = 0.0;
  std::uint64_t rank = 0;
  std::vector<std::size_t> subset;
  bool valid = false;
};

RangeBest scan_range(const Instance& inst, const std::vector<std::size_t>& pool,
                     std::uint64_t first, std::uint64_t count) {
  RangeBest best;
  if (count == 0) return best;
  const std::size_t k = inst.outliers;
  std::vector<std::size_t> positions = unrank_combination(pool.size(), k, first);
  std::vector<std::size_t> subset(k);
  for (std::uint64_t step = 0; step < count; ++step) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = pool[positions[i]];
    const double cost = subset_cost(inst, subset);
    if (!best.valid || cost < best.cost) {
      best.cost = cost;
      best.rank = first + step;
      best.subset = subset;
      best.valid = true;
    }
    if (step + 1 < count) next_combination(positions, pool.size());
  }
  return best;
}

}  // namespace

Solution brute_force_over(const Instance& inst, std::span<const std::size_t> candidate_rows,
                          std::uint64_t cap, unsigned threads) {
  const std::size_t k = inst.outliers;
  std::vector<std::size_t> pool(candidate_rows.begin(), candidate_rows.end());
  std::sort(pool.begin(), pool.end());
  if (std::adjacent_find(pool.begin(), pool.end()) != pool.end()) {
    fail(ErrorCode::BadIndex, "duplicate candidate row");
  }
  if (!pool.empty() && pool.back() >= inst.point_count()) {
    fail(ErrorCode::BadIndex, "candidate row out of range");
  }
  if (pool.size() < k) {
    fail(ErrorCode::InvalidArgument, "fewer candidate rows than the outlier budget");
  }

  const std::uint64_t count = binomial_capped(pool.size(), k, cap);
  if (count > cap) {
    fail(ErrorCode::BudgetExceeded, "subset count exceeds the enumeration cap");
  }

  threads = std::max(1u, std::min({threads, 64u, static_cast<unsigned>(count)}));
  RangeBest best;
  if (threads == 1) {
    best = scan_range(inst, pool, 0, count);
  } else {
    std::vector<RangeBest> partial(threads);
    std::vector<std::thread> workers;
    const std::uint64_t chunk = count / threads;
    const std::uint64_t extra = count % threads;
    std::uint64_t first = 0;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t len = chunk + (t < extra ? 1 : 0);
      workers.emplace_back([&, t, first, len] {
        partial[t] = scan_range(inst, pool, first, len);
      });
      first += len;
    }
    for (auto& w : workers) w.join();
    for (auto& p : partial) {
      if (!p.valid) continue;
      if (!best.valid || p.cost < best.cost ||
          (p.cost == best.cost && p.rank < best.rank)) {
        best = std::move(p);
      }
    }
  }
  return evaluate_subset(inst, best.subset);
}

Solution brute_force(const Instance& inst, std::uint64_t cap, unsigned threads) {
  std::vector<std::size_t> all(inst.point_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return brute_force_over(inst, all, cap, threads);
}

VerifyReport verify(const Instance& inst, const Solution& sol, double tol) {
  VerifyReport report;
  report.stored_cost = sol.cost;

  const std::size_t n = inst.point_count();
  const std::size_t d = inst.dim();
  report.shape_ok = sol.low_rank.rows() == n && sol.low_rank.cols() == d &&
                    sol.sparse.rows() == n && sol.sparse.cols() == d &&
                    sol.basis.count() == inst.rank && sol.basis.dim() == d;
  if (!report.shape_ok) return report;

  constexpr double kBasisTol = 1e-8;
  report.basis_ok = true;
  for (std::size_t i = 0; i < sol.basis.count() && report.basis_ok; ++i) {
    if (std::fabs(norm_sq(sol.basis.row(i)) - 1.0) > kBasisTol) report.basis_ok = false;
    for (std::size_t j = i + 1; j < sol.basis.count() && report.basis_ok; ++j) {
      if (std::fabs(dot(sol.basis.row(i), sol.basis.row(j))) > kBasisTol) {
        report.basis_ok = false;
      }
    }
  }

  const std::set<std::size_t> outliers(sol.outlier_set.begin(), sol.outlier_set.end());
  report.support_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    bool nonzero = false;
    for (double vl : sol.sparse.row(i)) {
      if (vl != 0.0) {
        nonzero = true;
        break;
      }
    }
    if (nonzero) {
      ++report.sparse_row_count;
      if (!outliers.count(i)) report.support_ok = false;
    }
  }
  report.sparsity_ok = report.sparse_row_count <= inst.outliers &&
                       outliers.size() <= inst.outliers;
  for (std::size_t idx : outliers) {
    if (idx >= n) report.support_ok = false;
  }

  report.rank_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = residual_sq(sol.basis, sol.low_rank.row(i));
    report.max_low_rank_residual_sq = std::max(report.max_low_rank_residual_sq, res);
    if (res > tol * (1.0 + norm_sq(sol.low_rank.row(i)))) report.rank_ok = false;
  }

  double recomputed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto m = inst.data.row(i);
    auto l = sol.low_rank.row(i);
    auto s = sol.sparse.row(i);
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = m[c] - l[c] - s[c];
      recomputed += diff * diff;
    }
  }
  report.recomputed_cost = recomputed;
  report.cost_error = std::fabs(recomputed - sol.cost);
  report.cost_ok =
      report.cost_error <= tol * (1.0 + std::fabs(sol.cost) + std::fabs(recomputed));

  report.feasible = report.shape_ok && report.basis_ok && report.sparsity_ok &&
                    report.support_ok && report.rank_ok && report.cost_ok;
  return report;
}

}  // namespace opca
