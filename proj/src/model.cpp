#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opca {

namespace {

// Distances this close are treated as equal when ranking outlier candidates.
constexpr double kTieTolerance = 1e-12;

}  // namespace

Instance::Instance(Matrix data_in, std::size_t rank_in, std::size_t outliers_in)
    : data(std::move(data_in)), rank(rank_in), outliers(outliers_in) {
  if (rank > data.cols()) {
    fail(ErrorCode::InvalidArgument, "rank exceeds the ambient dimension");
  }
  if (outliers > data.rows()) {
    fail(ErrorCode::InvalidArgument, "outlier budget exceeds the row count");
  }
}

void check_rep(const Instance& inst, const SubspaceRep& rep) {
  if (rep.frame.dim() != inst.dim()) {
    fail(ErrorCode::DimensionMismatch, "frame dimension does not match the instance");
  }
  if (rep.subspace_dim() != inst.rank) {
    fail(ErrorCode::DimensionMismatch, "frame does not describe a rank-" +
                                           std::to_string(inst.rank) + " subspace");
  }
}

double distance_sq(const SubspaceRep& rep, std::span<const double> x) {
  if (x.size() != rep.frame.dim()) {
    fail(ErrorCode::DimensionMismatch, "vector length does not match frame dimension");
  }
  double along = 0.0;
  for (std::size_t i = 0; i < rep.frame.count(); ++i) {
    const double coeff = dot(rep.frame.row(i), x);
    along += coeff * coeff;
  }
  if (rep.mode == RepMode::Complement) return along;
  return std::max(0.0, norm_sq(x) - along);
}

std::vector<double> distances_sq(const SubspaceRep& rep, const Matrix& data) {
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    out[i] = distance_sq(rep, data.row(i));
  }
  return out;
}

std::vector<std::size_t> select_outliers(const Instance& inst, const SubspaceRep& rep) {
  check_rep(inst, rep);
  const std::size_t n = inst.point_count();
  const std::size_t k = inst.outliers;
  if (k == 0) return {};

  const std::vector<double> dist = distances_sq(rep, inst.data);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (dist[x] != dist[y]) return dist[x] > dist[y];
    return x < y;
  });

  // Everything clearly above the k-th distance is in; the remaining slots go
  // to the lowest indices inside the tie band around the k-th distance.
  const double pivot = dist[order[k - 1]];
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> band;
  chosen.reserve(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i] > pivot + kTieTolerance) {
      chosen.push_back(i);
    } else if (dist[i] >= pivot - kTieTolerance) {
      band.push_back(i);
    }
  }
  for (std::size_t i = 0; i < band.size() && chosen.size() < k; ++i) {
    chosen.push_back(band[i]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

std::vector<std::size_t> checked_sorted_subset(const Instance& inst,
                                               std::span<const std::size_t> outlier_set) {
  if (outlier_set.size() > inst.outliers) {
    fail(ErrorCode::BadIndex, "outlier set exceeds the budget");
  }
  std::vector<std::size_t> sorted(outlier_set.begin(), outlier_set.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= inst.point_count()) {
      fail(ErrorCode::BadIndex, "outlier index out of range");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      fail(ErrorCode::BadIndex, "duplicate outlier index");
    }
  }
  return sorted;
}

SubspaceFit fit_kept_rows(const Instance& inst, const std::vector<std::size_t>& sorted_out) {
  const std::size_t n = inst.point_count();
  const std::size_t d = inst.dim();
  Matrix kept(n - sorted_out.size(), d);
  std::size_t next_out = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (next_out < sorted_out.size() && sorted_out[next_out] == i) {
      ++next_out;
      continue;
    }
    auto src = inst.data.row(i);
    auto dst = kept.row(at++);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return best_fit_subspace(kept, inst.rank);
}

}  // namespace

Solution evaluate_subset(const Instance& inst, std::span<const std::size_t> outlier_set) {
  const auto sorted = checked_sorted_subset(inst, outlier_set);
  SubspaceFit fit = fit_kept_rows(inst, sorted);

  const std::size_t n = inst.point_count();
  const std::size_t d = inst.dim();
  Matrix low_rank(n, d);
  Matrix sparse(n, d);
  std::size_t next_out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto src = inst.data.row(i);
    if (next_out < sorted.size() && sorted[next_out] == i) {
      ++next_out;
      auto s = sparse.row(i);
      std::copy(src.begin(), src.end(), s.begin());
      continue;
    }
    const auto proj = project_onto(fit.basis, src);
    auto l = low_rank.row(i);
    std::copy(proj.begin(), proj.end(), l.begin());
  }
  return {sorted, std::move(fit.basis), std::move(low_rank), std::move(sparse),
          fit.residual};
}

double subset_cost(const Instance& inst, std::span<const std::size_t> outlier_set) {
  const auto sorted = checked_sorted_subset(inst, outlier_set);
  return fit_kept_rows(inst, sorted).residual;
}

Solution evaluate_from_frame(const Instance& inst, const SubspaceRep& rep) {
  const auto chosen = select_outliers(inst, rep);
  return evaluate_subset(inst, chosen);
}

}  // namespace opca
