#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "linalg.hpp"

namespace opca {

// A problem instance: n data rows in dimension d, a target subspace rank r
// (0 <= r <= d) and an outlier budget k (0 <= k <= n). The objective is to
// drop k rows so the remaining ones sit as close as possible to an
// r-dimensional subspace through the origin.
struct Instance {
  Matrix data;
  std::size_t rank = 0;
  std::size_t outliers = 0;

  Instance(Matrix data_in, std::size_t rank_in, std::size_t outliers_in);

  std::size_t point_count() const { return data.rows(); }
  std::size_t dim() const { return data.cols(); }
};

// A subspace can be handed around either by a frame spanning it (Span, r rows)
// or by a frame spanning its orthogonal complement (Complement, d - r rows).
// Both give the same point-to-subspace distances.
enum class RepMode { Span, Complement };

struct SubspaceRep {
  Frame frame;
  RepMode mode;

  std::size_t subspace_dim() const {
    return mode == RepMode::Span ? frame.count() : frame.dim() - frame.count();
  }
};

// Squared distance from x to the represented subspace.
double distance_sq(const SubspaceRep& rep, std::span<const double> x);

// One squared distance per data row.
std::vector<double> distances_sq(const SubspaceRep& rep, const Matrix& data);

// The k rows farthest from the represented subspace, ascending indices.
// Rows whose distances agree within 1e-12 absolute count as tied and the
// lower index wins, so the choice is stable under tiny perturbations.
std::vector<std::size_t> select_outliers(const Instance& inst, const SubspaceRep& rep);

// A feasible decomposition: data ~ low_rank + sparse, where low_rank rows lie
// in span(basis) (zero at outlier rows) and sparse is nonzero only at outlier
// rows. cost equals ||data - low_rank - sparse||_F^2.
struct Solution {
  std::vector<std::size_t> outlier_set;  // ascending
  Frame basis;                           // rank rows spanning the fitted subspace
  Matrix low_rank;
  Matrix sparse;
  double cost = 0.0;
};

// Best solution with exactly the given rows as outliers: fits the remaining
// rows by PCA and assembles the decomposition. With every row an outlier the
// fit degenerates; the basis defaults to the first rank standard basis rows
// and the cost is zero.
Solution evaluate_subset(const Instance& inst, std::span<const std::size_t> outlier_set);

// Cost-only variant of evaluate_subset; shares its arithmetic exactly.
double subset_cost(const Instance& inst, std::span<const std::size_t> outlier_set);

// Select outliers against rep, then re-optimize the kept rows. The result can
// beat projecting onto rep itself, never the other way around.
Solution evaluate_from_frame(const Instance& inst, const SubspaceRep& rep);

// Raises DimensionMismatch unless rep describes an inst.rank-dimensional
// subspace of the instance's ambient space.
void check_rep(const Instance& inst, const SubspaceRep& rep);

}  // namespace opca
