#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "model.hpp"

namespace opca {

// For a fixed subspace the optimal outlier choice is "drop the k farthest
// rows", so the only thing that matters about the subspace is the relative
// order of the row distances. That order is constant wherever none of the
// pairwise distance gaps changes sign, which carves the space of candidate
// frames into cells; one witness frame per cell is enough to cover every
// outlier set any subspace could induce.

enum class SolveMode { Exact2D, RandomSample };
enum class RepChoice { Auto, Span, Complement };

struct SolverConfig {
  SolveMode mode = SolveMode::Exact2D;
  std::uint64_t sample_budget = 1000;  // frames drawn in RandomSample mode
  std::uint64_t seed = 0;
  double zero_tol = 1e-10;  // sign classification and angle dedup tolerance
  RepChoice rep_choice = RepChoice::Auto;
  unsigned threads = 1;
};

enum class CellKind { Arc, Boundary, Sample };

struct CandidateCell {
  SubspaceRep witness;
  CellKind kind = CellKind::Sample;
  std::vector<std::size_t> outlier_set;       // select_outliers at the witness
  std::vector<std::int8_t> sign_summary;      // sign of each pairwise gap, pairs i<j
};

// distance_sq(rep, row i) - distance_sq(rep, row j); the quantity whose sign
// pattern indexes the cells. Requires i < j.
double distance_gap(const SubspaceRep& rep, const Matrix& data, std::size_t i,
                    std::size_t j);

// Index of pair (i, j), i < j, in the flattened sign summary.
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);

// Sign summary of a witness from precomputed row distances. A gap counts as
// zero when |gap| <= zero_tol * (1 + |m_i|^2 + |m_j|^2).
std::vector<std::int8_t> sign_summary(const Matrix& data, std::span<const double> dist,
                                      double zero_tol);

struct EquidistantAngles {
  bool identically_zero = false;  // rows equidistant from every line
  std::vector<double> angles;     // sorted, in [0, 2*pi), at most 4
};

// Angles t where the unit vector (cos t, sin t), read as a line normal, is
// equidistant from rows a and b. The gap factors as
// (v.(a-b)) * (v.(a+b)), so the zero set is the two directions orthogonal to
// a-b plus the two orthogonal to a+b, or the whole circle when either factor
// vanishes identically.
EquidistantAngles equidistant_angles(std::span<const double> a, std::span<const double> b);

struct CircleCells {
  std::vector<CandidateCell> cells;       // arcs in angle order, then boundary points
  std::size_t boundary_angle_count = 0;   // after dedup; at most 4 * C(n, 2)
};

// Exact cell enumeration for d = 2, r = 1: every pairwise boundary angle on
// the unit circle of line normals, arc midpoints as interior witnesses, and
// the boundary angles themselves as degenerate cells. DimensionUnsupported
// outside d = 2, r = 1.
CircleCells enumerate_circle_cells(const Instance& inst, double zero_tol = 1e-10);

// Randomized cell discovery for general dimensions: orthonormalized Gaussian
// frames, one candidate per distinct outlier set, first witness kept.
// Deterministic for a fixed seed. The frame has q = r rows (Span) or
// q = d - r rows (Complement); Auto picks the smaller side, Complement on
// ties.
std::vector<CandidateCell> sample_cells(const Instance& inst, const SolverConfig& cfg);

struct DumpedCell {
  CandidateCell cell;
  double cost = 0.0;  // optimal cost for the cell's outlier set
};

struct SolveOutcome {
  Solution best;
  std::uint64_t candidates = 0;        // cells produced by the source
  std::uint64_t distinct_subsets = 0;  // outlier sets actually evaluated
  std::uint64_t boundary_angles = 0;   // Exact2D only, zero otherwise
};

// Full pipeline: generate candidate cells, dedup by outlier set, re-optimize
// each subset, return the cheapest solution. Cost ties resolve to the
// lexicographically smallest subset. k = 0 and k = n skip cell generation
// entirely since there is only one possible subset. When dump is non-null it
// receives every candidate cell together with its subset's optimal cost.
SolveOutcome solve(const Instance& inst, const SolverConfig& cfg,
                   std::vector<DumpedCell>* dump = nullptr);

}  // namespace opca
