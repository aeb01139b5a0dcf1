#include "arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <thread>

#include "rng.hpp"

namespace opca {

double distance_gap(const SubspaceRep& rep, const Matrix& data, std::size_t i,
                    std::size_t j) {
  if (i >= j || j >= data.rows()) {
    fail(ErrorCode::BadIndex, "distance_gap needs row indices i < j");
  }
  return distance_sq(rep, data.row(i)) - distance_sq(rep, data.row(j));
}

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<std::int8_t> sign_summary(const Matrix& data, std::span<const double> dist,
                                      double zero_tol) {
  const std::size_t n = data.rows();
  std::vector<double> row_scale(n);
  for (std::size_t i = 0; i < n; ++i) row_scale[i] = norm_sq(data.row(i));
  std::vector<std::int8_t> signs;
  signs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = dist[i] - dist[j];
      const double tol = zero_tol * (1.0 + row_scale[i] + row_scale[j]);
      if (std::fabs(gap) <= tol) {
        signs.push_back(0);
      } else {
        signs.push_back(gap > 0.0 ? 1 : -1);
      }
    }
  }
  return signs;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod can land exactly on 2*pi after the adjustment when t was a tiny
  // negative; fold that back to zero.
  if (t >= kTwoPi) t = 0.0;
  return t;
}

void push_perpendicular_angles(std::span<const double> w, std::vector<double>& out) {
  const double base = std::atan2(w[1], w[0]);
  out.push_back(wrap_angle(base + 0.5 * std::numbers::pi));
  out.push_back(wrap_angle(base + 1.5 * std::numbers::pi));
}

SubspaceRep unit_circle_rep(double angle) {
  Matrix row(1, 2);
  row(0, 0) = std::cos(angle);
  row(0, 1) = std::sin(angle);
  return {Frame(std::move(row), 1e-10), RepMode::Complement};
}

CandidateCell make_cell(const Instance& inst, SubspaceRep rep, CellKind kind,
                        double zero_tol) {
  const auto dist = distances_sq(rep, inst.data);
  CandidateCell cell{std::move(rep), kind, {}, sign_summary(inst.data, dist, zero_tol)};
  cell.outlier_set = select_outliers(inst, cell.witness);
  return cell;
}

}  // namespace

EquidistantAngles equidistant_angles(std::span<const double> a, std::span<const double> b) {
  if (a.size() != 2 || b.size() != 2) {
    fail(ErrorCode::DimensionUnsupported, "equidistant angles are a planar construction");
  }
  const double diff[2] = {a[0] - b[0], a[1] - b[1]};
  const double sum[2] = {a[0] + b[0], a[1] + b[1]};
  EquidistantAngles out;
  if ((diff[0] == 0.0 && diff[1] == 0.0) || (sum[0] == 0.0 && sum[1] == 0.0)) {
    // One factor vanishes identically, so the rows are equidistant from every
    // line through the origin.
    out.identically_zero = true;
    return out;
  }
  push_perpendicular_angles(diff, out.angles);
  push_perpendicular_angles(sum, out.angles);
  std::sort(out.angles.begin(), out.angles.end());
  // a - b parallel to a + b collapses the four angles to two.
  constexpr double kAngleDedup = 1e-12;
  out.angles.erase(std::unique(out.angles.begin(), out.angles.end(),
                               [](double x, double y) { return y - x <= kAngleDedup; }),
                   out.angles.end());
  if (out.angles.size() > 1 &&
      kTwoPi - out.angles.back() + out.angles.front() <= kAngleDedup) {
    out.angles.pop_back();
  }
  return out;
}

CircleCells enumerate_circle_cells(const Instance& inst, double zero_tol) {
  if (inst.dim() != 2 || inst.rank != 1) {
    fail(ErrorCode::DimensionUnsupported,
         "exact cell enumeration is implemented for d = 2, r = 1 only");
  }
  if (zero_tol <= 0.0) fail(ErrorCode::InvalidArgument, "zero tolerance must be positive");

  const std::size_t n = inst.point_count();
  std::vector<double> boundary;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto eq = equidistant_angles(inst.data.row(i), inst.data.row(j));
      if (eq.identically_zero) continue;
      boundary.insert(boundary.end(), eq.angles.begin(), eq.angles.end());
    }
  }
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end(),
                             [&](double x, double y) { return y - x <= zero_tol; }),
                 boundary.end());
  if (boundary.size() > 1 && kTwoPi - boundary.back() + boundary.front() <= zero_tol) {
    boundary.pop_back();
  }

  CircleCells out;
  out.boundary_angle_count = boundary.size();
  if (boundary.empty()) {
    // No pair ever swaps order, one cell covers the whole circle.
    out.cells.push_back(make_cell(inst, unit_circle_rep(0.0), CellKind::Arc, zero_tol));
    return out;
  }
  for (std::size_t b = 0; b < boundary.size(); ++b) {
    const double lo = boundary[b];
    const double hi = b + 1 < boundary.size() ? boundary[b + 1] : boundary.front() + kTwoPi;
    const double mid = wrap_angle(0.5 * (lo + hi));
    out.cells.push_back(make_cell(inst, unit_circle_rep(mid), CellKind::Arc, zero_tol));
  }
  for (double angle : boundary) {
    out.cells.push_back(make_cell(inst, unit_circle_rep(angle), CellKind::Boundary, zero_tol));
  }
  return out;
}

namespace {

struct RepPlan {
  RepMode mode;
  std::size_t frame_rows;
};

RepPlan plan_rep(const Instance& inst, RepChoice choice) {
  const std::size_t r = inst.rank;
  const std::size_t co = inst.dim() - inst.rank;
  switch (choice) {
    case RepChoice::Span: return {RepMode::Span, r};
    case RepChoice::Complement: return {RepMode::Complement, co};
    case RepChoice::Auto: break;
  }
  // The cheaper side of the pair; the complement wins ties.
  if (co <= r) return {RepMode::Complement, co};
  return {RepMode::Span, r};
}

}  // namespace

std::vector<CandidateCell> sample_cells(const Instance& inst, const SolverConfig& cfg) {
  if (cfg.sample_budget == 0) {
    fail(ErrorCode::InvalidArgument, "sample budget must be at least 1");
  }
  if (cfg.zero_tol <= 0.0) fail(ErrorCode::InvalidArgument, "zero tolerance must be positive");

  const RepPlan plan = plan_rep(inst, cfg.rep_choice);
  const std::size_t d = inst.dim();
  Rng rng(cfg.seed);
  std::vector<CandidateCell> cells;
  std::set<std::vector<std::size_t>> seen;
  for (std::uint64_t draw = 0; draw < cfg.sample_budget; ++draw) {
    Matrix g(plan.frame_rows, d);
    for (double& v : g.data()) v = rng.gaussian();
    Frame frame = [&]() -> Frame {
      try {
        return orthonormalize(g, 1e-8);
      } catch (const Error&) {
        // A degenerate Gaussian draw is measure zero; spend the draw and move on.
        return Frame::standard_basis(plan.frame_rows, d);
      }
    }();
    SubspaceRep rep{std::move(frame), plan.mode};
    auto chosen = select_outliers(inst, rep);
    if (!seen.insert(chosen).second) continue;
    const auto dist = distances_sq(rep, inst.data);
    CandidateCell cell{std::move(rep), CellKind::Sample, std::move(chosen),
                       sign_summary(inst.data, dist, cfg.zero_tol)};
    cells.push_back(std::move(cell));
  }
  return cells;
}

SolveOutcome solve(const Instance& inst, const SolverConfig& cfg,
                   std::vector<DumpedCell>* dump) {
  if (cfg.mode == SolveMode::Exact2D && (inst.dim() != 2 || inst.rank != 1)) {
    fail(ErrorCode::DimensionUnsupported,
         "exact cell enumeration is implemented for d = 2, r = 1 only");
  }

  const std::size_t n = inst.point_count();
  const std::size_t k = inst.outliers;

  std::vector<CandidateCell> cells;
  std::uint64_t boundary = 0;
  if (k == 0 || k == n) {
    // Only one subset exists, no need to look at the arrangement.
    const RepPlan plan = cfg.mode == SolveMode::Exact2D
                             ? RepPlan{RepMode::Complement, 1}
                             : plan_rep(inst, cfg.rep_choice);
    SubspaceRep rep{Frame::standard_basis(plan.frame_rows, inst.dim()), plan.mode};
    const auto dist = distances_sq(rep, inst.data);
    CandidateCell cell{std::move(rep), CellKind::Sample, {},
                       sign_summary(inst.data, dist, cfg.zero_tol)};
    if (k == n) {
      cell.outlier_set.resize(n);
      for (std::size_t i = 0; i < n; ++i) cell.outlier_set[i] = i;
    }
    cells.push_back(std::move(cell));
  } else if (cfg.mode == SolveMode::Exact2D) {
    CircleCells cc = enumerate_circle_cells(inst, cfg.zero_tol);
    cells = std::move(cc.cells);
    boundary = cc.boundary_angle_count;
  } else {
    cells = sample_cells(inst, cfg);
  }

  std::set<std::vector<std::size_t>> distinct;
  for (const auto& cell : cells) distinct.insert(cell.outlier_set);
  std::vector<std::vector<std::size_t>> subsets(distinct.begin(), distinct.end());

  std::vector<double> costs(subsets.size());
  const unsigned threads =
      std::max(1u, std::min({cfg.threads, 64u, static_cast<unsigned>(subsets.size())}));
  if (threads == 1) {
    for (std::size_t i = 0; i < subsets.size(); ++i) costs[i] = subset_cost(inst, subsets[i]);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < subsets.size(); i += threads) {
          costs[i] = subset_cost(inst, subsets[i]);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  // subsets is sorted, so the first strict minimum is also the
  // lexicographically smallest among cost ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < subsets.size(); ++i) {
    if (costs[i] < costs[best]) best = i;
  }

  if (dump) {
    std::map<std::vector<std::size_t>, double> by_subset;
    for (std::size_t i = 0; i < subsets.size(); ++i) by_subset[subsets[i]] = costs[i];
    for (auto& cell : cells) {
      dump->push_back({cell, by_subset[cell.outlier_set]});
    }
  }

  SolveOutcome out{evaluate_subset(inst, subsets[best]), cells.size(), subsets.size(),
                   boundary};
  return out;
}

}  // namespace opca
