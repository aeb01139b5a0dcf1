#include "opca/opca.h"

#include <chrono>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "arrangement.hpp"
#include "hardness.hpp"
#include "io.hpp"
#include "model.hpp"
#include "oracle.hpp"

struct opca_instance {
  opca::Instance value;
};

struct opca_solution {
  opca::Solution value;
};

struct opca_graph {
  opca::CliqueInstance value;
};

struct opca_hard_bundle {
  opca::HardnessBundle value;
  opca_instance instance_view;
};

namespace {

thread_local std::string g_last_error;

opca_status map_code(opca::ErrorCode code) {
  using opca::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return OPCA_ERROR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return OPCA_ERROR_PARSE;
    case ErrorCode::DimensionMismatch: return OPCA_ERROR_DIMENSION_MISMATCH;
    case ErrorCode::RankDeficient: return OPCA_ERROR_RANK_DEFICIENT;
    case ErrorCode::NotSymmetric: return OPCA_ERROR_NOT_SYMMETRIC;
    case ErrorCode::NoConvergence: return OPCA_ERROR_NO_CONVERGENCE;
    case ErrorCode::BadIndex: return OPCA_ERROR_BAD_INDEX;
    case ErrorCode::BudgetExceeded: return OPCA_ERROR_BUDGET_EXCEEDED;
    case ErrorCode::DimensionUnsupported: return OPCA_ERROR_DIMENSION_UNSUPPORTED;
    case ErrorCode::NegativeBudget: return OPCA_ERROR_NEGATIVE_BUDGET;
    case ErrorCode::NotAClique: return OPCA_ERROR_NOT_A_CLIQUE;
    case ErrorCode::IoError: return OPCA_ERROR_IO;
  }
  return OPCA_ERROR_INTERNAL;
}

// Runs fn with exceptions translated into a status; clears the error slot on
// success.
template <typename Fn>
opca_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return OPCA_OK;
  } catch (const opca::Error& err) {
    g_last_error = err.what();
    return map_code(err.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OPCA_ERROR_INTERNAL;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return OPCA_ERROR_INTERNAL;
  }
}

opca_status require(bool ok, const char* message) {
  if (ok) return OPCA_OK;
  g_last_error = message;
  return OPCA_ERROR_INVALID_ARGUMENT;
}

std::size_t as_size(int64_t v, const char* what) {
  if (v < 0) opca::fail(opca::ErrorCode::InvalidArgument, std::string(what) + " cannot be negative");
  return static_cast<std::size_t>(v);
}

opca::SolverConfig to_core_config(const opca_solver_config& cfg) {
  opca::SolverConfig core;
  core.mode = cfg.mode == OPCA_MODE_EXACT_2D ? opca::SolveMode::Exact2D
                                             : opca::SolveMode::RandomSample;
  core.sample_budget = cfg.sample_budget;
  core.seed = cfg.seed;
  core.zero_tol = cfg.zero_tol;
  switch (cfg.rep_choice) {
    case OPCA_REP_SPAN: core.rep_choice = opca::RepChoice::Span; break;
    case OPCA_REP_COMPLEMENT: core.rep_choice = opca::RepChoice::Complement; break;
    default: core.rep_choice = opca::RepChoice::Auto; break;
  }
  core.threads = cfg.threads;
  return core;
}

}  // namespace

extern "C" {

const char* opca_status_name(opca_status status) {
  switch (status) {
    case OPCA_OK: return "Ok";
    case OPCA_ERROR_INVALID_ARGUMENT: return "InvalidArgument";
    case OPCA_ERROR_PARSE: return "ParseError";
    case OPCA_ERROR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case OPCA_ERROR_RANK_DEFICIENT: return "RankDeficient";
    case OPCA_ERROR_NOT_SYMMETRIC: return "NotSymmetric";
    case OPCA_ERROR_NO_CONVERGENCE: return "NoConvergence";
    case OPCA_ERROR_BAD_INDEX: return "BadIndex";
    case OPCA_ERROR_BUDGET_EXCEEDED: return "BudgetExceeded";
    case OPCA_ERROR_DIMENSION_UNSUPPORTED: return "DimensionUnsupported";
    case OPCA_ERROR_NEGATIVE_BUDGET: return "NegativeBudget";
    case OPCA_ERROR_NOT_A_CLIQUE: return "NotAClique";
    case OPCA_ERROR_IO: return "IoError";
    case OPCA_ERROR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* opca_last_error_message(void) { return g_last_error.c_str(); }

const char* opca_version(void) { return "0.1.0"; }

opca_status opca_instance_create(const double* row_major, int64_t rows, int64_t cols,
                                 int64_t rank, int64_t outliers, opca_instance** out) {
  if (auto bad = require(out && (row_major || rows * cols == 0), "null argument")) return bad;
  return guarded([&] {
    const std::size_t n = as_size(rows, "row count");
    const std::size_t d = as_size(cols, "column count");
    std::vector<double> entries(row_major, row_major + n * d);
    opca::Instance inst(opca::Matrix(n, d, std::move(entries)),
                        as_size(rank, "rank"), as_size(outliers, "outlier budget"));
    *out = new opca_instance{std::move(inst)};
  });
}

opca_status opca_instance_read_csv(const char* path, int64_t rank, int64_t outliers,
                                   opca_instance** out) {
  if (auto bad = require(out && path, "null argument")) return bad;
  return guarded([&] {
    *out = new opca_instance{opca::read_instance_csv(path, as_size(rank, "rank"),
                                                     as_size(outliers, "outlier budget"))};
  });
}

opca_status opca_instance_read_json(const char* path, opca_instance** out) {
  if (auto bad = require(out && path, "null argument")) return bad;
  return guarded([&] {
    *out = new opca_instance{opca::read_instance_json(path).instance};
  });
}

opca_status opca_instance_write_json(const opca_instance* inst, const char* path) {
  if (auto bad = require(inst && path, "null argument")) return bad;
  return guarded([&] { opca::write_instance_json(path, inst->value); });
}

opca_status opca_instance_set_params(opca_instance* inst, int64_t rank, int64_t outliers) {
  if (auto bad = require(inst != nullptr, "null instance")) return bad;
  return guarded([&] {
    opca::Instance updated(inst->value.data, as_size(rank, "rank"),
                           as_size(outliers, "outlier budget"));
    inst->value = std::move(updated);
  });
}

int64_t opca_instance_rows(const opca_instance* inst) {
  return inst ? static_cast<int64_t>(inst->value.point_count()) : 0;
}
int64_t opca_instance_cols(const opca_instance* inst) {
  return inst ? static_cast<int64_t>(inst->value.dim()) : 0;
}
int64_t opca_instance_rank(const opca_instance* inst) {
  return inst ? static_cast<int64_t>(inst->value.rank) : 0;
}
int64_t opca_instance_outliers(const opca_instance* inst) {
  return inst ? static_cast<int64_t>(inst->value.outliers) : 0;
}
const double* opca_instance_data(const opca_instance* inst) {
  return inst ? inst->value.data.data().data() : nullptr;
}

void opca_instance_destroy(opca_instance* inst) { delete inst; }

void opca_solver_config_init(opca_solver_config* cfg) {
  if (!cfg) return;
  cfg->mode = OPCA_MODE_EXACT_2D;
  cfg->sample_budget = 1000;
  cfg->seed = 0;
  cfg->zero_tol = 1e-10;
  cfg->rep_choice = OPCA_REP_AUTO;
  cfg->threads = 1;
  cfg->enum_cap = 10000000;
}

opca_status opca_solve(const opca_instance* inst, const opca_solver_config* cfg,
                       const char* cell_dump_path, opca_solution** out,
                       opca_solve_stats* stats) {
  if (auto bad = require(inst && cfg && out, "null argument")) return bad;
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    std::optional<opca::Solution> best;
    opca_solve_stats local{};
    if (cfg->mode == OPCA_MODE_BRUTE) {
      best = opca::brute_force(inst->value, cfg->enum_cap, cfg->threads);
      const std::uint64_t count = opca::binomial_capped(
          inst->value.point_count(), inst->value.outliers, cfg->enum_cap);
      local.candidates = count;
      local.distinct_subsets = count;
    } else {
      std::vector<opca::DumpedCell> dump;
      opca::SolveOutcome outcome = opca::solve(inst->value, to_core_config(*cfg),
                                               cell_dump_path ? &dump : nullptr);
      if (cell_dump_path) opca::write_cell_dump(cell_dump_path, dump);
      best = std::move(outcome.best);
      local.candidates = outcome.candidates;
      local.distinct_subsets = outcome.distinct_subsets;
      local.boundary_angles = outcome.boundary_angles;
    }
    const auto stop = std::chrono::steady_clock::now();
    local.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (stats) *stats = local;
    *out = new opca_solution{std::move(*best)};
  });
}

double opca_solution_cost(const opca_solution* sol) {
  return sol ? sol->value.cost : 0.0;
}
int64_t opca_solution_outlier_count(const opca_solution* sol) {
  return sol ? static_cast<int64_t>(sol->value.outlier_set.size()) : 0;
}
void opca_solution_outliers(const opca_solution* sol, int64_t* out) {
  if (!sol || !out) return;
  for (std::size_t i = 0; i < sol->value.outlier_set.size(); ++i) {
    out[i] = static_cast<int64_t>(sol->value.outlier_set[i]);
  }
}
int64_t opca_solution_basis_rows(const opca_solution* sol) {
  return sol ? static_cast<int64_t>(sol->value.basis.count()) : 0;
}
void opca_solution_basis(const opca_solution* sol, double* out) {
  if (!sol || !out) return;
  const auto& data = sol->value.basis.vectors().data();
  std::memcpy(out, data.data(), data.size() * sizeof(double));
}
void opca_solution_low_rank(const opca_solution* sol, double* out) {
  if (!sol || !out) return;
  const auto& data = sol->value.low_rank.data();
  std::memcpy(out, data.data(), data.size() * sizeof(double));
}
void opca_solution_sparse(const opca_solution* sol, double* out) {
  if (!sol || !out) return;
  const auto& data = sol->value.sparse.data();
  std::memcpy(out, data.data(), data.size() * sizeof(double));
}
void opca_solution_destroy(opca_solution* sol) { delete sol; }

opca_status opca_solution_record(const opca_solution* sol, const opca_solve_stats* stats,
                                 const char* mode_name, char** out) {
  if (auto bad = require(sol && mode_name && out, "null argument")) return bad;
  return guarded([&] {
    opca::RunStats run;
    if (stats) {
      run.candidates = stats->candidates;
      run.distinct_subsets = stats->distinct_subsets;
      run.boundary_angles = stats->boundary_angles;
      run.wall_ms = stats->wall_ms;
    }
    const std::string text = opca::result_record(sol->value, run, mode_name);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

opca_status opca_solution_write_json(const opca_solution* sol, const opca_solve_stats* stats,
                                     const char* mode_name, const char* path) {
  if (auto bad = require(sol && mode_name && path, "null argument")) return bad;
  return guarded([&] {
    opca::RunStats run;
    if (stats) {
      run.candidates = stats->candidates;
      run.distinct_subsets = stats->distinct_subsets;
      run.boundary_angles = stats->boundary_angles;
      run.wall_ms = stats->wall_ms;
    }
    opca::write_text_file(path, opca::result_record(sol->value, run, mode_name));
  });
}

opca_status opca_solution_read_json(const opca_instance* inst, const char* path,
                                    opca_solution** out) {
  if (auto bad = require(inst && path && out, "null argument")) return bad;
  return guarded([&] {
    *out = new opca_solution{opca::read_solution_json(inst->value, path)};
  });
}

void opca_string_free(char* s) { delete[] s; }

opca_status opca_verify(const opca_instance* inst, const opca_solution* sol, double tol,
                        opca_verify_report* report) {
  if (auto bad = require(inst && sol && report, "null argument")) return bad;
  return guarded([&] {
    const opca::VerifyReport core = opca::verify(inst->value, sol->value, tol);
    report->feasible = core.feasible;
    report->recomputed_cost = core.recomputed_cost;
    report->stored_cost = core.stored_cost;
    report->cost_error = core.cost_error;
    report->cost_ok = core.cost_ok;
    report->sparsity_ok = core.sparsity_ok;
    report->support_ok = core.support_ok;
    report->rank_ok = core.rank_ok;
    report->basis_ok = core.basis_ok;
    report->shape_ok = core.shape_ok;
    report->sparse_row_count = static_cast<int64_t>(core.sparse_row_count);
    report->max_low_rank_residual_sq = core.max_low_rank_residual_sq;
  });
}

opca_status opca_brute_force(const opca_instance* inst, uint64_t cap, unsigned threads,
                             opca_solution** out) {
  if (auto bad = require(inst && out, "null argument")) return bad;
  return guarded([&] {
    *out = new opca_solution{opca::brute_force(inst->value, cap, threads)};
  });
}

opca_status opca_graph_read(const char* path, opca_graph** out) {
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new opca_graph{opca::read_graph(path)}; });
}

opca_status opca_graph_create(int64_t colors, int64_t per_color, const int64_t* edges,
                              int64_t edge_count, opca_graph** out) {
  if (auto bad = require(out && (edges || edge_count == 0), "null argument")) return bad;
  return guarded([&] {
    std::vector<opca::CliqueInstance::Edge> list;
    list.reserve(as_size(edge_count, "edge count"));
    for (int64_t e = 0; e < edge_count; ++e) {
      list.push_back({as_size(edges[4 * e], "color"), as_size(edges[4 * e + 1], "index"),
                      as_size(edges[4 * e + 2], "color"), as_size(edges[4 * e + 3], "index")});
    }
    *out = new opca_graph{opca::CliqueInstance(as_size(colors, "colors"),
                                               as_size(per_color, "class size"),
                                               std::move(list))};
  });
}

opca_status opca_graph_complete_multipartite(int64_t colors, int64_t per_color,
                                             opca_graph** out) {
  if (auto bad = require(out != nullptr, "null argument")) return bad;
  return guarded([&] {
    *out = new opca_graph{opca::complete_multipartite(as_size(colors, "colors"),
                                                      as_size(per_color, "class size"))};
  });
}

int64_t opca_graph_edge_count(const opca_graph* g) {
  return g ? static_cast<int64_t>(g->value.edges.size()) : 0;
}

opca_status opca_graph_find_clique(const opca_graph* g, int64_t* selection, int* found) {
  if (auto bad = require(g && found, "null argument")) return bad;
  return guarded([&] {
    const auto result = opca::find_multicolored_clique(g->value);
    *found = result.has_value() ? 1 : 0;
    if (result && selection) {
      for (std::size_t s = 0; s < result->size(); ++s) {
        selection[s] = static_cast<int64_t>((*result)[s]);
      }
    }
  });
}

void opca_graph_destroy(opca_graph* g) { delete g; }

opca_status opca_hardness_build(const opca_graph* g, double omega, opca_hard_bundle** out) {
  if (auto bad = require(g && out, "null argument")) return bad;
  return guarded([&] {
    opca::HardnessBundle bundle = opca::build_hard_instance(g->value, omega);
    auto* handle = new opca_hard_bundle{std::move(bundle), {opca::Instance(opca::Matrix(0, 0), 0, 0)}};
    handle->instance_view.value = handle->value.instance;
    *out = handle;
  });
}

const opca_instance* opca_hard_bundle_instance(const opca_hard_bundle* b) {
  return b ? &b->instance_view : nullptr;
}
double opca_hard_bundle_diag_scale(const opca_hard_bundle* b) {
  return b ? b->value.diag_scale : 0.0;
}
double opca_hard_bundle_edge_scale(const opca_hard_bundle* b) {
  return b ? b->value.edge_scale : 0.0;
}
double opca_hard_bundle_yes_bound(const opca_hard_bundle* b) {
  return b ? b->value.yes_bound : 0.0;
}
double opca_hard_bundle_gap_bound(const opca_hard_bundle* b) {
  return b ? b->value.gap_bound : 0.0;
}
double opca_hard_bundle_omega(const opca_hard_bundle* b) { return b ? b->value.omega : 0.0; }
int64_t opca_hard_bundle_edge_count(const opca_hard_bundle* b) {
  return b ? static_cast<int64_t>(b->value.edges.size()) : 0;
}
int64_t opca_hard_bundle_edge_row(const opca_hard_bundle* b, int64_t edge) {
  if (!b || edge < 0 || edge >= static_cast<int64_t>(b->value.edge_rows.size())) return -1;
  return static_cast<int64_t>(b->value.edge_rows[edge]);
}

opca_status opca_hard_bundle_write_json(const opca_hard_bundle* b, const char* path) {
  if (auto bad = require(b && path, "null argument")) return bad;
  return guarded([&] { opca::write_bundle_json(path, b->value); });
}

void opca_hard_bundle_destroy(opca_hard_bundle* b) { delete b; }

opca_status opca_hardness_certificate(const opca_hard_bundle* b, const opca_graph* g,
                                      const int64_t* selection, opca_solution** out) {
  if (auto bad = require(b && g && selection && out, "null argument")) return bad;
  return guarded([&] {
    std::vector<std::size_t> sel;
    sel.reserve(b->value.colors);
    for (std::size_t s = 0; s < b->value.colors; ++s) {
      sel.push_back(as_size(selection[s], "selection entry"));
    }
    const opca::CliqueCertificate cert =
        opca::build_certificate(g->value, sel, b->value.omega);
    *out = new opca_solution{opca::certificate_solution(b->value, cert)};
  });
}

opca_status opca_hardness_check_gap(const opca_hard_bundle* b, double achieved_cost,
                                    int solver_exact, opca_gap_decision* decision) {
  if (auto bad = require(b && decision, "null argument")) return bad;
  return guarded([&] {
    switch (opca::check_gap(b->value, achieved_cost, solver_exact != 0)) {
      case opca::GapDecision::Yes: *decision = OPCA_GAP_YES; break;
      case opca::GapDecision::No: *decision = OPCA_GAP_NO; break;
      case opca::GapDecision::Indeterminate: *decision = OPCA_GAP_INDETERMINATE; break;
    }
  });
}

}  // extern "C"
