// Command line front-end. Everything goes through the public C API so this
// file doubles as a usage example for the shared library.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opca/opca.h"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

int exit_code_for(opca_status status) {
  switch (status) {
    case OPCA_OK:
      return 0;
    case OPCA_ERROR_BUDGET_EXCEEDED:
    case OPCA_ERROR_DIMENSION_UNSUPPORTED:
    case OPCA_ERROR_NEGATIVE_BUDGET:
      return kExitBudget;
    default:
      return kExitBadInput;
  }
}

int report_failure(opca_status status) {
  std::fprintf(stderr, "error: %s: %s\n", opca_status_name(status),
               opca_last_error_message());
  return exit_code_for(status);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct InstanceDeleter {
  void operator()(opca_instance* p) const { opca_instance_destroy(p); }
};
using InstancePtr = std::unique_ptr<opca_instance, InstanceDeleter>;

// CSV needs rank/outliers from flags; JSON carries them but flags still win.
int load_instance(const std::string& path, const int64_t* rank, const int64_t* outliers,
                  InstancePtr& out) {
  opca_instance* raw = nullptr;
  if (ends_with(path, ".csv")) {
    if (!rank || !outliers) {
      std::fprintf(stderr, "error: CSV input needs --rank and --outliers\n");
      return kExitBadInput;
    }
    const opca_status st = opca_instance_read_csv(path.c_str(), *rank, *outliers, &raw);
    if (st != OPCA_OK) return report_failure(st);
  } else {
    const opca_status st = opca_instance_read_json(path.c_str(), &raw);
    if (st != OPCA_OK) return report_failure(st);
    if (rank || outliers) {
      const int64_t r = rank ? *rank : opca_instance_rank(raw);
      const int64_t k = outliers ? *outliers : opca_instance_outliers(raw);
      const opca_status set = opca_instance_set_params(raw, r, k);
      if (set != OPCA_OK) {
        opca_instance_destroy(raw);
        return report_failure(set);
      }
    }
  }
  out.reset(raw);
  return 0;
}

int run_solve(const std::string& instance_path, const std::string& mode,
              const int64_t* rank, const int64_t* outliers, uint64_t budget, uint64_t seed,
              double zero_tol, const std::string& rep, unsigned threads,
              const std::string& out_path, const std::string& dump_path) {
  InstancePtr inst;
  if (int rc = load_instance(instance_path, rank, outliers, inst)) return rc;

  opca_solver_config cfg;
  opca_solver_config_init(&cfg);
  cfg.sample_budget = budget;
  cfg.seed = seed;
  cfg.zero_tol = zero_tol;
  cfg.threads = threads;
  if (mode == "exact2d") {
    cfg.mode = OPCA_MODE_EXACT_2D;
  } else if (mode == "sample") {
    cfg.mode = OPCA_MODE_SAMPLE;
  } else {
    cfg.mode = OPCA_MODE_BRUTE;
  }
  if (rep == "span") {
    cfg.rep_choice = OPCA_REP_SPAN;
  } else if (rep == "complement") {
    cfg.rep_choice = OPCA_REP_COMPLEMENT;
  }
  if (const char* cap = std::getenv("OPCA_ENUM_CAP")) {
    cfg.enum_cap = std::strtoull(cap, nullptr, 10);
  }

  opca_solution* sol = nullptr;
  opca_solve_stats stats;
  const opca_status st = opca_solve(inst.get(), &cfg,
                                    dump_path.empty() ? nullptr : dump_path.c_str(), &sol,
                                    &stats);
  if (st != OPCA_OK) return report_failure(st);

  char* record = nullptr;
  const opca_status rec_st = opca_solution_record(sol, &stats, mode.c_str(), &record);
  if (rec_st != OPCA_OK) {
    opca_solution_destroy(sol);
    return report_failure(rec_st);
  }
  if (out_path.empty()) {
    std::fputs(record, stdout);
  } else {
    const opca_status w = opca_solution_write_json(sol, &stats, mode.c_str(),
                                                   out_path.c_str());
    if (w != OPCA_OK) {
      opca_string_free(record);
      opca_solution_destroy(sol);
      return report_failure(w);
    }
    const int64_t k = opca_solution_outlier_count(sol);
    std::printf("cost=%.17g outliers=%lld record=%s\n", opca_solution_cost(sol),
                static_cast<long long>(k), out_path.c_str());
  }
  opca_string_free(record);
  opca_solution_destroy(sol);
  return 0;
}

int run_gen_hard(const std::string& graph_path, double omega, const std::string& out_path) {
  opca_graph* graph = nullptr;
  opca_status st = opca_graph_read(graph_path.c_str(), &graph);
  if (st != OPCA_OK) return report_failure(st);

  opca_hard_bundle* bundle = nullptr;
  st = opca_hardness_build(graph, omega, &bundle);
  opca_graph_destroy(graph);
  if (st != OPCA_OK) return report_failure(st);

  st = opca_hard_bundle_write_json(bundle, out_path.c_str());
  if (st != OPCA_OK) {
    opca_hard_bundle_destroy(bundle);
    return report_failure(st);
  }
  const opca_instance* inst = opca_hard_bundle_instance(bundle);
  std::printf("a=%.17g c=%.17g D=%.17g Dprime=%.17g k=%lld rows=%lld cols=%lld out=%s\n",
              opca_hard_bundle_diag_scale(bundle), opca_hard_bundle_edge_scale(bundle),
              opca_hard_bundle_yes_bound(bundle), opca_hard_bundle_gap_bound(bundle),
              static_cast<long long>(opca_instance_outliers(inst)),
              static_cast<long long>(opca_instance_rows(inst)),
              static_cast<long long>(opca_instance_cols(inst)), out_path.c_str());
  opca_hard_bundle_destroy(bundle);
  return 0;
}

int run_verify(const std::string& instance_path, const std::string& solution_path,
               const int64_t* rank, const int64_t* outliers, double tol) {
  InstancePtr inst;
  if (int rc = load_instance(instance_path, rank, outliers, inst)) return rc;

  opca_solution* sol = nullptr;
  opca_status st = opca_solution_read_json(inst.get(), solution_path.c_str(), &sol);
  if (st != OPCA_OK) return report_failure(st);

  opca_verify_report report;
  st = opca_verify(inst.get(), sol, tol, &report);
  opca_solution_destroy(sol);
  if (st != OPCA_OK) return report_failure(st);

  std::printf("feasible=%d\n", report.feasible);
  std::printf("storedCost=%.17g\n", report.stored_cost);
  std::printf("recomputedCost=%.17g\n", report.recomputed_cost);
  std::printf("costError=%.17g\n", report.cost_error);
  std::printf("costOk=%d\n", report.cost_ok);
  std::printf("sparsityOk=%d sparseRows=%lld\n", report.sparsity_ok,
              static_cast<long long>(report.sparse_row_count));
  std::printf("supportOk=%d\n", report.support_ok);
  std::printf("rankOk=%d maxLowRankResidualSq=%.17g\n", report.rank_ok,
              report.max_low_rank_residual_sq);
  std::printf("basisOk=%d shapeOk=%d\n", report.basis_ok, report.shape_ok);
  return report.feasible ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outlier-robust PCA solver and hard-instance generator"};
  app.require_subcommand(1);

  // solve
  std::string instance_path, mode = "exact2d", rep = "auto", out_path, dump_path;
  int64_t rank_flag = 0, outliers_flag = 0;
  bool have_rank = false, have_outliers = false;
  uint64_t budget = 1000, seed = 0;
  double zero_tol = 1e-10;
  unsigned threads = 1;

  CLI::App* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("instance", instance_path, "instance file (.csv or .json)")->required();
  solve->add_option("--mode", mode, "exact2d, sample, or brute")
      ->check(CLI::IsMember({"exact2d", "sample", "brute"}));
  solve->add_option("--rank", rank_flag, "subspace rank (required for CSV)")
      ->each([&](const std::string&) { have_rank = true; });
  solve->add_option("--outliers", outliers_flag, "outlier budget (required for CSV)")
      ->each([&](const std::string&) { have_outliers = true; });
  solve->add_option("--budget", budget, "sample frames in sample mode");
  solve->add_option("--seed", seed, "sampling seed");
  solve->add_option("--zero-tol", zero_tol, "sign classification tolerance");
  solve->add_option("--rep", rep, "subspace representation: auto, span, complement")
      ->check(CLI::IsMember({"auto", "span", "complement"}));
  solve->add_option("--threads", threads, "worker threads for candidate evaluation");
  solve->add_option("--out", out_path, "write the result record here instead of stdout");
  solve->add_option("--dump-cells", dump_path, "write one JSON line per candidate cell");

  // gen-hard
  std::string graph_path, hard_out;
  double omega = 1.0;
  CLI::App* gen = app.add_subcommand("gen-hard", "build a clique-gadget instance");
  gen->add_option("graph", graph_path, "multipartite graph file")->required();
  gen->add_option("--omega", omega, "gap width factor, at least 1");
  gen->add_option("--out", hard_out, "output instance JSON")->required();

  // verify
  std::string v_instance, v_solution;
  double tol = 1e-9;
  int64_t v_rank = 0, v_outliers = 0;
  bool v_have_rank = false, v_have_outliers = false;
  CLI::App* verify = app.add_subcommand("verify", "check a result record against its instance");
  verify->add_option("instance", v_instance, "instance file (.csv or .json)")->required();
  verify->add_option("solution", v_solution, "result record to check")->required();
  verify->add_option("--tol", tol, "relative tolerance for the cost check");
  verify->add_option("--rank", v_rank, "subspace rank (required for CSV)")
      ->each([&](const std::string&) { v_have_rank = true; });
  verify->add_option("--outliers", v_outliers, "outlier budget (required for CSV)")
      ->each([&](const std::string&) { v_have_outliers = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  if (solve->parsed()) {
    return run_solve(instance_path, mode, have_rank ? &rank_flag : nullptr,
                     have_outliers ? &outliers_flag : nullptr, budget, seed, zero_tol, rep,
                     threads, out_path, dump_path);
  }
  if (gen->parsed()) {
    return run_gen_hard(graph_path, omega, hard_out);
  }
  return run_verify(v_instance, v_solution, v_have_rank ? &v_rank : nullptr,
                    v_have_outliers ? &v_outliers : nullptr, tol);
}
