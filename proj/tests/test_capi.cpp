// Exercises the shared library strictly through the public C header, the way
// an external consumer would.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "opca/opca.h"

namespace {

const double kCloud[22] = {
    -0.5763, -0.4971, -1.0606, -0.9408, -0.0914, -0.1326, 0.4123,  0.2850,
    1.5009,  1.5670,  -1.0224, -1.0361, 0.8172,  0.9383,  -1.1646, -1.2677,
    0.3191,  0.1952,  0.5238,  0.6348,  -3.5000, 2.5000};

opca_instance* make_cloud_instance() {
  opca_instance* inst = nullptr;
  REQUIRE(opca_instance_create(kCloud, 11, 2, 1, 1, &inst) == OPCA_OK);
  return inst;
}

}  // namespace

TEST_CASE("library identifies itself") {
  CHECK(opca_version() != nullptr);
  CHECK(std::strcmp(opca_status_name(OPCA_OK), "Ok") == 0);
  CHECK(std::strcmp(opca_status_name(OPCA_ERROR_BUDGET_EXCEEDED), "BudgetExceeded") == 0);
}

TEST_CASE("instance accessors reflect construction") {
  opca_instance* inst = make_cloud_instance();
  CHECK(opca_instance_rows(inst) == 11);
  CHECK(opca_instance_cols(inst) == 2);
  CHECK(opca_instance_rank(inst) == 1);
  CHECK(opca_instance_outliers(inst) == 1);
  const double* data = opca_instance_data(inst);
  REQUIRE(data != nullptr);
  CHECK(data[20] == -3.5);
  CHECK(data[21] == 2.5);

  CHECK(opca_instance_set_params(inst, 1, 3) == OPCA_OK);
  CHECK(opca_instance_outliers(inst) == 3);
  CHECK(opca_instance_set_params(inst, 5, 1) == OPCA_ERROR_INVALID_ARGUMENT);
  CHECK(opca_last_error_message()[0] != '\0');
  opca_instance_destroy(inst);
}

TEST_CASE("instance creation validates input") {
  opca_instance* inst = nullptr;
  CHECK(opca_instance_create(nullptr, 2, 2, 1, 0, &inst) == OPCA_ERROR_INVALID_ARGUMENT);
  const double nan_data[4] = {0.0, 1.0, std::nan(""), 2.0};
  CHECK(opca_instance_create(nan_data, 2, 2, 1, 0, &inst) == OPCA_ERROR_INVALID_ARGUMENT);
  CHECK(opca_instance_read_csv("capi_missing.csv", 1, 0, &inst) == OPCA_ERROR_IO);
}

TEST_CASE("exact solve through the C surface") {
  opca_instance* inst = make_cloud_instance();
  opca_solver_config cfg;
  opca_solver_config_init(&cfg);
  CHECK(cfg.mode == OPCA_MODE_EXACT_2D);
  CHECK(cfg.threads == 1);

  opca_solution* sol = nullptr;
  opca_solve_stats stats;
  REQUIRE(opca_solve(inst, &cfg, nullptr, &sol, &stats) == OPCA_OK);
  CHECK(opca_solution_outlier_count(sol) == 1);
  int64_t outlier = -1;
  opca_solution_outliers(sol, &outlier);
  CHECK(outlier == 10);
  CHECK(opca_solution_cost(sol) > 0.0);
  CHECK(stats.distinct_subsets >= 2);
  CHECK(stats.boundary_angles > 0);
  CHECK(stats.wall_ms >= 0.0);

  REQUIRE(opca_solution_basis_rows(sol) == 1);
  double basis[2] = {0, 0};
  opca_solution_basis(sol, basis);
  CHECK(std::abs(basis[0] * basis[0] + basis[1] * basis[1] - 1.0) <= 1e-10);
  // The fitted direction has slope close to 1.
  CHECK(std::abs(basis[1] / basis[0] - 1.0) <= 0.15);

  std::vector<double> low_rank(22), sparse(22);
  opca_solution_low_rank(sol, low_rank.data());
  opca_solution_sparse(sol, sparse.data());
  CHECK(sparse[20] == -3.5);
  CHECK(low_rank[20] == 0.0);

  opca_verify_report report;
  REQUIRE(opca_verify(inst, sol, 1e-9, &report) == OPCA_OK);
  CHECK(report.feasible == 1);
  CHECK(report.cost_ok == 1);
  CHECK(report.sparse_row_count == 1);

  opca_solution_destroy(sol);
  opca_instance_destroy(inst);
}

TEST_CASE("solve reports mode errors through statuses") {
  const double flat[9] = {1, 0, 0, 0, 1, 0, 1, 1, 1};
  opca_instance* inst = nullptr;
  REQUIRE(opca_instance_create(flat, 3, 3, 1, 1, &inst) == OPCA_OK);
  opca_solver_config cfg;
  opca_solver_config_init(&cfg);
  opca_solution* sol = nullptr;
  CHECK(opca_solve(inst, &cfg, nullptr, &sol, nullptr) == OPCA_ERROR_DIMENSION_UNSUPPORTED);
  CHECK(opca_last_error_message()[0] != '\0');

  cfg.mode = OPCA_MODE_SAMPLE;
  cfg.sample_budget = 100;
  REQUIRE(opca_solve(inst, &cfg, nullptr, &sol, nullptr) == OPCA_OK);
  opca_solution_destroy(sol);
  opca_instance_destroy(inst);
}

TEST_CASE("brute force cap surfaces as a status") {
  std::vector<double> wide(60);
  for (std::size_t i = 0; i < wide.size(); ++i) wide[i] = static_cast<double>(i % 7);
  opca_instance* inst = nullptr;
  REQUIRE(opca_instance_create(wide.data(), 30, 2, 1, 15, &inst) == OPCA_OK);
  opca_solution* sol = nullptr;
  CHECK(opca_brute_force(inst, 1000, 1, &sol) == OPCA_ERROR_BUDGET_EXCEEDED);

  opca_solver_config cfg;
  opca_solver_config_init(&cfg);
  cfg.mode = OPCA_MODE_BRUTE;
  cfg.enum_cap = 1000;
  CHECK(opca_solve(inst, &cfg, nullptr, &sol, nullptr) == OPCA_ERROR_BUDGET_EXCEEDED);
  opca_instance_destroy(inst);
}

TEST_CASE("records and solution files round trip") {
  opca_instance* inst = make_cloud_instance();
  opca_solver_config cfg;
  opca_solver_config_init(&cfg);
  opca_solution* sol = nullptr;
  opca_solve_stats stats;
  REQUIRE(opca_solve(inst, &cfg, "capi_cells.jsonl", &sol, &stats) == OPCA_OK);

  char* record = nullptr;
  REQUIRE(opca_solution_record(sol, &stats, "exact2d", &record) == OPCA_OK);
  CHECK(std::string(record).find("\"outlierSet\": [10]") != std::string::npos);
  opca_string_free(record);

  REQUIRE(opca_solution_write_json(sol, &stats, "exact2d", "capi_sol.json") == OPCA_OK);
  opca_solution* loaded = nullptr;
  REQUIRE(opca_solution_read_json(inst, "capi_sol.json", &loaded) == OPCA_OK);
  CHECK(opca_solution_cost(loaded) == opca_solution_cost(sol));
  opca_verify_report report;
  REQUIRE(opca_verify(inst, loaded, 1e-9, &report) == OPCA_OK);
  CHECK(report.feasible == 1);

  opca_solution_destroy(loaded);
  opca_solution_destroy(sol);
  opca_instance_destroy(inst);
}

TEST_CASE("instance json io through the C surface") {
  opca_instance* inst = make_cloud_instance();
  REQUIRE(opca_instance_write_json(inst, "capi_inst.json") == OPCA_OK);
  opca_instance* loaded = nullptr;
  REQUIRE(opca_instance_read_json("capi_inst.json", &loaded) == OPCA_OK);
  CHECK(opca_instance_rows(loaded) == 11);
  CHECK(std::memcmp(opca_instance_data(loaded), opca_instance_data(inst),
                    22 * sizeof(double)) == 0);
  opca_instance_destroy(loaded);
  opca_instance_destroy(inst);
}

TEST_CASE("hardness pipeline through the C surface") {
  opca_graph* graph = nullptr;
  REQUIRE(opca_graph_complete_multipartite(4, 1, &graph) == OPCA_OK);
  CHECK(opca_graph_edge_count(graph) == 6);

  int found = 0;
  int64_t selection[4] = {0, 0, 0, 0};
  REQUIRE(opca_graph_find_clique(graph, selection, &found) == OPCA_OK);
  CHECK(found == 1);
  for (int64_t s : selection) CHECK(s == 1);

  opca_hard_bundle* bundle = nullptr;
  REQUIRE(opca_hardness_build(graph, 1.0, &bundle) == OPCA_OK);
  CHECK(opca_hard_bundle_diag_scale(bundle) == 600.0);
  CHECK(opca_hard_bundle_edge_scale(bundle) == 5400.0);
  CHECK(opca_hard_bundle_yes_bound(bundle) == 24.0);
  CHECK(opca_hard_bundle_gap_bound(bundle) == 24.0);
  CHECK(opca_hard_bundle_omega(bundle) == 1.0);
  CHECK(opca_hard_bundle_edge_count(bundle) == 6);
  CHECK(opca_hard_bundle_edge_row(bundle, 0) == 24);
  CHECK(opca_hard_bundle_edge_row(bundle, 9) == -1);

  const opca_instance* inst = opca_hard_bundle_instance(bundle);
  CHECK(opca_instance_rows(inst) == 30);
  CHECK(opca_instance_cols(inst) == 8);

  opca_solution* cert = nullptr;
  REQUIRE(opca_hardness_certificate(bundle, graph, selection, &cert) == OPCA_OK);
  CHECK(opca_solution_cost(cert) == 24.0);
  opca_verify_report report;
  REQUIRE(opca_verify(inst, cert, 1e-9, &report) == OPCA_OK);
  CHECK(report.feasible == 1);

  opca_gap_decision decision;
  REQUIRE(opca_hardness_check_gap(bundle, opca_solution_cost(cert), 0, &decision) ==
          OPCA_OK);
  CHECK(decision == OPCA_GAP_YES);
  REQUIRE(opca_hardness_check_gap(bundle, 25.0, 1, &decision) == OPCA_OK);
  CHECK(decision == OPCA_GAP_NO);
  REQUIRE(opca_hardness_check_gap(bundle, 25.0, 0, &decision) == OPCA_OK);
  CHECK(decision == OPCA_GAP_INDETERMINATE);

  opca_solution_destroy(cert);
  opca_hard_bundle_destroy(bundle);
  opca_graph_destroy(graph);
}

TEST_CASE("graph create validates edges") {
  const int64_t edges[4] = {1, 1, 1, 2};  // same color on both ends
  opca_graph* graph = nullptr;
  CHECK(opca_graph_create(4, 2, edges, 1, &graph) == OPCA_ERROR_INVALID_ARGUMENT);

  // A graph with too few edges passes creation but fails the reduction.
  const int64_t one_edge[4] = {1, 1, 2, 1};
  REQUIRE(opca_graph_create(4, 2, one_edge, 1, &graph) == OPCA_OK);
  opca_hard_bundle* bundle = nullptr;
  CHECK(opca_hardness_build(graph, 1.0, &bundle) == OPCA_ERROR_NEGATIVE_BUDGET);
  opca_graph_destroy(graph);
}

TEST_CASE("null arguments are rejected, not crashed on") {
  CHECK(opca_solve(nullptr, nullptr, nullptr, nullptr, nullptr) ==
        OPCA_ERROR_INVALID_ARGUMENT);
  CHECK(opca_instance_rows(nullptr) == 0);
  CHECK(opca_solution_cost(nullptr) == 0.0);
  opca_instance_destroy(nullptr);
  opca_solution_destroy(nullptr);
  opca_graph_destroy(nullptr);
  opca_hard_bundle_destroy(nullptr);
}
