#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrangement.hpp"
#include "hardness.hpp"
#include "io.hpp"
#include "oracle.hpp"

using namespace opca;

namespace {

Matrix line_cloud_with_outlier() {
  return Matrix::from_rows({{-0.5763, -0.4971},
                            {-1.0606, -0.9408},
                            {-0.0914, -0.1326},
                            {0.4123, 0.2850},
                            {1.5009, 1.5670},
                            {-1.0224, -1.0361},
                            {0.8172, 0.9383},
                            {-1.1646, -1.2677},
                            {0.3191, 0.1952},
                            {0.5238, 0.6348},
                            {-3.5000, 2.5000}});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

// Drop the one line that legitimately differs between identical runs.
std::string without_wall_time(const std::string& record) {
  std::string out;
  std::size_t start = 0;
  while (start < record.size()) {
    std::size_t end = record.find('\n', start);
    if (end == std::string::npos) end = record.size();
    const std::string line = record.substr(start, end - start);
    if (line.find("wallMs") == std::string::npos) {
      out += line;
      out += '\n';
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("format_real round-trips doubles exactly") {
  const double values[] = {0.0,      1.0 / 3.0, 0.045916167764513363, -3.5,
                           1e-300,   0.1,       33.5,                 6.02e23,
                           std::atan2(7.0, -3.0)};
  for (double v : values) {
    const std::string text = format_real(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("CSV rows parse with comments and blanks") {
  write_text_file("io_test_rows.csv",
                  "# comment line\n"
                  "1.5,2\n"
                  "\n"
                  "-3.25,0.5\n");
  const Matrix m = read_csv_rows("io_test_rows.csv");
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 1.5);
  CHECK(m(1, 1) == 0.5);

  write_text_file("io_test_ragged.csv", "1,2\n3\n");
  CHECK(code_of([] { read_csv_rows("io_test_ragged.csv"); }) == ErrorCode::ParseError);
  write_text_file("io_test_empty.csv", "# nothing\n");
  CHECK(code_of([] { read_csv_rows("io_test_empty.csv"); }) == ErrorCode::ParseError);
  write_text_file("io_test_token.csv", "1,banana\n");
  CHECK(code_of([] { read_csv_rows("io_test_token.csv"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_csv_rows("io_test_does_not_exist.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("instance JSON round trip is bit exact") {
  const Instance original(line_cloud_with_outlier(), 1, 1);
  write_instance_json("io_test_inst.json", original, "{\"note\":\"fixture\"}");
  const LoadedInstance loaded = read_instance_json("io_test_inst.json");

  CHECK(loaded.instance.rank == 1);
  CHECK(loaded.instance.outliers == 1);
  REQUIRE(loaded.instance.data.rows() == 11);
  REQUIRE(loaded.instance.data.cols() == 2);
  CHECK(loaded.instance.data.data() == original.data.data());
  CHECK(nlohmann::json::parse(loaded.meta_json)["note"] == "fixture");

  // A second write from the loaded instance reproduces the file byte for byte.
  write_instance_json("io_test_inst2.json", loaded.instance, loaded.meta_json);
  CHECK(read_text_file("io_test_inst2.json") == read_text_file("io_test_inst.json"));
}

TEST_CASE("instance JSON validates its fields") {
  write_text_file("io_test_bad1.json", "{\"d\": 2, \"r\": 1, \"k\": 1}");
  CHECK(code_of([] { read_instance_json("io_test_bad1.json"); }) == ErrorCode::ParseError);
  write_text_file("io_test_bad2.json",
                  "{\"d\": 2, \"r\": 1, \"k\": 1, \"rows\": [[1, 2], [3]]}");
  CHECK(code_of([] { read_instance_json("io_test_bad2.json"); }) == ErrorCode::ParseError);
  write_text_file("io_test_bad3.json",
                  "{\"d\": 2, \"r\": 3, \"k\": 0, \"rows\": [[1, 2]]}");
  CHECK(code_of([] { read_instance_json("io_test_bad3.json"); }) ==
        ErrorCode::InvalidArgument);
  write_text_file("io_test_bad4.json", "not json at all");
  CHECK(code_of([] { read_instance_json("io_test_bad4.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("graph files parse and normalize") {
  write_text_file("io_test_graph.txt",
                  "# transversal test graph\n"
                  "4 2\n"
                  "\n"
                  "1 1 2 1\n"
                  "3 2 1 1\n");
  const CliqueInstance g = read_graph("io_test_graph.txt");
  CHECK(g.colors == 4);
  CHECK(g.per_color == 2);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[1].color_a == 1);  // reversed line got normalized
  CHECK(g.edges[1].color_b == 3);
  CHECK(g.edges[1].index_b == 2);

  write_text_file("io_test_graph_bad1.txt", "4\n1 1 2 1\n");
  CHECK(code_of([] { read_graph("io_test_graph_bad1.txt"); }) == ErrorCode::ParseError);
  write_text_file("io_test_graph_bad2.txt", "4 2\n1 1 2\n");
  CHECK(code_of([] { read_graph("io_test_graph_bad2.txt"); }) == ErrorCode::ParseError);
  write_text_file("io_test_graph_bad3.txt", "4 2\n1 5 2 1\n");
  CHECK(code_of([] { read_graph("io_test_graph_bad3.txt"); }) == ErrorCode::ParseError);
}

TEST_CASE("result records are byte-stable apart from wall time") {
  const Instance inst(line_cloud_with_outlier(), 1, 1);
  const SolveOutcome out = solve(inst, SolverConfig{});
  RunStats stats{out.candidates, out.distinct_subsets, out.boundary_angles, 1.25};
  const std::string first = result_record(out.best, stats, "exact2d");
  stats.wall_ms = 98.75;
  const std::string second = result_record(out.best, stats, "exact2d");
  CHECK(first != second);
  CHECK(without_wall_time(first) == without_wall_time(second));

  const nlohmann::json doc = nlohmann::json::parse(first);
  CHECK(doc["mode"] == "exact2d");
  CHECK(doc["outlierSet"] == nlohmann::json::array({10}));
  CHECK(doc["candidates"] == out.candidates);
  CHECK(doc["distinctSubsets"] == out.distinct_subsets);
  CHECK(doc["boundaryAngles"] == out.boundary_angles);
  CHECK(doc["basis"].size() == 1);
}

TEST_CASE("solution files round trip through verify") {
  const Instance inst(line_cloud_with_outlier(), 1, 1);
  const SolveOutcome out = solve(inst, SolverConfig{});
  RunStats stats{out.candidates, out.distinct_subsets, out.boundary_angles, 0.0};
  write_text_file("io_test_sol.json", result_record(out.best, stats, "exact2d"));

  const Solution loaded = read_solution_json(inst, "io_test_sol.json");
  CHECK(loaded.cost == out.best.cost);  // 17 significant digits survive
  CHECK(loaded.outlier_set == out.best.outlier_set);
  const VerifyReport report = verify(inst, loaded);
  CHECK(report.feasible);

  // Tampering with the stored cost is caught on reload.
  std::string tampered = read_text_file("io_test_sol.json");
  const std::size_t at = tampered.find("\"cost\": ");
  tampered.replace(at, std::string("\"cost\": ").size(), "\"cost\": 9");
  write_text_file("io_test_sol_bad.json", tampered);
  const Solution bad = read_solution_json(inst, "io_test_sol_bad.json");
  CHECK_FALSE(verify(inst, bad).feasible);
}

TEST_CASE("solution files validate structure") {
  const Instance inst(line_cloud_with_outlier(), 1, 1);
  write_text_file("io_test_sol1.json",
                  "{\"cost\": 0, \"outlierSet\": [3, 3], \"basis\": [[1, 0]]}");
  CHECK(code_of([&] { read_solution_json(inst, "io_test_sol1.json"); }) ==
        ErrorCode::ParseError);
  write_text_file("io_test_sol2.json",
                  "{\"cost\": 0, \"outlierSet\": [3], \"basis\": [[1, 1]]}");
  CHECK(code_of([&] { read_solution_json(inst, "io_test_sol2.json"); }) ==
        ErrorCode::ParseError);
  write_text_file("io_test_sol3.json",
                  "{\"cost\": 0, \"outlierSet\": [3], \"basis\": [[1, 0], [0, 1]]}");
  CHECK(code_of([&] { read_solution_json(inst, "io_test_sol3.json"); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("cell dumps write one JSON object per cell") {
  const Instance inst(Matrix::from_rows({{3.5, 3}, {-3.5, 0}}), 1, 1);
  std::vector<DumpedCell> dump;
  solve(inst, SolverConfig{}, &dump);
  REQUIRE(dump.size() == 8);
  write_cell_dump("io_test_cells.jsonl", dump);

  const std::string text = read_text_file("io_test_cells.jsonl");
  std::size_t arcs = 0, boundaries = 0, lines = 0, start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) break;
    const nlohmann::json cell = nlohmann::json::parse(text.substr(start, end - start));
    ++lines;
    if (cell["kind"] == "arc") ++arcs;
    if (cell["kind"] == "boundary") ++boundaries;
    CHECK(cell.contains("witness"));
    CHECK(cell.contains("witnessMode"));
    CHECK(cell.contains("signSummary"));
    CHECK(cell.contains("outlierSet"));
    CHECK(cell.contains("cost"));
    CHECK(cell["signSummary"].get<std::string>().size() == 1);  // one pair
    start = end + 1;
  }
  CHECK(lines == 8);
  CHECK(arcs == 4);
  CHECK(boundaries == 4);
}

TEST_CASE("bundle files carry the gadget parameters") {
  const HardnessBundle bundle = build_hard_instance(complete_multipartite(4, 1), 1.0);
  write_bundle_json("io_test_bundle.json", bundle);
  const LoadedInstance loaded = read_instance_json("io_test_bundle.json");
  CHECK(loaded.instance.point_count() == 30);
  CHECK(loaded.instance.dim() == 8);
  CHECK(loaded.instance.rank == 4);
  CHECK(loaded.instance.outliers == 0);
  CHECK(loaded.instance.data.data() == bundle.instance.data.data());

  const nlohmann::json meta = nlohmann::json::parse(loaded.meta_json);
  CHECK(meta["a"] == 600.0);
  CHECK(meta["c"] == 5400.0);
  CHECK(meta["D"] == 24.0);
  CHECK(meta["Dprime"] == 24.0);
  CHECK(meta["colors"] == 4);
  CHECK(meta["perColor"] == 1);
  CHECK(meta["edgeRows"].size() == 6);
}
