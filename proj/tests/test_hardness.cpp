#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "hardness.hpp"
#include "oracle.hpp"

using namespace opca;

namespace {

using Edge = CliqueInstance::Edge;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("graph edges are normalized and validated") {
  // Reversed input comes out color-sorted.
  const CliqueInstance g(4, 2, {{3, 1, 1, 2}});
  CHECK(g.edges[0].color_a == 1);
  CHECK(g.edges[0].index_a == 2);
  CHECK(g.edges[0].color_b == 3);
  CHECK(g.edges[0].index_b == 1);
  CHECK(g.has_edge(1, 2, 3, 1));
  CHECK(g.has_edge(3, 1, 1, 2));
  CHECK_FALSE(g.has_edge(1, 1, 3, 1));

  CHECK(code_of([] { CliqueInstance(3, 1, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { CliqueInstance(4, 0, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { CliqueInstance(4, 2, {{1, 1, 1, 2}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { CliqueInstance(4, 2, {{1, 3, 2, 1}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] {
          CliqueInstance(4, 2, {{1, 1, 2, 1}, {2, 1, 1, 1}});
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("complete multipartite graphs have every cross pair") {
  CHECK(complete_multipartite(4, 1).edges.size() == 6);
  CHECK(complete_multipartite(4, 2).edges.size() == 24);
  CHECK(complete_multipartite(5, 3).edges.size() == 90);
}

TEST_CASE("transversal clique search") {
  const auto k4 = find_multicolored_clique(complete_multipartite(4, 1));
  REQUIRE(k4.has_value());
  CHECK(*k4 == std::vector<std::size_t>{1, 1, 1, 1});

  const auto full = find_multicolored_clique(complete_multipartite(4, 2));
  REQUIRE(full.has_value());

  const CliqueInstance gap_free = clique_free_multipartite(4, 2);
  CHECK(gap_free.edges.size() == 20);
  CHECK_FALSE(find_multicolored_clique(gap_free).has_value());
}

TEST_CASE("gadget parameters on the single-vertex complete graph") {
  const HardnessBundle bundle = build_hard_instance(complete_multipartite(4, 1), 1.0);
  CHECK(bundle.diag_scale == 600.0);
  CHECK(bundle.edge_scale == 5400.0);
  CHECK(bundle.yes_bound == 24.0);
  CHECK(bundle.gap_bound == 24.0);
  CHECK(bundle.instance.rank == 4);
  CHECK(bundle.instance.outliers == 0);
  CHECK(bundle.instance.point_count() == 30);
  CHECK(bundle.instance.dim() == 8);

  // Identity blocks: row s of every block is the block scale at both halves.
  const Matrix& data = bundle.instance.data;
  for (std::size_t block = 0; block < 6; ++block) {
    for (std::size_t s = 0; s < 4; ++s) {
      const auto row = data.row(block * 4 + s);
      for (std::size_t col = 0; col < 8; ++col) {
        const double expect = (col == s || col == 4 + s) ? 600.0 : 0.0;
        CHECK(row[col] == expect);
      }
    }
  }
  // Edge rows carry the endpoint encodings at the endpoint colors.
  REQUIRE(bundle.edge_rows.size() == 6);
  for (std::size_t e = 0; e < 6; ++e) {
    CHECK(bundle.edge_rows[e] == 24 + e);
    const auto& edge = bundle.edges[e];
    const auto row = data.row(24 + e);
    CHECK(row[edge.color_a - 1] == 5400.0 * (600.0 - 1.0));
    CHECK(row[edge.color_b - 1] == 5400.0 * (600.0 - 1.0));
    CHECK(row[4 + edge.color_a - 1] == 5400.0 * 600.0);
    CHECK(row[4 + edge.color_b - 1] == 5400.0 * 600.0);
    double zeros = 0.0;
    for (std::size_t col = 0; col < 8; ++col) zeros += (row[col] == 0.0) ? 1 : 0;
    CHECK(zeros == 4);
  }
}

TEST_CASE("gadget parameters scale with class size") {
  const HardnessBundle bundle = build_hard_instance(complete_multipartite(4, 2), 1.0);
  CHECK(bundle.diag_scale == 9600.0);  // 4 * 25 * 24 * 4
  CHECK(bundle.edge_scale == 86400.0);
  CHECK(bundle.yes_bound == 384.0);  // 4 * 24 * 4
  CHECK(bundle.instance.outliers == 18);
  CHECK(bundle.instance.point_count() == 120);
  CHECK(bundle.instance.dim() == 8);
}

TEST_CASE("gadget rejects graphs with too few edges") {
  // One edge short of a full pair cover.
  std::vector<Edge> edges;
  for (const auto& e : complete_multipartite(4, 1).edges) {
    if (!(e.color_a == 3 && e.color_b == 4)) edges.push_back(e);
  }
  const CliqueInstance sparse_graph(4, 1, std::move(edges));
  CHECK(code_of([&] { build_hard_instance(sparse_graph, 1.0); }) ==
        ErrorCode::NegativeBudget);
}

TEST_CASE("gadget rejects parameters past exact double range") {
  const CliqueInstance g = complete_multipartite(4, 1);
  CHECK(code_of([&] { build_hard_instance(g, 1e5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { build_hard_instance(g, 0.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("certificate on the single-vertex complete graph") {
  const CliqueInstance g = complete_multipartite(4, 1);
  const HardnessBundle bundle = build_hard_instance(g, 1.0);
  const CliqueCertificate cert = build_certificate(g, std::vector<std::size_t>{1, 1, 1, 1},
                                                   1.0);
  CHECK(cert.cost == 24.0);  // m * sum of squared indices, exactly D here
  const Solution sol = certificate_solution(bundle, cert);
  CHECK(sol.outlier_set.empty());

  const VerifyReport report = verify(bundle.instance, sol);
  CHECK(report.feasible);
  CHECK(report.recomputed_cost == 24.0);  // all-integer arithmetic stays exact
  CHECK(check_gap(bundle, brute_force(bundle.instance).cost, true) == GapDecision::Yes);
}

TEST_CASE("certificate on the two-per-class graph") {
  const CliqueInstance g = complete_multipartite(4, 2);
  const HardnessBundle bundle = build_hard_instance(g, 1.0);

  const CliqueCertificate low = build_certificate(g, std::vector<std::size_t>{1, 1, 1, 1},
                                                  1.0);
  CHECK(low.cost == 96.0);
  const Solution sol = certificate_solution(bundle, low);
  CHECK(sol.outlier_set.size() == 18);
  const VerifyReport report = verify(bundle.instance, sol);
  CHECK(report.feasible);
  CHECK(report.recomputed_cost == 96.0);
  CHECK(check_gap(bundle, low.cost, false) == GapDecision::Yes);

  // The heaviest selection lands exactly on the yes bound.
  const CliqueCertificate high = build_certificate(g, std::vector<std::size_t>{2, 2, 2, 2},
                                                   1.0);
  CHECK(high.cost == 384.0);
  CHECK(check_gap(bundle, high.cost, false) == GapDecision::Yes);
}

TEST_CASE("certificate demands a clique") {
  const CliqueInstance g = clique_free_multipartite(4, 2);
  CHECK(code_of([&] {
          build_certificate(g, std::vector<std::size_t>{1, 1, 1, 1}, 1.0);
        }) == ErrorCode::NotAClique);

  const CliqueInstance full = complete_multipartite(4, 2);
  CHECK(code_of([&] {
          build_certificate(full, std::vector<std::size_t>{1, 1, 1}, 1.0);
        }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] {
          build_certificate(full, std::vector<std::size_t>{1, 1, 1, 3}, 1.0);
        }) == ErrorCode::BadIndex);
}

TEST_CASE("kept edge rows decompose over the rewritten blocks") {
  const CliqueInstance g = complete_multipartite(4, 2);
  const HardnessBundle bundle = build_hard_instance(g, 1.0);
  const std::vector<std::size_t> selection{2, 1, 2, 1};
  const CliqueCertificate cert = build_certificate(g, selection, 1.0);

  const double c = bundle.edge_scale;
  std::size_t kept = 0;
  for (std::size_t e = 0; e < bundle.edges.size(); ++e) {
    const auto row = cert.low_rank.row(bundle.edge_rows[e]);
    if (norm_sq(row) == 0.0) continue;
    ++kept;
    const auto& edge = bundle.edges[e];
    // Exact integer identity: edge row = c * (block row s + block row t).
    for (std::size_t col = 0; col < 8; ++col) {
      const double combined = c * (cert.low_rank(edge.color_a - 1, col) +
                                   cert.low_rank(edge.color_b - 1, col));
      CHECK(row[col] == combined);
    }
  }
  CHECK(kept == 6);
  CHECK(cert.cost == 24.0 * (4.0 + 1.0 + 4.0 + 1.0));
}

TEST_CASE("check_gap reads costs against the gap bound") {
  const HardnessBundle bundle = build_hard_instance(complete_multipartite(4, 1), 1.0);
  CHECK(check_gap(bundle, 0.0, false) == GapDecision::Yes);
  CHECK(check_gap(bundle, 24.0, false) == GapDecision::Yes);
  CHECK(check_gap(bundle, 24.5, true) == GapDecision::No);
  CHECK(check_gap(bundle, 24.5, false) == GapDecision::Indeterminate);
  CHECK(code_of([&] { check_gap(bundle, -1.0, true); }) == ErrorCode::InvalidArgument);
}
