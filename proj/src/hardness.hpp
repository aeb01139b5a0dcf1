#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "model.hpp"

namespace opca {

// A graph whose vertices are partitioned into color classes of equal size,
// with edges only across colors. Colors and vertex indices are 1-based.
// The reduction below turns the search for a clique containing one vertex of
// every color into an outlier-PCA instance with a built-in cost gap, so these
// graphs double as hard-instance generators.
struct CliqueInstance {
  struct Edge {
    std::size_t color_a = 0;
    std::size_t index_a = 0;
    std::size_t color_b = 0;
    std::size_t index_b = 0;
  };

  std::size_t colors = 0;     // r, at least 4
  std::size_t per_color = 0;  // n, vertices per color
  std::vector<Edge> edges;    // normalized color_a < color_b, no duplicates

  CliqueInstance(std::size_t colors_in, std::size_t per_color_in, std::vector<Edge> edges_in);

  bool has_edge(std::size_t s, std::size_t i, std::size_t t, std::size_t j) const;
};

// All cross-color pairs present.
CliqueInstance complete_multipartite(std::size_t colors, std::size_t per_color);

// Complete multipartite minus every edge between the first two colors. Any
// transversal clique would need one of the removed edges, so the result has
// none, while the remaining edge count keeps the reduction's outlier budget
// nonnegative for per_color >= 2.
CliqueInstance clique_free_multipartite(std::size_t colors, std::size_t per_color);

// Exhaustive search over the per_color^colors transversals; returns the
// 1-based vertex selection of the first clique found, ordered by color.
std::optional<std::vector<std::size_t>> find_multicolored_clique(const CliqueInstance& g);

// The generated instance plus everything needed to interpret costs against
// it. Row layout of the data matrix: colors rows per graph-derived block,
// one block per edge (scaled identities on both column halves), then one row
// per edge carrying the vertex encodings. All entries are exact integers.
struct HardnessBundle {
  Instance instance;
  double diag_scale = 0.0;    // a, the identity block scale
  double edge_scale = 0.0;    // c = 9a, the edge row multiplier
  double yes_bound = 0.0;     // D: a clique forces an optimum at or below this
  double gap_bound = 0.0;     // D' = omega * D: costs above this certify "no clique"
  double omega = 1.0;         // gap width factor, at least 1
  std::size_t colors = 0;
  std::size_t per_color = 0;
  std::vector<CliqueInstance::Edge> edges;  // in data row order
  std::vector<std::size_t> edge_rows;       // data row of each edge
};

// Builds the reduction instance for the graph. Parameters:
//   a  = 4 * (colors + 1)^2 * m * n^2 * omega
//   c  = 9a
//   k  = m - C(colors, 2)   (NegativeBudget when the graph has too few edges)
//   D  = colors * m * n^2,  D' = omega * D
// where m is the edge count and n the class size. The data matrix is
// (colors + 1) * m rows by 2 * colors columns. Entry magnitudes must stay
// exactly representable in a double (InvalidArgument otherwise).
HardnessBundle build_hard_instance(const CliqueInstance& g, double omega);

// Certificate extracted from a clique selection (one 1-based vertex index per
// color): the low-rank part rewrites each identity block with the selected
// indices shaved off the diagonal and keeps exactly the clique's edge rows;
// the sparse part absorbs the other edge rows. Its cost is
// m * sum(selection^2), an exact integer at most D.
struct CliqueCertificate {
  std::vector<std::size_t> selection;
  Matrix low_rank;
  Matrix sparse;
  double cost = 0.0;
};

// NotAClique when the selection does not induce a complete cross-color
// subgraph.
CliqueCertificate build_certificate(const CliqueInstance& g,
                                    std::span<const std::size_t> selection, double omega);

// The certificate as a Solution against bundle.instance, with the orthogonal
// row basis of the rewritten blocks.
Solution certificate_solution(const HardnessBundle& bundle, const CliqueCertificate& cert);

enum class GapDecision { Yes, No, Indeterminate };

// Reads an achieved cost against the gap: at or below D' means a clique
// exists; above D' means no clique, but only an exact solver is entitled to
// that conclusion.
GapDecision check_gap(const HardnessBundle& bundle, double achieved_cost, bool solver_exact);

}  // namespace opca
