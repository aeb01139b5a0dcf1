#include "hardness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

namespace opca {

namespace {

using EdgeKey = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

EdgeKey key_of(const CliqueInstance::Edge& e) {
  return {e.color_a, e.index_a, e.color_b, e.index_b};
}

}  // namespace

CliqueInstance::CliqueInstance(std::size_t colors_in, std::size_t per_color_in,
                               std::vector<Edge> edges_in)
    : colors(colors_in), per_color(per_color_in), edges(std::move(edges_in)) {
  if (colors < 4) {
    fail(ErrorCode::InvalidArgument, "the construction needs at least 4 colors");
  }
  if (per_color == 0) {
    fail(ErrorCode::InvalidArgument, "color classes cannot be empty");
  }
  std::set<EdgeKey> seen;
  for (auto& e : edges) {
    if (e.color_a > e.color_b) {
      std::swap(e.color_a, e.color_b);
      std::swap(e.index_a, e.index_b);
    }
    if (e.color_a == e.color_b) {
      fail(ErrorCode::InvalidArgument, "edges must join distinct colors");
    }
    if (e.color_a < 1 || e.color_b > colors || e.index_a < 1 || e.index_a > per_color ||
        e.index_b < 1 || e.index_b > per_color) {
      fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (!seen.insert(key_of(e)).second) {
      fail(ErrorCode::InvalidArgument, "duplicate edge");
    }
  }
}

bool CliqueInstance::has_edge(std::size_t s, std::size_t i, std::size_t t,
                              std::size_t j) const {
  if (s > t) {
    std::swap(s, t);
    std::swap(i, j);
  }
  for (const auto& e : edges) {
    if (e.color_a == s && e.index_a == i && e.color_b == t && e.index_b == j) return true;
  }
  return false;
}

CliqueInstance complete_multipartite(std::size_t colors, std::size_t per_color) {
  std::vector<CliqueInstance::Edge> edges;
  for (std::size_t s = 1; s <= colors; ++s) {
    for (std::size_t t = s + 1; t <= colors; ++t) {
      for (std::size_t i = 1; i <= per_color; ++i) {
        for (std::size_t j = 1; j <= per_color; ++j) {
          edges.push_back({s, i, t, j});
        }
      }
    }
  }
  return CliqueInstance(colors, per_color, std::move(edges));
}

CliqueInstance clique_free_multipartite(std::size_t colors, std::size_t per_color) {
  const CliqueInstance full = complete_multipartite(colors, per_color);
  std::vector<CliqueInstance::Edge> edges;
  for (const auto& e : full.edges) {
    if (e.color_a == 1 && e.color_b == 2) continue;
    edges.push_back(e);
  }
  return CliqueInstance(colors, per_color, std::move(edges));
}

std::optional<std::vector<std::size_t>> find_multicolored_clique(const CliqueInstance& g) {
  std::set<EdgeKey> edge_set;
  for (const auto& e : g.edges) edge_set.insert(key_of(e));
  const auto connected = [&](std::size_t s, std::size_t i, std::size_t t, std::size_t j) {
    return edge_set.count({s, i, t, j}) != 0;
  };

  std::vector<std::size_t> pick(g.colors, 1);
  while (true) {
    bool clique = true;
    for (std::size_t s = 1; s <= g.colors && clique; ++s) {
      for (std::size_t t = s + 1; t <= g.colors && clique; ++t) {
        if (!connected(s, pick[s - 1], t, pick[t - 1])) clique = false;
      }
    }
    if (clique) return pick;
    // Odometer step through the transversals.
    std::size_t pos = g.colors;
    while (pos > 0 && pick[pos - 1] == g.per_color) {
      pick[pos - 1] = 1;
      --pos;
    }
    if (pos == 0) return std::nullopt;
    ++pick[pos - 1];
  }
}

namespace {

struct GadgetParams {
  double a = 0.0;
  double c = 0.0;
  std::size_t budget = 0;  // k
  double yes_bound = 0.0;  // D
};

GadgetParams gadget_params(const CliqueInstance& g, double omega) {
  if (omega < 1.0) {
    fail(ErrorCode::InvalidArgument, "the gap factor must be at least 1");
  }
  const double r = static_cast<double>(g.colors);
  const double n = static_cast<double>(g.per_color);
  const double m = static_cast<double>(g.edges.size());
  GadgetParams p;
  p.a = 4.0 * (r + 1.0) * (r + 1.0) * m * n * n * omega;
  p.c = 9.0 * p.a;
  const std::size_t pairs = g.colors * (g.colors - 1) / 2;
  if (g.edges.size() < pairs) {
    fail(ErrorCode::NegativeBudget,
         "graph needs at least " + std::to_string(pairs) +
             " edges to leave a nonnegative outlier budget");
  }
  p.budget = g.edges.size() - pairs;
  p.yes_bound = r * m * n * n;
  // Entries reach c * a; past 2^53 they stop being exact integers in a double
  // and the gap bookkeeping loses its meaning.
  if (p.c * p.a > 9007199254740992.0) {
    fail(ErrorCode::InvalidArgument, "gadget parameters overflow exact double range");
  }
  return p;
}

void fill_edge_row(std::span<double> row, const CliqueInstance::Edge& e,
                   const GadgetParams& p, std::size_t colors) {
  row[e.color_a - 1] = p.c * (p.a - static_cast<double>(e.index_a));
  row[e.color_b - 1] = p.c * (p.a - static_cast<double>(e.index_b));
  row[colors + e.color_a - 1] = p.c * p.a;
  row[colors + e.color_b - 1] = p.c * p.a;
}

}  // namespace

HardnessBundle build_hard_instance(const CliqueInstance& g, double omega) {
  const GadgetParams p = gadget_params(g, omega);
  const std::size_t r = g.colors;
  const std::size_t m = g.edges.size();
  const std::size_t d = 2 * r;
  Matrix data((r + 1) * m, d);

  // m blocks of scaled identities occupying both column halves.
  for (std::size_t block = 0; block < m; ++block) {
    for (std::size_t s = 0; s < r; ++s) {
      auto row = data.row(block * r + s);
      row[s] = p.a;
      row[r + s] = p.a;
    }
  }
  // One row per edge, encoding its endpoints against the block scale.
  const std::size_t base = m * r;
  std::vector<std::size_t> edge_rows(m);
  for (std::size_t e = 0; e < m; ++e) {
    fill_edge_row(data.row(base + e), g.edges[e], p, r);
    edge_rows[e] = base + e;
  }

  HardnessBundle bundle{Instance(std::move(data), r, p.budget),
                        p.a,
                        p.c,
                        p.yes_bound,
                        omega * p.yes_bound,
                        omega,
                        r,
                        g.per_color,
                        g.edges,
                        std::move(edge_rows)};
  return bundle;
}

CliqueCertificate build_certificate(const CliqueInstance& g,
                                    std::span<const std::size_t> selection, double omega) {
  if (selection.size() != g.colors) {
    fail(ErrorCode::InvalidArgument, "selection needs one vertex per color");
  }
  for (std::size_t s = 0; s < g.colors; ++s) {
    if (selection[s] < 1 || selection[s] > g.per_color) {
      fail(ErrorCode::BadIndex, "selected vertex out of range");
    }
  }
  for (std::size_t s = 1; s <= g.colors; ++s) {
    for (std::size_t t = s + 1; t <= g.colors; ++t) {
      if (!g.has_edge(s, selection[s - 1], t, selection[t - 1])) {
        fail(ErrorCode::NotAClique, "selected vertices are not pairwise adjacent");
      }
    }
  }

  const GadgetParams p = gadget_params(g, omega);
  const std::size_t r = g.colors;
  const std::size_t m = g.edges.size();
  const std::size_t d = 2 * r;
  Matrix low_rank((r + 1) * m, d);
  Matrix sparse((r + 1) * m, d);

  // Blocks: the diagonal loses the selected index on the left half, the right
  // half keeps the original scale. Every block row is then exactly the
  // vector the kept edge rows decompose over.
  for (std::size_t block = 0; block < m; ++block) {
    for (std::size_t s = 0; s < r; ++s) {
      auto row = low_rank.row(block * r + s);
      row[s] = p.a - static_cast<double>(selection[s]);
      row[r + s] = p.a;
    }
  }

  const std::size_t base = m * r;
  double selection_sq = 0.0;
  for (std::size_t s = 0; s < r; ++s) {
    selection_sq += static_cast<double>(selection[s] * selection[s]);
  }
  for (std::size_t e = 0; e < m; ++e) {
    const auto& edge = g.edges[e];
    const bool kept = edge.index_a == selection[edge.color_a - 1] &&
                      edge.index_b == selection[edge.color_b - 1];
    fill_edge_row(kept ? low_rank.row(base + e) : sparse.row(base + e), edge, p, r);
  }

  return {std::vector<std::size_t>(selection.begin(), selection.end()),
          std::move(low_rank), std::move(sparse),
          static_cast<double>(m) * selection_sq};
}

Solution certificate_solution(const HardnessBundle& bundle, const CliqueCertificate& cert) {
  const std::size_t r = bundle.colors;
  const std::size_t d = 2 * r;
  Matrix rows(r, d);
  for (std::size_t s = 0; s < r; ++s) {
    const double left = bundle.diag_scale - static_cast<double>(cert.selection[s]);
    const double norm = std::sqrt(left * left + bundle.diag_scale * bundle.diag_scale);
    rows(s, s) = left / norm;
    rows(s, r + s) = bundle.diag_scale / norm;
  }
  Frame basis(std::move(rows), 1e-10);

  std::vector<std::size_t> outliers;
  for (std::size_t e = 0; e < bundle.edges.size(); ++e) {
    const auto& edge = bundle.edges[e];
    const bool kept = edge.index_a == cert.selection[edge.color_a - 1] &&
                      edge.index_b == cert.selection[edge.color_b - 1];
    if (!kept) outliers.push_back(bundle.edge_rows[e]);
  }

  return {std::move(outliers), std::move(basis), cert.low_rank, cert.sparse, cert.cost};
}

GapDecision check_gap(const HardnessBundle& bundle, double achieved_cost,
                      bool solver_exact) {
  if (achieved_cost < 0.0 || !std::isfinite(achieved_cost)) {
    fail(ErrorCode::InvalidArgument, "achieved cost must be a finite nonnegative value");
  }
  if (achieved_cost <= bundle.gap_bound) return GapDecision::Yes;
  return solver_exact ? GapDecision::No : GapDecision::Indeterminate;
}

}  // namespace opca
