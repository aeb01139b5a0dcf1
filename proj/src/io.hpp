#pragma once

#include <string>
#include <vector>

#include "arrangement.hpp"
#include "hardness.hpp"
#include "model.hpp"
#include "oracle.hpp"

namespace opca {

// File formats. Reals are always written with 17 significant digits, which
// round-trips every double exactly; integer-valued data stays integer-valued
// text.
//
//   instance CSV    one data row per line, comma separated; rank and budget
//                   travel out of band
//   instance JSON   {"d": ..., "r": ..., "k": ..., "rows": [[...]], "meta": {...}}
//                   meta is optional and is carried through untouched
//   graph file      header "colors per_color", then one edge per line as
//                   "color_a index_a color_b index_b", 1-based; blank lines
//                   and '#' comments are skipped
//   result record   single JSON object; see result_record below
//   cell dump       one JSON object per line, one line per candidate cell

std::string format_real(double v);

Matrix read_csv_rows(const std::string& path);
Instance read_instance_csv(const std::string& path, std::size_t rank, std::size_t outliers);

struct LoadedInstance {
  Instance instance;
  std::string meta_json;  // raw meta subtree, empty when absent
};
LoadedInstance read_instance_json(const std::string& path);

// meta_json, when nonempty, must be a rendered JSON value and is embedded
// verbatim.
void write_instance_json(const std::string& path, const Instance& inst,
                         const std::string& meta_json = "");

CliqueInstance read_graph(const std::string& path);

// The bundle's instance with its parameters in the meta field.
void write_bundle_json(const std::string& path, const HardnessBundle& bundle);
std::string bundle_meta_json(const HardnessBundle& bundle);

struct RunStats {
  std::uint64_t candidates = 0;
  std::uint64_t distinct_subsets = 0;
  std::uint64_t boundary_angles = 0;
  double wall_ms = 0.0;
};

// {"mode", "cost", "outlierSet", "basis", "candidates", "distinctSubsets",
//  "boundaryAngles", "wallMs"}. Identical runs produce identical records
// apart from wallMs.
std::string result_record(const Solution& sol, const RunStats& stats,
                          const std::string& mode_name);

// Rebuilds a full Solution from a result record: kept rows are projected onto
// the recorded basis, outlier rows fill the sparse part. The record's cost is
// kept as stored so verification can catch tampering.
Solution read_solution_json(const Instance& inst, const std::string& path);

void write_cell_dump(const std::string& path, const std::vector<DumpedCell>& cells);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace opca
