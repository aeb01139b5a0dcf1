#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace opca {

namespace {

using nlohmann::json;

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::ParseError, "invalid JSON in " + path);
  return doc;
}

double require_number(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_number()) {
    fail(ErrorCode::ParseError, std::string("missing numeric field \"") + field + "\"");
  }
  return doc[field].get<double>();
}

std::size_t require_count(const json& doc, const char* field) {
  const double v = require_number(doc, field);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    fail(ErrorCode::ParseError, std::string("field \"") + field + "\" must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

void append_row(std::string& out, std::span<const double> row) {
  out += '[';
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += format_real(row[i]);
  }
  out += ']';
}

void append_index_list(std::string& out, std::span<const std::size_t> idx) {
  out += '[';
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(idx[i]);
  }
  out += ']';
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::IoError, "short write to " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Matrix read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
      const char* b = cell.data();
      const char* e = b + cell.size();
      while (b < e && (*b == ' ' || *b == '\t')) ++b;
      while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t' || *(e - 1) == '\r')) --e;
      double value = 0.0;
      const auto res = std::from_chars(b, e, value);
      if (res.ec != std::errc{} || res.ptr != e) {
        fail(ErrorCode::ParseError,
             path + ":" + std::to_string(line_no) + ": bad numeric cell");
      }
      row.push_back(value);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::ParseError,
           path + ":" + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::ParseError, path + ": no data rows");
  return Matrix::from_rows(rows);
}

Instance read_instance_csv(const std::string& path, std::size_t rank,
                           std::size_t outliers) {
  return Instance(read_csv_rows(path), rank, outliers);
}

LoadedInstance read_instance_json(const std::string& path) {
  const json doc = parse_json_file(path);
  const std::size_t d = require_count(doc, "d");
  const std::size_t r = require_count(doc, "r");
  const std::size_t k = require_count(doc, "k");
  if (!doc.contains("rows") || !doc["rows"].is_array()) {
    fail(ErrorCode::ParseError, "missing \"rows\" array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["rows"]) {
    if (!row.is_array() || row.size() != d) {
      fail(ErrorCode::ParseError, "row length does not match \"d\"");
    }
    std::vector<double> vals;
    vals.reserve(d);
    for (const auto& v : row) {
      if (!v.is_number()) fail(ErrorCode::ParseError, "non-numeric entry in \"rows\"");
      vals.push_back(v.get<double>());
    }
    rows.push_back(std::move(vals));
  }
  std::string meta;
  if (doc.contains("meta")) meta = doc["meta"].dump();
  Matrix data = rows.empty() ? Matrix(0, d) : Matrix::from_rows(rows);
  return {Instance(std::move(data), r, k), std::move(meta)};
}

void write_instance_json(const std::string& path, const Instance& inst,
                         const std::string& meta_json) {
  std::string out;
  out += "{\n";
  out += "  \"d\": " + std::to_string(inst.dim()) + ",\n";
  out += "  \"r\": " + std::to_string(inst.rank) + ",\n";
  out += "  \"k\": " + std::to_string(inst.outliers) + ",\n";
  out += "  \"rows\": [";
  for (std::size_t i = 0; i < inst.point_count(); ++i) {
    if (i) out += ",";
    out += "\n    ";
    append_row(out, inst.data.row(i));
  }
  if (inst.point_count()) out += "\n  ";
  out += "]";
  if (!meta_json.empty()) {
    out += ",\n  \"meta\": " + meta_json;
  }
  out += "\n}\n";
  write_text_file(path, out);
}

CliqueInstance read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t colors = 0;
  std::size_t per_color = 0;
  std::vector<CliqueInstance::Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      if (!(fields >> colors >> per_color)) {
        fail(ErrorCode::ParseError,
             path + ":" + std::to_string(line_no) + ": expected \"colors per_color\"");
      }
      have_header = true;
      continue;
    }
    CliqueInstance::Edge e;
    if (!(fields >> e.color_a >> e.index_a >> e.color_b >> e.index_b)) {
      fail(ErrorCode::ParseError,
           path + ":" + std::to_string(line_no) + ": expected \"color index color index\"");
    }
    edges.push_back(e);
  }
  if (!have_header) fail(ErrorCode::ParseError, path + ": missing header line");
  try {
    return CliqueInstance(colors, per_color, std::move(edges));
  } catch (const Error& err) {
    fail(ErrorCode::ParseError, path + ": " + err.what());
  }
}

std::string bundle_meta_json(const HardnessBundle& bundle) {
  std::string out;
  out += "{\n";
  out += "    \"kind\": \"hardness\",\n";
  out += "    \"omega\": " + format_real(bundle.omega) + ",\n";
  out += "    \"a\": " + format_real(bundle.diag_scale) + ",\n";
  out += "    \"c\": " + format_real(bundle.edge_scale) + ",\n";
  out += "    \"D\": " + format_real(bundle.yes_bound) + ",\n";
  out += "    \"Dprime\": " + format_real(bundle.gap_bound) + ",\n";
  out += "    \"colors\": " + std::to_string(bundle.colors) + ",\n";
  out += "    \"perColor\": " + std::to_string(bundle.per_color) + ",\n";
  out += "    \"edges\": [";
  for (std::size_t e = 0; e < bundle.edges.size(); ++e) {
    const auto& edge = bundle.edges[e];
    if (e) out += ", ";
    out += "[" + std::to_string(edge.color_a) + ", " + std::to_string(edge.index_a) +
           ", " + std::to_string(edge.color_b) + ", " + std::to_string(edge.index_b) + "]";
  }
  out += "],\n";
  out += "    \"edgeRows\": ";
  std::string rows_list;
  append_index_list(rows_list, bundle.edge_rows);
  out += rows_list;
  out += "\n  }";
  return out;
}

void write_bundle_json(const std::string& path, const HardnessBundle& bundle) {
  write_instance_json(path, bundle.instance, bundle_meta_json(bundle));
}

std::string result_record(const Solution& sol, const RunStats& stats,
                          const std::string& mode_name) {
  std::string out;
  out += "{\n";
  out += "  \"mode\": \"" + mode_name + "\",\n";
  out += "  \"cost\": " + format_real(sol.cost) + ",\n";
  out += "  \"outlierSet\": ";
  append_index_list(out, sol.outlier_set);
  out += ",\n";
  out += "  \"basis\": [";
  for (std::size_t i = 0; i < sol.basis.count(); ++i) {
    if (i) out += ",";
    out += "\n    ";
    append_row(out, sol.basis.row(i));
  }
  if (sol.basis.count()) out += "\n  ";
  out += "],\n";
  out += "  \"candidates\": " + std::to_string(stats.candidates) + ",\n";
  out += "  \"distinctSubsets\": " + std::to_string(stats.distinct_subsets) + ",\n";
  out += "  \"boundaryAngles\": " + std::to_string(stats.boundary_angles) + ",\n";
  out += "  \"wallMs\": " + format_real(stats.wall_ms) + "\n";
  out += "}\n";
  return out;
}

Solution read_solution_json(const Instance& inst, const std::string& path) {
  const json doc = parse_json_file(path);
  const double cost = require_number(doc, "cost");
  if (!doc.contains("outlierSet") || !doc["outlierSet"].is_array()) {
    fail(ErrorCode::ParseError, "missing \"outlierSet\" array");
  }
  std::vector<std::size_t> outliers;
  for (const auto& v : doc["outlierSet"]) {
    if (!v.is_number_unsigned()) {
      fail(ErrorCode::ParseError, "outlier indices must be nonnegative integers");
    }
    outliers.push_back(v.get<std::size_t>());
  }
  std::sort(outliers.begin(), outliers.end());
  for (std::size_t i = 0; i < outliers.size(); ++i) {
    if (outliers[i] >= inst.point_count()) {
      fail(ErrorCode::ParseError, "outlier index out of range");
    }
    if (i > 0 && outliers[i] == outliers[i - 1]) {
      fail(ErrorCode::ParseError, "duplicate outlier index");
    }
  }
  if (!doc.contains("basis") || !doc["basis"].is_array() ||
      doc["basis"].size() != inst.rank) {
    fail(ErrorCode::ParseError, "basis must have exactly rank rows");
  }
  Matrix basis_rows(inst.rank, inst.dim());
  std::size_t at = 0;
  for (const auto& row : doc["basis"]) {
    if (!row.is_array() || row.size() != inst.dim()) {
      fail(ErrorCode::ParseError, "basis row length does not match the instance");
    }
    for (std::size_t c = 0; c < inst.dim(); ++c) {
      if (!row[c].is_number()) fail(ErrorCode::ParseError, "non-numeric basis entry");
      basis_rows(at, c) = row[c].get<double>();
    }
    ++at;
  }
  Frame basis = [&]() -> Frame {
    try {
      return Frame(std::move(basis_rows), 1e-6);
    } catch (const Error& err) {
      fail(ErrorCode::ParseError, std::string("basis rows are not orthonormal: ") + err.what());
    }
  }();

  const std::size_t n = inst.point_count();
  const std::size_t d = inst.dim();
  Matrix low_rank(n, d);
  Matrix sparse(n, d);
  std::size_t next_out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto src = inst.data.row(i);
    if (next_out < outliers.size() && outliers[next_out] == i) {
      ++next_out;
      auto s = sparse.row(i);
      std::copy(src.begin(), src.end(), s.begin());
      continue;
    }
    const auto proj = project_onto(basis, src);
    auto l = low_rank.row(i);
    std::copy(proj.begin(), proj.end(), l.begin());
  }
  return {std::move(outliers), std::move(basis), std::move(low_rank), std::move(sparse),
          cost};
}

void write_cell_dump(const std::string& path, const std::vector<DumpedCell>& cells) {
  std::string out;
  for (const auto& d : cells) {
    const auto& cell = d.cell;
    out += "{\"kind\": \"";
    switch (cell.kind) {
      case CellKind::Arc: out += "arc"; break;
      case CellKind::Boundary: out += "boundary"; break;
      case CellKind::Sample: out += "sample"; break;
    }
    out += "\", \"witnessMode\": \"";
    out += cell.witness.mode == RepMode::Span ? "span" : "complement";
    out += "\", \"witness\": [";
    for (std::size_t i = 0; i < cell.witness.frame.count(); ++i) {
      if (i) out += ", ";
      append_row(out, cell.witness.frame.row(i));
    }
    out += "], \"signSummary\": \"";
    for (std::int8_t s : cell.sign_summary) {
      out += s == 0 ? '0' : (s > 0 ? '+' : '-');
    }
    out += "\", \"outlierSet\": ";
    append_index_list(out, cell.outlier_set);
    out += ", \"cost\": " + format_real(d.cost);
    out += "}\n";
  }
  write_text_file(path, out);
}

}  // namespace opca
