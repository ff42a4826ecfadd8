// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace relent {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw validation_error("document is not valid JSON");
  }
  return doc;
}

const json& require_field(const json& doc, const char* key,
                          const std::string& path) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw validation_error(path + ": missing required field '" + key + "'");
  }
  return doc.at(key);
}

int require_int(const json& value, const std::string& path) {
  if (!value.is_number_integer()) {
    throw validation_error(path + ": expected an integer");
  }
  return value.get<int>();
}

double require_number(const json& value, const std::string& path) {
  if (!value.is_number()) {
    throw validation_error(path + ": expected a number");
  }
  return value.get<double>();
}

bool optional_bool(const json& doc, const char* key, bool fallback,
                   const std::string& path) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_boolean()) {
    throw validation_error(path + "." + key + ": expected a boolean");
  }
  return doc.at(key).get<bool>();
}

Complex parse_complex(const json& value, const std::string& path) {
  if (!value.is_object()) {
    throw validation_error(path + ": expected an object with 're' and 'im'");
  }
  double re = 0.0, im = 0.0;
  if (value.contains("re")) re = require_number(value.at("re"), path + ".re");
  if (value.contains("im")) im = require_number(value.at("im"), path + ".im");
  return Complex(re, im);
}

json complex_to_json(const Complex& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

LoadedState parse_state_json(const std::string& text, double tol) {
  const json doc = parse_document(text);
  const std::string path = "state";
  const int local_dim = require_int(require_field(doc, "n", path), path + ".n");
  const int num_particles =
      require_int(require_field(doc, "N", path), path + ".N");
  if (local_dim < 2) {
    throw validation_error(path + ".n: local dimension must be >= 2");
  }
  if (num_particles < 1) {
    throw validation_error(path + ".N: particle count must be >= 1");
  }
  const json& stat_field = require_field(doc, "statistics", path);
  if (!stat_field.is_string()) {
    throw validation_error(path + ".statistics: expected a string");
  }
  const Statistics statistics =
      statistics_from_string(stat_field.get<std::string>());

  const json& amp_field = require_field(doc, "amplitudes", path);
  if (!amp_field.is_array() || amp_field.empty()) {
    throw validation_error(path + ".amplitudes: expected a non-empty array");
  }
  const long long dim = checked_power(local_dim, num_particles);
  ComplexVector amplitudes = ComplexVector::Zero(dim);
  std::vector<int> indices(num_particles);
  for (std::size_t k = 0; k < amp_field.size(); ++k) {
    const std::string entry_path =
        path + ".amplitudes[" + std::to_string(k) + "]";
    const json& entry = amp_field.at(k);
    const json& idx_field = require_field(entry, "indices", entry_path);
    if (!idx_field.is_array() ||
        idx_field.size() != static_cast<std::size_t>(num_particles)) {
      throw validation_error(entry_path + ".indices: expected " +
                             std::to_string(num_particles) + " entries");
    }
    for (int p = 0; p < num_particles; ++p) {
      const std::string idx_path =
          entry_path + ".indices[" + std::to_string(p) + "]";
      indices[p] = require_int(idx_field.at(p), idx_path);
      if (indices[p] < 0 || indices[p] >= local_dim) {
        throw validation_error(idx_path + ": index " +
                               std::to_string(indices[p]) +
                               " out of range for n = " +
                               std::to_string(local_dim));
      }
    }
    double re = 0.0, im = 0.0;
    if (entry.contains("re")) re = require_number(entry.at("re"), entry_path + ".re");
    if (entry.contains("im")) im = require_number(entry.at("im"), entry_path + ".im");
    amplitudes[flatten_uniform(indices, local_dim)] += Complex(re, im);
  }

  LoadedState loaded;
  loaded.statistics = statistics;
  loaded.state =
      make_provisional_state(local_dim, num_particles, std::move(amplitudes));

  const bool symmetrize_flag = optional_bool(doc, "symmetrize", false, path);
  const bool normalize_flag = optional_bool(doc, "normalize", false, path);
  if (symmetrize_flag) {
    loaded.state = symmetrize(loaded.state, statistics);
    if (loaded.state.amplitudes.norm() <= tol) {
      throw validation_error(
          path + ": symmetrization annihilated the state (forbidden occupation "
                 "for the declared statistics)");
    }
  } else {
    const double norm = loaded.state.amplitudes.norm();
    if (norm > 0.0 &&
        symmetrization_defect(loaded.state, statistics) > tol * norm) {
      throw validation_error(
          path + ": amplitudes are not " +
          std::string(statistics == Statistics::Fermion ? "antisymmetric"
                                                        : "symmetric") +
          "; set symmetrize=true to project them");
    }
  }
  if (normalize_flag) {
    const double norm = loaded.state.amplitudes.norm();
    if (norm <= tol) {
      throw validation_error(path + ": cannot normalize a zero state");
    }
    loaded.state.amplitudes /= norm;
  }
  return loaded;
}

LoadedState load_state(const std::string& path, double tol) {
  return parse_state_json(read_text_file(path), tol);
}

std::string write_state_json(const ProvisionalState& state,
                             Statistics statistics) {
  json amplitudes = json::array();
  std::vector<int> digits(state.num_particles);
  for (long long idx = 0; idx < state.amplitudes.size(); ++idx) {
    const Complex value = state.amplitudes[idx];
    if (value == Complex(0.0, 0.0)) continue;
    unflatten_uniform(idx, state.local_dim, digits);
    amplitudes.push_back(json{{"indices", digits},
                              {"re", value.real()},
                              {"im", value.imag()}});
  }
  const json doc = {{"n", state.local_dim},
                    {"N", state.num_particles},
                    {"statistics", to_string(statistics)},
                    {"amplitudes", amplitudes},
                    {"normalize", false},
                    {"symmetrize", false}};
  return doc.dump(2) + "\n";
}

MeasurementSetup parse_setup_json(const std::string& text,
                                  Statistics statistics, double tol) {
  const json doc = parse_document(text);
  const std::string path = "setup";

  if (doc.contains("statistics")) {
    const json& field = doc.at("statistics");
    if (!field.is_string()) {
      throw validation_error(path + ".statistics: expected a string");
    }
    const Statistics declared =
        statistics_from_string(field.get<std::string>());
    if (declared != statistics) {
      throw validation_error(path + ".statistics: document declares " +
                             std::string(to_string(declared)) +
                             " but the state uses " + to_string(statistics));
    }
  }

  const json& part_field = require_field(doc, "partition", path);
  if (!part_field.is_array() || part_field.empty()) {
    throw validation_error(path + ".partition: expected a non-empty array of blocks");
  }
  std::vector<std::vector<int>> blocks;
  int max_label = -1;
  for (std::size_t i = 0; i < part_field.size(); ++i) {
    const std::string block_path =
        path + ".partition[" + std::to_string(i) + "]";
    const json& block = part_field.at(i);
    if (!block.is_array()) {
      throw validation_error(block_path + ": expected an array of particle labels");
    }
    std::vector<int> members;
    for (std::size_t k = 0; k < block.size(); ++k) {
      const int label = require_int(
          block.at(k), block_path + "[" + std::to_string(k) + "]");
      members.push_back(label);
      max_label = std::max(max_label, label);
    }
    blocks.push_back(std::move(members));
  }

  const json& sub_field = require_field(doc, "subspaces", path);
  if (!sub_field.is_array() || sub_field.empty()) {
    throw validation_error(path + ".subspaces: expected a non-empty array");
  }
  std::vector<std::vector<ComplexVector>> spans;
  int ambient_dim = -1;
  for (std::size_t i = 0; i < sub_field.size(); ++i) {
    const std::string sub_path = path + ".subspaces[" + std::to_string(i) + "]";
    const json& subspace = sub_field.at(i);
    if (!subspace.is_array() || subspace.empty()) {
      throw validation_error(sub_path + ": expected a non-empty array of vectors");
    }
    std::vector<ComplexVector> vectors;
    for (std::size_t v = 0; v < subspace.size(); ++v) {
      const std::string vec_path = sub_path + "[" + std::to_string(v) + "]";
      const json& vec = subspace.at(v);
      if (!vec.is_array() || vec.empty()) {
        throw validation_error(vec_path + ": expected a non-empty array of {re, im} entries");
      }
      if (ambient_dim == -1) {
        ambient_dim = static_cast<int>(vec.size());
      } else if (static_cast<int>(vec.size()) != ambient_dim) {
        throw validation_error(vec_path + ": vector length " +
                               std::to_string(vec.size()) +
                               " differs from ambient dimension " +
                               std::to_string(ambient_dim));
      }
      ComplexVector entry(ambient_dim);
      for (int k = 0; k < ambient_dim; ++k) {
        entry[k] =
            parse_complex(vec.at(k), vec_path + "[" + std::to_string(k) + "]");
      }
      vectors.push_back(std::move(entry));
    }
    spans.push_back(std::move(vectors));
  }

  Partition partition = validate_partition(std::move(blocks), max_label + 1);
  OrthogonalStructure structure =
      validate_orthogonal_structure(spans, ambient_dim, tol);
  return validate_setup(std::move(partition), std::move(structure), statistics,
                        tol);
}

MeasurementSetup load_setup(const std::string& path, Statistics statistics,
                            double tol) {
  return parse_setup_json(read_text_file(path), statistics, tol);
}

std::string write_setup_json(const MeasurementSetup& setup) {
  json subspaces = json::array();
  for (const ComplexMatrix& sub : setup.structure.subspaces) {
    json vectors = json::array();
    for (Eigen::Index j = 0; j < sub.cols(); ++j) {
      json vec = json::array();
      for (Eigen::Index k = 0; k < sub.rows(); ++k) {
        vec.push_back(complex_to_json(sub(k, j)));
      }
      vectors.push_back(std::move(vec));
    }
    subspaces.push_back(std::move(vectors));
  }
  const json doc = {{"partition", setup.partition.blocks},
                    {"subspaces", subspaces},
                    {"statistics", to_string(setup.statistics)}};
  return doc.dump(2) + "\n";
}

std::string report_json(const EntanglementReport& report,
                        const MeasurementSetup& setup,
                        const std::optional<MixedReport>& mixed) {
  json schmidt = json::object();
  for (const auto& [block, result] : report.schmidt) {
    json coefficients = json::array();
    for (Eigen::Index k = 0; k < result.coefficients.size(); ++k) {
      coefficients.push_back(result.coefficients[k]);
    }
    schmidt[std::to_string(block)] = std::move(coefficients);
  }

  json block_sizes = json::array(), subspace_dims = json::array();
  for (int i = 0; i < setup.num_blocks(); ++i) {
    block_sizes.push_back(setup.block_size(i));
    subspace_dims.push_back(setup.subspace_dim(i));
  }

  json doc = {{"verdict", to_string(report.verdict)},
              {"weight", report.weight},
              {"schmidt", std::move(schmidt)},
              {"block_purities", report.block_purities},
              {"setup_summary",
               {{"s", setup.num_blocks()},
                {"block_sizes", std::move(block_sizes)},
                {"subspace_dims", std::move(subspace_dims)},
                {"complement_dim", setup.structure.complement_dim()},
                {"M", setup.normalization}}}};
  if (report.squared_concurrence.has_value()) {
    doc["squared_concurrence"] = *report.squared_concurrence;
  } else {
    doc["squared_concurrence"] = nullptr;
  }
  if (mixed.has_value()) {
    json cuts = json::array();
    for (const PptEntry& entry : mixed->cuts) {
      cuts.push_back(json{{"cut", entry.cut},
                          {"min_eigenvalue", entry.min_eigenvalue},
                          {"verdict", entry.violates ? "violates" : "passes"}});
    }
    doc["mixed"] = {{"weight", mixed->weight},
                    {"filtered", mixed->filtered},
                    {"ppt", std::move(cuts)},
                    {"note", mixed->note}};
  }
  return doc.dump(2) + "\n";
}

std::string format_csv_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

class CsvFile {
 public:
  explicit CsvFile(const std::string& path)
      : file_(std::fopen(path.c_str(), "wb")) {
    if (file_ == nullptr) {
      throw validation_error("cannot open '" + path + "' for writing");
    }
  }
  ~CsvFile() {
    if (file_ != nullptr) std::fclose(file_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void line(const std::string& text) {
    if (std::fputs(text.c_str(), file_) == EOF || std::fputc('\n', file_) == EOF) {
      throw std::runtime_error("short write to CSV file");
    }
  }

 private:
  std::FILE* file_;
};

}  // namespace

void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows) {
  CsvFile csv(path);
  csv.line("theta,weight,concurrence,closed_form,residual");
  for (const SweepRow& row : rows) {
    csv.line(format_csv_double(row.theta) + "," +
             format_csv_double(row.weight) + "," +
             format_csv_double(row.concurrence) + "," +
             format_csv_double(row.closed_form) + "," +
             format_csv_double(row.residual));
  }
}

void write_cloud_csv(const std::string& path, const CloudResult& result) {
  CsvFile csv(path);
  csv.line("sample_id,lambda1,lambda2,lambda3,weight,stream");
  for (const CloudRow& row : result.rows) {
    csv.line(std::to_string(row.sample_id) + "," +
             format_csv_double(row.lambda1) + "," +
             format_csv_double(row.lambda2) + "," +
             format_csv_double(row.lambda3) + "," +
             format_csv_double(row.weight) + "," + std::to_string(row.stream));
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw validation_error("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("short write to '" + path + "'");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw validation_error("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace relent
