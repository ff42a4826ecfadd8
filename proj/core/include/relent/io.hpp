// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "relent/entanglement.hpp"
#include "relent/experiments.hpp"

namespace relent {

// State documents carry the exchange statistics alongside the amplitudes.
struct LoadedState {
  ProvisionalState state;
  Statistics statistics = Statistics::Boson;
};

// JSON state document:
//   {"n": 4, "N": 2, "statistics": "fermion",
//    "amplitudes": [{"indices": [0, 2], "re": 1.0, "im": 0.0}, ...],
//    "normalize": true, "symmetrize": true}
// Repeated index tuples accumulate. With symmetrize=false the amplitudes
// must already lie in the declared exchange sector.
LoadedState parse_state_json(const std::string& text, double tol = kDefaultTol);
LoadedState load_state(const std::string& path, double tol = kDefaultTol);
std::string write_state_json(const ProvisionalState& state,
                             Statistics statistics);

// JSON setup document:
//   {"partition": [[0], [1]],
//    "subspaces": [[[{"re": ..., "im": ...}, ...], ...], ...],
//    "statistics": "fermion"}   // optional, must match when present
// Subspace vectors have one {re, im} entry per ambient dimension. Particle
// count is inferred from the partition labels, the ambient dimension from
// the vector length.
MeasurementSetup parse_setup_json(const std::string& text,
                                  Statistics statistics,
                                  double tol = kDefaultTol);
MeasurementSetup load_setup(const std::string& path, Statistics statistics,
                            double tol = kDefaultTol);
std::string write_setup_json(const MeasurementSetup& setup);

// Analysis report as pretty-printed JSON. Schmidt coefficient lists are
// keyed by block index; the mixed section is included when present.
std::string report_json(const EntanglementReport& report,
                        const MeasurementSetup& setup,
                        const std::optional<MixedReport>& mixed);

// CSV emission with 17 significant digits, locale independent, one header
// line, LF line endings.
void write_sweep_csv(const std::string& path,
                     std::span<const SweepRow> rows);
void write_cloud_csv(const std::string& path, const CloudResult& result);

std::string format_csv_double(double value);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace relent
