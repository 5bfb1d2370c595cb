// Copyright 2026 The seqiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * JSON encodings of operators and plans.
 *
 * Complex numbers are [re, im] pairs. Matrices are arrays of rows. Numbers
 * are written with 17 significant digits, so a write/read cycle reproduces
 * every double exactly. Object keys are emitted in sorted order.
 *
 * Operator file:
 *   {"m_qubits": M, "n_qubits": N, "matrix": [[[re, im], ...], ...]}
 *   with 2^N rows (output index) and 2^M columns (input index).
 *
 * Plan file:
 *   {"ancilla_dim": D, "m_in": M, "n_qubits": N, "bond_dims": [...],
 *    "initial_ancilla": 0, "final_ancilla": 0,
 *    "steps": [2D x 2D matrices, one per site],
 *    "report": {"implementable", "residuals", "verification_error",
 *               "decoupling_residual", "crit_tol", "rank_tol"}}
 */
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seqiso/isometry.hpp"
#include "seqiso/linalg.hpp"
#include "seqiso/sequencer.hpp"

namespace seqiso::io {

using Json = nlohmann::json;

struct PlanReport {
    bool implementable = true;
    std::vector<double> residuals;
    double verification_error = 0.0;
    double decoupling_residual = 0.0;
    double crit_tol = kDefaultCritTol;
    double rank_tol = kDefaultRankTol;
};

struct PlanFile {
    SequentialPlan plan;
    PlanReport report;
};

/// Deterministic text form: sorted keys, %.17g numbers, arrays of scalars on
/// one line.
std::string dump(const Json &value);

/// Parses JSON text; syntax errors become FormatError with line and column.
Json parse(std::string_view text, std::string_view source = "<input>");

Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &value, const std::string &field);

Json vector_to_json(const ComplexVector &v);
ComplexVector vector_from_json(const Json &value, const std::string &field);

Json isometry_to_json(const Isometry &u);
/// FormatError for structural problems; ContractViolation if the matrix is
/// well formed but not an isometry.
Isometry isometry_from_json(const Json &value);

Json report_to_json(const SequentialityReport &report);

Json plan_to_json(const PlanFile &file);
PlanFile plan_from_json(const Json &value);

std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, const std::string &text);

Isometry read_operator_file(const std::filesystem::path &path);
void write_operator_file(const std::filesystem::path &path, const Isometry &u);
PlanFile read_plan_file(const std::filesystem::path &path);
void write_plan_file(const std::filesystem::path &path, const PlanFile &file);

} // namespace seqiso::io
