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
#include "seqiso/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "seqiso/errors.hpp"

namespace seqiso::io {

namespace {

using Index = Eigen::Index;

std::string format_double(double x) {
    if (x == 0.0 && std::signbit(x)) {
        return "-0.0";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool is_scalar(const Json &v) { return !v.is_array() && !v.is_object(); }

void dump_into(const Json &v, int depth, std::string &out) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto &[key, item] : v.items()) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += inner + Json(key).dump() + ": ";
            dump_into(item, depth + 1, out);
        }
        out += "\n" + pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::all_of(v.begin(), v.end(), is_scalar);
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) {
                    out += ", ";
                }
                dump_into(v[i], depth + 1, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) {
                out += ",\n";
            }
            out += inner;
            dump_into(v[i], depth + 1, out);
        }
        out += "\n" + pad + "]";
        return;
    }
    case Json::value_t::number_float:
        out += format_double(v.get<double>());
        return;
    default:
        out += v.dump();
        return;
    }
}

const Json &require(const Json &obj, const char *key) {
    if (!obj.is_object()) {
        throw FormatError("expected a JSON object at top level");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(std::string("missing field '") + key + "'");
    }
    return *it;
}

std::size_t count_field(const Json &obj, const char *key) {
    const Json &v = require(obj, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw FormatError(std::string("field '") + key +
                          "': expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

double number_field(const Json &obj, const char *key) {
    const Json &v = require(obj, key);
    if (!v.is_number()) {
        throw FormatError(std::string("field '") + key + "': expected a number");
    }
    return v.get<double>();
}

Complex complex_from_json(const Json &v, const std::string &field) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number()) {
        throw FormatError("field '" + field +
                          "': expected [re, im] pair of numbers");
    }
    const Complex z{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw FormatError("field '" + field + "': non-finite entry");
    }
    return z;
}

Json complex_to_json(const Complex &z) {
    return Json::array({z.real(), z.imag()});
}

} // namespace

std::string dump(const Json &value) {
    std::string out;
    dump_into(value, 0, out);
    out += "\n";
    return out;
}

Json parse(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        std::size_t line = 1, column = 1;
        const std::size_t limit = std::min(e.byte, text.size() + 1);
        for (std::size_t i = 0; i + 1 < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw FormatError(std::string(source) + ":" + std::to_string(line) +
                          ":" + std::to_string(column) +
                          ": JSON syntax error");
    }
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json &value, const std::string &field) {
    if (!value.is_array() || value.empty()) {
        throw FormatError("field '" + field +
                          "': expected a non-empty array of rows");
    }
    const std::size_t rows = value.size();
    if (!value[0].is_array() || value[0].empty()) {
        throw FormatError("field '" + field +
                          "[0]': expected a non-empty array of entries");
    }
    const std::size_t cols = value[0].size();
    ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        if (!value[r].is_array() || value[r].size() != cols) {
            throw FormatError("field '" + row_field + "': expected " +
                              std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) = complex_from_json(
                value[r][c], row_field + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

Json vector_to_json(const ComplexVector &v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v[i]));
    }
    return out;
}

ComplexVector vector_from_json(const Json &value, const std::string &field) {
    if (!value.is_array() || value.empty()) {
        throw FormatError("field '" + field +
                          "': expected a non-empty array of [re, im] pairs");
    }
    ComplexVector v(static_cast<Index>(value.size()));
    for (std::size_t i = 0; i < value.size(); ++i) {
        v[static_cast<Index>(i)] =
            complex_from_json(value[i], field + "[" + std::to_string(i) + "]");
    }
    return v;
}

Json isometry_to_json(const Isometry &u) {
    Json out = Json::object();
    out["m_qubits"] = u.m_in();
    out["n_qubits"] = u.n_out();
    out["matrix"] = matrix_to_json(u.matrix());
    return out;
}

Isometry isometry_from_json(const Json &value) try {
    const std::size_t m = count_field(value, "m_qubits");
    const std::size_t n = count_field(value, "n_qubits");
    if (m < 1 || m > n || n > 24) {
        throw FormatError("fields 'm_qubits'/'n_qubits': need 1 <= m <= n <= 24");
    }
    ComplexMatrix matrix = matrix_from_json(require(value, "matrix"), "matrix");
    if (matrix.rows() != static_cast<Index>(std::size_t{1} << n) ||
        matrix.cols() != static_cast<Index>(std::size_t{1} << m)) {
        throw FormatError("field 'matrix': expected " +
                          std::to_string(std::size_t{1} << n) + "x" +
                          std::to_string(std::size_t{1} << m) + ", got " +
                          std::to_string(matrix.rows()) + "x" +
                          std::to_string(matrix.cols()));
    }
    return Isometry(m, n, std::move(matrix));
} catch (const Json::exception &e) {
    throw FormatError(std::string("malformed operator: ") + e.what());
}

Json report_to_json(const SequentialityReport &report) {
    Json out = Json::object();
    out["implementable"] = report.implementable;
    out["per_site_residuals"] = report.per_site_residuals;
    out["max_residual"] = report.max_residual();
    out["bond_dims"] = report.bond_dims;
    out["ancilla_dim_if_yes"] = report.ancilla_dim_if_yes
                                    ? Json(*report.ancilla_dim_if_yes)
                                    : Json(nullptr);
    out["crit_tol"] = report.crit_tol;
    out["rank_tol"] = report.rank_tol;
    return out;
}

Json plan_to_json(const PlanFile &file) {
    const SequentialPlan &plan = file.plan;
    Json out = Json::object();
    out["ancilla_dim"] = plan.ancilla_dim;
    out["m_in"] = plan.m_in;
    out["n_qubits"] = plan.n_sites();
    out["bond_dims"] = plan.bond_dims;
    out["initial_ancilla"] = plan.initial_ancilla;
    out["final_ancilla"] = plan.final_ancilla;
    Json steps = Json::array();
    for (const auto &step : plan.steps) {
        steps.push_back(matrix_to_json(step));
    }
    out["steps"] = std::move(steps);
    Json report = Json::object();
    report["implementable"] = file.report.implementable;
    report["residuals"] = file.report.residuals;
    report["verification_error"] = file.report.verification_error;
    report["decoupling_residual"] = file.report.decoupling_residual;
    report["crit_tol"] = file.report.crit_tol;
    report["rank_tol"] = file.report.rank_tol;
    out["report"] = std::move(report);
    return out;
}

PlanFile plan_from_json(const Json &value) try {
    PlanFile file;
    SequentialPlan &plan = file.plan;
    plan.ancilla_dim = count_field(value, "ancilla_dim");
    plan.m_in = count_field(value, "m_in");
    const std::size_t n = count_field(value, "n_qubits");
    if (value.contains("initial_ancilla")) {
        plan.initial_ancilla = count_field(value, "initial_ancilla");
    }
    if (value.contains("final_ancilla")) {
        plan.final_ancilla = count_field(value, "final_ancilla");
    }
    if (value.contains("bond_dims")) {
        const Json &b = value["bond_dims"];
        if (!b.is_array()) {
            throw FormatError("field 'bond_dims': expected an array");
        }
        for (const auto &x : b) {
            if (!x.is_number_unsigned()) {
                throw FormatError("field 'bond_dims': expected integers");
            }
            plan.bond_dims.push_back(x.get<std::size_t>());
        }
    }
    const Json &steps = require(value, "steps");
    if (!steps.is_array() || steps.size() != n) {
        throw FormatError("field 'steps': expected " + std::to_string(n) +
                          " step matrices");
    }
    for (std::size_t k = 0; k < steps.size(); ++k) {
        ComplexMatrix step =
            matrix_from_json(steps[k], "steps[" + std::to_string(k) + "]");
        const auto dim = static_cast<Index>(2 * plan.ancilla_dim);
        if (step.rows() != dim || step.cols() != dim) {
            throw FormatError("field 'steps[" + std::to_string(k) +
                              "]': expected " + std::to_string(dim) + "x" +
                              std::to_string(dim));
        }
        plan.steps.push_back(std::move(step));
    }
    if (value.contains("report")) {
        const Json &r = value["report"];
        if (!r.is_object()) {
            throw FormatError("field 'report': expected an object");
        }
        if (r.contains("implementable")) {
            file.report.implementable = r["implementable"].get<bool>();
        }
        if (r.contains("residuals")) {
            file.report.residuals = r["residuals"].get<std::vector<double>>();
        }
        if (r.contains("verification_error")) {
            file.report.verification_error =
                number_field(r, "verification_error");
        }
        if (r.contains("decoupling_residual")) {
            file.report.decoupling_residual =
                number_field(r, "decoupling_residual");
        }
        if (r.contains("crit_tol")) {
            file.report.crit_tol = number_field(r, "crit_tol");
        }
        if (r.contains("rank_tol")) {
            file.report.rank_tol = number_field(r, "rank_tol");
        }
    }
    try {
        plan.validate();
    } catch (const ContractViolation &e) {
        throw FormatError(e.what());
    }
    return file;
} catch (const Json::exception &e) {
    throw FormatError(std::string("malformed plan: ") + e.what());
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
        throw FormatError("write failed for '" + path.string() + "'");
    }
}

Isometry read_operator_file(const std::filesystem::path &path) {
    return isometry_from_json(parse(read_text(path), path.string()));
}

void write_operator_file(const std::filesystem::path &path, const Isometry &u) {
    write_text(path, dump(isometry_to_json(u)));
}

PlanFile read_plan_file(const std::filesystem::path &path) {
    return plan_from_json(parse(read_text(path), path.string()));
}

void write_plan_file(const std::filesystem::path &path, const PlanFile &file) {
    write_text(path, dump(plan_to_json(file)));
}

} // namespace seqiso::io
