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
#include "seqiso/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "seqiso/errors.hpp"
#include "seqiso/io.hpp"
#include "seqiso/mps.hpp"
#include "seqiso/oplib.hpp"
#include "seqiso/sequencer.hpp"

namespace seqiso::cli {

namespace {

using io::Json;

std::size_t parse_count(std::string_view text, std::string_view what) {
    std::size_t value = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw FormatError("invalid " + std::string(what) + " '" +
                          std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

Isometry product_from_spec(const std::string &arg) {
    std::vector<ComplexMatrix> factors;
    if (std::filesystem::is_regular_file(arg)) {
        const Json doc = io::parse(io::read_text(arg), arg);
        if (!doc.is_object() || !doc.contains("factors") ||
            !doc["factors"].is_array() || doc["factors"].empty()) {
            throw FormatError(arg + ": expected {\"factors\": [2x2 matrices]}");
        }
        const Json &list = doc["factors"];
        for (std::size_t k = 0; k < list.size(); ++k) {
            factors.push_back(io::matrix_from_json(
                list[k], "factors[" + std::to_string(k) + "]"));
        }
    } else {
        for (const auto &name : split(arg, ',')) {
            factors.push_back(named_single_qubit_gate(name));
        }
    }
    return product_unitary(factors);
}

struct Tolerances {
    double rank_tol = kDefaultRankTol;
    double crit_tol = kDefaultCritTol;
};

void add_tolerances(CLI::App *cmd, Tolerances &tol) {
    cmd->add_option("--rank-tol", tol.rank_tol,
                    "Relative singular-value cutoff for bond ranks")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--crit-tol", tol.crit_tol,
                    "Tolerance on the sequentiality criterion residuals")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

Json weights_json(const CanonicalWeights &w) {
    Json out = Json::array();
    for (std::size_t b = 1; b + 1 < w.lambdas.size(); ++b) {
        const RealVector &l = w.lambdas[b];
        out.push_back(std::vector<double>(l.data(), l.data() + l.size()));
    }
    return out;
}

int cmd_check(const std::string &input, const Tolerances &tol,
              std::ostream &out) {
    const Isometry u = resolve_operator(input);
    const SequentialityReport report =
        sequentiality_test(u, tol.crit_tol, tol.rank_tol);
    out << io::dump(io::report_to_json(report));
    return report.implementable ? kSuccess : kRejected;
}

int cmd_decompose(const std::string &input, const std::string &output,
                  const Tolerances &tol, std::ostream &out,
                  std::ostream &err) {
    const Isometry u = resolve_operator(input);
    const CanonicalOperatorMps canonical = operator_to_mps(u, tol.rank_tol);
    SequentialityReport report = sequentiality_test(canonical, tol.crit_tol);
    report.rank_tol = tol.rank_tol;
    if (!report.implementable) {
        err << "decompose: not sequentially implementable; no plan written\n";
        out << io::dump(io::report_to_json(report));
        return kRejected;
    }
    io::PlanFile file;
    file.plan = build_plan(canonical, tol.crit_tol);
    const VerificationResult check = verify_plan(file.plan, u);
    file.report.implementable = true;
    file.report.residuals = report.per_site_residuals;
    file.report.verification_error = check.max_error;
    file.report.decoupling_residual = check.max_decoupling_residual;
    file.report.crit_tol = tol.crit_tol;
    file.report.rank_tol = tol.rank_tol;

    Json summary = Json::object();
    summary["ancilla_dim"] = file.plan.ancilla_dim;
    summary["bond_dims"] = file.plan.bond_dims;
    summary["m_in"] = file.plan.m_in;
    summary["n_qubits"] = file.plan.n_sites();
    summary["verification_error"] = check.max_error;
    summary["decoupling_residual"] = check.max_decoupling_residual;
    summary["operator_norm_bound"] = check.operator_norm_bound;
    summary["residuals"] = report.per_site_residuals;

    if (!(check.max_error < tol.crit_tol)) {
        err << "decompose: verification error " << check.max_error
            << " exceeds --crit-tol; no plan written\n";
        summary["output"] = nullptr;
        summary["verified"] = false;
        out << io::dump(summary);
        return kRejected;
    }
    summary["verified"] = true;
    if (!output.empty()) {
        io::write_plan_file(output, file);
        summary["output"] = output;
    } else {
        summary["output"] = nullptr;
    }
    out << io::dump(summary);
    return kSuccess;
}

int cmd_simulate(const std::string &plan_path, const std::string &state_text,
                 std::optional<std::size_t> reduce, std::ostream &out) {
    const io::PlanFile file = io::read_plan_file(plan_path);
    const SequentialPlan &plan = file.plan;
    const ComplexVector input = parse_input_state(
        state_text.empty() ? std::string(plan.m_in, '0') : state_text, plan.m_in);
    if (reduce && (*reduce < 1 || *reduce > plan.n_sites())) {
        throw FormatError("--reduce: site must be in 1.." +
                          std::to_string(plan.n_sites()));
    }
    const SimulationResult result = simulate(plan, input);
    const double norm = result.chain.norm();
    if (norm == 0.0) {
        throw ContractViolation("simulate: chain component vanished");
    }
    const ComplexVector amps = result.chain / norm;

    Json doc = Json::object();
    doc["n_qubits"] = plan.n_sites();
    doc["amplitudes"] = io::vector_to_json(amps);
    doc["chain_norm"] = norm;
    doc["decoupling_residual"] = result.decoupling_residual;
    if (reduce) {
        doc["reduced_site"] = *reduce;
        doc["reduced_density_matrix"] = io::matrix_to_json(
            reduced_density_matrix(amps, plan.n_sites(), *reduce - 1));
    }
    out << io::dump(doc);
    return kSuccess;
}

int cmd_info(const std::string &input, const Tolerances &tol,
             std::ostream &out) {
    const Isometry u = resolve_operator(input);
    const CanonicalOperatorMps canonical = operator_to_mps(u, tol.rank_tol);
    const CanonicalResiduals res =
        check_canonical(canonical.op, canonical.weights, 1e-10);

    Json doc = Json::object();
    doc["m_qubits"] = u.m_in();
    doc["n_qubits"] = u.n_out();
    doc["bond_dims"] = canonical.op.bond_dims();
    doc["max_bond_dim"] = canonical.op.max_bond_dim();
    doc["schmidt_ranks"] = u.m_in() == u.n_out()
                               ? Json(operator_schmidt_ranks(u, tol.rank_tol))
                               : Json(nullptr);
    doc["isometry_residual"] = u.residual();
    Json cr = Json::object();
    cr["condition_i"] = res.condition_i;
    cr["condition_ii"] = res.condition_ii;
    cr["condition_iii"] = res.condition_iii;
    doc["canonical_residuals"] = std::move(cr);
    doc["weights"] = weights_json(canonical.weights);
    doc["rank_tol"] = tol.rank_tol;
    out << io::dump(doc);
    return kSuccess;
}

int cmd_export(const std::string &input, const std::string &output,
               std::ostream &out) {
    const Isometry u = resolve_operator(input);
    Json summary = Json::object();
    if (output.empty()) {
        out << io::dump(io::isometry_to_json(u));
        return kSuccess;
    }
    io::write_operator_file(output, u);
    summary["m_qubits"] = u.m_in();
    summary["n_qubits"] = u.n_out();
    summary["output"] = output;
    out << io::dump(summary);
    return kSuccess;
}

int fail(std::ostream &out, std::ostream &err, const std::string &message) {
    err << "error: " << message << "\n";
    Json doc = Json::object();
    doc["error"] = message;
    doc["exit_code"] = static_cast<int>(kUsageError);
    out << io::dump(doc);
    return kUsageError;
}

} // namespace

Isometry resolve_operator(const std::string &spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
    const bool has_arg = colon != std::string::npos;

    if (!has_arg) {
        if (head == "cnot") return cnot();
        if (head == "swap") return swap_gate();
        if (head == "shor") return shor_encoder();
    } else {
        if (head == "cloner") return gisin_massar_cloner(parse_count(arg, "clone count"));
        if (head == "ghz") return ghz_isometry(parse_count(arg, "qubit count"));
        if (head == "product") return product_from_spec(arg);
        if (head == "cphase") {
            double phi = 0.0;
            const auto *end = arg.data() + arg.size();
            const auto [ptr, ec] = std::from_chars(arg.data(), end, phi);
            if (ec != std::errc{} || ptr != end) {
                throw FormatError("invalid phase '" + arg + "'");
            }
            return controlled_phase(phi);
        }
        if (head == "random") {
            const auto parts = split(arg, ',');
            if (parts.size() != 3) {
                throw FormatError("random:<m>,<n>,<seed> expected");
            }
            return random_isometry(parse_count(parts[0], "m"),
                                   parse_count(parts[1], "n"),
                                   parse_count(parts[2], "seed"));
        }
    }
    if (head == "product" && !has_arg) {
        throw FormatError("product requires a factor list: product:<file> or "
                          "product:I,X,...");
    }
    if (std::filesystem::is_regular_file(spec)) {
        return io::read_operator_file(spec);
    }
    throw FormatError("unknown operator '" + spec +
                      "' (not a builtin and no such file)");
}

ComplexVector parse_input_state(const std::string &text, std::size_t m_in) {
    const std::size_t dim = std::size_t{1} << m_in;
    ComplexVector v;
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '[') {
        v = io::vector_from_json(io::parse(text, "--input-state"),
                                 "--input-state");
        if (static_cast<std::size_t>(v.size()) != dim) {
            throw FormatError("--input-state: expected " + std::to_string(dim) +
                              " amplitudes, got " + std::to_string(v.size()));
        }
    } else {
        if (text.size() != m_in) {
            throw FormatError("--input-state: expected " + std::to_string(m_in) +
                              " single-qubit labels, got '" + text + "'");
        }
        const double h = 1.0 / std::sqrt(2.0);
        v = ComplexVector::Ones(1);
        for (char c : text) {
            ComplexVector q(2);
            switch (c) {
            case '0': q << 1.0, 0.0; break;
            case '1': q << 0.0, 1.0; break;
            case '+': q << h, h; break;
            case '-': q << h, -h; break;
            default:
                throw FormatError(std::string("--input-state: unknown label '") +
                                  c + "'");
            }
            ComplexVector next(v.size() * 2);
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                next.segment(2 * i, 2) = v[i] * q;
            }
            v = std::move(next);
        }
    }
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-8) {
        throw FormatError("--input-state: state is not normalized (norm " +
                          std::to_string(norm) + ")");
    }
    return v;
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
    CLI::App app{"Sequential qubit-ancilla decomposition of isometries",
                 "seqiso"};
    app.require_subcommand(1);

    Tolerances tol;
    std::string input;
    std::string output;
    std::string plan_path;
    std::string state_text;
    std::optional<std::size_t> reduce;

    auto *check = app.add_subcommand(
        "check", "Decide sequential implementability (exit 0 yes, 1 no)");
    check->add_option("input", input, "Builtin name or operator file")
        ->required();
    add_tolerances(check, tol);

    auto *decompose = app.add_subcommand(
        "decompose", "Synthesize and verify the minimal-ancilla plan");
    decompose->add_option("input", input, "Builtin name or operator file")
        ->required();
    decompose->add_option("-o,--output", output, "Plan file to write");
    add_tolerances(decompose, tol);

    auto *sim = app.add_subcommand("simulate", "Run a plan on an input state");
    sim->add_option("plan", plan_path, "Plan file")->required();
    sim->add_option("--input-state", state_text,
                    "Per-qubit labels from 0,1,+,- or JSON [[re,im],...] (default all 0)");

    sim->add_option("--reduce", reduce,
                    "Also report the reduced density matrix of this site "
                    "(1-based)");

    auto *info = app.add_subcommand("info", "Bond dimensions and diagnostics");
    info->add_option("input", input, "Builtin name or operator file")
        ->required();
    add_tolerances(info, tol);

    auto *exp = app.add_subcommand("export", "Write an operator file");
    exp->add_option("input", input, "Builtin name or operator file")
        ->required();
    exp->add_option("-o,--output", output, "Operator file to write");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) {
        rev.pop_back(); // program name
    }
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        return fail(out, err, e.what());
    }

    try {
        if (check->parsed()) return cmd_check(input, tol, out);
        if (decompose->parsed())
            return cmd_decompose(input, output, tol, out, err);
        if (sim->parsed()) return cmd_simulate(plan_path, state_text, reduce, out);
        if (info->parsed()) return cmd_info(input, tol, out);
        if (exp->parsed()) return cmd_export(input, output, out);
    } catch (const FormatError &e) {
        return fail(out, err, e.what());
    } catch (const ContractViolation &e) {
        return fail(out, err, e.what());
    }
    return fail(out, err, "no subcommand");
}

} // namespace seqiso::cli
