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
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seqiso/cli.hpp"
#include "seqiso/errors.hpp"
#include "seqiso/io.hpp"
#include "seqiso/oplib.hpp"

using namespace seqiso;
using oracle::Index;

namespace {

struct Outcome {
    int code;
    io::Json doc;
    std::string raw;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "seqiso");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    Outcome o{code, {}, out.str()};
    o.doc = io::parse(o.raw, "stdout");
    // Exactly one JSON document per invocation.
    EXPECT_EQ(io::dump(o.doc), o.raw);
    return o;
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() /
            ("seqiso_cli_" + std::to_string(::getpid()) + "_" + name))
        .string();
}

ComplexMatrix rdm_of(const io::Json &doc) {
    return io::matrix_from_json(doc["reduced_density_matrix"], "rdm");
}

} // namespace

TEST(CliCheck, CnotIsRejected) {
    const Outcome o = invoke({"check", "cnot"});
    EXPECT_EQ(o.code, cli::kRejected);
    EXPECT_FALSE(o.doc["implementable"].get<bool>());
    EXPECT_GT(o.doc["max_residual"].get<double>(), 0.5);
}

TEST(CliCheck, ShorNeedsFourLevels) {
    const Outcome o = invoke({"check", "shor"});
    EXPECT_EQ(o.code, cli::kSuccess);
    EXPECT_EQ(o.doc["ancilla_dim_if_yes"].get<int>(), 4);
}

TEST(CliCheck, GhzMatchesRankOracle) {
    const Outcome o = invoke({"check", "ghz:3"});
    EXPECT_EQ(o.code, cli::kSuccess);
    const auto ranks = oracle::bipartition_ranks(ghz_isometry(3));
    EXPECT_EQ(o.doc["ancilla_dim_if_yes"].get<std::size_t>(),
              *std::max_element(ranks.begin(), ranks.end()));
}

TEST(CliCheck, TolerancesAreReported) {
    const Outcome o = invoke({"check", "shor", "--crit-tol", "1e-6", "--rank-tol", "1e-12"});
    EXPECT_EQ(o.doc["crit_tol"].get<double>(), 1e-6);
    EXPECT_EQ(o.doc["rank_tol"].get<double>(), 1e-12);
}

TEST(CliCheck, OperatorFileInput) {
    const std::string path = temp_path("op.json");
    io::write_operator_file(path, random_isometry(1, 3, 42));
    EXPECT_EQ(invoke({"check", path}).code, cli::kSuccess);
    io::write_text(path, "{\"m_qubits\": 1,\n \"n_qubits\": 2,\n \"matrix\": [}");
    const Outcome bad = invoke({"check", path});
    EXPECT_EQ(bad.code, cli::kUsageError);
    EXPECT_EQ(bad.doc["exit_code"].get<int>(), 2);
    EXPECT_NE(bad.doc["error"].get<std::string>().find(":3:"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(CliCheck, UsageErrors) {
    EXPECT_EQ(invoke({"check", "no-such-thing"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"check", "cloner:9"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"check"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({}).code, cli::kUsageError);
}

TEST(CliDecompose, ShorPlanFile) {
    const std::string path = temp_path("shor_plan.json");
    const Outcome o = invoke({"decompose", "shor", "-o", path});
    EXPECT_EQ(o.code, cli::kSuccess);
    EXPECT_EQ(o.doc["ancilla_dim"].get<int>(), 4);
    EXPECT_LT(o.doc["verification_error"].get<double>(), 1e-9);
    const io::PlanFile file = io::read_plan_file(path);
    ASSERT_EQ(file.plan.n_sites(), 9u);
    for (const auto &v : file.plan.steps) {
        EXPECT_EQ(v.rows(), 8);
        EXPECT_LT(gram_residual(v), 1e-10);
    }

    const Outcome sim = invoke({"simulate", path, "--input-state", "+"});
    EXPECT_EQ(sim.code, cli::kSuccess);
    const ComplexVector amps = io::vector_from_json(sim.doc["amplitudes"], "amplitudes");
    const ComplexMatrix &u = shor_encoder().matrix();
    const ComplexVector expect = (u.col(0) + u.col(1)) / std::sqrt(2.0);
    EXPECT_LE((amps - expect).norm(), 1e-12);
    EXPECT_LT(sim.doc["decoupling_residual"].get<double>(), 1e-10);
    std::filesystem::remove(path);
}

TEST(CliDecompose, ClonerAncillaBound) {
    const std::string path = temp_path("cloner_plan.json");
    const Outcome o = invoke({"decompose", "cloner:2", "-o", path});
    EXPECT_EQ(o.code, cli::kSuccess);
    EXPECT_LE(o.doc["ancilla_dim"].get<int>(), 4);

    const Outcome sim = invoke({"simulate", path, "--input-state", "0", "--reduce", "1"});
    EXPECT_EQ(sim.code, cli::kSuccess);
    const ComplexMatrix ref =
        oracle::single_site_rdm(gisin_massar_cloner(2).matrix().col(0), 3, 0);
    EXPECT_LE((rdm_of(sim.doc) - ref).norm(), 1e-12);
    EXPECT_NEAR(rdm_of(sim.doc)(0, 0).real(), 5.0 / 6.0, 1e-12);

    EXPECT_EQ(invoke({"simulate", path, "--input-state", "01"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"simulate", path, "--reduce", "4"}).code, cli::kUsageError);
    std::filesystem::remove(path);
}

TEST(CliDecompose, CnotWritesNothing) {
    const std::string path = temp_path("cnot_plan.json");
    const Outcome o = invoke({"decompose", "cnot", "-o", path});
    EXPECT_EQ(o.code, cli::kRejected);
    EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(CliSimulate, IdentityPlan) {
    const std::string path = temp_path("id_plan.json");
    ASSERT_EQ(invoke({"decompose", "product:I,I", "-o", path}).code, cli::kSuccess);
    const Outcome o = invoke({"simulate", path});
    const ComplexVector amps = io::vector_from_json(o.doc["amplitudes"], "amplitudes");
    ASSERT_EQ(amps.size(), 4);
    EXPECT_NEAR(std::abs(amps[0] - Complex(1.0)), 0.0, 1e-15);
    EXPECT_NEAR(amps.tail(3).norm(), 0.0, 1e-15);
    EXPECT_EQ(invoke({"simulate", temp_path("missing.json")}).code, cli::kUsageError);
    std::filesystem::remove(path);
}

TEST(CliSimulate, AmplitudeListInput) {
    const std::string path = temp_path("ghz_plan.json");
    ASSERT_EQ(invoke({"decompose", "ghz:3", "-o", path}).code, cli::kSuccess);
    const Outcome o = invoke({"simulate", path, "--input-state", "[[0, 0], [0, 1]]"});
    EXPECT_EQ(o.code, cli::kSuccess);
    const ComplexVector amps = io::vector_from_json(o.doc["amplitudes"], "amplitudes");
    const ComplexVector expect = Complex(0, 1) * ghz_isometry(3).matrix().col(1);
    EXPECT_LE((amps - expect).norm(), 1e-12);
    std::filesystem::remove(path);
}

TEST(CliInfo, Examples) {
    const Outcome c = invoke({"info", "cnot"});
    EXPECT_EQ(c.code, cli::kSuccess);
    EXPECT_EQ(c.doc["schmidt_ranks"], io::Json::array({2}));
    EXPECT_EQ(invoke({"info", "shor"}).doc["max_bond_dim"].get<int>(), 4);
    const Outcome p = invoke({"info", "product:I,I,I"});
    EXPECT_EQ(p.doc["schmidt_ranks"], io::Json::array({1, 1}));
    EXPECT_EQ(p.doc["bond_dims"], io::Json::array({1, 1, 1, 1}));
    EXPECT_TRUE(invoke({"info", "ghz:3"}).doc["schmidt_ranks"].is_null());
    EXPECT_LT(invoke({"info", "cloner:3"}).doc["canonical_residuals"]["condition_ii"]
                  .get<double>(),
              1e-10);
}

TEST(CliExport, RoundTripsThroughCheck) {
    const std::string path = temp_path("export.json");
    EXPECT_EQ(invoke({"export", "random:2,3,7", "-o", path}).code, cli::kSuccess);
    const Isometry u = io::read_operator_file(path);
    EXPECT_TRUE((u.matrix().array() == random_isometry(2, 3, 7).matrix().array()).all());
    EXPECT_EQ(invoke({"info", path}).raw, invoke({"info", "random:2,3,7"}).raw);
    std::filesystem::remove(path);
}

TEST(Cli, OutputIsDeterministic) {
    for (const char *spec : {"shor", "cloner:3", "random:1,4,99", "cphase:0.25"}) {
        EXPECT_EQ(invoke({"check", spec}).raw, invoke({"check", spec}).raw);
        EXPECT_EQ(invoke({"info", spec}).raw, invoke({"info", spec}).raw);
    }
}

TEST(Cli, InputStateParser) {
    const ComplexVector v = cli::parse_input_state("-1", 2);
    ASSERT_EQ(v.size(), 4);
    EXPECT_NEAR(v[0].real(), 0.0, 1e-15);
    EXPECT_NEAR(v[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(v[3].real(), -1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(cli::parse_input_state("0", 2), FormatError);
    EXPECT_THROW(cli::parse_input_state("z", 1), FormatError);
}
