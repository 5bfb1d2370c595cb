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
 * Sequential implementability of isometries: the criterion, step-unitary
 * synthesis, simulation of the qubit-ancilla factory and verification.
 *
 * A sequential plan applies V[0], ..., V[N-1] in order, step k acting once on
 * (ancilla, site k), starting and ending with the ancilla in level 0. Step
 * matrices are indexed (ancilla, site): row 2 * s + i, column 2 * r + j.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seqiso/isometry.hpp"
#include "seqiso/linalg.hpp"
#include "seqiso/mps.hpp"

namespace seqiso {

inline constexpr double kDefaultCritTol = 1e-8;

enum class ExecutionPolicy { Serial, Parallel };

struct SequentialityReport {
    bool implementable = false;
    /// One entry per input site: max over (j, j') of
    /// || sum_i A_{i,j}^dagger A_{i,j'} - delta_{jj'} I ||_2.
    std::vector<double> per_site_residuals;
    std::vector<std::size_t> bond_dims;
    std::optional<std::size_t> ancilla_dim_if_yes;
    double crit_tol = kDefaultCritTol;
    double rank_tol = kDefaultRankTol;

    double max_residual() const;
};

class NotImplementable : public std::runtime_error {
  public:
    explicit NotImplementable(SequentialityReport report);
    const SequentialityReport &report() const noexcept { return report_; }

  private:
    SequentialityReport report_;
};

struct SequentialPlan {
    std::size_t ancilla_dim = 1;
    std::size_t m_in = 1;
    std::vector<ComplexMatrix> steps;
    std::size_t initial_ancilla = 0;
    std::size_t final_ancilla = 0;
    /// Canonical bond dimensions the plan was read from (informational).
    std::vector<std::size_t> bond_dims;

    std::size_t n_sites() const noexcept { return steps.size(); }
    /// Throws ContractViolation on shape errors or non-unitary steps.
    void validate(double tol = 1e-10) const;
};

struct SimulationResult {
    ComplexVector chain;          ///< component with the ancilla in level 0
    double decoupling_residual{}; ///< norm of the remaining components
};

struct VerificationResult {
    /// max over basis inputs of max(state error, decoupling residual)
    double max_error = 0.0;
    double max_state_error = 0.0;
    double max_decoupling_residual = 0.0;
    /// sqrt(2^M) * max_state_error bounds the operator-norm error.
    double operator_norm_bound = 0.0;
};

/// Evaluates the criterion on an isometry via its canonical operator MPS.
SequentialityReport sequentiality_test(const Isometry &u,
                                       double tol = kDefaultCritTol,
                                       double rank_tol = kDefaultRankTol);

/// Evaluates the criterion on a given canonical form.
SequentialityReport sequentiality_test(const CanonicalOperatorMps &canonical,
                                       double tol = kDefaultCritTol);

/// Throws NotImplementable when the criterion fails.
SequentialPlan build_plan(const Isometry &u, double tol = kDefaultCritTol,
                          double rank_tol = kDefaultRankTol);

SequentialPlan build_plan(const CanonicalOperatorMps &canonical,
                          double tol = kDefaultCritTol);

/// Runs the factory on an M-qubit input; the remaining N - M sites start in
/// |0>.
SimulationResult simulate(const SequentialPlan &plan,
                          const ComplexVector &input,
                          ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Compares the plan against u on every computational basis input.
VerificationResult verify_plan(const SequentialPlan &plan, const Isometry &u,
                               ExecutionPolicy policy =
                                   ExecutionPolicy::Parallel);

/**
 * Direct-sum operator MPS of a 1 -> N isometry from MPS of U|0> and U|1>.
 * Inner bonds have dimension D_b(U|0>) + D_b(U|1>).
 */
OperatorMps corollary_construct(const Mps &u0, const Mps &u1);

/// Operator Schmidt rank of an N-qubit unitary across each contiguous cut
/// (sites <= c | sites > c), c = 1 .. N - 1.
std::vector<std::size_t>
operator_schmidt_ranks(const Isometry &u, double rank_tol = kDefaultRankTol);

/// 2x2 reduced density matrix of `site` (0-based) in an n-site chain state.
ComplexMatrix reduced_density_matrix(const ComplexVector &chain,
                                     std::size_t n_sites, std::size_t site);

} // namespace seqiso
