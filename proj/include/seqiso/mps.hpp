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
 * Matrix product representations of states and isometries.
 *
 * Sites are stored 0-based. Site m holds one matrix per physical index,
 * each of shape bond(m + 1) x bond(m); bond 0 and bond N are the trivial
 * boundaries of dimension 1. A state is recovered as
 *
 *     psi(p_1, ..., p_N) = A[N-1]_{p_N} ... A[1]_{p_2} A[0]_{p_1}
 *
 * so site 0 acts first, matching the order in which an ancilla visits the
 * chain.
 *
 * Canonical form (for normalized states):
 *   (i)   sum_p A[m]_p^dagger A[m]_p = I
 *   (ii)  sum_p A[m]_p diag(lambda[m]) A[m]_p^dagger = diag(lambda[m + 1])
 *   (iii) lambda[0] = lambda[N] = 1, every lambda[b] strictly positive with
 *         unit trace.
 * lambda[b] holds the squared Schmidt coefficients across the cut between
 * sites b - 1 and b.
 */
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seqiso/isometry.hpp"
#include "seqiso/linalg.hpp"

namespace seqiso {

/// One matrix per physical index value.
using SiteTensor = std::vector<ComplexMatrix>;

struct Mps {
    std::vector<SiteTensor> sites;

    std::size_t num_sites() const noexcept { return sites.size(); }
    std::size_t physical_dim(std::size_t site) const {
        return sites.at(site).size();
    }
    std::vector<std::size_t> physical_dims() const;
    /// bond(0) ... bond(N); throws ContractViolation if the chain is ragged.
    std::vector<std::size_t> bond_dims() const;
    std::size_t max_bond_dim() const;
    /// Throws ContractViolation unless shapes chain consistently with
    /// trivial boundaries.
    void validate() const;
};

/**
 * Operator MPS of an M -> N isometry. Sites 0 .. m_in - 1 have physical
 * dimension 4 with index p = 2 * i + j (output i, input j); the remaining
 * sites have dimension 2.
 *
 * In canonical form the input sites carry an extra factor sqrt(2) relative
 * to the canonical form of the normalized vector U / sqrt(2^M), so that the
 * chain contracts to U itself.
 */
struct OperatorMps {
    Mps chain;
    std::size_t m_in = 0;

    std::size_t num_sites() const noexcept { return chain.num_sites(); }
    std::vector<std::size_t> bond_dims() const { return chain.bond_dims(); }
    std::size_t max_bond_dim() const { return chain.max_bond_dim(); }
    void validate() const;
};

/// lambdas[b] is the weight vector on bond b, b = 0..N (boundaries hold {1}).
struct CanonicalWeights {
    std::vector<RealVector> lambdas;
};

struct CanonicalMps {
    Mps mps;
    CanonicalWeights weights;
};

struct CanonicalOperatorMps {
    OperatorMps op;
    CanonicalWeights weights;
};

struct CanonicalResiduals {
    double condition_i = 0.0;
    double condition_ii = 0.0;
    double condition_iii = 0.0;
    bool passes = false;

    double max() const;
};

struct GaugeVerdict {
    bool related = false;
    double max_residual = 0.0;
    std::string reason;
};

/// Contracts the chain into a vector over the composite physical index.
ComplexVector contract(const Mps &mps);

/// Contracts an operator chain into its 2^N x 2^M matrix.
ComplexMatrix contract(const OperatorMps &op);

/**
 * Canonical MPS of a normalized state by successive Schmidt decompositions,
 * starting at the last site. Bond dimensions are the Schmidt ranks across
 * each cut.
 */
CanonicalMps state_to_mps(const ComplexVector &psi,
                          std::span<const std::size_t> dims,
                          double rank_tol = kDefaultRankTol);

/// Canonical operator MPS of an isometry (input and output legs of each
/// input site are fused).
CanonicalOperatorMps operator_to_mps(const Isometry &u,
                                     double rank_tol = kDefaultRankTol);

/**
 * Brings an arbitrary shape-consistent MPS to canonical form.
 *
 * A first sweep from site 0 orthonormalizes every site in the opposite
 * direction and pushes the norm onto the last site; a second sweep from the
 * last site takes the Schmidt decompositions, drops singular values below
 * rank_tol * s_max and records the weights. An all-zero chain is rejected
 * with ContractViolation.
 */
CanonicalMps canonicalize(const Mps &mps, double rank_tol = kDefaultRankTol);
CanonicalOperatorMps canonicalize(const OperatorMps &op,
                                  double rank_tol = kDefaultRankTol);

CanonicalResiduals check_canonical(const Mps &mps,
                                   const CanonicalWeights &weights,
                                   double tol = 1e-10);
/// Checks the operator chain after removing the sqrt(2) input-site factor.
CanonicalResiduals check_canonical(const OperatorMps &op,
                                   const CanonicalWeights &weights,
                                   double tol = 1e-10);

/**
 * Decides whether two canonical forms are related by bond unitaries,
 * b_m = V_{m+1} a_m V_m^dagger with trivial boundary V's and each V commuting
 * with its bond weights. V is solved site by site from site 0, blockwise over
 * the degenerate eigenspaces of the weights.
 */
GaugeVerdict gauge_check(const CanonicalMps &a, const CanonicalMps &b,
                         double tol = 1e-10);
GaugeVerdict gauge_check(const CanonicalOperatorMps &a,
                         const CanonicalOperatorMps &b, double tol = 1e-10);

/// The normalized-state chain underlying an operator chain (input sites
/// divided by sqrt(2)).
Mps normalized_chain(const OperatorMps &op);

} // namespace seqiso
