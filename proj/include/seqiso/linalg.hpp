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
 * Dense complex linear algebra shared by the MPS and sequencer modules.
 *
 * Qubit ordering: for a composite index over sites (s_1, ..., s_n), site 1
 * is the most significant digit.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace seqiso {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-10;

struct SvdResult {
    ComplexMatrix u;        ///< left singular vectors (thin), orthonormal columns
    RealVector s;           ///< singular values, descending
    ComplexMatrix v_dagger; ///< right singular vectors as rows
    std::size_t numerical_rank = 0;
};

/**
 * Thin SVD m = u * diag(s) * v_dagger.
 *
 * numerical_rank counts s[i] > rank_tol * s[0]. Each left singular vector is
 * rotated so its first entry of (numerically) largest modulus is real
 * positive; the phase is compensated in the matching row of v_dagger.
 */
SvdResult svd(const ComplexMatrix &m, double rank_tol = kDefaultRankTol);

/// Same as svd() but drops singular triplets past numerical_rank.
SvdResult truncated_svd(const ComplexMatrix &m,
                        double rank_tol = kDefaultRankTol);

/**
 * Extends a d x k matrix with orthonormal columns to a d x d unitary.
 *
 * The first k columns are copied verbatim. The rest come from projecting
 * e_0, e_1, ... onto the orthogonal complement and orthonormalizing in index
 * order, skipping candidates whose projected norm is below 1e-8.
 */
ComplexMatrix complete_to_unitary(const ComplexMatrix &cols,
                                  double gram_tol = 1e-10);

/**
 * Re-indexes the entries of m (read row-major) as a tensor with legs
 * in_shape (leg 0 most significant), permutes legs so that output leg t is
 * input leg permutation[t], and reads the result back row-major into a
 * matrix of shape out_shape = {rows, cols}.
 */
ComplexMatrix regroup(const ComplexMatrix &m,
                      std::span<const std::size_t> in_shape,
                      std::span<const std::size_t> out_shape,
                      std::span<const std::size_t> permutation);

std::vector<std::size_t>
inverse_permutation(std::span<const std::size_t> permutation);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest singular value.
double spectral_norm(const ComplexMatrix &m);

/// ||m^dagger m - I||_F.
double gram_residual(const ComplexMatrix &m);

bool all_finite(const ComplexMatrix &m);

/// Multiplies v by the unit phase that makes its first entry of largest
/// modulus real positive and returns that phase.
Complex fix_phase(Eigen::Ref<ComplexVector> v);

} // namespace seqiso
