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
#pragma once

#include <cstddef>

#include "seqiso/linalg.hpp"

namespace seqiso {

/**
 * An M -> N qubit isometry, stored as a 2^N x 2^M matrix whose rows index
 * the output basis and columns the input basis (site 1 most significant).
 *
 * Construction enforces the contract: M <= N, finite entries, and
 * ||U^dagger U - I||_F <= tol.
 */
class Isometry {
  public:
    static constexpr double kContractTol = 1e-10;

    Isometry(std::size_t m_in, std::size_t n_out, ComplexMatrix matrix,
             double tol = kContractTol);

    std::size_t m_in() const noexcept { return m_in_; }
    std::size_t n_out() const noexcept { return n_out_; }
    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    /// ||U^dagger U - I||_F measured at construction.
    double residual() const noexcept { return residual_; }

  private:
    std::size_t m_in_;
    std::size_t n_out_;
    ComplexMatrix matrix_;
    double residual_;
};

} // namespace seqiso
