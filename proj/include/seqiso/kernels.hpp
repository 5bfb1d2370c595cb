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
 * State-vector kernels for applying a qubit-ancilla step unitary.
 *
 * Layout: amplitude index = a * 2^N + c, where a is the ancilla level and c
 * the chain index with site 0 as the most significant of its N bits. The
 * step matrix acts on (ancilla, site) with row/column index 2 * a + q.
 */
#pragma once

#include <cstddef>
#include <span>

#include "seqiso/linalg.hpp"

namespace seqiso::kernels {

namespace detail {
/// Throws ContractViolation unless the buffer and step fit together.
void check_step_shape(std::size_t state_size, std::size_t ancilla_dim,
                      std::size_t n_sites, std::size_t site,
                      const ComplexMatrix &step);
} // namespace detail

/// Straightforward output-by-output contraction. Reference for tests.
void apply_step_serial(std::span<Complex> state, std::size_t ancilla_dim,
                       std::size_t n_sites, std::size_t site,
                       const ComplexMatrix &step);

/// Gather/multiply/scatter over independent amplitude groups, parallelized
/// with OpenMP.
void apply_step_omp(std::span<Complex> state, std::size_t ancilla_dim,
                    std::size_t n_sites, std::size_t site,
                    const ComplexMatrix &step);

} // namespace seqiso::kernels
