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
 * Named operators and seeded random instances, each returned as a validated
 * Isometry.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "seqiso/isometry.hpp"
#include "seqiso/linalg.hpp"

namespace seqiso {

/// Control on site 1, target on site 2.
Isometry cnot();

Isometry swap_gate();

/// diag(1, 1, 1, e^{i phi}).
Isometry controlled_phase(double phi);

/// |0> -> ((|000> + |111>)/sqrt2)^{x3}, |1> -> ((|000> - |111>)/sqrt2)^{x3}.
Isometry shor_encoder();

/**
 * Optimal symmetric 1 -> n universal cloner on 2n - 1 qubits: clones on
 * sites 1..n, anticlones on sites n+1..2n-1.
 *
 *   U|psi> = sum_{j<n} alpha_j |(n-j) psi, j psi_perp>_sym
 *                            (x) |(n-1-j) psi_perp, j psi>_sym,
 *   alpha_j = sqrt(2 (n - j) / (n (n + 1))),
 *
 * built for psi in {|0>, |1>} with psi_perp = |1 - psi>.
 */
Isometry gisin_massar_cloner(std::size_t n_clones);

/// |0> -> (|0..0> + |1..1>)/sqrt2, |1> -> (|0..0> - |1..1>)/sqrt2.
Isometry ghz_isometry(std::size_t n);

/**
 * First 2^m columns of a Haar-random 2^n unitary.
 *
 * Entries of a 2^n x 2^m complex Gaussian matrix are drawn row by row from
 * std::mt19937_64(seed); each entry consumes two 64-bit words u1, u2 mapped
 * to (0, 1] and [0, 1) with 53-bit resolution and turned into
 * (re, im) = sqrt(-log u1) * (cos 2 pi u2, sin 2 pi u2). The columns are then
 * orthonormalized by modified Gram-Schmidt (two passes) in column order.
 * Requires 1 <= m <= n <= 10.
 */
Isometry random_isometry(std::size_t m, std::size_t n, std::uint64_t seed);

/// Kronecker product of 2x2 unitaries in site order.
Isometry product_unitary(std::span<const ComplexMatrix> factors);

/// Haar-random 2x2 unitary (same generator as random_isometry).
ComplexMatrix random_single_qubit_unitary(std::uint64_t seed);

/// I, X, Y, Z, H, S, T (case-insensitive). Throws ContractViolation for
/// anything else.
ComplexMatrix named_single_qubit_gate(std::string_view name);

/// Normalized symmetric state of `qubits` qubits with `ones` excitations.
ComplexVector dicke_state(std::size_t qubits, std::size_t ones);

} // namespace seqiso
