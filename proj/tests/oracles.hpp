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
// Brute-force reference computations for the test suites. Nothing here calls
// the library's SVD, regroup or MPS routines, except where a constructor
// needs a unitary completion as plumbing.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "seqiso/isometry.hpp"
#include "seqiso/linalg.hpp"
#include "seqiso/mps.hpp"
#include "seqiso/sequencer.hpp"

namespace seqiso::oracle {

using Index = Eigen::Index;

inline std::size_t bit_of(std::size_t index, std::size_t n_bits,
                          std::size_t pos) {
    return (index >> (n_bits - 1 - pos)) & 1u;
}

inline std::size_t jacobi_rank(const ComplexMatrix &m, double rank_tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) {
        return 0;
    }
    std::size_t rank = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s[i] > rank_tol * s[0]) {
            ++rank;
        }
    }
    return rank;
}

/// R[(i1, j1), (i2, j2)] = U[(i1, i2), (j1, j2)] for a two-qubit U.
inline ComplexMatrix reshuffle_two_qubit(const ComplexMatrix &u) {
    ComplexMatrix r(4, 4);
    for (std::size_t i1 = 0; i1 < 2; ++i1)
        for (std::size_t i2 = 0; i2 < 2; ++i2)
            for (std::size_t j1 = 0; j1 < 2; ++j1)
                for (std::size_t j2 = 0; j2 < 2; ++j2)
                    r(Index(2 * i1 + j1), Index(2 * i2 + j2)) =
                        u(Index(2 * i1 + i2), Index(2 * j1 + j2));
    return r;
}

/**
 * Rank of U across each contiguous cut c = 1..N-1: rows collect the output
 * and input legs of sites <= c, columns the legs of sites > c.
 */
inline std::vector<std::size_t> bipartition_ranks(const Isometry &u,
                                                  double rank_tol = 1e-10) {
    const std::size_t n = u.n_out(), m = u.m_in();
    const ComplexMatrix &mat = u.matrix();
    std::vector<std::size_t> ranks;
    for (std::size_t c = 1; c < n; ++c) {
        const std::size_t left_in = std::min(c, m);
        const std::size_t right_in = m - left_in;
        const std::size_t rows = std::size_t{1} << (c + left_in);
        const std::size_t cols = std::size_t{1} << (n - c + right_in);
        ComplexMatrix r{Index(rows), Index(cols)};
        for (std::size_t out = 0; out < (std::size_t{1} << n); ++out) {
            for (std::size_t in = 0; in < (std::size_t{1} << m); ++in) {
                std::size_t row = 0, col = 0;
                for (std::size_t k = 0; k < c; ++k)
                    row = (row << 1) | bit_of(out, n, k);
                for (std::size_t k = 0; k < left_in; ++k)
                    row = (row << 1) | bit_of(in, m, k);
                for (std::size_t k = c; k < n; ++k)
                    col = (col << 1) | bit_of(out, n, k);
                for (std::size_t k = left_in; k < m; ++k)
                    col = (col << 1) | bit_of(in, m, k);
                r(Index(row), Index(col)) = mat(Index(out), Index(in));
            }
        }
        ranks.push_back(jacobi_rank(r, rank_tol));
    }
    return ranks;
}

/// Schmidt ranks of an N-qubit state across each contiguous cut.
inline std::vector<std::size_t> state_cut_ranks(const ComplexVector &psi,
                                                std::size_t n,
                                                double rank_tol = 1e-10) {
    std::vector<std::size_t> ranks;
    for (std::size_t c = 1; c < n; ++c) {
        const std::size_t cols = std::size_t{1} << (n - c);
        ComplexMatrix r{Index(std::size_t{1} << c), Index(cols)};
        for (std::size_t x = 0; x < (std::size_t{1} << n); ++x)
            r(Index(x / cols), Index(x % cols)) = psi[Index(x)];
        ranks.push_back(jacobi_rank(r, rank_tol));
    }
    return ranks;
}

/// Schmidt spectrum (squared, descending) across cut c.
inline RealVector state_cut_weights(const ComplexVector &psi, std::size_t n,
                                    std::size_t c) {
    const std::size_t cols = std::size_t{1} << (n - c);
    ComplexMatrix r{Index(std::size_t{1} << c), Index(cols)};
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x)
        r(Index(x / cols), Index(x % cols)) = psi[Index(x)];
    Eigen::JacobiSVD<ComplexMatrix> svd(r);
    return svd.singularValues().array().square();
}

/// Reduced density matrix of one qubit via the full projector psi psi^dagger.
inline ComplexMatrix single_site_rdm(const ComplexVector &psi, std::size_t n,
                                     std::size_t site) {
    const ComplexMatrix rho_full = psi * psi.adjoint();
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            // Trace over every site except `site`.
            if ((x ^ y) & ~(std::size_t{1} << (n - 1 - site)) & (dim - 1)) {
                continue;
            }
            rho(Index(bit_of(x, n, site)), Index(bit_of(y, n, site))) +=
                rho_full(Index(x), Index(y));
        }
    }
    return rho;
}

/// Contracts an MPS path by path: psi(p) = A[N-1]_{pN} ... A[0]_{p1}.
inline ComplexVector brute_contract(const Mps &mps) {
    const auto dims = mps.physical_dims();
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    ComplexVector psi{Index(total)};
    std::vector<std::size_t> digit(dims.size(), 0);
    for (std::size_t x = 0; x < total; ++x) {
        std::size_t rem = x;
        for (std::size_t k = dims.size(); k-- > 0;) {
            digit[k] = rem % dims[k];
            rem /= dims[k];
        }
        ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
        for (std::size_t k = 0; k < dims.size(); ++k)
            acc = mps.sites[k][digit[k]] * acc;
        psi[Index(x)] = acc(0, 0);
    }
    return psi;
}

/// U as a matrix from an operator chain via brute_contract.
inline ComplexMatrix brute_contract_operator(const OperatorMps &op) {
    const std::size_t n = op.num_sites(), m = op.m_in;
    const ComplexVector flat = brute_contract(op.chain);
    ComplexMatrix u{Index(std::size_t{1} << n), Index(std::size_t{1} << m)};
    // Flat index runs over (i1 j1) ... (iM jM) i_{M+1} ... iN, big-endian.
    for (std::size_t f = 0; f < static_cast<std::size_t>(flat.size()); ++f) {
        std::size_t rem = f, out = 0, in = 0;
        std::vector<std::size_t> is(n), js(m);
        for (std::size_t k = n; k-- > 0;) {
            if (k < m) {
                const std::size_t p = rem % 4;
                rem /= 4;
                is[k] = p / 2;
                js[k] = p % 2;
            } else {
                is[k] = rem % 2;
                rem /= 2;
            }
        }
        for (std::size_t k = 0; k < n; ++k) out = (out << 1) | is[k];
        for (std::size_t k = 0; k < m; ++k) in = (in << 1) | js[k];
        u(Index(out), Index(in)) = flat[Index(f)];
    }
    return u;
}

/**
 * The swap-network protocol for a 1 -> N isometry: the first step applies
 * the isometry to site 1 plus N - 1 ancilla qubits, each later step swaps one
 * ancilla qubit into its chain site. `idle` extra ancilla qubits inflate the
 * ancilla dimension without being touched.
 */
inline SequentialPlan swap_network_plan(const Isometry &u, std::size_t idle) {
    const std::size_t n = u.n_out();
    const std::size_t abits = n - 1 + idle;
    const std::size_t d = std::size_t{1} << abits;
    SequentialPlan plan;
    plan.ancilla_dim = d;
    plan.m_in = 1;

    ComplexMatrix first_cols = ComplexMatrix::Zero(Index(2 * d), 2);
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t out = 0; out < (std::size_t{1} << n); ++out) {
            const std::size_t i1 = bit_of(out, n, 0);
            const std::size_t rest = out & ((std::size_t{1} << (n - 1)) - 1);
            const std::size_t s = rest << idle;
            first_cols(Index(2 * s + i1), Index(j)) = u.matrix()(Index(out), Index(j));
        }
    }
    plan.steps.push_back(complete_to_unitary(first_cols));

    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t pos = abits - 1 - (k - 1);
        const std::size_t mask = std::size_t{1} << pos;
        ComplexMatrix v = ComplexMatrix::Zero(Index(2 * d), Index(2 * d));
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t q = 0; q < 2; ++q) {
                const std::size_t i = (r & mask) ? 1 : 0;
                const std::size_t s = q ? (r | mask) : (r & ~mask);
                v(Index(2 * s + i), Index(2 * r + q)) = 1.0;
            }
        }
        plan.steps.push_back(std::move(v));
    }
    return plan;
}

/// Reads an operator MPS back off a plan (ancilla starts and ends in 0).
inline OperatorMps plan_to_operator_mps(const SequentialPlan &plan) {
    const std::size_t n = plan.n_sites(), d = plan.ancilla_dim;
    OperatorMps op;
    op.m_in = plan.m_in;
    for (std::size_t k = 0; k < n; ++k) {
        const ComplexMatrix &v = plan.steps[k];
        const std::size_t rows = k + 1 == n ? 1 : d;
        const std::size_t cols = k == 0 ? 1 : d;
        SiteTensor site;
        const std::size_t in_vals = k < plan.m_in ? 2 : 1;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < in_vals; ++j) {
                ComplexMatrix a{Index(rows), Index(cols)};
                for (std::size_t s = 0; s < rows; ++s)
                    for (std::size_t r = 0; r < cols; ++r)
                        a(Index(s), Index(r)) = v(Index(2 * s + i), Index(2 * r + j));
                site.push_back(std::move(a));
            }
        }
        op.chain.sites.push_back(std::move(site));
    }
    return op;
}

inline ComplexMatrix gaussian_matrix(Index rows, Index cols,
                                     std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) m(r, c) = Complex{g(rng), g(rng)};
    return m;
}

inline ComplexMatrix haar_unitary(Index dim, std::mt19937_64 &rng) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(dim, dim, rng));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR();
    for (Index i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

/**
 * Random non-unitary gauge: every inner bond b gets a tall Gaussian G_b with
 * `pad` extra rows; site b-1 is multiplied by G_b on the left and site b by
 * its pseudo-inverse on the right. The contracted tensor is unchanged.
 */
inline Mps random_gauge(const Mps &mps, std::size_t pad, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mps out = mps;
    const auto bonds = mps.bond_dims();
    for (std::size_t b = 1; b + 1 < bonds.size(); ++b) {
        const Index dim = Index(bonds[b]);
        const ComplexMatrix g = gaussian_matrix(dim + Index(pad), dim, rng);
        const ComplexMatrix g_pinv = g.completeOrthogonalDecomposition().pseudoInverse();
        for (auto &a : out.sites[b - 1]) a = g * a;
        for (auto &a : out.sites[b]) a = a * g_pinv;
    }
    return out;
}

/// Random unitary gauge commuting with the bond weights (block-diagonal over
/// equal weights).
inline Mps random_commuting_gauge(const Mps &mps, const CanonicalWeights &w,
                                  std::uint64_t seed, double degeneracy_tol = 1e-9) {
    std::mt19937_64 rng(seed);
    Mps out = mps;
    for (std::size_t b = 1; b + 1 < w.lambdas.size(); ++b) {
        const RealVector &l = w.lambdas[b];
        ComplexMatrix v = ComplexMatrix::Zero(l.size(), l.size());
        std::vector<bool> used(std::size_t(l.size()), false);
        for (Index p = 0; p < l.size(); ++p) {
            if (used[std::size_t(p)]) continue;
            std::vector<Index> block;
            for (Index q = p; q < l.size(); ++q)
                if (!used[std::size_t(q)] && std::abs(l[q] - l[p]) <= degeneracy_tol) {
                    block.push_back(q);
                    used[std::size_t(q)] = true;
                }
            const ComplexMatrix h = haar_unitary(Index(block.size()), rng);
            for (std::size_t r = 0; r < block.size(); ++r)
                for (std::size_t c = 0; c < block.size(); ++c)
                    v(block[r], block[c]) = h(Index(r), Index(c));
        }
        for (auto &a : out.sites[b - 1]) a = v * a;
        for (auto &a : out.sites[b]) a = a * v.adjoint();
    }
    return out;
}

} // namespace seqiso::oracle
