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
#include "seqiso/mps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "seqiso/errors.hpp"

namespace seqiso {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

RealVector normalized_weights(const RealVector &s) {
    RealVector w = s.array().square();
    return w / w.sum();
}

Mps scale_input_sites(const Mps &chain, std::size_t m_in, double factor) {
    Mps out = chain;
    for (std::size_t k = 0; k < m_in && k < out.num_sites(); ++k) {
        for (auto &a : out.sites[k]) {
            a *= factor;
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>> degenerate_blocks(const RealVector &w,
                                                        double tol) {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<bool> used(static_cast<std::size_t>(w.size()), false);
    for (Index p = 0; p < w.size(); ++p) {
        if (used[p]) {
            continue;
        }
        std::vector<std::size_t> block{static_cast<std::size_t>(p)};
        used[p] = true;
        for (Index q = p + 1; q < w.size(); ++q) {
            if (!used[q] && std::abs(w[q] - w[p]) <= tol) {
                block.push_back(static_cast<std::size_t>(q));
                used[q] = true;
            }
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

} // namespace

double CanonicalResiduals::max() const {
    return std::max({condition_i, condition_ii, condition_iii});
}

std::vector<std::size_t> Mps::physical_dims() const {
    std::vector<std::size_t> dims;
    dims.reserve(sites.size());
    for (const auto &site : sites) {
        dims.push_back(site.size());
    }
    return dims;
}

std::vector<std::size_t> Mps::bond_dims() const {
    validate();
    std::vector<std::size_t> dims(sites.size() + 1);
    for (std::size_t m = 0; m < sites.size(); ++m) {
        dims[m] = static_cast<std::size_t>(sites[m].front().cols());
    }
    dims.back() = static_cast<std::size_t>(sites.back().front().rows());
    return dims;
}

std::size_t Mps::max_bond_dim() const {
    const auto dims = bond_dims();
    return *std::max_element(dims.begin(), dims.end());
}

void Mps::validate() const {
    if (sites.empty()) {
        throw ContractViolation("mps: no sites");
    }
    for (std::size_t m = 0; m < sites.size(); ++m) {
        const auto &site = sites[m];
        if (site.empty()) {
            throw ContractViolation("mps: site " + std::to_string(m) +
                                    " has no physical index values");
        }
        const Index rows = site.front().rows();
        const Index cols = site.front().cols();
        for (const auto &a : site) {
            if (a.rows() != rows || a.cols() != cols) {
                throw ContractViolation("mps: ragged matrices at site " +
                                        std::to_string(m));
            }
        }
        if (m == 0 && cols != 1) {
            throw ContractViolation("mps: left boundary bond must be 1");
        }
        if (m + 1 == sites.size() && rows != 1) {
            throw ContractViolation("mps: right boundary bond must be 1");
        }
        if (m > 0 && sites[m - 1].front().rows() != cols) {
            throw ContractViolation("mps: bond mismatch between sites " +
                                    std::to_string(m - 1) + " and " +
                                    std::to_string(m));
        }
        if (rows == 0 || cols == 0) {
            throw ContractViolation("mps: zero bond dimension at site " +
                                    std::to_string(m));
        }
    }
}

void OperatorMps::validate() const {
    chain.validate();
    if (m_in < 1 || m_in > chain.num_sites()) {
        throw ContractViolation("operator mps: need 1 <= m_in <= site count");
    }
    for (std::size_t k = 0; k < chain.num_sites(); ++k) {
        const std::size_t want = k < m_in ? 4 : 2;
        if (chain.physical_dim(k) != want) {
            throw ContractViolation("operator mps: site " + std::to_string(k) +
                                    " must have physical dimension " +
                                    std::to_string(want));
        }
    }
}

ComplexVector contract(const Mps &mps) {
    mps.validate();
    // Rows: composite physical index of the sites so far; cols: open bond.
    ComplexMatrix acc = ComplexMatrix::Ones(1, 1);
    for (const auto &site : mps.sites) {
        const Index d = idx(site.size());
        const Index bond = site.front().rows();
        ComplexMatrix next(acc.rows() * d, bond);
        for (Index x = 0; x < acc.rows(); ++x) {
            for (Index p = 0; p < d; ++p) {
                next.row(x * d + p) =
                    acc.row(x) * site[static_cast<std::size_t>(p)].transpose();
            }
        }
        acc = std::move(next);
    }
    return acc.col(0);
}

ComplexMatrix contract(const OperatorMps &op) {
    op.validate();
    const std::size_t n = op.num_sites();
    const std::size_t m = op.m_in;
    const ComplexVector flat = contract(op.chain);

    // Fused legs (i1, j1, ..., iM, jM, i_{M+1}, ..., iN) -> (i1..iN, j1..jM).
    std::vector<std::size_t> shape(n + m, 2);
    std::vector<std::size_t> perm;
    perm.reserve(n + m);
    for (std::size_t k = 0; k < n; ++k) {
        perm.push_back(k < m ? 2 * k : m + k);
    }
    for (std::size_t k = 0; k < m; ++k) {
        perm.push_back(2 * k + 1);
    }
    const std::size_t out_shape[] = {std::size_t{1} << n, std::size_t{1} << m};
    const ComplexMatrix row = flat.transpose();
    return regroup(row, shape, out_shape, perm);
}

CanonicalMps state_to_mps(const ComplexVector &psi,
                          std::span<const std::size_t> dims,
                          double rank_tol) {
    if (dims.empty()) {
        throw ContractViolation("state_to_mps: no sites");
    }
    const std::size_t total = std::accumulate(
        dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (total != static_cast<std::size_t>(psi.size())) {
        throw ContractViolation("state_to_mps: length " +
                                std::to_string(psi.size()) +
                                " does not match dimensions product " +
                                std::to_string(total));
    }
    if (!all_finite(psi)) {
        throw ContractViolation("state_to_mps: non-finite amplitudes");
    }
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ContractViolation("state_to_mps: state not normalized (norm " +
                                std::to_string(norm) + ")");
    }

    const std::size_t n = dims.size();
    CanonicalMps out;
    out.mps.sites.resize(n);
    out.weights.lambdas.assign(n + 1, RealVector::Ones(1));

    // Row-major remainder tensor (x, p, s): x over the sites before m, p the
    // physical index at m, s the bond to its right.
    std::vector<Complex> flat(psi.data(), psi.data() + psi.size());
    std::size_t left = total;
    Index right_bond = 1;
    for (std::size_t m = n; m-- > 0;) {
        const Index d = idx(dims[m]);
        left /= dims[m];
        const Index x_dim = idx(left);
        // Rows (s, p), cols x.
        ComplexMatrix block(right_bond * d, x_dim);
        for (Index x = 0; x < x_dim; ++x) {
            for (Index p = 0; p < d; ++p) {
                for (Index s = 0; s < right_bond; ++s) {
                    block(s * d + p, x) =
                        flat[static_cast<std::size_t>((x * d + p) * right_bond +
                                                      s)];
                }
            }
        }
        const SvdResult f = truncated_svd(block, rank_tol);
        const Index rank = idx(f.numerical_rank);
        if (rank == 0) {
            throw ContractViolation("state_to_mps: zero state");
        }
        SiteTensor site(static_cast<std::size_t>(d),
                        ComplexMatrix(right_bond, rank));
        for (Index p = 0; p < d; ++p) {
            for (Index s = 0; s < right_bond; ++s) {
                site[static_cast<std::size_t>(p)].row(s) = f.u.row(s * d + p);
            }
        }
        const ComplexMatrix carry = f.s.asDiagonal() * f.v_dagger; // rank x x
        if (m == 0) {
            for (auto &a : site) {
                a *= carry(0, 0);
            }
        } else {
            out.weights.lambdas[m] = normalized_weights(f.s);
            // New flat layout: (x', p', r) with x = x' * d' + p'.
            flat.assign(static_cast<std::size_t>(x_dim * rank), Complex{});
            for (Index x = 0; x < x_dim; ++x) {
                for (Index r = 0; r < rank; ++r) {
                    flat[static_cast<std::size_t>(x * rank + r)] = carry(r, x);
                }
            }
        }
        out.mps.sites[m] = std::move(site);
        right_bond = rank;
    }
    return out;
}

CanonicalOperatorMps operator_to_mps(const Isometry &u, double rank_tol) {
    const std::size_t n = u.n_out();
    const std::size_t m = u.m_in();
    if (m < 1) {
        throw ContractViolation("operator_to_mps: need at least one input qubit");
    }

    // (i1..iN, j1..jM) -> (i1, j1, ..., iM, jM, i_{M+1}, ..., iN).
    std::vector<std::size_t> shape(n + m, 2);
    std::vector<std::size_t> perm;
    perm.reserve(n + m);
    for (std::size_t k = 0; k < n; ++k) {
        perm.push_back(k);
        if (k < m) {
            perm.push_back(n + k);
        }
    }
    const std::size_t total = static_cast<std::size_t>(u.matrix().size());
    const std::size_t out_shape[] = {1, total};
    const ComplexMatrix fused = regroup(u.matrix(), shape, out_shape, perm);

    const double scale = std::sqrt(static_cast<double>(std::size_t{1} << m));
    const ComplexVector psi = fused.row(0).transpose() / scale;

    std::vector<std::size_t> dims(n, 2);
    std::fill(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(m), 4);
    CanonicalMps state = state_to_mps(psi, dims, rank_tol);

    CanonicalOperatorMps out;
    out.op.m_in = m;
    out.op.chain = scale_input_sites(state.mps, m, std::sqrt(2.0));
    out.weights = std::move(state.weights);
    return out;
}

CanonicalMps canonicalize(const Mps &input, double rank_tol) {
    input.validate();
    Mps mps = input;
    const std::size_t n = mps.num_sites();

    // Sweep 1: make sum_p A_p A_p^dagger = I from site 0 onwards.
    for (std::size_t m = 0; m + 1 < n; ++m) {
        auto &site = mps.sites[m];
        const Index d = idx(site.size());
        const Index r_dim = site.front().cols();
        const Index s_dim = site.front().rows();
        ComplexMatrix w(r_dim * d, s_dim);
        for (Index p = 0; p < d; ++p) {
            const auto &a = site[static_cast<std::size_t>(p)];
            for (Index r = 0; r < r_dim; ++r) {
                w.row(r * d + p) = a.col(r).transpose();
            }
        }
        const SvdResult f = truncated_svd(w, rank_tol);
        const Index rank = idx(f.numerical_rank);
        if (rank == 0) {
            throw ContractViolation("canonicalize: zero operator at site " +
                                    std::to_string(m));
        }
        for (Index p = 0; p < d; ++p) {
            ComplexMatrix a(rank, r_dim);
            for (Index r = 0; r < r_dim; ++r) {
                a.col(r) = f.u.row(r * d + p).transpose();
            }
            site[static_cast<std::size_t>(p)] = std::move(a);
        }
        const ComplexMatrix carry_t =
            (f.s.asDiagonal() * f.v_dagger).transpose(); // s_dim x rank
        for (auto &a : mps.sites[m + 1]) {
            a = a * carry_t;
        }
    }

    // Sweep 2: Schmidt decompositions from the last site back to site 0.
    CanonicalMps out;
    out.weights.lambdas.assign(n + 1, RealVector::Ones(1));
    for (std::size_t m = n; m-- > 0;) {
        auto &site = mps.sites[m];
        const Index d = idx(site.size());
        const Index r_dim = site.front().cols();
        const Index s_dim = site.front().rows();
        ComplexMatrix q(s_dim * d, r_dim);
        for (Index p = 0; p < d; ++p) {
            const auto &a = site[static_cast<std::size_t>(p)];
            for (Index s = 0; s < s_dim; ++s) {
                q.row(s * d + p) = a.row(s);
            }
        }
        const SvdResult f = truncated_svd(q, rank_tol);
        const Index rank = idx(f.numerical_rank);
        if (rank == 0) {
            throw ContractViolation("canonicalize: zero operator");
        }
        for (Index p = 0; p < d; ++p) {
            ComplexMatrix a(s_dim, rank);
            for (Index s = 0; s < s_dim; ++s) {
                a.row(s) = f.u.row(s * d + p);
            }
            site[static_cast<std::size_t>(p)] = std::move(a);
        }
        const ComplexMatrix carry = f.s.asDiagonal() * f.v_dagger; // rank x r
        if (m == 0) {
            for (auto &a : site) {
                a *= carry(0, 0);
            }
        } else {
            out.weights.lambdas[m] = normalized_weights(f.s);
            for (auto &a : mps.sites[m - 1]) {
                a = carry * a;
            }
        }
    }
    out.mps = std::move(mps);
    return out;
}

CanonicalOperatorMps canonicalize(const OperatorMps &op, double rank_tol) {
    op.validate();
    const double inv = 1.0 / std::sqrt(2.0);
    CanonicalMps state =
        canonicalize(scale_input_sites(op.chain, op.m_in, inv), rank_tol);
    CanonicalOperatorMps out;
    out.op.m_in = op.m_in;
    out.op.chain = scale_input_sites(state.mps, op.m_in, std::sqrt(2.0));
    out.weights = std::move(state.weights);
    return out;
}

Mps normalized_chain(const OperatorMps &op) {
    return scale_input_sites(op.chain, op.m_in, 1.0 / std::sqrt(2.0));
}

CanonicalResiduals check_canonical(const Mps &mps,
                                   const CanonicalWeights &weights,
                                   double tol) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    CanonicalResiduals out;
    std::vector<std::size_t> bonds;
    try {
        bonds = mps.bond_dims();
    } catch (const ContractViolation &) {
        out.condition_i = out.condition_ii = out.condition_iii = kInf;
        return out;
    }
    const std::size_t n = mps.num_sites();
    if (weights.lambdas.size() != n + 1) {
        out.condition_ii = out.condition_iii = kInf;
    }

    for (std::size_t m = 0; m < n; ++m) {
        const auto &site = mps.sites[m];
        const Index r_dim = idx(bonds[m]);
        ComplexMatrix gram = ComplexMatrix::Zero(r_dim, r_dim);
        for (const auto &a : site) {
            gram += a.adjoint() * a;
        }
        gram -= ComplexMatrix::Identity(r_dim, r_dim);
        out.condition_i = std::max(out.condition_i, spectral_norm(gram));
    }

    if (weights.lambdas.size() == n + 1) {
        for (std::size_t b = 0; b <= n; ++b) {
            const RealVector &w = weights.lambdas[b];
            if (static_cast<std::size_t>(w.size()) != bonds[b]) {
                out.condition_ii = out.condition_iii = kInf;
                break;
            }
            double res = std::abs(w.sum() - 1.0);
            const double smallest = w.minCoeff();
            if (!(smallest > 0.0)) {
                res = std::max(res, 1.0 - smallest);
            }
            out.condition_iii = std::max(out.condition_iii, res);
        }
    }

    if (std::isfinite(out.condition_ii)) {
        for (std::size_t m = 0; m < n; ++m) {
            const auto &site = mps.sites[m];
            const RealVector &in_w = weights.lambdas[m];
            const RealVector &out_w = weights.lambdas[m + 1];
            ComplexMatrix acc = ComplexMatrix::Zero(out_w.size(), out_w.size());
            for (const auto &a : site) {
                acc += a * in_w.cast<Complex>().asDiagonal() * a.adjoint();
            }
            acc -= out_w.cast<Complex>().asDiagonal();
            out.condition_ii = std::max(out.condition_ii, spectral_norm(acc));
        }
    }

    out.passes = out.condition_i < tol && out.condition_ii < tol &&
                 out.condition_iii < tol;
    return out;
}

CanonicalResiduals check_canonical(const OperatorMps &op,
                                   const CanonicalWeights &weights,
                                   double tol) {
    return check_canonical(normalized_chain(op), weights, tol);
}

GaugeVerdict gauge_check(const CanonicalMps &a, const CanonicalMps &b,
                         double tol) {
    GaugeVerdict out;
    const Mps &ma = a.mps;
    const Mps &mb = b.mps;
    if (ma.physical_dims() != mb.physical_dims()) {
        out.reason = "physical dimensions differ";
        return out;
    }
    const auto bonds = ma.bond_dims();
    if (bonds != mb.bond_dims()) {
        out.reason = "bond dimension mismatch";
        return out;
    }
    const std::size_t n = ma.num_sites();
    if (a.weights.lambdas.size() != n + 1 || b.weights.lambdas.size() != n + 1) {
        out.reason = "weights missing";
        return out;
    }
    for (std::size_t bond = 0; bond <= n; ++bond) {
        const RealVector &wa = a.weights.lambdas[bond];
        const RealVector &wb = b.weights.lambdas[bond];
        if (wa.size() != wb.size() ||
            static_cast<std::size_t>(wa.size()) != bonds[bond]) {
            out.reason = "weight shape mismatch on bond " + std::to_string(bond);
            return out;
        }
        const double diff = (wa - wb).cwiseAbs().maxCoeff();
        out.max_residual = std::max(out.max_residual, diff);
        if (diff > tol) {
            out.reason = "weights differ on bond " + std::to_string(bond);
            return out;
        }
    }

    // b_m V_m = V_{m+1} a_m for every physical index, solved for V_{m+1}.
    ComplexMatrix v_prev = ComplexMatrix::Identity(1, 1);
    for (std::size_t m = 0; m < n; ++m) {
        const auto &sa = ma.sites[m];
        const auto &sb = mb.sites[m];
        const Index d = idx(sa.size());
        const Index r_dim = idx(bonds[m]);
        const Index s_dim = idx(bonds[m + 1]);
        ComplexMatrix y(s_dim, d * r_dim);
        ComplexMatrix x(s_dim, d * r_dim);
        for (Index p = 0; p < d; ++p) {
            y.middleCols(p * r_dim, r_dim) = sa[static_cast<std::size_t>(p)];
            x.middleCols(p * r_dim, r_dim) =
                sb[static_cast<std::size_t>(p)] * v_prev;
        }

        ComplexMatrix v = ComplexMatrix::Zero(s_dim, s_dim);
        for (const auto &block :
             degenerate_blocks(a.weights.lambdas[m + 1], tol)) {
            const Index k = idx(block.size());
            ComplexMatrix yb(k, y.cols());
            ComplexMatrix xb(k, x.cols());
            for (Index t = 0; t < k; ++t) {
                yb.row(t) = y.row(idx(block[static_cast<std::size_t>(t)]));
                xb.row(t) = x.row(idx(block[static_cast<std::size_t>(t)]));
            }
            // Least squares for vb in xb = vb * yb.
            const ComplexMatrix vb_t =
                yb.transpose().completeOrthogonalDecomposition().solve(
                    xb.transpose());
            for (Index r = 0; r < k; ++r) {
                for (Index c = 0; c < k; ++c) {
                    v(idx(block[static_cast<std::size_t>(r)]),
                      idx(block[static_cast<std::size_t>(c)])) = vb_t(c, r);
                }
            }
        }

        const double eq = (x - v * y).norm();
        const double unit = gram_residual(v);
        out.max_residual = std::max({out.max_residual, eq, unit});
        if (eq > tol || unit > tol) {
            out.reason = "no commuting bond unitary at bond " +
                         std::to_string(m + 1);
            return out;
        }
        v_prev = std::move(v);
    }
    const double boundary = std::abs(v_prev(0, 0) - Complex{1.0, 0.0});
    out.max_residual = std::max(out.max_residual, boundary);
    if (boundary > tol) {
        out.reason = "right boundary gauge is not 1";
        return out;
    }
    out.related = true;
    return out;
}

GaugeVerdict gauge_check(const CanonicalOperatorMps &a,
                         const CanonicalOperatorMps &b, double tol) {
    if (a.op.m_in != b.op.m_in) {
        GaugeVerdict out;
        out.reason = "input site counts differ";
        return out;
    }
    return gauge_check(CanonicalMps{normalized_chain(a.op), a.weights},
                       CanonicalMps{normalized_chain(b.op), b.weights}, tol);
}

} // namespace seqiso
