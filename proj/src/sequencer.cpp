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
#include "seqiso/sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "seqiso/errors.hpp"
#include "seqiso/kernels.hpp"

namespace seqiso {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

std::string describe(const SequentialityReport &report) {
    return "isometry is not sequentially implementable (max criterion "
           "residual " +
           std::to_string(report.max_residual()) + " >= tolerance " +
           std::to_string(report.crit_tol) + ")";
}

} // namespace

double SequentialityReport::max_residual() const {
    double out = 0.0;
    for (double r : per_site_residuals) {
        out = std::max(out, r);
    }
    return out;
}

NotImplementable::NotImplementable(SequentialityReport report)
    : std::runtime_error(describe(report)), report_(std::move(report)) {}

void SequentialPlan::validate(double tol) const {
    if (steps.empty()) {
        throw ContractViolation("plan: no steps");
    }
    if (ancilla_dim == 0 || m_in < 1 || m_in > steps.size()) {
        throw ContractViolation("plan: need ancilla_dim >= 1 and 1 <= m_in <= N");
    }
    if (initial_ancilla >= ancilla_dim || final_ancilla >= ancilla_dim) {
        throw ContractViolation("plan: ancilla boundary level out of range");
    }
    const Index dim = idx(2 * ancilla_dim);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto &v = steps[k];
        if (v.rows() != dim || v.cols() != dim) {
            throw ContractViolation("plan: step " + std::to_string(k) +
                                    " has wrong shape");
        }
        const double res = gram_residual(v);
        if (!(res <= tol)) {
            throw ContractViolation("plan: step " + std::to_string(k) +
                                    " is not unitary (residual " +
                                    std::to_string(res) + ")");
        }
    }
}

SequentialityReport sequentiality_test(const CanonicalOperatorMps &canonical,
                                       double tol) {
    const OperatorMps &op = canonical.op;
    op.validate();
    SequentialityReport report;
    report.crit_tol = tol;
    report.bond_dims = op.bond_dims();
    for (std::size_t k = 0; k < op.m_in; ++k) {
        const SiteTensor &site = op.chain.sites[k];
        const Index r_dim = site.front().cols();
        double worst = 0.0;
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t jp = 0; jp < 2; ++jp) {
                ComplexMatrix g = ComplexMatrix::Zero(r_dim, r_dim);
                for (std::size_t i = 0; i < 2; ++i) {
                    g += site[2 * i + j].adjoint() * site[2 * i + jp];
                }
                if (j == jp) {
                    g -= ComplexMatrix::Identity(r_dim, r_dim);
                }
                worst = std::max(worst, spectral_norm(g));
            }
        }
        report.per_site_residuals.push_back(worst);
    }
    report.implementable = report.max_residual() < tol;
    if (report.implementable) {
        report.ancilla_dim_if_yes = op.max_bond_dim();
    }
    return report;
}

SequentialityReport sequentiality_test(const Isometry &u, double tol,
                                       double rank_tol) {
    SequentialityReport report =
        sequentiality_test(operator_to_mps(u, rank_tol), tol);
    report.rank_tol = rank_tol;
    return report;
}

SequentialPlan build_plan(const CanonicalOperatorMps &canonical, double tol) {
    SequentialityReport report = sequentiality_test(canonical, tol);
    if (!report.implementable) {
        throw NotImplementable(std::move(report));
    }
    const OperatorMps &op = canonical.op;
    const std::size_t n = op.num_sites();
    const std::size_t d = op.max_bond_dim();
    const Index dim = idx(2 * d);

    SequentialPlan plan;
    plan.ancilla_dim = d;
    plan.m_in = op.m_in;
    plan.bond_dims = report.bond_dims;
    plan.steps.reserve(n);

    for (std::size_t k = 0; k < n; ++k) {
        const SiteTensor &site = op.chain.sites[k];
        const Index r_dim = site.front().cols();
        const Index s_dim = site.front().rows();
        const bool input_site = k < op.m_in;

        // Defined columns: |r>_a |j> for input sites, |r>_a |0> otherwise.
        std::vector<Index> positions;
        ComplexMatrix defined(dim, r_dim * (input_site ? 2 : 1));
        Index c = 0;
        for (Index r = 0; r < r_dim; ++r) {
            for (std::size_t j = 0; j < (input_site ? 2u : 1u); ++j) {
                ComplexVector col = ComplexVector::Zero(dim);
                for (std::size_t i = 0; i < 2; ++i) {
                    const ComplexMatrix &a =
                        input_site ? site[2 * i + j] : site[i];
                    for (Index s = 0; s < s_dim; ++s) {
                        col[2 * s + idx(i)] = a(s, r);
                    }
                }
                defined.col(c++) = col;
                positions.push_back(2 * r + idx(j));
            }
        }
        const double residual = gram_residual(defined);
        if (!(residual <= tol)) {
            throw InternalInconsistency(
                "build_plan: defined columns of step " + std::to_string(k) +
                " are not orthonormal (residual " + std::to_string(residual) +
                ")");
        }
        const ComplexMatrix completed = complete_to_unitary(defined, tol);

        ComplexMatrix step(dim, dim);
        std::vector<bool> used(static_cast<std::size_t>(dim), false);
        for (Index t = 0; t < idx(positions.size()); ++t) {
            step.col(positions[static_cast<std::size_t>(t)]) = completed.col(t);
            used[static_cast<std::size_t>(positions[static_cast<std::size_t>(t)])] =
                true;
        }
        Index extra = idx(positions.size());
        for (Index p = 0; p < dim; ++p) {
            if (!used[static_cast<std::size_t>(p)]) {
                step.col(p) = completed.col(extra++);
            }
        }
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

SequentialPlan build_plan(const Isometry &u, double tol, double rank_tol) {
    try {
        return build_plan(operator_to_mps(u, rank_tol), tol);
    } catch (NotImplementable &e) {
        SequentialityReport report = e.report();
        report.rank_tol = rank_tol;
        throw NotImplementable(std::move(report));
    }
}

SimulationResult simulate(const SequentialPlan &plan,
                          const ComplexVector &input, ExecutionPolicy policy) {
    const std::size_t n = plan.n_sites();
    if (n == 0 || plan.m_in > n || n > 24) {
        throw ContractViolation("simulate: invalid plan shape");
    }
    const std::size_t chain = std::size_t{1} << n;
    if (input.size() != idx(std::size_t{1} << plan.m_in)) {
        throw ContractViolation("simulate: input has " +
                                std::to_string(input.size()) +
                                " amplitudes, plan expects " +
                                std::to_string(std::size_t{1} << plan.m_in));
    }
    if (!all_finite(input) || std::abs(input.norm() - 1.0) > 1e-8) {
        throw ContractViolation("simulate: input state must be normalized");
    }

    std::vector<Complex> state(plan.ancilla_dim * chain, Complex{});
    const std::size_t offset = plan.initial_ancilla * chain;
    for (Index j = 0; j < input.size(); ++j) {
        state[offset + (static_cast<std::size_t>(j) << (n - plan.m_in))] =
            input[j];
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (policy == ExecutionPolicy::Serial) {
            kernels::apply_step_serial(state, plan.ancilla_dim, n, k,
                                       plan.steps[k]);
        } else {
            kernels::apply_step_omp(state, plan.ancilla_dim, n, k,
                                    plan.steps[k]);
        }
    }

    SimulationResult out;
    out.chain = Eigen::Map<const ComplexVector>(
        state.data() + plan.final_ancilla * chain, idx(chain));
    double rest = 0.0;
    for (std::size_t a = 0; a < plan.ancilla_dim; ++a) {
        if (a == plan.final_ancilla) {
            continue;
        }
        for (std::size_t c = 0; c < chain; ++c) {
            rest += std::norm(state[a * chain + c]);
        }
    }
    out.decoupling_residual = std::sqrt(rest);
    return out;
}

VerificationResult verify_plan(const SequentialPlan &plan, const Isometry &u,
                               ExecutionPolicy policy) {
    plan.validate();
    if (plan.m_in != u.m_in() || plan.n_sites() != u.n_out()) {
        throw ContractViolation("verify_plan: plan and isometry shapes differ");
    }
    const auto inputs = static_cast<std::int64_t>(std::size_t{1} << u.m_in());
    double state_err = 0.0;
    double decouple = 0.0;
#pragma omp parallel for if (policy == ExecutionPolicy::Parallel) \
    reduction(max : state_err, decouple) schedule(static)
    for (std::int64_t j = 0; j < inputs; ++j) {
        const ComplexVector basis = ComplexVector::Unit(inputs, j);
        const SimulationResult r = simulate(plan, basis, policy);
        state_err = std::max(state_err, (r.chain - u.matrix().col(j)).norm());
        decouple = std::max(decouple, r.decoupling_residual);
    }

    VerificationResult out;
    out.max_state_error = state_err;
    out.max_decoupling_residual = decouple;
    out.max_error = std::max(state_err, decouple);
    out.operator_norm_bound =
        std::sqrt(static_cast<double>(inputs)) * state_err;
    return out;
}

OperatorMps corollary_construct(const Mps &u0, const Mps &u1) {
    u0.validate();
    u1.validate();
    const std::size_t n = u0.num_sites();
    if (u1.num_sites() != n) {
        throw ContractViolation("corollary_construct: site counts differ");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (u0.physical_dim(k) != 2 || u1.physical_dim(k) != 2) {
            throw ContractViolation(
                "corollary_construct: expected qubit sites");
        }
    }

    OperatorMps out;
    out.m_in = 1;
    out.chain.sites.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const SiteTensor &a = u0.sites[k];
        const SiteTensor &b = u1.sites[k];
        const Index ar = a.front().rows(), ac = a.front().cols();
        const Index br = b.front().rows(), bc = b.front().cols();
        const bool first = k == 0;
        const bool last = k + 1 == n;
        const Index rows = last ? 1 : ar + br;
        const Index cols = first ? 1 : ac + bc;
        auto place = [&](const ComplexMatrix &ma, const ComplexMatrix &mb) {
            ComplexMatrix c = ComplexMatrix::Zero(rows, cols);
            if (first && last) {
                c = ma + mb;
            } else if (first) {
                c.topRows(ar) = ma;
                c.bottomRows(br) = mb;
            } else if (last) {
                c.leftCols(ac) = ma;
                c.rightCols(bc) = mb;
            } else {
                c.topLeftCorner(ar, ac) = ma;
                c.bottomRightCorner(br, bc) = mb;
            }
            return c;
        };
        SiteTensor site;
        if (first) {
            // Physical index p = 2 * i + j: input j selects the summand.
            const ComplexMatrix za = ComplexMatrix::Zero(ar, ac);
            const ComplexMatrix zb = ComplexMatrix::Zero(br, bc);
            for (std::size_t i = 0; i < 2; ++i) {
                site.push_back(place(a[i], zb));
                site.push_back(place(za, b[i]));
            }
        } else {
            for (std::size_t i = 0; i < 2; ++i) {
                site.push_back(place(a[i], b[i]));
            }
        }
        out.chain.sites[k] = std::move(site);
    }
    return out;
}

std::vector<std::size_t> operator_schmidt_ranks(const Isometry &u,
                                                double rank_tol) {
    const std::size_t n = u.n_out();
    if (u.m_in() != n) {
        throw ContractViolation(
            "operator_schmidt_ranks: requires a square unitary (M = N)");
    }
    std::vector<std::size_t> ranks;
    const std::vector<std::size_t> shape(2 * n, 2);
    for (std::size_t c = 1; c < n; ++c) {
        std::vector<std::size_t> perm;
        for (std::size_t k = 0; k < c; ++k) perm.push_back(k);
        for (std::size_t k = 0; k < c; ++k) perm.push_back(n + k);
        for (std::size_t k = c; k < n; ++k) perm.push_back(k);
        for (std::size_t k = c; k < n; ++k) perm.push_back(n + k);
        const std::size_t out_shape[] = {std::size_t{1} << (2 * c),
                                         std::size_t{1} << (2 * (n - c))};
        const ComplexMatrix r = regroup(u.matrix(), shape, out_shape, perm);
        ranks.push_back(svd(r, rank_tol).numerical_rank);
    }
    return ranks;
}

ComplexMatrix reduced_density_matrix(const ComplexVector &chain,
                                     std::size_t n_sites, std::size_t site) {
    if (site >= n_sites || chain.size() != idx(std::size_t{1} << n_sites)) {
        throw ContractViolation("reduced_density_matrix: bad site or length");
    }
    const std::size_t bit = std::size_t{1} << (n_sites - 1 - site);
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    for (std::size_t c = 0; c < static_cast<std::size_t>(chain.size()); ++c) {
        if (c & bit) {
            continue;
        }
        const Complex z0 = chain[idx(c)];
        const Complex z1 = chain[idx(c | bit)];
        rho(0, 0) += z0 * std::conj(z0);
        rho(0, 1) += z0 * std::conj(z1);
        rho(1, 0) += z1 * std::conj(z0);
        rho(1, 1) += z1 * std::conj(z1);
    }
    return rho;
}

} // namespace seqiso
