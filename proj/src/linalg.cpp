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
#include "seqiso/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seqiso/errors.hpp"

namespace seqiso {

namespace {

// Candidates within this relative margin of the maximum modulus count as
// tied, so rounding noise does not move the phase anchor.
constexpr double kPhaseTieMargin = 1e-9;

std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           std::multiplies<>());
}

} // namespace

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const Complex z = m(r, c);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                return false;
            }
        }
    }
    return true;
}

Complex fix_phase(Eigen::Ref<ComplexVector> v) {
    double largest = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        largest = std::max(largest, std::abs(v[i]));
    }
    if (largest == 0.0) {
        return Complex{1.0, 0.0};
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag >= largest * (1.0 - kPhaseTieMargin)) {
            const Complex factor = std::conj(v[i]) / mag;
            v *= factor;
            v[i] = Complex{v[i].real(), 0.0};
            return factor;
        }
    }
    return Complex{1.0, 0.0};
}

SvdResult svd(const ComplexMatrix &m, double rank_tol) {
    if (m.size() == 0) {
        throw ContractViolation("svd: empty matrix");
    }
    if (rank_tol < 0.0) {
        throw ContractViolation("svd: negative rank tolerance");
    }
    if (!all_finite(m)) {
        throw ContractViolation("svd: non-finite input entries");
    }

    Eigen::BDCSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
    SvdResult out;
    out.u = solver.matrixU();
    out.s = solver.singularValues();
    out.v_dagger = solver.matrixV().adjoint();

    if (!all_finite(out.u) || !all_finite(out.v_dagger) ||
        !out.s.allFinite()) {
        throw NumericFailure("svd: factorization did not converge");
    }

    for (Eigen::Index k = 0; k < out.u.cols(); ++k) {
        const Complex f = fix_phase(out.u.col(k));
        out.v_dagger.row(k) *= std::conj(f);
    }

    const double cutoff = out.s.size() > 0 ? rank_tol * out.s[0] : 0.0;
    out.numerical_rank = 0;
    for (Eigen::Index i = 0; i < out.s.size(); ++i) {
        if (out.s[i] > cutoff) {
            ++out.numerical_rank;
        }
    }
    return out;
}

SvdResult truncated_svd(const ComplexMatrix &m, double rank_tol) {
    SvdResult full = svd(m, rank_tol);
    const auto r = static_cast<Eigen::Index>(full.numerical_rank);
    SvdResult out;
    out.u = full.u.leftCols(r);
    out.s = full.s.head(r);
    out.v_dagger = full.v_dagger.topRows(r);
    out.numerical_rank = full.numerical_rank;
    return out;
}

double gram_residual(const ComplexMatrix &m) {
    const ComplexMatrix gram = m.adjoint() * m;
    return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).norm();
}

ComplexMatrix complete_to_unitary(const ComplexMatrix &cols,
                                  double gram_tol) {
    const Eigen::Index d = cols.rows();
    const Eigen::Index k = cols.cols();
    if (d == 0 || k > d) {
        throw ContractViolation("complete_to_unitary: need 0 < k <= d, got d=" +
                                std::to_string(d) + " k=" + std::to_string(k));
    }
    const double residual = gram_residual(cols);
    if (!(residual <= gram_tol)) {
        throw ContractViolation(
            "complete_to_unitary: columns not orthonormal, Gram residual " +
            std::to_string(residual));
    }

    ComplexMatrix out(d, d);
    out.leftCols(k) = cols;
    Eigen::Index filled = k;
    for (Eigen::Index e = 0; e < d && filled < d; ++e) {
        ComplexVector candidate = ComplexVector::Unit(d, e);
        // Two passes of classical Gram-Schmidt keep the result orthogonal to
        // working precision.
        for (int pass = 0; pass < 2; ++pass) {
            const ComplexMatrix basis = out.leftCols(filled);
            candidate -= basis * (basis.adjoint() * candidate);
        }
        const double norm = candidate.norm();
        if (norm < 1e-8) {
            continue;
        }
        out.col(filled++) = candidate / norm;
    }
    if (filled != d) {
        throw NumericFailure("complete_to_unitary: complement basis incomplete");
    }
    return out;
}

std::vector<std::size_t>
inverse_permutation(std::span<const std::size_t> permutation) {
    std::vector<std::size_t> inv(permutation.size());
    for (std::size_t t = 0; t < permutation.size(); ++t) {
        inv[permutation[t]] = t;
    }
    return inv;
}

ComplexMatrix regroup(const ComplexMatrix &m,
                      std::span<const std::size_t> in_shape,
                      std::span<const std::size_t> out_shape,
                      std::span<const std::size_t> permutation) {
    const std::size_t total = static_cast<std::size_t>(m.size());
    if (product(in_shape) != total) {
        throw ContractViolation("regroup: in_shape does not match entry count");
    }
    if (out_shape.size() != 2 || product(out_shape) != total) {
        throw ContractViolation(
            "regroup: out_shape must be {rows, cols} covering every entry");
    }
    const std::size_t legs = in_shape.size();
    if (permutation.size() != legs) {
        throw ContractViolation("regroup: permutation size != leg count");
    }
    std::vector<bool> seen(legs, false);
    for (std::size_t p : permutation) {
        if (p >= legs || seen[p]) {
            throw ContractViolation("regroup: permutation is not a bijection");
        }
        seen[p] = true;
    }

    // Row-major strides of the input legs, then reordered for the output.
    std::vector<std::size_t> in_stride(legs, 1);
    for (std::size_t l = legs; l-- > 1;) {
        in_stride[l - 1] = in_stride[l] * in_shape[l];
    }
    std::vector<std::size_t> out_dims(legs), src_stride(legs);
    for (std::size_t t = 0; t < legs; ++t) {
        out_dims[t] = in_shape[permutation[t]];
        src_stride[t] = in_stride[permutation[t]];
    }

    const auto in_cols = static_cast<std::size_t>(m.cols());
    const auto out_cols = out_shape[1];
    ComplexMatrix out(static_cast<Eigen::Index>(out_shape[0]),
                      static_cast<Eigen::Index>(out_cols));
    std::vector<std::size_t> digit(legs, 0);
    std::size_t src = 0;
    for (std::size_t dst = 0; dst < total; ++dst) {
        out(static_cast<Eigen::Index>(dst / out_cols),
            static_cast<Eigen::Index>(dst % out_cols)) =
            m(static_cast<Eigen::Index>(src / in_cols),
              static_cast<Eigen::Index>(src % in_cols));
        // Odometer increment over output legs.
        for (std::size_t t = legs; t-- > 0;) {
            ++digit[t];
            src += src_stride[t];
            if (digit[t] < out_dims[t]) {
                break;
            }
            src -= src_stride[t] * out_dims[t];
            digit[t] = 0;
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) =
                a(r, c) * b;
        }
    }
    return out;
}

double spectral_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> solver(m);
    return solver.singularValues()[0];
}

} // namespace seqiso
