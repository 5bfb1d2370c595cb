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
#include "seqiso/oplib.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "seqiso/errors.hpp"

namespace seqiso {

namespace {

using Index = Eigen::Index;

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t pow2(std::size_t k) { return std::size_t{1} << k; }

double binomial(std::size_t n, std::size_t k) {
    double out = 1.0;
    for (std::size_t t = 1; t <= k; ++t) {
        out = out * static_cast<double>(n - k + t) / static_cast<double>(t);
    }
    return out;
}

class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    Complex next() {
        constexpr double kScale = 1.0 / 9007199254740992.0; // 2^-53
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * kScale;
        const double u2 = static_cast<double>(engine_() >> 11) * kScale;
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

  private:
    std::mt19937_64 engine_;
};

ComplexMatrix haar_columns(std::size_t rows, std::size_t cols,
                           std::uint64_t seed) {
    GaussianStream stream(seed);
    ComplexMatrix g(static_cast<Index>(rows), static_cast<Index>(cols));
    for (Index r = 0; r < g.rows(); ++r) {
        for (Index c = 0; c < g.cols(); ++c) {
            g(r, c) = stream.next();
        }
    }
    for (Index c = 0; c < g.cols(); ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Index p = 0; p < c; ++p) {
                g.col(c) -= g.col(p) * g.col(p).dot(g.col(c));
            }
        }
        g.col(c) /= g.col(c).norm();
    }
    return g;
}

ComplexMatrix basis_map(std::size_t n_out,
                        const std::vector<ComplexVector> &columns) {
    ComplexMatrix u(static_cast<Index>(pow2(n_out)),
                    static_cast<Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        u.col(static_cast<Index>(c)) = columns[c];
    }
    return u;
}

ComplexVector ghz(std::size_t n, double sign) {
    ComplexVector v = ComplexVector::Zero(static_cast<Index>(pow2(n)));
    v[0] = kInvSqrt2;
    v[v.size() - 1] += sign * kInvSqrt2;
    return v;
}

ComplexVector tensor(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

} // namespace

Isometry::Isometry(std::size_t m_in, std::size_t n_out, ComplexMatrix matrix,
                   double tol)
    : m_in_(m_in), n_out_(n_out), matrix_(std::move(matrix)), residual_(0.0) {
    if (m_in_ < 1 || m_in_ > n_out_) {
        throw ContractViolation("isometry: need 1 <= M <= N, got M=" +
                                std::to_string(m_in_) +
                                " N=" + std::to_string(n_out_));
    }
    if (n_out_ > 24) {
        throw ContractViolation("isometry: too many output qubits");
    }
    if (matrix_.rows() != static_cast<Index>(pow2(n_out_)) ||
        matrix_.cols() != static_cast<Index>(pow2(m_in_))) {
        throw ContractViolation(
            "isometry: matrix is " + std::to_string(matrix_.rows()) + "x" +
            std::to_string(matrix_.cols()) + ", expected " +
            std::to_string(pow2(n_out_)) + "x" + std::to_string(pow2(m_in_)));
    }
    if (!all_finite(matrix_)) {
        throw ContractViolation("isometry: non-finite entries");
    }
    residual_ = gram_residual(matrix_);
    if (!(residual_ <= tol)) {
        throw ContractViolation("isometry: ||U^dagger U - I|| = " +
                                std::to_string(residual_) +
                                " exceeds tolerance");
    }
}

Isometry cnot() {
    ComplexMatrix u = ComplexMatrix::Zero(4, 4);
    u(0, 0) = u(1, 1) = u(3, 2) = u(2, 3) = 1.0;
    return Isometry(2, 2, std::move(u));
}

Isometry swap_gate() {
    ComplexMatrix u = ComplexMatrix::Zero(4, 4);
    u(0, 0) = u(2, 1) = u(1, 2) = u(3, 3) = 1.0;
    return Isometry(2, 2, std::move(u));
}

Isometry controlled_phase(double phi) {
    ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    u(3, 3) = std::polar(1.0, phi);
    return Isometry(2, 2, std::move(u));
}

Isometry shor_encoder() {
    const ComplexVector plus = ghz(3, 1.0);
    const ComplexVector minus = ghz(3, -1.0);
    return Isometry(1, 9,
                    basis_map(9, {tensor(tensor(plus, plus), plus),
                                  tensor(tensor(minus, minus), minus)}));
}

ComplexVector dicke_state(std::size_t qubits, std::size_t ones) {
    if (ones > qubits) {
        throw ContractViolation("dicke_state: more excitations than qubits");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Index>(pow2(qubits)));
    const double amp = 1.0 / std::sqrt(binomial(qubits, ones));
    for (std::size_t x = 0; x < pow2(qubits); ++x) {
        if (static_cast<std::size_t>(std::popcount(x)) == ones) {
            v[static_cast<Index>(x)] = amp;
        }
    }
    return v;
}

Isometry gisin_massar_cloner(std::size_t n_clones) {
    const std::size_t n = n_clones;
    if (n < 1 || n > 6) {
        throw ContractViolation("gisin_massar_cloner: need 1 <= n <= 6");
    }
    const std::size_t n_out = 2 * n - 1;
    std::vector<ComplexVector> columns;
    for (std::size_t input = 0; input < 2; ++input) {
        ComplexVector col =
            ComplexVector::Zero(static_cast<Index>(pow2(n_out)));
        for (std::size_t j = 0; j < n; ++j) {
            const double alpha =
                std::sqrt(2.0 * static_cast<double>(n - j) /
                          static_cast<double>(n * (n + 1)));
            // Excitation counts of |1> among clones and anticlones.
            const std::size_t clone_ones = input == 0 ? j : n - j;
            const std::size_t anti_ones = input == 0 ? n - 1 - j : j;
            col += alpha * tensor(dicke_state(n, clone_ones),
                                  dicke_state(n - 1, anti_ones));
        }
        columns.push_back(std::move(col));
    }
    return Isometry(1, n_out, basis_map(n_out, columns));
}

Isometry ghz_isometry(std::size_t n) {
    if (n < 1 || n > 24) {
        throw ContractViolation("ghz_isometry: need 1 <= n <= 24");
    }
    return Isometry(1, n, basis_map(n, {ghz(n, 1.0), ghz(n, -1.0)}));
}

Isometry random_isometry(std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m < 1 || m > n || n > 10) {
        throw ContractViolation("random_isometry: need 1 <= m <= n <= 10");
    }
    return Isometry(m, n, haar_columns(pow2(n), pow2(m), seed));
}

ComplexMatrix random_single_qubit_unitary(std::uint64_t seed) {
    return haar_columns(2, 2, seed);
}

Isometry product_unitary(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) {
        throw ContractViolation("product_unitary: no factors");
    }
    ComplexMatrix u = ComplexMatrix::Identity(1, 1);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const auto &f = factors[k];
        if (f.rows() != 2 || f.cols() != 2 || !all_finite(f) ||
            gram_residual(f) > Isometry::kContractTol) {
            throw ContractViolation("product_unitary: factor " +
                                    std::to_string(k) +
                                    " is not a 2x2 unitary");
        }
        u = kron(u, f);
    }
    return Isometry(factors.size(), factors.size(), std::move(u));
}

ComplexMatrix named_single_qubit_gate(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    ComplexMatrix g(2, 2);
    const Complex i{0.0, 1.0};
    if (key == "I") {
        g << 1, 0, 0, 1;
    } else if (key == "X") {
        g << 0, 1, 1, 0;
    } else if (key == "Y") {
        g << 0, -i, i, 0;
    } else if (key == "Z") {
        g << 1, 0, 0, -1;
    } else if (key == "H") {
        g << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    } else if (key == "S") {
        g << 1, 0, 0, i;
    } else if (key == "T") {
        g << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
    } else {
        throw ContractViolation("unknown single-qubit gate '" + key + "'");
    }
    return g;
}

} // namespace seqiso
