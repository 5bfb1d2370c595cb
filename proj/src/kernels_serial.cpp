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
#include <algorithm>
#include <string>
#include <vector>

#include "seqiso/errors.hpp"
#include "seqiso/kernels.hpp"

namespace seqiso::kernels {

void detail::check_step_shape(std::size_t state_size,
                              std::size_t ancilla_dim, std::size_t n_sites,
                              std::size_t site, const ComplexMatrix &step) {
    const std::size_t dim = 2 * ancilla_dim;
    if (site >= n_sites || ancilla_dim == 0 ||
        state_size != ancilla_dim << n_sites ||
        static_cast<std::size_t>(step.rows()) != dim ||
        static_cast<std::size_t>(step.cols()) != dim) {
        throw ContractViolation("apply_step: dimension mismatch (state " +
                                std::to_string(state_size) + ", ancilla " +
                                std::to_string(ancilla_dim) + ", site " +
                                std::to_string(site) + ")");
    }
}

void apply_step_serial(std::span<Complex> state, std::size_t ancilla_dim,
                       std::size_t n_sites, std::size_t site,
                       const ComplexMatrix &step) {
    detail::check_step_shape(state.size(), ancilla_dim, n_sites, site, step);
    const std::size_t chain = std::size_t{1} << n_sites;
    const std::size_t bit = std::size_t{1} << (n_sites - 1 - site);
    std::vector<Complex> out(state.size(), Complex{});
    for (std::size_t a_out = 0; a_out < ancilla_dim; ++a_out) {
        for (std::size_t c_out = 0; c_out < chain; ++c_out) {
            const std::size_t q_out = (c_out & bit) ? 1 : 0;
            const auto row = static_cast<Eigen::Index>(2 * a_out + q_out);
            Complex acc{};
            for (std::size_t a_in = 0; a_in < ancilla_dim; ++a_in) {
                for (std::size_t q_in = 0; q_in < 2; ++q_in) {
                    const std::size_t c_in = q_in ? (c_out | bit) : (c_out & ~bit);
                    acc += step(row, static_cast<Eigen::Index>(2 * a_in + q_in)) *
                           state[a_in * chain + c_in];
                }
            }
            out[a_out * chain + c_out] = acc;
        }
    }
    std::copy(out.begin(), out.end(), state.begin());
}

} // namespace seqiso::kernels
