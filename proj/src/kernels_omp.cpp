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
#include <cstdint>
#include <vector>

#include "seqiso/kernels.hpp"

namespace seqiso::kernels {

namespace {
// Below this many amplitude groups the fork/join cost dominates.
constexpr std::int64_t kParallelThreshold = 512;
} // namespace

void apply_step_omp(std::span<Complex> state, std::size_t ancilla_dim,
                    std::size_t n_sites, std::size_t site,
                    const ComplexMatrix &step) {
    detail::check_step_shape(state.size(), ancilla_dim, n_sites, site, step);
    const std::size_t chain = std::size_t{1} << n_sites;
    const std::size_t shift = n_sites - 1 - site;
    const std::size_t bit = std::size_t{1} << shift;
    const std::size_t low_mask = bit - 1;
    const auto groups = static_cast<std::int64_t>(chain / 2);
    const auto dim = static_cast<Eigen::Index>(2 * ancilla_dim);
    Complex *data = state.data();

#pragma omp parallel if (groups >= kParallelThreshold)
    {
        ComplexVector in(dim);
        ComplexVector out(dim);
#pragma omp for schedule(static)
        for (std::int64_t g = 0; g < groups; ++g) {
            const auto t = static_cast<std::size_t>(g);
            // Insert a zero at the site's bit position.
            const std::size_t c0 = ((t & ~low_mask) << 1) | (t & low_mask);
            for (std::size_t a = 0; a < ancilla_dim; ++a) {
                in[static_cast<Eigen::Index>(2 * a)] = data[a * chain + c0];
                in[static_cast<Eigen::Index>(2 * a + 1)] =
                    data[a * chain + (c0 | bit)];
            }
            out.noalias() = step * in;
            for (std::size_t a = 0; a < ancilla_dim; ++a) {
                data[a * chain + c0] = out[static_cast<Eigen::Index>(2 * a)];
                data[a * chain + (c0 | bit)] =
                    out[static_cast<Eigen::Index>(2 * a + 1)];
            }
        }
    }
}

} // namespace seqiso::kernels
