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

#include <iosfwd>
#include <string>
#include <vector>

#include "seqiso/isometry.hpp"
#include "seqiso/linalg.hpp"

namespace seqiso::cli {

/// Exit status contract of every subcommand.
enum ExitCode : int { kSuccess = 0, kRejected = 1, kUsageError = 2 };

/**
 * Builtins: cnot, swap, cphase:<phi>, shor, cloner:<n>, ghz:<n>,
 * random:<m>,<n>,<seed>, product:<factor-file or comma list of I,X,Y,Z,H,S,T>.
 * Anything else is read as an operator file path.
 */
Isometry resolve_operator(const std::string &spec);

/// "0", "1", "+", "-" per qubit (e.g. "0+1"), or a JSON array of [re, im]
/// amplitudes over 2^m_in entries.
ComplexVector parse_input_state(const std::string &text, std::size_t m_in);

/// args[0] is the program name. Writes one JSON document to out and
/// diagnostics to err; returns an ExitCode.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace seqiso::cli
