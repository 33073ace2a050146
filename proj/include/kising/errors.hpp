// Copyright 2026 The kising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace kising {

/// Malformed input: mismatched lengths, sites out of range, invalid configs.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A request that would exceed a configured size cap (dense matrices, RDMs).
struct ResourceError : std::length_error {
    using std::length_error::length_error;
};

/// Largest site count for which explicit 2^L x 2^L operators are built.
inline constexpr std::size_t kMaxOperatorSites = 12;

/// Largest site count accepted by the state-vector backend.
inline constexpr std::size_t kMaxDenseSites = 24;

/// Largest number of retained sites in a reduced density matrix.
inline constexpr std::size_t kMaxReducedSites = 12;

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw StructuralError(message);
    }
}

}  // namespace kising
