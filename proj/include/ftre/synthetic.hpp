// Copyright 2026 The ftre Authors
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

// Deterministic synthetic workloads for experiments and property tests.

#include <random>

#include "ftre/circuit.hpp"

namespace ftre {

/// First-order Trotter circuit for a transverse-field Ising chain: per step, ZZ(theta) on every
/// nearest-neighbour pair (CNOT, Rz, CNOT) followed by Rx(phi) on every qubit. Angles are drawn
/// from a seeded generator and are never multiples of pi/4.
inline Circuit synthetic_trotter(std::uint32_t n_qubits, std::uint32_t steps, std::uint64_t seed = 7) {
    if (n_qubits < 2 || steps == 0) {
        fail(ErrorKind::domain, "synthetic Trotter circuit needs at least two qubits and one step");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.05, 0.7);
    Circuit c(n_qubits);
    for (std::uint32_t s = 0; s < steps; s++) {
        for (std::uint32_t parity = 0; parity < 2; parity++) {
            for (std::uint32_t q = parity; q + 1 < n_qubits; q += 2) {
                c.append(GateKind::CNOT, {q, q + 1});
                c.append_rotation(GateKind::Rz, q + 1, angle(rng));
                c.append(GateKind::CNOT, {q, q + 1});
            }
        }
        for (std::uint32_t q = 0; q < n_qubits; q++) {
            c.append_rotation(GateKind::Rx, q, angle(rng));
        }
    }
    return c;
}

}  // namespace ftre
