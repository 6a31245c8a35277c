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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ftre/stage1.hpp"
#include "ftre/synthetic.hpp"
#include "oracles.hpp"

namespace ftre {
namespace {

using oracle::circuit_matrix;
using oracle::distance_up_to_phase;

Circuit kak_circuit(const KakDecomposition &k) {
    Circuit c(2);
    for (std::size_t i = 0; i < k.locals.size(); i++) {
        if (i > 0) {
            c.append(GateKind::CNOT, {0, 1});
        }
        for (std::uint32_t q = 0; q < 2; q++) {
            const Unitary2 &u = q == 0 ? k.locals[i].first : k.locals[i].second;
            auto &op = c.append(GateKind::U1Q, {q});
            op.matrix = to_row_major(u);
        }
    }
    return c;
}

Circuit random_small_circuit(std::mt19937_64 &rng, std::uint32_t n, int gates, bool with_unitaries) {
    std::uniform_real_distribution<double> angle(-4, 4);
    const std::vector<GateKind> fixed{GateKind::H, GateKind::S,   GateKind::Sdg, GateKind::T,   GateKind::Tdg,
                                      GateKind::X, GateKind::Y,   GateKind::Z,   GateKind::CNOT, GateKind::CZ};
    Circuit c(n);
    for (int i = 0; i < gates; i++) {
        auto q = static_cast<std::uint32_t>(rng() % n);
        auto r = rng() % 12;
        if (r < 3) {
            GateKind k = r == 0 ? GateKind::Rz : r == 1 ? GateKind::Rx : GateKind::Ry;
            // Some angles land on exact Clifford multiples to exercise snapping.
            double a = rng() % 4 == 0 ? static_cast<double>(rng() % 16) * PI / 4 : angle(rng);
            c.append_rotation(k, q, a);
        } else if (r == 3 && n >= 3) {
            c.append(GateKind::Toffoli, {q, (q + 1) % n, (q + 2) % n});
        } else if (r == 4 && n >= 2) {
            c.append(GateKind::SWAP, {q, (q + 1) % n});
        } else if (r == 5 && with_unitaries) {
            auto &op = c.append(GateKind::U1Q, {q});
            op.matrix = to_row_major(oracle::haar_unitary(2, rng));
        } else if (r == 6 && with_unitaries && n >= 2) {
            auto &op = c.append(GateKind::U2Q, {q, (q + 1) % n});
            op.matrix = to_row_major(oracle::haar_unitary(4, rng));
        } else {
            GateKind k = fixed[rng() % fixed.size()];
            if (gate_arity(k) == 2) {
                if (n < 2) {
                    continue;
                }
                c.append(k, {q, static_cast<std::uint32_t>((q + 1 + rng() % (n - 1)) % n)});
            } else {
                c.append(k, {q});
            }
        }
    }
    return c;
}

TEST(EulerZyz, Identity) {
    auto e = euler_zyz(Unitary2::Identity());
    EXPECT_NEAR(e.alpha, 0, 1e-15);
    EXPECT_NEAR(e.beta, 0, 1e-15);
    EXPECT_NEAR(e.gamma, 0, 1e-15);
}

TEST(EulerZyz, HadamardReconstructs) {
    auto h = single_qubit_matrix(GateOp::make(GateKind::H, {0}));
    auto e = euler_zyz(h);
    EXPECT_NEAR(e.beta, PI / 2, 1e-12);
    EXPECT_LE(phase_distance(e.matrix(), h), 1e-12);
    EXPECT_LE((e.matrix() - h).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EulerZyz, RandomUnitariesReconstruct) {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 500; i++) {
        Unitary2 u = oracle::haar_unitary(2, rng);
        auto e = euler_zyz(u);
        EXPECT_GE(e.beta, 0);
        EXPECT_LE(e.beta, PI);
        EXPECT_LE((e.matrix() - u).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(EulerZyz, RejectsNonUnitary) {
    Unitary2 m;
    m << 1, 1, 0, 1;
    EXPECT_THROW(euler_zyz(m), Error);
}

TEST(Kak, IdentityNeedsNoCnot) {
    auto k = kak_decompose(Unitary4::Identity());
    EXPECT_EQ(k.cnot_count(), 0u);
    EXPECT_LE(phase_distance(k.matrix(), Unitary4::Identity()), 1e-12);
}

TEST(Kak, CnotNeedsExactlyOne) {
    Unitary4 cx = two_qubit_matrix(GateOp::make(GateKind::CNOT, {0, 1}));
    auto k = kak_decompose(cx);
    EXPECT_EQ(k.cnot_count(), 1u);
    EXPECT_LE(distance_up_to_phase(circuit_matrix(kak_circuit(k)), cx), 1e-12);
}

TEST(Kak, ProductGateNeedsNoCnot) {
    std::mt19937_64 rng(4);
    Unitary4 u = kron(oracle::haar_unitary(2, rng), oracle::haar_unitary(2, rng));
    auto k = kak_decompose(u);
    EXPECT_EQ(k.cnot_count(), 0u);
    EXPECT_LE(distance_up_to_phase(circuit_matrix(kak_circuit(k)), u), 1e-9);
}

TEST(Kak, NamedGatesReconstruct) {
    for (auto kind : {GateKind::CZ, GateKind::SWAP}) {
        Unitary4 u = oracle::gate_matrix(GateOp::make(kind, {0, 1}));
        auto k = kak_decompose(u);
        EXPECT_LE(k.cnot_count(), 3u);
        EXPECT_LE(distance_up_to_phase(circuit_matrix(kak_circuit(k)), u), 1e-9);
    }
}

TEST(Kak, HaarRandomUnitariesReconstructWithAtMostThreeCnots) {
    std::mt19937_64 rng(202);
    for (int i = 0; i < 200; i++) {
        Unitary4 u = oracle::haar_unitary(4, rng);
        auto k = kak_decompose(u);
        EXPECT_LE(k.cnot_count(), 3u);
        EXPECT_LE(distance_up_to_phase(circuit_matrix(kak_circuit(k)), u), 1e-9);
        for (double c : k.coefficients) {
            EXPECT_GT(c, -PI / 4 - 1e-12);
            EXPECT_LE(c, PI / 4 + 1e-12);
        }
    }
}

TEST(Kak, PartiallyEntanglingGatesReconstruct) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> a(-1.5, 1.5);
    for (int i = 0; i < 100; i++) {
        // exp(i(x XX + z ZZ)) sandwiched by random locals exercises the two-CNOT path.
        Circuit c(2);
        c.append(GateKind::CNOT, {0, 1});
        c.append_rotation(GateKind::Rx, 0, a(rng));
        c.append_rotation(GateKind::Rz, 1, i % 3 == 0 ? 0.0 : a(rng));
        c.append(GateKind::CNOT, {0, 1});
        c.append(GateKind::U1Q, {0}).matrix = to_row_major(oracle::haar_unitary(2, rng));
        c.append(GateKind::U1Q, {1}).matrix = to_row_major(oracle::haar_unitary(2, rng));
        Unitary4 u = circuit_matrix(c);
        auto k = kak_decompose(u);
        EXPECT_LE(k.cnot_count(), 2u);
        EXPECT_LE(distance_up_to_phase(circuit_matrix(kak_circuit(k)), u), 1e-9);
    }
}

TEST(Kak, RejectsNonUnitary) {
    Unitary4 m = Unitary4::Identity();
    m(0, 1) = 0.5;
    EXPECT_THROW(kak_decompose(m), Error);
}

TEST(DecomposeMultiqubit, ToffoliNetworkMatchesToffoli) {
    Circuit c(3);
    c.append(GateKind::Toffoli, {0, 1, 2});
    Circuit out = decompose_multiqubit(c);
    std::map<GateKind, int> tally;
    for (const auto &op : out.ops) {
        EXPECT_LE(op.qubits.size(), 2u);
        tally[op.kind]++;
    }
    EXPECT_EQ(tally[GateKind::CNOT], 6);
    EXPECT_EQ(tally[GateKind::T] + tally[GateKind::Tdg], 7);
    EXPECT_EQ(tally[GateKind::H], 2);
    EXPECT_LE(distance_up_to_phase(circuit_matrix(out), circuit_matrix(c)), 1e-12);
}

TEST(DecomposeMultiqubit, SwapIsThreeCnots) {
    Circuit c(2);
    c.append(GateKind::SWAP, {0, 1});
    Circuit out = decompose_multiqubit(c);
    Circuit want(2);
    want.append(GateKind::CNOT, {0, 1});
    want.append(GateKind::CNOT, {1, 0});
    want.append(GateKind::CNOT, {0, 1});
    EXPECT_EQ(out, want);
}

TEST(DecomposeMultiqubit, TwoQubitCircuitUnchanged) {
    Circuit c(2);
    c.append(GateKind::H, {0});
    c.append(GateKind::CZ, {0, 1});
    c.append_rotation(GateKind::Rz, 1, 0.4);
    EXPECT_EQ(decompose_multiqubit(c), c);
}

TEST(MergeEject, InverseRotationsVanish) {
    Circuit c(1);
    c.append_rotation(GateKind::Rz, 0, 0.2);
    c.append_rotation(GateKind::Rz, 0, -0.2);
    EXPECT_TRUE(merge_eject(c).ops.empty());
}

TEST(MergeEject, CnotPairCancels) {
    Circuit c(2);
    c.append(GateKind::CNOT, {0, 1});
    c.append(GateKind::CNOT, {0, 1});
    EXPECT_TRUE(merge_eject(c).ops.empty());
}

TEST(MergeEject, SThenSdgCancels) {
    Circuit c(1);
    c.append(GateKind::S, {0});
    c.append(GateKind::Sdg, {0});
    EXPECT_TRUE(merge_eject(c).ops.empty());
}

TEST(MergeEject, CliffordAnglesSnap) {
    Circuit c(1);
    c.append_rotation(GateKind::Rz, 0, PI / 2);
    auto out = merge_eject(c);
    ASSERT_EQ(out.ops.size(), 1u);
    EXPECT_EQ(out.ops[0].kind, GateKind::S);
    Circuit tiny(1);
    tiny.append_rotation(GateKind::Rz, 0, 2 * PI + 1e-14);
    EXPECT_TRUE(merge_eject(tiny).ops.empty());
    Circuit small(1);
    small.append_rotation(GateKind::Rz, 0, 1e-6);
    ASSERT_EQ(merge_eject(small).ops.size(), 1u);
    EXPECT_EQ(merge_eject(small).ops[0].kind, GateKind::Rz);
}

TEST(MergeEject, PreservesMatrixAndNeverGrowsOnRandomTwoQubitCircuits) {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 100; trial++) {
        Circuit c = random_small_circuit(rng, 2, 20, false);
        Circuit flat = decompose_multiqubit(c);
        Circuit out = merge_eject(flat);
        EXPECT_LE(out.ops.size(), flat.ops.size());
        EXPECT_LE(distance_up_to_phase(circuit_matrix(out), circuit_matrix(flat)), 1e-9);
        EXPECT_EQ(merge_eject(out), out);
    }
}

TEST(ToCliffordRz, RxBecomesConjugatedRz) {
    Circuit c(1);
    c.append_rotation(GateKind::Rx, 0, 0.3);
    Circuit out = to_clifford_rz(c);
    ASSERT_EQ(out.ops.size(), 3u);
    EXPECT_EQ(out.ops[0].kind, GateKind::H);
    EXPECT_EQ(out.ops[1].kind, GateKind::Rz);
    EXPECT_DOUBLE_EQ(*out.ops[1].angle, 0.3);
    EXPECT_EQ(out.ops[2].kind, GateKind::H);
    EXPECT_EQ(out.level, Level::clifford_rz);
}

TEST(ToCliffordRz, PureCliffordHasNoRz) {
    Circuit c(2);
    c.append(GateKind::H, {0});
    c.append(GateKind::CNOT, {0, 1});
    c.append(GateKind::S, {1});
    c.append(GateKind::CZ, {1, 0});
    c.append(GateKind::SWAP, {0, 1});
    EXPECT_EQ(gate_counts(to_clifford_rz(c)).rz, 0u);
}

TEST(ToCliffordRz, PreservesUnitaryAndAlphabetOnThreeQubitCircuits) {
    const std::set<GateKind> alphabet{GateKind::H,    GateKind::S,   GateKind::Sdg, GateKind::X,
                                      GateKind::Y,    GateKind::Z,   GateKind::T,   GateKind::Tdg,
                                      GateKind::CNOT, GateKind::Rz,  GateKind::Measure, GateKind::Reset};
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 60; trial++) {
        Circuit c = random_small_circuit(rng, 3, 25, true);
        Circuit out = to_clifford_rz(c);
        for (const auto &op : out.ops) {
            EXPECT_TRUE(alphabet.count(op.kind)) << gate_name(op.kind);
        }
        EXPECT_LE(distance_up_to_phase(circuit_matrix(out), circuit_matrix(c)), 1e-9);
        EXPECT_EQ(merge_eject(out).ops, out.ops);
    }
}

TEST(ToCliffordRz, SyntheticTrotterMatchesOnExtractedSubcircuits) {
    Circuit big = synthetic_trotter(60, 1);
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 20; trial++) {
        // Window of three neighbours, taken up to the first gate crossing the window edge.
        auto base = static_cast<std::uint32_t>(rng() % 58);
        Circuit sub(3);
        for (const auto &op : big.ops) {
            bool inside = std::all_of(op.qubits.begin(), op.qubits.end(),
                                      [&](std::uint32_t q) { return q >= base && q < base + 3; });
            bool touches = std::any_of(op.qubits.begin(), op.qubits.end(),
                                       [&](std::uint32_t q) { return q >= base && q < base + 3; });
            if (touches && !inside) {
                break;
            }
            if (inside) {
                GateOp g = op;
                for (auto &q : g.qubits) {
                    q -= base;
                }
                sub.ops.push_back(g);
            }
        }
        Circuit out = to_clifford_rz(sub);
        EXPECT_LE(distance_up_to_phase(circuit_matrix(out), circuit_matrix(sub)), 1e-9);
    }
}

TEST(ToCliffordRz, RejectsWrongLevel) {
    Circuit c(1, Level::clifford_rz);
    EXPECT_THROW(to_clifford_rz(c), Error);
}

}  // namespace
}  // namespace ftre
