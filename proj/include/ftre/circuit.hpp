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

#include <algorithm>
#include <array>
#include <chrono>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftre/error.hpp"

namespace ftre {

using Duration = std::chrono::nanoseconds;

inline double to_us(Duration d) {
    return static_cast<double>(d.count()) / 1000.0;
}

inline Duration from_us(double us) {
    return Duration{static_cast<std::int64_t>(us * 1000.0 + (us >= 0 ? 0.5 : -0.5))};
}

enum class GateKind : std::uint8_t {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rz,
    Rx,
    Ry,
    CNOT,
    CZ,
    SWAP,
    Toffoli,
    U1Q,
    U2Q,
    Measure,
    Reset,
    // Fault-tolerant primitives.
    SE,
    Merge,
    Split,
    CultT,
    CultS,
    ZMove,
    AMove,
};

inline constexpr std::array<GateKind, 27> ALL_GATE_KINDS{
    GateKind::I,     GateKind::X,     GateKind::Y,     GateKind::Z,       GateKind::H,       GateKind::S,
    GateKind::Sdg,   GateKind::T,     GateKind::Tdg,   GateKind::Rz,      GateKind::Rx,      GateKind::Ry,
    GateKind::CNOT,  GateKind::CZ,    GateKind::SWAP,  GateKind::Toffoli, GateKind::U1Q,     GateKind::U2Q,
    GateKind::Measure, GateKind::Reset, GateKind::SE,  GateKind::Merge,   GateKind::Split,   GateKind::CultT,
    GateKind::CultS, GateKind::ZMove, GateKind::AMove,
};

inline constexpr std::string_view gate_name(GateKind k) {
    constexpr std::array<std::string_view, 27> names{
        "I",    "X",     "Y",       "Z",     "H",  "S",     "Sdg",   "T",     "Tdg",
        "Rz",   "Rx",    "Ry",      "CNOT",  "CZ", "SWAP",  "Toffoli", "U1Q", "U2Q",
        "Measure", "Reset", "SE",   "Merge", "Split", "CultT", "CultS", "ZMove", "AMove",
    };
    return names[static_cast<std::size_t>(k)];
}

inline std::optional<GateKind> gate_from_name(std::string_view name) {
    for (auto k : ALL_GATE_KINDS) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

inline constexpr bool is_primitive_only(GateKind k) {
    switch (k) {
        case GateKind::SE:
        case GateKind::Merge:
        case GateKind::Split:
        case GateKind::CultT:
        case GateKind::CultS:
        case GateKind::ZMove:
        case GateKind::AMove:
            return true;
        default:
            return false;
    }
}

inline constexpr bool is_pauli(GateKind k) {
    return k == GateKind::I || k == GateKind::X || k == GateKind::Y || k == GateKind::Z;
}

inline constexpr bool is_rotation(GateKind k) {
    return k == GateKind::Rz || k == GateKind::Rx || k == GateKind::Ry;
}

inline constexpr bool is_clifford(GateKind k) {
    switch (k) {
        case GateKind::I:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
            return true;
        default:
            return false;
    }
}

/// Unitary single-qubit gates (those that merge_eject may fuse).
inline constexpr bool is_single_qubit_unitary(GateKind k) {
    switch (k) {
        case GateKind::I:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::Rz:
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::U1Q:
            return true;
        default:
            return false;
    }
}

/// Fixed arity, or 0 for primitives that accept one or more operands.
inline constexpr std::size_t gate_arity(GateKind k) {
    switch (k) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
        case GateKind::U2Q:
            return 2;
        case GateKind::Toffoli:
            return 3;
        case GateKind::SE:
        case GateKind::Merge:
        case GateKind::Split:
        case GateKind::CultT:
        case GateKind::CultS:
        case GateKind::ZMove:
        case GateKind::AMove:
            return 0;
        default:
            return 1;
    }
}

enum class Level : std::uint8_t { input, clifford_rz, clifford_t, primitive };

inline constexpr std::string_view level_name(Level l) {
    switch (l) {
        case Level::input:
            return "input";
        case Level::clifford_rz:
            return "clifford_rz";
        case Level::clifford_t:
            return "clifford_t";
        case Level::primitive:
            return "primitive";
    }
    return "input";
}

inline std::optional<Level> level_from_name(std::string_view s) {
    for (auto l : {Level::input, Level::clifford_rz, Level::clifford_t, Level::primitive}) {
        if (level_name(l) == s) {
            return l;
        }
    }
    return std::nullopt;
}

struct GateOp {
    GateKind kind = GateKind::I;
    std::vector<std::uint32_t> qubits;
    std::optional<double> angle;
    /// Index (within the same circuit) of the Measure op whose outcome conditions this op.
    std::optional<std::uint32_t> ctrl;
    /// Row-major entries for U1Q (2x2) and U2Q (4x4).
    std::vector<std::complex<double>> matrix;

    // Primitive-level annotations.
    std::uint32_t rounds = 1;         // SE: syndrome extraction rounds
    std::optional<GateKind> intent;   // logical gate this op realizes, if any
    double sites = 0;                 // AMove: Manhattan distance in patches
    bool idle = false;                // SE inserted by the idling pass

    bool operator==(const GateOp &) const = default;

    static GateOp make(GateKind k, std::vector<std::uint32_t> qs) {
        GateOp op;
        op.kind = k;
        op.qubits = std::move(qs);
        return op;
    }
    static GateOp rotation(GateKind k, std::uint32_t q, double angle) {
        GateOp op = make(k, {q});
        op.angle = angle;
        return op;
    }
};

struct Circuit {
    std::uint32_t num_qubits = 0;
    std::vector<GateOp> ops;
    Level level = Level::input;
    /// Optional human-readable qubit labels, empty or of size num_qubits.
    std::vector<std::string> labels;

    bool operator==(const Circuit &) const = default;

    Circuit() = default;
    Circuit(std::uint32_t n, Level lvl = Level::input) : num_qubits(n), level(lvl) {
    }

    GateOp &append(GateKind k, std::vector<std::uint32_t> qs) {
        ops.push_back(GateOp::make(k, std::move(qs)));
        return ops.back();
    }
    GateOp &append_rotation(GateKind k, std::uint32_t q, double angle) {
        ops.push_back(GateOp::rotation(k, q, angle));
        return ops.back();
    }
};

/// Checks the structural invariants of op i, throwing a validation error on the first violation.
inline void validate_op(const Circuit &c, std::size_t i) {
    const auto &op = c.ops[i];
    const std::string where = "op " + std::to_string(i) + ": ";
    auto arity = gate_arity(op.kind);
    if (arity != 0 && op.qubits.size() != arity) {
        fail(ErrorKind::validation,
             where + std::string(gate_name(op.kind)) + " expects " + std::to_string(arity) + " qubit(s)");
    }
    if (arity == 0) {
        std::size_t min_q = (op.kind == GateKind::Merge || op.kind == GateKind::Split) ? 2 : 1;
        if (op.qubits.size() < min_q) {
            fail(ErrorKind::validation, where + std::string(gate_name(op.kind)) + " has too few qubits");
        }
    }
    for (std::size_t a = 0; a < op.qubits.size(); a++) {
        if (op.qubits[a] >= c.num_qubits) {
            fail(ErrorKind::validation, where + "qubit " + std::to_string(op.qubits[a]) + " not declared");
        }
        for (std::size_t b = 0; b < a; b++) {
            if (op.qubits[a] == op.qubits[b]) {
                fail(ErrorKind::validation, where + "repeated qubit operand");
            }
        }
    }
    if (is_rotation(op.kind) != op.angle.has_value()) {
        fail(ErrorKind::validation, where + "angle present iff gate is a rotation");
    }
    if (is_primitive_only(op.kind) && c.level != Level::primitive) {
        fail(ErrorKind::validation, where + "primitive op outside a primitive-level circuit");
    }
    std::size_t want_matrix = op.kind == GateKind::U1Q ? 4 : op.kind == GateKind::U2Q ? 16 : 0;
    if (op.matrix.size() != want_matrix) {
        fail(ErrorKind::validation, where + "matrix size mismatch");
    }
    if (op.ctrl.has_value()) {
        if (*op.ctrl >= i || c.ops[*op.ctrl].kind != GateKind::Measure) {
            fail(ErrorKind::validation, where + "classical control must reference an earlier Measure");
        }
    }
}

/// Checks every structural invariant of a circuit, throwing a validation error on the first violation.
inline void validate(const Circuit &c) {
    if (!c.labels.empty() && c.labels.size() != c.num_qubits) {
        fail(ErrorKind::validation, "label count does not match qubit count");
    }
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        validate_op(c, i);
    }
}

////////////////////////////////////////////////////////////
// Gate counting.
////////////////////////////////////////////////////////////

struct GateCounts {
    std::map<std::string, std::size_t> by_kind;
    std::size_t rz = 0;        // k
    std::size_t clifford = 0;  // l
    std::size_t t = 0;         // T and Tdg
    std::size_t measure = 0;
    std::size_t reset = 0;
    std::size_t other = 0;

    std::size_t total() const {
        return rz + clifford + t + measure + reset + other;
    }
};

inline GateCounts gate_counts(const Circuit &c) {
    GateCounts out;
    for (const auto &op : c.ops) {
        out.by_kind[std::string(gate_name(op.kind))]++;
        if (op.kind == GateKind::Rz) {
            out.rz++;
        } else if (op.kind == GateKind::T || op.kind == GateKind::Tdg) {
            out.t++;
        } else if (op.kind == GateKind::Measure) {
            out.measure++;
        } else if (op.kind == GateKind::Reset) {
            out.reset++;
        } else if (is_clifford(op.kind)) {
            out.clifford++;
        } else {
            out.other++;
        }
    }
    return out;
}

////////////////////////////////////////////////////////////
// Dependency DAG.
////////////////////////////////////////////////////////////

struct OpDag {
    std::size_t num_nodes = 0;
    /// Precedence pairs (before, after), sorted and unique. Every edge points forward in op order.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<Duration> durations;
    /// Predecessor lists, derived from edges.
    std::vector<std::vector<std::uint32_t>> preds;
};

inline OpDag make_dag(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                      std::vector<Duration> durations) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    OpDag dag;
    dag.num_nodes = n;
    dag.durations = std::move(durations);
    dag.preds.resize(n);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) {
            fail(ErrorKind::internal, "dag edge out of range");
        }
        dag.preds[b].push_back(a);
    }
    dag.edges = std::move(edges);
    return dag;
}

/// Edges join consecutive ops on every operand (qubits, factory patches, ancilla cells
/// all appear as operands) and each classically-controlled op to its Measure.
inline OpDag build_dag(const Circuit &c, std::span<const Duration> durations) {
    if (durations.size() != c.ops.size()) {
        fail(ErrorKind::config, "every op needs a duration");
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::int64_t> last(c.num_qubits, -1);
    for (std::uint32_t i = 0; i < c.ops.size(); i++) {
        const auto &op = c.ops[i];
        if (durations[i].count() < 0) {
            fail(ErrorKind::config, "negative duration for op " + std::to_string(i));
        }
        for (auto q : op.qubits) {
            if (q >= c.num_qubits) {
                fail(ErrorKind::validation, "op references undeclared qubit");
            }
            if (last[q] >= 0) {
                edges.emplace_back(static_cast<std::uint32_t>(last[q]), i);
            }
            last[q] = i;
        }
        if (op.ctrl.has_value() && *op.ctrl < i) {
            edges.emplace_back(*op.ctrl, i);
        }
    }
    return make_dag(c.ops.size(), std::move(edges), {durations.begin(), durations.end()});
}

/// Unit-depth as-soon-as-possible level of every op: the scheduling "moment" it belongs to.
inline std::vector<std::uint32_t> asap_levels(const Circuit &c) {
    std::vector<std::uint32_t> level(c.ops.size(), 0);
    std::vector<std::uint32_t> next_free(c.num_qubits, 0);
    for (std::size_t i = 0; i < c.ops.size(); i++) {
        const auto &op = c.ops[i];
        std::uint32_t lvl = 0;
        for (auto q : op.qubits) {
            lvl = std::max(lvl, next_free[q]);
        }
        if (op.ctrl.has_value()) {
            lvl = std::max(lvl, level[*op.ctrl] + 1);
        }
        level[i] = lvl;
        for (auto q : op.qubits) {
            next_free[q] = lvl + 1;
        }
    }
    return level;
}

/// Op indices ordered by (ASAP level, original index). Per-qubit order is preserved.
inline std::vector<std::uint32_t> moment_order(const Circuit &c) {
    auto level = asap_levels(c);
    std::vector<std::uint32_t> order(c.ops.size());
    for (std::uint32_t i = 0; i < order.size(); i++) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return level[a] < level[b]; });
    return order;
}

}  // namespace ftre
